"""Numba kernels for h-bounded BFS over a masked CSR graph.

All kernels release the GIL so the thread pool in :mod:`khcore.traversal`
can run them concurrently. Scratch arrays (``seen``, ``queue``, ``dist``)
belong to exactly one caller at a time; ``seen`` is stamped with an epoch
so it never has to be cleared between traversals.
"""

import numba as nb
import numpy as np


@nb.njit(nogil=True, cache=True)
def hbfs(indptr, indices, alive, source, h, seen, epoch, queue, dist):
    """BFS from ``source`` truncated at depth ``h``.

    Members end up in ``queue[1:count + 1]`` in nondecreasing distance order
    with their distance in ``dist``. Returns ``count``.
    """
    seen[source] = epoch
    dist[source] = 0
    queue[0] = source
    head = 0
    tail = 1
    while head < tail:
        u = queue[head]
        head += 1
        du = dist[u]
        if du >= h:
            break
        for j in range(indptr[u], indptr[u + 1]):
            w = indices[j]
            if alive[w] and seen[w] != epoch:
                seen[w] = epoch
                dist[w] = du + 1
                queue[tail] = w
                tail += 1
    return tail - 1


@nb.njit(nogil=True, cache=True)
def hdegrees(indptr, indices, alive, sources, h, seen, epoch, queue, dist, out):
    """h-degree of every vertex in ``sources``; returns (total visited, last epoch)."""
    total = 0
    for i in range(sources.shape[0]):
        epoch += 1
        c = hbfs(indptr, indices, alive, sources[i], h, seen, epoch, queue, dist)
        out[i] = c
        total += c
    return total, epoch


@nb.njit(nogil=True, cache=True)
def ball_max(indptr, indices, alive, sources, h, values, seen, epoch, queue, dist, out):
    """For each source, max of ``values`` over its closed h-ball."""
    total = 0
    for i in range(sources.shape[0]):
        epoch += 1
        s = sources[i]
        c = hbfs(indptr, indices, alive, s, h, seen, epoch, queue, dist)
        best = values[s]
        for j in range(1, c + 1):
            x = values[queue[j]]
            if x > best:
                best = x
        out[i] = best
        total += c
    return total, epoch


def warmup():
    """Compile the kernels on a tiny graph (populates the on-disk cache)."""
    indptr = np.array([0, 1, 2], dtype=np.int64)
    indices = np.array([1, 0], dtype=np.int32)
    alive = np.ones(2, dtype=np.bool_)
    seen = np.zeros(2, dtype=np.int64)
    queue = np.empty(2, dtype=np.int32)
    dist = np.empty(2, dtype=np.int32)
    sources = np.arange(2, dtype=np.int32)
    out = np.empty(2, dtype=np.int64)
    hbfs(indptr, indices, alive, 0, 1, seen, 1, queue, dist)
    hdegrees(indptr, indices, alive, sources, 1, seen, 1, queue, dist, out)
    ball_max(indptr, indices, alive, sources, 1, out, seen, 1, queue, dist, out.copy())
