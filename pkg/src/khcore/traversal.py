"""Batched h-BFS with a worker pool and a distance-computation counter.

Sources of a batch are split into chunks handed out dynamically to the
workers; each worker owns its scratch buffers. Results land in a
preallocated array by position, so the output does not depend on which
worker ran which chunk. Callers commit bucket updates serially afterwards.
"""

from __future__ import annotations

import queue
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import _kernels
from .graph import AliveMask, Graph, Scratch

# below this many sources a batch runs inline on the calling thread
PARALLEL_MIN_BATCH = 256


class Traverser:
    def __init__(self, g: Graph, threads: int = 1):
        if threads < 1:
            raise ValueError(f"threads must be >= 1, got {threads}")
        self.g = g
        self.threads = threads
        self.visited = 0  # total size of all h-BFS traversals run so far
        self._main = Scratch(g.n)
        self._pool: ThreadPoolExecutor | None = None
        self._spares: queue.SimpleQueue[Scratch] = queue.SimpleQueue()
        if threads > 1:
            self._pool = ThreadPoolExecutor(max_workers=threads, thread_name_prefix="hbfs")
            for _ in range(threads):
                self._spares.put(Scratch(g.n))

    def close(self) -> None:
        if self._pool is not None:
            self._pool.shutdown()
            self._pool = None

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()

    def neighborhood(self, mask: AliveMask, v: int, h: int) -> tuple[np.ndarray, np.ndarray]:
        s = self._main
        s.epoch += 1
        c = _kernels.hbfs(self.g.indptr, self.g.indices, mask.alive, v, h, s.seen, s.epoch, s.queue, s.dist)
        self.visited += c
        verts = s.queue[1:c + 1].copy()
        return verts, s.dist[verts]

    def degree(self, mask: AliveMask, v: int, h: int) -> int:
        s = self._main
        s.epoch += 1
        c = _kernels.hbfs(self.g.indptr, self.g.indices, mask.alive, v, h, s.seen, s.epoch, s.queue, s.dist)
        self.visited += c
        return int(c)

    def degrees(self, mask: AliveMask, sources: np.ndarray, h: int) -> np.ndarray:
        """h-degree of each source in the masked subgraph."""
        sources = np.ascontiguousarray(sources, dtype=np.int32)
        out = np.zeros(len(sources), dtype=np.int64)
        if h < 1 or len(sources) == 0:
            return out

        def run(s: Scratch, lo: int, hi: int) -> int:
            total, s.epoch = _kernels.hdegrees(self.g.indptr, self.g.indices, mask.alive, sources[lo:hi],
                                               h, s.seen, s.epoch, s.queue, s.dist, out[lo:hi])
            return total

        self.visited += self._dispatch(run, len(sources))
        return out

    def ball_max(self, mask: AliveMask, sources: np.ndarray, h: int, values: np.ndarray) -> np.ndarray:
        """For each source, max of ``values`` over vertices within distance h (source included)."""
        sources = np.ascontiguousarray(sources, dtype=np.int32)
        values = np.ascontiguousarray(values, dtype=np.int64)
        out = np.zeros(len(sources), dtype=np.int64)

        def run(s: Scratch, lo: int, hi: int) -> int:
            total, s.epoch = _kernels.ball_max(self.g.indptr, self.g.indices, mask.alive, sources[lo:hi], h,
                                               values, s.seen, s.epoch, s.queue, s.dist, out[lo:hi])
            return total

        self.visited += self._dispatch(run, len(sources))
        return out

    def _dispatch(self, run, size: int) -> int:
        if self._pool is None or size < PARALLEL_MIN_BATCH:
            return run(self._main, 0, size)
        step = max(32, -(-size // (4 * self.threads)))

        def task(lo: int) -> int:
            s = self._spares.get()
            try:
                return run(s, lo, min(lo + step, size))
            finally:
                self._spares.put(s)

        futures = [self._pool.submit(task, lo) for lo in range(0, size, step)]
        return sum(f.result() for f in futures)
