"""Exact (k,h)-core decomposition.

Three peeling algorithms share the machinery here:

* ``decompose_hbz``   -- bucket peeling that recomputes every affected h-degree;
* ``decompose_hlb``   -- the same peeling seeded with per-vertex lower bounds, so
  h-degrees are only computed once a vertex's bucket is reached;
* ``decompose_hlbub`` -- top-down over intervals of upper-bound values, each
  interval peeled on the subgraph of vertices whose upper bound reaches it.

All three agree exactly with :func:`khcore.oracle.naive_oracle`.
"""

from __future__ import annotations

import time
from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph import AliveMask, Graph
from .traversal import Traverser

ALGORITHMS = ("bz", "lb", "lbub")


class BucketQueue:
    """Vertices grouped by integer key with FIFO order inside each bucket.

    A move appends a stamped entry to the target bucket and invalidates the
    old one; stale entries are dropped lazily on pop. Moves are O(1).
    """

    def __init__(self, n: int, size: int | None = None):
        size = n + 2 if size is None else size
        self._buckets: list[deque | None] = [None] * size
        self._where = [-1] * n
        self._stamp = [0] * n
        self._count = 0

    def __len__(self) -> int:
        return self._count

    def __contains__(self, v: int) -> bool:
        return self._where[v] >= 0

    def bucket_of(self, v: int) -> int:
        return self._where[v]

    def push(self, v: int, b: int) -> None:
        """Insert ``v`` into bucket ``b``, moving it if it sits elsewhere."""
        where = self._where[v]
        if where == b:
            return
        if where < 0:
            self._count += 1
        st = self._stamp[v] + 1
        self._stamp[v] = st
        self._where[v] = b
        dq = self._buckets[b]
        if dq is None:
            dq = self._buckets[b] = deque()
        dq.append((v, st))

    move = push

    def discard(self, v: int) -> None:
        if self._where[v] >= 0:
            self._where[v] = -1
            self._stamp[v] += 1
            self._count -= 1

    def pop(self, b: int) -> int | None:
        """Remove and return the oldest vertex in bucket ``b``, or None."""
        if b < 0 or b >= len(self._buckets):
            return None
        dq = self._buckets[b]
        if not dq:
            return None
        stamp = self._stamp
        while dq:
            v, st = dq.popleft()
            if stamp[v] == st:
                self._where[v] = -1
                stamp[v] = st + 1
                self._count -= 1
                return v
        return None


@dataclass
class CoreResult:
    core: np.ndarray
    h: int
    algorithm: str = ""
    distance_computations: int = 0
    seconds: float = 0.0
    peel_order: list[int] | None = None
    diagnostics: dict[str, np.ndarray] | None = None
    bound_visits: int = 0  # vertices reached by the shorter-radius LB1/LB2 passes

    @property
    def max_core(self) -> int:
        return int(self.core.max()) if len(self.core) else 0

    @property
    def distinct_cores(self) -> int:
        return len(np.unique(self.core))

    def members(self, k: int) -> np.ndarray:
        """Vertex set of the (k,h)-core."""
        return np.flatnonzero(self.core >= k).astype(np.int32)

    def distinct_core_indices(self) -> list[int]:
        """Core indices whose core differs from the next higher one, descending."""
        return sorted(set(self.core.tolist()), reverse=True)


@dataclass
class PartitionPlan:
    intervals: list[tuple[int, int]]  # (k_min, k_max), top-down
    s: int
    upper_values: list[int]  # distinct upper bounds, descending
    lb0: int

    @classmethod
    def build(cls, upper_values: Iterable[int], lb0: int, s: int) -> "PartitionPlan":
        """Chunks of ``s`` distinct upper-bound values, the last one floored at ``lb0``."""
        if s < 1:
            raise ValueError(f"partition size must be >= 1, got {s}")
        u = sorted(set(int(x) for x in upper_values), reverse=True)
        if not u:
            return cls([], s, [], lb0)
        if min(u) < lb0:
            raise ValueError("upper bounds must not fall below lb0")
        ext = u + [lb0 - 1]
        last = len(ext) - 1
        intervals = [(ext[min(i + s, last)] + 1, ext[i]) for i in range(0, last, s)]
        return cls(intervals, s, u, lb0)


def _floor_half(h: int) -> int:
    return h // 2


def _ceil_half(h: int) -> int:
    return (h + 1) // 2


def _all_vertices(g: Graph) -> np.ndarray:
    return np.arange(g.n, dtype=np.int32)


def compute_lb1(g: Graph, h: int, engine: Traverser | None = None) -> np.ndarray:
    """floor(h/2)-degree of every vertex in G."""
    engine = engine or Traverser(g)
    return engine.degrees(AliveMask.full(g.n), _all_vertices(g), _floor_half(h))


def compute_lb2(g: Graph, h: int, lb1: np.ndarray, engine: Traverser | None = None) -> np.ndarray:
    """Largest LB1 within distance ceil(h/2) of each vertex, itself included."""
    engine = engine or Traverser(g)
    return engine.ball_max(AliveMask.full(g.n), _all_vertices(g), _ceil_half(h), lb1)


def compute_ub(g: Graph, h: int, hdeg: np.ndarray | None = None,
               engine: Traverser | None = None) -> np.ndarray:
    """Classic core index of each vertex in the power graph G^h.

    G^h is never materialised: the h-neighborhood of each popped vertex is
    re-derived by BFS in G and every unpopped member loses exactly one unit.
    """
    engine = engine or Traverser(g)
    full = AliveMask.full(g.n)
    if hdeg is None:
        hdeg = engine.degrees(full, _all_vertices(g), h)
    ubdeg = [int(x) for x in hdeg]
    ub = np.zeros(g.n, dtype=np.int64)
    popped = np.zeros(g.n, dtype=np.bool_)
    buckets = BucketQueue(g.n)
    for v in range(g.n):
        buckets.push(v, ubdeg[v])
    k = 0
    while len(buckets):
        v = buckets.pop(k)
        if v is None:
            k += 1
            continue
        ub[v] = k
        popped[v] = True
        nbrs, _ = engine.neighborhood(full, v, h)
        for u in nbrs.tolist():
            if not popped[u]:
                ubdeg[u] -= 1
                buckets.move(u, max(ubdeg[u], k))
    return ub


def improve_lb(g: Graph, subset: Iterable[int] | np.ndarray, h: int, k: int, lb2: np.ndarray,
               engine: Traverser | None = None, core: np.ndarray | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Tighten lower bounds on ``subset`` and drop vertices that cannot reach core k.

    LB3 is the max of LB2 and the minimum h-degree inside G[subset]. Vertices
    whose h-degree upper bound (decremented by one per deleted h-neighbor)
    drops below ``k`` are deleted. Returns (surviving vertices, LB3) where
    LB3 is zero outside ``subset``.

    ``core`` may carry indices already finalized (nonzero entries, all >= k).
    Such vertices are never deleted and their h-degree is at least their core
    index, so it is only computed when needed to settle the minimum.
    """
    engine = engine or Traverser(g)
    subset = np.asarray(subset)
    verts = np.flatnonzero(subset) if subset.dtype == np.bool_ else np.unique(subset)
    verts = verts.astype(np.int32)
    mask = AliveMask.from_subset(g.n, verts)
    lb3 = np.zeros(g.n, dtype=np.int64)
    if verts.size == 0:
        return verts, lb3
    done = core[verts] > 0 if core is not None else np.zeros(len(verts), dtype=np.bool_)
    open_ = verts[~done]
    deg = np.zeros(g.n, dtype=np.int64)
    deg[open_] = engine.degrees(mask, open_, h)
    low = deg[open_].min() if len(open_) else np.iinfo(np.int64).max
    if done.any() and low > core[verts[done]].min():
        closed = verts[done]
        deg[closed] = engine.degrees(mask, closed, h)
        low = min(low, deg[closed].min())
    lb3[verts] = np.maximum(lb2[verts], low)

    queued = np.zeros(g.n, dtype=np.bool_)
    queued[verts[done]] = True  # finalized: never deleted
    doomed = deque()
    for v in open_[deg[open_] < k].tolist():
        queued[v] = True
        doomed.append(v)
    while doomed:
        v = doomed.popleft()
        nbrs, _ = engine.neighborhood(mask, v, h)
        mask.kill(v)
        for u in nbrs.tolist():
            if queued[u]:
                continue
            deg[u] -= 1
            if deg[u] < k:
                queued[u] = True
                doomed.append(u)
    return mask.vertices(), lb3


def core_decomp_interval(g: Graph, mask: AliveMask, h: int, k_min: int, k_max: int,
                         buckets: BucketQueue, set_lb: np.ndarray, result: CoreResult,
                         engine: Traverser | None = None) -> None:
    """Assign core indices in [k_min, k_max] by bucket peeling on the masked subgraph.

    A vertex with ``set_lb`` set sits in a bucket no higher than its core
    index; popping it computes its real h-degree. A vertex without the flag
    sits at its current h-degree (or the current level if lower); popping it
    removes it, finalizing its core index when the level is inside the range.
    Mutates ``mask``, ``buckets``, ``set_lb`` and ``result`` in place.
    """
    own_engine = engine is None
    engine = engine or Traverser(g)
    deg = np.zeros(g.n, dtype=np.int64)
    for v in mask.vertices().tolist():
        if not set_lb[v] and v in buckets:
            deg[v] = buckets.bucket_of(v)
    core = result.core
    order = result.peel_order
    visited0 = engine.visited
    try:
        for k in range(max(k_min - 1, 0), k_max + 1):
            while True:
                v = buckets.pop(k)
                if v is None:
                    break
                if set_lb[v]:
                    d = engine.degree(mask, v, h)
                    deg[v] = d
                    buckets.push(v, max(d, k))
                    set_lb[v] = False
                    continue
                if k >= k_min:
                    core[v] = k
                    set_lb[v] = True
                if order is not None:
                    order.append(v)
                nbrs, dist = engine.neighborhood(mask, v, h)
                mask.kill(v)
                tracked = ~set_lb[nbrs]
                near = nbrs[tracked & (dist < h)]
                if len(near):
                    deg[near] = engine.degrees(mask, near, h)
                # at distance exactly h only v itself leaves the h-neighborhood
                deg[nbrs[tracked & (dist >= h)]] -= 1
                for u in nbrs[tracked].tolist():
                    buckets.move(u, max(int(deg[u]), k))
    finally:
        result.distance_computations += engine.visited - visited0
        if own_engine:
            engine.close()


def _check_h(h: int) -> None:
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")


def decompose_hbz(g: Graph, h: int, threads: int = 1, diagnostics: bool = False) -> CoreResult:
    """Bucket peeling recomputing the h-degree of every h-neighbor of a removed vertex."""
    _check_h(h)
    t0 = time.perf_counter()
    result = CoreResult(np.zeros(g.n, dtype=np.int64), h, "bz", peel_order=[])
    with Traverser(g, threads) as engine:
        mask = AliveMask.full(g.n)
        hdeg = engine.degrees(mask, _all_vertices(g), h)
        buckets = BucketQueue(g.n)
        for v in range(g.n):
            buckets.push(v, int(hdeg[v]))
        core = result.core
        k = 0
        while len(buckets):
            v = buckets.pop(k)
            if v is None:
                k += 1
                continue
            core[v] = k
            result.peel_order.append(v)
            nbrs, _ = engine.neighborhood(mask, v, h)
            mask.kill(v)
            if len(nbrs):
                newdeg = engine.degrees(mask, nbrs, h)
                for u, d in zip(nbrs.tolist(), newdeg.tolist()):
                    buckets.move(u, max(d, k))
        result.distance_computations = engine.visited
    if diagnostics:
        result.diagnostics = {"hdeg": hdeg}
    result.seconds = time.perf_counter() - t0
    return result


def decompose_hlb(g: Graph, h: int, threads: int = 1, diagnostics: bool = False) -> CoreResult:
    """Bucket peeling seeded with LB2, computing h-degrees lazily."""
    _check_h(h)
    t0 = time.perf_counter()
    result = CoreResult(np.zeros(g.n, dtype=np.int64), h, "lb", peel_order=[])
    with Traverser(g, threads) as engine:
        lb1 = compute_lb1(g, h, engine)
        lb2 = compute_lb2(g, h, lb1, engine)
        result.bound_visits = engine.visited
        engine.visited = 0
        buckets = BucketQueue(g.n)
        for v in range(g.n):
            buckets.push(v, int(lb2[v]))
        set_lb = np.ones(g.n, dtype=np.bool_)
        result.distance_computations = engine.visited
        core_decomp_interval(g, AliveMask.full(g.n), h, 1, g.n, buckets, set_lb, result, engine)
    if diagnostics:
        result.diagnostics = {"lb1": lb1, "lb2": lb2}
    result.seconds = time.perf_counter() - t0
    return result


def decompose_hlbub(g: Graph, h: int, s: int = 1, threads: int = 1, diagnostics: bool = False) -> CoreResult:
    """Top-down decomposition over intervals of ``s`` distinct upper-bound values."""
    _check_h(h)
    if s < 1:
        raise ValueError(f"partition size must be >= 1, got {s}")
    t0 = time.perf_counter()
    result = CoreResult(np.zeros(g.n, dtype=np.int64), h, "lbub")
    with Traverser(g, threads) as engine:
        lb1 = compute_lb1(g, h, engine)
        lb2 = compute_lb2(g, h, lb1, engine)
        result.bound_visits = engine.visited
        engine.visited = 0
        hdeg = engine.degrees(AliveMask.full(g.n), _all_vertices(g), h)
        ub = compute_ub(g, h, hdeg, engine)
        lb3 = np.zeros(g.n, dtype=np.int64)
        plan = PartitionPlan.build(ub.tolist(), int(lb2.min()) if g.n else 0, s)
        core = result.core
        for k_min, k_max in plan.intervals:
            members = np.flatnonzero(ub >= k_min)
            if not (core[members] == 0).any():
                continue  # every candidate already finalized higher up
            kept, lb3_part = improve_lb(g, members, h, k_min, lb2, engine, core)
            lb3[members] = np.maximum(lb3[members], lb3_part[members])
            if not len(kept):
                continue
            mask = AliveMask.from_subset(g.n, kept)
            buckets = BucketQueue(g.n)
            seeds = np.maximum(np.maximum(core[kept], lb3[kept]), k_min - 1)
            for v, b in zip(kept.tolist(), seeds.tolist()):
                buckets.push(v, b)
            set_lb = np.ones(g.n, dtype=np.bool_)
            core_decomp_interval(g, mask, h, k_min, k_max, buckets, set_lb, result, engine)
        result.distance_computations = engine.visited
    if diagnostics:
        # vertices never passed to improve_lb keep their LB2
        lb3 = np.maximum(lb3, lb2)
        result.diagnostics = {"lb1": lb1, "lb2": lb2, "lb3": lb3, "ub": ub, "hdeg": hdeg}
    result.seconds = time.perf_counter() - t0
    return result


def decompose(g: Graph, h: int, algorithm: str = "lbub", s: int = 1, threads: int = 1,
              diagnostics: bool = False) -> CoreResult:
    if algorithm == "bz":
        return decompose_hbz(g, h, threads, diagnostics)
    if algorithm == "lb":
        return decompose_hlb(g, h, threads, diagnostics)
    if algorithm == "lbub":
        return decompose_hlbub(g, h, s, threads, diagnostics)
    raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {ALGORITHMS}")


def bound_error(bound: np.ndarray, core: np.ndarray) -> tuple[float, float]:
    """Mean relative error |bound - core| / core over vertices with core > 0, and fraction exact."""
    sel = core > 0
    if not sel.any():
        return 0.0, 1.0
    rel = np.abs(bound[sel] - core[sel]) / core[sel]
    return float(rel.mean()), float(np.mean(bound[sel] == core[sel]))
