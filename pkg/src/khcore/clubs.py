"""Maximum h-club search: an exact branch-and-bound solver and a core-guided driver."""

from __future__ import annotations

import sys
from dataclasses import dataclass

import numpy as np

from .decomposition import CoreResult, decompose
from .graph import AliveMask, Graph, h_bfs, induced_diameter_leq


@dataclass
class ClubCertificate:
    members: np.ndarray
    h: int
    verified: bool = False

    @property
    def size(self) -> int:
        return len(self.members)


def is_h_club(g: Graph, subset, h: int) -> bool:
    return induced_diameter_leq(g, subset, h)


class _Search:
    def __init__(self, g: Graph, h: int, rank: np.ndarray, best: int):
        self.g = g
        self.h = h
        self.rank = rank  # lower rank = preferred branching vertex
        self.best = best
        self.best_set: list[int] | None = None
        self.nodes = 0

    def _balls(self, members: list[int]) -> dict[int, set[int]]:
        mask = AliveMask.from_subset(self.g.n, members)
        return {v: set(h_bfs(self.g, mask, v, self.h).vertices.tolist()) for v in members}

    def expand(self, chosen: list[int], cands: list[int]) -> None:
        self.nodes += 1
        # a club inside chosen+cands is a club of a subgraph of G[chosen+cands],
        # so anything out of h-range of a chosen vertex there can be dropped
        while True:
            if len(chosen) + len(cands) <= self.best:
                return
            balls = self._balls(chosen + cands)
            for c in chosen:
                if any(d != c and d not in balls[c] for d in chosen):
                    return
            kept = [u for u in cands if all(u in balls[c] for c in chosen)]
            if len(kept) == len(cands):
                break
            cands = kept
        members = chosen + cands
        size = len(members)
        misses = {u: size - 1 - len(balls[u]) for u in cands}
        if not any(misses.values()):
            self.best = size
            self.best_set = sorted(members)
            return
        u = max(cands, key=lambda x: (misses[x], -self.rank[x]))
        rest = [x for x in cands if x != u]
        self.expand(chosen + [u], rest)
        self.expand(chosen, rest)


def exact_h_club(g: Graph, h: int, lower: int = 0, result: CoreResult | None = None) -> ClubCertificate:
    """Maximum h-club of ``g`` by branch and bound.

    Only clubs larger than ``lower`` are searched for; when none exists the
    returned certificate may be smaller than ``lower`` (or empty). Worst-case
    exponential: meant for graphs already shrunk by core filtering.
    """
    if g.n == 0:
        return ClubCertificate(np.zeros(0, dtype=np.int64), h, True)
    if g.n > lower and induced_diameter_leq(g, range(g.n), h):
        return ClubCertificate(np.arange(g.n, dtype=np.int64), h, True)
    if result is None:
        result = decompose(g, h, "lb")
    full = AliveMask.full(g.n)
    hdeg = np.array([len(h_bfs(g, full, v, h)) for v in range(g.n)])
    order = sorted(range(g.n), key=lambda v: (-result.core[v], -hdeg[v], v))
    rank = np.empty(g.n, dtype=np.int64)
    rank[order] = np.arange(g.n)

    search = _Search(g, h, rank, max(lower, 0))
    allowed = AliveMask.full(g.n)
    # search depth can reach the candidate count
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 2 * g.n + 200))
    try:
        for v in order:
            # clubs containing v and none of the earlier first vertices
            ball = h_bfs(g, allowed, v, h).vertices.tolist()
            if 1 + len(ball) > search.best:
                search.expand([v], sorted(ball, key=rank.__getitem__))
            allowed.kill(v)
    finally:
        sys.setrecursionlimit(old_limit)
    if search.best_set is None:
        return ClubCertificate(np.zeros(0, dtype=np.int64), h, False)
    members = np.array(search.best_set, dtype=np.int64)
    return ClubCertificate(members, h, is_h_club(g, members, h))


def max_h_club(g: Graph, h: int, result: CoreResult | None = None) -> ClubCertificate:
    """Maximum h-club, solving exactly on cores from the innermost outwards.

    A club of size S lies inside C_{S-1}, so once a club larger than the
    current core index is found nothing outside that core can beat it.
    """
    if result is None:
        result = decompose(g, h)
    if g.n == 0:
        return ClubCertificate(np.zeros(0, dtype=np.int64), h, True)
    values = sorted(set(result.core.tolist()))
    best = np.zeros(0, dtype=np.int64)
    solved_at = None
    k = result.max_core
    while True:
        # C_k equals C_c for the smallest distinct core value c >= k
        c = next(x for x in values if x >= k)
        if c != solved_at:
            solved_at = c
            members = result.members(c)
            sub, ids = g.subgraph(members)
            cert = exact_h_club(sub, h, lower=len(best))
            if cert.size > len(best):
                best = ids[cert.members]
        if len(best) > k or k == 0:
            break
        k = min(k - 1, len(best)) if len(best) else k - 1
    return ClubCertificate(np.sort(best), h, is_h_club(g, best, h) if len(best) else False)
