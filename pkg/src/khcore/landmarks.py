"""Landmark selection and triangle-inequality distance bounds."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decomposition import CoreResult, decompose
from .graph import AliveMask, Graph, GraphError, h_bfs

STRATEGIES = ("core", "degree", "random")


@dataclass
class LandmarkIndex:
    landmarks: np.ndarray
    distances: np.ndarray  # (len(landmarks), n), inf where unreachable
    strategy: str = "core"


@dataclass
class DistanceEstimate:
    lower: float
    upper: float
    estimate: float


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    dist = np.full(g.n, np.inf)
    nb = h_bfs(g, AliveMask.full(g.n), source, max(g.n, 1))
    dist[nb.vertices] = nb.distances
    dist[source] = 0
    return dist


def _from_cores(result: CoreResult, ell: int, rng: np.random.Generator) -> list[int]:
    chosen: list[int] = []
    for k in result.distinct_core_indices():
        shell = np.flatnonzero(result.core == k)
        need = ell - len(chosen)
        if len(shell) <= need:
            chosen.extend(shell.tolist())
        else:
            chosen.extend(rng.choice(shell, size=need, replace=False).tolist())
        if len(chosen) == ell:
            break
    return chosen


def select_landmarks(g: Graph, h: int, ell: int, seed: int = 0, strategy: str = "core",
                     result: CoreResult | None = None) -> LandmarkIndex:
    """Pick ``ell`` landmarks and store one full BFS distance array per landmark.

    ``core`` samples from the maximum-index (k,h)-core, spilling into lower
    cores when it is too small; ``degree`` takes the top ``ell`` by h-degree;
    ``random`` samples uniformly from all vertices.
    """
    if ell < 1 or ell > g.n:
        raise ValueError(f"ell must be in [1, {g.n}], got {ell}")
    rng = np.random.default_rng(seed)
    if strategy == "core":
        if result is None:
            result = decompose(g, h)
        chosen = _from_cores(result, ell, rng)
    elif strategy == "degree":
        full = AliveMask.full(g.n)
        hdeg = np.array([len(h_bfs(g, full, v, h)) for v in range(g.n)])
        chosen = sorted(range(g.n), key=lambda v: (-hdeg[v], v))[:ell]
    elif strategy == "random":
        chosen = rng.choice(g.n, size=ell, replace=False).tolist()
    else:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    landmarks = np.array(chosen, dtype=np.int64)
    dists = np.vstack([bfs_distances(g, int(u)) for u in landmarks])
    return LandmarkIndex(landmarks, dists, strategy)


def estimate_distance(index: LandmarkIndex, s: int, t: int) -> DistanceEstimate:
    """max |d(s,u) - d(u,t)| <= d(s,t) <= min d(s,u) + d(u,t) over landmarks u.

    Landmarks that cannot reach both endpoints are ignored; with none left the
    bounds are vacuous (0, inf).
    """
    n = index.distances.shape[1]
    if not (0 <= s < n and 0 <= t < n):
        raise GraphError(f"vertex pair ({s}, {t}) out of range")
    ds = index.distances[:, s]
    dt = index.distances[:, t]
    ok = np.isfinite(ds) & np.isfinite(dt)
    if not ok.any():
        return DistanceEstimate(0.0, np.inf, np.inf)
    lower = float(np.abs(ds[ok] - dt[ok]).max())
    upper = float((ds[ok] + dt[ok]).min())
    return DistanceEstimate(lower, upper, (lower + upper) / 2)


def sample_pairs(n: int, count: int, seed: int = 0) -> list[tuple[int, int]]:
    """``count`` random ordered pairs with s != t."""
    if n < 2:
        return []
    rng = np.random.default_rng(seed)
    pairs = []
    while len(pairs) < count:
        s, t = rng.integers(0, n, size=2).tolist()
        if s != t:
            pairs.append((s, t))
    return pairs


def relative_error(est: DistanceEstimate, true: float) -> float | None:
    """|estimate - d| / d, or None for degenerate (s = t) or unreachable pairs."""
    if not np.isfinite(true) or true == 0:
        return None
    return abs(est.estimate - true) / true
