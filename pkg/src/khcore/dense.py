"""Dense-subgraph applications of the decomposition: densest h-core and community search."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable, Iterable

import numpy as np

from .decomposition import CoreResult, decompose
from .graph import AliveMask, Graph, GraphError, h_bfs, h_degree


class NoSolutionError(ValueError):
    pass


@dataclass
class DensestResult:
    members: np.ndarray
    density: float  # average h-degree inside G[members]
    core_index: int


@dataclass
class Community:
    members: np.ndarray
    k: int
    min_h_degree: int


def induced_h_degrees(g: Graph, members: Iterable[int], h: int) -> np.ndarray:
    members = np.asarray(list(members), dtype=np.int64)
    mask = AliveMask.from_subset(g.n, members)
    return np.array([h_degree(g, mask, int(v), h) for v in members], dtype=np.int64)


def average_h_degree(g: Graph, members: Iterable[int], h: int) -> float:
    degs = induced_h_degrees(g, members, h)
    return float(degs.mean()) if len(degs) else 0.0


def densest_h_core(g: Graph, h: int, result: CoreResult | None = None) -> DensestResult:
    """The core with the largest average h-degree; ties go to the higher core index.

    Its density is at least sqrt(f* + 1/4) - 1/2 where f* is the optimum
    average h-degree over all vertex subsets.
    """
    if g.n == 0:
        raise GraphError("graph is empty")
    if result is None:
        result = decompose(g, h)
    best: DensestResult | None = None
    for k in result.distinct_core_indices():
        members = result.members(k)
        f = average_h_degree(g, members, h)
        if best is None or f > best.density:
            best = DensestResult(members, f, k)
    return best


def component(g: Graph, mask: AliveMask, source: int) -> np.ndarray:
    """Connected component of ``source`` in the masked subgraph, sorted."""
    reach = h_bfs(g, mask, source, max(g.n, 1)).vertices
    return np.sort(np.append(reach, source))


def cocktail_party(g: Graph, query: Iterable[int], h: int, result: CoreResult | None = None) -> Community:
    """Connected vertex set containing ``query`` with the largest minimum h-degree.

    The answer is the component holding all of ``query`` in the highest
    (k,h)-core where the query vertices are still connected to each other.
    """
    q = sorted(set(int(v) for v in query))
    if not q:
        raise ValueError("query must be non-empty")
    if q[0] < 0 or q[-1] >= g.n:
        raise GraphError("query vertex out of range")
    if result is None:
        result = decompose(g, h)
    for k in result.distinct_core_indices() + [0]:
        if min(result.core[q]) < k:
            continue
        mask = AliveMask(result.core >= k)
        comp = component(g, mask, q[0])
        if np.isin(q, comp).all():
            degs = induced_h_degrees(g, comp, h)
            return Community(comp, k, int(degs.min()))
    raise NoSolutionError("query vertices lie in different connected components")


def labels_to_ids(g: Graph, labels: Iterable[Hashable]) -> list[int]:
    return [g.id_of(lab) for lab in labels]
