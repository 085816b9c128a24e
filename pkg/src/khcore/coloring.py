"""Greedy distance-h coloring in reverse peeling order."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decomposition import CoreResult
from .graph import AliveMask, Graph, h_bfs


@dataclass
class Coloring:
    color: np.ndarray
    num_colors: int


def greedy_distance_h_coloring(g: Graph, h: int, result: CoreResult) -> Coloring:
    """Color vertices in reverse peeling order with the smallest free color.

    Conflicts are vertices within distance h in the whole graph. For h = 1
    this uses at most 1 + (largest core index) colors. For h >= 2 that bound
    can fail: peeling measures h-degrees in shrinking induced subgraphs, where
    distances are longer than in the whole graph.
    """
    if result.peel_order is None or len(result.peel_order) != g.n:
        raise ValueError("coloring needs a decomposition with a complete peeling order "
                         "(algorithm 'bz' or 'lb')")
    full = AliveMask.full(g.n)
    color = np.full(g.n, -1, dtype=np.int64)
    for v in reversed(result.peel_order):
        used = set(color[h_bfs(g, full, v, h).vertices].tolist())
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return Coloring(color, int(color.max()) + 1 if g.n else 0)
