"""Reference (k,h)-core decomposition straight from the definition.

Shares no code with the peeling algorithms: h-reachability inside the
current vertex set comes from boolean matrix powers of the induced
adjacency matrix, and every C_k is computed from scratch. Meant for small
graphs (a few hundred vertices at most).
"""

from __future__ import annotations

import numpy as np

from .decomposition import CoreResult
from .graph import Graph


def _adjacency(g: Graph) -> np.ndarray:
    adj = np.zeros((g.n, g.n), dtype=np.bool_)
    for u in range(g.n):
        adj[u, g.neighbors(u)] = True
    return adj


def induced_h_degrees(adj: np.ndarray, members: np.ndarray, h: int) -> np.ndarray:
    """h-degree of each member inside the subgraph induced by ``members``."""
    sub = adj[np.ix_(members, members)].astype(np.int64)
    reach = np.eye(len(members), dtype=np.int64)
    step = sub + reach
    for _ in range(h):
        reach = np.minimum(reach @ step, 1)
    return reach.sum(axis=1) - 1


def k_core_members(adj: np.ndarray, k: int, h: int, order: np.ndarray) -> np.ndarray:
    """C_k by deleting, one at a time, the first vertex in ``order`` with h-degree < k."""
    rank = np.empty(len(order), dtype=np.int64)
    rank[order] = np.arange(len(order))
    members = np.sort(order)
    while len(members):
        deg = induced_h_degrees(adj, members, h)
        bad = members[deg < k]
        if not len(bad):
            break
        victim = bad[np.argmin(rank[bad])]
        members = members[members != victim]
    return members


def naive_oracle(g: Graph, h: int, order: str = "id", seed: int = 0) -> CoreResult:
    """core(v) = largest k with v in C_k, each C_k computed independently.

    ``order`` picks which violating vertex goes first: "id", "reversed" or
    "shuffled" (seeded). The answer must not depend on it.
    """
    if h < 1:
        raise ValueError(f"h must be >= 1, got {h}")
    ids = np.arange(g.n)
    if order == "reversed":
        ids = ids[::-1].copy()
    elif order == "shuffled":
        ids = np.random.default_rng(seed).permutation(g.n)
    elif order != "id":
        raise ValueError(f"unknown order {order!r}")
    adj = _adjacency(g)
    core = np.zeros(g.n, dtype=np.int64)
    k = 1
    while True:
        ck = k_core_members(adj, k, h, ids)
        if not len(ck):
            break
        core[ck] = k
        k += 1
    return CoreResult(core, h, "naive")
