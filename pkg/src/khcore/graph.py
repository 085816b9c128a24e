"""Graph storage, edge-list ingestion and h-bounded traversal over induced subgraphs."""

from __future__ import annotations

import threading
from dataclasses import dataclass
from os import PathLike
from typing import Hashable, Iterable, Sequence

import numpy as np

from . import _kernels


class GraphError(ValueError):
    """Raised for contract violations on graph operations."""


class ParseError(ValueError):
    """Raised when an edge-list file cannot be parsed."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class EmptyGraphError(ParseError):
    pass


class Scratch:
    """Per-thread traversal buffers.

    ``seen`` holds epoch stamps, so a new traversal only bumps ``epoch``
    instead of clearing an O(n) array.
    """

    __slots__ = ("seen", "queue", "dist", "epoch")

    def __init__(self, n: int):
        self.seen = np.zeros(max(n, 1), dtype=np.int64)
        self.queue = np.empty(max(n, 1), dtype=np.int32)
        self.dist = np.empty(max(n, 1), dtype=np.int32)
        self.epoch = 0


class Graph:
    """Immutable undirected simple graph in CSR form.

    Internal vertex ids are ``0..n-1``; ``labels[i]`` is the external label
    of vertex ``i``. Neighbor lists are sorted ascending.
    """

    def __init__(self, indptr: np.ndarray, indices: np.ndarray, labels: Sequence[Hashable] | None = None):
        self.indptr = np.ascontiguousarray(indptr, dtype=np.int64)
        self.indices = np.ascontiguousarray(indices, dtype=np.int32)
        self.indptr.setflags(write=False)
        self.indices.setflags(write=False)
        n = len(self.indptr) - 1
        self.labels = list(range(n)) if labels is None else list(labels)
        if len(self.labels) != n:
            raise GraphError(f"{len(self.labels)} labels for {n} vertices")
        self._index = {lab: i for i, lab in enumerate(self.labels)}
        if len(self._index) != n:
            raise GraphError("vertex labels must be unique")
        self._local = threading.local()

    @classmethod
    def from_edges(cls, edges: Iterable[tuple[int, int]], n: int | None = None,
                   labels: Sequence[Hashable] | None = None) -> "Graph":
        """Build from internal-id edges; self-loops and duplicates are dropped."""
        arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if n is None:
            n = int(arr.max()) + 1 if arr.size else 0
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise GraphError("edge endpoint out of range")
        arr = arr[arr[:, 0] != arr[:, 1]]
        both = np.concatenate([arr, arr[:, ::-1]])
        if both.size:
            both = np.unique(both, axis=0)  # sorts by (src, dst)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(np.bincount(both[:, 0], minlength=n), out=indptr[1:])
        return cls(indptr, both[:, 1], labels)

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, int(w)) for u in range(self.n) for w in self.neighbors(u) if u < w]

    def id_of(self, label: Hashable) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GraphError(f"unknown vertex label {label!r}") from None

    def label_of(self, v: int) -> Hashable:
        return self.labels[v]

    def subgraph(self, vertices: Iterable[int]) -> tuple["Graph", np.ndarray]:
        """Induced subgraph; returns it with the array mapping new ids to ids of ``self``."""
        ids = np.unique(np.fromiter(vertices, dtype=np.int64))
        remap = np.full(self.n, -1, dtype=np.int64)
        remap[ids] = np.arange(len(ids))
        edges = [(remap[u], remap[w]) for u in ids for w in self.neighbors(u)
                 if u < w and remap[w] >= 0]
        sub = Graph.from_edges(edges, n=len(ids), labels=[self.labels[i] for i in ids])
        return sub, ids

    def scratch(self) -> Scratch:
        """Traversal buffers owned by the calling thread."""
        s = getattr(self._local, "scratch", None)
        if s is None:
            s = self._local.scratch = Scratch(self.n)
        return s


class AliveMask:
    """Boolean view selecting the induced subgraph currently under consideration."""

    __slots__ = ("alive", "alive_count")

    def __init__(self, alive: np.ndarray):
        self.alive = np.ascontiguousarray(alive, dtype=np.bool_)
        self.alive_count = int(self.alive.sum())

    @classmethod
    def full(cls, n: int) -> "AliveMask":
        return cls(np.ones(n, dtype=np.bool_))

    @classmethod
    def from_subset(cls, n: int, vertices: Iterable[int]) -> "AliveMask":
        alive = np.zeros(n, dtype=np.bool_)
        alive[np.fromiter(vertices, dtype=np.int64)] = True
        return cls(alive)

    def __contains__(self, v: int) -> bool:
        return bool(self.alive[v])

    def __len__(self) -> int:
        return self.alive_count

    def kill(self, v: int) -> None:
        if self.alive[v]:
            self.alive[v] = False
            self.alive_count -= 1

    def vertices(self) -> np.ndarray:
        return np.flatnonzero(self.alive).astype(np.int32)

    def copy(self) -> "AliveMask":
        return AliveMask(self.alive.copy())


@dataclass(frozen=True)
class HNeighborhood:
    """Vertices within distance ``h`` of ``source`` (source excluded)."""

    source: int
    h: int
    vertices: np.ndarray
    distances: np.ndarray

    def __len__(self) -> int:
        return len(self.vertices)

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.vertices.tolist(), self.distances.tolist()))


def _check(g: Graph, mask: AliveMask, source: int, h: int) -> None:
    if h < 1:
        raise GraphError(f"h must be >= 1, got {h}")
    if not 0 <= source < g.n:
        raise GraphError(f"vertex {source} out of range")
    if not mask.alive[source]:
        raise GraphError(f"source vertex {source} is not alive")


def h_bfs(g: Graph, mask: AliveMask, source: int, h: int) -> HNeighborhood:
    """Alive vertices at distance 1..h from ``source`` inside the masked subgraph."""
    _check(g, mask, source, h)
    s = g.scratch()
    s.epoch += 1
    c = _kernels.hbfs(g.indptr, g.indices, mask.alive, source, h, s.seen, s.epoch, s.queue, s.dist)
    verts = s.queue[1:c + 1].copy()
    return HNeighborhood(source, h, verts, s.dist[verts].copy())


def h_degree(g: Graph, mask: AliveMask, source: int, h: int) -> int:
    _check(g, mask, source, h)
    s = g.scratch()
    s.epoch += 1
    return int(_kernels.hbfs(g.indptr, g.indices, mask.alive, source, h, s.seen, s.epoch, s.queue, s.dist))


def induced_diameter_leq(g: Graph, subset: Iterable[int], h: int) -> bool:
    """True iff every pair of ``subset`` is within distance ``h`` inside G[subset]."""
    members = np.unique(np.fromiter(subset, dtype=np.int64))
    if members.size == 0:
        raise GraphError("subset must be non-empty")
    mask = AliveMask.from_subset(g.n, members)
    target = len(members) - 1
    for v in members:
        if h_degree(g, mask, int(v), h) != target:
            return False
    return True


def load_edge_list(path: str | PathLike) -> Graph:
    """Read a whitespace-separated edge list.

    Lines starting with ``#`` or ``%`` and blank lines are skipped. Labels are
    kept as strings and numbered in first-seen order.
    """
    index: dict[str, int] = {}
    labels: list[str] = []
    edges: list[tuple[int, int]] = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line[0] in "#%":
                continue
            tokens = line.split()
            if len(tokens) != 2:
                raise ParseError(f"expected 2 tokens, got {len(tokens)}", lineno)
            ids = []
            for tok in tokens:
                i = index.get(tok)
                if i is None:
                    i = index[tok] = len(labels)
                    labels.append(tok)
                ids.append(i)
            edges.append((ids[0], ids[1]))
    if not labels:
        raise EmptyGraphError(f"no edges in {path}")
    return Graph.from_edges(edges, n=len(labels), labels=labels)
