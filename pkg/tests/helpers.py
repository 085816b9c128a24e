"""Graph builders and dataset lookup shared by the test modules."""

import os
import random
from pathlib import Path

from khcore.graph import Graph, load_edge_list

DATA_DIR = Path(os.environ.get("KHCORE_DATA", Path(__file__).parent / "data"))

DATASETS = {
    "jazz": ["jazz.txt", "jazz.edges", "out.arenas-jazz", "arenas-jazz.txt"],
    "coli": ["coli.txt", "coli1.txt", "coli1_1Inter_st.txt", "coli.edges"],
    "cele": ["cele.txt", "celegans_metabolic.txt", "celegans_metab.txt", "cele.edges"],
    "FBco": ["FBco.txt", "facebook_combined.txt", "facebook-comb.txt", "fbco.txt"],
}


def dataset_path(name):
    for fname in DATASETS[name]:
        p = DATA_DIR / fname
        if p.exists():
            return p
    return None


def load_dataset(name):
    """Graph for a named dataset, or None when no file is present under DATA_DIR."""
    p = dataset_path(name)
    return load_edge_list(p) if p else None


def er_graph(n, p, seed):
    rnd = random.Random(seed)
    edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rnd.random() < p]
    return Graph.from_edges(edges, n=n)


def er_suite(count=200, n_range=(5, 60), probs=(0.05, 0.1, 0.3), seed=2024):
    """The random oracle suite: (n, p, graph) triples."""
    rnd = random.Random(seed)
    out = []
    for i in range(count):
        n = rnd.randint(*n_range)
        p = probs[i % len(probs)]
        out.append((n, p, er_graph(n, p, rnd.randrange(1 << 30))))
    return out


def clique(n):
    return Graph.from_edges([(i, j) for i in range(n) for j in range(i + 1, n)])


def path(n):
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)])


def cycle(n):
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)])


def star(leaves):
    return Graph.from_edges([(0, i) for i in range(1, leaves + 1)])


def triangle_pendant():
    return Graph.from_edges([(0, 1), (1, 2), (2, 0), (2, 3)])
