"""Shared construction helpers for the test suite."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from structhunt.graphcore import LayeredGraph, norm_edge


def graph_from_edges(n, edges, **extra_layers):
    layers = {"G": [norm_edge(*e) for e in edges]}
    for name, es in extra_layers.items():
        layers[name] = [norm_edge(*e) for e in es]
    return LayeredGraph(n, layers)


def complete_graph(n):
    return graph_from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite(a_ids, b_ids, n=None):
    a_ids, b_ids = sorted(a_ids), sorted(b_ids)
    n = n if n is not None else max(a_ids + b_ids) + 1
    return graph_from_edges(n, [(u, v) for u in a_ids for v in b_ids])


def path_graph(n):
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def random_graph(n, p, seed):
    rng = random.Random(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return graph_from_edges(n, edges)


def random_bipartite_edges(a_ids, b_ids, p, seed):
    rng = random.Random(seed)
    return [(u, v) for u in a_ids for v in b_ids if rng.random() < p]


def brute_force_e_ordered(edges, X, Y):
    """Oracle: count ordered pairs (x, y) in X x Y with xy an edge."""
    es = {norm_edge(*e) for e in edges}
    return sum(1 for x in X for y in Y if x != y and norm_edge(x, y) in es)


def brute_force_density(edges, U, W):
    return Fraction(brute_force_e_ordered(edges, U, W), len(U) * len(W))
