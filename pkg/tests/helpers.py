"""Instance generators shared by the test modules."""

from itertools import combinations

import numpy as np

from uhs.core import UniformHypergraph, is_connected


def random_connected(rng: np.random.Generator, r: int, n: int, extra: int = 2) -> UniformHypergraph:
    """Random connected r-uniform hypergraph covering all n vertices.

    A chain of edges overlapping in one vertex guarantees coverage and
    connectivity; `extra` random edges are sprinkled on top.
    """
    assert n >= r
    perm = [int(v) for v in rng.permutation(n)]
    edges = set()
    i = 0
    while i + r <= n:
        edges.add(tuple(sorted(perm[i : i + r])))
        i += r - 1
    if i < n:
        edges.add(tuple(sorted(perm[n - r : n])))
    pool = list(combinations(range(n), r))
    target = len(edges) + extra
    for k in rng.permutation(len(pool)):
        if len(edges) >= target:
            break
        edges.add(pool[int(k)])
    G = UniformHypergraph.from_edges(r, n, edges)
    assert is_connected(G)
    return G


def grid_lambda(p: float) -> float:
    """Closed-form radius of the 4-uniform 16-cell grid fixture (p > 4)."""
    c = 4.0 ** (1.0 / (p - 2.0))
    return 16.0 ** (1.0 - 4.0 / p) * (1.0 + c) ** (2.0 * (p - 2.0) / p)


def star_lambda(p: float) -> float:
    """Closed-form radius of the 3-uniform star fixture (p > 3)."""
    c = 2.0 ** (1.0 / (p - 2.0))
    return 3.0 ** (1.0 - 3.0 / p) * 2.0 ** (1.0 - 2.0 / p) * (1.0 + c) ** (1.0 - 2.0 / p)


def star_weights(p: float) -> tuple[float, float, float]:
    """Closed-form orbit weights (shared-pair edges, pendant edges) and
    alpha of the star fixture."""
    c = 2.0 ** (1.0 / (p - 2.0))
    w1 = c / (2.0 * (1.0 + c))
    w2 = 1.0 / (2.0 * (1.0 + c))
    alpha = 2.0 ** (2.0 - p) * (1.0 + c) ** (2.0 - p)
    return w1, w2, alpha


def enumerate_connected(n: int, r: int):
    """All connected r-uniform hypergraphs on exactly n labeled vertices
    (every vertex covered)."""
    pool = list(combinations(range(n), r))
    out = []
    for mask in range(1, 1 << len(pool)):
        edges = [pool[k] for k in range(len(pool)) if mask >> k & 1]
        if len(set(v for e in edges for v in e)) != n:
            continue
        G = UniformHypergraph.from_edges(r, n, edges)
        if is_connected(G):
            out.append(G)
    return out
