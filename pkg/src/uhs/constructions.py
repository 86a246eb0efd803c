"""Composite hypergraphs (join, direct product, generalized power,
extensions) with the closed-form radius each construction predicts, plus
the named example fixtures used throughout the tests and CLI.
"""

from __future__ import annotations

import math
from itertools import permutations

from .core import UniformHypergraph
from .errors import PreconditionError


def join(G1: UniformHypergraph, G2: UniformHypergraph) -> UniformHypergraph:
    """G1 * G2: (r1+r2)-uniform, edges e u f; G2 vertices shifted by n1."""
    shift = G1.n
    edges = [e + tuple(v + shift for v in f) for e in G1.edges for f in G2.edges]
    return UniformHypergraph.from_edges(G1.r + G2.r, G1.n + G2.n, edges)


def join_lambda(lam1: float, lam2: float, r1: int, r2: int, p: float) -> float:
    """Closed-form radius of G1 * G2 from the operand radii (p > r1+r2)."""
    if p <= r1 + r2:
        raise PreconditionError(f"join formula requires p > r1+r2 (got p={p})")
    if lam1 <= 0 or lam2 <= 0:
        raise PreconditionError("operand radii must be positive")
    rs = r1 + r2
    return rs ** (1.0 - rs / p) / (r1 ** (1.0 - r1 / p) * r2 ** (1.0 - r2 / p)) * lam1 * lam2


def direct_product(G1: UniformHypergraph, G2: UniformHypergraph) -> UniformHypergraph:
    """G1 x G2 on V1 x V2 ((i, j) -> i*n2 + j, row-major), same uniformity.

    Edges are all r-sets projecting onto an edge in each operand: for each
    edge pair, every matching of the two vertex sets, deduplicated after
    canonicalization.
    """
    if G1.r != G2.r:
        raise PreconditionError("direct product requires equal uniformity")
    r, n2 = G1.r, G2.n
    edges = set()
    for e in G1.edges:
        for f in G2.edges:
            for perm in permutations(f):
                cand = tuple(sorted(e[i] * n2 + perm[i] for i in range(r)))
                if len(set(cand)) == r:
                    edges.add(cand)
    return UniformHypergraph.from_edges(r, G1.n * G2.n, sorted(edges))


def product_lambda(lam1: float, lam2: float, r: int, p: float) -> float:
    """(r-1)! * lam1 * lam2; closed form for the direct product (p > r)."""
    if p <= r:
        raise PreconditionError(f"product formula requires p > r (got p={p})")
    return math.factorial(r - 1) * lam1 * lam2


def generalized_power(G: UniformHypergraph) -> UniformHypergraph:
    """G^{r+1}: add one fresh degree-1 vertex to every edge."""
    edges = [e + (G.n + k,) for k, e in enumerate(G.edges)]
    return UniformHypergraph.from_edges(G.r + 1, G.n + G.m, edges)


def power_lambda(lam: float, r: int, p: float) -> float:
    """lambda^{(p+1)} of G^{r+1} given lambda^{(p)}(G) = lam (p > r)."""
    if p <= r:
        raise PreconditionError(f"power formula requires p > r (got p={p})")
    return ((r + 1.0) / r) ** ((p - r) / (p + 1.0)) * lam ** (p / (p + 1.0))


def _set_partitions(items: list[int]):
    """All partitions of items into nonempty classes (classes ordered by
    their smallest element, so each partition appears once)."""
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]
        yield [[first]] + part


def extensions_enumerate(G: UniformHypergraph, guard: int = 8) -> list[UniformHypergraph]:
    """All extensions of G: one new vertex per class of an edge partition,
    added to every edge of its class.  Includes G^{r+1} (all singletons)
    and G*K_1 (one class).  Enumeration over set partitions; guarded by m.
    """
    if G.m > guard:
        raise PreconditionError(f"extension enumeration limited to m <= {guard} (m={G.m})")
    out = []
    seen = set()
    for part in _set_partitions(list(range(G.m))):
        classes = sorted(part, key=min)
        cls_of = {}
        for i, cls in enumerate(classes):
            for k in cls:
                cls_of[k] = i
        edges = tuple(
            sorted(tuple(sorted(e + (G.n + cls_of[k],))) for k, e in enumerate(G.edges))
        )
        if edges in seen:
            continue
        seen.add(edges)
        out.append(UniformHypergraph.from_edges(G.r + 1, G.n + len(classes), edges))
    return out


def k_r_r(r: int) -> UniformHypergraph:
    """Single-edge r-uniform hypergraph on r vertices (r >= 1; r = 1 gives
    the K_1 join operand with radius 1 for every p)."""
    return UniformHypergraph.from_edges(r, r, [tuple(range(r))])


def grid_g1() -> UniformHypergraph:
    """4-uniform grid on 25 vertices: the 16 unit cells of a 4x4 subdivision
    of a square, each cell's four corners forming one edge."""
    edges = []
    for i in range(4):
        for j in range(4):
            v = 5 * i + j
            edges.append((v, v + 1, v + 5, v + 6))
    return UniformHypergraph.from_edges(4, 25, edges)


def grid_g1_orbits() -> list[list[int]]:
    """Edge orbit classes of the grid under its dihedral symmetry:
    corner cells, side cells, center cells (in that order)."""
    corner, side, center = [], [], []
    for i in range(4):
        for j in range(4):
            k = 4 * i + j
            if i in (0, 3) and j in (0, 3):
                corner.append(k)
            elif i in (1, 2) and j in (1, 2):
                center.append(k)
            else:
                side.append(k)
    return [corner, side, center]


def star_g2() -> UniformHypergraph:
    """3-uniform hypergraph on 8 vertices with 4 edges through a common
    center; two of the edges additionally share a second vertex."""
    return UniformHypergraph.from_edges(
        3, 8, [(0, 1, 2), (0, 1, 3), (0, 4, 5), (0, 6, 7)]
    )


def star_g2_orbits() -> list[list[int]]:
    """Edge orbits of star_g2: the two edges through the shared pair, then
    the two pendant edges."""
    return [[0, 1], [2, 3]]


def two_triangles_path() -> UniformHypergraph:
    """Graph (r=2) on 6 vertices and 7 edges: two triangles linked by an
    edge between them."""
    return UniformHypergraph.from_edges(
        2, 6, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (4, 5), (3, 5)]
    )


def fixtures() -> dict[str, UniformHypergraph]:
    """Named example hypergraphs addressable from the CLI."""
    return {
        "grid_g1": grid_g1(),
        "star_g2": star_g2(),
        "two_triangles_path": two_triangles_path(),
        "k_2_2": k_r_r(2),
        "k_3_3": k_r_r(3),
        "k_4_4": k_r_r(4),
    }
