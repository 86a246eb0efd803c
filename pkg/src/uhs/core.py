"""r-uniform hypergraphs: representation, validation, I/O, basic combinatorics.

Vertices are dense integer indices 0..n-1; edges are strictly increasing
r-tuples kept in lexicographic order (canonical form).  Isolated vertices
are representable because n is explicit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .errors import HypergraphFormatError


@dataclass(frozen=True)
class UniformHypergraph:
    """Immutable r-uniform hypergraph in canonical form.

    ``edges_array`` (m x r int64) and per-vertex incidence lists are built
    eagerly since every solver iteration traverses them.
    """

    r: int
    n: int
    edges: tuple[tuple[int, ...], ...]
    edges_array: np.ndarray = field(init=False, repr=False, compare=False)
    incidence: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.r < 1:
            raise HypergraphFormatError(f"uniformity r={self.r} must be >= 1")
        if self.n < 0:
            raise HypergraphFormatError(f"vertex count n={self.n} must be >= 0")
        seen = set()
        for e in self.edges:
            if len(e) != self.r or len(set(e)) != self.r:
                raise HypergraphFormatError(f"edge {e} does not have {self.r} distinct vertices")
            if any(not (0 <= v < self.n) for v in e):
                raise HypergraphFormatError(f"edge {e} has a vertex index outside 0..{self.n - 1}")
            if tuple(sorted(e)) != e:
                raise HypergraphFormatError(f"edge {e} is not sorted (non-canonical)")
            if e in seen:
                raise HypergraphFormatError(f"duplicate edge {e}")
            seen.add(e)
        if list(self.edges) != sorted(self.edges):
            raise HypergraphFormatError("edge list is not in lexicographic order")
        arr = np.asarray(self.edges, dtype=np.int64).reshape(len(self.edges), self.r)
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for k, e in enumerate(self.edges):
            for v in e:
                inc[v].append(k)
        object.__setattr__(self, "edges_array", arr)
        object.__setattr__(self, "incidence", tuple(tuple(c) for c in inc))

    @property
    def m(self) -> int:
        return len(self.edges)

    @classmethod
    def from_edges(cls, r: int, n: int, edges: Iterable[Iterable[int]]) -> "UniformHypergraph":
        """Canonicalize (sort within edges, sort edge list) and validate."""
        canon = []
        for e in edges:
            e = tuple(int(v) for v in e)
            if len(set(e)) != len(e):
                raise HypergraphFormatError(f"edge {e} has a repeated vertex")
            canon.append(tuple(sorted(e)))
        if len(set(canon)) != len(canon):
            raise HypergraphFormatError("duplicate edge after canonicalization")
        return cls(r=r, n=n, edges=tuple(sorted(canon)))


@dataclass(frozen=True)
class DegreeProfile:
    degrees: np.ndarray
    delta: int
    Delta: int


class ComponentsResult(NamedTuple):
    components: list[tuple[UniformHypergraph, list[int]]]
    isolated: list[int]


def parse_hypergraph(text: str) -> UniformHypergraph:
    """Parse .uhg text: header ``r n`` then one edge per line; # comments."""
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise HypergraphFormatError("empty .uhg input")
    header = lines[0].split()
    if len(header) != 2:
        raise HypergraphFormatError(f"malformed header {lines[0]!r}; expected 'r n'")
    try:
        r, n = int(header[0]), int(header[1])
    except ValueError as exc:
        raise HypergraphFormatError(f"malformed header {lines[0]!r}") from exc
    if r < 2:
        raise HypergraphFormatError(f"uniformity r={r} must be >= 2")
    edges = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != r:
            raise HypergraphFormatError(f"edge line {ln!r} does not have {r} vertices")
        try:
            edges.append([int(v) for v in parts])
        except ValueError as exc:
            raise HypergraphFormatError(f"non-integer vertex in line {ln!r}") from exc
    return UniformHypergraph.from_edges(r, n, edges)


def serialize_hypergraph(G: UniformHypergraph) -> str:
    """Emit canonical .uhg text; parse(serialize(G)) == G bit-exactly."""
    out = [f"{G.r} {G.n}"]
    out.extend(" ".join(str(v) for v in e) for e in G.edges)
    return "\n".join(out) + "\n"


def load_hypergraph(path) -> UniformHypergraph:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_hypergraph(fh.read())


def degrees(G: UniformHypergraph) -> DegreeProfile:
    d = np.zeros(G.n, dtype=np.int64)
    for e in G.edges:
        for v in e:
            d[v] += 1
    delta = int(d.min()) if G.n else 0
    Delta = int(d.max()) if G.n else 0
    return DegreeProfile(degrees=d, delta=delta, Delta=Delta)


def connected_components(G: UniformHypergraph) -> ComponentsResult:
    """Edge-connected components of the non-isolated vertices.

    Each component comes with the map from its local vertex indices back
    to indices in G.  Isolated vertices are listed separately.
    """
    parent = list(range(G.n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in G.edges:
        ra = find(e[0])
        for v in e[1:]:
            rv = find(v)
            parent[rv] = ra
    covered = set(v for e in G.edges for v in e)
    groups: dict[int, list[int]] = {}
    for v in sorted(covered):
        groups.setdefault(find(v), []).append(v)
    components = []
    for root in sorted(groups, key=lambda rt: groups[rt][0]):
        vmap = groups[root]
        local = {v: i for i, v in enumerate(vmap)}
        sub_edges = [tuple(local[v] for v in e) for e in G.edges if find(e[0]) == root]
        sub = UniformHypergraph.from_edges(G.r, len(vmap), sub_edges)
        components.append((sub, vmap))
    isolated = [v for v in range(G.n) if v not in covered]
    return ComponentsResult(components, isolated)


def induced_subhypergraph(
    G: UniformHypergraph, S: Iterable[int]
) -> tuple[UniformHypergraph, list[int]]:
    """G[S]: keep exactly the edges contained in S, reindex vertices.

    Returns the induced sub-hypergraph and the map local index -> original.
    """
    vmap = sorted(set(int(v) for v in S))
    if vmap and not (0 <= vmap[0] and vmap[-1] < G.n):
        raise HypergraphFormatError("S contains a vertex outside 0..n-1")
    inside = set(vmap)
    local = {v: i for i, v in enumerate(vmap)}
    sub_edges = [tuple(local[v] for v in e) for e in G.edges if inside.issuperset(e)]
    return UniformHypergraph.from_edges(G.r, len(vmap), sub_edges), vmap


def is_connected(G: UniformHypergraph) -> bool:
    comps, isolated = connected_components(G)
    return len(comps) == 1 and not isolated
