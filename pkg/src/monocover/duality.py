"""The duality between r-partite hypergraphs and r-edge-coloured multigraphs.

Hypergraph -> graph: one graph vertex per hyperedge, with a colour-i edge
between two hyperedges whenever they share their part-i vertex.  Graph ->
hypergraph: part i is the set of colour-i components (singletons included),
and each graph vertex v contributes the hyperedge of the components that
contain v.  Under these maps, matchings correspond to independent sets and
vertex covers to covers by monochromatic components.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import PreconditionError, SizeGuardError
from .hypergraph import PartiteHypergraph

ColoredEdge = tuple[str, str, int]

DEFAULT_VERTEX_GUARD = 40


@dataclass(frozen=True)
class ColoredMultigraph:
    """An r-edge-coloured multigraph.

    Edges are stored as (u, v, colour) with u < v and colour in 1..r; parallel
    edges of the same colour collapse under the set representation, parallel
    edges of distinct colours survive.
    """

    r: int
    vertices: tuple[str, ...]
    edges: frozenset[ColoredEdge]

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise PreconditionError("duplicate vertex ids")
        for u, v, c in self.edges:
            if u == v:
                raise PreconditionError(f"loop at {u!r}")
            if u not in vs or v not in vs:
                raise PreconditionError(f"edge endpoint missing from vertex set: {(u, v, c)}")
            if not 1 <= c <= self.r:
                raise PreconditionError(f"colour {c} outside 1..{self.r}")
            if u > v:
                raise PreconditionError("edges must be stored with u < v")

    @staticmethod
    def build(r: int, vertices: Iterable[str], edges: Iterable[Sequence]) -> "ColoredMultigraph":
        norm = set()
        for u, v, c in edges:
            u, v = str(u), str(v)
            if u > v:
                u, v = v, u
            norm.add((u, v, int(c)))
        return ColoredMultigraph(r=r, vertices=tuple(sorted(str(v) for v in vertices)),
                                 edges=frozenset(norm))

    @cached_property
    def adjacency(self) -> dict[str, frozenset[str]]:
        """Colour-blind adjacency."""
        adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v, _ in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(ns) for v, ns in adj.items()}

    def color_adjacency(self, color: int) -> dict[str, list[str]]:
        adj: dict[str, list[str]] = {v: [] for v in self.vertices}
        for u, v, c in sorted(self.edges):
            if c == color:
                adj[u].append(v)
                adj[v].append(u)
        return {v: sorted(ns) for v, ns in adj.items()}

    def color_components(self, color: int) -> list[tuple[str, ...]]:
        """Connected components of the colour subgraph; singletons count."""
        adj = self.color_adjacency(color)
        seen: set[str] = set()
        comps = []
        for v in self.vertices:
            if v in seen:
                continue
            stack, comp = [v], []
            seen.add(v)
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if y not in seen:
                        seen.add(y)
                        stack.append(y)
            comps.append(tuple(sorted(comp)))
        return sorted(comps)

    def has_edge(self, u: str, v: str) -> bool:
        return v in self.adjacency[u]


def hyper_to_colored(h: PartiteHypergraph) -> ColoredMultigraph:
    """G(H): vertex set E(H); a colour-i edge per pair sharing its part-i vertex.

    Graph vertex ids are the decimal indices of the lexicographically sorted
    edge list of H, so an embedding of E(H) into V(G(H)) by identity is just
    edge -> str(index).
    """
    edges_sorted = h.sorted_edges
    ids = {e: str(i) for i, e in enumerate(edges_sorted)}
    colored = []
    for e, f in itertools.combinations(edges_sorted, 2):
        for i in range(h.r):
            if e[i] == f[i]:
                colored.append((ids[e], ids[f], i + 1))
    return ColoredMultigraph.build(h.r, ids.values(), colored)


def colored_to_hyper(g: ColoredMultigraph) -> PartiteHypergraph:
    """H(G): part i = colour-i components, one hyperedge per graph vertex.

    Component ids are "c{colour}:{min vertex}".  Distinct graph vertices that
    share every component collapse to one hyperedge (the hypergraph is
    simple), which is exactly the behaviour the round-trip law expects.
    """
    parts = []
    comp_of: list[dict[str, str]] = []
    for c in range(1, g.r + 1):
        comps = g.color_components(c)
        names = {}
        for comp in comps:
            name = f"c{c}:{comp[0]}"
            for v in comp:
                names[v] = name
        comp_of.append(names)
        parts.append(sorted({names[v] for v in g.vertices}))
    edges = {tuple(comp_of[i][v] for i in range(g.r)) for v in g.vertices}
    return PartiteHypergraph.build(parts, edges)


def find_independent_set(g: ColoredMultigraph, size: int,
                         max_vertices: int = DEFAULT_VERTEX_GUARD) -> Optional[tuple[str, ...]]:
    """Some independent set of exactly `size` vertices, or None if impossible.

    Exact decision search with a greedy-packing early exit; independence is
    colour-blind (no edge of any colour inside the set).
    """
    n = len(g.vertices)
    if n > max_vertices:
        raise SizeGuardError(f"independence guard: {n} vertices > cap {max_vertices}")
    if size <= 0:
        return ()
    if size > n:
        return None
    order = list(g.vertices)
    adj = g.adjacency

    chosen: list[str] = []

    def search(start: int, blocked: set[str]) -> bool:
        if len(chosen) == size:
            return True
        if len(chosen) + (n - start) < size:
            return False
        for i in range(start, n):
            v = order[i]
            if v in blocked:
                continue
            chosen.append(v)
            if search(i + 1, blocked | adj[v] | {v}):
                return True
            chosen.pop()
            # selective pruning: remaining slots cannot recover if too few left
            if len(chosen) + (n - i - 1) < size:
                return False
        return False

    if search(0, set()):
        return tuple(chosen)
    return None


def independence_number(g: ColoredMultigraph,
                        max_vertices: int = DEFAULT_VERTEX_GUARD) -> int:
    """alpha(G): exact maximum independent set size, by pruned exhaustive search."""
    n = len(g.vertices)
    if n > max_vertices:
        raise SizeGuardError(f"independence guard: {n} vertices > cap {max_vertices}")
    adj = g.adjacency
    order = sorted(g.vertices, key=lambda v: (-len(adj[v]), v))
    best = 0

    def search(candidates: list[str], count: int):
        nonlocal best
        if count > best:
            best = count
        if not candidates or count + len(candidates) <= best:
            return
        v = candidates[0]
        rest = candidates[1:]
        # branch 1: take v
        search([u for u in rest if u not in adj[v]], count + 1)
        # branch 2: skip v
        search(rest, count)

    search(order, 0)
    return best


def is_independent(g: ColoredMultigraph, vertices: Iterable[str]) -> bool:
    vs = sorted(set(vertices))
    return all(not g.has_edge(u, v) for u, v in itertools.combinations(vs, 2))


def component_cover_map(h: PartiteHypergraph, g: Optional[ColoredMultigraph] = None):
    """The cover correspondence for G = G(H): hypergraph vertex -> graph-vertex set.

    A part-i vertex u of H corresponds to the colour-i clique of the edges
    through u; a set of hypergraph vertices covers H iff the corresponding
    monochromatic components cover V(G(H)).
    """
    edges_sorted = h.sorted_edges
    ids = {e: str(i) for i, e in enumerate(edges_sorted)}
    out: dict[str, frozenset[str]] = {}
    for i in range(h.r):
        for v in h.parts[i]:
            members = frozenset(ids[e] for e in edges_sorted if e[i] == v)
            if members:
                out[v] = members
    return out
