"""Independent brute-force oracles.

These deliberately re-solve problems by enumeration, sharing no search code
with the main solvers, so that every acceptance test has a second opinion:
exact set cover over monochromatic components, stability checked against the
raw superset definition (up to a bounded number of added edges), and
all-subsets / all-injections baselines for the combinatorial primitives.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional, Sequence

from .duality import ColoredMultigraph
from .errors import PreconditionError, SizeGuardError
from .hypergraph import (
    Edge,
    PartiteHypergraph,
    contains_copy,
    fresh_vertex_names,
)

COMPONENT_COVER_VERTEX_GUARD = 30
COMPONENT_COVER_COMPONENT_GUARD = 24


def oracle_min_component_cover(g: ColoredMultigraph,
                               max_vertices: int = COMPONENT_COVER_VERTEX_GUARD,
                               max_components: int = COMPONENT_COVER_COMPONENT_GUARD) -> int:
    """Minimum number of monochromatic components covering V(G), by exact set cover."""
    n = len(g.vertices)
    if n > max_vertices:
        raise SizeGuardError(f"component-cover guard: {n} vertices > cap {max_vertices}")
    if n == 0:
        return 0
    components = []
    for c in range(1, g.r + 1):
        for comp in g.color_components(c):
            components.append(frozenset(comp))
    components = sorted(set(components), key=lambda s: (-len(s), sorted(s)))
    if len(components) > max_components:
        raise SizeGuardError(
            f"component-cover guard: {len(components)} components > cap {max_components}")
    universe = frozenset(g.vertices)
    for size in range(1, len(components) + 1):
        for combo in itertools.combinations(components, size):
            if frozenset().union(*combo) == universe:
                return size
    raise AssertionError("unreachable: singleton components always cover")


def _superset_universe(h: PartiteHypergraph, depth: int) -> Iterable[PartiteHypergraph]:
    """All hypergraphs obtained from h by adding at most `depth` edges.

    Each added edge takes, per part, an existing vertex of the current
    hypergraph or one fresh vertex; later additions may reuse the fresh
    vertices of earlier ones.  Supersets are deduplicated by exact edge set
    only -- isomorphism collapsing would be unsound here, because coverage by
    the fixed witness C is not isomorphism-invariant.
    """
    seen: set[frozenset[Edge]] = {h.edges}
    frontier = [h]
    yield h
    for _ in range(depth):
        nxt = []
        for cur in frontier:
            fresh = fresh_vertex_names(cur)
            options = [list(part) + [fresh[i]] for i, part in enumerate(cur.parts)]
            for combo in itertools.product(*options):
                if combo in cur.edges:
                    continue
                ext = cur.add_edge(combo)
                if ext.edges in seen:
                    continue
                seen.add(ext.edges)
                nxt.append(ext)
                yield ext
        frontier = nxt


def oracle_superset_stability(h: PartiteHypergraph, witness: Sequence[str],
                              relatives: Sequence[PartiteHypergraph],
                              depth: int = 2,
                              mode: str = "permuting") -> tuple[bool, Optional[PartiteHypergraph]]:
    """Stability checked against the raw definition over bounded supersets.

    True iff every superset with at most `depth` added edges is covered by
    the witness or contains one of the relatives; on failure the first
    offending superset is returned alongside False.
    """
    if depth > 2:
        raise SizeGuardError("superset oracle supports depth <= 2")
    c = set(witness)
    if not all(c.intersection(e) for e in h.edges):
        raise PreconditionError("witness must cover the hypergraph")

    cache: dict[frozenset[Edge], bool] = {}
    for sup in _superset_universe(h, depth):
        if all(c.intersection(e) for e in sup.edges):
            continue
        key = sup.edges
        hit = cache.get(key)
        if hit is None:
            hit = any(contains_copy(sup, rel, mode=mode) is not None for rel in relatives)
            cache[key] = hit
        if not hit:
            return False, sup
    return True, None


# --- baselines for the exact primitives -------------------------------------


def brute_matching_number(h: PartiteHypergraph) -> int:
    """Maximum matching by scanning all edge subsets."""
    edges = h.sorted_edges
    best = 0
    for size in range(len(edges), 0, -1):
        if size <= best:
            break
        for combo in itertools.combinations(edges, size):
            flat = [v for e in combo for v in e]
            if len(flat) == len(set(flat)):
                best = max(best, size)
                break
    return best


def brute_vertex_cover_size(h: PartiteHypergraph) -> int:
    """Minimum vertex cover size by scanning all support subsets."""
    if not h.edges:
        return 0
    support = sorted(h.support)
    for size in range(0, len(support) + 1):
        for combo in itertools.combinations(support, size):
            cs = set(combo)
            if all(cs.intersection(e) for e in h.edges):
                return size
    raise AssertionError("unreachable")


def brute_independence_number(g: ColoredMultigraph) -> int:
    """Maximum independent set by scanning all vertex subsets."""
    verts = g.vertices
    best = 0
    for size in range(len(verts), 0, -1):
        if size <= best:
            break
        for combo in itertools.combinations(verts, size):
            if all(not g.has_edge(u, v) for u, v in itertools.combinations(combo, 2)):
                best = size
                break
    return best


def brute_contains_copy(host: PartiteHypergraph, pattern: PartiteHypergraph,
                        mode: str = "permuting") -> bool:
    """Copy containment by enumerating every part permutation and injection."""
    if pattern.r != host.r:
        raise PreconditionError("uniformity mismatch")
    pat_support = [sorted(set(v for e in pattern.edges for v in e if pattern.part_of[v] == i))
                   for i in range(pattern.r)]
    if not pattern.edges:
        return True
    perms = itertools.permutations(range(host.r)) if mode == "permuting" else [tuple(range(host.r))]
    for sigma in perms:
        host_parts = [sorted(set(v for e in host.edges for v in e if host.part_of[v] == i))
                      for i in range(host.r)]
        per_part_injections = []
        feasible = True
        for i in range(pattern.r):
            src, dst = pat_support[i], host_parts[sigma[i]]
            if len(src) > len(dst):
                feasible = False
                break
            per_part_injections.append([dict(zip(src, img))
                                        for img in itertools.permutations(dst, len(src))])
        if not feasible:
            continue
        for assignment in itertools.product(*per_part_injections):
            vmap = {}
            for partial in assignment:
                vmap.update(partial)
            ok = True
            for e in pattern.edges:
                image = [None] * host.r
                for i, v in enumerate(e):
                    image[sigma[i]] = vmap[v]
                if tuple(image) not in host.edges:
                    ok = False
                    break
            if ok:
                return True
    return False
