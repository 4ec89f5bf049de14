"""Exact combinatorial primitives on r-uniform, r-partite hypergraphs.

Vertices are string ids; every id belongs to exactly one of the r parts, and
an edge is a tuple with one vertex per part (``edge[i] in parts[i]``).  All
searches here are exact and deterministic: ties break by lexicographic order
of vertex ids, and size guards refuse instances too large for exhaustive
search rather than approximate.

Copy containment (``contains_copy``) is the workhorse: an injective vertex
map carrying every pattern edge onto a host edge, either part-respecting or
allowing a permutation of the parts.  Part-permuting is the default
everywhere, since part labels carry no meaning under relabelling of colours.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .errors import PreconditionError, SizeGuardError

Edge = tuple[str, ...]

DEFAULT_EDGE_GUARD = 12
SUNFLOWER_EDGE_GUARD = 400
COPY_WORK_GUARD = 2_000_000


@dataclass(frozen=True)
class PartiteHypergraph:
    """An r-uniform, r-partite hypergraph with explicit vertex parts.

    Invariants (checked on construction): the parts are pairwise disjoint,
    every edge takes exactly one vertex from each part, and edges are
    pairwise distinct.
    """

    r: int
    parts: tuple[tuple[str, ...], ...]
    edges: frozenset[Edge]

    def __post_init__(self):
        if self.r < 1:
            raise PreconditionError("uniformity r must be >= 1")
        if len(self.parts) != self.r:
            raise PreconditionError(f"expected {self.r} parts, got {len(self.parts)}")
        seen: dict[str, int] = {}
        for i, part in enumerate(self.parts):
            for v in part:
                if v in seen:
                    raise PreconditionError(f"vertex {v!r} appears in parts {seen[v]} and {i}")
                seen[v] = i
        for e in self.edges:
            if len(e) != self.r:
                raise PreconditionError(f"edge {e} does not have {self.r} vertices")
            for i, v in enumerate(e):
                if seen.get(v) != i:
                    raise PreconditionError(f"edge {e} has {v!r} outside part {i}")

    @staticmethod
    def build(parts: Sequence[Sequence[str]], edges: Iterable[Sequence[str]]) -> "PartiteHypergraph":
        parts_t = tuple(tuple(sorted(p)) for p in parts)
        return PartiteHypergraph(
            r=len(parts_t),
            parts=parts_t,
            edges=frozenset(tuple(e) for e in edges),
        )

    @cached_property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self.edges))

    @cached_property
    def part_of(self) -> dict[str, int]:
        return {v: i for i, part in enumerate(self.parts) for v in part}

    @cached_property
    def support(self) -> frozenset[str]:
        """Vertices covered by at least one edge."""
        return frozenset(v for e in self.edges for v in e)

    @cached_property
    def degree(self) -> dict[str, int]:
        deg: dict[str, int] = {}
        for e in self.edges:
            for v in e:
                deg[v] = deg.get(v, 0) + 1
        return deg

    def edge_count(self) -> int:
        return len(self.edges)

    def vertices(self) -> tuple[str, ...]:
        return tuple(v for part in self.parts for v in part)

    def without_isolated(self) -> "PartiteHypergraph":
        supp = self.support
        return PartiteHypergraph.build(
            [[v for v in part if v in supp] for part in self.parts], self.edges
        )

    def add_edge(self, edge: Edge) -> "PartiteHypergraph":
        """Return this hypergraph plus one edge, extending parts with any new ids."""
        if len(edge) != self.r:
            raise PreconditionError("added edge has wrong arity")
        new_parts = []
        for i, part in enumerate(self.parts):
            v = edge[i]
            if v in self.part_of and self.part_of[v] != i:
                raise PreconditionError(f"vertex {v!r} already lives in part {self.part_of[v]}")
            new_parts.append(part if v in part else tuple(sorted(part + (v,))))
        return PartiteHypergraph(self.r, tuple(new_parts), self.edges | {tuple(edge)})

    def restrict(self, edges: Iterable[Edge]) -> "PartiteHypergraph":
        """Subhypergraph on the given edges, dropping vertices they do not use."""
        kept = frozenset(tuple(e) for e in edges)
        if not kept <= self.edges:
            raise PreconditionError("restriction edges must be existing edges")
        supp = {v for e in kept for v in e}
        return PartiteHypergraph.build(
            [[v for v in part if v in supp] for part in self.parts], kept
        )


# --- small builders used throughout ---------------------------------------


def single_edge(r: int) -> PartiteHypergraph:
    """E_r: the one-edge r-uniform hypergraph."""
    edge = tuple(f"v{i + 1}" for i in range(r))
    return PartiteHypergraph.build([[v] for v in edge], [edge])


def matching_hypergraph(r: int, size: int) -> PartiteHypergraph:
    """M_{r,size}: `size` pairwise-disjoint edges."""
    parts = [[f"v{i + 1}.{j}" for j in range(size)] for i in range(r)]
    edges = [tuple(f"v{i + 1}.{j}" for i in range(r)) for j in range(size)]
    return PartiteHypergraph.build(parts, edges)


def sunflower_hypergraph(r: int, core_size: int, petals: int,
                         core_parts: Optional[Sequence[int]] = None) -> PartiteHypergraph:
    """S_r(s,t): t edges whose pairwise intersections all equal one size-s core.

    The core occupies the first s parts unless `core_parts` says otherwise.
    """
    if not 0 <= core_size <= r:
        raise PreconditionError("core size out of range")
    if core_size == r and petals > 1:
        raise PreconditionError("full-core sunflower cannot have two distinct edges")
    cp = tuple(core_parts) if core_parts is not None else tuple(range(core_size))
    if len(set(cp)) != core_size or any(not 0 <= i < r for i in cp):
        raise PreconditionError("core parts must be distinct part indices")
    parts: list[list[str]] = [[] for _ in range(r)]
    core = {}
    for i in cp:
        core[i] = f"c{i + 1}"
        parts[i].append(core[i])
    edges = []
    for j in range(petals):
        e = []
        for i in range(r):
            if i in core:
                e.append(core[i])
            else:
                v = f"p{i + 1}.{j}"
                parts[i].append(v)
                e.append(v)
        edges.append(tuple(e))
    return PartiteHypergraph.build(parts, edges)


def shared_vertex_pair(r: int, part: int) -> PartiteHypergraph:
    """Two edges meeting in exactly one vertex, placed in the given part."""
    return sunflower_hypergraph(r, 1, 2, core_parts=[part])


# --- matching number and vertex cover --------------------------------------


def maximum_matching(h: PartiteHypergraph, max_edges: int = DEFAULT_EDGE_GUARD) -> tuple[Edge, ...]:
    """A maximum set of pairwise-disjoint edges, by exhaustive branch and bound.

    Deterministic: explores edges in lexicographic order, so the returned
    matching is the lexicographically first one of maximum size.
    """
    edges = h.sorted_edges
    if len(edges) > max_edges:
        raise SizeGuardError(f"matching guard: {len(edges)} edges > cap {max_edges}")
    best: list[Edge] = []

    def extend(idx: int, used: set[str], chosen: list[Edge]):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if idx == len(edges) or len(chosen) + (len(edges) - idx) <= len(best):
            return
        e = edges[idx]
        if not used.intersection(e):
            chosen.append(e)
            extend(idx + 1, used | set(e), chosen)
            chosen.pop()
        extend(idx + 1, used, chosen)

    extend(0, set(), [])
    return tuple(best)


def matching_number(h: PartiteHypergraph, max_edges: int = DEFAULT_EDGE_GUARD) -> int:
    """nu(H): the exact maximum number of pairwise-disjoint edges."""
    return len(maximum_matching(h, max_edges=max_edges))


def is_cover(h: PartiteHypergraph, cover: Iterable[str]) -> bool:
    c = set(cover)
    return all(c.intersection(e) for e in h.edges)


def vertex_cover_min(h: PartiteHypergraph, max_edges: int = DEFAULT_EDGE_GUARD) -> tuple[str, ...]:
    """A minimum vertex cover; among minimum covers, the lexicographically first.

    Minimum size is found by branching on the vertices of an uncovered edge;
    the lex-first cover of that size is then located by scanning size-tau
    combinations of support vertices in lexicographic order.
    """
    edges = h.sorted_edges
    if len(edges) > max_edges:
        raise SizeGuardError(f"cover guard: {len(edges)} edges > cap {max_edges}")
    if not edges:
        return ()

    best_size = len(edges)  # one vertex per edge always suffices

    def branch(chosen: set[str], depth: int):
        nonlocal best_size
        if depth >= best_size:
            return
        uncovered = next((e for e in edges if not chosen.intersection(e)), None)
        if uncovered is None:
            best_size = depth
            return
        for v in uncovered:
            chosen.add(v)
            branch(chosen, depth + 1)
            chosen.discard(v)

    branch(set(), 0)

    candidates = sorted(h.support)
    for combo in itertools.combinations(candidates, best_size):
        if is_cover(h, combo):
            return combo
    raise AssertionError("unreachable: branch-and-bound size must be witnessed")


# --- sunflowers -------------------------------------------------------------


@dataclass(frozen=True)
class Sunflower:
    """t edges pairwise intersecting in exactly the common core.

    `edges[i]` is the part-ordered tuple core + petals[i]; petals are the
    edges minus the core, pairwise disjoint and disjoint from the core.
    """

    core: frozenset[str]
    petals: tuple[frozenset[str], ...]
    edges: tuple[Edge, ...]

    def petal_count(self) -> int:
        return len(self.petals)


def validate_sunflower(sf: Sunflower, host: Optional[PartiteHypergraph] = None) -> None:
    """Check the sunflower invariants; raise PreconditionError naming the clause."""
    r = len(sf.edges[0]) if sf.edges else None
    if len(sf.petals) != len(sf.edges):
        raise PreconditionError("sunflower: petal/edge count mismatch")
    for petal, edge in zip(sf.petals, sf.edges):
        if sf.core & petal:
            raise PreconditionError("sunflower: petal intersects core")
        if sf.core | petal != set(edge):
            raise PreconditionError("sunflower: edge is not core+petal")
        if len(sf.core) + len(petal) != r:
            raise PreconditionError("sunflower: |core|+|petal| != r")
    for p, q in itertools.combinations(sf.petals, 2):
        if p & q:
            raise PreconditionError("sunflower: petals intersect")
    if host is not None:
        for edge in sf.edges:
            if edge not in host.edges:
                raise PreconditionError("sunflower: edge not in host hypergraph")


def find_sunflower(h: PartiteHypergraph, t: int, require_nonempty_core: bool = False,
                   max_edges: int = SUNFLOWER_EDGE_GUARD) -> Optional[Sunflower]:
    """An exact search for a sunflower with at least t petals, if one exists.

    Groups edges by candidate core (every subset of every edge, the empty set
    included unless a nonempty core is required), then looks for t pairwise
    disjoint petals among the edges containing that core.  The petal search is
    a complete backtracking with early exit at t, so absence is conclusive.
    """
    if t < 1:
        raise PreconditionError("petal count t must be >= 1")
    edges = h.sorted_edges
    if len(edges) > max_edges:
        raise SizeGuardError(f"sunflower guard: {len(edges)} edges > cap {max_edges}")
    if not edges:
        return None

    cores: list[frozenset[str]] = []
    seen: set[frozenset[str]] = set()
    smallest = 1 if require_nonempty_core else 0
    for size in range(smallest, h.r + 1):
        for e in edges:
            for combo in itertools.combinations(sorted(e), size):
                c = frozenset(combo)
                if c not in seen:
                    seen.add(c)
                    cores.append(c)
    # fixed scan order: small cores first, then lexicographic
    cores.sort(key=lambda c: (len(c), tuple(sorted(c))))

    for core in cores:
        member_edges = [e for e in edges if core <= set(e)]
        if len(member_edges) < t:
            continue
        petals = [frozenset(e) - core for e in member_edges]

        chosen: list[int] = []

        def pick(start: int, used: frozenset[str]) -> bool:
            if len(chosen) == t:
                return True
            if len(chosen) + (len(petals) - start) < t:
                return False
            for idx in range(start, len(petals)):
                if not petals[idx] & used:
                    chosen.append(idx)
                    if pick(idx + 1, used | petals[idx]):
                        return True
                    chosen.pop()
            return False

        if pick(0, frozenset()):
            return Sunflower(
                core=core,
                petals=tuple(petals[i] for i in chosen),
                edges=tuple(member_edges[i] for i in chosen),
            )
    return None


# --- copy containment and isomorphism --------------------------------------


@dataclass(frozen=True)
class CopyEmbedding:
    """Witness that `pattern` embeds in `host`.

    `part_map[i]` is the host part receiving pattern part i; `vertex_map`
    sends every non-isolated pattern vertex to a distinct host vertex so that
    each pattern edge lands exactly on a host edge.
    """

    part_map: tuple[int, ...]
    vertex_map: dict[str, str] = field(compare=False)


def _pattern_edge_order(pattern: PartiteHypergraph) -> list[Edge]:
    """Connected-expansion order: each next edge shares as much as possible
    with already-ordered edges, for early pruning."""
    remaining = list(pattern.sorted_edges)
    if not remaining:
        return []
    order = [remaining.pop(0)]
    placed: set[str] = set(order[0])
    while remaining:
        best_overlap = max(len(placed.intersection(e)) for e in remaining)
        nxt = min(e for e in remaining if len(placed.intersection(e)) == best_overlap)
        remaining.remove(nxt)
        order.append(nxt)
        placed |= set(nxt)
    return order


def contains_copy(host: PartiteHypergraph, pattern: PartiteHypergraph,
                  mode: str = "permuting",
                  work_guard: int = COPY_WORK_GUARD) -> Optional[CopyEmbedding]:
    """Find an injective vertex map carrying pattern edges onto host edges.

    In "permuting" mode a permutation of the parts is allowed (part i of the
    pattern maps into part sigma(i) of the host); "respecting" pins sigma to
    the identity.  Isolated pattern vertices are ignored: containment is a
    statement about edges.  Deterministic: the first embedding in the fixed
    scan order (sigma lexicographic, host edges lexicographic) is returned.
    """
    if mode not in ("permuting", "respecting"):
        raise PreconditionError(f"unknown mode {mode!r}")
    if pattern.r != host.r:
        raise PreconditionError("pattern and host must share uniformity r")
    pat_edges = _pattern_edge_order(pattern)
    if not pat_edges:
        return CopyEmbedding(part_map=tuple(range(host.r)), vertex_map={})
    host_edges = host.sorted_edges
    if not host_edges:
        return None

    host_by_vertex: dict[str, list[Edge]] = {}
    for e in host_edges:
        for v in e:
            host_by_vertex.setdefault(v, []).append(e)

    perms: Iterable[tuple[int, ...]]
    if mode == "respecting":
        perms = [tuple(range(host.r))]
    else:
        perms = itertools.permutations(range(host.r))

    work = 0
    for sigma in perms:
        vmap: dict[str, str] = {}
        inv: dict[str, str] = {}
        used_edges: set[Edge] = set()

        def candidates(pe: Edge) -> list[Edge]:
            # any already-mapped vertex of the pattern edge pins the host edges
            for i, v in enumerate(pe):
                if v in vmap:
                    return host_by_vertex.get(vmap[v], [])
            return list(host_edges)

        def assign(pe: Edge, he: Edge) -> Optional[list[str]]:
            added: list[str] = []
            for i, v in enumerate(pe):
                w = he[sigma[i]]
                if v in vmap:
                    if vmap[v] != w:
                        for a in added:
                            del inv[vmap[a]]
                            del vmap[a]
                        return None
                elif w in inv:
                    for a in added:
                        del inv[vmap[a]]
                        del vmap[a]
                    return None
                else:
                    vmap[v] = w
                    inv[w] = v
                    added.append(v)
            return added

        def search(k: int) -> bool:
            nonlocal work
            if k == len(pat_edges):
                return True
            pe = pat_edges[k]
            for he in candidates(pe):
                work += 1
                if work > work_guard:
                    raise SizeGuardError("copy-containment work guard exceeded")
                if he in used_edges:
                    continue
                added = assign(pe, he)
                if added is None:
                    continue
                used_edges.add(he)
                if search(k + 1):
                    return True
                used_edges.discard(he)
                for a in added:
                    del inv[vmap[a]]
                    del vmap[a]
            return False

        if search(0):
            return CopyEmbedding(part_map=sigma, vertex_map=dict(vmap))
    return None


def is_isomorphic(a: PartiteHypergraph, b: PartiteHypergraph, mode: str = "permuting") -> bool:
    """Support isomorphism: a bijective copy in both directions of the counts.

    Isolated vertices are disregarded; two hypergraphs are isomorphic when an
    injective edge-preserving map exists and the edge and support counts
    match, which forces it to be bijective.
    """
    if a.r != b.r or len(a.edges) != len(b.edges):
        return False
    if len(a.support) != len(b.support):
        return False
    if canonical_key(a, mode) != canonical_key(b, mode):
        return False
    return contains_copy(b, a, mode=mode) is not None


def canonical_key(h: PartiteHypergraph, mode: str = "permuting"):
    """A cheap isomorphism-invariant fingerprint, used to pre-bucket instances.

    Colliding keys are resolved by an exact isomorphism check; the key only
    has to be invariant, not complete.
    """
    supp = h.support
    profiles = []
    for i, part in enumerate(h.parts):
        degs = tuple(sorted(h.degree.get(v, 0) for v in part if v in supp))
        profiles.append((len(degs), degs))
    if mode == "permuting":
        prof_key = tuple(sorted(profiles))
    else:
        prof_key = tuple(profiles)
    inter = []
    edges = h.sorted_edges
    for e, f in itertools.combinations(edges, 2):
        common = sum(1 for i in range(h.r) if e[i] == f[i])
        inter.append(common)
    return (h.r, len(edges), prof_key, tuple(sorted(inter)))


# --- matchings out of large sunflowers -------------------------------------


def extend_matching_via_sunflowers(sunflowers: Sequence[Sunflower],
                                   matching: Sequence[Edge]) -> tuple[Edge, ...]:
    """Combine core-disjoint sunflowers with a matching into a larger matching.

    With a sunflowers of (nu+1)r petals each and a matching M of size
    nu-a+1 that avoids every core, one edge per sunflower can be chosen
    greedily so that the union is a matching of size nu+1: each choice must
    only avoid the vertices already used plus the other cores, and those
    number at most nu*r while the petals of one sunflower are pairwise
    disjoint, so at most nu*r of the (nu+1)r petals are blocked.
    """
    a = len(sunflowers)
    m_edges = [tuple(e) for e in matching]
    nu = len(m_edges) + a - 1
    if nu < 0:
        raise PreconditionError("empty input: need at least one sunflower or edge")

    used = set()
    for e in m_edges:
        if used.intersection(e):
            raise PreconditionError("matching clause violated: edges of M intersect")
        used.update(e)

    cores = [sf.core for sf in sunflowers]
    for i, j in itertools.combinations(range(a), 2):
        if cores[i] & cores[j]:
            raise PreconditionError(
                f"core-disjointness clause violated: sunflowers {i} and {j} share a core vertex")
    all_cores = set().union(*cores) if cores else set()
    if all_cores & used:
        raise PreconditionError("matching clause violated: M touches a sunflower core")

    for i, sf in enumerate(sunflowers):
        validate_sunflower(sf)
        r = len(sf.edges[0])
        if sf.petal_count() < (nu + 1) * r:
            raise PreconditionError(
                f"petal clause violated: sunflower {i} has {sf.petal_count()} petals, "
                f"needs {(nu + 1) * r}")

    result = list(m_edges)
    taken = set(used)
    for i, sf in enumerate(sunflowers):
        others = set().union(*(cores[j] for j in range(a) if j != i)) if a > 1 else set()
        pick = None
        for petal, edge in sorted(zip(sf.petals, sf.edges), key=lambda pe: pe[1]):
            if not petal & (taken | others):
                pick = edge
                break
        if pick is None:
            raise AssertionError("unreachable: petal count guarantees a free petal")
        result.append(pick)
        taken.update(pick)

    out = tuple(sorted(result))
    flat = [v for e in out for v in e]
    if len(flat) != len(set(flat)) or len(out) != nu + 1:
        raise AssertionError("internal: extended matching failed validation")
    return out


# --- canonical single-edge extensions ---------------------------------------


def fresh_vertex_names(h: PartiteHypergraph, tag: str = "*") -> tuple[str, ...]:
    """One unused vertex id per part."""
    existing = set(h.part_of)
    names = []
    for i in range(h.r):
        name = f"{tag}{i + 1}"
        while name in existing:
            name += "'"
        names.append(name)
    return tuple(names)


def canonical_edge_extensions(h: PartiteHypergraph, avoid: Iterable[str],
                              mode: str = "permuting") -> list[PartiteHypergraph]:
    """All single-edge extensions H+e with e disjoint from `avoid`, up to iso.

    The added edge takes, in each part, either an existing vertex outside
    `avoid` or one designated fresh vertex; one fresh name per part suffices
    because no copy test can tell two fresh vertices of one added edge apart.
    Hypergraphs that are isomorphic as a whole are deduplicated (keyed by a
    cheap invariant, resolved by exact isomorphism).
    """
    avoid_set = set(avoid)
    if not avoid_set <= set(h.part_of):
        raise PreconditionError("avoid set must be vertices of H")
    fresh = fresh_vertex_names(h)
    options = []
    for i, part in enumerate(h.parts):
        opts = [v for v in part if v not in avoid_set]
        opts.append(fresh[i])
        options.append(opts)

    buckets: dict[object, list[PartiteHypergraph]] = {}
    out: list[PartiteHypergraph] = []
    for combo in itertools.product(*options):
        if combo in h.edges:
            continue
        extended = h.add_edge(combo)
        key = canonical_key(extended, mode)
        group = buckets.setdefault(key, [])
        if any(is_isomorphic(extended, other, mode) for other in group):
            continue
        group.append(extended)
        out.append(extended)
    return out
