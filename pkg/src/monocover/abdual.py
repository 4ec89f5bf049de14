"""(a,b)-dualities: embeddings of hypergraph edges into a metric family.

An injection phi from the edges of an r-partite hypergraph into the vertex
set of a metric family is an (a,b)-duality when, for every pair of distinct
edges and every part i, sharing the part-i vertex forces d_i <= a and not
sharing it forces d_i >= b.  With a < b the two implications are two-sided,
so the embedding encodes the full intersection pattern metrically.

Thresholds are exact comparables (ints, Fractions, or symbolic powers);
fractional-power thresholds are compared upstream by the engine's
cross-powering primitive and arrive here as ordinary exact values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional

from .errors import PreconditionError, SizeGuardError
from .exactnum import exact_cmp
from .hypergraph import Edge, PartiteHypergraph
from .metrics import MetricFamily

FIND_EDGE_GUARD = 10
FIND_VERTEX_GUARD = 60


@dataclass(frozen=True)
class DualityEmbedding:
    """An injection from E(H) into the family's vertex set with parameters (a, b)."""

    hypergraph: PartiteHypergraph
    family: MetricFamily
    mapping: dict[Edge, str] = field(compare=False)
    a: object = 1
    b: object = 2


@dataclass(frozen=True)
class DualityViolation:
    edge1: Edge
    edge2: Edge
    part: int  # 1-based, 0 for injectivity failures
    observed: object
    clause: str  # "close-required" | "far-required" | "not-injective" | "parameters"


def is_ab_duality(emb: DualityEmbedding) -> tuple[bool, Optional[DualityViolation]]:
    """Validate injectivity and both distance conditions over all pairs and parts.

    Returns (True, None) or (False, violation); the violation names the edge
    pair, the part, the observed distance and the violated clause.
    """
    h, fam, phi = emb.hypergraph, emb.family, emb.mapping
    if exact_cmp(emb.a, emb.b) >= 0:
        return False, DualityViolation((), (), 0, (emb.a, emb.b), "parameters")
    edges = h.sorted_edges
    for e in edges:
        if e not in phi:
            return False, DualityViolation(e, (), 0, None, "not-injective")
        if phi[e] not in fam.index:
            return False, DualityViolation(e, (), 0, phi[e], "not-injective")
    images = [phi[e] for e in edges]
    if len(set(images)) != len(images):
        dup = next(v for v in images if images.count(v) > 1)
        pair = [e for e in edges if phi[e] == dup]
        return False, DualityViolation(pair[0], pair[1], 0, dup, "not-injective")
    for e, f in itertools.combinations(edges, 2):
        for i in range(h.r):
            d = fam.dist(i + 1, phi[e], phi[f])
            if e[i] == f[i]:
                if exact_cmp(d, emb.a) > 0:
                    return False, DualityViolation(e, f, i + 1, d, "close-required")
            else:
                if exact_cmp(d, emb.b) < 0:
                    return False, DualityViolation(e, f, i + 1, d, "far-required")
    return True, None


def _pair_ok(h: PartiteHypergraph, fam: MetricFamily, a, b,
             e: Edge, pe: str, f: Edge, pf: str) -> bool:
    for i in range(h.r):
        d = fam.dist(i + 1, pe, pf)
        if e[i] == f[i]:
            if exact_cmp(d, a) > 0:
                return False
        else:
            if exact_cmp(d, b) < 0:
                return False
    return True


def find_ab_dual(h: PartiteHypergraph, family: MetricFamily, a, b,
                 max_edges: int = FIND_EDGE_GUARD,
                 max_vertices: int = FIND_VERTEX_GUARD) -> Optional[DualityEmbedding]:
    """Backtracking search for an (a,b)-duality of H into the family.

    Edges are placed most-constrained first (descending degree sum, ties
    lexicographic); candidate images are scanned in vertex-id order and a
    partial map is abandoned the moment any pair violates either clause, so
    the search is exact and returns the lexicographically first embedding in
    this order, or None.
    """
    if exact_cmp(a, b) >= 0:
        raise PreconditionError("duality parameters need a < b")
    edges = h.sorted_edges
    if len(edges) > max_edges:
        raise SizeGuardError(f"duality search guard: {len(edges)} edges > cap {max_edges}")
    if len(family.vertices) > max_vertices:
        raise SizeGuardError(
            f"duality search guard: {len(family.vertices)} vertices > cap {max_vertices}")
    order = sorted(edges, key=lambda e: (-sum(h.degree[v] for v in e), e))
    phi: dict[Edge, str] = {}
    used: set[str] = set()

    def place(k: int) -> bool:
        if k == len(order):
            return True
        e = order[k]
        for v in family.vertices:
            if v in used:
                continue
            if all(_pair_ok(h, family, a, b, e, v, f, phi[f]) for f in order[:k]):
                phi[e] = v
                used.add(v)
                if place(k + 1):
                    return True
                del phi[e]
                used.discard(v)
        return False

    if not edges:
        return DualityEmbedding(h, family, {}, a, b)
    if place(0):
        return DualityEmbedding(h, family, dict(phi), a, b)
    return None


def restrict_embedding(emb: DualityEmbedding, edges) -> DualityEmbedding:
    """The restriction of a duality to a subhypergraph's edge set.

    Restriction preserves the (a,b) conditions (they are per-pair), which is
    the containment monotonicity the transference engine leans on.
    """
    sub = emb.hypergraph.restrict(edges)
    mapping = {e: emb.mapping[e] for e in sub.edges}
    return DualityEmbedding(sub, emb.family, mapping, emb.a, emb.b)
