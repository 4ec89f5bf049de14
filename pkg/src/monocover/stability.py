"""Ryser-stable hypergraphs and sequences: verification, generation, covers.

A hypergraph H with a size-c cover C is c-Ryser-stable relative to a pattern
list when every r-partite hypergraph containing H is either still covered by
C or contains one of the patterns.  The universal quantifier reduces to a
finite check: an uncovered superset has an uncovered edge e not in H, and
H+e already exhibits the required pattern, so it suffices to scan the
single-edge extensions whose new edge avoids C -- and at most one fresh
vertex per part matters, because copy containment cannot tell fresh vertices
apart.  `canonical_edge_extensions` materialises exactly this universe.

A stable sequence is an ordered list of such hypergraphs, each stable
relative to its predecessors plus fixed relatives; `verify_sequence` checks
one mechanically and the resulting transcripts are the certificate.
The sequence is a machine-checkable case analysis: `cover_from_sequence`
extracts, for any concrete hypergraph with small matching number, a vertex
cover within the budget by locating the first sequence member it contains.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import (
    MatchingNumberViolation,
    PreconditionError,
    SequenceUnsoundError,
    SizeGuardError,
)
from .hypergraph import (
    Edge,
    PartiteHypergraph,
    Sunflower,
    canonical_edge_extensions,
    canonical_key,
    contains_copy,
    find_sunflower,
    is_cover,
    is_isomorphic,
    matching_hypergraph,
    matching_number,
    single_edge,
    sunflower_hypergraph,
    vertex_cover_min,
)


@dataclass(frozen=True)
class WitnessedHypergraph:
    """A hypergraph together with the cover that witnesses its stability."""

    hypergraph: PartiteHypergraph
    witness: tuple[str, ...]

    def __post_init__(self):
        if not is_cover(self.hypergraph, self.witness):
            raise PreconditionError("witness does not cover the hypergraph")
        if not set(self.witness) <= set(self.hypergraph.part_of):
            raise PreconditionError("witness contains unknown vertices")

    @staticmethod
    def build(h: PartiteHypergraph, witness: Iterable[str]) -> "WitnessedHypergraph":
        return WitnessedHypergraph(h, tuple(sorted(set(witness))))


@dataclass(frozen=True)
class StableSequence:
    """An ordered list of witnessed hypergraphs plus the fixed relatives.

    The shipped sequences use relatives = [M_{r,nu+1}] and budget
    c = (r-1) nu; `verified` carries the certification transcripts once
    verify_sequence has run.
    """

    r: int
    nu: int
    c: int
    relatives: tuple[PartiteHypergraph, ...]
    items: tuple[WitnessedHypergraph, ...]
    verified: Optional["CertificationRecord"] = field(default=None, compare=False)

    def __post_init__(self):
        if not any(_is_matching_shape(rel, self.nu + 1) for rel in self.relatives):
            raise PreconditionError("relatives must include the matching M_{r,nu+1}")

    def with_record(self, record: "CertificationRecord") -> "StableSequence":
        return StableSequence(self.r, self.nu, self.c, self.relatives, self.items, record)

    def matching_relative(self) -> PartiteHypergraph:
        for rel in self.relatives:
            if _is_matching_shape(rel, self.nu + 1):
                return rel
        raise AssertionError("checked at construction")


def _is_matching_shape(h: PartiteHypergraph, size: int) -> bool:
    if len(h.edges) != size:
        return False
    verts = [v for e in h.edges for v in e]
    return len(verts) == len(set(verts))


@dataclass(frozen=True)
class ExtensionReport:
    added_edge: Edge
    matched: Optional[str]  # "item:3" / "relative:1" / None


@dataclass(frozen=True)
class WitnessReport:
    ok: bool
    extensions: tuple[ExtensionReport, ...]

    def failing_extensions(self) -> tuple[ExtensionReport, ...]:
        return tuple(x for x in self.extensions if x.matched is None)


@dataclass(frozen=True)
class ItemReport:
    index: int  # 1-based position in the sequence
    ok: bool
    failure: Optional[str]
    witness_report: Optional[WitnessReport]


@dataclass(frozen=True)
class CertificationRecord:
    certified: bool
    items: tuple[ItemReport, ...]
    failure: Optional[str] = None


def check_witness(item: WitnessedHypergraph,
                  patterns: Sequence[PartiteHypergraph],
                  pattern_labels: Optional[Sequence[str]] = None,
                  mode: str = "permuting") -> WitnessReport:
    """Does the witness certify stability of the item relative to `patterns`?

    Every canonical single-edge extension avoiding the witness must contain a
    copy of some pattern; the report records, per extension, which pattern
    embedded (the first in list order) or that none did.  A failing extension
    is the "new case needed" signal when authoring sequences.
    """
    h, c = item.hypergraph, item.witness
    labels = list(pattern_labels) if pattern_labels is not None else [
        f"pattern:{i}" for i in range(len(patterns))]
    reports = []
    ok = True
    for ext in canonical_edge_extensions(h, c, mode=mode):
        new_edges = ext.edges - h.edges
        added = min(new_edges)
        matched = None
        for label, pattern in zip(labels, patterns):
            if contains_copy(ext, pattern, mode=mode) is not None:
                matched = label
                break
        if matched is None:
            ok = False
        reports.append(ExtensionReport(added_edge=added, matched=matched))
    return WitnessReport(ok=ok, extensions=tuple(reports))


def verify_sequence(seq: StableSequence, mode: str = "permuting") -> CertificationRecord:
    """Certify a stable sequence, or fail at the first violated obligation.

    Checks, in order: every witness within budget c, the final item is the
    single edge E_r, and each item's witness passes check_witness against the
    item's prefix plus the relatives.
    """
    items = []
    for pos, item in enumerate(seq.items, start=1):
        if len(item.witness) > seq.c:
            rep = ItemReport(pos, False, f"witness size {len(item.witness)} exceeds budget {seq.c}", None)
            items.append(rep)
            return CertificationRecord(False, tuple(items),
                                       failure=f"item {pos}: witness over budget")
        prefix = [it.hypergraph for it in seq.items[:pos - 1]]
        patterns = prefix + list(seq.relatives)
        labels = [f"item:{j + 1}" for j in range(len(prefix))] + [
            f"relative:{j + 1}" for j in range(len(seq.relatives))]
        wrep = check_witness(item, patterns, labels, mode=mode)
        if not wrep.ok:
            bad = wrep.failing_extensions()[0]
            items.append(ItemReport(pos, False, f"extension {bad.added_edge} matches no pattern", wrep))
            return CertificationRecord(False, tuple(items),
                                       failure=f"item {pos}: uncovered extension {bad.added_edge}")
        items.append(ItemReport(pos, True, None, wrep))
    if not seq.items:
        return CertificationRecord(False, (), failure="empty sequence")
    last = seq.items[-1].hypergraph
    if not is_isomorphic(last, single_edge(seq.r), mode=mode):
        return CertificationRecord(False, tuple(items),
                                   failure="last item is not the single edge E_r")
    return CertificationRecord(True, tuple(items))


def cover_from_sequence(h: PartiteHypergraph, seq: StableSequence,
                        mode: str = "permuting") -> tuple[str, ...]:
    """Extract a size <= c vertex cover of H from a certified sequence.

    Finds the first sequence item with a copy inside H and maps its witness
    through the embedding.  If the mapped witness failed to cover H, H would
    have to contain an earlier item (contradicting minimality) or the
    matching relative; the matching case raises MatchingNumberViolation with
    the nu+1 disjoint edges, anything else means the certification was
    unsound.
    """
    if seq.verified is None or not seq.verified.certified:
        raise PreconditionError("cover extraction needs a certified sequence")
    if not h.edges:
        return ()
    for pos, item in enumerate(seq.items, start=1):
        emb = contains_copy(h, item.hypergraph, mode=mode)
        if emb is None:
            continue
        image = tuple(sorted(emb.vertex_map[v] for v in item.witness))
        if is_cover(h, image):
            if len(image) > seq.c:
                raise SequenceUnsoundError("witness image exceeds budget")
            return image
        m_emb = contains_copy(h, seq.matching_relative(), mode=mode)
        if m_emb is not None:
            edges = _embedded_edges(seq.matching_relative(), m_emb.vertex_map, m_emb.part_map, h)
            raise MatchingNumberViolation(edges)
        raise SequenceUnsoundError(
            f"sequence not sound: item {pos} witness image fails to cover and "
            f"no matching relative embeds")
    raise SequenceUnsoundError("no sequence item embeds; terminal E_r should always embed")


def _embedded_edges(pattern: PartiteHypergraph, vmap: dict[str, str],
                    part_map: tuple[int, ...], host: PartiteHypergraph) -> tuple[Edge, ...]:
    """The host edges that a copy embedding maps the pattern edges onto."""
    out = []
    for e in pattern.sorted_edges:
        image = [None] * host.r
        for i, v in enumerate(e):
            image[part_map[i]] = vmap[v]
        out.append(tuple(image))
    return tuple(out)


# --- generation of the basic-hypergraph sequence ----------------------------


@dataclass(frozen=True)
class BasicShape:
    """a core-disjoint sunflowers plus a sunflower-free residue with b edges."""

    a: int
    b: int
    sunflowers: tuple[Sunflower, ...]
    residue: PartiteHypergraph
    hypergraph: PartiteHypergraph


@dataclass(frozen=True)
class GenerationCaps:
    petals: Optional[int] = None     # defaults to (nu+1) r
    b_max: Optional[int] = None      # defaults to the sunflower-lemma bound, capped
    vertex_max: int = 64             # enumeration guard
    shape_max: int = 5000            # explosion guard


def sunflower_free_bound(r: int, nu: int) -> int:
    """Edge count above which a sunflower with (nu+1)r petals is forced."""
    t = (nu + 1) * r
    fact = 1
    for i in range(2, r + 1):
        fact *= i
    return fact * t ** (r + 1)


def _enumerate_residues(r: int, nu: int, petals_cap: int, b_max: int,
                        caps: GenerationCaps) -> dict[int, list[PartiteHypergraph]]:
    """All residue hypergraphs up to isomorphism, level by edge count.

    A residue has matching number <= nu, no isolated vertices, and no
    sunflower with petals_cap petals and nonempty core.  Both constraints
    survive edge deletion, so level b+1 is reachable from level b by a single
    canonical edge addition and the enumeration is complete; it stops at the
    first empty level.
    """
    empty = PartiteHypergraph.build([[] for _ in range(r)], [])
    levels: dict[int, list[PartiteHypergraph]] = {0: [empty]}
    for b in range(1, b_max + 1):
        found: list[PartiteHypergraph] = []
        buckets: dict[object, list[PartiteHypergraph]] = {}
        for base in levels[b - 1]:
            for ext in canonical_edge_extensions(base, []):
                if len(ext.support) > caps.vertex_max:
                    raise SizeGuardError("residue enumeration exceeded the vertex cap")
                if matching_number(ext, max_edges=max(b, 12)) > nu:
                    continue
                if find_sunflower(ext, petals_cap, require_nonempty_core=True) is not None:
                    continue
                key = canonical_key(ext.without_isolated())
                group = buckets.setdefault(key, [])
                if any(is_isomorphic(ext, other) for other in group):
                    continue
                group.append(ext.without_isolated())
                found.append(ext.without_isolated())
                if sum(len(v) for v in levels.values()) + len(found) > caps.shape_max:
                    raise SizeGuardError("residue enumeration exceeded the shape cap")
        if not found:
            break
        levels[b] = found
    return levels


def _core_disjoint_sunflower_stack(r: int, count: int, petals: int) -> list[tuple[tuple[Sunflower, ...], PartiteHypergraph]]:
    """Unions of `count` core-disjoint sunflowers with the given petal count.

    Sunflowers are enumerated by core size and core-part placement, with
    vertex-disjoint placement between the sunflowers; isomorphic unions are
    deduplicated.
    """
    single: list[PartiteHypergraph] = []
    for core_size in range(1, r):
        for core_parts in itertools.combinations(range(r), core_size):
            single.append(sunflower_hypergraph(r, core_size, petals, core_parts=core_parts))

    out: list[tuple[tuple[Sunflower, ...], PartiteHypergraph]] = []
    buckets: dict[object, list[PartiteHypergraph]] = {}
    for combo in itertools.combinations_with_replacement(range(len(single)), count):
        union = _disjoint_union(r, [single[i] for i in combo], tag="s")
        key = canonical_key(union)
        group = buckets.setdefault(key, [])
        if any(is_isomorphic(union, other) for other in group):
            continue
        group.append(union)
        flowers = []
        for j, _ in enumerate(combo):
            # every vertex of sunflower j carries the prefix "s{j}."
            edges_j = tuple(sorted(e for e in union.edges if e[0].startswith(f"s{j}.")))
            core = frozenset.intersection(*[frozenset(e) for e in edges_j])
            petals_j = tuple(frozenset(e) - core for e in edges_j)
            flowers.append(Sunflower(core=core, petals=petals_j, edges=edges_j))
        out.append((tuple(flowers), union))
    return out


def _disjoint_union(r: int, graphs: Sequence[PartiteHypergraph], tag: str) -> PartiteHypergraph:
    parts: list[list[str]] = [[] for _ in range(r)]
    edges: list[Edge] = []
    for j, g in enumerate(graphs):
        rename = {v: f"{tag}{j}.{v}" for v in g.part_of}
        for i in range(r):
            parts[i].extend(rename[v] for v in g.parts[i])
        edges.extend(tuple(rename[v] for v in e) for e in g.edges)
    return PartiteHypergraph.build(parts, edges)


def enumerate_basic_shapes(r: int, nu: int,
                           caps: Optional[GenerationCaps] = None) -> list[BasicShape]:
    """All basic shapes within the caps, in descending (a, b) order.

    An (a, b) shape is a core-disjoint sunflowers with nonempty cores and the
    configured petal count, plus a residue with b edges, matching number at
    most nu - a, and no wide nonempty-core sunflower; sunflowers and residue
    are placed vertex-disjointly.  Every shape is verified to have matching
    number at most nu and core sizes at most r-1 (the facts the witness-size
    budget rests on).
    """
    caps = caps or GenerationCaps()
    petals_cap = caps.petals if caps.petals is not None else (nu + 1) * r
    b_bound = sunflower_free_bound(r, nu)
    b_max = min(b_bound, caps.b_max) if caps.b_max is not None else b_bound

    residues = _enumerate_residues(r, nu, petals_cap, b_max, caps)
    effective_b = max(residues)

    flowers_by_a: dict[int, list[tuple[tuple[Sunflower, ...], PartiteHypergraph]]] = {
        0: [((), PartiteHypergraph.build([[] for _ in range(r)], []))]}
    for a in range(1, nu + 1):
        flowers_by_a[a] = _core_disjoint_sunflower_stack(r, a, petals_cap)

    shapes: list[BasicShape] = []
    for a in range(nu, -1, -1):
        for b in range(min(effective_b, b_max), -1, -1):
            if a == 0 and b == 0:
                continue
            if b not in residues:
                continue
            for res in residues[b]:
                if matching_number(res, max_edges=max(b, 12)) > nu - a:
                    continue
                for flowers, base in flowers_by_a[a]:
                    union = _merge_disjoint(r, base, res)
                    nu_check = matching_number(union, max_edges=max(len(union.edges), 12))
                    if nu_check > nu:
                        raise SequenceUnsoundError(
                            f"basic shape has matching number {nu_check} > nu={nu}")
                    if any(len(sf.core) > r - 1 for sf in flowers):
                        raise SequenceUnsoundError("sunflower core too large")
                    shapes.append(BasicShape(a, b, flowers, res, union))
                    if len(shapes) > caps.shape_max:
                        raise SizeGuardError("generation exceeded the shape cap")
    return shapes


def shape_witness(shape: BasicShape) -> tuple[str, ...]:
    """The cores of the sunflowers plus a minimum cover of the residue."""
    witness = set()
    for sf in shape.sunflowers:
        witness |= sf.core
    res_cover = vertex_cover_min(shape.residue, max_edges=max(shape.b, 12))
    witness |= {f"r.{v}" for v in res_cover}
    return tuple(sorted(witness))


def generate_basic_sequence(r: int, nu: int,
                            caps: Optional[GenerationCaps] = None,
                            mode: str = "permuting") -> StableSequence:
    """Enumerate basic shapes within caps, order them, attach witnesses, certify.

    Shapes with a sunflowers and a b-edge residue are listed in descending
    lexicographic order on (a, b) so that every extension case lands strictly
    later-to-earlier; each shape's witness comes from shape_witness.  The
    result carries the verify_sequence record; an uncertifiable item (e.g.
    because the caps cut the enumeration short) is reported through that
    record rather than raised.

    Shapes where the residue overlaps petal vertices are not enumerated; for
    nu = 1 no such shape exists (a >= 1 forces an empty residue), and for
    larger nu a missing shape surfaces as a certification failure, never as
    an unsound certificate.
    """
    shapes = enumerate_basic_shapes(r, nu, caps)
    items = tuple(
        WitnessedHypergraph.build(shape.hypergraph, shape_witness(shape))
        for shape in shapes)
    seq = StableSequence(
        r=r, nu=nu, c=(r - 1) * nu,
        relatives=(matching_hypergraph(r, nu + 1),),
        items=items,
    )
    record = verify_sequence(seq, mode=mode)
    seq = seq.with_record(record)
    bound = 2 ** ((r + nu) ** (2 * r))
    if record.certified and len(seq.items) > bound:
        raise SequenceUnsoundError("certified sequence exceeds the length bound")
    return seq


def _merge_disjoint(r: int, base: PartiteHypergraph, residue: PartiteHypergraph) -> PartiteHypergraph:
    rename = {v: f"r.{v}" for v in residue.part_of}
    parts = [list(base.parts[i]) + [rename[v] for v in residue.parts[i]] for i in range(r)]
    edges = list(base.edges) + [tuple(rename[v] for v in e) for e in residue.edges]
    return PartiteHypergraph.build(parts, edges)
