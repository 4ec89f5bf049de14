import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from monocover.errors import PreconditionError, SizeGuardError
from monocover.hypergraph import (
    PartiteHypergraph,
    canonical_edge_extensions,
    contains_copy,
    extend_matching_via_sunflowers,
    find_sunflower,
    is_cover,
    is_isomorphic,
    matching_hypergraph,
    matching_number,
    single_edge,
    shared_vertex_pair,
    sunflower_hypergraph,
    validate_sunflower,
    vertex_cover_min,
)
from monocover.instances import random_hypergraph
from monocover.oracles import (
    brute_contains_copy,
    brute_matching_number,
    brute_vertex_cover_size,
)


def test_construction_rejects_bad_edges():
    with pytest.raises(PreconditionError):
        PartiteHypergraph.build([["a"], ["b"]], [("a", "a")])
    with pytest.raises(PreconditionError):
        PartiteHypergraph.build([["a"], ["a2", "a"]], [])  # duplicate id across parts
    with pytest.raises(PreconditionError):
        PartiteHypergraph.build([["a"], ["b"]], [("b", "a")])  # wrong parts


def test_matching_number_examples():
    for r in (2, 3, 4):
        for nu in (1, 2, 3):
            assert matching_number(matching_hypergraph(r, nu)) == nu
        assert matching_number(single_edge(r)) == 1
    # any two edges of a nonempty-core sunflower share the core
    assert matching_number(sunflower_hypergraph(3, 1, 4)) == 1


def test_matching_guard():
    h = matching_hypergraph(2, 5)
    with pytest.raises(SizeGuardError):
        matching_number(h, max_edges=4)


def test_vertex_cover_examples():
    e3 = single_edge(3)
    cover = vertex_cover_min(e3)
    assert len(cover) == 1 and cover[0] == "v1"  # lex-first vertex of the edge
    assert len(vertex_cover_min(matching_hypergraph(3, 2))) == 2
    s = sunflower_hypergraph(3, 1, 4)
    assert vertex_cover_min(s) == ("c1",)  # the core vertex


def test_vertex_cover_is_minimum_and_lex_first():
    rng = random.Random(11)
    for _ in range(40):
        h = random_hypergraph(rng, rng.choice([2, 3]), max_edges=6, part_size=3)
        cover = vertex_cover_min(h)
        assert is_cover(h, cover)
        assert len(cover) == brute_vertex_cover_size(h)
        # no earlier combination of the same size covers
        support = sorted(h.support)
        for combo in itertools.combinations(support, len(cover)):
            if combo == cover:
                break
            assert not is_cover(h, combo)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000))
def test_weak_duality(seed):
    rng = random.Random(seed)
    h = random_hypergraph(rng, rng.choice([2, 3]), max_edges=7, part_size=3)
    nu = matching_number(h)
    tau = len(vertex_cover_min(h))
    assert nu <= tau <= h.r * nu
    assert nu == brute_matching_number(h)


def test_find_sunflower_examples():
    # a matching is a sunflower with empty core
    m = matching_hypergraph(3, 4)
    sf = find_sunflower(m, 4)
    assert sf is not None and sf.core == frozenset() and sf.petal_count() >= 4
    validate_sunflower(sf, m)
    # a single edge cannot form two petals
    assert find_sunflower(single_edge(3), 2) is None
    # nonempty-core flag is honoured
    sf2 = find_sunflower(matching_hypergraph(2, 4), 2, require_nonempty_core=True)
    assert sf2 is None


def test_find_sunflower_is_exact_on_mixed_instance():
    # three edges through one core vertex plus noise sharing petal vertices
    h = PartiteHypergraph.build(
        [["c", "x", "y"], ["p1", "p2", "p3", "q"]],
        [("c", "p1"), ("c", "p2"), ("c", "p3"), ("x", "p1"), ("y", "q")],
    )
    sf = find_sunflower(h, 3, require_nonempty_core=True)
    assert sf is not None and sf.core == {"c"}
    validate_sunflower(sf, h)
    assert find_sunflower(h, 4, require_nonempty_core=True) is None


def test_sunflower_lemma_bound():
    # r! t^(r+1) edges force a sunflower with t petals (here r=2, t=2: 16 edges)
    rng = random.Random(3)
    for _ in range(20):
        parts = [[f"a{i}" for i in range(6)], [f"b{i}" for i in range(6)]]
        edges = set()
        while len(edges) < 16:
            edges.add((rng.choice(parts[0]), rng.choice(parts[1])))
        h = PartiteHypergraph.build(parts, edges)
        sf = find_sunflower(h, 2)
        assert sf is not None and sf.petal_count() >= 2
        validate_sunflower(sf, h)


def test_contains_copy_examples():
    host = PartiteHypergraph.build([["x", "y"], ["u"]], [("x", "u"), ("y", "u")])
    assert contains_copy(host, single_edge(2)) is not None
    # host has matching number 1, so no 2-matching embeds
    assert contains_copy(host, matching_hypergraph(2, 2)) is None
    # two edges sharing a part-2 vertex embed into a part-2 star with 3 edges
    star = sunflower_hypergraph(2, 1, 3, core_parts=[1])
    assert contains_copy(star, shared_vertex_pair(2, 1), mode="respecting") is not None


def test_contains_copy_modes_differ():
    # pattern shares in part 1; host shares in part 2
    pat = shared_vertex_pair(2, 0)
    host = shared_vertex_pair(2, 1)
    assert contains_copy(host, pat, mode="respecting") is None
    assert contains_copy(host, pat, mode="permuting") is not None


def test_contains_copy_embedding_is_valid():
    rng = random.Random(5)
    for _ in range(50):
        host = random_hypergraph(rng, 3, max_edges=6, part_size=3)
        pattern = random_hypergraph(rng, 3, max_edges=3, part_size=2)
        emb = contains_copy(host, pattern)
        if emb is None:
            continue
        # injective, and every pattern edge lands on a host edge
        values = list(emb.vertex_map.values())
        assert len(values) == len(set(values))
        for e in pattern.edges:
            image = [None] * host.r
            for i, v in enumerate(e):
                image[emb.part_map[i]] = emb.vertex_map[v]
            assert tuple(image) in host.edges


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 10_000))
def test_contains_copy_agrees_with_brute_force(seed):
    rng = random.Random(seed)
    r = rng.choice([2, 3])
    host = random_hypergraph(rng, r, max_edges=6, part_size=3)
    pattern = random_hypergraph(rng, r, max_edges=rng.choice([3, 4]), part_size=2)
    fast = contains_copy(host, pattern) is not None
    assert fast == brute_contains_copy(host, pattern)


def test_extend_matching_trivial_and_single_sunflower():
    # a=0: the matching itself comes back
    m = [("a1", "a2"), ("b1", "b2")]
    parts = [["a1", "b1"], ["a2", "b2"]]
    PartiteHypergraph.build(parts, m)  # sanity: it is a matching
    out = extend_matching_via_sunflowers([], m)
    assert set(out) == set(m)

    # a=1: S_3(1,6) with nu=1, M empty -> a 2... matching of size nu+1 = 2?
    # nu = |M| + a - 1 = 0 + 1 - 1 = 0 here, so output size 1.
    s = sunflower_hypergraph(3, 1, 6)
    sf = find_sunflower(s, 6, require_nonempty_core=True)
    out = extend_matching_via_sunflowers([sf], [])
    assert len(out) == 1

    # nu=1 shape: one sunflower plus a matching of size nu-a+1 = 1
    m1 = [("z1", "z2", "z3")]
    out2 = extend_matching_via_sunflowers([sf], m1)
    flat = [v for e in out2 for v in e]
    assert len(out2) == 2 and len(flat) == len(set(flat))


def test_extend_matching_random_two_sunflowers():
    rng = random.Random(17)
    for _ in range(30):
        r = rng.choice([2, 3])
        nu = 2
        petals = (nu + 1) * r
        flowers = []
        used = 0
        for idx in range(2):
            core_size = rng.randint(1, r - 1)
            core_parts = sorted(rng.sample(range(r), core_size))
            s = sunflower_hypergraph(r, core_size, petals, core_parts=core_parts)
            rename = {v: f"s{idx}.{v}" for v in s.part_of}
            edges = tuple(tuple(rename[v] for v in e) for e in s.sorted_edges)
            core = frozenset(rename[v] for e in s.sorted_edges for v in e
                             if all(v in f for f in s.sorted_edges))
            from monocover.hypergraph import Sunflower
            flowers.append(Sunflower(core=core,
                                     petals=tuple(frozenset(e) - core for e in edges),
                                     edges=edges))
            used += 1
        m = [tuple(f"m{i + 1}" for i in range(r))]  # one disjoint edge, nu - a + 1 = 1
        out = extend_matching_via_sunflowers(flowers, m)
        flat = [v for e in out for v in e]
        assert len(out) == nu + 1 == 3
        assert len(flat) == len(set(flat))
        # oracle: the output, as a hypergraph, has matching number exactly 3
        parts = [sorted({e[i] for e in out}) for i in range(r)]
        assert matching_number(PartiteHypergraph.build(parts, out)) == 3


def test_extend_matching_precondition_diagnostics():
    s = sunflower_hypergraph(3, 1, 6)
    sf = find_sunflower(s, 6, require_nonempty_core=True)
    with pytest.raises(PreconditionError, match="core-disjointness"):
        extend_matching_via_sunflowers([sf, sf], [])
    with pytest.raises(PreconditionError, match="touches a sunflower core"):
        extend_matching_via_sunflowers([sf], [("c1", "z2", "z3")])
    with pytest.raises(PreconditionError, match="petal clause"):
        extend_matching_via_sunflowers([sf], [("z1", "z2", "z3"), ("w1", "w2", "w3")])
    with pytest.raises(PreconditionError, match="edges of M intersect"):
        extend_matching_via_sunflowers([], [("z1", "z2"), ("z1", "w2")])


def test_canonical_extensions_of_single_edge():
    e2 = single_edge(2)
    # avoiding the part-1 vertex: the part-2-sharing edge and the disjoint edge
    assert len(canonical_edge_extensions(e2, ["v1"])) == 2
    # avoiding everything: only the fresh disjoint edge
    assert len(canonical_edge_extensions(e2, ["v1", "v2"])) == 1
    # the all-fresh edge is always available
    rng = random.Random(23)
    for _ in range(10):
        h = random_hypergraph(rng, 2, max_edges=4, part_size=3)
        assert len(canonical_edge_extensions(h, h.vertices())) >= 1


def test_canonical_extensions_dedup_is_sound_and_complete():
    rng = random.Random(29)
    for _ in range(20):
        h = random_hypergraph(rng, 2, max_edges=3, part_size=2)
        avoid = list(h.sorted_edges[0][:1])
        outs = canonical_edge_extensions(h, avoid)
        # no two outputs isomorphic
        for a, b in itertools.combinations(outs, 2):
            assert not is_isomorphic(a, b)
        # every raw extension is isomorphic to some output
        from monocover.hypergraph import fresh_vertex_names
        fresh = fresh_vertex_names(h)
        options = [[v for v in part if v not in avoid] + [fresh[i]]
                   for i, part in enumerate(h.parts)]
        for combo in itertools.product(*options):
            if combo in h.edges:
                continue
            raw = h.add_edge(combo)
            assert any(is_isomorphic(raw, out) for out in outs)


def test_isomorphism_support_only():
    a = single_edge(2)
    b = PartiteHypergraph.build([["x", "iso"], ["y"]], [("x", "y")])
    assert is_isomorphic(a, b)
    assert not is_isomorphic(a, matching_hypergraph(2, 2))
