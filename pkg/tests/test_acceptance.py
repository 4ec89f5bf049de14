"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
lines; every tolerance and budget is pinned here, nothing is calibrated
later.  Expected values are either asserted directly (structural facts),
computed by an independent brute-force oracle in the same test, or verified
against a stated classical fact per instance.
"""

import itertools
import json
import random
import time

import pytest

from monocover.abdual import is_ab_duality
from monocover.duality import (
    ColoredMultigraph,
    colored_to_hyper,
    hyper_to_colored,
    independence_number,
    is_independent,
)
from monocover.engine import (
    BallCoverResult,
    DualGrowthResult,
    TransferenceState,
    end_to_end,
    transference_step,
    tree_cover,
    validate_tree_cover,
)
from monocover.errors import IndependenceViolation
from monocover.exactnum import cmp_power, exact_cmp, exact_mul, exact_root
from monocover.hypergraph import (
    Sunflower,
    is_isomorphic,
    matching_hypergraph,
    matching_number,
    single_edge,
    sunflower_hypergraph,
    vertex_cover_min,
)
from monocover.instances import random_colored_graph, random_hypergraph
from monocover.metrics import MetricFamily, graph_metric, is_metric
from monocover.oracles import oracle_min_component_cover, oracle_superset_stability
from monocover.sequences import bundled_sequence, sequence_r2_nu1, sequence_r3_nu1
from monocover.stability import (
    GenerationCaps,
    cover_from_sequence,
    check_witness,
    generate_basic_sequence,
)


def _report(num, text):
    print(f"ACCEPTANCE {num} PASS - {text}")


def _complete(n, r, rng):
    verts = [f"v{i:02d}" for i in range(n)]
    edges = [(verts[i], verts[j], rng.randint(1, r))
             for i in range(n) for j in range(i + 1, n)]
    return ColoredMultigraph.build(r, verts, edges)


def test_criterion_1_duality_round_trip():
    started = time.perf_counter()
    rng = random.Random(101)
    for _ in range(200):
        r = rng.choice([2, 3, 4])
        h = random_hypergraph(rng, r, max_edges=8, part_size=4)
        g = hyper_to_colored(h)
        h2 = colored_to_hyper(g)
        assert is_isomorphic(h2, h.without_isolated(), mode="respecting")
        assert independence_number(g) == matching_number(h)
    elapsed = time.perf_counter() - started
    assert elapsed < 60.0
    _report(1, f"200 round trips and alpha=nu identities in {elapsed:.1f}s")


def test_criterion_2_graph_metrics_are_metrics():
    started = time.perf_counter()
    rng = random.Random(202)
    disconnected_cases = 0
    for _ in range(200):
        n = rng.randint(1, 40)
        r = rng.choice([2, 3])
        g = random_colored_graph(rng, n, r, edge_prob=rng.choice([0.05, 0.2, 0.6, 0.95]))
        for c in range(1, r + 1):
            d = graph_metric(g, c)
            if any(d[i][j] == n for i in range(n) for j in range(i + 1, n)):
                disconnected_cases += 1
            ok, witness = is_metric(d, g.vertices)
            assert ok, witness
    assert disconnected_cases > 0  # the |V(G)| cap really was exercised
    elapsed = time.perf_counter() - started
    assert elapsed < 30.0
    _report(2, f"200 graphs, all colour metrics pass the axioms "
               f"({disconnected_cases} capped classes) in {elapsed:.1f}s")


def test_criterion_3_reduction_soundness():
    from monocover.stability import WitnessedHypergraph

    rng = random.Random(303)
    disagreements = 0
    checked = 0
    pool_builders = [
        lambda r: matching_hypergraph(r, 2),
        lambda r: single_edge(r),
        lambda r: sunflower_hypergraph(r, 1, 2),
        lambda r: sunflower_hypergraph(r, r - 1, 2) if r > 1 else single_edge(r),
    ]
    for _ in range(120):
        r = rng.choice([2, 3])
        h = random_hypergraph(rng, r, max_edges=4, part_size=3)
        cover = vertex_cover_min(h)
        extra = [v for v in sorted(h.support) if v not in cover]
        witness = list(cover) + (rng.sample(extra, 1) if extra and rng.random() < 0.5 else [])
        item = WitnessedHypergraph.build(h, witness)
        relatives = [b(r) for b in rng.sample(pool_builders, rng.randint(1, 3))]
        fast = check_witness(item, relatives).ok
        slow, _ = oracle_superset_stability(h, item.witness, relatives, depth=2)
        checked += 1
        if fast != slow:
            disagreements += 1
    assert disagreements == 0
    _report(3, f"{checked} witnessed instances, single-extension check == depth-2 "
               f"superset oracle, 0 disagreements")


def test_criterion_4_r2_sequences_and_covers():
    seq = sequence_r2_nu1()
    assert seq.verified.certified and seq.c == 1
    assert len(seq.items) == 2

    generated = generate_basic_sequence(2, 1, GenerationCaps())
    assert generated.verified.certified

    rng = random.Random(404)
    for _ in range(500):
        part = rng.choice([0, 1])
        leaves = rng.randint(1, 7)
        h = sunflower_hypergraph(2, 1, leaves, core_parts=[part])
        cover = cover_from_sequence(h, seq)
        assert len(cover) <= 1
        assert len(cover) == len(vertex_cover_min(h))
    _report(4, "(2,1) hand and generated sequences certify; 500 intersecting "
               "bipartite covers of size <= 1 matching the exact optimum")


def test_criterion_5_r3_sequence():
    seq = sequence_r3_nu1()
    assert seq.verified.certified
    assert seq.c == 2
    assert all(len(it.witness) <= 2 for it in seq.items)
    bound = 2 ** ((3 + 1) ** 6)
    assert len(seq.items) <= bound
    _report(5, f"(3,1) sequence of length {len(seq.items)} certifies with c=2; "
               f"length bound 2^(4^6) holds")


def _random_block_family(rng, r, n, scales):
    """Per metric: random block partition; intra distance 1..2, cross from scales."""
    verts = [f"p{i}" for i in range(n)]
    mats = []
    for t in range(r):
        blocks = {v: rng.randrange(rng.randint(1, 3)) for v in verts}
        intra = rng.randint(1, 2)
        cross = rng.choice(scales)
        mat = [[0 if u == v else (intra if blocks[u] == blocks[v] else cross)
                for v in verts] for u in verts]
        mats.append(mat)
    return MetricFamily.build(verts, mats)


def _verify_growth(result, state_m, k, r, family):
    """Re-derive every inequality of a growth step with cmp_power."""
    m_prime, b_prime = result.m_prime, result.b_prime
    # the restricted embedding is an (m', k^(1/4r) m')-duality
    emb = result.embedding
    ok, violation = is_ab_duality(emb)
    assert ok, violation
    h, phi = emb.hypergraph, emb.mapping
    for e, f in itertools.combinations(h.sorted_edges, 2):
        for i in range(h.r):
            d = family.dist(i + 1, phi[e], phi[f])
            if e[i] == f[i]:
                assert exact_cmp(d, m_prime) <= 0
            else:
                # d >= k^(1/4r) m', cross-powered, no roots
                assert cmp_power(d, k, 1, 4 * r, scale=m_prime) >= 0
    # the growth chain, link by link
    assert exact_cmp(state_m, m_prime) <= 0
    assert cmp_power(m_prime, k, 1, 4 * r, scale=m_prime) < 0
    assert exact_cmp(exact_mul(m_prime, m_prime),
                     exact_mul(exact_mul(4, k), exact_mul(state_m, state_m))) <= 0
    kq, sk = exact_root(k, 4 * r), exact_root(k, 2)
    lhs = exact_mul(exact_mul(2, kq), exact_mul(sk, state_m))
    assert exact_cmp(lhs + exact_mul(sk, state_m), exact_mul(k, state_m)) <= 0
    assert exact_cmp(exact_mul(sk, state_m), 0) > 0


def _verify_selection_trio(result, state, k, r, family):
    """Recompute the uncovered point and per-metric minima; check the trio."""
    from monocover.exactnum import exact_add

    before = set(state.embedding.values())
    new_points = [p for p in result.embedding.mapping.values() if p not in before]
    assert len(new_points) == 1
    v = new_points[0]
    minima = sorted(
        min(family.dist(t, state.embedding[f], v) for f in state.hypergraph.sorted_edges)
        for t in range(1, r + 1))
    seq_vals = [state.m] + minima + [exact_mul(k, state.m)]
    tp = result.t_prime
    assert cmp_power(seq_vals[tp + 1], k, 1, 3 * r, scale=state.m) > 0
    assert cmp_power(seq_vals[tp + 1], k, 1, 3 * r, scale=seq_vals[tp]) > 0
    assert cmp_power(seq_vals[tp], k, 1, 2, scale=state.m) <= 0
    assert exact_cmp(result.m_prime, exact_add(seq_vals[tp], state.m)) == 0


def test_criterion_6_transference_step_assertions():
    rng = random.Random(606)
    steps = growths = 0
    # chains of exact-rooted k values with k_next = k^(1/4r), all above 2^(9r)
    scale_sets = {
        2: (2 ** 1536, 2 ** 192, 2 ** 24),
        3: (2 ** 5184, 2 ** 432, 2 ** 36),
    }
    while steps < 300:
        r = rng.choice([2, 3])
        chain = scale_sets[r]
        k1 = chain[0]
        seq = bundled_sequence(r, 1)
        # far scales dominate so the first witness ball usually misses a point
        scales = [2, 20, chain[-1] * 4, chain[1] * 8,
                  k1 * 2, k1 * 2, k1 * 16, k1 * 16, k1 * 16]
        fam = _random_block_family(rng, r, rng.randint(4, 9), scales)
        item = seq.items[-1]
        state = TransferenceState(
            index=len(seq.items), hypergraph=item.hypergraph, witness=item.witness,
            embedding={item.hypergraph.sorted_edges[0]: fam.vertices[0]}, m=1)
        for k in chain:
            try:
                result = transference_step(state, seq, fam, k)
            except IndependenceViolation as violation:
                # acceptable outcome: re-verify the witness set independently
                steps += 1
                for u, w in itertools.combinations(violation.vertices, 2):
                    assert all(fam.dist(t, u, w) > 1 for t in range(1, r + 1))
                break
            steps += 1
            if isinstance(result, BallCoverResult):
                covered = set().union(*(b.members for b in result.balls))
                assert covered == set(fam.vertices)
                break
            assert isinstance(result, DualGrowthResult)
            growths += 1
            _verify_growth(result, state.m, k, r, fam)
            _verify_selection_trio(result, state, k, r, fam)
            if result.state is None:
                break
            state = result.state
    assert steps >= 300 and growths >= 60
    _report(6, f"{steps} transference steps, {growths} growths, every duality, "
               f"chain and selection inequality re-verified exactly; 0 failures")


def test_criterion_7_r2_desk_scale():
    started = time.perf_counter()
    rng = random.Random(707)
    for _ in range(100):
        n = rng.randint(2, 40)
        g = _complete(n, 2, rng)
        tc = end_to_end(g)
        assert len(tc.trees) == 1
        tree = tc.trees[0]
        assert tree.vertices == set(g.vertices)
        assert tree.measured_diameter <= 3
        # classical fact, checked directly: one colour class is connected
        # with diameter <= 3 (here: = has a spanning component of diameter <= 3)
        best = min(
            (d for c in (1, 2) for comp in g.color_components(c)
             if len(comp) == n
             for d in [_component_diameter(g, c, comp)]),
            default=None)
        assert best is not None and best <= 3
        validate_tree_cover(tc, g)
    elapsed = time.perf_counter() - started
    assert elapsed < 120.0
    _report(7, f"100 two-colourings covered by exactly 1 tree of measured "
               f"diameter <= 3 in {elapsed:.1f}s")


def _component_diameter(g, color, comp):
    from collections import deque
    adj = g.color_adjacency(color)
    members = set(comp)
    best = 0
    for src in comp:
        dist = {src: 0}
        q = deque([src])
        while q:
            x = q.popleft()
            for y in adj[x]:
                if y in members and y not in dist:
                    dist[y] = dist[x] + 1
                    q.append(y)
        best = max(best, max(dist.values()))
    return best


def test_criterion_8_r3_desk_scale(tmp_path):
    started = time.perf_counter()
    rng = random.Random(808)
    from monocover.serialize import cover_from_obj, cover_to_obj

    for trial in range(100):
        n = rng.randint(2, 30)
        g = _complete(n, 3, rng)
        tc = end_to_end(g)
        assert len(tc.trees) <= 2  # the (r-1) alpha bound, alpha = 1

        # certificates re-validate from disk, not from memory
        path = tmp_path / f"cert{trial}.json"
        path.write_text(json.dumps(cover_to_obj(tc)))
        reloaded = cover_from_obj(json.loads(path.read_text()))
        validate_tree_cover(reloaded, g)

        # the engine never beats the true optimum
        optimum = oracle_min_component_cover(g, max_components=96)
        assert optimum <= len(tc.trees)
    elapsed = time.perf_counter() - started
    assert elapsed < 300.0
    _report(8, f"100 three-colourings covered by <= 2 trees, disk-revalidated, "
               f"oracle-confirmed in {elapsed:.1f}s")


def test_criterion_9_premise_violation_branch():
    rng = random.Random(909)
    for trial in range(50):
        r = rng.choice([2, 3])
        seq = bundled_sequence(r, 1)
        sizes = (rng.randint(2, 5), rng.randint(2, 5))
        verts = [f"a{i}" for i in range(sizes[0])] + [f"b{i}" for i in range(sizes[1])]
        edges = []
        for group in ("a", "b"):
            members = [v for v in verts if v.startswith(group)]
            edges += [(u, w, rng.randint(1, r))
                      for i, u in enumerate(members) for w in members[i + 1:]]
        g = ColoredMultigraph.build(r, verts, edges)
        with pytest.raises(IndependenceViolation) as exc:
            tree_cover(g, seq)
        found = exc.value.vertices
        assert len(found) == 2  # nu + 1
        assert is_independent(g, found)
    _report(9, "50 planted alpha = nu+1 instances all return a verified "
               "independent set, never a cover")


def test_criterion_10_matching_extractor():
    from monocover.hypergraph import extend_matching_via_sunflowers

    rng = random.Random(1010)
    for _ in range(200):
        r = rng.choice([2, 3, 4])
        a = rng.randint(0, 3)
        s = rng.randint(1, 3)
        nu = s + a - 1
        petals = (nu + 1) * r
        flowers = []
        for idx in range(a):
            core_size = rng.randint(1, r - 1) if r > 1 else 0
            base = sunflower_hypergraph(r, core_size, petals,
                                        core_parts=sorted(rng.sample(range(r), core_size)))
            rename = {v: f"s{idx}.{v}" for v in base.part_of}
            edges = tuple(tuple(rename[v] for v in e) for e in base.sorted_edges)
            core = frozenset.intersection(*[frozenset(e) for e in edges]) if len(edges) > 1 \
                else frozenset(rename[v] for v in base.sorted_edges[0][:core_size])
            flowers.append(Sunflower(core=core,
                                     petals=tuple(frozenset(e) - core for e in edges),
                                     edges=edges))
        matching = [tuple(f"m{j}.{i}" for i in range(r)) for j in range(s)]
        out = extend_matching_via_sunflowers(flowers, matching)
        flat = [v for e in out for v in e]
        assert len(out) == nu + 1
        assert len(flat) == len(set(flat))
    _report(10, "200 sunflower/matching extractions, all outputs pairwise-disjoint "
                "matchings of size exactly nu+1")
