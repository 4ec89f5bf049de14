import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from monocover.duality import ColoredMultigraph
from monocover.errors import PreconditionError
from monocover.instances import random_colored_graph
from monocover.metrics import MetricFamily, ball, graph_metric, is_metric


def test_graph_metric_path():
    g = ColoredMultigraph.build(1, ["a", "b", "c"], [("a", "b", 1), ("b", "c", 1)])
    d = graph_metric(g, 1)
    idx = {v: i for i, v in enumerate(g.vertices)}
    assert d[idx["a"]][idx["c"]] == 2
    assert d[idx["a"]][idx["b"]] == 1


def test_graph_metric_disconnected_cap_is_n():
    g = ColoredMultigraph.build(1, ["a", "b"], [])
    d = graph_metric(g, 1)
    assert d[0][1] == 2  # |V(G)|, not infinity


def test_graph_metric_complete():
    n = 6
    verts = [f"v{i}" for i in range(n)]
    g = ColoredMultigraph.build(1, verts, [(verts[i], verts[j], 1)
                                           for i in range(n) for j in range(i + 1, n)])
    d = graph_metric(g, 1)
    assert all(d[i][j] == 1 for i in range(n) for j in range(n) if i != j)


def test_is_metric_examples():
    ok, _ = is_metric([[0, 1], [1, 0]])
    assert ok
    bad = [[0, 1, 3], [1, 0, 1], [3, 1, 0]]
    ok, witness = is_metric(bad, ["a", "b", "c"])
    assert not ok and witness[0] == "triangle"
    assert set(witness[1:4]) == {"a", "b", "c"}
    # discrete metric
    n = 5
    disc = [[0 if i == j else 1 for j in range(n)] for i in range(n)]
    assert is_metric(disc)[0]


def test_is_metric_non_triangle_violations():
    assert is_metric([[1]])[1][0] == "identity"
    assert is_metric([[0, 2], [1, 0]])[1][0] == "symmetry"
    assert is_metric([[0, 0], [0, 0]])[1][0] == "positivity"


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 100_000))
def test_graph_metric_is_metric(seed):
    # includes disconnected colour classes, where the cap case matters
    rng = random.Random(seed)
    g = random_colored_graph(rng, rng.randint(1, 40), rng.choice([1, 2, 3]),
                             edge_prob=rng.choice([0.05, 0.3, 0.9]))
    for c in range(1, g.r + 1):
        ok, witness = is_metric(graph_metric(g, c), g.vertices)
        assert ok, witness


def test_ball_examples_and_cap_semantics():
    # two colour-1 triangles, no colour-1 edges between them
    verts = ["a0", "a1", "a2", "b0", "b1", "b2"]
    edges = [("a0", "a1", 1), ("a0", "a2", 1), ("a1", "a2", 1),
             ("b0", "b1", 1), ("b0", "b2", 1), ("b1", "b2", 1)]
    g = ColoredMultigraph.build(1, verts, edges)
    fam = MetricFamily.from_colored_graph(g)
    n = len(verts)
    assert ball(fam, 1, "a0", 0) == {"a0"}
    assert ball(fam, 1, "a0", n - 1) == {"a0", "a1", "a2"}  # the component
    assert ball(fam, 1, "a0", n) == set(verts)              # the cap folds in

    # monotone in the radius
    prev = set()
    for radius in range(0, n + 1):
        cur = ball(fam, 1, "a0", radius)
        assert prev <= cur
        prev = cur


def test_ball_radius_one_in_complete_graph():
    verts = [f"v{i}" for i in range(5)]
    g = ColoredMultigraph.build(1, verts, [(verts[i], verts[j], 1)
                                           for i in range(5) for j in range(i + 1, 5)])
    fam = MetricFamily.from_colored_graph(g)
    assert ball(fam, 1, "v0", 1) == set(verts)


def test_family_accepts_fractions_and_validates():
    fam = MetricFamily.build(["x", "y"], [[[0, Fraction(1, 2)], [Fraction(1, 2), 0]]])
    assert fam.dist(1, "x", "y") == Fraction(1, 2)
    with pytest.raises(PreconditionError):
        MetricFamily.build(["x", "y", "z"],
                           [[[0, 1, 3], [1, 0, 1], [3, 1, 0]]])  # triangle violation
