"""Hand-authored stable sequences bundled with the package.

Each builder constructs the sequence and certifies it with verify_sequence
before returning, so a shipped sequence can never silently drift out of
certification.  The same sequences are serialised under data/ and loaded by
`bundled_sequence`, which re-certifies on load by default.

The (2,1) case needs two items: two edges through one vertex, then the
single edge.  The (3,1) case needs five.  The non-obvious members are the
"triangle" (three edges pairwise meeting in single vertices, one per part)
and the "cube" (the four even-parity edges of the 2x2x2 grid): growing the
triangle by an edge that meets all three members in single vertices produces
exactly the cube, so the cube has to come first.
"""

from __future__ import annotations

from importlib import resources
from .errors import PreconditionError, UnsupportedInstanceError
from .hypergraph import PartiteHypergraph, matching_hypergraph, single_edge, sunflower_hypergraph
from .stability import StableSequence, WitnessedHypergraph, verify_sequence


def _certified(seq: StableSequence) -> StableSequence:
    record = verify_sequence(seq)
    if not record.certified:
        raise PreconditionError(f"built-in sequence failed certification: {record.failure}")
    return seq.with_record(record)


def sequence_r2_nu1() -> StableSequence:
    """[two edges sharing a vertex, E_2], budget 1, relative M_{2,2}."""
    pair = sunflower_hypergraph(2, 1, 2, core_parts=[1])  # edges share their part-2 vertex
    e2 = single_edge(2)
    items = (
        WitnessedHypergraph.build(pair, ["c2"]),
        WitnessedHypergraph.build(e2, ["v1"]),
    )
    seq = StableSequence(r=2, nu=1, c=1,
                         relatives=(matching_hypergraph(2, 2),), items=items)
    return _certified(seq)


def triangle_hypergraph() -> PartiteHypergraph:
    """Three edges pairwise intersecting in single vertices, one per part."""
    return PartiteHypergraph.build(
        [["x1", "y1"], ["x2", "y2"], ["x3", "z3"]],
        [("x1", "x2", "x3"), ("y1", "y2", "x3"), ("x1", "y2", "z3")],
    )


def cube_hypergraph() -> PartiteHypergraph:
    """The four even-parity edges of the 2x2x2 grid; any two meet in one vertex."""
    return PartiteHypergraph.build(
        [["x1", "y1"], ["x2", "y2"], ["x3", "z3"]],
        [("x1", "x2", "x3"), ("y1", "y2", "x3"), ("x1", "y2", "z3"), ("y1", "x2", "z3")],
    )


def sequence_r3_nu1() -> StableSequence:
    """A five-item 2-stable sequence for intersecting 3-partite hypergraphs.

    Order and witnesses:
      1. double edge (two edges sharing two vertices), witness = the shared pair
      2. cube, witness = one full part
      3. triangle, witness = two vertices covering all three edges
      4. single-share pair, witness = the shared vertex
      5. E_3, witness = one vertex
    Every uncovered extension of an item lands in an earlier item or in
    M_{3,2}; verify_sequence re-derives the whole case analysis on build.
    """
    double = sunflower_hypergraph(3, 2, 2, core_parts=[1, 2])  # shares parts 2 and 3
    cube = cube_hypergraph()
    tri = triangle_hypergraph()
    pair = sunflower_hypergraph(3, 1, 2, core_parts=[2])       # shares part 3
    e3 = single_edge(3)
    items = (
        WitnessedHypergraph.build(double, ["c2", "c3"]),
        WitnessedHypergraph.build(cube, ["x1", "y1"]),
        WitnessedHypergraph.build(tri, ["x1", "x3"]),
        WitnessedHypergraph.build(pair, ["c3"]),
        WitnessedHypergraph.build(e3, ["v1"]),
    )
    seq = StableSequence(r=3, nu=1, c=2,
                         relatives=(matching_hypergraph(3, 2),), items=items)
    return _certified(seq)


_BUILDERS = {
    (2, 1): sequence_r2_nu1,
    (3, 1): sequence_r3_nu1,
}


def bundled_pairs() -> tuple[tuple[int, int], ...]:
    return tuple(sorted(_BUILDERS))


def bundled_sequence(r: int, nu: int, verify: bool = False) -> StableSequence:
    """Load the shipped certified sequence for (r, nu).

    Prefers the serialised data file; falls back to the in-code builder (which
    always certifies).  With verify=True the loaded sequence is re-certified.
    """
    if (r, nu) not in _BUILDERS:
        raise UnsupportedInstanceError(
            f"no bundled stable sequence for (r={r}, independence={nu}); "
            f"available: {list(bundled_pairs())}")
    name = f"seq_r{r}_nu{nu}.json"
    try:
        from .serialize import sequence_from_obj
        import json
        text = resources.files("monocover.data").joinpath(name).read_text()
        seq = sequence_from_obj(json.loads(text))
        if verify or seq.verified is None:
            record = verify_sequence(seq)
            if not record.certified:
                raise PreconditionError(f"bundled sequence {name} failed re-certification")
            seq = seq.with_record(record)
        return seq
    except (FileNotFoundError, ModuleNotFoundError):
        return _BUILDERS[(r, nu)]()
