"""Command-line surface.

Subcommands: convert, metric, find-dual, verify, gen-sequence, cover,
end-to-end, experiment, oracle.  The cover-producing commands exit with
0 = cover emitted, 2 = independence premise violated (the independent set is
emitted), 3 = no bundled sequence for (r, alpha), 4 = internal assertion.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import serialize
from .abdual import find_ab_dual
from .duality import colored_to_hyper, hyper_to_colored
from .engine import (
    adaptive_schedule,
    end_to_end,
    paper_schedule,
    tree_cover,
    validate_tree_cover,
)
from .errors import (
    EngineAssertionError,
    IndependenceViolation,
    SequenceUnsoundError,
    UnsupportedInstanceError,
)
from .exactnum import parse_exact
from .instances import ExperimentConfig, gen_instance, run_experiment
from .metrics import graph_metric, is_metric
from .oracles import oracle_min_component_cover, oracle_superset_stability
from .sequences import bundled_pairs
from .stability import GenerationCaps, generate_basic_sequence, verify_sequence

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_PREMISE = 2
EXIT_UNSUPPORTED = 3
EXIT_INTERNAL = 4


def _emit(obj, args) -> None:
    text = json.dumps(obj, indent=None if args.compact else 2, sort_keys=True)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n")
    else:
        print(text)


def _cmd_convert(args) -> int:
    obj = serialize.load_json(args.input)
    if args.to == "colored":
        g = hyper_to_colored(serialize.hypergraph_from_obj(obj))
        _emit(serialize.colored_to_obj(g), args)
    else:
        h = colored_to_hyper(serialize.colored_from_obj(obj))
        _emit(serialize.hypergraph_to_obj(h), args)
    return EXIT_OK


def _cmd_metric(args) -> int:
    g = serialize.colored_from_obj(serialize.load_json(args.graph))
    colors = [args.color] if args.color else list(range(1, g.r + 1))
    out = {"vertices": list(g.vertices), "metrics": {}}
    for c in colors:
        m = graph_metric(g, c)
        ok, witness = is_metric(m, g.vertices)
        out["metrics"][str(c)] = {"matrix": m, "is_metric": ok,
                                  "violation": None if ok else list(map(str, witness))}
    _emit(out, args)
    return EXIT_OK if all(v["is_metric"] for v in out["metrics"].values()) else EXIT_FAIL


def _cmd_find_dual(args) -> int:
    h = serialize.hypergraph_from_obj(serialize.load_json(args.hypergraph))
    fam = serialize.family_from_obj(serialize.load_json(args.family))
    emb = find_ab_dual(h, fam, parse_exact(args.a), parse_exact(args.b),
                       max_edges=args.guard_max_edges, max_vertices=args.guard_max_vertices)
    if emb is None:
        print("no (a,b)-duality exists", file=sys.stderr)
        return EXIT_FAIL
    _emit(serialize.embedding_to_obj(emb), args)
    return EXIT_OK


def _cmd_verify(args) -> int:
    seq = serialize.sequence_from_obj(serialize.load_json(args.sequence))
    record = verify_sequence(seq)
    for item in record.items:
        status = "ok" if item.ok else f"FAIL ({item.failure})"
        print(f"item {item.index}: {status}")
    print(f"certified: {record.certified}" + (f" ({record.failure})" if record.failure else ""))
    if args.out:
        serialize.save_json(serialize.sequence_to_obj(seq.with_record(record)), args.out)
    return EXIT_OK if record.certified else EXIT_FAIL


def _cmd_gen_sequence(args) -> int:
    caps = GenerationCaps(petals=args.petals, b_max=args.bmax)
    seq = generate_basic_sequence(args.r, args.nu, caps)
    print(f"generated {len(seq.items)} items; certified: {seq.verified.certified}")
    if not seq.verified.certified:
        print(f"failure: {seq.verified.failure}")
    if args.out:
        serialize.save_json(serialize.sequence_to_obj(seq), args.out)
    return EXIT_OK if seq.verified.certified else EXIT_FAIL


def _run_cover(args, g, seq, sched) -> int:
    try:
        cover = tree_cover(g, seq, sched) if seq is not None else end_to_end(g)
    except IndependenceViolation as ex:
        _emit({"outcome": "independence-violation", "independent_set": list(ex.vertices)}, args)
        return EXIT_PREMISE
    except UnsupportedInstanceError as ex:
        _emit({"outcome": "unsupported", "error": str(ex),
               "bundled": [list(p) for p in bundled_pairs()]}, args)
        return EXIT_UNSUPPORTED
    except (EngineAssertionError, SequenceUnsoundError) as ex:
        _emit({"outcome": "internal-assertion", "error": str(ex)}, args)
        return EXIT_INTERNAL
    obj = serialize.cover_to_obj(cover)
    validate_tree_cover(serialize.cover_from_obj(obj), g)
    _emit(obj, args)
    return EXIT_OK


def _cmd_cover(args) -> int:
    g = serialize.colored_from_obj(serialize.load_json(args.graph))
    seq = serialize.sequence_from_obj(serialize.load_json(args.sequence))
    if seq.verified is None or not seq.verified.certified:
        record = verify_sequence(seq)
        if not record.certified:
            print(f"sequence failed certification: {record.failure}", file=sys.stderr)
            return EXIT_FAIL
        seq = seq.with_record(record)
    sched = (paper_schedule(seq.r, len(seq.items)) if args.schedule == "paper"
             else adaptive_schedule(seq.r, len(seq.items)))
    return _run_cover(args, g, seq, sched)


def _cmd_end_to_end(args) -> int:
    g = serialize.colored_from_obj(serialize.load_json(args.graph))
    return _run_cover(args, g, None, None)


def _cmd_experiment(args) -> int:
    cfg = ExperimentConfig(
        seed=args.seed, r=args.r, nu=args.nu, n_min=args.n_min, n_max=args.n_max,
        kind=args.kind, trials=args.trials, schedule_mode=args.schedule,
        out_path=args.out, graph_path=args.graph)
    report = run_experiment(cfg)
    print(json.dumps(report["summary"], sort_keys=True))
    return EXIT_OK if report["summary"]["errors"] == 0 else EXIT_FAIL


def _cmd_oracle(args) -> int:
    if args.kind == "component-cover":
        g = serialize.colored_from_obj(serialize.load_json(args.graph))
        print(oracle_min_component_cover(g))
        return EXIT_OK
    if args.kind == "superset-stability":
        h = serialize.hypergraph_from_obj(serialize.load_json(args.hypergraph))
        witness = args.witness.split(",") if args.witness else []
        relatives = [serialize.hypergraph_from_obj(x)
                     for x in serialize.load_json(args.relatives)["relatives"]]
        ok, bad = oracle_superset_stability(h, witness, relatives, depth=args.depth)
        print(json.dumps({"stable": ok,
                          "failing_superset": None if ok else serialize.hypergraph_to_obj(bad)}))
        return EXIT_OK if ok else EXIT_FAIL
    raise AssertionError("unreachable")


def _cmd_gen_instance(args) -> int:
    cfg = ExperimentConfig(seed=args.seed, r=args.r, nu=args.nu, n_min=args.n_min,
                           n_max=args.n_max, kind=args.kind)
    g = gen_instance(cfg, args.trial)
    _emit(serialize.colored_to_obj(g), args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="monocover",
                                description="monochromatic tree covers via certified stable sequences")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--guard-max-edges", type=int, default=12)
    p.add_argument("--guard-max-vertices", type=int, default=60)
    p.add_argument("--format", choices=["json"], default="json")
    p.add_argument("--compact", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("convert", help="hypergraph <-> coloured graph")
    c.add_argument("--to", choices=["colored", "hyper"], required=True)
    c.add_argument("--input", required=True)
    c.add_argument("--out")
    c.set_defaults(func=_cmd_convert)

    c = sub.add_parser("metric", help="graph metrics of a coloured graph")
    c.add_argument("--graph", required=True)
    c.add_argument("--color", type=int)
    c.add_argument("--out")
    c.set_defaults(func=_cmd_metric)

    c = sub.add_parser("find-dual", help="search an (a,b)-duality")
    c.add_argument("--hypergraph", required=True)
    c.add_argument("--family", required=True)
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c.add_argument("--out")
    c.set_defaults(func=_cmd_find_dual)

    c = sub.add_parser("verify", help="certify a stable sequence")
    c.add_argument("--sequence", required=True)
    c.add_argument("--out")
    c.set_defaults(func=_cmd_verify)

    c = sub.add_parser("gen-sequence", help="generate the basic-shape sequence")
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--nu", type=int, required=True)
    c.add_argument("--petals", type=int)
    c.add_argument("--bmax", type=int)
    c.add_argument("--out")
    c.set_defaults(func=_cmd_gen_sequence)

    c = sub.add_parser("cover", help="tree cover from a given sequence")
    c.add_argument("--graph", required=True)
    c.add_argument("--sequence", required=True)
    c.add_argument("--schedule", choices=["paper", "adaptive"], default="adaptive")
    c.add_argument("--out")
    c.set_defaults(func=_cmd_cover)

    c = sub.add_parser("end-to-end", help="tree cover with the bundled sequence")
    c.add_argument("--graph", required=True)
    c.add_argument("--out")
    c.set_defaults(func=_cmd_end_to_end)

    c = sub.add_parser("experiment", help="seeded batch runs")
    c.add_argument("--r", type=int, default=2)
    c.add_argument("--nu", type=int, default=1)
    c.add_argument("--trials", type=int, default=10)
    c.add_argument("--n-min", type=int, default=5)
    c.add_argument("--n-max", type=int, default=20)
    c.add_argument("--kind", default="complete-random-coloring")
    c.add_argument("--schedule", choices=["paper", "adaptive"], default="paper")
    c.add_argument("--graph")
    c.add_argument("--out")
    c.set_defaults(func=_cmd_experiment)

    c = sub.add_parser("oracle", help="brute-force baselines")
    c.add_argument("kind", choices=["component-cover", "superset-stability"])
    c.add_argument("--graph")
    c.add_argument("--hypergraph")
    c.add_argument("--witness")
    c.add_argument("--relatives")
    c.add_argument("--depth", type=int, default=2)
    c.set_defaults(func=_cmd_oracle)

    c = sub.add_parser("gen-instance", help="emit one seeded instance")
    c.add_argument("--r", type=int, default=2)
    c.add_argument("--nu", type=int, default=1)
    c.add_argument("--n-min", type=int, default=5)
    c.add_argument("--n-max", type=int, default=20)
    c.add_argument("--kind", default="complete-random-coloring")
    c.add_argument("--trial", type=int, default=0)
    c.add_argument("--out")
    c.set_defaults(func=_cmd_gen_instance)

    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
