"""JSON schemas for every exchanged object.

Hypergraph:     {"r": int, "parts": [[id, ...], ...], "edges": [[id x r], ...]}
Coloured graph: {"r": int, "vertices": [id, ...], "edges": [[u, v, colour], ...]}
Metric family:  {"vertices": [...], "metrics": [row-major matrix, ...]}
                with exact integers or "p/q" strings as entries
Embedding:      {"map": {edge-index: vertex-id}, "a": exact, "b": exact}
Sequence:       {"r", "nu", "c", "relatives": [...], "items":
                 [{"hypergraph": ..., "witness": [...]}, ...], "transcripts": ...}

Exact numbers serialise as decimal strings, "p/q" fractions, or power sums
like "3*9^14+2"; parse_exact reads all three back.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional, Union

from .abdual import DualityEmbedding
from .duality import ColoredMultigraph
from .errors import PreconditionError
from .exactnum import exact_to_string, parse_exact
from .hypergraph import PartiteHypergraph
from .metrics import MetricFamily
from .stability import (
    CertificationRecord,
    ExtensionReport,
    ItemReport,
    StableSequence,
    WitnessReport,
    WitnessedHypergraph,
)


def hypergraph_to_obj(h: PartiteHypergraph) -> dict:
    return {
        "r": h.r,
        "parts": [list(p) for p in h.parts],
        "edges": [list(e) for e in h.sorted_edges],
    }


def hypergraph_from_obj(obj: dict) -> PartiteHypergraph:
    h = PartiteHypergraph.build(obj["parts"], [tuple(e) for e in obj["edges"]])
    if h.r != obj["r"]:
        raise PreconditionError("hypergraph JSON: r does not match the part count")
    return h


def colored_to_obj(g: ColoredMultigraph) -> dict:
    return {
        "r": g.r,
        "vertices": list(g.vertices),
        "edges": [list(e) for e in sorted(g.edges)],
    }


def colored_from_obj(obj: dict) -> ColoredMultigraph:
    return ColoredMultigraph.build(obj["r"], obj["vertices"], obj["edges"])


def _entry_to_obj(x) -> Union[int, str]:
    if isinstance(x, int):
        return x
    return exact_to_string(x)


def _entry_from_obj(x):
    if isinstance(x, int):
        return x
    return parse_exact(x)


def family_to_obj(fam: MetricFamily) -> dict:
    return {
        "vertices": list(fam.vertices),
        "metrics": [[[_entry_to_obj(x) for x in row] for row in m] for m in fam.dists],
    }


def family_from_obj(obj: dict, validate: bool = True) -> MetricFamily:
    mats = [[[_entry_from_obj(x) for x in row] for row in m] for m in obj["metrics"]]
    return MetricFamily.build(obj["vertices"], mats, validate=validate)


def embedding_to_obj(emb: DualityEmbedding) -> dict:
    edges = emb.hypergraph.sorted_edges
    return {
        "map": {str(i): emb.mapping[e] for i, e in enumerate(edges)},
        "a": exact_to_string(emb.a),
        "b": exact_to_string(emb.b),
    }


def embedding_from_obj(obj: dict, h: PartiteHypergraph, fam: MetricFamily) -> DualityEmbedding:
    edges = h.sorted_edges
    mapping = {edges[int(i)]: v for i, v in obj["map"].items()}
    return DualityEmbedding(h, fam, mapping, parse_exact(obj["a"]), parse_exact(obj["b"]))


def _witness_report_to_obj(rep: Optional[WitnessReport]):
    if rep is None:
        return None
    return {
        "ok": rep.ok,
        "extensions": [
            {"added_edge": list(x.added_edge), "matched": x.matched} for x in rep.extensions
        ],
    }


def _witness_report_from_obj(obj) -> Optional[WitnessReport]:
    if obj is None:
        return None
    return WitnessReport(
        ok=obj["ok"],
        extensions=tuple(
            ExtensionReport(tuple(x["added_edge"]), x["matched"]) for x in obj["extensions"]),
    )


def record_to_obj(rec: CertificationRecord) -> dict:
    return {
        "certified": rec.certified,
        "failure": rec.failure,
        "items": [
            {
                "index": it.index,
                "ok": it.ok,
                "failure": it.failure,
                "witness_report": _witness_report_to_obj(it.witness_report),
            }
            for it in rec.items
        ],
    }


def record_from_obj(obj: dict) -> CertificationRecord:
    return CertificationRecord(
        certified=obj["certified"],
        failure=obj.get("failure"),
        items=tuple(
            ItemReport(it["index"], it["ok"], it.get("failure"),
                       _witness_report_from_obj(it.get("witness_report")))
            for it in obj["items"]
        ),
    )


def sequence_to_obj(seq: StableSequence) -> dict:
    out = {
        "r": seq.r,
        "nu": seq.nu,
        "c": seq.c,
        "relatives": [hypergraph_to_obj(rel) for rel in seq.relatives],
        "items": [
            {
                "hypergraph": hypergraph_to_obj(it.hypergraph),
                "witness": list(it.witness),
            }
            for it in seq.items
        ],
    }
    if seq.verified is not None:
        out["transcripts"] = record_to_obj(seq.verified)
    return out


def sequence_from_obj(obj: dict) -> StableSequence:
    seq = StableSequence(
        r=obj["r"],
        nu=obj["nu"],
        c=obj["c"],
        relatives=tuple(hypergraph_from_obj(x) for x in obj["relatives"]),
        items=tuple(
            WitnessedHypergraph.build(hypergraph_from_obj(x["hypergraph"]), x["witness"])
            for x in obj["items"]
        ),
    )
    if "transcripts" in obj:
        seq = seq.with_record(record_from_obj(obj["transcripts"]))
    return seq


def cover_to_obj(tc) -> dict:
    """Serialize a TreeCover; exact radii become power-sum strings."""
    from .engine import TreeCover  # local import to keep serialize dependency-light

    assert isinstance(tc, TreeCover)
    return {
        "r": tc.r,
        "nu": tc.nu,
        "path": tc.path,
        "schedule": schedule_to_obj(tc.schedule) if tc.schedule is not None
        else {"mode": tc.schedule_mode},
        "trees": [
            {
                "color": t.color,
                "root": t.root,
                "parents": dict(sorted(t.parents.items())),
                "vertices": sorted(t.vertices),
                "certified_radius": exact_to_string(t.certified_radius),
                "measured_diameter": t.measured_diameter,
            }
            for t in tc.trees
        ],
        "steps": [
            {"index": s.index, "m": s.m, "k": s.k, "outcome": s.outcome} for s in tc.steps
        ],
    }


def cover_from_obj(obj: dict):
    from .engine import ParameterSchedule, StepRecord, TreeCertificate, TreeCover

    trees = tuple(
        TreeCertificate(
            color=t["color"],
            root=t["root"],
            parents=dict(t["parents"]),
            vertices=frozenset(t["vertices"]),
            certified_radius=parse_exact(t["certified_radius"]),
            measured_diameter=t["measured_diameter"],
        )
        for t in obj["trees"]
    )
    steps = tuple(StepRecord(s["index"], s["m"], s["k"], s["outcome"]) for s in obj.get("steps", []))
    sched_obj = obj.get("schedule", {})
    schedule = None
    if "k" in sched_obj:
        # the constructor re-validates every schedule invariant on load
        schedule = ParameterSchedule(
            r=sched_obj["r"], ell=sched_obj["ell"], mode=sched_obj["mode"],
            k=tuple(parse_exact(x) for x in sched_obj["k"]),
            m=tuple(parse_exact(x) for x in sched_obj["m"]),
            k_top=parse_exact(sched_obj["k_top"]),
        )
    return TreeCover(trees=trees, r=obj["r"], nu=obj["nu"], path=obj["path"],
                     schedule_mode=sched_obj.get("mode", "adaptive"), steps=steps,
                     schedule=schedule)


def schedule_to_obj(sched) -> dict:
    return {
        "r": sched.r,
        "ell": sched.ell,
        "mode": sched.mode,
        "k": [exact_to_string(x) for x in sched.k],
        "m": [exact_to_string(x) for x in sched.m],
        "k_top": exact_to_string(sched.k_top),
    }


def save_json(obj: dict, path: Union[str, Path]) -> None:
    Path(path).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def load_json(path: Union[str, Path]) -> dict:
    return json.loads(Path(path).read_text())
