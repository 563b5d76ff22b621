"""JSON wire formats for instances and rounding outcomes.

Instance::

    {"vertices": 7, "edges": [[0, 1, 2], ...], "weights": ["1", "3/7", ...]}

``weights`` is optional (all ones). Rationals are always exact strings.
"""

from __future__ import annotations

import json
from collections.abc import Sequence
from fractions import Fraction
from typing import Any

from hypermatch.errors import HypermatchError, MalformedFile
from hypermatch.hypergraph import WeightedInstance, build_hypergraph
from hypermatch.rational import format_rational, parse_rational
from hypermatch.rounding import PeelStep, RoundingOutcome, Stuck, StuckCertificate, Success


def instance_to_dict(inst: WeightedInstance) -> dict[str, Any]:
    h = inst.hypergraph
    return {
        "vertices": h.vertex_count,
        "edges": [list(e) for e in h.edges],
        "weights": [format_rational(w) for w in inst.weights],
    }


def instance_from_dict(data: Any) -> WeightedInstance:
    try:
        n = data["vertices"]
        raw_edges = data["edges"]
        if not isinstance(n, int) or isinstance(n, bool):
            raise MalformedFile("'vertices' must be an integer")
        if not isinstance(raw_edges, list) or not all(isinstance(e, list) for e in raw_edges):
            raise MalformedFile("'edges' must be a list of vertex lists")
        for e in raw_edges:
            if not all(isinstance(v, int) and not isinstance(v, bool) for v in e):
                raise MalformedFile("edge entries must be integers")
        h = build_hypergraph(n, raw_edges)
        if "weights" in data and data["weights"] is not None:
            weights = tuple(parse_rational(w) for w in data["weights"])
        else:
            weights = (Fraction(1),) * h.edge_count
        return WeightedInstance(h, weights)
    except MalformedFile:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedFile(f"bad instance: {exc}") from exc


def load_instance(path: str) -> WeightedInstance:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedFile(f"cannot read instance {path}: {exc}") from exc
    return instance_from_dict(data)


def _rats(values: Sequence[Fraction]) -> list[str]:
    return [format_rational(v) for v in values]


def certificate_to_dict(cert: StuckCertificate) -> dict[str, Any]:
    return {"edges": list(cert.edges), "x": _rats(cert.x), "slack": _rats(cert.slack)}


def certificate_from_dict(data: Any) -> StuckCertificate:
    return StuckCertificate(
        tuple(int(e) for e in data["edges"]),
        tuple(parse_rational(v) for v in data["x"]),
        tuple(parse_rational(v) for v in data["slack"]),
    )


def _trace_to_list(trace: Sequence[PeelStep]) -> list[dict[str, Any]]:
    return [
        {"action": s.action, "edge": s.edge, "weight": format_rational(s.weight), "added": s.added}
        for s in trace
    ]


def _trace_from_list(data: Any) -> tuple[PeelStep, ...]:
    return tuple(
        PeelStep(d["action"], int(d["edge"]), parse_rational(d["weight"]), bool(d["added"]))
        for d in data
    )


def outcome_to_dict(
    outcome: RoundingOutcome,
    g: Sequence[Fraction] | None = None,
    schedule: str | None = None,
    with_trace: bool = True,
) -> dict[str, Any]:
    out: dict[str, Any] = {}
    if schedule is not None:
        out["schedule"] = schedule
    if g is not None:
        out["discounts"] = _rats(g)
    if isinstance(outcome, Success):
        out.update(
            status="success",
            matching=sorted(outcome.matching),
            guarantee=format_rational(outcome.guarantee),
            wstar=format_rational(outcome.wstar),
        )
    else:
        out.update(status="error", certificate=certificate_to_dict(outcome.certificate))
    if with_trace:
        out["trace"] = _trace_to_list(outcome.trace)
    return out


def outcome_from_dict(data: Any) -> RoundingOutcome:
    try:
        trace = _trace_from_list(data.get("trace", []))
        status = data["status"]
        if status == "success":
            return Success(
                frozenset(int(e) for e in data["matching"]),
                parse_rational(data["guarantee"]),
                parse_rational(data["wstar"]),
                trace,
            )
        if status == "error":
            return Stuck(certificate_from_dict(data["certificate"]), trace)
        raise MalformedFile(f"unknown status {status!r}")
    except MalformedFile:
        raise
    except (KeyError, TypeError, ValueError, AttributeError, HypermatchError) as exc:
        raise MalformedFile(f"bad outcome: {exc}") from exc


def dump_json(obj: Any, path: str | None = None) -> str:
    text = json.dumps(obj, indent=2) + "\n"
    if path is not None:
        with open(path, "w") as fh:
            fh.write(text)
    return text
