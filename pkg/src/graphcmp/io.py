"""JSON (and plain edge list) formats for graphs, certificates, instances and verdicts."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .classifier import ComponentClassification, Nontrivial, Trivial
from .feasibility import Feasible, FeasibilityVerdict, Infeasible
from .fusion import FusionCertificate, FusionStep
from .graph import Graph
from .metric import ComparisonInstance, FiniteMetricSpace


class FormatError(ValueError):
    pass


def _int(x: Any, what: str) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise FormatError(f"{what} must be an integer, got {x!r}")
    return x


# -- graphs -------------------------------------------------------------------


def graph_to_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def graph_from_json(obj: Any) -> Graph:
    if not isinstance(obj, dict) or "n" not in obj or "edges" not in obj:
        raise FormatError('graph must be an object with "n" and "edges"')
    n = _int(obj["n"], "n")
    if n < 0:
        raise FormatError("n must be nonnegative")
    edges = []
    seen = set()
    for e in obj["edges"]:
        if not isinstance(e, (list, tuple)) or len(e) != 2:
            raise FormatError(f"edge must be a pair, got {e!r}")
        i, j = _int(e[0], "edge end"), _int(e[1], "edge end")
        if not 0 <= i < j < n:
            raise FormatError(f"edge {[i, j]} needs 0 <= i < j < n")
        if (i, j) in seen:
            raise FormatError(f"duplicate edge {[i, j]}")
        seen.add((i, j))
        edges.append((i, j))
    return Graph.from_edges(n, edges)


def parse_edge_list(text: str) -> Graph:
    """Plain text: first line ``n``, then one ``i j`` pair per line; ``#`` starts a comment."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise FormatError("empty edge list")
    try:
        n = int(lines[0])
        pairs = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise FormatError(f"bad edge list: {exc}") from None
    if any(len(p) != 2 for p in pairs):
        raise FormatError("each edge line needs exactly two vertices")
    return graph_from_json({"n": n, "edges": [sorted(p) for p in pairs]})


def read_graph(path: str | Path) -> Graph:
    text = Path(path).read_text(encoding="utf-8")
    if text.lstrip().startswith("{"):
        return graph_from_json(_loads(text))
    return parse_edge_list(text)


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc}") from None


# -- certificates ---------------------------------------------------------------


def certificate_to_json(cert: FusionCertificate) -> dict:
    return {
        "source": graph_to_json(cert.source),
        "steps": [
            {
                "v1": s.v1,
                "v2": s.v2,
                "choices": {str(u): "adj" if c else "non" for u, c in sorted(s.choices.items())},
            }
            for s in cert.steps
        ],
        "target": graph_to_json(cert.target),
    }


def certificate_from_json(obj: Any) -> FusionCertificate:
    try:
        steps = []
        for s in obj["steps"]:
            choices = {}
            for u, c in s["choices"].items():
                if c not in ("adj", "non"):
                    raise FormatError(f'choice must be "adj" or "non", got {c!r}')
                choices[int(u)] = c == "adj"
            steps.append(FusionStep(_int(s["v1"], "v1"), _int(s["v2"], "v2"), choices))
        return FusionCertificate(graph_from_json(obj["source"]), tuple(steps), graph_from_json(obj["target"]))
    except (KeyError, TypeError, AttributeError) as exc:
        raise FormatError(f"bad certificate: {exc!r}") from None


# -- metrics and instances ------------------------------------------------------


def metric_to_json(space: FiniteMetricSpace) -> dict:
    return {"n": space.n, "d": [float(x) for x in space.d.ravel()]}


def metric_from_json(obj: Any) -> FiniteMetricSpace:
    if not isinstance(obj, dict) or "n" not in obj or "d" not in obj:
        raise FormatError('metric must be an object with "n" and "d"')
    n = _int(obj["n"], "n")
    d = obj["d"]
    if not isinstance(d, list) or len(d) != n * n:
        raise FormatError(f"metric needs {n * n} distances")
    try:
        arr = np.array(d, dtype=float).reshape(n, n)
    except (TypeError, ValueError) as exc:
        raise FormatError(f"bad distances: {exc}") from None
    return FiniteMetricSpace(arr)


def instance_to_json(inst: ComparisonInstance) -> dict:
    return {
        "graph": graph_to_json(inst.graph),
        "metric": metric_to_json(inst.space),
        "labeling": list(inst.labeling),
    }


def instance_from_json(obj: Any) -> ComparisonInstance:
    if not isinstance(obj, dict) or not {"graph", "metric", "labeling"} <= obj.keys():
        raise FormatError('instance needs "graph", "metric" and "labeling"')
    labeling = [_int(x, "label") for x in obj["labeling"]]
    return ComparisonInstance(graph_from_json(obj["graph"]), metric_from_json(obj["metric"]), tuple(labeling))


def read_instance(path: str | Path) -> ComparisonInstance:
    return instance_from_json(_loads(Path(path).read_text(encoding="utf-8")))


# -- results --------------------------------------------------------------------


def coords_to_json(coords) -> list:
    x = np.asarray(coords, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    return x.tolist()


def verdict_to_json(v: FeasibilityVerdict) -> dict:
    out: dict[str, Any] = {"verdict": v.verdict}
    if isinstance(v, Feasible):
        out["max_violation"] = float(v.max_violation)
        out["coords"] = coords_to_json(v.coords)
    elif isinstance(v, Infeasible):
        out["gap"] = float(v.gap)
    else:
        out["residual"] = float(v.residual)
    out["iterations"] = int(v.iterations)
    return out


def classification_to_json(c: ComponentClassification) -> dict:
    out: dict[str, Any] = {"component": list(c.vertices), "verdict": c.result.verdict}
    if isinstance(c.result, Trivial):
        out["five_array"] = list(c.result.five.as_tuple())
    elif isinstance(c.result, Nontrivial):
        out["target"] = c.result.target
        out["certificate"] = certificate_to_json(c.result.certificate)
        if c.result.obstruction is not None:
            out["obstruction"] = {
                "kind": c.result.obstruction.kind,
                "vertices": [c.vertices[v] for v in c.result.obstruction.vertices],
            }
    return out


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)
