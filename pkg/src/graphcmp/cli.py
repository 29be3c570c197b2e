"""Command-line front end.

Exit codes: 0 success or feasible, 2 invalid input, 3 infeasible,
4 indeterminate, 5 verdict does not allow the request (trivial graph for
``witness``, nontrivial graph for ``model``).
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from .classifier import Nontrivial, Trivial, classify, classify_connected
from .feasibility import FeasibilityError, SolverConfig, check_comparison, verify_model
from .fusion import FusionError, fusion_reachable
from .graph import C4, T3, Graph, GraphError, enumerate_connected_graphs, is_connected
from .io import (
    FormatError,
    classification_to_json,
    coords_to_json,
    dumps,
    instance_to_json,
    read_graph,
    read_instance,
    verdict_to_json,
)
from .metric import MetricError, random_instances
from .model_line import build_line_model, choose_special_vertex
from .witness import find_violation, violating_instance

EXIT_OK, EXIT_INVALID, EXIT_INFEASIBLE, EXIT_INDETERMINATE, EXIT_REFUSED = 0, 2, 3, 4, 5
VERDICT_EXIT = {"feasible": EXIT_OK, "infeasible": EXIT_INFEASIBLE, "indeterminate": EXIT_INDETERMINATE}

INPUT_ERRORS = (FormatError, GraphError, MetricError, FeasibilityError, OSError)


def oracle_trivial(g: Graph) -> bool:
    """Trivial by exhaustive fusion search: neither C4 nor T3 is reachable."""
    if g.n < 4:
        return True
    return fusion_reachable(g, C4) is None and fusion_reachable(g, T3) is None


def run_sweep(max_n: int, seed: int = 0, instances: int = 20, cfg: SolverConfig | None = None) -> dict:
    """Classifier against the fusion oracle, plus the end-to-end dichotomy, over connected graphs.

    Trivial graphs must have line models that verify on ``instances``
    seeded random instances; nontrivial graphs must have violating
    instances the solver reports infeasible.
    """
    cfg = cfg or SolverConfig(seed=seed)
    rows = []
    disagreements = []
    failures = []
    for n in range(1, max_n + 1):
        counts = {"graphs": 0, "trivial": 0, "nontrivial": 0}
        for idx, g in enumerate(enumerate_connected_graphs(n)):
            counts["graphs"] += 1
            cls = classify_connected(g)
            trivial = isinstance(cls, Trivial)
            counts["trivial" if trivial else "nontrivial"] += 1
            edges = [list(e) for e in g.edges]
            if trivial != oracle_trivial(g):
                disagreements.append({"n": n, "edges": edges, "classifier": cls.verdict})
            if trivial:
                w = choose_special_vertex(g, cls.levels, cls.sequence)
                stream = random_instances(g, "random", seed=seed * 1_000_003 + n * 1000 + idx)
                worst = max(
                    verify_model(inst, build_line_model(inst, w, cls.levels))
                    for inst in (next(stream) for _ in range(instances))
                )
                if worst > 1e-12:
                    failures.append({"n": n, "edges": edges, "max_violation": worst})
            else:
                verdict = check_comparison(violating_instance(g, cls), cfg)
                if verdict.verdict != "infeasible":
                    failures.append({"n": n, "edges": edges, "solver": verdict.verdict})
        rows.append({"n": n, **counts})
    return {
        "max_n": max_n,
        "seed": seed,
        "instances_per_trivial_graph": instances,
        "per_n": rows,
        "disagreements": disagreements,
        "end_to_end_failures": failures,
    }


def _emit(obj) -> None:
    sys.stdout.write(dumps(obj) + "\n")


def _fail(msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_INVALID


def cmd_classify(args) -> int:
    g = read_graph(args.graph)
    _emit([classification_to_json(c) for c in classify(g)])
    return EXIT_OK


def cmd_check(args) -> int:
    inst = read_instance(args.instance)
    cfg = SolverConfig(tol=args.tol, max_iter=args.max_iter, restarts=args.restarts, seed=args.seed)
    verdict = check_comparison(inst, cfg)
    _emit(verdict_to_json(verdict))
    return VERDICT_EXIT[verdict.verdict]


def cmd_witness(args) -> int:
    g = read_graph(args.graph)
    inst = find_violation(g)
    if inst is None:
        _emit({"message": "trivial graph"})
        return EXIT_REFUSED
    _emit(instance_to_json(inst))
    return EXIT_OK


def cmd_model(args) -> int:
    g = read_graph(args.graph)
    inst = read_instance(args.instance)
    if inst.graph != g:
        return _fail("instance graph differs from the graph file")
    if not is_connected(g):
        return _fail("line models need a connected graph")
    cls = classify_connected(g)
    if isinstance(cls, Nontrivial):
        _emit({"message": "nontrivial graph", "target": cls.target})
        return EXIT_REFUSED
    w = choose_special_vertex(g, cls.levels, cls.sequence)
    coords = build_line_model(inst, w, cls.levels)
    _emit({
        "special_vertex": w,
        "levels": list(cls.levels),
        "coords": coords_to_json(coords),
        "max_violation": verify_model(inst, coords),
    })
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.max_n > 7:
        return _fail("--max-n is limited to 7")
    report = run_sweep(args.max_n, args.seed, args.instances)
    _emit(report)
    bad = report["disagreements"] or report["end_to_end_failures"]
    return 1 if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="graphcmp", description="Graph comparison: classify, check, witness, model.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="classify each component of a graph")
    c.add_argument("graph")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("check", help="decide a comparison instance numerically")
    c.add_argument("instance")
    c.add_argument("--tol", type=float, default=SolverConfig.tol)
    c.add_argument("--max-iter", type=int, default=SolverConfig.max_iter)
    c.add_argument("--restarts", type=int, default=SolverConfig.restarts)
    c.add_argument("--seed", type=int, default=SolverConfig.seed)
    c.set_defaults(func=cmd_check)

    c = sub.add_parser("witness", help="violating instance for a nontrivial graph")
    c.add_argument("graph")
    c.set_defaults(func=cmd_witness)

    c = sub.add_parser("model", help="line model for an instance on a trivial graph")
    c.add_argument("graph")
    c.add_argument("instance")
    c.set_defaults(func=cmd_model)

    c = sub.add_parser("sweep", help="exhaustive classifier and dichotomy sweep")
    c.add_argument("--max-n", type=int, default=5)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--instances", type=int, default=20, help="random instances per trivial graph")
    c.set_defaults(func=cmd_sweep)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        return args.func(args)
    except INPUT_ERRORS as exc:
        return _fail(str(exc))
    except FusionError as exc:
        return _fail(f"fusion: {exc}")


if __name__ == "__main__":
    sys.exit(main())
