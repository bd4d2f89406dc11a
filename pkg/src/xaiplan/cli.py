"""Command-line entry points.

Subcommands: ``plan``, ``topk``, ``recognize``, ``explain``, ``serve``.
Plans print in IPC format -- one action label per line and a ``; cost = N``
trailer; top-k output separates plans with ``;; plan i cost c`` headers.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import vizdoc
from .envconfig import load_environment_config
from .errors import XaiplanError
from .model import extract_causal_links, ground, make_plan, validate_plan
from .pddl import parse_domain, parse_problem
from .recognition import ObservationSequence, RecognitionConfig, goal_posterior
from .reconcile import empty_model, mce, model_diff, relevance
from .search import HeuristicKind, solve_optimal, solve_satisficing
from .topk import top_k


def _load_task(domain_path: str, problem_path: str):
    dm = parse_domain(Path(domain_path).read_text())
    pi = parse_problem(Path(problem_path).read_text(), dm)
    return ground(dm, pi)


def _print_ipc(plan) -> None:
    for step in plan.steps:
        print(step)
    print(f"; cost = {plan.cost}")


def _read_plan_file(path: str) -> list[str]:
    steps = []
    for line in Path(path).read_text().splitlines():
        line = line.strip()
        if not line or line.startswith(";"):
            continue
        steps.append(line)
    return steps


def cmd_plan(args) -> int:
    task = _load_task(args.domain, args.problem)
    heuristic = HeuristicKind(args.heuristic) if args.heuristic else None
    if args.satisficing:
        result = solve_satisficing(task, heuristic or HeuristicKind.HADD)
    else:
        result = solve_optimal(task, heuristic or HeuristicKind.HMAX)
    if result.plan is None:
        print("; unsolvable")
        return 1
    _print_ipc(result.plan)
    return 0


def cmd_topk(args) -> int:
    task = _load_task(args.domain, args.problem)
    result = top_k(task, args.k)
    for i, plan in enumerate(result.plans):
        print(f";; plan {i} cost {plan.cost}")
        for step in plan.steps:
            print(step)
    if result.exhausted:
        print(";; plan space exhausted")
    if args.emit_doc:
        graphs = [vizdoc.build_plan_graph(task, p, extract_causal_links(task, p))
                  for p in result.plans]
        doc = vizdoc.build_topk_doc(result, graphs)
        Path(args.emit_doc).write_text(vizdoc.serialize(doc))
    return 0 if result.plans else 1


def cmd_recognize(args) -> int:
    xml_path = Path(args.env)
    env = load_environment_config(xml_path.read_text(), base_dir=xml_path.parent)
    observations = ObservationSequence()
    for line in Path(args.observations).read_text().splitlines():
        if not line.strip():
            continue
        record = json.loads(line)
        observations = observations.extended(record["action"], record.get("t"))
    cfg = env.recognition if args.beta is None else RecognitionConfig(beta=args.beta)
    belief = goal_posterior(env.hypothesis_set, observations, cfg)
    for entry in belief.entries:
        provenance = " ".join(entry.provenance.steps) if entry.provenance else "-"
        print(f"{entry.id}\t{entry.posterior:.6f}\t"
              f"c(G,O)={entry.complying_cost}\tc(G)={entry.unconstrained_cost}\t{provenance}")
    if belief.degenerate:
        print("; degenerate: no hypothesis explains the observations; prior returned")
    return 0


def cmd_explain(args) -> int:
    from .service import explanation_budget

    budget = args.budget if args.budget is not None else explanation_budget()
    task = _load_task(args.domain, args.problem)
    if args.plan:
        plan = make_plan(task, _read_plan_file(args.plan))
        report = validate_plan(task, plan)
        if not report.valid:
            print(f"; plan invalid at step {report.failure_step}", file=sys.stderr)
            return 1
    else:
        result = solve_optimal(task)
        if result.plan is None:
            print("; unsolvable", file=sys.stderr)
            return 1
        plan = result.plan

    if args.against == "empty":
        rel = relevance(task, plan, budget=budget)
        explanation_units = rel.relevant
        total, n_relevant, n_grayed = rel.total, len(rel.relevant), len(rel.grayed)
    else:
        human_dm = parse_domain(Path(args.against).read_text())
        human_pi = parse_problem(Path(args.problem).read_text(), human_dm)
        human = ground(human_dm, human_pi)
        explanation = mce(task, human, plan, budget=budget)
        explanation_units = explanation.units
        delta = model_diff(task, human)
        total = len(delta)
        n_relevant = len(explanation_units)
        n_grayed = total - n_relevant
    for unit in explanation_units:
        print(f"{unit.kind.value} {unit.action or '-'} {unit.fact}")
    print(f"total={total} relevant={n_relevant} grayed={n_grayed}")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import ServiceState, create_app

    config_dir = Path(args.config).parent if args.config else Path(".")
    state = ServiceState(log_dir=args.log_dir, config_dir=config_dir)
    if args.config:
        path = Path(args.config)
        env = load_environment_config(path.read_text(), base_dir=path.parent)
        state.add_environment(env)
        print(f"loaded environment {env.name!r} with {len(env.hypotheses)} hypotheses")
    app = create_app(state)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="xaiplan",
        description="Explainable-planning decision support engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("plan", help="solve a planning problem")
    p.add_argument("--domain", required=True)
    p.add_argument("--problem", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--optimal", action="store_true", default=True)
    mode.add_argument("--satisficing", action="store_true")
    p.add_argument("--heuristic", choices=[k.value for k in HeuristicKind])
    p.set_defaults(func=cmd_plan)

    p = sub.add_parser("topk", help="find the k best distinct plans")
    p.add_argument("--domain", required=True)
    p.add_argument("--problem", required=True)
    p.add_argument("-k", type=int, required=True)
    p.add_argument("--emit-doc", metavar="PATH")
    p.set_defaults(func=cmd_topk)

    p = sub.add_parser("recognize", help="posterior over goal hypotheses")
    p.add_argument("--env", required=True, help="environment XML path")
    p.add_argument("--observations", required=True, help="JSONL observation stream")
    p.add_argument("--beta", type=float)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("explain", help="minimal model conditions keeping a plan optimal")
    p.add_argument("--domain", required=True)
    p.add_argument("--problem", required=True)
    p.add_argument("--plan", metavar="FILE", help="IPC plan file; omitted = plan first")
    p.add_argument("--against", default="empty",
                   help="'empty' or a sparser human domain PDDL file")
    p.add_argument("--budget", type=int, default=None,
                   help="planner-call cap (default: XAIP_BUDGET or 10000)")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--port", type=int, default=8420)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--config", help="environment XML to preload")
    p.add_argument("--log-dir", help="directory for per-session JSONL event logs")
    p.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (XaiplanError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
