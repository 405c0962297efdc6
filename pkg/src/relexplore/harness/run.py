"""The explore, learn and evaluate loop for one seeded run."""
from __future__ import annotations

import csv
import io
import json
import logging
import random
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from .. import __version__
from ..domains import DomainBundle, load_bundle, require_valid
from ..explorer import (
    GlibPolicy,
    OracleBFSPolicy,
    PrecondTargetingPolicy,
    RandomPolicy,
    generate_demos,
    total_dissonance,
)
from ..learner import canonicalize, learn_operators
from ..planner import SearchBudget, execute_plan, plan
from ..relcore import Domain, Operator, Task, holds, parse_domain, serialize_domain
from ..simulator import Signal, Simulator, rotate_task, run_episode
from .config import ExperimentConfig

log = logging.getLogger(__name__)

_VALIDATED: set = set()


@dataclass
class TaskOutcome:
    task: str
    solved: bool
    plan_length: Optional[int] = None


@dataclass
class CurvePoint:
    steps: int
    outcomes: list[TaskOutcome]
    dissonance_total: Optional[int] = None

    @property
    def success_rate(self) -> float:
        return sum(o.solved for o in self.outcomes) / len(self.outcomes) if self.outcomes else 0.0


def evaluate_operators(ops: Sequence[Operator], tasks: Sequence[Task], horizon: int,
                       expansions: int = 2_000) -> list[TaskOutcome]:
    """Plan each task with ``ops`` and execute the plan in the simulator."""
    out = []
    budget = SearchBudget(max_expansions=expansions, max_length=horizon)
    for task in tasks:
        p = plan(ops, task, task.init, task.goal, budget, random.Random(task.name))
        if p is None:
            out.append(TaskOutcome(task.name, False))
            continue
        run = execute_plan(p, Simulator(task))
        final = run.final_state if run.transitions else task.init
        out.append(TaskOutcome(task.name, run.completed and holds(final, task.goal), len(p)))
    return out


def _policy(config: ExperimentConfig, bundle: DomainBundle, rng: random.Random):
    m = config.method
    if m == "random":
        return RandomPolicy(rng)
    if m.startswith("glib_l2"):
        return GlibPolicy(rng, bundle.domain, attempts=config.babble_attempts)
    if m.startswith("oracle_bfs"):
        return OracleBFSPolicy(rng)
    if m == "oracle_pt_demos":
        return PrecondTargetingPolicy(rng, bundle.domain.operators, config.horizon)
    raise ValueError(m)


@dataclass
class RunResult:
    config: ExperimentConfig
    curve: list[CurvePoint] = field(default_factory=list)
    operators: tuple = ()
    demos: int = 0
    converged_at: Optional[int] = None
    episodes: int = 0
    dissonance_history: list[tuple[int, Optional[int]]] = field(default_factory=list)
    trace: list[dict] = field(default_factory=list)


def _dissonance(ops, gt) -> Optional[int]:
    try:
        return total_dissonance(ops, gt)
    except ValueError:
        return None


def run(config: ExperimentConfig, bundle: Optional[DomainBundle] = None) -> RunResult:
    """Execute one run in memory; :func:`run_experiment` also writes it out."""
    bundle = bundle or load_bundle(config.domain)
    if bundle.root not in _VALIDATED:
        require_valid(bundle)
        _VALIDATED.add(bundle.root)
    config = config.resolved(bundle)
    gt = bundle.domain.operators
    rng = random.Random(config.seed)
    policy_rng = random.Random(rng.random())
    task_rng = random.Random(rng.random())
    demo_rng = random.Random(rng.random())

    result = RunResult(config)
    dataset: list = []
    if config.uses_demos:
        demos = generate_demos(gt, bundle.train, demo_rng)
        dataset.extend(demos.transitions)
        result.demos = len(demos)
    steps = len(dataset)
    ops = learn_operators(dataset, bundle.domain)
    result.dissonance_history.append((steps, _dissonance(ops, gt)))

    cache: dict = {}
    grid = list(range(0, config.budget + 1, config.eval_interval))
    pending = list(grid)

    def evaluate(at: int):
        key = frozenset(ops)
        if key not in cache:
            cache[key] = evaluate_operators(ops, bundle.test, config.horizon, config.planner_expansions)
        result.curve.append(CurvePoint(at, cache[key], _dissonance(ops, gt)))

    # the step-0 point reflects whatever was learned before exploration (demos included)
    evaluate(pending.pop(0))

    policy = _policy(config, bundle, policy_rng)
    policy.set_operators(ops)
    sims: dict[str, Simulator] = {}
    task = rotate_task(bundle.train, task_rng)
    idle = 0

    def on_step(_t):
        nonlocal steps, ops
        steps += 1
        if pending and steps >= pending[0]:
            ops = learn_operators(dataset, bundle.domain)
            policy.set_operators(ops)
            while pending and steps >= pending[0]:
                evaluate(pending.pop(0))

    while steps < config.budget:
        sim = sims.setdefault(task.name, Simulator(task))
        mark = len(policy.trace)
        before = steps
        episode = run_episode(policy, task, config.horizon, sim, dataset, on_step,
                              max_steps=config.budget - steps)
        result.trace.append({"episode": result.episodes, "task": task.name, "start": before,
                             "steps": episode.steps, "ended": episode.ended})
        result.trace.extend(policy.trace[mark:])
        result.episodes += 1
        ops = learn_operators(dataset, bundle.domain)
        policy.set_operators(ops)
        result.dissonance_history.append((steps, _dissonance(ops, gt)))
        if episode.ended == Signal.CONVERGED.value:
            result.converged_at = steps
            break
        idle = idle + 1 if episode.steps == 0 else 0
        if idle > 100:
            raise RuntimeError(f"policy {policy.name} keeps ending episodes without acting")
        if episode.ended != Signal.RESET.value:
            task = rotate_task(bundle.train, task_rng)

    # nothing changes after convergence or exhaustion; fill the remaining grid
    while pending:
        evaluate(pending.pop(0))
    result.operators = tuple(sorted((canonicalize(o) for o in ops), key=lambda o: o.name))
    return result


# ------------------------------------------------------------------ output

def curve_csv(curve: Sequence[CurvePoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["steps", "success_rate", "dissonance_total"])
    for p in curve:
        w.writerow([p.steps, f"{p.success_rate:.6f}", "" if p.dissonance_total is None else p.dissonance_total])
    return buf.getvalue()


def read_curve(path: Path) -> list[tuple[int, float, Optional[int]]]:
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    return [(int(r["steps"]), float(r["success_rate"]),
             int(r["dissonance_total"]) if r["dissonance_total"] else None) for r in rows]


def run_dir(config: ExperimentConfig) -> Path:
    return Path(config.output_dir) / f"{config.domain}__{config.method}__seed{config.seed}"


def _jsonl(records) -> str:
    return "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)


def write_result(result: RunResult, out: Path, domain: Domain) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    (out / "curve.csv").write_text(curve_csv(result.curve))
    (out / "eval.jsonl").write_text(_jsonl(
        {"steps": p.steps, "success_rate": p.success_rate, "dissonance_total": p.dissonance_total,
         "tasks": {o.task: o.solved for o in p.outcomes}} for p in result.curve))
    (out / "trace.jsonl").write_text(_jsonl(result.trace))
    (out / "dissonance.csv").write_text(
        "steps,dissonance_total\n" + "".join(
            f"{s},{'' if d is None else d}\n" for s, d in result.dissonance_history))
    (out / "operators.pddl").write_text(serialize_domain(domain, result.operators))
    manifest = {
        "config": result.config.to_dict(),
        "version": __version__,
        "demos": result.demos,
        "episodes": result.episodes,
        "converged_at": result.converged_at,
        "final_success_rate": result.curve[-1].success_rate if result.curve else None,
    }
    (out / "manifest.json").write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    return out


def run_experiment(config: ExperimentConfig, out: Optional[Path] = None) -> Path:
    """Run and write ``curve.csv``, ``eval.jsonl``, ``trace.jsonl``,
    ``dissonance.csv``, ``operators.pddl`` and ``manifest.json``."""
    bundle = load_bundle(config.domain)
    result = run(config, bundle)
    return write_result(result, Path(out) if out else run_dir(config), bundle.domain)


def load_operators(text: str, domain: Domain) -> tuple[Operator, ...]:
    """Read operators written by :func:`write_result` back against ``domain``.

    Names look like ``action`` or ``action--k``; action arguments come first
    among the parameters."""
    parsed = parse_domain(text)
    ops = []
    for op in parsed.operators:
        action = op.name.split("--", 1)[0]
        schema = domain.actions.get(action)
        if schema is None:
            raise ValueError(f"operator {op.name} names unknown action {action}")
        args = tuple(v for v, _ in op.parameters[:schema.arity])
        ops.append(Operator(op.name, op.parameters, op.preconditions, op.add_effects,
                            op.delete_effects, action, args))
    return tuple(ops)
