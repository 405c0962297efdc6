"""One demonstration transition per ground-truth operator."""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional, Sequence

from ..learner import lift_transition, operator_signature
from ..planner import SearchBudget, plan, relaxed_reachable
from ..relcore import Operator, Task, compile_model
from ..simulator import Simulator, Transition


class UnreachableOperatorError(RuntimeError):
    pass


@dataclass
class DemoSet:
    transitions: list[Transition] = field(default_factory=list)
    operators: list[str] = field(default_factory=list)  # GT operator behind each transition
    tasks: list[str] = field(default_factory=list)

    def __len__(self):
        return len(self.transitions)

    def __iter__(self):
        return iter(self.transitions)


def _bindings(op: Operator, task: Task, rng: random.Random, limit: int):
    pools = [list(task.objects_of_type(t)) for _, t in op.parameters]
    combos = [c for c in itertools.product(*pools) if len(set(c)) == len(c)]
    rng.shuffle(combos)
    return combos[:limit]


def generate_demos(ops: Sequence[Operator], tasks: Sequence[Task], rng: random.Random,
                   budget: SearchBudget = SearchBudget(), tries_per_task: int = 20) -> DemoSet:
    """For each operator (by name) plan with ``ops`` from some training task
    to a state where it applies, then record only the application."""
    demos = DemoSet()
    for op in sorted(ops, key=lambda o: o.name):
        found: Optional[Transition] = None
        for task in tasks:
            model = compile_model(ops, task)
            for combo in _bindings(op, task, rng, tries_per_task):
                sub = dict(zip((v for v, _ in op.parameters), combo))
                goal = frozenset(l.substitute(sub) for l in op.preconditions)
                if not relaxed_reachable(model, task.init, goal):
                    continue
                p = plan(ops, task, task.init, goal, budget, rng, model=model)
                if p is None:
                    continue
                sim = Simulator(task)
                t = sim.step(p.trajectory[-1], op.ground_action(sub))
                if lift_transition(t, task.domain).signature != operator_signature(op):
                    continue
                found = t
                demos.tasks.append(task.name)
                break
            if found is not None:
                break
        if found is None:
            raise UnreachableOperatorError(f"no training task reaches a state where {op.name} applies")
        demos.transitions.append(found)
        demos.operators.append(op.name)
    return demos
