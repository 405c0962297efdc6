"""Shared policy plumbing and the random baseline."""
from __future__ import annotations

import random
from typing import Any, Optional, Sequence, Union

from ..relcore import GroundAction, Operator, Task
from ..simulator import Signal, Transition


def random_policy(state: frozenset, task: Task, rng: random.Random) -> GroundAction:
    """Uniform draw over every ground action of the task."""
    actions = task.ground_actions
    if not actions:
        raise ValueError(f"task {task.name} has no ground actions")
    return actions[rng.randrange(len(actions))]


class ExplorationPolicy:
    """Base class: holds the learned operators and a per-step trace.

    The harness calls :meth:`set_operators` after every relearn.  Subclasses
    implement :meth:`choose`; every decision is appended to ``trace``.
    """

    name = "base"

    def __init__(self, rng: random.Random):
        self.rng = rng
        self.ops: tuple[Operator, ...] = ()
        self.task: Optional[Task] = None
        self.trace: list[dict[str, Any]] = []
        self._record: dict[str, Any] = {}

    def set_operators(self, ops: Sequence[Operator]) -> None:
        self.ops = tuple(ops)

    def start_episode(self, task: Task, state: frozenset) -> None:
        self.task = task

    def act(self, state: frozenset) -> Union[GroundAction, Signal]:
        self._record = {"policy": self.name}
        choice = self.choose(state)
        if isinstance(choice, Signal):
            self._record["signal"] = choice.value
        else:
            self._record["action"] = str(choice)
        self.trace.append(self._record)
        return choice

    def note(self, **fields) -> None:
        """Attach fields to the trace record of the current step."""
        self._record.update(fields)

    def choose(self, state: frozenset) -> Union[GroundAction, Signal]:
        raise NotImplementedError

    def observe(self, transition: Transition) -> None:
        pass

    def random_action(self, state: frozenset) -> GroundAction:
        self.note(stage="random")
        return random_policy(state, self.task, self.rng)


class RandomPolicy(ExplorationPolicy):
    name = "random"

    def choose(self, state):
        return self.random_action(state)
