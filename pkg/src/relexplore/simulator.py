"""Deterministic ground-truth environment and episode driver."""
from __future__ import annotations

import json
import logging
import random
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Iterable, Optional, Protocol, Sequence, TextIO, Union

from .relcore import GroundAction, Literal, Task, atom_index, compile_model

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Transition:
    state: frozenset
    action: GroundAction
    next_state: frozenset

    @property
    def added(self) -> frozenset:
        return self.next_state - self.state

    @property
    def deleted(self) -> frozenset:
        return self.state - self.next_state

    @property
    def is_noop(self) -> bool:
        return self.state == self.next_state


class Signal(Enum):
    """Non-action replies a policy can give instead of a ground action."""

    RESET = "reset"  # restart the current task from its initial state
    END = "end"  # nothing to do here; end the episode
    CONVERGED = "converged"  # exploration is finished for the run


class Policy(Protocol):
    def start_episode(self, task: Task, state: frozenset) -> None: ...

    def act(self, state: frozenset) -> Union[GroundAction, Signal]: ...

    def observe(self, transition: Transition) -> None: ...


@dataclass
class EpisodeLog:
    task: str
    init: frozenset
    transitions: list[Transition] = field(default_factory=list)
    ended: str = "horizon"

    @property
    def steps(self) -> int:
        return len(self.transitions)


class AmbiguousDomainError(ValueError):
    pass


class Simulator:
    """Applies the domain's ground-truth operators inside one task."""

    def __init__(self, task: Task):
        self.task = task
        self._check_unambiguous()
        self.model = compile_model(task.domain.operators, task, ambiguity="noop")
        self.index = atom_index(task)

    def _check_unambiguous(self):
        by_action: dict[str, list] = {}
        for op in self.task.domain.operators:
            by_action.setdefault(op.action, []).append(op)
        for name, ops in by_action.items():
            for i, a in enumerate(ops):
                for b in ops[i + 1:]:
                    ren = dict(zip(b.action_args, a.action_args))
                    bpre = {l.substitute(ren) for l in b.preconditions}
                    if not any(l.negate() in bpre for l in a.preconditions):
                        raise AmbiguousDomainError(
                            f"operators {a.name} and {b.name} can both fire for action {name}")

    def step(self, state: frozenset, action: GroundAction) -> Transition:
        try:
            a = self.model.action_index[action]
        except KeyError:
            raise ValueError(f"ill-typed or unknown action {action}") from None
        g, _ = self.model.choose(self.index.mask(state), a)
        if g is None:
            return Transition(state, action, state)
        pre, add, dele = g.op.ground(dict(g.binding))
        return Transition(state, action, (state - dele) | add)


def run_episode(
    policy: Policy,
    task: Task,
    horizon: int,
    simulator: Optional[Simulator] = None,
    dataset: Optional[list] = None,
    on_step: Optional[Callable[[Transition], None]] = None,
    max_steps: Optional[int] = None,
    start: Optional[frozenset] = None,
) -> EpisodeLog:
    """Run ``policy`` for at most ``horizon`` steps (and ``max_steps`` if given).

    Every transition, no-ops included, is appended to ``dataset``.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    sim = simulator or Simulator(task)
    state = task.init if start is None else start
    episode = EpisodeLog(task.name, state)
    policy.start_episode(task, state)
    limit = horizon if max_steps is None else min(horizon, max_steps)
    while episode.steps < limit:
        choice = policy.act(state)
        if isinstance(choice, Signal):
            episode.ended = choice.value
            if choice is Signal.END:
                log.debug("policy yielded no action in %s after %d steps", task.name, episode.steps)
            return episode
        t = sim.step(state, choice)
        episode.transitions.append(t)
        if dataset is not None:
            dataset.append(t)
        policy.observe(t)
        if on_step is not None:
            on_step(t)
        state = t.next_state
    episode.ended = "horizon" if episode.steps >= horizon else "budget"
    return episode


def rotate_task(tasks: Sequence[Task], rng: random.Random) -> Task:
    if not tasks:
        raise ValueError("no training tasks")
    return tasks[rng.randrange(len(tasks))]


# ------------------------------------------------------------ log export

def _atoms(atoms: Iterable[Literal]) -> list[str]:
    return [str(a) for a in sorted(atoms)]


def write_episode_log(episode: EpisodeLog, fh: TextIO) -> None:
    """One JSON object per line: a start record, then one record per step."""
    fh.write(json.dumps({"task": episode.task, "step": -1, "init": _atoms(episode.init)}) + "\n")
    for i, t in enumerate(episode.transitions):
        fh.write(json.dumps({
            "task": episode.task,
            "step": i,
            "action": str(t.action),
            "added": _atoms(t.added),
            "deleted": _atoms(t.deleted),
        }) + "\n")


def _parse_atom(text: str) -> Literal:
    parts = text.strip("()").split()
    return Literal(parts[0], tuple(parts[1:]), True)


def read_episode_log(fh: TextIO) -> EpisodeLog:
    records = [json.loads(line) for line in fh if line.strip()]
    head = records[0]
    state = frozenset(_parse_atom(a) for a in head["init"])
    episode = EpisodeLog(head["task"], state)
    for rec in records[1:]:
        parts = rec["action"].strip("()").split()
        action = GroundAction(parts[0], tuple(parts[1:]))
        nxt = (state - {_parse_atom(a) for a in rec["deleted"]}) | {_parse_atom(a) for a in rec["added"]}
        episode.transitions.append(Transition(state, action, frozenset(nxt)))
        state = episode.transitions[-1].next_state
    return episode
