import random
from collections import deque

import pytest

from relexplore.domains import load_bundle
from relexplore.relcore import compile_model

# one line per acceptance criterion, printed in the terminal summary
CRITERIA: dict[int, tuple[bool, str]] = {}


def record_criterion(number: int, ok: bool, detail: str) -> None:
    CRITERIA[number] = (ok, detail)


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


@pytest.fixture(scope="session")
def gripper():
    return load_bundle("gripper")


@pytest.fixture(scope="session")
def blocks():
    return load_bundle("blocks")


@pytest.fixture(scope="session")
def baking():
    return load_bundle("baking")


@pytest.fixture(scope="session")
def baking_large():
    return load_bundle("baking-large")


def reachable(task, ops=None, depth=None):
    """Breadth-first enumeration of (state, depth) under ``ops`` (GT by default);
    independent of the planner's search code."""
    ops = task.domain.operators if ops is None else ops
    model = compile_model(ops, task, ambiguity="noop")
    s0 = model.index.mask(task.init)
    seen = {s0: 0}
    queue = deque([s0])
    while queue:
        s = queue.popleft()
        d = seen[s]
        if depth is not None and d >= depth:
            continue
        for g in model.ground_ops:
            if s & g.pre == g.pre and not s & g.neg:
                ns = (s & ~g.dele) | g.add
                if ns not in seen:
                    seen[ns] = d + 1
                    queue.append(ns)
    return model, seen


def bfs_distance(task, start, goal):
    """Shortest plan length by plain breadth-first search; None if unreachable."""
    model = compile_model(task.domain.operators, task, ambiguity="noop")
    pos, neg = model.index.goal_masks(goal)
    s0 = model.index.mask(start)
    seen = {s0: 0}
    queue = deque([s0])
    while queue:
        s = queue.popleft()
        if s & pos == pos and not s & neg:
            return seen[s]
        for g in model.ground_ops:
            if s & g.pre == g.pre and not s & g.neg:
                ns = (s & ~g.dele) | g.add
                if ns not in seen:
                    seen[ns] = seen[s] + 1
                    queue.append(ns)
    return None


def random_walk_states(task, steps, seed):
    from relexplore.simulator import Simulator

    rng = random.Random(seed)
    sim = Simulator(task)
    state = task.init
    out = [state]
    actions = task.ground_actions
    for _ in range(steps):
        state = sim.step(state, actions[rng.randrange(len(actions))]).next_state
        out.append(state)
    return out


def weak_pick(ops):
    """Gripper operators with ``free ?gripper`` dropped from pick."""
    from dataclasses import replace

    return tuple(replace(o, preconditions=frozenset(l for l in o.preconditions if l.predicate != "free"))
                 if o.action == "pick" else o for o in ops)


# a token moves along p0 -> p1 -> p2 -> p3; ring only works at the end
CHAIN_DOMAIN = """(define (domain chain) (:requirements :strips :typing)
  (:types token)
  (:predicates (p0 ?x - token) (p1 ?x - token) (p2 ?x - token) (p3 ?x - token) (rung ?x - token))
  (:action a1 :parameters (?x - token) :precondition (and (p0 ?x)) :effect (and (p1 ?x) (not (p0 ?x))))
  (:action a2 :parameters (?x - token) :precondition (and (p1 ?x)) :effect (and (p2 ?x) (not (p1 ?x))))
  (:action a3 :parameters (?x - token) :precondition (and (p2 ?x)) :effect (and (p3 ?x) (not (p2 ?x))))
  (:action ring :parameters (?x - token) :precondition (and (p3 ?x)) :effect (and (rung ?x))))"""


def chain_fixture():
    """(domain, task, learned) where learned lacks ring, three steps from init."""
    from relexplore.relcore import parse_domain, parse_problem

    domain = parse_domain(CHAIN_DOMAIN)
    task = parse_problem("""(define (problem c) (:domain chain) (:objects k - token)
      (:init (p0 k)) (:goal (and (rung k))))""", domain)
    return domain, task, tuple(op for op in domain.operators if op.action != "ring")


def wet_fixture(ball2_room="rooma"):
    """Gripper plus a wetness flag no operator reads; ball1 is wet, and the
    demo picks it, so the learned pick wrongly requires wetness."""
    from relexplore.domains import DATA_DIR
    from relexplore.relcore import GroundAction, parse_domain, parse_problem
    from relexplore.simulator import Simulator

    text = (DATA_DIR / "gripper" / "domain.pddl").read_text().replace(
        "(carry ?b - ball ?g - gripper))", "(carry ?b - ball ?g - gripper)\n               (wet ?b - ball))")
    domain = parse_domain(text)
    task = parse_problem(f"""(define (problem w) (:domain gripper)
      (:objects rooma roomb - room ball1 ball2 - ball left right - gripper)
      (:init (at-robby rooma) (at ball1 rooma) (at ball2 {ball2_room}) (wet ball1) (free left) (free right))
      (:goal (and (at ball1 roomb))))""", domain)
    demo = Simulator(task).step(task.init, GroundAction("pick", ("ball1", "rooma", "left")))
    return domain, task, demo
