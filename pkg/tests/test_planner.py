import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relexplore.learner import predict
from relexplore.planner import (
    Plan,
    SearchBudget,
    execute_plan,
    parse_plan_text,
    plan,
    plan_to_text,
    relaxed_reachable,
    validate_plan,
)
from relexplore.relcore import GroundAction, atom, compile_model, holds
from relexplore.simulator import Simulator

from conftest import bfs_distance, reachable, weak_pick


def test_satisfied_goal_gives_empty_plan(gripper):
    task = gripper.test_task("test-1")
    p = plan(gripper.domain.operators, task, task.init, [atom("at-robby", "rooma")])
    assert p is not None and len(p) == 0 and p.trajectory == [task.init]


@pytest.mark.parametrize("heuristic", ["ff", "goal-count"])
def test_gripper_plans_reach_the_goal(gripper, heuristic):
    for task in gripper.test:
        p = plan(gripper.domain.operators, task, task.init, task.goal, heuristic=heuristic)
        ex = execute_plan(p, Simulator(task))
        assert ex.completed and holds(ex.final_state, task.goal)


def test_gripper_ff_plans_are_optimal(gripper):
    for task in gripper.test:
        p = plan(gripper.domain.operators, task, task.init, task.goal)
        assert len(p) == bfs_distance(task, task.init, task.goal)


def test_two_souffle_task_needs_a_long_plan(baking_large):
    task = baking_large.test_task("long-two-souffles")
    p = plan(baking_large.domain.operators, task, task.init, task.goal)
    assert p is not None and len(p) > 26
    assert execute_plan(p, Simulator(task)).completed


def test_unknown_heuristic(gripper):
    task = gripper.test[0]
    with pytest.raises(ValueError):
        plan(gripper.domain.operators, task, task.init, task.goal, heuristic="blind")


def test_budget_rejects_nonpositive_values():
    with pytest.raises(ValueError):
        SearchBudget(max_expansions=0)
    with pytest.raises(ValueError):
        SearchBudget(time_limit=0)


def test_exhausted_budget_returns_none(baking_large):
    task = baking_large.test_task("long-two-souffles")
    assert plan(baking_large.domain.operators, task, task.init, task.goal,
                SearchBudget(max_expansions=3)) is None


def test_execution_diverges_where_the_model_is_wrong(gripper):
    task = gripper.test_task("test-1")
    weak = weak_pick(gripper.domain.operators)
    steps = [GroundAction("pick", ("ball1", "rooma", "left")), GroundAction("pick", ("ball2", "rooma", "left"))]
    traj = [task.init]
    for a in steps:
        traj.append(predict(weak, traj[-1], a, task))
    ex = execute_plan(Plan(steps, traj), Simulator(task))
    assert not ex.completed and ex.diverged_at == 1 and len(ex.transitions) == 2


def test_executing_the_empty_plan(gripper):
    task = gripper.test[0]
    ex = execute_plan(Plan([], [task.init]), Simulator(task))
    assert ex.completed and ex.transitions == [] and ex.final_state is None


def test_relaxed_reachability(gripper):
    task = gripper.test_task("test-1")
    model = compile_model(gripper.domain.operators, task)
    assert relaxed_reachable(model, task.init, task.goal)
    # deletes are ignored, so mutually exclusive atoms are jointly reachable
    assert relaxed_reachable(model, task.init, [atom("at-robby", "rooma"), atom("at-robby", "roomb")])
    assert not relaxed_reachable(model, task.init, [atom("carry", "rooma", "left")])


def test_plan_text_round_trip(gripper):
    task = gripper.test_task("test-2")
    p = plan(gripper.domain.operators, task, task.init, task.goal)
    text = plan_to_text(p)
    assert parse_plan_text(text + "; trailing comment\n\n") == p.steps


def _goal_strategy():
    return st.tuples(st.integers(0, 3), st.integers(0, 10_000), st.integers(1, 3))


@settings(max_examples=25, deadline=None)
@given(_goal_strategy())
def test_plans_are_sound_and_complete(args):
    """Found iff the goal is reachable by plain BFS; every plan reaches it."""
    from relexplore.domains import load_bundle

    which, seed, size = args
    bundle = load_bundle("gripper")
    task = bundle.test[which]
    rng = random.Random(seed)
    atoms = sorted(task.ground_atoms)
    goal = frozenset(rng.sample(atoms, size))
    p = plan(bundle.domain.operators, task, task.init, goal, rng=random.Random(seed))
    dist = bfs_distance(task, task.init, goal)
    assert (p is not None) == (dist is not None)
    if p is not None:
        assert validate_plan(p, bundle.domain.operators, task, goal)
        ex = execute_plan(p, Simulator(task))
        assert ex.completed and holds(ex.final_state or task.init, goal)
        assert len(p) >= dist


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10_000))
def test_same_seed_same_plan(seed):
    from relexplore.domains import load_bundle

    bundle = load_bundle("baking")
    task = bundle.test_task("test-batter")
    a = plan(bundle.domain.operators, task, task.init, task.goal, rng=random.Random(seed))
    b = plan(bundle.domain.operators, task, task.init, task.goal, rng=random.Random(seed))
    assert a.steps == b.steps


def test_reachable_goals_from_random_states_are_found(blocks):
    task = blocks.test[0]
    _, states = reachable(task, depth=3)
    rng = random.Random(4)
    model = compile_model(blocks.domain.operators, task)
    for s in rng.sample(sorted(states), 10):
        goal = model.index.state(s)
        p = plan(blocks.domain.operators, task, task.init, goal, model=model)
        assert p is not None and len(p) <= 3 * states[s] + 3
