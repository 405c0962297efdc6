import random
from dataclasses import replace

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relexplore.explorer import (
    PrecondTargetingPolicy,
    UnmatchedOperatorError,
    diffs,
    dissonant_goals,
    match_operators,
    precondition_diff,
    total_dissonance,
)
from relexplore.learner import classify, learn_operators
from relexplore.relcore import GroundAction, Literal, atom
from relexplore.simulator import Signal, Simulator

from conftest import wet_fixture


def _op(ops, action):
    return next(o for o in ops if o.action == action)


def test_ground_truth_has_no_dissonance(gripper):
    ops = gripper.domain.operators
    assert total_dissonance(ops, ops) == 0
    assert all(d.dissonance == 0 for d in diffs(ops, ops))


def test_one_extra_literal_is_stronger(gripper):
    pick = _op(gripper.domain.operators, "pick")
    learned = replace(pick, preconditions=pick.preconditions | {Literal("carry", ("?obj", "?gripper"), False)})
    d = precondition_diff(learned, pick)
    assert (len(d.stronger), len(d.weaker), d.dissonance) == (1, 0, 1)


def test_mixed_diff(gripper):
    pick = _op(gripper.domain.operators, "pick")
    extra = {Literal("carry", ("?obj", "?gripper"), False), Literal("at-robby", ("?room",), False)}
    kept = {l for l in pick.preconditions if l.predicate != "free"}
    learned = replace(pick, preconditions=frozenset(kept | extra))
    d = precondition_diff(learned, pick)
    assert (len(d.stronger), len(d.weaker), d.dissonance) == (2, 1, 3)


def test_unmatched_operator_is_an_error(gripper):
    pick = _op(gripper.domain.operators, "pick")
    drop = _op(gripper.domain.operators, "drop")
    with pytest.raises(UnmatchedOperatorError):
        precondition_diff(pick, drop)
    odd = replace(pick, add_effects=frozenset())
    with pytest.raises(UnmatchedOperatorError):
        match_operators([odd], gripper.domain.operators)


@pytest.fixture
def wet():
    return wet_fixture()


def test_stronger_case_targets_the_dry_ball(wet):
    domain, task, demo = wet
    learned = learn_operators([demo], domain)
    (d,) = diffs(learned, domain.operators)
    assert d.stronger == {atom("wet", "?x0")} and not d.weaker
    goals = dissonant_goals(d, _op(domain.operators, "pick"), learned[0], task, random.Random(0))
    assert goals and all(g.case == "stronger" and g.violated == 1 for g in goals)
    assert all(Literal("wet", (g.action.args[0],), False) in g.goal for g in goals)
    # only the dry ball can satisfy a goal that is reachable right now
    from relexplore.relcore import holds

    ready = [g for g in goals if holds(task.init, g.goal)]
    assert ready and {g.action.args[0] for g in ready} == {"ball2"}


def test_targeted_transition_is_a_counterexample_and_fixes_the_operator(wet):
    domain, task, demo = wet
    learned = learn_operators([demo], domain)
    policy = PrecondTargetingPolicy(random.Random(0), domain.operators, horizon=8)
    policy.set_operators(learned)
    policy.start_episode(task, task.init)
    sim, state = Simulator(task), task.init
    for _ in range(8):
        t = sim.step(state, policy.act(state))
        policy.observe(t)
        state = t.next_state
        if policy.trace[-1]["stage"] == "target":
            break
    assert policy.trace[-1]["stage"] == "target"
    assert classify(t, learned, domain) == "type2"
    assert policy.act(state) is Signal.RESET
    relearned = learn_operators([demo, t], domain)
    assert total_dissonance(relearned, domain.operators) == 0


def test_weaker_case_uses_a_repeated_grounding(gripper):
    task = gripper.test_task("test-1")
    sim = Simulator(task)
    demo = sim.step(task.init, GroundAction("move", ("rooma", "roomb")))
    learned = learn_operators([demo], gripper.domain)
    (d,) = diffs(learned, gripper.domain.operators)
    assert d.weaker == {Literal("at-robby", ("?x1",), False)} and not d.stronger
    goals = dissonant_goals(d, _op(gripper.domain.operators, "move"), learned[0], task, random.Random(0))
    # distinct rooms give mutually exclusive goals; only repeats are reachable
    by_action = {g.action: g.goal for g in goals}
    assert by_action[GroundAction("move", ("rooma", "rooma"))] == {atom("at-robby", "rooma")}
    assert by_action[GroundAction("move", ("rooma", "roomb"))] == {atom("at-robby", "rooma"),
                                                                    atom("at-robby", "roomb")}
    noop = sim.step(task.init, GroundAction("move", ("rooma", "rooma")))
    # the learned move would fire here, so the no-op refutes the missing literal
    assert noop.is_noop
    assert total_dissonance(learn_operators([demo, noop], gripper.domain), gripper.domain.operators) == 0


def test_goals_rank_by_violated_literals_and_skip_attempted(gripper):
    task = gripper.test_task("test-1")
    pick = _op(gripper.domain.operators, "pick")
    (learned,) = learn_operators(
        [Simulator(task).step(task.init, GroundAction("pick", ("ball1", "rooma", "left")))], gripper.domain)
    # two spurious literals, so goals violate one or both
    two = replace(learned, preconditions=learned.preconditions | {
        Literal("carry", ("?x0", "?x2"), False), Literal("at-robby", ("?x1",), False)})
    d = precondition_diff(two, pick)
    assert len(d.stronger) == 2
    goals = dissonant_goals(d, pick, two, task, random.Random(0))
    ks = [g.violated for g in goals]
    assert ks == sorted(ks, reverse=True) and set(ks) == {1, 2}
    attempted = {(goals[0].operator, goals[0].goal)}
    again = dissonant_goals(d, pick, two, task, random.Random(0), attempted=attempted)
    assert all((g.operator, g.goal) not in attempted for g in again)
    assert len(again) < len(goals)


def test_correct_model_signals_convergence(gripper):
    task = gripper.test_task("test-1")
    policy = PrecondTargetingPolicy(random.Random(0), gripper.domain.operators, horizon=8)
    policy.set_operators(gripper.domain.operators)
    policy.start_episode(task, task.init)
    assert policy.act(task.init) is Signal.CONVERGED and policy.converged


def test_unreachable_targets_are_deferred():
    domain, task, demo = wet_fixture(ball2_room="roomb")
    learned = learn_operators([demo], domain)
    # a one-step horizon leaves no room for the move to the dry ball
    policy = PrecondTargetingPolicy(random.Random(0), domain.operators, horizon=1)
    policy.set_operators(learned)
    policy.start_episode(task, task.init)
    policy.act(task.init)
    assert policy.trace[-1]["stage"] == "random"
    assert policy.trace[-1]["deferred"] == ["pick"]
    policy.start_episode(task, task.init)
    assert not policy._deferred


@settings(max_examples=6, deadline=None)
@given(st.integers(0, 1000), st.sampled_from(["gripper", "blocks"]))
def test_dissonance_never_increases(seed, name):
    from relexplore.harness import ExperimentConfig, run

    result = run(ExperimentConfig(name, "oracle_pt_demos", seed=seed))
    values = [p.dissonance_total for p in result.curve]
    assert values == sorted(values, reverse=True)
    assert values[-1] == 0
