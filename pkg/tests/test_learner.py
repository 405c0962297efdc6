import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relexplore.explorer import generate_demos
from relexplore.learner import (
    classify,
    cluster_by_effects,
    induce_preconditions,
    learn_operators,
    lift_transition,
    operator_signature,
    predict,
)
from relexplore.relcore import GroundAction, atom, compile_model
from relexplore.simulator import Simulator, Transition

from conftest import random_walk_states, reachable


def _all_transitions(task, depth=None):
    """Every (s, a) pair over the reachable states, stepped by the simulator."""
    model, states = reachable(task, depth=depth)
    sim = Simulator(task)
    out = []
    for s in sorted(states, key=lambda m: (states[m], m)):
        fs = model.index.state(s)
        for a in task.ground_actions:
            out.append(sim.step(fs, a))
    return out


def _random_dataset(bundle, n, seed):
    rng = random.Random(seed)
    data = []
    for task in bundle.train:
        sim = Simulator(task)
        state = task.init
        for _ in range(n):
            state_t = sim.step(state, rng.choice(task.ground_actions))
            data.append(state_t)
            state = state_t.next_state
    return data


def test_noop_lifts_to_empty_effects(gripper):
    task = gripper.test_task("test-1")
    t = Simulator(task).step(task.init, GroundAction("drop", ("ball1", "rooma", "left")))
    lt = lift_transition(t, gripper.domain)
    assert lt.is_noop
    assert {a for l in lt.lifted_context for a in l.args} <= {"?x0", "?x1", "?x2"}


def test_pick_effects_use_action_variables(gripper):
    task = gripper.test_task("test-1")
    t = Simulator(task).step(task.init, GroundAction("pick", ("ball1", "rooma", "left")))
    lt = lift_transition(t, gripper.domain)
    args = {a for l in lt.lifted_add | lt.lifted_delete for a in l.args}
    assert args == {"?x0", "?x1", "?x2"}


def _isomorphic(t1, t2):
    """Brute force: some object bijection maps action and effects of t1 onto t2."""
    objs1 = sorted({o for l in t1.added | t1.deleted for o in l.args} | set(t1.action.args))
    objs2 = sorted({o for l in t2.added | t2.deleted for o in l.args} | set(t2.action.args))
    if len(objs1) != len(objs2) or t1.action.name != t2.action.name:
        return False
    for perm in itertools.permutations(objs2):
        m = dict(zip(objs1, perm))
        if tuple(m[a] for a in t1.action.args) != t2.action.args:
            continue
        if {l.substitute(m) for l in t1.added} == t2.added and \
                {l.substitute(m) for l in t1.deleted} == t2.deleted:
            return True
    return False


def test_isomorphic_transitions_share_signatures(blocks):
    task = blocks.test[-1]
    data = [t for t in _all_transitions(task, depth=2) if not t.is_noop]
    rng = random.Random(0)
    sample = rng.sample(data, min(60, len(data)))
    for t1, t2 in itertools.combinations(sample, 2):
        same = lift_transition(t1, blocks.domain).signature == lift_transition(t2, blocks.domain).signature
        assert same == _isomorphic(t1, t2)


def test_three_gripper_demos_give_three_clusters(gripper):
    demos = generate_demos(gripper.domain.operators, gripper.train, random.Random(0))
    assert len(demos) == 3
    assert len(cluster_by_effects(demos.transitions, gripper.domain)) == 3


def test_empty_dataset(gripper):
    assert cluster_by_effects([], gripper.domain) == [] or not cluster_by_effects([], gripper.domain)
    assert learn_operators([], gripper.domain) == ()


def test_baking_large_demos_give_19_clusters(baking_large):
    demos = generate_demos(baking_large.domain.operators, baking_large.train, random.Random(0))
    assert len(cluster_by_effects(demos.transitions, baking_large.domain)) == 19


def test_single_positive_keeps_full_context(gripper):
    task = gripper.test_task("test-1")
    t = Simulator(task).step(task.init, GroundAction("pick", ("ball1", "rooma", "left")))
    (cluster,) = cluster_by_effects([t], gripper.domain)
    op = induce_preconditions(cluster, gripper.domain)
    assert op.preconditions == lift_transition(t, gripper.domain).lifted_context


def test_full_gripper_is_a_precondition_of_pick(gripper):
    task = gripper.test_task("test-1")
    sim = Simulator(task)
    s1 = sim.step(task.init, GroundAction("pick", ("ball1", "rooma", "left")))
    blocked = sim.step(s1.next_state, GroundAction("pick", ("ball2", "rooma", "left")))
    assert blocked.is_noop
    ops = learn_operators([s1, blocked], gripper.domain)
    pick = next(o for o in ops if o.action == "pick")
    assert atom("free", "?x2") in pick.preconditions
    # the separation oracle: the learned operator rejects the no-op and accepts the positive
    assert predict(ops, blocked.state, blocked.action) == blocked.state
    assert predict(ops, s1.state, s1.action) == s1.next_state


def test_intersection_drops_irrelevant_atoms(gripper):
    task = gripper.test_task("test-1")
    sim = Simulator(task)
    a = sim.step(task.init, GroundAction("pick", ("ball1", "rooma", "left")))
    b = sim.step(a.next_state, GroundAction("pick", ("ball2", "rooma", "right")))
    (op,) = [o for o in learn_operators([a, b], gripper.domain) if o.action == "pick"]
    assert op.preconditions == {atom("at", "?x0", "?x1"), atom("at-robby", "?x1"), atom("free", "?x2")}


@pytest.mark.parametrize("name", ["gripper", "blocks"])
def test_full_enumeration_learns_ground_truth(name, request):
    bundle = request.getfixturevalue(name)
    task = bundle.test[0]
    data = _all_transitions(task)
    ops = learn_operators(data, bundle.domain)
    assert not any(o.conflict for o in ops)
    assert all(predict(ops, t.state, t.action, task) == t.next_state for t in data)


def test_noops_only_learn_nothing(gripper):
    task = gripper.test_task("test-1")
    sim = Simulator(task)
    data = [sim.step(task.init, GroundAction("drop", ("ball1", "rooma", "left")))]
    assert learn_operators(data, gripper.domain) == ()


def test_type2_counterexample_changes_only_its_operator(gripper):
    task = gripper.test_task("test-1")
    sim = Simulator(task)
    base = [sim.step(task.init, GroundAction("pick", ("ball1", "rooma", "left"))),
            sim.step(task.init, GroundAction("move", ("rooma", "roomb")))]
    before = {o.action: o for o in learn_operators(base, gripper.domain)}
    state = base[0].next_state
    counter = sim.step(state, GroundAction("pick", ("ball2", "rooma", "left")))
    assert classify(counter, tuple(before.values()), gripper.domain) in ("noop", "type2")
    after = {o.action: o for o in learn_operators(base + [counter], gripper.domain)}
    assert after["move"] == before["move"]


def test_classify_type1(gripper):
    task = gripper.test_task("test-1")
    t = Simulator(task).step(task.init, GroundAction("pick", ("ball1", "rooma", "left")))
    assert classify(t, (), gripper.domain) == "type1"


def test_ground_truth_predicts_like_the_simulator(gripper):
    task = gripper.test_task("test-1")
    for t in _all_transitions(task, depth=3):
        assert predict(gripper.domain.operators, t.state, t.action) == t.next_state


def test_empty_model_predicts_noop(gripper):
    task = gripper.test_task("test-1")
    assert predict((), task.init, task.ground_actions[0]) == task.init


def test_demos_and_refinement_match_ground_truth_on_gripper(gripper):
    demos = generate_demos(gripper.domain.operators, gripper.train, random.Random(0))
    task = gripper.test[0]
    data = list(demos.transitions) + _all_transitions(task, depth=4)
    ops = learn_operators(data, gripper.domain)
    for t in _all_transitions(task):
        assert predict(ops, t.state, t.action, task) == t.next_state


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from(["gripper", "blocks"]))
def test_learned_model_is_consistent_with_its_data(seed, name):
    from relexplore.domains import load_bundle

    bundle = load_bundle(name)
    data = _random_dataset(bundle, 40, seed)
    ops = learn_operators(data, bundle.domain)
    if any(o.conflict for o in ops):
        return
    for t in data:
        assert predict(ops, t.state, t.action) == t.next_state


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_unlifting_restores_the_transition(seed):
    from relexplore.domains import load_bundle

    bundle = load_bundle("blocks")
    for t in _random_dataset(bundle, 15, seed):
        assert lift_transition(t, bundle.domain).unlift() == t


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_cluster_count_never_drops(seed):
    from relexplore.domains import load_bundle

    bundle = load_bundle("gripper")
    data = _random_dataset(bundle, 20, seed)
    counts = [len(cluster_by_effects(data[:i], bundle.domain)) for i in range(0, len(data) + 1, 5)]
    assert counts == sorted(counts)


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10_000))
def test_dataset_order_does_not_matter(seed):
    from relexplore.domains import load_bundle

    bundle = load_bundle("gripper")
    data = _random_dataset(bundle, 25, seed)
    shuffled = list(data)
    random.Random(seed).shuffle(shuffled)
    a = {operator_signature(o): o.preconditions for o in learn_operators(data, bundle.domain)}
    b = {operator_signature(o): o.preconditions for o in learn_operators(shuffled, bundle.domain)}
    assert a == b
