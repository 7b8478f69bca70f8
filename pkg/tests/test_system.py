import pytest
from hypothesis import given

from syncauto import (
    TAU, Alphabet, FiniteAutomaton, ModelError, System, blocking_components, build_product,
    enabled_global_transitions, sync_indices,
)
from syncauto.corpus import example_rendezvous
from syncauto.system import GlobalTransition, global_states

import oracles
from conftest import systems


@pytest.fixture
def fig1():
    return example_rendezvous().build_system()


def test_sync_sets(fig1, stages):
    assert sync_indices(fig1, "a") == {1, 2}
    assert sync_indices(fig1, "b") == {3}
    assert sync_indices(stages[3].system, "s") == {1, 2}
    with pytest.raises(ValueError, match="only for letters"):
        sync_indices(fig1, TAU)


def test_rendezvous_steps(fig1):
    here = enabled_global_transitions(fig1, ("q1", "p", "r"))
    assert GlobalTransition(("q1", "p", "r"), "a", ("q2", "p", "r")) in here
    there = enabled_global_transitions(fig1, ("q2", "p", "r"))
    assert not any(t.label == "a" for t in there)
    assert GlobalTransition(("q2", "p", "r"), TAU, ("q1", "p", "r")) in there


def test_tau_movers_merge(fig1):
    # q2 and r both have tau self-loops: one transition, two possible movers
    loop = [t for t in enabled_global_transitions(fig1, ("q2", "p", "r")) if t.target == ("q2", "p", "r")]
    taus = [t for t in loop if t.label == TAU]
    assert len(taus) == 1 and taus[0].movers == {1, 3}


def test_stage3_sleeping(stages):
    out = enabled_global_transitions(stages[3].system, ("na", "f"))
    assert {t.target for t in out if t.label == TAU} == {("a", "f"), ("na", "f")}
    assert not any(t.label in ("s", "nostress") for t in out)


def test_malformed_global_state(fig1):
    with pytest.raises(ValueError, match="arity"):
        enabled_global_transitions(fig1, ("q1", "p"))
    with pytest.raises(ValueError, match="ghost"):
        enabled_global_transitions(fig1, ("q1", "ghost", "r"))


def test_stage3_product(stages):
    p = build_product(stages[3].system)
    assert p.states == {("na", "f"), ("a", "f")}
    assert p.transitions == {
        (("na", "f"), TAU, ("a", "f")), (("na", "f"), TAU, ("na", "f")),
        (("a", "f"), TAU, ("na", "f")), (("a", "f"), TAU, ("a", "f")),
        (("a", "f"), "s", ("a", "f")), (("a", "f"), "nostress", ("a", "f")),
    }


def test_stage1_product_is_the_single_member(stages):
    p = build_product(stages[1].system)
    assert p.states == {("uni",)} and p.transitions == {(("uni",), TAU, ("uni",))}


def test_stage7_product_size(stages):
    sizes = [len(a.states) for a in stages[7].system.automata]
    assert sizes == [3, 1, 2, 5, 4]
    assert len(build_product(stages[7].system).states) == 120


def test_reachable_product_is_smaller_or_equal(stages):
    s = stages[6].system
    assert set(global_states(s, reachable=True)) <= set(global_states(s))
    assert build_product(s, reachable=True).initials == build_product(s).initials


def test_blocking_components(fig1, stages):
    assert blocking_components(fig1, ("q2", "p", "r"), "a") == {1}
    assert blocking_components(stages[3].system, ("na", "f"), "s") == {1}


def test_system_rejects_mixed_alphabets():
    a = FiniteAutomaton("A", Alphabet({"a"}), {"p"}, set(), {"p"})
    b = FiniteAutomaton("B", Alphabet({"b"}), {"p"}, set(), {"p"})
    with pytest.raises(ModelError):
        System([a, b], Alphabet({"a"}))
    with pytest.raises(ModelError):
        System((), Alphabet({"a"}))


def test_product_matches_oracle_on_corpus(stages):
    for k, st in stages.items():
        assert build_product(st.system).transitions == oracles.product_transitions(st.system), k


@given(systems())
def test_product_matches_oracle(s):
    assert build_product(s).transitions == oracles.product_transitions(s)


@given(systems())
def test_locality_of_moves(s):
    for g in global_states(s):
        for t in enabled_global_transitions(s, g):
            changed = {i for i, (x, y) in enumerate(zip(g, t.target), 1) if x != y}
            if t.label == TAU:
                assert len(changed) <= 1
            else:
                assert changed <= s.sync_sets[t.label]
