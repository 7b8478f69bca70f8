import pytest
from hypothesis import given, strategies as st

from syncauto import TAU, Alphabet, FiniteAutomaton, successors, validate_automaton
from syncauto.automaton import letters_used, reachable_states

from conftest import automata


def appraisal(stages):
    return stages[3].system.automata[0]


def test_alphabet_rejects_tau_and_bad_names():
    with pytest.raises(ValueError):
        Alphabet({"tau"})
    with pytest.raises(ValueError):
        Alphabet({"-x"})
    assert list(Alphabet({"b", "a"})) == ["a", "b"]
    assert Alphabet({"a"}).with_tau == {"a", TAU}


def test_stage3_members_are_valid(stages):
    for a in stages[3].system.automata:
        assert validate_automaton(a) == []


def test_unknown_state_is_named():
    a = FiniteAutomaton("A", Alphabet({"s"}), {"na"}, {("na", "s", "ghost")}, {"na"})
    diags = validate_automaton(a)
    assert len(diags) == 1
    assert "ghost" in diags[0].message and diags[0].code == "unknown-state"


def test_empty_initials():
    a = FiniteAutomaton("A", Alphabet({"s"}), {"na"}, set(), set())
    diags = validate_automaton(a)
    assert [d.code for d in diags] == ["empty-initials"]
    assert "empty initial set" in diags[0].message


def test_unknown_label_and_initial():
    a = FiniteAutomaton("A", Alphabet({"s"}), {"p"}, {("p", "z", "p")}, {"p", "q"})
    assert {d.code for d in validate_automaton(a)} == {"unknown-label", "unknown-initial"}


def test_successors(stages):
    a = appraisal(stages)
    assert successors(a, "a", "s") == {"a"}
    assert successors(a, "na", "s") == set()
    assert successors(a, "a", TAU) == {"na", "a"}
    with pytest.raises(ValueError, match="ghost"):
        successors(a, "ghost", "s")
    with pytest.raises(ValueError, match="zz"):
        successors(a, "a", "zz")


def test_letters_used(stages):
    f = stages[3].system.automata[1]
    assert letters_used(f) == {"s", "nostress", TAU}
    assert letters_used(FiniteAutomaton("E", Alphabet({"a"}), {"p"}, set(), {"p"})) == set()


def test_reachable_states(stages):
    assert reachable_states(appraisal(stages)) == {"na", "a"}
    a = FiniteAutomaton("A", Alphabet({"a"}), {"p", "z"}, {("p", "a", "p")}, {"p"})
    assert reachable_states(a) == {"p"}


def test_duplicate_transitions_collapse():
    a = FiniteAutomaton("A", Alphabet({"a"}), {"p"}, [("p", "a", "p"), ("p", "a", "p")], {"p"})
    assert len(a.transitions) == 1


@given(automata())
def test_successors_stay_inside(a):
    for q in a.states:
        for lam in a.alphabet.with_tau:
            assert successors(a, q, lam) <= a.states


@given(automata())
def test_letters_used_is_label_projection(a):
    assert letters_used(a) == {lam for _, lam, _ in a.transitions}


@given(automata(), st.tuples(st.sampled_from(["q0"]), st.sampled_from(["a", "b", TAU]), st.sampled_from(["q0"])))
def test_reachability_is_monotone(a, extra):
    bigger = FiniteAutomaton(a.name, a.alphabet, a.states, a.transitions | {extra}, a.initials)
    assert reachable_states(a) <= reachable_states(bigger)
