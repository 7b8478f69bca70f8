import itertools

import pytest
from hypothesis import given, strategies as st

from syncauto import (
    TAU, Alphabet, FiniteAutomaton, PartitionWitness, System, automaton_leq, label_leq, system_leq, verify_witness,
)
from syncauto.corpus import example_refinement

import oracles
from conftest import automata


def test_label_order():
    assert label_leq(TAU, "a") and label_leq(TAU, TAU) and label_leq("a", "a")
    assert not label_leq("a", TAU) and not label_leq("a", "b")


def test_first_steps_of_the_chain(stages):
    assert system_leq(stages[1].system, stages[2].system)
    report = system_leq(stages[2].system, stages[3].system)
    assert report
    assert report.witnesses[0].blocks == {"non-awake": {"na"}, "appraisal": {"a"}}


def test_small_refinement_example():
    abstract, refined = (d.plain(n) for d, n in zip(example_refinement(), ("Ai", "Aj")))
    report = automaton_leq(abstract, refined)
    assert report.witness.blocks == {"q1": {"p1", "p2"}, "q2": {"p3", "p4", "p5"}}
    assert verify_witness(abstract, refined, report.witness)


def test_environment_step_fails_with_named_transition(stages):
    report = system_leq(stages[4].system, stages[5].system)
    assert not report
    subjects = {d.subject for d in report.diagnostics if d.code == "unmatched-transition"}
    assert "([x_lt1000],c1,[x_ge1000])" in subjects
    assert not system_leq(stages[4].system, stages[5].system, relaxed=True)


def test_coping_step_fails_on_outcomes(stages):
    report = system_leq(stages[5].system, stages[6].system)
    assert not report
    assert any("component 4" in d.message and ",g," in d.subject for d in report.diagnostics)


def test_later_steps_hold(stages):
    assert system_leq(stages[3].system, stages[4].system)
    assert system_leq(stages[6].system, stages[7].system)


def test_sync_sets_grow_along_the_chain(stages):
    for k in range(1, 7):
        a, b = stages[k].system, stages[k + 1].system
        for letter in a.alphabet.letters & b.alphabet.letters:
            assert a.sync_sets[letter] <= b.sync_sets[letter]


def test_system_arity_and_sync_diagnostics():
    sig = Alphabet({"a"})
    one = FiniteAutomaton("A", sig, {"p"}, {("p", "a", "p")}, {"p"})
    idle = FiniteAutomaton("B", sig, {"p"}, set(), {"p"})
    report = system_leq(System.of(one, one), System.of(one))
    assert "arity" in {d.code for d in report.diagnostics}
    report = system_leq(System.of(one, one), System.of(one, idle))
    assert not report and "sync-set" in {d.code for d in report.diagnostics}


def test_strict_versus_relaxed_blocks():
    sig = Alphabet({"a"})
    two = FiniteAutomaton("T", sig, {"p", "q"}, {("p", "a", "p")}, {"p"})
    one = FiniteAutomaton("O", sig, {"r"}, {("r", "a", "r")}, {"r"})
    strict = automaton_leq(two, one)
    assert not strict and strict.diagnostics[0].code == "too-few-states"
    relaxed = automaton_leq(two, one, relaxed=True)
    assert relaxed and relaxed.witness.blocks["q"] == frozenset()


def test_verify_witness_rejections():
    abstract, refined = (d.plain(n) for d, n in zip(example_refinement(), ("Ai", "Aj")))
    good = {"q1": {"p1", "p2"}, "q2": {"p3", "p4", "p5"}}
    assert verify_witness(abstract, refined, PartitionWitness(good))
    assert not verify_witness(abstract, refined, PartitionWitness({"q1": {"p1"}, "q2": {"p2", "p3", "p4", "p5"}}))
    assert not verify_witness(abstract, refined, PartitionWitness({"q1": {"p1", "p2"}, "q2": {"p3", "p4"}}))
    assert not verify_witness(abstract, refined, PartitionWitness({"q1": {"p2"}, "q2": {"p1", "p3", "p4", "p5"}}))
    with pytest.raises(ValueError):
        verify_witness(abstract, refined, PartitionWitness({"zz": {"p1"}}))


def test_report_json_shape(stages):
    d = system_leq(stages[2].system, stages[3].system).to_dict()
    assert d == {"verdict": "holds", "blocks": [{"appraisal": ["a"], "non-awake": ["na"]}], "diagnostics": []}


def test_reflexive_on_corpus(corpus_automata):
    for name, a in corpus_automata.items():
        report = automaton_leq(a, a)
        assert report, name
        assert all(block == {p} for p, block in report.witness.blocks.items()), name


def test_transitive_on_corpus(corpus_automata):
    names = sorted(corpus_automata)
    leq = {(x, y): automaton_leq(corpus_automata[x], corpus_automata[y]).holds for x in names for y in names}
    checked = 0
    for x, y, z in itertools.product(names, repeat=3):
        if leq[x, y] and leq[y, z]:
            checked += 1
            assert leq[x, z], (x, y, z)
    assert checked > len(names)


def test_verdicts_match_exhaustive_oracle_on_corpus(corpus_automata):
    for (x, a), (y, b) in itertools.product(corpus_automata.items(), repeat=2):
        report = automaton_leq(a, b)
        assert report.holds == oracles.refines(a, b), (x, y)
        if report:
            assert verify_witness(a, b, report.witness)
        else:
            assert report.diagnostics


small = automata(max_states=3, letters=("a", "b"))
smallish = automata(max_states=5, letters=("a", "b"))


@given(small, smallish, st.booleans())
def test_verdicts_match_exhaustive_oracle(a, b, relaxed):
    report = automaton_leq(a, b, relaxed=relaxed)
    assert report.holds == oracles.refines(a, b, relaxed=relaxed)
    if report:
        assert verify_witness(a, b, report.witness, relaxed=relaxed)
    else:
        assert report.diagnostics


@given(small, small, small)
def test_transitive_when_premises_hold(a, b, c):
    if automaton_leq(a, b) and automaton_leq(b, c):
        assert automaton_leq(a, c)


@given(smallish)
def test_reflexive(a):
    assert automaton_leq(a, a)
