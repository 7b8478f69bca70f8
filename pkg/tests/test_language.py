import itertools

from hypothesis import given

from syncauto import TAU, build_product, determinize, language_includes, project, simulates, words_upto

import oracles
from conftest import automata


def test_words_upto_small(stages):
    p = build_product(stages[3].system)
    w = words_upto(p, 2)
    assert () in w and (TAU, "s") in w and ("s",) not in w
    assert w.words == oracles.words(p, 2)


def test_project_keeps_shape(stages):
    p = build_product(stages[4].system)
    q = project(p, {"s", "nostress"})
    assert len(q.states) == len(p.states) and len(q.transitions) <= len(p.transitions)
    assert q.alphabet.letters == {"s", "nostress"}
    assert {lam for _, lam, _ in q.transitions} <= {"s", "nostress", TAU}


def test_first_stage_simulates_projected_second(stages):
    one = build_product(stages[1].system)
    two = project(build_product(stages[2].system), set())
    result = simulates(one, two)
    assert result and ((("uni",), ("non-awake",)) in result.relation)


def test_simulates_is_reflexive(corpus_automata):
    for a in corpus_automata.values():
        r = simulates(a, a)
        assert r and {(q, q) for q in a.states} <= r.relation


def test_stage_languages_after_hiding(stages):
    three = build_product(stages[3].system)
    four = project(build_product(stages[4].system), three.alphabet)
    assert language_includes(three, four)
    result = language_includes(four, three)
    # the same words exist in both, since environment letters become tau
    assert result.holds == (oracles.words(three, 6) <= oracles.words(four, 6))


def _bounded_agrees(sup, sub, weak=False):
    res = language_includes(sup, sub, tau_epsilon=weak)
    assert oracles.bounded_inclusion_consistent(res, sup, sub, 6, weak=weak)
    return res


def test_inclusion_and_simulation_on_corpus_pairs(corpus_automata):
    items = list(corpus_automata.values())
    for a, b in itertools.product(items, repeat=2):
        b2 = project(b, a.alphabet)
        res = _bounded_agrees(a, b2)
        if simulates(a, b2):
            assert res


@given(automata(), automata())
def test_inclusion_matches_bounded_oracle(a, b):
    _bounded_agrees(a, b)


@given(automata(), automata())
def test_weak_inclusion_matches_bounded_oracle(a, b):
    _bounded_agrees(a, b, weak=True)


@given(automata(), automata())
def test_simulation_implies_inclusion(a, b):
    if simulates(a, b):
        assert language_includes(a, b)
        assert oracles.words(b, 6) <= oracles.words(a, 6)


@given(automata())
def test_determinize_preserves_bounded_words(a):
    d = determinize(a)
    assert words_upto(d, 6).words == oracles.words(a, 6)
    assert all(len(d.post(m, lam)) == 1 for m, lam, _ in d.transitions)


@given(automata())
def test_words_upto_matches_oracle(a):
    for k in range(5):
        assert words_upto(a, k).words == oracles.words(a, k)


@given(automata())
def test_project_preserves_counts(a):
    q = project(a, {"a"})
    assert len(q.states) == len(a.states)
    # relabelling can merge parallel edges, never create them
    assert len(q.transitions) <= len(a.transitions)
