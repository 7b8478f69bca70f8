import pytest

from syncauto import ModelError, stage, stressed
from syncauto.corpus import corpus_documents, shipped_documents
from syncauto.document import serialize_document


def test_stage_one(stages):
    (a,) = stages[1].system.automata
    assert a.states == {"uni"} and a.initials == {"uni"} and a.transitions == {("uni", "tau", "uni")}


def test_stage_three_is_literal(stages):
    s = stages[3].system
    assert s.alphabet.letters == {"s", "nostress"}
    a, f = s.automata
    assert a.transitions == {("na", "tau", "a"), ("a", "s", "a"), ("a", "nostress", "a"), ("a", "tau", "na"), ("a", "tau", "a")}
    assert a.initials == {"na"}
    assert f.transitions == {("f", "s", "f"), ("f", "nostress", "f"), ("f", "tau", "f")}


def test_split_appraisal_has_no_tau_loop(stages):
    a = stages[6].system.automata[0]
    assert ("pa", "tau", "pa") not in a.transitions
    assert ("a", "tau", "a") in stages[5].system.automata[0].transitions


def test_letters_enter_from_stage_four(stages):
    assert {"x_ge1000", "x_lt1000"} <= stages[4].system.alphabet.letters
    assert {"c1", "c2"} <= stages[5].system.alphabet.letters
    assert {"g", "b"} <= stages[6].system.alphabet.letters


def test_stage_seven_sizes(stages):
    assert len(stages[7].system.automata) == 5
    assert [len(a.states) for a in stages[7].system.automata] == [3, 1, 2, 5, 4]


def test_parameters_required():
    with pytest.raises(ValueError):
        stage(4)
    with pytest.raises(ValueError):
        stage(8)


def test_bad_parameters(money):
    from dataclasses import replace
    with pytest.raises(ModelError):
        stage(4, replace(money, x0="nowhere"))


def test_money_parameters(money):
    assert len(money.g_x.edges) == 5 and len(money.g_phi.edges) == 5
    assert money.g_tau.edges == {("[x_ge1000]", "tau", "[x_lt1000]"), ("[x_lt1000]", "tau", "[x_lt1000]")}
    assert money.coping == {"c1", "c2"}
    assert money.diagnostics() == []


def test_commitment_stress(money):
    assert stressed("[x_lt1000]", "phi", money)
    assert not stressed("[x_ge1000]", "phi", money)
    assert not any(stressed(x, "one", money) for x in money.environment.elements)
    with pytest.raises(ValueError):
        stressed("[x_huge]", "phi", money)


def test_notes_carry_no_numbers(stages):
    for st in stages.values():
        assert st.notes and not any(ch.isdigit() for n in st.notes for ch in n)


def test_shipped_documents_match_builders():
    built = corpus_documents()
    shipped = shipped_documents()
    assert set(built) == set(shipped)
    for name, doc in built.items():
        assert serialize_document(shipped[name]) == serialize_document(doc), name
        assert shipped[name].build_system() == doc.build_system(), name
