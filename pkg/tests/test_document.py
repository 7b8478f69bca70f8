import pytest
from hypothesis import given, strategies as st

from syncauto import DocumentError, ModelDocument, System, parse_document, serialize_document
from syncauto.corpus import corpus_documents

from conftest import systems


def codes(text):
    with pytest.raises(DocumentError) as e:
        parse_document(text)
    return [err.code for err in e.value.errors]


@pytest.mark.parametrize("name", sorted(corpus_documents()))
def test_corpus_round_trip(name):
    doc = corpus_documents()[name]
    text = serialize_document(doc)
    again = parse_document(text)
    assert again == doc
    assert serialize_document(again) == text
    assert again.build_system() == doc.build_system()


def test_canonical_layout(stages):
    text = serialize_document(stages[3].document)
    assert text.endswith("}\n") and "\n  states { a na* }\n" in text
    assert text.index("automaton A3_1") < text.index("automaton A3_2") < text.index("system")


def test_declaration_order_does_not_matter():
    a = """format 1
alphabet { b a }
automaton B { states { p* } trans { p -b-> p } }
automaton A { states { q* } trans { q -a-> q
 q -tau-> q } }
system { A B }
"""
    b = """system { A B }
automaton A { states { q* } trans { q -tau-> q  q -a-> q } }
alphabet { a b }
automaton B { states { p* } trans { p -b-> p } }
"""
    assert serialize_document(parse_document(a)) == serialize_document(parse_document(b))


def test_error_codes():
    assert codes("") == ["missing-system"]
    assert codes("alphabet { a }\nautomaton A { states { p* } }\n") == ["missing-system"]
    assert codes("alphabet { a } system { A }") == ["unresolved"]
    assert codes("alphabet { a a } automaton A { states { p* } } system { A }") == ["duplicate"]
    assert codes("format 2 alphabet { a } automaton A { states { p* } } system { A }") == ["version"]
    assert codes("alphabet { a } automaton A { states p } system { A }") == ["syntax"]


def test_unresolved_graph_is_named():
    text = """alphabet { a }
set X { x0 }
compact C over X { cstate Q = X; init { x0 }; ctrans Q -[edge G_missing]-> Q; }
system { C }
"""
    with pytest.raises(DocumentError) as e:
        parse_document(text)
    (err,) = e.value.errors
    assert err.code == "unresolved" and "G_missing" in err.message and err.line == 3


def test_errors_carry_positions():
    with pytest.raises(DocumentError) as e:
        parse_document("alphabet { a }\n\n  bogus { }\n")
    (err,) = e.value.errors
    assert (err.line, err.column) == (3, 3)


@given(systems())
def test_random_documents_round_trip(s: System):
    doc = ModelDocument(s.alphabet, {}, {}, {a.name: a for a in s.automata}, tuple(a.name for a in s.automata))
    text = serialize_document(doc)
    assert parse_document(text) == doc
    assert serialize_document(parse_document(text)) == text


@given(st.binary(max_size=300))
def test_parser_is_total_on_bytes(data):
    try:
        parse_document(data)
    except DocumentError as e:
        assert e.errors


CHUNKS = ["alphabet", "set", "graph", "automaton", "compact", "system", "format", "{", "}", "(", ")", "[", "]",
          "-a->", "-[", "]->", "-[label a]->", "*", ";", ":", "=", "x", "tau", "&", "|", "!", "over", "labels",
          "cstate", "ctrans", "init", "states", "trans", "edge", "\n", " ", "1", "#"]


@given(st.lists(st.sampled_from(CHUNKS), max_size=60))
def test_parser_is_total_on_token_soup(chunks):
    try:
        parse_document(" ".join(chunks))
    except DocumentError as e:
        assert e.errors


@given(st.integers(0, len(serialize_document(corpus_documents()["stage7"]))), st.text(max_size=5))
def test_parser_is_total_on_corrupted_corpus(cut, junk):
    text = serialize_document(corpus_documents()["stage7"])
    try:
        parse_document(text[:cut] + junk + text[cut:])
    except DocumentError as e:
        assert e.errors


def test_deep_nesting_is_reported():
    guard = "(" * 5000 + "true" + ")" * 5000
    text = f"alphabet {{ a }} set X {{ x }} compact C over X {{ cstate Q = X; init {{ x }}; ctrans Q -[{guard}]-> Q; }} system {{ C }}"
    try:
        parse_document(text)
    except DocumentError:
        pass
