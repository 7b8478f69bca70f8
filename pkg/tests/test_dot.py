import re

from syncauto import export_dot


def nodes_and_edges(text):
    nodes = re.findall(r"^\s+(\S+) \[shape=", text, re.M)
    edges = re.findall(r"^\s+(\S+) -> (\S+)", text, re.M)
    return nodes, edges


def test_single_state_automaton(stages):
    text = export_dot(stages[1].document.automata["A1_1"])
    nodes, edges = nodes_and_edges(text)
    assert len(nodes) == 2 and len(edges) == 2
    assert '"uni" -> "uni" [label="τ"]' in text


def test_environment_compact_states(stages):
    text = export_dot(stages[4].document.automata["A4_3"])
    assert '"[x]" [shape=doublecircle]' in text and '"[y]" [shape=doublecircle]' in text
    assert 'label="Gtau/{τ}"' in text
    assert text.count("[shape=point]") == 1


def test_singleton_compact_state_is_single(stages):
    text = export_dot(stages[6].document.automata["A6_4"])
    assert '"rho" [shape=circle]' in text and '"[c]" [shape=doublecircle]' in text


def test_parallel_labels_merge(stages):
    text = export_dot(stages[3].document.automata["A3_2"])
    assert '"f" -> "f" [label="nostress, s, τ"]' in text


def test_deterministic(stages):
    for st in stages.values():
        for a in st.document.automata.values():
            assert export_dot(a) == export_dot(a)
