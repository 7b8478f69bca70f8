"""Graphviz text for plain and compact automata."""

from __future__ import annotations

from collections import defaultdict

from .automaton import TAU, FiniteAutomaton, label_key, sort_key
from .compact import CompactAutomaton, EdgeIn, Guard, LabelIs, LabelIsSourceName


def _quote(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _show(label: str) -> str:
    return "τ" if label == TAU else label


def _guard_label(g: Guard, src: str) -> str:
    if isinstance(g, EdgeIn):
        labels = ",".join(_show(l) for l in sorted(g.graph.labels, key=label_key))
        return f"{g.graph.name}/{{{labels}}}"
    if isinstance(g, LabelIs):
        return _show(g.label)
    if isinstance(g, LabelIsSourceName):
        return src.strip("[]")
    return str(g)


def _header(name: str) -> list[str]:
    return [f"digraph {_quote(name)} {{", "  rankdir=LR;"]


def export_dot(a) -> str:
    if isinstance(a, CompactAutomaton):
        return _compact_dot(a)
    if isinstance(a, FiniteAutomaton):
        return _plain_dot(a)
    raise TypeError(f"cannot export {type(a).__name__}")


def _plain_dot(a: FiniteAutomaton) -> str:
    out = _header(a.name)
    states = a.sorted_states()
    initials = [q for q in states if q in a.initials]
    for k, _ in enumerate(initials):
        out.append(f"  __init{k} [shape=point];")
    for q in states:
        out.append(f"  {_quote(q)} [shape=circle];")
    for k, q in enumerate(initials):
        out.append(f"  __init{k} -> {_quote(q)};")
    merged = defaultdict(list)
    for p, lam, q in a.sorted_transitions():
        merged[p, q].append(_show(lam))
    for (p, q) in sorted(merged, key=sort_key):
        out.append(f"  {_quote(p)} -> {_quote(q)} [label={_quote(', '.join(merged[p, q]))}];")
    out.append("}")
    return "\n".join(out) + "\n"


def _compact_dot(c: CompactAutomaton) -> str:
    out = _header(c.name)
    states = c.compact_states
    images = ["f(" + q + ") = {" + " ".join(sorted(c.images[q], key=sort_key)) + "}" for q in states]
    init = "I = {" + " ".join(sorted(c.initials, key=sort_key)) + "}"
    out.append(f"  label={_quote('; '.join([init, *images]))};")
    # Each initial element enters through the first compact state holding it.
    entered = []
    for x in sorted(c.initials, key=sort_key):
        q = next((q for q in states if x in c.images[q]), None)
        if q is not None and q not in entered:
            entered.append(q)
    for k, _ in enumerate(entered):
        out.append(f"  __init{k} [shape=point];")
    for q in states:
        shape = "doublecircle" if len(c.images[q]) > 1 else "circle"
        out.append(f"  {_quote(q)} [shape={shape}];")
    for k, q in enumerate(entered):
        out.append(f"  __init{k} -> {_quote(q)};")
    merged = defaultdict(list)
    for p, g, q in c.transitions:
        merged[p, q].append(_guard_label(g, p))
    for (p, q) in sorted(merged, key=sort_key):
        out.append(f"  {_quote(p)} -> {_quote(q)} [label={_quote(', '.join(merged[p, q]))}];")
    out.append("}")
    return "\n".join(out) + "\n"
