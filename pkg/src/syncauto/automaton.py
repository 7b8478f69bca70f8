"""Finite automata without accepting states.

Labels are plain strings. The internal action is the reserved string
``"tau"`` (:data:`TAU`); every other label is a letter of some alphabet.
States may be any hashable value: unfolded or hand-written automata use
strings, products use tuples of component states.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Hashable

from .errors import Diagnostic

TAU = "tau"

LETTER_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")

State = Hashable
Transition = tuple  # (source, label, target)


def label_key(label: str):
    """Canonical label order: by name, with tau last."""
    return (label == TAU, label)


def sort_key(value):
    """Total order over the state shapes used in this package."""
    if isinstance(value, str):
        return (0, value)
    if isinstance(value, tuple):
        return (1, tuple(sort_key(v) for v in value))
    if isinstance(value, frozenset):
        return (2, tuple(sorted(sort_key(v) for v in value)))
    return (3, repr(value))


def transition_key(t: Transition):
    return (sort_key(t[0]), label_key(t[1]), sort_key(t[2]))


def is_letter_name(name: str) -> bool:
    return bool(LETTER_RE.match(name)) and name != TAU


@dataclass(frozen=True)
class Alphabet:
    """The letter set Sigma. Sigma_tau is ``letters | {TAU}``."""

    letters: frozenset = frozenset()

    def __post_init__(self):
        letters = frozenset(self.letters)
        bad = sorted(l for l in letters if not is_letter_name(l))
        if bad:
            raise ValueError(f"invalid letter name(s): {', '.join(map(repr, bad))}")
        object.__setattr__(self, "letters", letters)

    @property
    def with_tau(self) -> frozenset:
        return self.letters | {TAU}

    def __contains__(self, label) -> bool:
        return label in self.letters

    def __iter__(self):
        return iter(sorted(self.letters))

    def __len__(self) -> int:
        return len(self.letters)


@dataclass(frozen=True)
class FiniteAutomaton:
    """``(Sigma_tau, Q, Delta, I)``; every state is accepting.

    Duplicate transitions collapse since ``transitions`` is a set.
    Construction never rejects: call :func:`validate_automaton` for the
    list of violated invariants.
    """

    name: str
    alphabet: Alphabet
    states: frozenset
    transitions: frozenset
    initials: frozenset

    def __post_init__(self):
        if not isinstance(self.alphabet, Alphabet):
            object.__setattr__(self, "alphabet", Alphabet(frozenset(self.alphabet)))
        object.__setattr__(self, "states", frozenset(self.states))
        object.__setattr__(self, "transitions", frozenset(tuple(t) for t in self.transitions))
        object.__setattr__(self, "initials", frozenset(self.initials))

    @cached_property
    def _post(self) -> dict:
        table = defaultdict(set)
        for p, lam, q in self.transitions:
            table[p, lam].add(q)
        return {k: frozenset(v) for k, v in table.items()}

    def post(self, state, label) -> frozenset:
        """Unchecked successor lookup (see :func:`successors` for the checked one)."""
        return self._post.get((state, label), frozenset())

    @cached_property
    def outgoing(self) -> dict:
        table = defaultdict(list)
        for t in sorted(self.transitions, key=transition_key):
            table[t[0]].append(t)
        return dict(table)

    def sorted_states(self) -> list:
        return sorted(self.states, key=sort_key)

    def sorted_transitions(self) -> list:
        return sorted(self.transitions, key=transition_key)

    def renamed(self, name: str) -> "FiniteAutomaton":
        return FiniteAutomaton(name, self.alphabet, self.states, self.transitions, self.initials)


def validate_automaton(a: FiniteAutomaton) -> list[Diagnostic]:
    """Return one diagnostic per violated invariant (empty list when valid)."""
    out = []
    labels = a.alphabet.with_tau
    for p, lam, q in a.sorted_transitions():
        for end in (p, q):
            if end not in a.states:
                out.append(Diagnostic(
                    "unknown-state",
                    f"{a.name}: transition ({p}, {lam}, {q}) uses unknown state {end}",
                    str(end),
                ))
        if lam not in labels:
            out.append(Diagnostic(
                "unknown-label",
                f"{a.name}: transition ({p}, {lam}, {q}) uses label {lam} outside the alphabet",
                str(lam),
            ))
    for q in sorted(a.initials - a.states, key=sort_key):
        out.append(Diagnostic("unknown-initial", f"{a.name}: initial state {q} is not a state", str(q)))
    if not a.initials:
        out.append(Diagnostic("empty-initials", f"{a.name}: empty initial set", a.name))
    return out


def successors(a: FiniteAutomaton, q, label: str) -> frozenset:
    if q not in a.states:
        raise ValueError(f"{a.name}: unknown state {q!r}")
    if label not in a.alphabet.with_tau:
        raise ValueError(f"{a.name}: unknown label {label!r}")
    return a.post(q, label)


def letters_used(a: FiniteAutomaton) -> frozenset:
    """Labels (tau included) carried by at least one transition."""
    return frozenset(lam for _, lam, _ in a.transitions)


def reachable_states(a: FiniteAutomaton) -> frozenset:
    seen = set(a.initials & a.states)
    stack = list(seen)
    while stack:
        p = stack.pop()
        for _, _, q in a.outgoing.get(p, ()):
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return frozenset(seen)
