"""Systems of automata synchronised by generalised rendezvous.

Component numbers (in J-sets and mover sets) are 1-based, matching the
usual ``[n] = {1, ..., n}`` indexing of a system's members. Global states
are plain tuples.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from .automaton import TAU, Alphabet, FiniteAutomaton, label_key, letters_used, sort_key, validate_automaton
from .errors import Diagnostic, ModelError


@dataclass(frozen=True)
class System:
    automata: tuple
    alphabet: Alphabet

    def __post_init__(self):
        object.__setattr__(self, "automata", tuple(self.automata))
        if not isinstance(self.alphabet, Alphabet):
            object.__setattr__(self, "alphabet", Alphabet(frozenset(self.alphabet)))
        problems = validate_system(self)
        if problems:
            raise ModelError(problems)

    @classmethod
    def of(cls, *automata: FiniteAutomaton) -> "System":
        """Build a system whose alphabet is that of its (agreeing) members."""
        if not automata:
            raise ModelError([Diagnostic("empty-system", "a system needs at least one automaton")])
        return cls(automata, automata[0].alphabet)

    def __len__(self) -> int:
        return len(self.automata)

    @cached_property
    def sync_sets(self) -> dict:
        used = [letters_used(a) for a in self.automata]
        return {
            a: frozenset(i for i, u in enumerate(used, 1) if a in u)
            for a in self.alphabet.letters
        }

    @property
    def initial_states(self) -> list:
        return [tuple(g) for g in itertools.product(*(sorted(a.initials, key=sort_key) for a in self.automata))]

    def is_initial(self, g: tuple) -> bool:
        return len(g) == len(self) and all(q in a.initials for q, a in zip(g, self.automata))

    def check_state(self, g) -> tuple:
        g = tuple(g)
        if len(g) != len(self.automata):
            raise ValueError(f"global state {g} has arity {len(g)}, system has {len(self.automata)} components")
        for i, (q, a) in enumerate(zip(g, self.automata), 1):
            if q not in a.states:
                raise ValueError(f"component {i} ({a.name}) has no state {q!r}")
        return g


def validate_system(s: System) -> list[Diagnostic]:
    out = []
    if not s.automata:
        out.append(Diagnostic("empty-system", "a system needs at least one automaton"))
    for a in s.automata:
        if a.alphabet != s.alphabet:
            out.append(Diagnostic(
                "alphabet-mismatch",
                f"{a.name}: alphabet {sorted(a.alphabet.letters)} differs from the system's "
                f"{sorted(s.alphabet.letters)}",
                a.name,
            ))
        out.extend(validate_automaton(a))
    return out


@dataclass(frozen=True)
class GlobalTransition:
    """A step of ``A(S)``; ``movers`` is metadata and ignored by equality."""

    source: tuple
    label: str
    target: tuple
    movers: frozenset = field(default=frozenset(), compare=False)

    def as_triple(self) -> tuple:
        return (self.source, self.label, self.target)

    def __iter__(self):
        return iter(self.as_triple())


def canonical_order(transitions: Iterable[GlobalTransition]) -> list:
    """Label name with tau last, then target tuple."""
    return sorted(transitions, key=lambda t: (label_key(t.label), sort_key(t.target)))


def sync_indices(s: System, a: str) -> frozenset:
    """J_a: the members owning at least one ``a``-transition."""
    if a == TAU:
        raise ValueError("J is defined only for letters of Sigma, not tau")
    if a not in s.alphabet:
        raise ValueError(f"unknown letter {a!r}")
    return s.sync_sets[a]


def _tau_moves(s: System, g: tuple) -> dict:
    moves = {}
    for i, a in enumerate(s.automata):
        for q in a.post(g[i], TAU):
            target = g[:i] + (q,) + g[i + 1:]
            moves.setdefault(target, set()).add(i + 1)
    return moves


def _letter_moves(s: System, g: tuple, letter: str):
    J = s.sync_sets[letter]
    if not J:
        return []
    options = []
    for i in sorted(J):
        succ = s.automata[i - 1].post(g[i - 1], letter)
        if not succ:
            return []
        options.append(sorted(succ, key=sort_key))
    targets = []
    for combo in itertools.product(*options):
        target = list(g)
        for i, q in zip(sorted(J), combo):
            target[i - 1] = q
        targets.append(tuple(target))
    return targets


def enabled_global_transitions(s: System, g) -> frozenset:
    g = s.check_state(g)
    out = [GlobalTransition(g, TAU, t, frozenset(m)) for t, m in _tau_moves(s, g).items()]
    for letter in s.alphabet.letters:
        J = s.sync_sets[letter]
        out.extend(GlobalTransition(g, letter, t, J) for t in _letter_moves(s, g, letter))
    return frozenset(out)


def blocking_components(s: System, g: tuple, label: str) -> frozenset:
    """Members preventing ``label`` from firing in ``g``."""
    if label == TAU:
        if _tau_moves(s, g):
            return frozenset()
        return frozenset(range(1, len(s) + 1))
    J = s.sync_sets.get(label, frozenset())
    return frozenset(i for i in J if not s.automata[i - 1].post(g[i - 1], label))


def global_states(s: System, reachable: bool = False) -> list:
    if not reachable:
        return [tuple(g) for g in itertools.product(*(a.sorted_states() for a in s.automata))]
    seen = set(s.initial_states)
    frontier = sorted(seen, key=sort_key)
    while frontier:
        nxt = []
        for g in frontier:
            for t in enabled_global_transitions(s, g):
                if t.target not in seen:
                    seen.add(t.target)
                    nxt.append(t.target)
        frontier = nxt
    return sorted(seen, key=sort_key)


def build_product(s: System, reachable: bool = False, name: str | None = None) -> FiniteAutomaton:
    """The automaton ``A(S)``: full Cartesian product unless ``reachable``."""
    states = global_states(s, reachable)
    transitions = set()
    for g in states:
        transitions.update(t.as_triple() for t in enabled_global_transitions(s, g))
    if name is None:
        name = "A(" + ",".join(a.name for a in s.automata) + ")"
    return FiniteAutomaton(name, s.alphabet, states, transitions, s.initial_states)
