"""Word languages of automata in which every state accepts.

By default tau is an ordinary visible letter. ``tau_epsilon=True`` reads it
as the empty word instead (weak semantics, with tau-closure).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .automaton import TAU, Alphabet, FiniteAutomaton, label_key, sort_key


def project(a: FiniteAutomaton, target) -> FiniteAutomaton:
    """Hide every letter outside ``target`` by relabelling it tau."""
    keep = target.letters if isinstance(target, Alphabet) else frozenset(target)
    delta = {(p, lam if lam in keep else TAU, q) for p, lam, q in a.transitions}
    return FiniteAutomaton(a.name, Alphabet(a.alphabet.letters & keep), a.states, delta, a.initials)


@dataclass(frozen=True)
class WordSet:
    words: frozenset
    bound: int

    def __contains__(self, word) -> bool:
        return tuple(word) in self.words

    def __len__(self) -> int:
        return len(self.words)

    def __le__(self, other: "WordSet") -> bool:
        return self.words <= other.words


def words_upto(a: FiniteAutomaton, k: int) -> WordSet:
    """All label sequences of length <= k readable from an initial state."""
    if k < 0:
        raise ValueError("bound must be non-negative")
    layer = {(): frozenset(a.initials)} if a.initials else {}
    words = set(layer)
    for _ in range(k):
        nxt = {}
        for word, states in layer.items():
            for p in states:
                for _, lam, q in a.outgoing.get(p, ()):
                    nxt.setdefault(word + (lam,), set()).add(q)
        layer = {w: frozenset(s) for w, s in nxt.items()}
        words.update(layer)
    return WordSet(frozenset(words), k)


def _closure(a: FiniteAutomaton, states) -> frozenset:
    seen = set(states)
    stack = list(seen)
    while stack:
        p = stack.pop()
        for q in a.post(p, TAU):
            if q not in seen:
                seen.add(q)
                stack.append(q)
    return frozenset(seen)


def _labels(a: FiniteAutomaton, tau_epsilon: bool) -> list:
    labels = {lam for _, lam, _ in a.transitions}
    if tau_epsilon:
        labels.discard(TAU)
    return sorted(labels, key=label_key)


def _step(a: FiniteAutomaton, states, lam, tau_epsilon: bool) -> frozenset:
    out = set()
    for p in states:
        out |= a.post(p, lam)
    return _closure(a, out) if tau_epsilon else frozenset(out)


def determinize(a: FiniteAutomaton, tau_epsilon: bool = False) -> FiniteAutomaton:
    """Subset construction over reachable nonempty subsets.

    States of the result are frozensets of states of ``a``. The empty
    subset is dropped: since every state accepts, it is the only rejecting
    state and leaving it out keeps the language unchanged.
    """
    if not a.initials:
        return FiniteAutomaton(f"det({a.name})", a.alphabet, (), (), ())
    start = _closure(a, a.initials) if tau_epsilon else frozenset(a.initials)
    labels = _labels(a, tau_epsilon)
    seen = {start}
    queue = deque([start])
    delta = set()
    while queue:
        m = queue.popleft()
        for lam in labels:
            n = _step(a, m, lam, tau_epsilon)
            if n:
                delta.add((m, lam, n))
                if n not in seen:
                    seen.add(n)
                    queue.append(n)
    return FiniteAutomaton(f"det({a.name})", a.alphabet, seen, delta, {start})


@dataclass(frozen=True)
class InclusionResult:
    holds: bool
    counterexample: tuple | None = None

    def __bool__(self) -> bool:
        return self.holds


def language_includes(superset: FiniteAutomaton, subset: FiniteAutomaton, tau_epsilon: bool = False) -> InclusionResult:
    """Decide L(subset) <= L(superset).

    Breadth-first over pairs (subset state, superset macro-state), so a
    failure comes with a shortest counterexample, least in canonical label
    order among the shortest.
    """
    if not subset.initials:
        return InclusionResult(True)
    sub_start = _closure(subset, subset.initials) if tau_epsilon else frozenset(subset.initials)
    if not superset.initials:
        return InclusionResult(False, ())
    sup_start = _closure(superset, superset.initials) if tau_epsilon else frozenset(superset.initials)
    labels = _labels(subset, tau_epsilon)
    seen = set()
    queue = deque()
    for q in sorted(sub_start, key=sort_key):
        seen.add((q, sup_start))
        queue.append((q, sup_start, ()))
    while queue:
        q, m, word = queue.popleft()
        for lam in labels:
            targets = _step(subset, {q}, lam, tau_epsilon)
            if not targets:
                continue
            n = _step(superset, m, lam, tau_epsilon)
            if not n:
                return InclusionResult(False, word + (lam,))
            for q2 in sorted(targets, key=sort_key):
                if (q2, n) not in seen:
                    seen.add((q2, n))
                    queue.append((q2, n, word + (lam,)))
    return InclusionResult(True)


@dataclass(frozen=True)
class SimulationResult:
    holds: bool
    relation: frozenset = frozenset()

    def __bool__(self) -> bool:
        return self.holds


def simulates(abstract: FiniteAutomaton, refined: FiniteAutomaton) -> SimulationResult:
    """Greatest simulation of ``refined`` by ``abstract``.

    ``(p, q)`` is in the relation when every move ``q --l--> q'`` can be
    answered by some ``p --l--> p'`` with ``(p', q')`` again related.
    """
    rel = {(p, q) for p in abstract.states for q in refined.states}
    changed = True
    while changed:
        changed = False
        for p, q in list(rel):
            for _, lam, q2 in refined.outgoing.get(q, ()):
                if not any((p2, q2) in rel for p2 in abstract.post(p, lam)):
                    rel.discard((p, q))
                    changed = True
                    break
    holds = all(any((p, q) in rel for p in abstract.initials) for q in refined.initials)
    return SimulationResult(holds, frozenset(rel))
