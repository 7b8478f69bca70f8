"""Refinement quasi-orders on labels, automata and systems.

``A <= A'`` holds when the states of ``A'`` can be partitioned into blocks,
one per state of ``A``, such that every transition of ``A'`` between blocks
``Q_p`` and ``Q_q`` is matched by a transition ``(p, lam, q)`` of ``A`` with
``lam`` either tau or the same label, and every initial state of ``A'`` sits
in the block of an initial state of ``A``.

Blocks must be nonempty unless ``relaxed=True``, in which case the witness
is just a total map from refined states to abstract states.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Mapping

from .automaton import TAU, FiniteAutomaton, label_key, sort_key, transition_key
from .errors import Diagnostic
from .system import System


def label_leq(lam: str, other: str) -> bool:
    return lam == TAU or lam == other


def transition_leq(t, other) -> bool:
    """Compare labels only; endpoints play no part."""
    return label_leq(t[1], other[1])


@dataclass(frozen=True)
class PartitionWitness:
    """Abstract state -> block of refined states."""

    blocks: Mapping

    def __post_init__(self):
        object.__setattr__(self, "blocks", {p: frozenset(b) for p, b in dict(self.blocks).items()})

    @classmethod
    def from_assignment(cls, assignment: Mapping, abstract_states) -> "PartitionWitness":
        blocks = {p: set() for p in abstract_states}
        for q, p in assignment.items():
            blocks[p].add(q)
        return cls(blocks)

    def assignment(self) -> dict:
        return {q: p for p, block in self.blocks.items() for q in block}

    def to_dict(self) -> dict:
        return {
            str(p): [str(q) for q in sorted(self.blocks[p], key=sort_key)]
            for p in sorted(self.blocks, key=sort_key)
        }


@dataclass(frozen=True)
class RefinementReport:
    holds: bool
    witnesses: tuple = ()
    diagnostics: tuple = ()

    def __bool__(self) -> bool:
        return self.holds

    @property
    def witness(self) -> PartitionWitness | None:
        return self.witnesses[0] if self.witnesses else None

    def to_dict(self) -> dict:
        return {
            "verdict": "holds" if self.holds else "fails",
            "blocks": [None if w is None else w.to_dict() for w in self.witnesses],
            "diagnostics": [
                {"code": d.code, "subject": d.subject, "message": d.message} for d in self.diagnostics
            ],
        }


def _abstract_labels(abstract: FiniteAutomaton) -> dict:
    table = defaultdict(set)
    for p, lam, q in abstract.transitions:
        table[p, q].add(lam)
    return table


def _matches(table, p, q, lam) -> bool:
    labels = table.get((p, q))
    return bool(labels) and (TAU in labels or lam in labels)


class _Search:
    """Backtracking over refined-state -> abstract-state assignments."""

    def __init__(self, abstract: FiniteAutomaton, refined: FiniteAutomaton, relaxed: bool):
        self.abstract = abstract
        self.refined = refined
        self.relaxed = relaxed
        self.table = _abstract_labels(abstract)
        self.abstract_states = abstract.sorted_states()
        self.order = self._variable_order()
        self.position = {q: k for k, q in enumerate(self.order)}
        # Each transition is checked once both endpoints are assigned, i.e.
        # when the later of the two in the variable order gets its value.
        self.checks = defaultdict(list)
        for t in refined.sorted_transitions():
            p, _, q = t
            if p in self.position and q in self.position:
                last = max(self.position[p], self.position[q])
                self.checks[self.order[last]].append(t)
        self.domains = {q: self._domain(q) for q in self.order}

    def _variable_order(self) -> list:
        refined = self.refined
        order = sorted(refined.initials & refined.states, key=sort_key)
        seen = set(order)
        neighbours = defaultdict(set)
        for p, _, q in refined.transitions:
            neighbours[p].add(q)
            neighbours[q].add(p)
        frontier = list(order)
        while frontier:
            nxt = []
            for p in frontier:
                for q in sorted(neighbours[p], key=sort_key):
                    if q not in seen and q in refined.states:
                        seen.add(q)
                        order.append(q)
                        nxt.append(q)
            frontier = nxt
        order.extend(q for q in refined.sorted_states() if q not in seen)
        return order

    def _domain(self, q) -> list:
        # Value order: a same-named abstract state first, then non-initial
        # states before initial ones, then by name.
        if q in self.refined.initials:
            values = [p for p in self.abstract_states if p in self.abstract.initials]
        else:
            values = list(self.abstract_states)
        return sorted(values, key=lambda p: (p != q, p in self.abstract.initials, sort_key(p)))

    def _ok(self, q, assignment) -> bool:
        for t in self.checks[q]:
            p_, lam, q_ = t
            if not _matches(self.table, assignment[p_], assignment[q_], lam):
                return False
        return True

    def _can_fill(self, depth, counts) -> bool:
        if self.relaxed:
            return True
        empty = sum(1 for p in self.abstract_states if counts[p] == 0)
        return empty <= len(self.order) - depth

    def find(self) -> dict | None:
        assignment = {}
        counts = {p: 0 for p in self.abstract_states}

        def go(depth):
            if depth == len(self.order):
                return self._can_fill(depth, counts)
            q = self.order[depth]
            for p in self.domains[q]:
                assignment[q] = p
                counts[p] += 1
                if self._can_fill(depth + 1, counts) and self._ok(q, assignment) and go(depth + 1):
                    return True
                counts[p] -= 1
                del assignment[q]
            return False

        if not self.abstract_states and self.order:
            return None
        return dict(assignment) if go(0) else None

    def best_effort(self) -> tuple[dict | None, list]:
        """Assignment (respecting partition and initial constraints) leaving
        the fewest transitions unmatched, and those transitions."""
        assignment = {}
        counts = {p: 0 for p in self.abstract_states}
        best = [None, None]

        def go(depth, unmatched):
            if best[1] is not None and len(unmatched) >= len(best[1]):
                return
            if depth == len(self.order):
                if self._can_fill(depth, counts):
                    best[0], best[1] = dict(assignment), list(unmatched)
                return
            q = self.order[depth]
            for p in self.domains[q]:
                assignment[q] = p
                counts[p] += 1
                if self._can_fill(depth + 1, counts):
                    missed = [
                        t for t in self.checks[q]
                        if not _matches(self.table, assignment[t[0]], assignment[t[2]], t[1])
                    ]
                    go(depth + 1, unmatched + missed)
                counts[p] -= 1
                del assignment[q]

        if self.abstract_states:
            go(0, [])
        return best[0], best[1] or []


def _alphabet_diagnostics(abstract, refined, component=None) -> list:
    where = f"component {component}: " if component is not None else ""
    return [
        Diagnostic("alphabet", f"{where}letter {a} of {abstract.name} is missing from {refined.name}", a)
        for a in sorted(abstract.alphabet.letters - refined.alphabet.letters)
    ]


def _transition_diag(t, component=None) -> Diagnostic:
    p, lam, q = t
    where = f"component {component}: " if component is not None else ""
    return Diagnostic("unmatched-transition", f"{where}refined transition ({p}, {lam}, {q}) has no matching abstract transition", f"({p},{lam},{q})")


def automaton_leq(abstract: FiniteAutomaton, refined: FiniteAutomaton, relaxed: bool = False, component: int | None = None) -> RefinementReport:
    """Decide ``abstract <= refined`` exactly, by exhaustive search."""
    diagnostics = _alphabet_diagnostics(abstract, refined, component)
    search = _Search(abstract, refined, relaxed)
    found = search.find()
    if found is not None and not diagnostics:
        return RefinementReport(True, (PartitionWitness.from_assignment(found, abstract.states),))
    if found is None:
        diagnostics.extend(_explain(search, component))
    return RefinementReport(False, (None,), tuple(diagnostics))


def _explain(search: _Search, component) -> list:
    where = f"component {component}: " if component is not None else ""
    abstract, refined = search.abstract, search.refined
    out = []
    if not abstract.states and refined.states:
        return [Diagnostic("no-abstract-states", f"{where}{abstract.name} has no states to index blocks", abstract.name)]
    stranded = sorted((q for q in refined.initials & refined.states if not search.domains[q]), key=sort_key)
    for q in stranded:
        out.append(Diagnostic("unmatched-initial", f"{where}refined initial state {q} has no abstract initial state to sit under", str(q)))
    if not search.relaxed and len(refined.states) < len(abstract.states):
        out.append(Diagnostic(
            "too-few-states",
            f"{where}{refined.name} has {len(refined.states)} states, fewer than the {len(abstract.states)} nonempty blocks required",
            refined.name,
        ))
    if out:
        return out
    best, unmatched = search.best_effort()
    if best is None:
        return [Diagnostic(
            "no-partition",
            f"{where}no placement of the states of {refined.name} fills every block while keeping initial states under initial ones",
            refined.name,
        )]
    return [_transition_diag(t, component) for t in sorted(unmatched, key=transition_key)]


def verify_witness(abstract: FiniteAutomaton, refined: FiniteAutomaton, witness: PartitionWitness, relaxed: bool = False) -> bool:
    """Check a proposed partition against the definition, independently of the search."""
    for p in witness.blocks:
        if p not in abstract.states:
            raise ValueError(f"witness indexes unknown abstract state {p!r}")
        for q in witness.blocks[p]:
            if q not in refined.states:
                raise ValueError(f"witness block of {p!r} holds unknown refined state {q!r}")
    if not abstract.alphabet.letters <= refined.alphabet.letters:
        return False
    blocks = {p: witness.blocks.get(p, frozenset()) for p in abstract.states}
    if not relaxed and any(not b for b in blocks.values()):
        return False
    owner = {}
    for p, block in blocks.items():
        for q in block:
            if q in owner:
                return False
            owner[q] = p
    if set(owner) != set(refined.states):
        return False
    for (p_, lam_, q_) in refined.transitions:
        p, q = owner[p_], owner[q_]
        if not any(src == p and dst == q and label_leq(lam, lam_) for (src, lam, dst) in abstract.transitions):
            return False
    return all(owner[q] in abstract.initials for q in refined.initials)


def system_leq(s: System, refined: System, relaxed: bool = False) -> RefinementReport:
    n, m = len(s.automata), len(refined.automata)
    diagnostics = []
    if n > m:
        diagnostics.append(Diagnostic("arity", f"abstract system has {n} components, refined only {m}", str(n)))
    witnesses = []
    for i, (a, b) in enumerate(zip(s.automata, refined.automata), 1):
        report = automaton_leq(a, b, relaxed, component=i)
        witnesses.append(report.witness)
        diagnostics.extend(report.diagnostics)
    for letter in sorted(s.alphabet.letters, key=label_key):
        J = s.sync_sets[letter]
        J2 = refined.sync_sets.get(letter, frozenset())
        if not J <= J2:
            missing = ",".join(str(i) for i in sorted(J - J2))
            diagnostics.append(Diagnostic("sync-set", f"J_{letter}: components {missing} synchronise on {letter} only in the abstract system", letter))
    holds = not diagnostics
    return RefinementReport(holds, tuple(witnesses), tuple(diagnostics))
