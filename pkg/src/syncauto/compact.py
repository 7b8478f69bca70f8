"""Compact automata: guarded transitions between sets of states.

A compact state denotes the set ``f(q)`` of elements of a universe ``X``;
a compact transition ``(q, guard, p)`` stands for every concrete
``(x, label, y)`` with ``x in f(q)``, ``y in f(p)`` and ``guard(x, label, y)``.
Compact self-loops only ever yield concrete self-loops.

Guards are quantifier-free formulas over the source element, the label and
the target element, built from the atoms below with ``&``, ``|`` and ``~``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .automaton import Alphabet, FiniteAutomaton, label_key, sort_key
from .errors import Diagnostic, ModelError


@dataclass(frozen=True, eq=True)
class ElementUniverse:
    """A named finite set of elements with optional per-element annotations.

    ``linked_letter``: the element broadcasts this letter (environment state
    ``[x]`` and letter ``x``). ``underlying_letter``: the letter an element
    stands for (``[[c]]`` carries ``c``). ``counterpart``: a partial
    involution pairing elements (``[c]`` with ``[[c]]``).
    """

    name: str
    elements: frozenset
    linked_letter: Mapping = field(default_factory=dict)
    underlying_letter: Mapping = field(default_factory=dict)
    counterpart: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "elements", frozenset(self.elements))
        for attr in ("linked_letter", "underlying_letter", "counterpart"):
            object.__setattr__(self, attr, dict(getattr(self, attr)))

    def __hash__(self):
        return hash((self.name, self.elements))

    def sorted_elements(self) -> list:
        return sorted(self.elements, key=sort_key)

    def diagnostics(self, alphabet: Alphabet | None = None) -> list[Diagnostic]:
        out = []
        if not self.elements:
            out.append(Diagnostic("empty-universe", f"set {self.name} is empty", self.name))
        for attr in ("linked_letter", "underlying_letter", "counterpart"):
            for x in sorted(set(getattr(self, attr)) - self.elements, key=sort_key):
                out.append(Diagnostic("dangling-annotation", f"set {self.name}: {attr} given for unknown element {x}", str(x)))
        for attr in ("linked_letter", "underlying_letter"):
            for x, letter in sorted(getattr(self, attr).items()):
                if alphabet is not None and letter not in alphabet:
                    out.append(Diagnostic("unknown-letter", f"set {self.name}: {x} refers to unknown letter {letter}", letter))
        for x, y in sorted(self.counterpart.items()):
            if y not in self.elements:
                out.append(Diagnostic("unknown-element", f"set {self.name}: counterpart {y} of {x} is not an element", str(y)))
            elif self.counterpart.get(y) != x:
                out.append(Diagnostic("counterpart-not-involution", f"set {self.name}: counterpart of {y} is not {x}", str(x)))
        return out


@dataclass(frozen=True)
class LabeledGraph:
    """Directed graph over a universe with edges labelled from ``labels``."""

    name: str
    universe: ElementUniverse
    labels: frozenset
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "labels", frozenset(self.labels))
        object.__setattr__(self, "edges", frozenset(tuple(e) for e in self.edges))

    def sorted_edges(self) -> list:
        return sorted(self.edges, key=lambda e: (sort_key(e[0]), label_key(e[1]), sort_key(e[2])))

    def diagnostics(self, alphabet: Alphabet | None = None) -> list[Diagnostic]:
        out = []
        for x, lam, y in self.sorted_edges():
            for end in (x, y):
                if end not in self.universe.elements:
                    out.append(Diagnostic("unknown-element", f"graph {self.name}: edge endpoint {end} not in {self.universe.name}", str(end)))
            if lam not in self.labels:
                out.append(Diagnostic("unknown-label", f"graph {self.name}: edge label {lam} not among its labels", lam))
        if alphabet is not None:
            for lam in sorted(self.labels - alphabet.with_tau):
                out.append(Diagnostic("unknown-letter", f"graph {self.name}: label {lam} outside the alphabet", lam))
        return out


class Guard:
    """Base class of guard formulas."""

    def __and__(self, other: "Guard") -> "Guard":
        return And(self, other)

    def __or__(self, other: "Guard") -> "Guard":
        return Or(self, other)

    def __invert__(self) -> "Guard":
        return Not(self)

    def holds(self, x, label: str, y, universe: ElementUniverse) -> bool:
        raise NotImplementedError

    def candidate_labels(self, x, y, universe: ElementUniverse, labels: frozenset) -> frozenset:
        """Labels that may satisfy the guard for (x, y): a superset, never smaller."""
        return labels

    def atoms(self):
        yield self


@dataclass(frozen=True)
class TrueGuard(Guard):
    def holds(self, x, label, y, universe):
        return True

    def __str__(self):
        return "true"


@dataclass(frozen=True)
class LabelIs(Guard):
    label: str

    def holds(self, x, label, y, universe):
        return label == self.label

    def candidate_labels(self, x, y, universe, labels):
        return labels & {self.label}

    def __str__(self):
        return f"label {self.label}"


@dataclass(frozen=True)
class LabelIsSourceName(Guard):
    """The label is the letter linked to the source element."""

    def holds(self, x, label, y, universe):
        linked = universe.linked_letter.get(x)
        return linked is not None and label == linked

    def candidate_labels(self, x, y, universe, labels):
        linked = universe.linked_letter.get(x)
        return labels & {linked} if linked is not None else frozenset()

    def __str__(self):
        return "label src.name"


@dataclass(frozen=True)
class LabelIsSourceUnderlying(Guard):
    def holds(self, x, label, y, universe):
        under = universe.underlying_letter.get(x)
        return under is not None and label == under

    def candidate_labels(self, x, y, universe, labels):
        under = universe.underlying_letter.get(x)
        return labels & {under} if under is not None else frozenset()

    def __str__(self):
        return "label src.under"


@dataclass(frozen=True)
class TargetIsCounterpart(Guard):
    def holds(self, x, label, y, universe):
        return x in universe.counterpart and universe.counterpart[x] == y

    def candidate_labels(self, x, y, universe, labels):
        return labels if self.holds(x, None, y, universe) else frozenset()

    def __str__(self):
        return "target counterpart"


@dataclass(frozen=True)
class SourceIs(Guard):
    element: str

    def holds(self, x, label, y, universe):
        return x == self.element

    def candidate_labels(self, x, y, universe, labels):
        return labels if x == self.element else frozenset()

    def __str__(self):
        return f"src {self.element}"


@dataclass(frozen=True)
class TargetIs(Guard):
    element: str

    def holds(self, x, label, y, universe):
        return y == self.element

    def candidate_labels(self, x, y, universe, labels):
        return labels if y == self.element else frozenset()

    def __str__(self):
        return f"target {self.element}"


@dataclass(frozen=True)
class EdgeIn(Guard):
    graph: LabeledGraph

    def holds(self, x, label, y, universe):
        return (x, label, y) in self.graph.edges

    def candidate_labels(self, x, y, universe, labels):
        return labels & {lam for (u, lam, v) in self.graph.edges if u == x and v == y}

    def __str__(self):
        return f"edge {self.graph.name}"


@dataclass(frozen=True)
class And(Guard):
    left: Guard
    right: Guard

    def holds(self, x, label, y, universe):
        return self.left.holds(x, label, y, universe) and self.right.holds(x, label, y, universe)

    def candidate_labels(self, x, y, universe, labels):
        first = self.left.candidate_labels(x, y, universe, labels)
        return self.right.candidate_labels(x, y, universe, first) if first else first

    def atoms(self):
        yield from self.left.atoms()
        yield from self.right.atoms()

    def __str__(self):
        return f"{_wrap(self.left, And)} & {_wrap(self.right, And, right=True)}"


@dataclass(frozen=True)
class Or(Guard):
    left: Guard
    right: Guard

    def holds(self, x, label, y, universe):
        return self.left.holds(x, label, y, universe) or self.right.holds(x, label, y, universe)

    def candidate_labels(self, x, y, universe, labels):
        return self.left.candidate_labels(x, y, universe, labels) | self.right.candidate_labels(x, y, universe, labels)

    def atoms(self):
        yield from self.left.atoms()
        yield from self.right.atoms()

    def __str__(self):
        return f"{_wrap(self.left, Or)} | {_wrap(self.right, Or, right=True)}"


@dataclass(frozen=True)
class Not(Guard):
    inner: Guard

    def holds(self, x, label, y, universe):
        return not self.inner.holds(x, label, y, universe)

    def atoms(self):
        yield from self.inner.atoms()

    def __str__(self):
        inner = str(self.inner)
        return f"!{inner}" if isinstance(self.inner, Not) else f"!({inner})"


def _wrap(g: Guard, parent: type, right: bool = False) -> str:
    # "&" binds tighter than "|" and both associate to the left.
    if isinstance(g, Or) and (parent is And or right):
        return f"({g})"
    if isinstance(g, And) and parent is And and right:
        return f"({g})"
    return str(g)


def eval_guard(guard: Guard, x, label: str, y, universe: ElementUniverse) -> bool:
    return guard.holds(x, label, y, universe)


@dataclass(frozen=True)
class CompactAutomaton:
    name: str
    alphabet: Alphabet
    universe: ElementUniverse
    images: Mapping
    transitions: tuple
    initials: frozenset

    def __post_init__(self):
        if not isinstance(self.alphabet, Alphabet):
            object.__setattr__(self, "alphabet", Alphabet(frozenset(self.alphabet)))
        object.__setattr__(self, "images", {q: frozenset(v) for q, v in dict(self.images).items()})
        uniq = {}
        for t in self.transitions:
            uniq.setdefault(tuple(t), None)
        object.__setattr__(self, "transitions", tuple(sorted(uniq, key=lambda t: (sort_key(t[0]), str(t[1]), sort_key(t[2])))))
        object.__setattr__(self, "initials", frozenset(self.initials))

    def __hash__(self):
        return hash((self.name, self.transitions, self.initials))

    @property
    def compact_states(self) -> list:
        return sorted(self.images, key=sort_key)

    @property
    def unfolded_states(self) -> frozenset:
        return frozenset().union(*self.images.values()) if self.images else frozenset()


def validate_compact(c: CompactAutomaton) -> list[Diagnostic]:
    out = list(c.universe.diagnostics(c.alphabet))
    for q in c.compact_states:
        image = c.images[q]
        if not image:
            out.append(Diagnostic("empty-image", f"{c.name}: compact state {q} has an empty image", str(q)))
        for x in sorted(image - c.universe.elements, key=sort_key):
            out.append(Diagnostic("unknown-element", f"{c.name}: image of {q} contains {x}, not in {c.universe.name}", str(x)))
    for x in sorted(c.initials - c.unfolded_states, key=sort_key):
        out.append(Diagnostic("initial-outside-images", f"{c.name}: initial element {x} lies in no image", str(x)))
    if not c.initials:
        out.append(Diagnostic("empty-initials", f"{c.name}: empty initial set", c.name))
    labels = c.alphabet.with_tau
    seen_graphs = set()
    for q, guard, p in c.transitions:
        for end in (q, p):
            if end not in c.images:
                out.append(Diagnostic("unknown-compact-state", f"{c.name}: transition uses unknown compact state {end}", str(end)))
        source = c.images.get(q, frozenset())
        for atom in guard.atoms():
            if isinstance(atom, LabelIs) and atom.label not in labels:
                out.append(Diagnostic("unknown-letter", f"{c.name}: guard mentions unknown label {atom.label}", atom.label))
            elif isinstance(atom, (SourceIs, TargetIs)) and atom.element not in c.universe.elements:
                out.append(Diagnostic("unknown-element", f"{c.name}: guard mentions unknown element {atom.element}", atom.element))
            elif isinstance(atom, EdgeIn):
                g = atom.graph
                if g.universe.name != c.universe.name or not g.universe.elements <= c.universe.elements:
                    out.append(Diagnostic("graph-universe", f"{c.name}: graph {g.name} is not over {c.universe.name}", g.name))
                if g.name not in seen_graphs:
                    seen_graphs.add(g.name)
                    out.extend(g.diagnostics(c.alphabet))
            else:
                table = {
                    LabelIsSourceName: c.universe.linked_letter,
                    LabelIsSourceUnderlying: c.universe.underlying_letter,
                    TargetIsCounterpart: c.universe.counterpart,
                }.get(type(atom))
                if table is None:
                    continue
                for x in sorted(source - set(table), key=sort_key):
                    out.append(Diagnostic(
                        "missing-annotation",
                        f"{c.name}: '{atom}' used from {q} but element {x} has no such annotation",
                        str(x), severity="warning",
                    ))
    return out


def unfold(c: CompactAutomaton) -> FiniteAutomaton:
    """Expand ``c`` into the plain automaton over the union of its images."""
    errors = [d for d in validate_compact(c) if d.severity == "error"]
    if errors:
        raise ModelError(errors)
    labels = c.alphabet.with_tau
    u = c.universe
    delta = set()
    for q, guard, p in c.transitions:
        if q != p:
            pairs = ((x, y) for x in c.images[q] for y in c.images[p])
        else:
            pairs = ((x, x) for x in c.images[q])
        for x, y in pairs:
            for lam in guard.candidate_labels(x, y, u, labels):
                if guard.holds(x, lam, y, u):
                    delta.add((x, lam, y))
    return FiniteAutomaton(c.name, c.alphabet, c.unfolded_states, delta, c.initials)
