"""The stress-theory model, stage by stage, plus the small worked examples.

Stages 1-3 are fixed. Stages 4-7 are parametric in the environment
``(X, G_tau)``, the coping strategies ``(C, G_X)`` and, for stage 7, the
commitment functions ``(Phi, G_Phi)``; :func:`money_params` is the one
concrete instantiation shipped here.

Naming: ``s``/``nostress`` are the two primary-appraisal outcomes, ``g``/``b``
the good/bad secondary-appraisal outcomes. Environment elements are
bracketed (``[x_lt1000]``) and broadcast the unbracketed letter. Coping
states are ``rho`` (rest), ``[c]`` (evaluating strategy ``c``) and ``[[c]]``
(engaging in ``c``).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from .automaton import TAU, Alphabet, FiniteAutomaton, sort_key
from .compact import (
    CompactAutomaton, EdgeIn, ElementUniverse, LabeledGraph, LabelIs, LabelIsSourceName,
    LabelIsSourceUnderlying, TargetIsCounterpart,
)
from .document import ModelDocument
from .errors import Diagnostic, ModelError
from .system import System
from .traces import Trace

STRESS, NO_STRESS, GOOD, BAD = "s", "nostress", "g", "b"


@dataclass(frozen=True)
class StageParams:
    environment: ElementUniverse
    coping: frozenset
    commitments: ElementUniverse
    g_tau: LabeledGraph
    g_x: LabeledGraph
    g_phi: LabeledGraph
    x0: str
    phi0: str
    commitment_table: Mapping = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "coping", frozenset(self.coping))
        object.__setattr__(self, "commitment_table", dict(self.commitment_table))

    def diagnostics(self) -> list[Diagnostic]:
        out = []
        X, Phi = self.environment, self.commitments
        for graph, universe, labels in (
            (self.g_tau, X, {TAU}),
            (self.g_x, X, self.coping),
            (self.g_phi, Phi, self.coping),
        ):
            if graph.universe != universe:
                out.append(Diagnostic("graph-universe", f"graph {graph.name} must be over {universe.name}", graph.name))
            extra = {lam for _, lam, _ in graph.edges} - set(labels)
            if extra:
                out.append(Diagnostic("graph-labels", f"graph {graph.name} uses labels {sorted(extra)}", graph.name))
            out.extend(graph.diagnostics())
        if self.x0 not in X.elements:
            out.append(Diagnostic("unknown-element", f"initial environment {self.x0} not in {X.name}", self.x0))
        if self.phi0 not in Phi.elements:
            out.append(Diagnostic("unknown-element", f"initial commitment {self.phi0} not in {Phi.name}", self.phi0))
        missing = sorted(x for x in X.elements if x not in X.linked_letter)
        if missing:
            out.append(Diagnostic("missing-annotation", f"environment elements without a letter: {missing}", missing[0]))
        return out

    def env_letter(self, x: str) -> str:
        return self.environment.linked_letter[x]


def money_params() -> StageParams:
    """Two bank-balance states, saving (c1) and devaluing money (c2)."""
    hi, lo = "[x_ge1000]", "[x_lt1000]"
    X = ElementUniverse("X", [hi, lo], linked_letter={hi: "x_ge1000", lo: "x_lt1000"})
    phi, inv, one, zero = "phi", "one_minus_phi", "one", "zero"
    Phi = ElementUniverse("Phi", [phi, inv, one, zero])
    g_tau = LabeledGraph("Gtau", X, {TAU}, [(hi, TAU, lo), (lo, TAU, lo)])
    g_x = LabeledGraph("GX", X, {"c1", "c2"}, [
        (lo, "c1", lo), (lo, "c1", hi), (hi, "c1", hi), (lo, "c2", lo), (hi, "c2", hi),
    ])
    g_phi = LabeledGraph("GPhi", Phi, {"c1", "c2"}, [
        (phi, "c2", phi), (phi, "c2", one), (one, "c2", one), (phi, "c1", phi), (one, "c1", one),
    ])
    table = {
        (phi, hi): 1, (phi, lo): 0,
        (inv, hi): 0, (inv, lo): 1,
        (one, hi): 1, (one, lo): 1,
        (zero, hi): 0, (zero, lo): 0,
    }
    return StageParams(X, {"c1", "c2"}, Phi, g_tau, g_x, g_phi, hi, phi, table)


def stressed(x: str, phi: str, params: StageParams) -> bool:
    """Stressed in ``(x, phi)`` exactly when the commitment maps ``x`` to 0."""
    if x not in params.environment.elements:
        raise ValueError(f"unknown environment element {x!r}")
    if phi not in params.commitments.elements:
        raise ValueError(f"unknown commitment {phi!r}")
    return params.commitment_table[phi, x] == 0


@dataclass(frozen=True)
class Stage:
    index: int
    document: ModelDocument
    system: System
    notes: tuple = ()


def _plain(name, alphabet, states, transitions, initials):
    return FiniteAutomaton(name, alphabet, states, transitions, initials)


def _appraisal(name, alphabet, awake="a", letters=(), tau_loop=True):
    """Cognitive appraisal with a single awake state."""
    t = [("na", TAU, awake), (awake, TAU, "na")]
    if tau_loop:
        t.append((awake, TAU, awake))
    t += [(awake, lam, awake) for lam in letters]
    return _plain(name, alphabet, ["na", awake], t, ["na"])


def _split_appraisal(name, alphabet, x_letters):
    t = [
        ("na", TAU, "pa"), ("pa", TAU, "na"), ("pa", STRESS, "sa"),
        ("sa", GOOD, "pa"), ("sa", BAD, "pa"), ("pa", NO_STRESS, "pa"),
    ]
    t += [("pa", x, "pa") for x in x_letters]
    return _plain(name, alphabet, ["na", "pa", "sa"], t, ["na"])


def _stress_calc(name, alphabet):
    return _plain(name, alphabet, ["f"], [("f", STRESS, "f"), ("f", NO_STRESS, "f"), ("f", TAU, "f")], ["f"])


def _environment(name, alphabet, params, with_coping, states=("[x]", "[y]")):
    src, dst = states
    X = params.environment
    trans = [(src, LabelIsSourceName(), src), (src, EdgeIn(params.g_tau), dst)]
    if with_coping:
        trans.append((src, EdgeIn(params.g_x), dst))
    return CompactAutomaton(name, alphabet, X, {src: X.elements, dst: X.elements}, trans, [params.x0])


def coping_universe(coping) -> ElementUniverse:
    evaluate = {c: f"[{c}]" for c in coping}
    engage = {c: f"[[{c}]]" for c in coping}
    under, pair = {}, {}
    for c in coping:
        under[evaluate[c]] = c
        under[engage[c]] = c
        pair[evaluate[c]] = engage[c]
        pair[engage[c]] = evaluate[c]
    return ElementUniverse("Cop", ["rho", *evaluate.values(), *engage.values()], underlying_letter=under, counterpart=pair)


def _secondary_coping(name, alphabet, coping):
    U = coping_universe(coping)
    evaluate = frozenset(f"[{c}]" for c in coping)
    engage = frozenset(f"[[{c}]]" for c in coping)
    images = {"rho": {"rho"}, "[c]": evaluate, "[[c]]": engage}
    trans = [
        ("rho", LabelIs(STRESS), "[c]"),
        ("[c]", LabelIs(BAD), "rho"),
        ("[c]", TargetIsCounterpart() & LabelIs(GOOD), "[[c]]"),
        ("[[c]]", LabelIsSourceUnderlying(), "rho"),
        ("rho", LabelIs(NO_STRESS), "rho"),
    ]
    return CompactAutomaton(name, alphabet, U, images, trans, ["rho"])


def _internal(name, alphabet, params):
    Phi = params.commitments
    images = {"[phi]": Phi.elements, "[phi']": Phi.elements}
    return CompactAutomaton(name, alphabet, Phi, images, [("[phi]", EdgeIn(params.g_phi), "[phi']")], [params.phi0])


_NOTES = {
    1: ("a single universe state with unspecified activity",),
    2: ("cognitive appraisal happens only while awake",),
    3: ("a stress calculator synchronising with appraisal on s and nostress",),
    4: ("an environment broadcasting its state while the person appraises",),
    5: ("a coping automaton instructing the environment after a stress appraisal",),
    6: ("appraisal split into primary (pa) and secondary (sa); coping refined into [c] and [[c]] states",
        "the appraisal state pa carries no tau-loop at this stage"),
    7: ("an internal-parameters automaton over commitment functions, moved by coping letters",),
}


def stage_document(k: int, params: StageParams | None = None) -> ModelDocument:
    if k not in range(1, 8):
        raise ValueError(f"stages run from 1 to 7, not {k}")
    if k >= 4:
        if params is None:
            raise ValueError(f"stage {k} needs parameters (e.g. money_params())")
        problems = params.diagnostics()
        if problems:
            raise ModelError(problems)
    n = lambda i: f"A{k}_{i}"

    if k == 1:
        sigma = Alphabet()
        members = [_plain(n(1), sigma, ["uni"], [("uni", TAU, "uni")], ["uni"])]
        return _doc(sigma, members)
    if k == 2:
        sigma = Alphabet()
        members = [_plain(n(1), sigma, ["non-awake", "appraisal"], [
            ("non-awake", TAU, "appraisal"), ("appraisal", TAU, "appraisal"), ("appraisal", TAU, "non-awake"),
        ], ["non-awake"])]
        return _doc(sigma, members)
    if k == 3:
        sigma = Alphabet({STRESS, NO_STRESS})
        return _doc(sigma, [_appraisal(n(1), sigma, letters=(STRESS, NO_STRESS)), _stress_calc(n(2), sigma)])

    X = params.environment
    x_letters = sorted(X.linked_letter[x] for x in X.elements)
    coping = sorted(params.coping)
    letters = {STRESS, NO_STRESS, *x_letters}
    sets = {X.name: X}
    graphs = {params.g_tau.name: params.g_tau}
    if k >= 5:
        letters |= set(coping)
        graphs[params.g_x.name] = params.g_x
    if k >= 6:
        letters |= {GOOD, BAD}
    sigma = Alphabet(letters)

    if k == 4:
        members = [
            _appraisal(n(1), sigma, letters=(STRESS, NO_STRESS, *x_letters)),
            _stress_calc(n(2), sigma),
            _environment(n(3), sigma, params, with_coping=False),
        ]
    elif k == 5:
        coping_t = [("rho", STRESS, "[C]"), ("rho", NO_STRESS, "rho")] + [("[C]", c, "rho") for c in coping]
        members = [
            _appraisal(n(1), sigma, letters=(STRESS, NO_STRESS, *x_letters)),
            _stress_calc(n(2), sigma),
            _environment(n(3), sigma, params, with_coping=True),
            _plain(n(4), sigma, ["rho", "[C]"], coping_t, ["rho"]),
        ]
    else:
        members = [
            _split_appraisal(n(1), sigma, x_letters),
            _stress_calc(n(2), sigma),
            _environment(n(3), sigma, params, with_coping=True, states=("[x]", "[z]")),
            _secondary_coping(n(4), sigma, coping),
        ]
        sets["Cop"] = members[3].universe
        if k == 7:
            members.append(_internal(n(5), sigma, params))
            sets[params.commitments.name] = params.commitments
            graphs[params.g_phi.name] = params.g_phi
    return _doc(sigma, members, sets, graphs)


def _doc(sigma, members, sets=None, graphs=None) -> ModelDocument:
    return ModelDocument(sigma, sets or {}, graphs or {}, {a.name: a for a in members}, [a.name for a in members])


def stage(k: int, params: StageParams | None = None) -> Stage:
    doc = stage_document(k, params)
    return Stage(k, doc, doc.build_system(), _NOTES[k])


# ---------------------------------------------------------------- executions

def _pick_edge(graph: LabeledGraph, source: str, labels=None):
    """An edge out of ``source``, preferring ones that change the state."""
    edges = [e for e in graph.sorted_edges() if e[0] == source and (labels is None or e[1] in labels)]
    if not edges:
        raise ValueError(f"graph {graph.name} has no edge out of {source}")
    return min(edges, key=lambda e: (e[2] == source, e[1], sort_key(e[2])))


def trace_bindings(k: int, params: StageParams) -> dict:
    """Concrete elements standing for the generic x0, x1, c, c1, c2 of the executions."""
    x0 = params.x0
    if k == 4:
        _, _, x1 = _pick_edge(params.g_tau, x0)
        return {"x0": x0, "x1": x1}
    if k == 5:
        _, c, x1 = _pick_edge(params.g_x, x0)
        return {"x0": x0, "x1": x1, "c": c}
    if k == 6:
        _, good, x1 = _pick_edge(params.g_x, x0)
        others = sorted(params.coping - {good})
        if not others:
            raise ValueError("the stage-6 execution needs at least two coping strategies")
        return {"x0": x0, "x1": x1, "c1": others[0], "c2": good}
    return {}


def stage_executions(k: int, params: StageParams | None = None) -> list[Trace]:
    """The worked executions of stages 3-6, bound to ``params`` (money by default)."""
    if k == 3:
        return [Trace.from_alternating([
            ("na", "f"), TAU, ("a", "f"), STRESS, ("a", "f"), NO_STRESS, ("a", "f"), TAU, ("na", "f"),
        ])]
    if k not in (4, 5, 6):
        raise ValueError("executions exist for stages 3 to 6")
    params = params or money_params()
    b = trace_bindings(k, params)
    x0, x1 = b["x0"], b["x1"]
    l0, l1 = params.env_letter(x0), params.env_letter(x1)
    if k == 4:
        items = [
            ("na", "f", x0), TAU, ("a", "f", x0), l0, ("a", "f", x0), STRESS, ("a", "f", x0),
            TAU, ("a", "f", x1), l1, ("a", "f", x1), NO_STRESS, ("a", "f", x1),
        ]
    elif k == 5:
        c = b["c"]
        items = [
            ("na", "f", x0, "rho"), TAU, ("a", "f", x0, "rho"), l0, ("a", "f", x0, "rho"),
            STRESS, ("a", "f", x0, "[C]"), c, ("a", "f", x1, "rho"), l1, ("a", "f", x1, "rho"),
            NO_STRESS, ("a", "f", x1, "rho"),
        ]
    else:
        c1, c2 = b["c1"], b["c2"]
        items = [
            ("na", "f", x0, "rho"), TAU, ("pa", "f", x0, "rho"), l0, ("pa", "f", x0, "rho"),
            STRESS, ("sa", "f", x0, f"[{c1}]"), BAD, ("pa", "f", x0, "rho"),
            STRESS, ("sa", "f", x0, f"[{c2}]"), GOOD, ("pa", "f", x0, f"[[{c2}]]"),
            c2, ("pa", "f", x1, "rho"), l1, ("pa", "f", x1, "rho"), NO_STRESS, ("pa", "f", x1, "rho"),
        ]
    return [Trace.from_alternating(items)]


# ---------------------------------------------------------------- small examples

def example_rendezvous() -> ModelDocument:
    """Three automata: ``a`` shared by the first two, ``b`` private to the third."""
    sigma = Alphabet({"a", "b"})
    a1 = _plain("A1", sigma, ["q1", "q2"], [("q1", "a", "q2"), ("q2", TAU, "q1"), ("q2", TAU, "q2")], ["q1"])
    a2 = _plain("A2", sigma, ["p"], [("p", "a", "p")], ["p"])
    a3 = _plain("A3", sigma, ["r"], [("r", "b", "r"), ("r", TAU, "r")], ["r"])
    return _doc(sigma, [a1, a2, a3])


def example_rendezvous_traces() -> list[Trace]:
    g1, g2 = ("q1", "p", "r"), ("q2", "p", "r")
    return [
        Trace.from_alternating([g1, "a", g2, "b", g2, TAU, g2, TAU, g1, TAU, g1]),
        Trace.from_alternating([g1, "b", g1, "a", g2, "b", g2, TAU, g2]),
    ]


def example_unfolding(elements=("x0", "x1", "x2")) -> ModelDocument:
    """Two compact states over all of X: ``a`` across, ``b`` on a loop."""
    sigma = Alphabet({"a", "b"})
    X = ElementUniverse("X", elements)
    c = CompactAutomaton("Ct1", sigma, X, {"q": X.elements, "p": X.elements},
                         [("q", LabelIs("a"), "p"), ("q", LabelIs("b"), "q")], [elements[0]])
    return ModelDocument(sigma, {"X": X}, {}, {"Ct1": c}, ["Ct1"])


def example_graph_transition() -> ModelDocument:
    sigma = Alphabet({"a", "b"})
    X = ElementUniverse("X", ["x0", "x1", "x2"])
    G = LabeledGraph("G", X, {"a", "b"}, [("x0", "a", "x1"), ("x0", "b", "x2"), ("x1", "b", "x1")])
    c = CompactAutomaton("Ct2", sigma, X, {"x": X.elements, "y": X.elements}, [("x", EdgeIn(G), "y")], ["x0"])
    return ModelDocument(sigma, {"X": X}, {"G": G}, {"Ct2": c}, ["Ct2"])


def example_refinement() -> tuple[ModelDocument, ModelDocument]:
    """An abstract two-state automaton and a five-state refinement of it."""
    abstract = _plain("Ai", Alphabet({"a"}), ["q1", "q2"],
                      [("q1", TAU, "q2"), ("q2", "a", "q1"), ("q1", TAU, "q1")], ["q1"])
    refined = _plain("Aj", Alphabet({"a", "b", "c"}), ["p1", "p2", "p3", "p4", "p5"],
                     [("p1", TAU, "p2"), ("p2", "b", "p4"), ("p5", "a", "p1"), ("p2", "c", "p2")], ["p1"])
    return _doc(abstract.alphabet, [abstract]), _doc(refined.alphabet, [refined])


def corpus_documents(params: StageParams | None = None) -> dict:
    """Every shipped document keyed by file stem."""
    params = params or money_params()
    docs = {f"stage{k}": stage_document(k, params) for k in range(1, 8)}
    docs["rendezvous"] = example_rendezvous()
    docs["unfolding"] = example_unfolding()
    docs["graph_transition"] = example_graph_transition()
    docs["refinement_abstract"], docs["refinement_refined"] = example_refinement()
    return docs


CORPUS_VERSION = "v1"


def shipped_documents() -> dict:
    """The documents packaged under ``corpus_data``, parsed, keyed by file stem."""
    from importlib.resources import files

    from .document import parse_document

    root = files("syncauto").joinpath("corpus_data", CORPUS_VERSION)
    return {
        p.name.removesuffix(".model"): parse_document(p.read_text(encoding="utf-8"))
        for p in root.iterdir() if p.name.endswith(".model")
    }
