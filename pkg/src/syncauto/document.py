"""Line-oriented text format for alphabets, sets, graphs, automata and systems.

Example::

    format 1
    alphabet { s nostress }
    set X {
      [hi]:letter=hi
      [lo]:letter=lo
    }
    graph Gtau over X labels { tau } {
      [hi] -tau-> [lo]
    }
    automaton A1 {
      states { na* a }
      trans {
        na -tau-> a
      }
    }
    compact Env over X {
      cstate [x] = X;
      init { [hi] };
      ctrans [x] -[label src.name]-> [x];
      ctrans [x] -[edge Gtau]-> [x];
    }
    system { A1 Env }

``*`` marks initial states. Set elements take annotations after colons:
``:letter=NAME`` (``:letter`` alone strips one pair of brackets from the
element name), ``:under=NAME`` and ``:pair=ELEMENT``. Guards combine
``label NAME``, ``label src.name``, ``label src.under``,
``target counterpart``, ``src ELT``, ``target ELT``, ``edge GRAPH`` and
``true`` with ``!``, ``&``, ``|`` and parentheses.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Mapping

from .automaton import TAU, Alphabet, FiniteAutomaton, is_letter_name, label_key, sort_key, transition_key
from .compact import (
    And, CompactAutomaton, EdgeIn, ElementUniverse, Guard, LabeledGraph, LabelIs, LabelIsSourceName,
    LabelIsSourceUnderlying, Not, Or, SourceIs, TargetIs, TargetIsCounterpart, TrueGuard, unfold,
)
from .system import System

FORMAT_VERSION = 1


@dataclass(frozen=True)
class ParseError:
    code: str  # syntax | unresolved | duplicate | missing-system | version
    line: int
    column: int
    message: str

    def __str__(self):
        return f"{self.line}:{self.column}: {self.code}: {self.message}"


class DocumentError(ValueError):
    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("\n".join(str(e) for e in self.errors))


@dataclass(frozen=True)
class ModelDocument:
    alphabet: Alphabet
    sets: Mapping = field(default_factory=dict)
    graphs: Mapping = field(default_factory=dict)
    automata: Mapping = field(default_factory=dict)
    system: tuple = ()
    format_version: int = FORMAT_VERSION

    def __post_init__(self):
        if not isinstance(self.alphabet, Alphabet):
            object.__setattr__(self, "alphabet", Alphabet(frozenset(self.alphabet)))
        for attr in ("sets", "graphs", "automata"):
            object.__setattr__(self, attr, dict(getattr(self, attr)))
        object.__setattr__(self, "system", tuple(self.system))

    def plain(self, name: str) -> FiniteAutomaton:
        """The named member as a plain automaton, unfolding compact ones."""
        a = self.automata[name]
        return unfold(a) if isinstance(a, CompactAutomaton) else a

    def build_system(self) -> System:
        missing = [n for n in self.system if n not in self.automata]
        if missing:
            raise KeyError(f"unknown automata in system: {', '.join(missing)}")
        return System(tuple(self.plain(n) for n in self.system), self.alphabet)


# ---------------------------------------------------------------- lexer

_NAME = r"[^\s{};=()#*:,&|!\-][^\s{};=()#*:,&|!]*"
_TOKEN_RE = re.compile(
    rf"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<arrow>-(?P<alabel>[A-Za-z_][A-Za-z0-9_']*)->)
  | (?P<gopen>-\[)
  | (?P<punct>[{{}};=()*:,&|!])
  | (?P<name>{_NAME})
    """,
    re.VERBOSE,
)


@dataclass
class _Tok:
    kind: str
    value: str
    line: int
    col: int


class _Syntax(Exception):
    def __init__(self, line, col, message):
        self.err = ParseError("syntax", line, col, message)


def _lex(text: str) -> list[_Tok]:
    toks = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        m = _TOKEN_RE.match(text, pos)
        col = pos - line_start + 1
        if not m:
            raise _Syntax(line, col, f"unexpected character {text[pos]!r}")
        kind = m.lastgroup
        if kind == "alabel":
            kind = "arrow"
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "arrow":
            toks.append(_Tok("arrow", m.group("alabel"), line, col))
        elif kind == "gopen":
            # guard body runs to the "]->" closing the bracket opened here
            depth, k = 1, m.end()
            while k < n:
                ch = text[k]
                if ch == "\n":
                    raise _Syntax(line, col, "guard arrow not closed on its line")
                if ch == "[":
                    depth += 1
                elif ch == "]":
                    depth -= 1
                    if depth == 0:
                        break
                k += 1
            if k >= n or text[k + 1:k + 3] != "->":
                raise _Syntax(line, col, "guard arrow must end with ']->'")
            toks.append(_Tok("guard", text[m.end():k], line, col + 2))
            pos = k + 3
            continue
        elif kind in ("punct", "name"):
            toks.append(_Tok(kind, m.group(kind), line, col))
        pos = m.end()
    toks.append(_Tok("eof", "", line, pos - line_start + 1))
    return toks


# ---------------------------------------------------------------- guards

_GUARD_TOKEN = re.compile(r"\s*(?:(?P<op>[()&|!])|(?P<word>[^\s()&|!]+))")


def parse_guard(text: str, graphs: Mapping, line: int = 1, col: int = 1, unresolved: list | None = None) -> Guard:
    """Parse guard concrete syntax; unknown graph names go to ``unresolved``."""
    toks = []
    pos = 0
    while pos < len(text):
        m = _GUARD_TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise _Syntax(line, col + pos, f"bad guard text {text[pos:]!r}")
        start = m.start(m.lastgroup)
        toks.append((m.group(m.lastgroup), col + start))
        pos = m.end()
    toks.append(("", col + len(text)))
    k = 0

    def peek():
        return toks[k][0]

    def take(expected=None):
        nonlocal k
        tok, c = toks[k]
        if expected is not None and tok != expected:
            raise _Syntax(line, c, f"expected {expected!r} in guard, found {tok or 'end'!r}")
        if tok == "":
            raise _Syntax(line, c, "guard ends too early")
        k += 1
        return tok, c

    def disj():
        g = conj()
        while peek() == "|":
            take()
            g = Or(g, conj())
        return g

    def conj():
        g = unary()
        while peek() == "&":
            take()
            g = And(g, unary())
        return g

    def unary():
        if peek() == "!":
            take()
            return Not(unary())
        if peek() == "(":
            take()
            g = disj()
            take(")")
            return g
        return atom()

    def atom():
        word, c = take()
        if word == "true":
            return TrueGuard()
        if word not in ("label", "target", "src", "edge"):
            raise _Syntax(line, c, f"unknown guard atom {word!r}")
        arg, c2 = take()
        if arg in "()&|!":
            raise _Syntax(line, c2, f"{word} needs an argument")
        if word == "label":
            if arg == "src.name":
                return LabelIsSourceName()
            if arg == "src.under":
                return LabelIsSourceUnderlying()
            if arg != TAU and not is_letter_name(arg):
                raise _Syntax(line, c2, f"bad label name {arg!r}")
            return LabelIs(arg)
        if word == "target":
            return TargetIsCounterpart() if arg == "counterpart" else TargetIs(arg)
        if word == "src":
            return SourceIs(arg)
        if arg not in graphs:
            if unresolved is not None:
                unresolved.append(ParseError("unresolved", line, c2, f"undeclared graph {arg}"))
            return EdgeIn(LabeledGraph(arg, ElementUniverse(arg, ()), (), ()))
        return EdgeIn(graphs[arg])

    g = disj()
    if peek() != "":
        raise _Syntax(line, toks[k][1], f"unexpected {peek()!r} in guard")
    return g


# ---------------------------------------------------------------- parser

class _Parser:
    def __init__(self, toks):
        self.toks = toks
        self.k = 0
        self.errors = []
        self.alphabet = None
        self.sets, self.graphs, self.automata = {}, {}, {}
        self.system = None
        self.version = FORMAT_VERSION

    @property
    def tok(self):
        return self.toks[self.k]

    def take(self, kind=None, value=None):
        t = self.tok
        if (kind and t.kind != kind) or (value is not None and t.value != value):
            want = repr(value) if value is not None else kind
            raise _Syntax(t.line, t.col, f"expected {want}, found {t.value or t.kind!r}")
        self.k += 1
        return t

    def at(self, value):
        return self.tok.kind == "punct" and self.tok.value == value

    def name(self, what="name"):
        t = self.tok
        if t.kind != "name":
            raise _Syntax(t.line, t.col, f"expected {what}, found {t.value or t.kind!r}")
        self.k += 1
        return t

    def letter(self):
        t = self.name("letter")
        if not is_letter_name(t.value):
            raise _Syntax(t.line, t.col, f"bad letter name {t.value!r}")
        return t

    def names_block(self, allow_star=False):
        self.take("punct", "{")
        out = []
        while not self.at("}"):
            t = self.name()
            star = False
            if allow_star and self.at("*"):
                self.take()
                star = True
            out.append((t, star))
        self.take("punct", "}")
        return out

    def semi(self):
        if self.at(";"):
            self.take()

    def duplicate(self, table, t, kind):
        if t.value in table:
            self.errors.append(ParseError("duplicate", t.line, t.col, f"duplicate {kind} {t.value}"))
            return True
        return False

    def parse(self):
        while self.tok.kind != "eof":
            t = self.name("declaration keyword")
            handler = {
                "format": self.p_format,
                "alphabet": self.p_alphabet,
                "set": self.p_set,
                "graph": self.p_graph,
                "automaton": self.p_automaton,
                "compact": self.p_compact,
                "system": self.p_system,
            }.get(t.value)
            if handler is None:
                raise _Syntax(t.line, t.col, f"unknown declaration {t.value!r}")
            handler(t)

    def p_format(self, head):
        t = self.name("version")
        if t.value != str(FORMAT_VERSION):
            self.errors.append(ParseError("version", t.line, t.col, f"unsupported format version {t.value}"))

    def p_alphabet(self, head):
        if self.alphabet is not None:
            self.errors.append(ParseError("duplicate", head.line, head.col, "duplicate alphabet declaration"))
        self.take("punct", "{")
        letters = []
        while not self.at("}"):
            t = self.letter()
            if t.value in letters:
                self.errors.append(ParseError("duplicate", t.line, t.col, f"duplicate letter {t.value}"))
            letters.append(t.value)
        self.take("punct", "}")
        self.alphabet = (letters, head)

    def p_set(self, head):
        t = self.name("set name")
        self.take("punct", "{")
        elements, linked, under, pair = [], {}, {}, {}
        while not self.at("}"):
            e = self.name("element")
            if e.value in elements:
                self.errors.append(ParseError("duplicate", e.line, e.col, f"duplicate element {e.value}"))
            elements.append(e.value)
            while self.at(":"):
                self.take()
                key = self.name("annotation")
                if key.value not in ("letter", "under", "pair"):
                    raise _Syntax(key.line, key.col, f"unknown annotation {key.value!r}")
                if self.at("="):
                    self.take()
                    val = self.name("annotation value").value
                elif key.value == "letter":
                    val = e.value[1:-1] if e.value.startswith("[") and e.value.endswith("]") else e.value
                else:
                    raise _Syntax(key.line, key.col, f"annotation {key.value} needs '=VALUE'")
                {"letter": linked, "under": under, "pair": pair}[key.value][e.value] = val
        self.take("punct", "}")
        if not self.duplicate(self.sets, t, "set"):
            self.sets[t.value] = ElementUniverse(t.value, elements, linked, under, pair)

    def resolve_set(self, t):
        if t.value not in self.sets:
            self.errors.append(ParseError("unresolved", t.line, t.col, f"undeclared set {t.value}"))
            return ElementUniverse(t.value, ())
        return self.sets[t.value]

    def p_graph(self, head):
        t = self.name("graph name")
        self.take("name", "over")
        universe = self.resolve_set(self.name("set name"))
        self.take("name", "labels")
        self.take("punct", "{")
        labels = []
        while not self.at("}"):
            lt = self.name("label")
            if lt.value != TAU and not is_letter_name(lt.value):
                raise _Syntax(lt.line, lt.col, f"bad label name {lt.value!r}")
            labels.append(lt.value)
        self.take("punct", "}")
        self.take("punct", "{")
        edges = []
        while not self.at("}"):
            x = self.name("element").value
            lam = self.take("arrow").value
            y = self.name("element").value
            edges.append((x, lam, y))
            self.semi()
        self.take("punct", "}")
        if not self.duplicate(self.graphs, t, "graph"):
            self.graphs[t.value] = LabeledGraph(t.value, universe, labels, edges)

    def p_automaton(self, head):
        t = self.name("automaton name")
        self.take("punct", "{")
        states, initials, trans = [], [], []
        seen_states = seen_trans = False
        while not self.at("}"):
            kw = self.name("'states' or 'trans'")
            if kw.value == "states" and not seen_states:
                seen_states = True
                for s, star in self.names_block(allow_star=True):
                    states.append(s.value)
                    if star:
                        initials.append(s.value)
            elif kw.value == "trans" and not seen_trans:
                seen_trans = True
                self.take("punct", "{")
                while not self.at("}"):
                    p = self.name("state").value
                    lam = self.take("arrow").value
                    q = self.name("state").value
                    trans.append((p, lam, q))
                    self.semi()
                self.take("punct", "}")
            else:
                raise _Syntax(kw.line, kw.col, f"unexpected {kw.value!r} in automaton")
        self.take("punct", "}")
        if not self.duplicate(self.automata, t, "automaton"):
            self.automata[t.value] = ("plain", t, states, trans, initials)

    def p_compact(self, head):
        t = self.name("compact automaton name")
        self.take("name", "over")
        universe = self.resolve_set(self.name("set name"))
        self.take("punct", "{")
        images, initials, trans = {}, [], []
        while not self.at("}"):
            kw = self.name("'cstate', 'init' or 'ctrans'")
            if kw.value == "cstate":
                q = self.name("compact state")
                self.take("punct", "=")
                if self.at("{"):
                    image = [s.value for s, _ in self.names_block()]
                else:
                    image = list(self.resolve_set(self.name("set name")).elements)
                if q.value in images:
                    self.errors.append(ParseError("duplicate", q.line, q.col, f"duplicate compact state {q.value}"))
                images[q.value] = image
            elif kw.value == "init":
                initials.extend(s.value for s, _ in self.names_block())
            elif kw.value == "ctrans":
                p = self.name("compact state").value
                g = self.take("guard")
                q = self.name("compact state").value
                trans.append((p, g, q))
            else:
                raise _Syntax(kw.line, kw.col, f"unexpected {kw.value!r} in compact automaton")
            self.semi()
        self.take("punct", "}")
        if not self.duplicate(self.automata, t, "automaton"):
            self.automata[t.value] = ("compact", t, universe, images, trans, initials)

    def p_system(self, head):
        if self.system is not None:
            self.errors.append(ParseError("duplicate", head.line, head.col, "duplicate system declaration"))
        if self.tok.kind == "name":
            self.take()
        self.system = [s for s, _ in self.names_block()]

    def finish(self) -> ModelDocument:
        letters = self.alphabet[0] if self.alphabet else []
        alphabet = Alphabet(frozenset(letters))
        automata = {}
        for name, entry in self.automata.items():
            if entry[0] == "plain":
                _, _, states, trans, initials = entry
                automata[name] = FiniteAutomaton(name, alphabet, states, trans, initials)
            else:
                _, t, universe, images, trans, initials = entry
                ctrans = []
                for p, g, q in trans:
                    guard = parse_guard(g.value, self.graphs, g.line, g.col, self.errors)
                    ctrans.append((p, guard, q))
                automata[name] = CompactAutomaton(name, alphabet, universe, images, ctrans, initials)
        if self.system is None:
            eof = self.tok
            self.errors.append(ParseError("missing-system", eof.line, eof.col, "missing system declaration"))
            members = ()
        else:
            members = []
            for t in self.system:
                if t.value not in automata and t.value not in self.automata:
                    self.errors.append(ParseError("unresolved", t.line, t.col, f"undeclared automaton {t.value}"))
                members.append(t.value)
            if not members:
                self.errors.append(ParseError("missing-system", 0, 0, "system declares no automata"))
        if self.errors:
            raise DocumentError(sorted(self.errors, key=lambda e: (e.line, e.column)))
        return ModelDocument(alphabet, self.sets, self.graphs, automata, tuple(members), self.version)


def parse_document(text) -> ModelDocument:
    """Parse document text; raises :class:`DocumentError` and nothing else."""
    try:
        if isinstance(text, bytes):
            text = text.decode("utf-8")
        parser = _Parser(_lex(text))
        parser.parse()
        return parser.finish()
    except _Syntax as e:
        raise DocumentError([e.err]) from None
    except UnicodeDecodeError as e:
        raise DocumentError([ParseError("syntax", 1, e.start + 1, "input is not UTF-8")]) from None
    except RecursionError:
        raise DocumentError([ParseError("syntax", 0, 0, "input nested too deeply")]) from None
    except (ValueError, TypeError) as e:
        if isinstance(e, DocumentError):
            raise
        raise DocumentError([ParseError("syntax", 0, 0, str(e))]) from None


# ---------------------------------------------------------------- serializer

def _names(items) -> str:
    items = list(items)
    return "{ " + " ".join(items) + " }" if items else "{ }"


def _element(u: ElementUniverse, x) -> str:
    out = str(x)
    if x in u.linked_letter:
        out += f":letter={u.linked_letter[x]}"
    if x in u.underlying_letter:
        out += f":under={u.underlying_letter[x]}"
    if x in u.counterpart:
        out += f":pair={u.counterpart[x]}"
    return out


def _serialize_plain(a: FiniteAutomaton) -> list[str]:
    states = [f"{q}*" if q in a.initials else str(q) for q in a.sorted_states()]
    lines = [f"automaton {a.name} {{", f"  states {_names(states)}", "  trans {"]
    lines += [f"    {p} -{lam}-> {q}" for p, lam, q in sorted(a.transitions, key=transition_key)]
    lines += ["  }", "}"]
    return lines


def _serialize_compact(c: CompactAutomaton) -> list[str]:
    u = c.universe
    lines = [f"compact {c.name} over {u.name} {{"]
    for q in c.compact_states:
        image = c.images[q]
        rhs = u.name if image == u.elements and image else _names(str(x) for x in sorted(image, key=sort_key))
        lines.append(f"  cstate {q} = {rhs};")
    lines.append(f"  init {_names(str(x) for x in sorted(c.initials, key=sort_key))};")
    for p, g, q in c.transitions:
        lines.append(f"  ctrans {p} -[{g}]-> {q};")
    lines.append("}")
    return lines


def serialize_document(doc: ModelDocument) -> str:
    """Canonical text: declarations by (kind, name), two-space indent."""
    blocks = [[f"format {doc.format_version}"], [f"alphabet {_names(sorted(doc.alphabet.letters, key=label_key))}"]]
    for name in sorted(doc.sets):
        u = doc.sets[name]
        blocks.append([f"set {name} {{"] + [f"  {_element(u, x)}" for x in u.sorted_elements()] + ["}"])
    for name in sorted(doc.graphs):
        g = doc.graphs[name]
        head = f"graph {name} over {g.universe.name} labels {_names(sorted(g.labels, key=label_key))} {{"
        blocks.append([head] + [f"  {x} -{lam}-> {y}" for x, lam, y in g.sorted_edges()] + ["}"])
    plain = sorted(n for n, a in doc.automata.items() if isinstance(a, FiniteAutomaton))
    compact = sorted(n for n, a in doc.automata.items() if isinstance(a, CompactAutomaton))
    blocks += [_serialize_plain(doc.automata[n]) for n in plain]
    blocks += [_serialize_compact(doc.automata[n]) for n in compact]
    blocks.append([f"system {_names(doc.system)}"])
    return "\n\n".join("\n".join(b) for b in blocks) + "\n"
