"""Command-line front end.

Exit codes: 0 success (or a positive verdict), 1 negative verdict,
2 unreadable or invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .automaton import validate_automaton
from .compact import CompactAutomaton, validate_compact
from .corpus import money_params, stage_document
from .document import DocumentError, ModelDocument, _serialize_plain, parse_document, serialize_document
from .dot import export_dot
from .errors import ModelError, NotEnabledError
from .language import language_includes, project, simulates
from .refinement import system_leq
from .simulation import interactive, simulate
from .system import build_product
from .traces import TraceFormatError, format_state, format_trace, parse_trace, validate_trace

OK, NEGATIVE, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _load(path: str) -> ModelDocument:
    try:
        data = Path(path).read_bytes()
    except OSError as e:
        raise InputError(f"{path}: {e.strerror or e}") from None
    try:
        return parse_document(data)
    except DocumentError as e:
        raise InputError("\n".join(f"{path}:{err.line}:{err.column}: {err.code}: {err.message}" for err in e.errors)) from None


def _system(doc: ModelDocument, path: str):
    try:
        return doc.build_system()
    except ModelError as e:
        raise InputError("\n".join(f"{path}: {d.code}: {d.message}" for d in e.diagnostics)) from None


def _member(doc: ModelDocument, name: str):
    if name not in doc.automata:
        raise InputError(f"no automaton named {name}; declared: {', '.join(sorted(doc.automata))}")
    return doc.automata[name]


def _product(path: str):
    return build_product(_system(_load(path), path))


def cmd_validate(args, out) -> int:
    doc = _load(args.doc)
    problems = []
    for name in sorted(doc.automata):
        a = doc.automata[name]
        problems += validate_compact(a) if isinstance(a, CompactAutomaton) else validate_automaton(a)
    for d in problems:
        print(f"{d.severity}: {d.code}: {d.message}", file=out)
    if any(d.severity == "error" for d in problems):
        return INPUT_ERROR
    s = _system(doc, args.doc)
    print(f"ok: {len(s.automata)} automata, alphabet of {len(s.alphabet.letters)} letters", file=out)
    return OK


def cmd_unfold(args, out) -> int:
    doc = _load(args.doc)
    _member(doc, args.automaton)
    try:
        a = doc.plain(args.automaton)
    except ModelError as e:
        raise InputError("\n".join(f"{d.code}: {d.message}" for d in e.diagnostics)) from None
    print("\n".join(_serialize_plain(a)), file=out)
    return OK


def cmd_product(args, out) -> int:
    s = _system(_load(args.doc), args.doc)
    p = build_product(s, reachable=args.reachable)
    print(f"states {len(p.states)}", file=out)
    print(f"transitions {len(p.transitions)}", file=out)
    for g in p.sorted_states():
        mark = "*" if g in p.initials else ""
        print(f"{format_state(g)}{mark}", file=out)
    for g, lam, h in p.sorted_transitions():
        print(f"{format_state(g)} --{lam}--> {format_state(h)}", file=out)
    return OK


def cmd_simulate(args, out) -> int:
    s = _system(_load(args.doc), args.doc)
    if args.interactive:
        trace = interactive(s, sys.stdin, out, max_steps=args.steps)
    elif args.word is not None:
        word = [w for w in args.word.split(",") if w]
        try:
            trace = simulate(s, word=word)
        except NotEnabledError as e:
            who = ",".join(str(i) for i in sorted(e.blocking))
            print(f"step {e.step}: {e.label} not enabled at {format_state(e.state)}; blocked by components {who}", file=out)
            return NEGATIVE
    else:
        trace = simulate(s, seed=args.seed, max_steps=args.steps)
    out.write(format_trace(trace))
    return OK


def cmd_check_trace(args, out) -> int:
    s = _system(_load(args.doc), args.doc)
    try:
        trace = parse_trace(Path(args.trace).read_text(encoding="utf-8"))
        verdict = validate_trace(s, trace)
    except OSError as e:
        raise InputError(f"{args.trace}: {e.strerror or e}") from None
    except (TraceFormatError, ValueError, UnicodeDecodeError) as e:
        raise InputError(f"{args.trace}: {e}") from None
    if verdict:
        print(f"accepted: {len(trace)} steps", file=out)
        return OK
    print(f"rejected at step {verdict.step}: {verdict.reason}", file=out)
    return NEGATIVE


def cmd_refine(args, out) -> int:
    abstract = _system(_load(args.abstract), args.abstract)
    refined = _system(_load(args.refined), args.refined)
    report = system_leq(abstract, refined, relaxed=args.relaxed_partition)
    json.dump(report.to_dict(), out, indent=2)
    out.write("\n")
    return OK if report.holds else NEGATIVE


def cmd_include(args, out) -> int:
    sup, sub = _product(args.superset), _product(args.subset)
    if args.project:
        sub = project(sub, sup.alphabet)
    result = language_includes(sup, sub, tau_epsilon=args.tau_epsilon)
    if result.holds:
        print("holds", file=out)
        return OK
    print(f"fails: {','.join(result.counterexample)}", file=out)
    return NEGATIVE


def cmd_simulates(args, out) -> int:
    result = simulates(_product(args.abstract), _product(args.refined))
    print("holds" if result.holds else "fails", file=out)
    return OK if result.holds else NEGATIVE


def cmd_corpus(args, out) -> int:
    params = money_params() if args.params == "money" else None
    stages = [args.stage] if args.stage else range(1, 8)
    target = Path(args.emit)
    try:
        target.mkdir(parents=True, exist_ok=True)
        for k in stages:
            path = target / f"stage{k}.model"
            path.write_text(serialize_document(stage_document(k, params)), encoding="utf-8")
            print(path, file=out)
    except OSError as e:
        raise InputError(str(e)) from None
    return OK


def cmd_export_dot(args, out) -> int:
    doc = _load(args.doc)
    out.write(export_dot(_member(doc, args.automaton)))
    return OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="syncauto", description="Synchronised automata toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and check a document")
    p.add_argument("doc")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("unfold", help="print a compact automaton unfolded")
    p.add_argument("doc")
    p.add_argument("--automaton", required=True)
    p.set_defaults(func=cmd_unfold)

    p = sub.add_parser("product", help="print the global automaton of the system")
    p.add_argument("doc")
    p.add_argument("--reachable", action="store_true")
    p.set_defaults(func=cmd_product)

    p = sub.add_parser("simulate", help="run the system")
    p.add_argument("doc")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--word", help="comma-separated labels to fire in order")
    mode.add_argument("--interactive", action="store_true")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("check-trace", help="replay a trace file against the system")
    p.add_argument("doc")
    p.add_argument("--trace", required=True)
    p.set_defaults(func=cmd_check_trace)

    p = sub.add_parser("refine", help="decide abstract <= refined")
    p.add_argument("abstract")
    p.add_argument("refined")
    p.add_argument("--relaxed-partition", action="store_true", help="allow empty blocks")
    p.set_defaults(func=cmd_refine)

    p = sub.add_parser("include", help="decide L(subset) <= L(superset) on the products")
    p.add_argument("superset")
    p.add_argument("subset")
    p.add_argument("--project", action="store_true", help="hide subset letters unknown to the superset")
    p.add_argument("--tau-epsilon", action="store_true", help="read tau as the empty word")
    p.set_defaults(func=cmd_include)

    p = sub.add_parser("simulates", help="decide whether the abstract product simulates the refined one")
    p.add_argument("abstract")
    p.add_argument("refined")
    p.set_defaults(func=cmd_simulates)

    p = sub.add_parser("corpus", help="write the stage documents")
    p.add_argument("--stage", type=int, choices=range(1, 8))
    p.add_argument("--params", choices=["money"], default="money")
    p.add_argument("--emit", required=True)
    p.set_defaults(func=cmd_corpus)

    p = sub.add_parser("export-dot", help="print Graphviz text for one automaton")
    p.add_argument("doc")
    p.add_argument("--automaton", required=True)
    p.set_defaults(func=cmd_export_dot)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if getattr(args, "seed", 0) is not None and not 0 <= getattr(args, "seed", 0) < 1 << 64:
        print("error: --seed must be an unsigned 64-bit integer", file=sys.stderr)
        return INPUT_ERROR
    try:
        return args.func(args, out)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR
    except (ModelError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
