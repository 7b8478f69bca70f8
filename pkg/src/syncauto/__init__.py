"""Finite automata synchronised by generalised rendezvous, compact automata,
refinement checking and the stress-theory model built with them."""

from .automaton import TAU, Alphabet, FiniteAutomaton, successors, validate_automaton
from .compact import (
    And, CompactAutomaton, EdgeIn, ElementUniverse, LabeledGraph, LabelIs, LabelIsSourceName,
    LabelIsSourceUnderlying, Not, Or, SourceIs, TargetIs, TargetIsCounterpart, TrueGuard, eval_guard,
    unfold, validate_compact,
)
from .corpus import Stage, StageParams, money_params, stage_executions, stage, stage_document, stressed
from .document import DocumentError, ModelDocument, ParseError, parse_document, serialize_document
from .dot import export_dot
from .errors import Diagnostic, ModelError, NotEnabledError
from .language import determinize, language_includes, project, simulates, words_upto
from .refinement import PartitionWitness, RefinementReport, automaton_leq, label_leq, system_leq, verify_witness
from .simulation import SplitMix64, interactive, simulate
from .system import (
    GlobalTransition, System, blocking_components, build_product, enabled_global_transitions, sync_indices,
)
from .traces import Trace, TraceVerdict, format_trace, parse_trace, validate_trace

__all__ = [
    "Alphabet", "And", "automaton_leq", "blocking_components", "build_product", "CompactAutomaton",
    "determinize", "Diagnostic", "DocumentError", "EdgeIn", "ElementUniverse", "enabled_global_transitions",
    "eval_guard", "export_dot", "FiniteAutomaton", "format_trace", "GlobalTransition", "interactive",
    "label_leq", "LabeledGraph", "LabelIs", "LabelIsSourceName", "LabelIsSourceUnderlying",
    "language_includes", "ModelDocument", "ModelError", "money_params", "Not", "NotEnabledError", "Or",
    "parse_document", "parse_trace", "ParseError", "PartitionWitness", "project", "RefinementReport",
    "serialize_document", "simulate", "simulates", "SourceIs", "SplitMix64", "Stage", "stage",
    "stage_document", "stage_executions", "StageParams", "stressed", "successors", "sync_indices", "System",
    "system_leq", "TargetIs", "TargetIsCounterpart", "TAU", "Trace", "TraceVerdict", "TrueGuard", "unfold",
    "validate_automaton", "validate_compact", "validate_trace", "verify_witness", "words_upto",
]
