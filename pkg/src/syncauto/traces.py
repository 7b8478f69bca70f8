"""Executions of a system and their one-step-per-line text form.

A trace file looks like::

    (na,f) --tau--> (a,f)
    (a,f) --s--> (a,f)

A zero-step trace is a single bare state line. Lines starting with ``#``
are comments; ``# deadlock`` marks a simulation that ran out of moves.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .system import System, enabled_global_transitions

DEADLOCK_MARK = "# deadlock"

_STATE = r"\(([^()]*)\)"
_STEP_RE = re.compile(rf"^{_STATE}\s+--(\S+?)-->\s+{_STATE}$")
_BARE_RE = re.compile(rf"^{_STATE}$")


class TraceFormatError(ValueError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


@dataclass(frozen=True)
class Trace:
    """Alternating sequence ``g0, l1, g1, ..., lk, gk``."""

    states: tuple
    labels: tuple = ()
    deadlock: bool = False

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(tuple(g) for g in self.states))
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.states) != len(self.labels) + 1:
            raise ValueError("a trace has exactly one more state than labels")

    @classmethod
    def from_alternating(cls, items) -> "Trace":
        items = list(items)
        return cls(items[0::2], items[1::2])

    def steps(self):
        for j, lam in enumerate(self.labels):
            yield self.states[j], lam, self.states[j + 1]

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def word(self) -> tuple:
        return self.labels


@dataclass(frozen=True)
class TraceVerdict:
    """``step`` is the 1-based failing step, 0 for a bad start state."""

    accepted: bool
    step: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.accepted


def validate_trace(s: System, trace: Trace) -> TraceVerdict:
    for g in trace.states:
        s.check_state(g)
    if not s.is_initial(trace.states[0]):
        return TraceVerdict(False, 0, "not-initial")
    for j, (g, lam, h) in enumerate(trace.steps(), 1):
        if not any(t.label == lam and t.target == h for t in enabled_global_transitions(s, g)):
            return TraceVerdict(False, j, "not-enabled")
    return TraceVerdict(True)


def format_state(g: tuple) -> str:
    return "(" + ",".join(str(q) for q in g) + ")"


def format_trace(trace: Trace) -> str:
    if not trace.labels:
        lines = [format_state(trace.states[0])]
    else:
        lines = [f"{format_state(g)} --{lam}--> {format_state(h)}" for g, lam, h in trace.steps()]
    if trace.deadlock:
        lines.append(DEADLOCK_MARK)
    return "\n".join(lines) + "\n"


def _split_state(body: str) -> tuple:
    return tuple(part.strip() for part in body.split(","))


def parse_trace(text: str) -> Trace:
    states, labels = [], []
    deadlock = False
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            deadlock = deadlock or line == DEADLOCK_MARK
            continue
        m = _STEP_RE.match(line)
        if m:
            src, lam, dst = _split_state(m.group(1)), m.group(2), _split_state(m.group(3))
            if not states:
                states.append(src)
            elif states[-1] != src:
                raise TraceFormatError(n, f"step starts in {format_state(src)}, previous step ended in {format_state(states[-1])}")
            labels.append(lam)
            states.append(dst)
            continue
        m = _BARE_RE.match(line)
        if m and not states:
            states.append(_split_state(m.group(1)))
            continue
        raise TraceFormatError(n, f"cannot read {line!r}")
    if not states:
        raise TraceFormatError(0, "empty trace")
    return Trace(states, labels, deadlock)
