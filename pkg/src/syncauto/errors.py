"""Exceptions and the diagnostic record shared by the validators."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Diagnostic:
    """One violated invariant.

    ``subject`` names the offending element (a state, letter, graph...) so
    callers can filter without parsing ``message``.
    """

    code: str
    message: str
    subject: str = ""
    severity: str = "error"

    def __str__(self) -> str:
        return self.message


class ModelError(ValueError):
    """A model object failed validation.

    Carries the full list of diagnostics, not only the first one.
    """

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(d.message for d in self.diagnostics) or "invalid model")


class NotEnabledError(Exception):
    """A scripted label could not fire in the current global state."""

    def __init__(self, step: int, label: str, state: tuple, blocking: frozenset):
        self.step = step
        self.label = label
        self.state = state
        self.blocking = blocking
        who = ", ".join(str(i) for i in sorted(blocking)) or "none"
        super().__init__(
            f"step {step}: {label!r} is not enabled in ({','.join(map(str, state))}); "
            f"blocking components: {who}"
        )
