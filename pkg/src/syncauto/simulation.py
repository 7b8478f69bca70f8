"""Step-by-step execution of a system: random, scripted or interactive."""

from __future__ import annotations

from typing import Callable, Iterable, TextIO

from .errors import NotEnabledError
from .system import System, blocking_components, canonical_order, enabled_global_transitions
from .traces import Trace, format_state

MASK64 = (1 << 64) - 1


class SplitMix64:
    """The splitmix64 generator, seeded with the raw 64-bit value."""

    def __init__(self, seed: int):
        if not 0 <= seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        self.state = seed

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)


def enabled_menu(s: System, g) -> list:
    return canonical_order(enabled_global_transitions(s, g))


def _run(s: System, start: tuple, max_steps: int, choose: Callable) -> Trace:
    states, labels = [start], []
    deadlock = False
    for step in range(1, max_steps + 1):
        menu = enabled_menu(s, states[-1])
        if not menu:
            deadlock = True
            break
        t = choose(step, states[-1], menu)
        if t is None:
            break
        labels.append(t.label)
        states.append(t.target)
    return Trace(states, labels, deadlock)


def _start(s: System, start) -> tuple:
    if start is None:
        return s.initial_states[0]
    start = s.check_state(start)
    if not s.is_initial(start):
        raise ValueError(f"{format_state(start)} is not an initial global state")
    return start


def simulate(
    s: System,
    seed: int = 0,
    max_steps: int = 100,
    word: Iterable[str] | None = None,
    start=None,
) -> Trace:
    """Run ``s`` from an initial state.

    With ``word`` the labels are fired in order, each resolving to the
    first enabled transition carrying it. An item may also be a
    ``(label, target)`` pair to pin the successor. Otherwise each step picks
    ``splitmix64 mod len(menu)`` from the canonically ordered menu.
    The run starts in the first initial state in canonical order unless
    ``start`` is given.
    """
    g0 = _start(s, start)
    if word is not None:
        word = list(word)

        def scripted(step, g, menu):
            item = word[step - 1]
            lam, target = (item, None) if isinstance(item, str) else (item[0], tuple(item[1]))
            for t in menu:
                if t.label == lam and (target is None or t.target == target):
                    return t
            raise NotEnabledError(step, lam, g, blocking_components(s, g, lam))

        states, labels = [g0], []
        for step, lam in enumerate(word, 1):
            menu = enabled_menu(s, states[-1])
            t = scripted(step, states[-1], menu)
            labels.append(t.label)
            states.append(t.target)
        return Trace(states, labels)

    rng = SplitMix64(seed)
    return _run(s, g0, max_steps, lambda step, g, menu: menu[rng.next() % len(menu)])


def interactive(s: System, infile: TextIO, outfile: TextIO, max_steps: int = 1000, start=None) -> Trace:
    """Menu-driven session: one choice index per input line, ``q`` to stop."""
    g0 = _start(s, start)

    def ask(step, g, menu):
        outfile.write(f"state {format_state(g)}\n")
        for k, t in enumerate(menu):
            outfile.write(f"  [{k}] --{t.label}--> {format_state(t.target)}\n")
        while True:
            outfile.write("> ")
            outfile.flush()
            line = infile.readline()
            if not line or line.strip() == "q":
                return None
            try:
                k = int(line.strip())
            except ValueError:
                outfile.write(f"not a choice: {line.strip()!r}\n")
                continue
            if 0 <= k < len(menu):
                return menu[k]
            outfile.write(f"choice out of range 0..{len(menu) - 1}\n")

    trace = _run(s, g0, max_steps, ask)
    if trace.deadlock:
        outfile.write(f"state {format_state(trace.states[-1])}\ndeadlock: no enabled transition\n")
    return trace
