"""ioco conformance between an implementation QTS and a specification QTS."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass

from .errors import AlphabetMismatch, NotInputEnabled
from .model import DELTA, Automaton
from .traces import (
    EPSILON,
    Trace,
    enabled_visible,
    format_trace,
    subset_view,
    trace_included,
    weak_reach,
)

_CROSS_CHECK = os.environ.get("QLTS_DEBUG", "") not in ("", "0")


@dataclass(frozen=True)
class Verdict:
    outcome: str
    counterexample: tuple[Trace, str] | None = None

    @property
    def passed(self) -> bool:
        return self.outcome == "pass"

    def __bool__(self):
        return self.passed

    def describe(self) -> str:
        if self.passed:
            return "PASS"
        sigma, label = self.counterexample
        return f"FAIL after {format_trace(sigma)} observing {label}"


def _observations(A: Automaton, states) -> set[str]:
    return {a for a in enabled_visible(A, states) if a in A.outputs or a == DELTA}


def out_set(A: Automaton, sigma: Trace) -> frozenset[str]:
    """Outputs and delta that can follow ``sigma`` in A; empty when sigma is not a trace."""
    return frozenset(_observations(A, weak_reach(A, A.initial, tuple(sigma))))


def ioco_check(impl: Automaton, spec: Automaton) -> Verdict:
    """Check ``impl ioco spec`` and return the shortlex-least counterexample on failure.

    Explores pairs of subset states reached by traces common to both systems;
    an output or delta possible in the implementation but not in the
    specification is a violation.
    """
    if impl.inputs != spec.inputs or impl.outputs != spec.outputs:
        raise AlphabetMismatch("implementation and specification alphabets differ")
    for A in (impl, spec):
        if not A.is_input_enabled():
            raise NotInputEnabled(f"{A.name} is not input-enabled; see demonic_completion")

    vi, vs = subset_view(impl), subset_view(spec)
    x0, y0 = vi.close(impl.initial), vs.close(spec.initial)
    seen = {(x0, y0)}
    queue = deque([(x0, y0, EPSILON)])
    verdict = Verdict("pass")
    inputs = spec.inputs
    while queue:
        x, y, sigma = queue.popleft()
        allowed = vs.enabled(y)
        bad = [a for a in vi.enabled(x) if a not in inputs and a not in allowed]
        if bad:
            verdict = Verdict("fail", (sigma, bad[0]))
            break
        for a in vi.enabled(x):
            if a not in allowed:
                continue
            pair = (vi.step(x, a), vs.step(y, a))
            if pair not in seen:
                seen.add(pair)
                queue.append((*pair, sigma + (a,)))

    if _CROSS_CHECK:
        assert verdict.passed == trace_included(impl, spec)[0]
    return verdict
