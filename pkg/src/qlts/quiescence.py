"""Quiescent states, the well-formedness rules for QTSs, condition C1 and deltafication.

Rule names used throughout: ``R1``-``R4`` (exact), ``R3prime``/``R4prime``
(cheap syntactic sufficient conditions) and ``C1`` (the precondition that
lets an IOTS with some delta-transitions be deltafied).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .errors import PreconditionViolated
from .model import DELTA, TAU, Automaton
from .traces import EPSILON, distinguishing_trace, subset_view, trace_included_from

ALL_RULES = ("R1", "R2", "R3", "R4", "R3prime", "R4prime", "C1")


def is_quiescent(A: Automaton, s: str) -> bool:
    """No output and no tau transition leaves ``s`` (delta does not count)."""
    return not any(a == TAU or a in A.outputs for a in A.enabled(s))


def quiescent_states(A: Automaton) -> frozenset[str]:
    return frozenset(s for s in A.states if is_quiescent(A, s))


def delta_transitions(A: Automaton) -> list[tuple[str, str]]:
    return sorted((s, t) for s, a, t in A.transitions if a == DELTA)


@dataclass
class RuleResult:
    holds: bool
    witnesses: list = field(default_factory=list)


@dataclass
class RuleReport:
    results: dict[str, RuleResult]

    def __getitem__(self, rule: str) -> RuleResult:
        return self.results[rule]

    def holds(self, rule: str) -> bool:
        return self.results[rule].holds

    @property
    def qts_ok(self) -> bool:
        """True when R1-R4 all hold (among the rules that were checked)."""
        return all(r.holds for k, r in self.results.items() if k in ("R1", "R2", "R3", "R4"))

    def violated(self) -> list[str]:
        return [k for k, r in self.results.items() if not r.holds]

    def to_dict(self) -> dict:
        return {rule: {"holds": r.holds, "witnesses": [_jsonable(w) for w in r.witnesses]}
                for rule, r in self.results.items()}


def _jsonable(w):
    if isinstance(w, tuple):
        return [_jsonable(x) for x in w]
    return w


def _rule_r1(A):
    return [s for s in sorted(quiescent_states(A)) if DELTA not in A.enabled(s)]


def _rule_r2(A):
    return [(s, t) for s, t in delta_transitions(A) if not is_quiescent(A, t)]


def _rule_r3(A, known):
    witnesses = []
    for s, t in delta_transitions(A):
        ok, cex = trace_included_from(A, [t], A, [s], known)
        if not ok:
            witnesses.append((s, t, cex))
    return witnesses


def _rule_r4(A, known):
    witnesses = []
    cache = {}
    for s, t in delta_transitions(A):
        for u in sorted(A.successors(t, DELTA)):
            if (t, u) not in cache:
                cache[t, u] = distinguishing_trace(A, [t], A, [u], known)
            if cache[t, u] is not None:
                witnesses.append((s, t, u, cache[t, u]))
    return witnesses


def _rule_r3prime(A):
    witnesses = []
    for s, t in delta_transitions(A):
        for a in sorted(A.inputs):
            for u in sorted(A.successors(t, a) - A.successors(s, a)):
                witnesses.append((s, t, a, u))
    return witnesses


def _rule_r4prime(A):
    witnesses = []
    for s, t in delta_transitions(A):
        after = A.successors(t, DELTA)
        if t not in after:
            witnesses.append((s, t))
        for u in sorted(after - {t}):
            witnesses.append((t, u))
    return sorted(set(witnesses))


def check_condition_c1(A: Automaton) -> tuple[bool, list]:
    """Decide condition C1 exactly.

    For each ``s -delta-> s'`` the pairs ``(reach(s', σ), reach(s, σ))`` are
    explored over every σ in traces(s').  A pair violates C1 when the first
    set holds a quiescent state without delta while the second holds a state
    that is not both quiescent and delta-less.  One shortest witness
    ``(s, s', σ)`` is reported per offending delta-transition.
    """
    v = subset_view(A)
    dead = v.close(())
    for s in A.states:
        if is_quiescent(A, s) and DELTA not in A.enabled(s):
            dead |= 1 << v.index[s]
    witnesses = []
    for s, t in delta_transitions(A):
        x0, y0 = v.close([t]), v.close([s])
        seen = {(x0, y0)}
        queue = deque([(x0, y0, EPSILON)])
        while queue:
            x, y, sigma = queue.popleft()
            if x & dead and y & ~dead:
                witnesses.append((s, t, sigma))
                break
            for a in v.enabled(x):
                pair = (v.step(x, a), v.step(y, a))
                if pair not in seen:
                    seen.add(pair)
                    queue.append((*pair, sigma + (a,)))
    return not witnesses, witnesses


_CHECKS = {
    "R1": lambda A, known: _rule_r1(A),
    "R2": lambda A, known: _rule_r2(A),
    "R3": _rule_r3,
    "R4": _rule_r4,
    "R3prime": lambda A, known: _rule_r3prime(A),
    "R4prime": lambda A, known: _rule_r4prime(A),
    "C1": lambda A, known: check_condition_c1(A)[1],
}


def check_rules(A: Automaton, rules=ALL_RULES) -> RuleReport:
    """Evaluate the requested rules; witnesses are sorted and non-empty iff a rule fails."""
    results = {}
    known = set()  # subset pairs proven trace-included, shared by R3 and R4
    for rule in rules:
        witnesses = _CHECKS[rule](A, known)
        results[rule] = RuleResult(not witnesses, witnesses)
    return RuleReport(results)


DELTAFY_PRECONDITIONS = ("R2", "R3", "R4", "C1")


def deltafy(A: Automaton, strict: bool = True) -> Automaton:
    """Add a delta self-loop to every quiescent state that has no delta-transition.

    In strict mode C1, R2, R3 and R4 are checked first and the first failure
    raises :class:`PreconditionViolated`; fast mode trusts the caller.
    """
    if strict:
        report = check_rules(A, DELTAFY_PRECONDITIONS)
        for rule in DELTAFY_PRECONDITIONS:
            if not report.holds(rule):
                raise PreconditionViolated(rule, report[rule].witnesses[0])
    loops = {(s, DELTA, s) for s in quiescent_states(A) if DELTA not in A.enabled(s)}
    return A.replace(transitions=A.transitions | loops, kind="qts")
