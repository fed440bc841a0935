"""Trace semantics: projection, weak reachability, out-sets and trace inclusion.

A trace is a tuple of visible labels (inputs, outputs or ``delta``).
Exact decisions are made by breadth-first search over pairs of subset
states, so they terminate on cyclic automata; bounded enumeration is only
used for display and as a cross-check.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import UnknownLabel
from .model import DELTA, TAU, Automaton

Trace = tuple[str, ...]
EPSILON: Trace = ()


def is_prefix(rho: Trace, sigma: Trace) -> bool:
    return len(rho) <= len(sigma) and tuple(sigma[:len(rho)]) == tuple(rho)


def is_proper_prefix(rho: Trace, sigma: Trace) -> bool:
    return len(rho) < len(sigma) and is_prefix(rho, sigma)


def project(sigma: Iterable[str], keep: Iterable[str]) -> Trace:
    """Erase every label of ``sigma`` that is not in ``keep``."""
    keep = set(keep)
    return tuple(a for a in sigma if a in keep)


def format_trace(sigma: Trace) -> str:
    return " ".join(sigma) if sigma else "ε"


def shortlex(sigma: Trace):
    return (len(sigma), sigma)


class SubsetView:
    """Bitmask encoding of an automaton for fast subset-state exploration.

    State sets are ints; every successor mask is already tau-closed, and
    ``step``/``enabled`` results are memoised.  Obtain one through
    :func:`subset_view`, which caches it on the automaton.
    """

    def __init__(self, A: Automaton):
        self.order = sorted(A.states | {s for t in A.transitions for s in (t[0], t[2])})
        self.index = {s: i for i, s in enumerate(self.order)}
        n = len(self.order)
        closure = [0] * n
        for i, s in enumerate(self.order):
            seen = {s}
            todo = [s]
            while todo:
                u = todo.pop()
                for v in A.successors(u, TAU):
                    if v not in seen:
                        seen.add(v)
                        todo.append(v)
            closure[i] = self._mask_of(seen)
        self.closure = closure
        self.succ = []
        self.labels = []
        for s in self.order:
            moves = {}
            for a, targets in A.out_transitions(s).items():
                if a != TAU:
                    m = 0
                    for t in targets:
                        m |= closure[self.index[t]]
                    moves[a] = m
            self.succ.append(moves)
            self.labels.append(frozenset(moves))
        self._step = {}
        self._enabled = {}

    def _mask_of(self, states) -> int:
        m = 0
        for s in states:
            m |= 1 << self.index[s]
        return m

    def bits(self, mask: int):
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def close(self, states: Iterable[str]) -> int:
        m = 0
        for s in states:
            if s in self.index:
                m |= self.closure[self.index[s]]
        return m

    def states(self, mask: int) -> frozenset[str]:
        return frozenset(self.order[i] for i in self.bits(mask))

    def step(self, mask: int, label: str) -> int:
        key = (mask, label)
        hit = self._step.get(key)
        if hit is None:
            hit = 0
            for i in self.bits(mask):
                hit |= self.succ[i].get(label, 0)
            self._step[key] = hit
        return hit

    def enabled(self, mask: int) -> tuple[str, ...]:
        """Sorted visible labels enabled somewhere in ``mask``."""
        hit = self._enabled.get(mask)
        if hit is None:
            labels = set()
            for i in self.bits(mask):
                labels |= self.labels[i]
            hit = self._enabled[mask] = tuple(sorted(labels))
        return hit


def subset_view(A: Automaton) -> SubsetView:
    view = A.__dict__.get("_subset_view")
    if view is None:
        view = A.__dict__["_subset_view"] = SubsetView(A)
    return view


def tau_closure(A: Automaton, states: Iterable[str]) -> frozenset[str]:
    states = set(states)
    v = subset_view(A)
    return v.states(v.close(states)) | frozenset(s for s in states if s not in v.index)


def step(A: Automaton, states: Iterable[str], label: str) -> frozenset[str]:
    """Weak successor set of a tau-closed state set under one visible label."""
    v = subset_view(A)
    return v.states(v.step(v.close(states), label))


def enabled_visible(A: Automaton, states: Iterable[str]) -> set[str]:
    """Visible labels enabled in at least one state of a tau-closed set."""
    v = subset_view(A)
    return set(v.enabled(v.close(states)))


def weak_reach(A: Automaton, start: Iterable[str], sigma: Trace) -> frozenset[str]:
    """All states reachable from ``start`` by a path whose trace is ``sigma``."""
    for a in sigma:
        if a not in A.observable:
            raise UnknownLabel(f"label {a!r} is not in the alphabet of {A.name}")
    current = tau_closure(A, start)
    for a in sigma:
        if not current:
            break
        current = step(A, current, a)
    return current


def out(A: Automaton, state: str, sigma: Trace = EPSILON) -> frozenset[str]:
    """Outputs (and delta) weakly enabled after performing ``sigma`` from ``state``."""
    reached = weak_reach(A, [state], sigma)
    return frozenset(a for a in enabled_visible(A, reached) if a in A.outputs or a == DELTA)


@dataclass(frozen=True)
class TraceSet:
    """The prefix-closed set of traces of length at most ``depth``."""

    depth: int
    traces: frozenset[Trace]

    def __contains__(self, sigma):
        return tuple(sigma) in self.traces

    def __iter__(self) -> Iterator[Trace]:
        return iter(sorted(self.traces, key=shortlex))

    def __len__(self):
        return len(self.traces)

    def project(self, keep) -> set[Trace]:
        return {project(t, keep) for t in self.traces}


def traces_bounded(A: Automaton, k: int, start: Iterable[str] | None = None) -> TraceSet:
    if k < 0:
        raise ValueError("depth must be non-negative")
    v = subset_view(A)
    found = {EPSILON}
    frontier = {EPSILON: v.close(A.initial if start is None else start)}
    for _ in range(k):
        nxt = {}
        for sigma, mask in frontier.items():
            for a in v.enabled(mask):
                nxt[sigma + (a,)] = v.step(mask, a)
        found.update(nxt)
        frontier = nxt
    return TraceSet(k, frozenset(found))


def trace_included_from(
    A: Automaton,
    a_start: Iterable[str],
    B: Automaton,
    b_start: Iterable[str],
    known: set | None = None,
) -> tuple[bool, Trace | None]:
    """Decide traces(A from a_start) ⊆ traces(B from b_start).

    Returns a shortlex-minimal counterexample when inclusion fails.  BFS over
    subset-state pairs with sorted label expansion visits every pair first
    along its shortlex-least trace, which makes the first hit minimal.

    ``known`` is an optional memo of subset pairs already proven included,
    shared between calls on the same (A, B); pairs in it are not expanded
    and a successful search adds every pair it visited.
    """
    va, vb = subset_view(A), subset_view(B)
    x0, y0 = va.close(a_start), vb.close(b_start)
    if not x0:
        return True, None
    if known is not None and (x0, y0) in known:
        return True, None
    seen = {(x0, y0)}
    queue = deque([(x0, y0, EPSILON)])
    while queue:
        x, y, sigma = queue.popleft()
        b_enabled = vb.enabled(y)
        for a in va.enabled(x):
            if a not in b_enabled:
                return False, sigma + (a,)
            pair = (va.step(x, a), vb.step(y, a))
            if pair not in seen and (known is None or pair not in known):
                seen.add(pair)
                queue.append((*pair, sigma + (a,)))
    if known is not None:
        known |= seen
    return True, None


def trace_included(A: Automaton, B: Automaton) -> tuple[bool, Trace | None]:
    return trace_included_from(A, A.initial, B, B.initial)


def trace_equivalent(A: Automaton, B: Automaton) -> bool:
    return trace_included(A, B)[0] and trace_included(B, A)[0]


def distinguishing_trace(A, a_start, B, b_start, known=None) -> Trace | None:
    """Shortlex-least trace in the symmetric difference, or None if equal.

    ``known`` is only valid when A is B (the memo is keyed on pair order).
    """
    cexs = [c for _, c in (trace_included_from(A, a_start, B, b_start, known),
                           trace_included_from(B, b_start, A, a_start, known)) if c is not None]
    return min(cexs, key=shortlex) if cexs else None
