"""Determinisation, parallel composition and action hiding."""

from __future__ import annotations

from collections import deque
from typing import Iterable

from .errors import (
    DeltaNotHideable,
    DivergenceIntroduced,
    NameCollision,
    NotAnOutput,
    OutputOverlap,
)
from .model import DELTA, TAU, Automaton, find_tau_cycle
from .traces import subset_view


def subset_name(states: Iterable[str]) -> str:
    return "{" + ",".join(sorted(states)) + "}"


def pair_name(s: str, t: str) -> str:
    return f"({s},{t})"


def determinise(A: Automaton) -> Automaton:
    """Subset construction over the reachable non-empty macro-states.

    The initial macro-state is the tau-closure of the initial states, so the
    result is tau-free, deterministic and trace equivalent to ``A``.
    """
    view = subset_view(A)
    start = view.close(A.initial)
    names = {start: subset_name(view.states(start))}
    transitions = set()
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for a in view.enabled(u):
            v = view.step(u, a)
            if v not in names:
                names[v] = subset_name(view.states(v))
                queue.append(v)
            transitions.add((names[u], a, names[v]))
    return Automaton(frozenset(names.values()), frozenset({names[start]}), A.inputs, A.outputs,
                     frozenset(transitions), A.kind, A.name)


def _product_kind(A: Automaton, B: Automaton) -> str:
    if A.kind == B.kind:
        return A.kind
    if "lts" in (A.kind, B.kind):
        return "lts"
    return "iots"


def _delta_moves(A: Automaton, s: str) -> tuple[frozenset[str], bool]:
    """Delta successors of ``s``, plus whether they are an implicit self-loop.

    A quiescent state without delta can still idle, so for synchronisation
    it behaves like a delta self-loop (the loop deltafication would add).
    """
    targets = A.successors(s, DELTA)
    if targets:
        return targets, False
    if any(a == TAU or a in A.outputs for a in A.enabled(s)):
        return frozenset(), False
    return frozenset({s}), True


def parallel(A: Automaton, B: Automaton) -> Automaton:
    """Parallel composition, materialising only reachable state pairs.

    Shared inputs synchronise, an output of one side synchronises with the
    same input of the other, and non-shared labels and tau interleave.
    Delta always synchronises.  A quiescent state lacking delta joins in as
    if it had a delta self-loop, but a pair where both sides rely on that
    gets no delta, so delta-free operands compose exactly as IOTSs.
    """
    overlap = A.outputs & B.outputs
    if overlap:
        raise OutputOverlap(overlap)
    la, lb = A.labels, B.labels

    def moves(s, t):
        for a, targets in A.out_transitions(s).items():
            if a == DELTA:
                continue
            if a == TAU or a not in lb:
                for s2 in targets:
                    yield a, s2, t
            elif a in B.inputs:
                # shared input, or A's output consumed by B's input
                for t2 in B.successors(t, a):
                    for s2 in targets:
                        yield a, s2, t2
            # A's input that B outputs is produced by B's side below.
        for a, targets in B.out_transitions(t).items():
            if a == DELTA:
                continue
            if a == TAU or a not in la:
                for t2 in targets:
                    yield a, s, t2
            elif a in B.outputs:
                for s2 in A.successors(s, a):
                    for t2 in targets:
                        yield a, s2, t2
        da, implicit_a = _delta_moves(A, s)
        db, implicit_b = _delta_moves(B, t)
        if not (implicit_a and implicit_b):
            for s2 in da:
                for t2 in db:
                    yield DELTA, s2, t2

    start = [(s, t) for s in sorted(A.initial) for t in sorted(B.initial)]
    seen = set(start)
    queue = deque(start)
    transitions = set()
    while queue:
        s, t = queue.popleft()
        for a, s2, t2 in moves(s, t):
            transitions.add(((s, t), a, (s2, t2)))
            if (s2, t2) not in seen:
                seen.add((s2, t2))
                queue.append((s2, t2))

    names = {p: pair_name(*p) for p in seen}
    if len(set(names.values())) != len(names):
        raise NameCollision("state names produce ambiguous pair names")
    outputs = A.outputs | B.outputs
    inputs = (A.inputs | B.inputs) - outputs
    return Automaton(
        frozenset(names.values()),
        frozenset(names[p] for p in start),
        inputs,
        outputs,
        frozenset((names[p], a, names[q]) for p, a, q in transitions),
        _product_kind(A, B),
        f"{A.name}||{B.name}",
    )


def hide(A: Automaton, hidden: Iterable[str]) -> Automaton:
    """Rename the outputs in ``hidden`` to tau.

    Raises if a label is not an output, if delta is requested, or if the
    renaming would create a tau-cycle.
    """
    hidden = frozenset(hidden)
    if DELTA in hidden:
        raise DeltaNotHideable()
    for h in sorted(hidden):
        if h not in A.outputs:
            raise NotAnOutput(h)
    if not hidden:
        return A
    transitions = frozenset((s, TAU if a in hidden else a, t) for s, a, t in A.transitions)
    result = A.replace(outputs=A.outputs - hidden, transitions=transitions)
    cycle = find_tau_cycle(result)
    if cycle:
        raise DivergenceIntroduced(cycle)
    return result
