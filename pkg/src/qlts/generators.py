"""Seeded random generators of convergent, input-enabled automata.

Used by the property-based tests and the acceptance suite, and handy for
experiments.  Every generator takes a :class:`random.Random` so runs are
reproducible.
"""

from __future__ import annotations

import random

from .model import DELTA, TAU, Automaton
from .quiescence import check_rules, deltafy, quiescent_states

INPUT_NAMES = ("a", "b", "c")
OUTPUT_NAMES = ("x", "y", "z")


def random_iots(
    rng: random.Random,
    max_states: int = 12,
    max_inputs: int = 3,
    max_outputs: int = 3,
    *,
    n_states: int | None = None,
    inputs=None,
    outputs=None,
    tau_prob: float = 0.12,
    output_prob: float = 0.25,
    nondet_prob: float = 0.15,
    name: str = "A",
) -> Automaton:
    """Random input-enabled IOTS without delta; tau edges follow a random order, so no tau-cycles."""
    n = n_states or rng.randint(1, max_states)
    if inputs is None:
        inputs = INPUT_NAMES[:rng.randint(1, max_inputs)]
    if outputs is None:
        outputs = OUTPUT_NAMES[:rng.randint(1, max_outputs)]
    states = [f"s{i}" for i in range(n)]
    rank = {s: r for r, s in enumerate(rng.sample(states, n))}
    transitions = set()
    for s in states:
        for a in inputs:
            for _ in range(2 if rng.random() < nondet_prob else 1):
                transitions.add((s, a, rng.choice(states)))
        for o in outputs:
            if rng.random() < output_prob:
                for _ in range(2 if rng.random() < nondet_prob else 1):
                    transitions.add((s, o, rng.choice(states)))
        later = [t for t in states if rank[t] > rank[s]]
        if later and rng.random() < tau_prob:
            transitions.add((s, TAU, rng.choice(later)))
    initial = {states[0]}
    if n > 1 and rng.random() < 0.1:
        initial.add(rng.choice(states[1:]))
    return Automaton(frozenset(states), frozenset(initial), frozenset(inputs), frozenset(outputs),
                     frozenset(transitions), "iots", name)


def _add_delta_copies(A: Automaton, rng: random.Random, prob: float, budget: int) -> Automaton:
    # s -delta-> s' where s' is a fresh quiescent copy whose input moves are
    # a subset of s's; this keeps R1-R4 (it satisfies R3' and R4').
    transitions = set(A.transitions)
    states = set(A.states)
    for s in sorted(quiescent_states(A)):
        if budget <= 0:
            break
        if rng.random() >= prob:
            continue
        budget -= 1
        copy = f"{s}_d"
        if copy in states:
            continue
        states.add(copy)
        transitions.discard((s, DELTA, s))
        transitions |= {(s, DELTA, copy), (copy, DELTA, copy)}
        for a in sorted(A.inputs):
            targets = sorted(A.successors(s, a))
            keep = rng.sample(targets, rng.randint(1, len(targets)))
            transitions |= {(copy, a, t) for t in keep}
    return A.replace(states=frozenset(states), transitions=frozenset(transitions))


def random_qts(rng: random.Random, max_states: int = 12, max_inputs: int = 3,
               max_outputs: int = 3, copy_prob: float = 0.3, **kw) -> Automaton:
    """A valid QTS: deltafy a random IOTS, then sometimes split delta loops into separate states."""
    while True:
        base = random_iots(rng, max_states, max_inputs, max_outputs, **kw)
        A = deltafy(base, strict=False)
        room = max_states - len(A.states)
        if copy_prob and room > 0 and rng.random() < 0.5:
            A = _add_delta_copies(A, rng, copy_prob, room)
        if check_rules(A, ("R1", "R2", "R3", "R4")).qts_ok:
            return A


def random_delta_iots(rng: random.Random, max_states: int = 12, delta_prob: float = 0.25,
                      **kw) -> Automaton:
    """Random IOTS with arbitrary extra delta-transitions; usually not a valid QTS."""
    A = random_iots(rng, max_states, **kw)
    states = sorted(A.states)
    extra = {(s, DELTA, rng.choice(states)) for s in states if rng.random() < delta_prob}
    return A.replace(transitions=A.transitions | extra)


def random_rule_candidate(rng: random.Random, max_states: int = 12, extra_prob: float = 0.3,
                          **kw) -> Automaton:
    """Deltafied IOTS with extra delta-edges into quiescent, delta-looping states.

    The extra edges keep R1, R2 and R4' intact but may break R3, which makes
    these automata useful for probing R3 and R3'.
    """
    A = deltafy(random_iots(rng, max_states, **kw), strict=False)
    quiescent = sorted(quiescent_states(A))
    transitions = set(A.transitions)
    sources, targets = set(), set()
    for s in sorted(A.states):
        # keep sources and targets apart so every target keeps its lone loop
        choices = [q for q in quiescent if q != s and q not in sources]
        if s in targets or not choices or rng.random() >= extra_prob:
            continue
        q = rng.choice(choices)
        sources.add(s)
        targets.add(q)
        # a quiescent source trades its own loop for the new edge
        transitions.discard((s, DELTA, s))
        transitions.add((s, DELTA, q))
    return A.replace(transitions=frozenset(transitions))


def random_partial_qts(rng: random.Random, max_states: int = 12, **kw) -> Automaton:
    """IOTS with some, but not all, delta loops that still satisfies C1, R2, R3 and R4.

    Built by deltafying a random IOTS and then dropping a random subset of
    its delta self-loops; candidates that break a precondition are redrawn.
    """
    while True:
        A = deltafy(random_iots(rng, max_states, **kw), strict=False)
        loops = sorted(t for t in A.transitions if t[1] == DELTA)
        if not loops:
            return A.replace(kind="iots")
        drop = set(rng.sample(loops, rng.randint(0, len(loops))))
        B = A.replace(transitions=A.transitions - drop, kind="iots")
        if not check_rules(B, ("R2", "R3", "R4", "C1")).violated():
            return B


def mutate(A: Automaton, rng: random.Random) -> Automaton:
    """Apply one random edit to an IOTS: add, drop or redirect an output transition."""
    states = sorted(A.states)
    outs = sorted(t for t in A.transitions if t[1] in A.outputs)
    kind = rng.choice(("add", "drop", "redirect") if outs else ("add",))
    if kind == "add" and A.outputs:
        t = (rng.choice(states), rng.choice(sorted(A.outputs)), rng.choice(states))
        return A.replace(transitions=A.transitions | {t})
    if kind == "drop" and outs:
        return A.replace(transitions=A.transitions - {rng.choice(outs)})
    if outs:
        s, a, _ = old = rng.choice(outs)
        return A.replace(transitions=(A.transitions - {old}) | {(s, a, rng.choice(states))})
    return A
