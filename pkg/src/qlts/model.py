"""Automaton data model shared by LTSs, IOTSs and QTSs.

Labels are plain strings.  Input and output names live in disjoint sets
declared on the automaton; the two reserved names ``tau`` (internal step)
and ``delta`` (observed quiescence) may never be declared.
"""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping

import networkx as nx
from networkx.algorithms import isomorphism as nx_iso

from .errors import AlphabetMismatch, NameCollision, NondeterministicInput

TAU = "tau"
DELTA = "delta"
RESERVED = frozenset({TAU, DELTA})
KINDS = ("lts", "iots", "qts")
SINK = "_sink"


class LabelKind(enum.Enum):
    INPUT = "input"
    OUTPUT = "output"
    INTERNAL = "internal"
    QUIESCENCE = "quiescence"


Transition = tuple[str, str, str]


@dataclass(frozen=True)
class Automaton:
    """A finite transition system with partitioned input/output alphabets.

    ``outputs`` never contains ``delta``; whether quiescence is part of the
    alphabet is derived from ``kind`` and the transitions (see
    :attr:`has_delta`).  Instances are immutable; derived indices are
    computed lazily and cached.
    """

    states: frozenset[str]
    initial: frozenset[str]
    inputs: frozenset[str]
    outputs: frozenset[str]
    transitions: frozenset[Transition]
    kind: str = "iots"
    name: str = field(default="A", compare=False)

    def __post_init__(self):
        for attr in ("states", "initial", "inputs", "outputs"):
            object.__setattr__(self, attr, frozenset(getattr(self, attr)))
        object.__setattr__(self, "transitions", frozenset(tuple(t) for t in self.transitions))
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}")

    @classmethod
    def build(
        cls,
        transitions: Iterable[Transition],
        *,
        initial: Iterable[str] | str,
        inputs: Iterable[str] = (),
        outputs: Iterable[str] = (),
        states: Iterable[str] = (),
        kind: str = "iots",
        name: str = "A",
    ) -> Automaton:
        """Build an automaton, inferring the state set from the transitions."""
        transitions = [tuple(t) for t in transitions]
        if isinstance(initial, str):
            initial = [initial]
        initial = frozenset(initial)
        all_states = set(states) | set(initial)
        for src, _, dst in transitions:
            all_states.update((src, dst))
        return cls(frozenset(all_states), initial, frozenset(inputs), frozenset(outputs),
                   frozenset(transitions), kind, name)

    def replace(self, **changes) -> Automaton:
        return dataclasses.replace(self, **changes)

    # -- alphabet ---------------------------------------------------------

    @property
    def labels(self) -> frozenset[str]:
        """The visible alphabet L = inputs | outputs (without delta)."""
        return self.inputs | self.outputs

    @cached_property
    def has_delta(self) -> bool:
        return self.kind == "qts" or any(a == DELTA for _, a, _ in self.transitions)

    @property
    def observable(self) -> frozenset[str]:
        """Labels that may appear in traces: inputs, outputs and delta."""
        return self.labels | {DELTA}

    def label_kind(self, label: str) -> LabelKind:
        if label == TAU:
            return LabelKind.INTERNAL
        if label == DELTA:
            return LabelKind.QUIESCENCE
        if label in self.inputs:
            return LabelKind.INPUT
        if label in self.outputs:
            return LabelKind.OUTPUT
        raise KeyError(label)

    # -- structure --------------------------------------------------------

    @cached_property
    def _succ(self) -> dict[str, dict[str, frozenset[str]]]:
        index: dict[str, dict[str, set[str]]] = {}
        for src, a, dst in self.transitions:
            index.setdefault(src, {}).setdefault(a, set()).add(dst)
        return {s: {a: frozenset(d) for a, d in m.items()} for s, m in index.items()}

    def successors(self, state: str, label: str) -> frozenset[str]:
        return self._succ.get(state, {}).get(label, frozenset())

    def enabled(self, state: str) -> frozenset[str]:
        """Labels (including tau and delta) with an outgoing transition from ``state``."""
        return frozenset(self._succ.get(state, {}))

    def out_transitions(self, state: str) -> Mapping[str, frozenset[str]]:
        return self._succ.get(state, {})

    def is_deterministic(self) -> bool:
        if len(self.initial) > 1:
            return False
        for targets in self._succ.values():
            for a, dst in targets.items():
                if a == TAU or len(dst) > 1:
                    return False
        return True

    def is_input_enabled(self) -> bool:
        return not list(missing_inputs(self))

    def __repr__(self):
        return (f"Automaton(name={self.name!r}, kind={self.kind!r}, "
                f"states={len(self.states)}, transitions={len(self.transitions)})")


def missing_inputs(A: Automaton):
    """Yield ``(state, input)`` pairs for which no input transition exists."""
    for s in sorted(A.states):
        enabled = A.enabled(s)
        for a in sorted(A.inputs):
            if a not in enabled:
                yield s, a


def find_tau_cycle(A: Automaton) -> list[str] | None:
    """Return one cycle of tau-transitions, or None if A is convergent.

    Iterative depth-first search with white/grey/black colouring over the
    tau-edge subgraph.
    """
    WHITE, GREY, BLACK = 0, 1, 2
    colour = dict.fromkeys(A.states, WHITE)
    for root in sorted(A.states):
        if colour[root] != WHITE:
            continue
        path = [root]
        colour[root] = GREY
        stack = [iter(sorted(A.successors(root, TAU)))]
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                colour[path.pop()] = BLACK
                continue
            c = colour.get(nxt, BLACK)
            if c == GREY:
                return path[path.index(nxt):]
            if c == WHITE:
                colour[nxt] = GREY
                path.append(nxt)
                stack.append(iter(sorted(A.successors(nxt, TAU))))
    return None


# -- validation -----------------------------------------------------------

@dataclass(frozen=True)
class Violation:
    code: str
    witness: object

    def format(self) -> str:
        w = self.witness
        if self.code == "Divergent":
            w = " -> ".join(w + w[:1])
        elif isinstance(w, tuple):
            w = ", ".join(map(str, w))
        return f"{self.code}: {w}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> set[str]:
        return {v.code for v in self.violations}

    def format(self) -> str:
        if self.ok:
            return "ok"
        return "\n".join(v.format() for v in self.violations)

    def to_dict(self) -> dict:
        return {"ok": self.ok,
                "violations": [{"code": v.code, "witness": v.witness} for v in self.violations]}


def validate(A: Automaton, kind: str | None = None) -> ValidationReport:
    """Report every invariant of ``kind`` (default: ``A.kind``) that A violates.

    Nothing is raised; all problems end up in the report.  For ``qts`` the
    rules R1-R4 are checked as well.
    """
    kind = kind or A.kind
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    report = ValidationReport()
    add = report.violations.append

    if not A.initial:
        add(Violation("EmptyInitial", ()))
    for a in sorted(A.inputs & A.outputs):
        add(Violation("AlphabetOverlap", a))
    for a in sorted(A.labels & RESERVED):
        add(Violation("ReservedLabel", a))
    for s in sorted(A.initial - A.states):
        add(Violation("DanglingState", s))
    dangling = set()
    for src, a, dst in sorted(A.transitions):
        for s in (src, dst):
            if s not in A.states and s not in dangling:
                dangling.add(s)
                add(Violation("DanglingState", s))
        if a not in A.labels and a not in RESERVED:
            add(Violation("UndeclaredLabel", (src, a, dst)))
        elif a == DELTA and kind == "lts":
            add(Violation("DeltaNotAllowed", (src, a, dst)))

    if kind in ("iots", "qts"):
        for s, a in missing_inputs(A):
            add(Violation("InputNotEnabled", (s, a)))
        cycle = find_tau_cycle(A)
        if cycle:
            add(Violation("Divergent", cycle))

    if kind == "qts" and report.ok:
        from .quiescence import check_rules

        rules = check_rules(A, ("R1", "R2", "R3", "R4"))
        for rule, result in rules.results.items():
            for w in result.witnesses:
                add(Violation(rule, w))
    return report


# -- demonic completion ---------------------------------------------------

def demonic_completion(A: Automaton) -> Automaton:
    """Route every missing input to a fresh all-accepting sink state.

    Only defined for deterministic automata; an already input-enabled
    automaton is returned unchanged.
    """
    if not A.is_deterministic():
        raise NondeterministicInput("demonic completion requires a deterministic automaton")
    missing = list(missing_inputs(A))
    if not missing:
        return A
    if SINK in A.states:
        raise NameCollision(f"state name {SINK!r} is reserved for the completion sink")
    extra = {(s, a, SINK) for s, a in missing}
    extra |= {(SINK, a, SINK) for a in A.labels}
    return A.replace(states=A.states | {SINK}, transitions=A.transitions | extra)


# -- isomorphism ----------------------------------------------------------

def _edge_labels(A: Automaton) -> dict[tuple[str, str], frozenset[str]]:
    edges: dict[tuple[str, str], set[str]] = {}
    for src, a, dst in A.transitions:
        edges.setdefault((src, dst), set()).add(a)
    return {k: frozenset(v) for k, v in edges.items()}


def _as_graph(A: Automaton) -> nx.DiGraph:
    g = nx.DiGraph()
    for s in A.states:
        g.add_node(s, initial=s in A.initial)
    for (src, dst), labels in _edge_labels(A).items():
        g.add_edge(src, dst, labels=labels)
    return g


def isomorphic(A: Automaton, B: Automaton, hint: Mapping[str, str] | None = None) -> bool:
    """Decide whether a label- and initial-preserving state bijection exists.

    With ``hint`` only that bijection is checked.  Otherwise a VF2 search is
    run over the graphs whose edges carry the set of labels between two
    states, which is enough because transitions form a relation.
    """
    if A.inputs != B.inputs or A.outputs != B.outputs:
        raise AlphabetMismatch(
            f"alphabets differ: {sorted(A.inputs)}/{sorted(A.outputs)} vs "
            f"{sorted(B.inputs)}/{sorted(B.outputs)}")
    if len(A.states) != len(B.states) or len(A.transitions) != len(B.transitions):
        return False
    if hint is not None:
        if set(hint) != set(A.states) or set(hint.values()) != set(B.states):
            return False
        if {hint[s] for s in A.initial} != set(B.initial):
            return False
        mapped = {(hint[s], a, hint[t]) for s, a, t in A.transitions}
        return mapped == B.transitions
    matcher = nx_iso.DiGraphMatcher(
        _as_graph(A), _as_graph(B),
        node_match=lambda x, y: x["initial"] == y["initial"],
        edge_match=lambda x, y: x["labels"] == y["labels"],
    )
    return matcher.is_isomorphic()
