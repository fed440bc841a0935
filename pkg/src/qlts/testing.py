"""Test-case generation from a specification QTS and execution against simulated SUTs.

A test case is a finite tree.  At every node the tester either supplies an
input (:class:`Stimulate`), watches the system (:class:`Observe`, with one
branch for every output and for delta) or stops with :data:`PASS`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Union

from .errors import AlphabetMismatch
from .model import DELTA, Automaton
from .traces import Trace, enabled_visible, step, tau_closure

PASS_VERDICT = "pass"
FAIL_VERDICT = "fail"


@dataclass(frozen=True)
class Pass:
    pass


@dataclass(frozen=True)
class Fail:
    pass


PASS = Pass()
FAIL = Fail()


@dataclass(frozen=True)
class Stimulate:
    input: str
    child: "Node"


@dataclass(frozen=True)
class Observe:
    branches: dict  # label -> Node, total over outputs | {delta}

    def __hash__(self):
        return hash(tuple(sorted(self.branches.items(), key=lambda kv: kv[0])))


Node = Union[Pass, Fail, Stimulate, Observe]


def node_depth(node: Node) -> int:
    if isinstance(node, Stimulate):
        return 1 + node_depth(node.child)
    if isinstance(node, Observe):
        return 1 + max(node_depth(c) for c in node.branches.values())
    return 0


@dataclass(frozen=True)
class TestCase:
    __test__ = False  # keep pytest from collecting this class

    inputs: frozenset[str]
    outputs: frozenset[str]
    root: Node
    name: str = field(default="t", compare=False)

    @property
    def depth(self) -> int:
        return node_depth(self.root)


@dataclass
class ExecutionResult:
    verdict: str
    runs: list[tuple[Trace, str]]
    mode: str
    seed: int | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == PASS_VERDICT

    def failing_runs(self) -> list[Trace]:
        return [t for t, v in self.runs if v == FAIL_VERDICT]


def _observations(A: Automaton, states) -> set[str]:
    return {a for a in enabled_visible(A, states) if a in A.outputs or a == DELTA}


def generate_tests(
    spec: Automaton,
    depth: int,
    count: int,
    seed: int,
    weights: tuple[float, float, float] = (1.0, 1.0, 1.0),
) -> list[TestCase]:
    """Derive ``count`` sound test cases of depth at most ``depth`` from ``spec``.

    ``weights`` biases the (stop, observe, stimulate) choice made at every
    node; the default is uniform.  The result depends only on the arguments.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    rng = random.Random(seed)
    observable = sorted(spec.outputs | {DELTA})
    inputs = sorted(spec.inputs)

    def build(states, budget) -> Node:
        if budget == 0:
            return PASS
        options = [("stop", weights[0]), ("observe", weights[1])]
        if inputs:
            options.append(("stimulate", weights[2]))
        kinds = [k for k, w in options if w > 0]
        if not kinds:
            return PASS
        choice = rng.choices(kinds, weights=[w for _, w in options if w > 0])[0]
        if choice == "stop":
            return PASS
        if choice == "stimulate":
            a = rng.choice(inputs)
            return Stimulate(a, build(step(spec, states, a), budget - 1))
        allowed = _observations(spec, states)
        branches = {}
        for o in observable:
            branches[o] = build(step(spec, states, o), budget - 1) if o in allowed else FAIL
        return Observe(branches)

    start = tau_closure(spec, spec.initial)
    return [TestCase(spec.inputs, spec.outputs, build(start, depth), name=f"t{i:03d}")
            for i in range(count)]


def _check_alphabet(test: TestCase, sut: Automaton):
    if test.inputs != sut.inputs or test.outputs != sut.outputs:
        raise AlphabetMismatch("test case and SUT alphabets differ")


def execute_test(
    test: TestCase,
    sut: Automaton,
    mode: str = "exhaustive",
    seed: int | None = None,
    runs: int = 10,
) -> ExecutionResult:
    """Run ``test`` against a simulated SUT.

    ``exhaustive`` tracks the SUT as a set of states, so every observation
    any resolution of its nondeterminism can produce is explored.
    ``randomised`` follows one concrete state per run, drawn with ``seed``.
    A stimulus always wins over a pending SUT output.
    """
    _check_alphabet(test, sut)
    if mode == "exhaustive":
        results = []
        _explore(test.root, sut, tau_closure(sut, sut.initial), (), results)
    elif mode in ("randomised", "random"):
        mode = "randomised"
        rng = random.Random(seed)
        results = [_sample(test.root, sut, rng) for _ in range(runs)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    verdict = FAIL_VERDICT if any(v == FAIL_VERDICT for _, v in results) else PASS_VERDICT
    return ExecutionResult(verdict, results, mode, seed)


def _explore(node, sut, states, trace, results):
    if isinstance(node, Pass):
        results.append((trace, PASS_VERDICT))
    elif isinstance(node, Fail):
        results.append((trace, FAIL_VERDICT))
    elif isinstance(node, Stimulate):
        _explore(node.child, sut, step(sut, states, node.input), trace + (node.input,), results)
    else:
        for o in sorted(_observations(sut, states)):
            _explore(node.branches[o], sut, step(sut, states, o), trace + (o,), results)


def _sample(node, sut, rng):
    state = rng.choice(sorted(sut.initial))
    trace = ()
    while True:
        if isinstance(node, Pass):
            return trace, PASS_VERDICT
        if isinstance(node, Fail):
            return trace, FAIL_VERDICT
        if isinstance(node, Stimulate):
            targets = sorted(step(sut, [state], node.input))
            state = rng.choice(targets)
            trace += (node.input,)
            node = node.child
            continue
        moves = [(o, t) for o in sorted(_observations(sut, tau_closure(sut, [state])))
                 for t in sorted(step(sut, tau_closure(sut, [state]), o))]
        if not moves:
            # an invalid SUT that idles without delta; report it as quiescence
            moves = [(DELTA, state)]
        o, state = rng.choice(moves)
        trace += (o,)
        node = node.branches[o]
