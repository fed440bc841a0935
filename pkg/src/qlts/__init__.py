"""Quiescent transition systems: modelling, transformation and ioco testing."""

from .conformance import Verdict, ioco_check, out_set
from .errors import (
    AlphabetMismatch,
    DeltaNotHideable,
    DivergenceIntroduced,
    NameCollision,
    NondeterministicInput,
    NotAnOutput,
    NotInputEnabled,
    OutputOverlap,
    ParseError,
    PreconditionViolated,
    QltsError,
    UnknownLabel,
    ValidationFailed,
)
from .model import (
    DELTA,
    TAU,
    Automaton,
    LabelKind,
    ValidationReport,
    Violation,
    demonic_completion,
    find_tau_cycle,
    isomorphic,
    validate,
)
from .operations import determinise, hide, parallel
from .quiescence import (
    RuleReport,
    RuleResult,
    check_condition_c1,
    check_rules,
    deltafy,
    is_quiescent,
    quiescent_states,
)
from .testing import (
    FAIL,
    PASS,
    ExecutionResult,
    Fail,
    Observe,
    Pass,
    Stimulate,
    TestCase,
    execute_test,
    generate_tests,
)
from .textformat import dump, load, parse, parse_test, serialise, serialise_test, to_dot
from .traces import (
    EPSILON,
    TraceSet,
    format_trace,
    is_prefix,
    is_proper_prefix,
    out,
    project,
    trace_equivalent,
    trace_included,
    traces_bounded,
    weak_reach,
)

__version__ = "0.1.0"

__all__ = [
    "DELTA",
    "EPSILON",
    "FAIL",
    "PASS",
    "TAU",
    "AlphabetMismatch",
    "Automaton",
    "DeltaNotHideable",
    "DivergenceIntroduced",
    "ExecutionResult",
    "Fail",
    "LabelKind",
    "NameCollision",
    "NondeterministicInput",
    "NotAnOutput",
    "NotInputEnabled",
    "Observe",
    "OutputOverlap",
    "ParseError",
    "Pass",
    "PreconditionViolated",
    "QltsError",
    "RuleReport",
    "RuleResult",
    "Stimulate",
    "TestCase",
    "TraceSet",
    "UnknownLabel",
    "ValidationFailed",
    "ValidationReport",
    "Verdict",
    "Violation",
    "check_condition_c1",
    "check_rules",
    "deltafy",
    "demonic_completion",
    "determinise",
    "dump",
    "execute_test",
    "find_tau_cycle",
    "format_trace",
    "generate_tests",
    "hide",
    "ioco_check",
    "is_prefix",
    "is_proper_prefix",
    "is_quiescent",
    "isomorphic",
    "load",
    "out",
    "out_set",
    "parallel",
    "parse",
    "parse_test",
    "project",
    "quiescent_states",
    "serialise",
    "serialise_test",
    "to_dot",
    "trace_equivalent",
    "trace_included",
    "traces_bounded",
    "validate",
    "weak_reach",
]
