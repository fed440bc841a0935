"""Command-line front end.

Exit codes: 0 success or pass, 1 conformance/test/rule failure, 2 usage,
parse or validation error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import textformat
from .conformance import ioco_check
from .errors import QltsError, ValidationFailed
from .model import demonic_completion, isomorphic, validate
from .operations import determinise, hide, parallel
from .quiescence import ALL_RULES, check_rules, deltafy
from .testing import execute_test, generate_tests
from .traces import format_trace, traces_bounded

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _colour(stream) -> bool:
    setting = os.environ.get("QLTS_COLOR", "auto")
    if setting == "always":
        return True
    if setting == "never":
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _paint(text, ok, enabled):
    if not enabled:
        return text
    return f"\033[{32 if ok else 31}m{text}\033[0m"


def _witness(w) -> str:
    if isinstance(w, tuple):
        return "(" + ", ".join(format_trace(x) if isinstance(x, tuple) else str(x) for x in w) + ")"
    return str(w)


def cmd_validate(args, out):
    A = textformat.load(args.file, validate_kind=False)
    report = validate(A, args.kind)
    out.write(report.format() + "\n")
    return EXIT_OK if report.ok else EXIT_ERROR


def cmd_rules(args, out):
    A = textformat.load(args.file, validate_kind=False)
    report = check_rules(A)
    if args.json:
        out.write(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
    else:
        colour = _colour(out)
        width = max(map(len, ALL_RULES))
        for rule in ALL_RULES:
            r = report[rule]
            status = _paint("holds" if r.holds else "VIOLATED", r.holds, colour)
            line = f"{rule:<{width}}  {status}"
            if r.witnesses:
                line += "  " + " ".join(_witness(w) for w in r.witnesses)
            out.write(line + "\n")
    return EXIT_OK if report.qts_ok else EXIT_FAIL


def _write(A, path):
    textformat.dump(A, path)


def cmd_deltafy(args, out):
    A = textformat.load(args.input, validate_kind=False)
    _require_valid(A, "iots")
    _write(deltafy(A, strict=not args.fast), args.output)
    return EXIT_OK


def _require_valid(A, kind):
    report = validate(A, kind)
    if not report.ok:
        raise ValidationFailed(report)


def cmd_det(args, out):
    _write(determinise(textformat.load(args.input)), args.output)
    return EXIT_OK


def cmd_par(args, out):
    _write(parallel(textformat.load(args.a), textformat.load(args.b)), args.output)
    return EXIT_OK


def cmd_hide(args, out):
    labels = [x for x in args.labels.split(",") if x]
    _write(hide(textformat.load(args.input), labels), args.output)
    return EXIT_OK


def cmd_traces(args, out):
    A = textformat.load(args.input)
    for sigma in traces_bounded(A, args.depth):
        out.write(format_trace(sigma) + "\n")
    return EXIT_OK


def cmd_ioco(args, out):
    verdict = ioco_check(textformat.load(args.impl), textformat.load(args.spec))
    out.write(_paint(verdict.describe(), verdict.passed, _colour(out)) + "\n")
    return EXIT_OK if verdict.passed else EXIT_FAIL


def cmd_testgen(args, out):
    spec = textformat.load(args.spec)
    outdir = Path(args.output)
    outdir.mkdir(parents=True, exist_ok=True)
    for test in generate_tests(spec, args.depth, args.count, args.seed):
        path = outdir / f"{test.name}.qtest"
        path.write_text(textformat.serialise_test(test), encoding="utf-8")
        out.write(f"{path}\n")
    return EXIT_OK


def cmd_exec(args, out):
    test = textformat.parse_test(Path(args.test).read_text(encoding="utf-8"))
    sut = textformat.load(args.sut)
    mode = "randomised" if args.mode == "random" else args.mode
    result = execute_test(test, sut, mode, args.seed)
    colour = _colour(out)
    for trace, verdict in result.runs:
        out.write(f"{verdict:<4}  {format_trace(trace)}\n")
    out.write(_paint(result.verdict.upper(), result.passed, colour) + "\n")
    return EXIT_OK if result.passed else EXIT_FAIL


def cmd_iso(args, out):
    same = isomorphic(textformat.load(args.a, False), textformat.load(args.b, False))
    out.write(("isomorphic" if same else "not isomorphic") + "\n")
    return EXIT_OK if same else EXIT_FAIL


def cmd_complete(args, out):
    A = textformat.load(args.input, validate_kind=False)
    _write(demonic_completion(A), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qlts", description="Quiescent transition system toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check structural invariants for a kind")
    s.add_argument("file")
    s.add_argument("--kind", choices=("lts", "iots", "qts"))
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("rules", help="report R1-R4, R3', R4' and C1")
    s.add_argument("file")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_rules)

    s = sub.add_parser("deltafy", help="add delta loops to quiescent states")
    s.add_argument("input")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--fast", action="store_true", help="skip precondition checks")
    s.set_defaults(func=cmd_deltafy)

    s = sub.add_parser("det", help="determinise")
    s.add_argument("input")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_det)

    s = sub.add_parser("par", help="parallel composition")
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_par)

    s = sub.add_parser("hide", help="hide output labels")
    s.add_argument("input")
    s.add_argument("--labels", required=True, help="comma-separated output labels")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_hide)

    s = sub.add_parser("traces", help="list traces up to a depth")
    s.add_argument("input")
    s.add_argument("--depth", type=int, required=True)
    s.set_defaults(func=cmd_traces)

    s = sub.add_parser("ioco", help="check impl ioco spec")
    s.add_argument("impl")
    s.add_argument("spec")
    s.set_defaults(func=cmd_ioco)

    s = sub.add_parser("testgen", help="generate test cases from a specification")
    s.add_argument("spec")
    s.add_argument("--depth", type=int, required=True)
    s.add_argument("--count", type=int, default=10)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("-o", "--output", required=True, help="output directory")
    s.set_defaults(func=cmd_testgen)

    s = sub.add_parser("exec", help="execute a test case against a simulated SUT")
    s.add_argument("test")
    s.add_argument("sut")
    s.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(func=cmd_exec)

    s = sub.add_parser("iso", help="decide isomorphism")
    s.add_argument("a")
    s.add_argument("b")
    s.set_defaults(func=cmd_iso)

    s = sub.add_parser("complete", help="demonic completion of a deterministic automaton")
    s.add_argument("input")
    s.add_argument("-o", "--output", required=True)
    s.set_defaults(func=cmd_complete)
    return p


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, stdout)
    except _Usage as exc:
        stderr.write(f"usage error: {exc}\n")
    except (QltsError, OSError) as exc:
        stderr.write(f"error: {exc}\n")
    return EXIT_ERROR


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
