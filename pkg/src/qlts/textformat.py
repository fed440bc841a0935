"""Line-oriented text format for automata (``.qa``) and test cases (``.qtest``).

Automaton grammar, one directive per line, ``#`` starts a comment::

    automaton <name> <lts|iots|qts>
    inputs <name>*
    outputs <name>*
    states <id>+
    initial <id>+
    trans <src> <label> <dst>

Test cases use the same header style followed by an indented tree, two
spaces per level.  Children of an ``OBS`` node are prefixed with the label
they answer, e.g. ``delta => FAIL``.
"""

from __future__ import annotations

from pathlib import Path

from .errors import ParseError, ValidationFailed
from .model import DELTA, KINDS, RESERVED, TAU, Automaton, validate
from .testing import FAIL, PASS, Fail, Observe, Pass, Stimulate, TestCase


def _tokens(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        toks = []
        for tok in raw.split():
            if tok.startswith("#"):
                break
            toks.append(tok)
        yield lineno, raw, toks


def parse(text: str, validate_kind: bool = True) -> Automaton:
    """Parse a ``.qa`` document; by default validate it for its declared kind."""
    header = None
    inputs, outputs, states, initial = [], [], [], []
    trans = []
    for lineno, _, toks in _tokens(text):
        if not toks:
            continue
        head, args = toks[0], toks[1:]
        if header is None:
            if head != "automaton":
                raise ParseError(lineno, "expected 'automaton <name> <kind>' header")
            if len(args) != 2:
                raise ParseError(lineno, "header takes a name and a kind")
            if args[1] not in KINDS:
                raise ParseError(lineno, f"unknown kind {args[1]!r}")
            header = args
        elif head == "automaton":
            raise ParseError(lineno, "duplicate header")
        elif head == "inputs":
            inputs += [(lineno, a) for a in args]
        elif head == "outputs":
            outputs += [(lineno, a) for a in args]
        elif head == "states":
            if not args:
                raise ParseError(lineno, "'states' needs at least one id")
            states += args
        elif head == "initial":
            if not args:
                raise ParseError(lineno, "'initial' needs at least one id")
            initial += args
        elif head == "trans":
            if len(args) != 3:
                raise ParseError(lineno, "'trans' takes <src> <label> <dst>")
            trans.append((lineno, tuple(args)))
        else:
            raise ParseError(lineno, f"unknown directive {head!r}")
    if header is None:
        raise ParseError(1, "empty document")

    for lineno, a in inputs + outputs:
        if a in RESERVED:
            raise ParseError(lineno, f"{a!r} is reserved and cannot be declared")
    declared = {a for _, a in inputs + outputs} | RESERVED
    for lineno, (_, label, _) in trans:
        if label not in declared:
            raise ParseError(lineno, f"undeclared label {label!r}")

    A = Automaton(
        frozenset(states),
        frozenset(initial),
        frozenset(a for _, a in inputs),
        frozenset(a for _, a in outputs),
        frozenset(t for _, t in trans),
        header[1],
        header[0],
    )
    if validate_kind:
        report = validate(A)
        if not report.ok:
            raise ValidationFailed(report)
    return A


def serialise(A: Automaton) -> str:
    """Canonical text: sorted declarations, transitions sorted by (src, label, dst)."""
    for s in A.states | A.labels:
        if not s or any(c.isspace() for c in s) or s.startswith("#"):
            raise ValueError(f"name {s!r} cannot be written in the text format")
    lines = [
        f"automaton {A.name} {A.kind}",
        " ".join(["inputs", *sorted(A.inputs)]),
        " ".join(["outputs", *sorted(A.outputs)]),
        " ".join(["states", *sorted(A.states)]),
        " ".join(["initial", *sorted(A.initial)]),
    ]
    lines += [f"trans {s} {a} {t}" for s, a, t in sorted(A.transitions)]
    return "\n".join(lines) + "\n"


def load(path, validate_kind: bool = True) -> Automaton:
    return parse(Path(path).read_text(encoding="utf-8"), validate_kind)


def dump(A: Automaton, path) -> None:
    Path(path).write_text(serialise(A), encoding="utf-8")


def to_dot(A: Automaton) -> str:
    """Best-effort Graphviz rendering; inputs get '?', outputs '!'."""
    def show(a):
        if a in A.inputs:
            return a + "?"
        if a in A.outputs:
            return a + "!"
        return {TAU: "τ", DELTA: "δ"}.get(a, a)

    lines = [f'digraph "{A.name}" {{', "  rankdir=LR;"]
    for s in sorted(A.initial):
        lines.append(f'  "__init_{s}" [shape=point]; "__init_{s}" -> "{s}";')
    for s in sorted(A.states):
        lines.append(f'  "{s}" [shape=circle];')
    for s, a, t in sorted(A.transitions):
        lines.append(f'  "{s}" -> "{t}" [label="{show(a)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- test cases -----------------------------------------------------------

def serialise_test(test: TestCase) -> str:
    lines = [
        f"testcase {test.name}",
        " ".join(["inputs", *sorted(test.inputs)]),
        " ".join(["outputs", *sorted(test.outputs)]),
    ]

    def emit(node, indent, prefix=""):
        pad = "  " * indent + prefix
        if isinstance(node, Pass):
            lines.append(pad + "PASS")
        elif isinstance(node, Fail):
            lines.append(pad + "FAIL")
        elif isinstance(node, Stimulate):
            lines.append(pad + f"STIM {node.input}")
            emit(node.child, indent + 1)
        else:
            lines.append(pad + "OBS")
            for label in sorted(node.branches):
                emit(node.branches[label], indent + 1, f"{label} => ")

    emit(test.root, 0)
    return "\n".join(lines) + "\n"


def parse_test(text: str) -> TestCase:
    name = None
    inputs: list[str] = []
    outputs: list[str] = []
    body = []
    for lineno, raw, toks in _tokens(text):
        if not toks:
            continue
        if name is None:
            if toks[0] != "testcase" or len(toks) != 2:
                raise ParseError(lineno, "expected 'testcase <name>' header")
            name = toks[1]
        elif not body and toks[0] == "inputs":
            inputs += toks[1:]
        elif not body and toks[0] == "outputs":
            outputs += toks[1:]
        else:
            stripped = raw.lstrip(" ")
            width = len(raw) - len(stripped)
            if width % 2:
                raise ParseError(lineno, "indentation must be a multiple of two spaces")
            body.append((lineno, width // 2, toks))
    if name is None:
        raise ParseError(1, "empty document")
    if not body:
        raise ParseError(1, "missing test tree")
    observable = set(outputs) | {DELTA}
    pos = 0

    def node(indent):
        nonlocal pos
        if pos >= len(body):
            raise ParseError(body[-1][0], "unexpected end of tree")
        lineno, level, toks = body[pos]
        if level != indent:
            raise ParseError(lineno, f"expected indentation level {indent}")
        pos += 1
        kind = toks[0]
        if kind == "PASS" and len(toks) == 1:
            return PASS
        if kind == "FAIL" and len(toks) == 1:
            return FAIL
        if kind == "STIM" and len(toks) == 2:
            if toks[1] not in inputs:
                raise ParseError(lineno, f"{toks[1]!r} is not a declared input")
            return Stimulate(toks[1], node(indent + 1))
        if kind == "OBS" and len(toks) == 1:
            branches = {}
            while pos < len(body) and body[pos][1] == indent + 1:
                blineno, _, btoks = body[pos]
                if len(btoks) < 3 or btoks[1] != "=>":
                    raise ParseError(blineno, "observation branch must read '<label> => NODE'")
                label = btoks[0]
                if label not in observable or label in branches:
                    raise ParseError(blineno, f"bad or repeated observation label {label!r}")
                body[pos] = (blineno, indent + 1, btoks[2:])
                branches[label] = node(indent + 1)
            if set(branches) != observable:
                raise ParseError(lineno, "OBS node must cover every output and delta")
            return Observe(branches)
        raise ParseError(lineno, f"malformed node {' '.join(toks)!r}")

    root = node(0)
    if pos != len(body):
        raise ParseError(body[pos][0], "trailing lines after the test tree")
    return TestCase(frozenset(inputs), frozenset(outputs), root, name)
