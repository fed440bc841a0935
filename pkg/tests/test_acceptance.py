"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -s`` to see the lines as
they are produced; they are also repeated in the terminal summary.
"""

import random

import pytest

from qlts import (
    DELTA,
    DivergenceIntroduced,
    PreconditionViolated,
    check_condition_c1,
    check_rules,
    deltafy,
    determinise,
    execute_test,
    generate_tests,
    hide,
    ioco_check,
    isomorphic,
    out_set,
    parallel,
    parse,
    serialise,
    trace_equivalent,
    trace_included,
    traces_bounded,
)
from qlts.generators import (
    mutate,
    random_iots,
    random_partial_qts,
    random_qts,
    random_rule_candidate,
)
from qlts.traces import distinguishing_trace

from . import oracles
from .conftest import ACCEPTANCE_LINES, load_fixture

pytestmark = pytest.mark.acceptance

CORPUS_SIZE = 500
PAIRS = 200
DEPTH = 6
EXACT = ("R1", "R2", "R3", "R4")
PRECONDITIONS = ("R2", "R3", "R4", "C1")


def record(number, title, ok, detail):
    line = f"criterion {number:>2} {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def rename_labels(A, mapping):
    m = lambda a: mapping.get(a, a)  # noqa: E731
    return A.replace(
        inputs=frozenset(map(m, A.inputs)),
        outputs=frozenset(map(m, A.outputs)),
        transitions=frozenset((s, m(a), t) for s, a, t in A.transitions),
    )


def disjoint_partner(A, B, rng):
    """Give B fresh output names and, sometimes, an input that consumes one of A's outputs."""
    mapping = dict(zip(sorted(B.outputs), ("u", "v", "w")))
    if A.outputs and rng.random() < 0.6:
        mapping[max(B.inputs)] = min(A.outputs)
    return rename_labels(B, mapping)


def random_subset(rng, items, nonempty=True):
    items = sorted(items)
    chosen = {x for x in items if rng.random() < 0.5}
    if nonempty and items and not chosen:
        chosen = {rng.choice(items)}
    return chosen


@pytest.fixture(scope="module")
def corpus():
    rng = random.Random(1)
    return [random_qts(rng, 12, 3, 3) for _ in range(CORPUS_SIZE)]


def test_c01_closure(corpus):
    rng = random.Random(101)
    violations, hides, pars = [], 0, 0
    for i, A in enumerate(corpus):
        if not check_rules(determinise(A), EXACT).qts_ok:
            violations.append(("det", i))
        try:
            H = hide(A, random_subset(rng, A.outputs))
            hides += 1
            if not check_rules(H, EXACT).qts_ok:
                violations.append(("hide", i))
        except DivergenceIntroduced:
            pass
        B = disjoint_partner(A, corpus[(i + 1) % len(corpus)], rng)
        P = parallel(A, B)
        pars += 1
        if not check_rules(P, EXACT).qts_ok:
            violations.append(("par", i))
    ok = not violations and len(corpus) >= 500 and hides >= 200 and pars >= 500
    record(1, "closure under det/hide/par", ok,
           f"{len(corpus)} det, {hides} hide, {pars} par, {len(violations)} violations")


def test_c02_determinisation_trace_equivalence(corpus):
    exact_bad = bounded_bad = 0
    for A in corpus:
        D = determinise(A)
        exact_bad += not trace_equivalent(A, D)
        bounded_bad += traces_bounded(D, DEPTH).traces != oracles.bounded_traces(A, DEPTH)
    record(2, "det(A) trace equivalent to A", exact_bad == bounded_bad == 0,
           f"{len(corpus)} automata, exact mismatches {exact_bad}, depth-{DEPTH} mismatches {bounded_bad}")


def test_c03_hiding_is_projection():
    rng = random.Random(103)
    checked = bad = 0
    while checked < PAIRS:
        A = random_iots(rng, 12, 3, 3)
        H = random_subset(rng, A.outputs)
        try:
            hidden = hide(A, H)
        except DivergenceIntroduced:
            continue
        checked += 1
        projection = oracles.dfa_automaton(A, silent=H)
        exact = trace_equivalent(hidden, projection) and oracles.dfa_equivalent(hidden, A, b_silent=H)
        bounded = traces_bounded(hidden, DEPTH).traces == oracles.bounded_traces(A, DEPTH, silent=H)
        bad += not (exact and bounded)
    record(3, "hide(A,H) equals projection", bad == 0,
           f"{checked} IOTSs, {bad} mismatches (exact and depth {DEPTH})")


def _par_checks(gen, rng):
    inclusion_bad = intersection_bad = 0
    extra = {DELTA} if gen is random_qts else set()
    for _ in range(PAIRS):
        A = gen(rng, 6, inputs=("a", "b"), outputs=("x",))
        B = gen(rng, 6, inputs=("a", "x"), outputs=("y",))
        P = traces_bounded(parallel(A, B), DEPTH)
        for X in (A, B):
            inclusion_bad += not P.project(X.labels | extra) <= oracles.bounded_traces(X, DEPTH)
        A = gen(rng, 6, inputs=("a", "b"), outputs=("x",))
        B = gen(rng, 6, inputs=("x",), outputs=("a", "b"))
        both = oracles.bounded_traces(A, DEPTH) & oracles.bounded_traces(B, DEPTH)
        intersection_bad += traces_bounded(parallel(A, B), DEPTH).traces != both
    return inclusion_bad, intersection_bad


def test_c04_parallel_traces():
    rng = random.Random(104)
    iots = _par_checks(random_iots, rng)
    qts = _par_checks(random_qts, rng)
    record(4, "parallel projection inclusion and intersection", iots == qts == (0, 0),
           f"{PAIRS} pairs per check at depth {DEPTH}; IOTS failures {iots}, QTS failures {qts}")


def test_c05_deltafication(corpus):
    rng = random.Random(105)
    invalid = not_idem = wrong = 0
    for _ in range(CORPUS_SIZE):
        A = random_iots(rng, 12, 3, 3)
        D = deltafy(A)
        invalid += not check_rules(D, EXACT).qts_ok
        not_idem += deltafy(D) != D
        wrong += D != oracles.deltafy_reference(A)
    changed = sum(deltafy(Q) != Q for Q in corpus)
    ok = invalid == not_idem == wrong == changed == 0
    record(5, "deltafication valid, idempotent, identity on QTSs", ok,
           f"{CORPUS_SIZE} IOTSs: {invalid} invalid, {not_idem} not idempotent, {wrong} differ from "
           f"reference; {len(corpus)} QTSs changed: {changed}")


def _precondition_ok(A):
    return not check_rules(A, PRECONDITIONS).violated()


def test_c06_commutativity():
    rng = random.Random(106)
    gens = (random_iots, random_partial_qts, random_qts)
    hide_n = hide_bad = hide_rejects = 0
    while hide_n < PAIRS:
        A = rng.choice(gens)(rng, 10)
        H = random_subset(rng, A.outputs)
        if not _precondition_ok(A):
            continue
        try:
            hidden = hide(A, H)
        except DivergenceIntroduced:
            continue
        hide_n += 1
        hide_rejects += not _precondition_ok(hidden)
        left = deltafy(hidden, strict=False)
        right = hide(deltafy(A), H)
        hide_bad += not isomorphic(left, right, {s: s for s in A.states})
    par_n = par_bad = strict_rejects = 0
    while par_n < PAIRS:
        A = rng.choice(gens)(rng, 7)
        B = disjoint_partner(A, rng.choice(gens)(rng, 7), rng)
        if not (_precondition_ok(A) and _precondition_ok(B)):
            continue
        par_n += 1
        P = parallel(A, B)
        strict_rejects += not _precondition_ok(P)
        left = deltafy(P, strict=False)
        right = parallel(deltafy(A), deltafy(B))
        par_bad += left.states != right.states or not isomorphic(left, right, {s: s for s in left.states})
    ok = hide_bad == par_bad == 0
    record(6, "deltafication commutes with hide and par", ok,
           f"{hide_n} hide instances ({hide_bad} non-isomorphic; hide(A,H) outside strict "
           f"preconditions in {hide_rejects}), {par_n} par instances ({par_bad} non-isomorphic; "
           f"A||B outside strict preconditions in {strict_rejects})")


def test_c07_det_delta_noncommutation():
    A = load_fixture("det_delta_noncommute")
    left, right = determinise(deltafy(A)), deltafy(determinise(A))
    included, cex = trace_included(left, right)
    witness = distinguishing_trace(left, left.initial, right, right.initial)
    ok = (not A.is_deterministic() and not trace_equivalent(left, right)
          and cex == ("a", DELTA) and witness == ("a", DELTA)
          and not oracles.dfa_equivalent(left, right))
    record(7, "det and deltafy do not commute", ok, f"distinguishing trace {witness}")


def test_c08_rule_violation_fixtures():
    flagged = {}
    for rule in EXACT:
        A = load_fixture(f"{rule.lower()}_violation", validate_kind=False)
        report = check_rules(A, EXACT)
        flagged[rule] = [r for r in EXACT if not report.holds(r)]
    r3 = load_fixture("r3_violation", validate_kind=False)
    [(_, _, r3_trace)] = check_rules(r3)["R3"].witnesses
    r4 = load_fixture("r4_violation", validate_kind=False)
    [(_, t, u, r4_trace)] = check_rules(r4)["R4"].witnesses
    in_t = r4_trace in oracles.bounded_traces(r4, len(r4_trace), [t])
    in_u = r4_trace in oracles.bounded_traces(r4, len(r4_trace), [u])
    ok = (all(flagged[r] == [r] for r in EXACT) and r3_trace == ("a", "c")
          and r4.successors(t, DELTA) >= {u} and in_t != in_u)
    record(8, "rule-violation fixtures", ok,
           f"flags {flagged}; R3 trace {r3_trace}; R4 trace {r4_trace} separates {t}/{u}")


def test_c09_c1_counterexample():
    A = load_fixture("c1_violation")
    ok_c1, witnesses = check_condition_c1(A)
    try:
        deltafy(A)
        rejected = False
    except PreconditionViolated as exc:
        rejected = exc.rule == "C1"
    fast = check_rules(deltafy(A, strict=False), EXACT)
    ok = (not ok_c1 and witnesses == [("s0", "s1", ("a",))] and rejected
          and not fast.holds("R3") and not oracles.c1_bounded(A, 1))
    record(9, "C1 counterexample", ok,
           f"witness {witnesses}, strict rejects {rejected}, fast output R3 witnesses "
           f"{fast['R3'].witnesses}")


def test_c10_ioco_examples():
    spec = load_fixture("ioco_spec")
    results = {n: ioco_check(load_fixture(f"ioco_impl{n}"), spec) for n in range(1, 5)}
    ok = (out_set(spec, ()) == {"a", "b", DELTA}
          and results[1].passed and results[2].passed
          and results[3].counterexample == ((), "d")
          and results[4].counterexample == (("c",), DELTA))
    record(10, "ioco examples", ok, "; ".join(f"impl{n}: {v.describe()}" for n, v in results.items()))


def _ioco_pair(rng):
    sizes = dict(inputs=("a", "b"), outputs=("x", "y"))
    base = random_iots(rng, 8, **sizes)
    roll = rng.random()
    if roll < 0.5:
        other = mutate(base, rng)
    elif roll < 0.7:
        other = base.replace(transitions=base.transitions
                             - {t for t in sorted(base.transitions) if t[1] in base.outputs and rng.random() < 0.3})
    else:
        other = random_iots(rng, 8, **sizes)
    return deltafy(other, strict=False), deltafy(base, strict=False)


def test_c11_ioco_is_trace_inclusion():
    rng = random.Random(111)
    disagreements = passes = 0
    n = 400
    for _ in range(n):
        impl, spec = _ioco_pair(rng)
        verdict = ioco_check(impl, spec)
        passes += verdict.passed
        disagreements += verdict.passed != trace_included(impl, spec)[0]
        disagreements += verdict.passed != oracles.dfa_included(impl, spec)
    record(11, "ioco agrees with trace inclusion", disagreements == 0 and n >= 300,
           f"{n} pairs ({passes} pass, {n - passes} fail), {disagreements} disagreements")


def test_c12_test_soundness_and_exhaustiveness():
    rng = random.Random(112)
    pass_pairs = fail_pairs = unsound = undetected = bad_cex = 0
    while pass_pairs < 100 or fail_pairs < 100:
        impl, spec = _ioco_pair(rng)
        verdict = ioco_check(impl, spec)
        if verdict.passed:
            if pass_pairs >= 100:
                continue
            pass_pairs += 1
            for test in generate_tests(spec, depth=5, count=10, seed=pass_pairs):
                unsound += not execute_test(test, impl).passed
            continue
        if fail_pairs >= 100:
            continue
        fail_pairs += 1
        sigma, _ = verdict.counterexample
        found = None
        for seed in range(200):
            for test in generate_tests(spec, depth=len(sigma) + 1, count=10, seed=seed,
                                       weights=(0, 1, 1)):
                failing = execute_test(test, impl).failing_runs()
                if failing:
                    found = failing[0]
                    break
            if found:
                break
        if found is None:
            undetected += 1
        elif not oracles.is_ioco_counterexample(impl, spec, found[:-1], found[-1]):
            bad_cex += 1
    ok = unsound == undetected == bad_cex == 0
    record(12, "generated tests sound and failure-revealing", ok,
           f"{pass_pairs} conforming pairs x 10 tests: {unsound} false fails; {fail_pairs} "
           f"non-conforming pairs: {undetected} undetected, {bad_cex} failing runs not ioco "
           f"counterexamples")


def test_c13_primed_rules(corpus):
    rng = random.Random(113)
    population = list(corpus)
    population += [random_rule_candidate(rng, 12) for _ in range(CORPUS_SIZE)]
    population += [random_partial_qts(rng, 12) for _ in range(CORPUS_SIZE // 2)]
    r3_counter = r4_counter = r3_live = r4_live = 0
    for A in population:
        report = check_rules(A, ("R3", "R4", "R3prime", "R4prime"))
        if report.holds("R3prime"):
            r3_live += 1
            r3_counter += not report.holds("R3")
        if report.holds("R4prime"):
            r4_live += 1
            r4_counter += not report.holds("R4")
    r3_fail = sum(not check_rules(A, ("R3",)).holds("R3") for A in population)
    record(13, "R3' implies R3 and R4' implies R4", r3_counter == r4_counter == 0,
           f"{len(population)} automata ({r3_fail} violate R3); R3' held on {r3_live}, "
           f"R4' on {r4_live}; counter-instances {r3_counter}/{r4_counter}")


def test_c14_format_round_trip(corpus):
    rng = random.Random(114)
    population = list(corpus) + [random_partial_qts(rng, 12) for _ in range(200)]
    bad = 0
    for A in population:
        text = serialise(A)
        B = parse(text)
        same = (B.states, B.initial, B.inputs, B.outputs, B.transitions, B.kind, B.name) == \
            (A.states, A.initial, A.inputs, A.outputs, A.transitions, A.kind, A.name)
        bad += not same or serialise(B) != text
    record(14, "format round trip", bad == 0, f"{len(population)} automata, {bad} failures")
