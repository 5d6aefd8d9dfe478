"""Acceptance criteria 1-6, one PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -s`` to see the lines, or
``python3 tests/test_acceptance.py`` as a standalone script.
"""
import sys
import time

import numpy as np
import pytest

from polysemi import kernels
from polysemi.battery import EXPECTED_SEMIGROUP_COUNTS, check_operation, clause_rejections, constructor_soundness
from polysemi.construct import assemble, named_example, random_construction_spec, witness_strict_inclusion
from polysemi.core import evaluate, neutral_elements
from polysemi.enumerate import BINARY_EXTENDED, NARY_EXHAUSTIVE, enumerate_semigroups, semigroup_tables, universe
from polysemi.errors import TheoremViolation
from polysemi.reduction import conjugating_map, extend_binary, reduce_via_neutral
from polysemi.structure import classify

RESULTS = {}


def _line(k, ok, detail):
    text = f"{'PASS' if ok else 'FAIL'}  criterion {k}: {detail}"
    RESULTS[k] = ok
    return text


@pytest.fixture
def report(capsys):
    def emit(k, ok, detail):
        with capsys.disabled():
            print("\n" + _line(k, ok, detail))
    return emit


def full_qt(op):
    """Quasitriviality over every tuple, evaluated entry by entry."""
    d = kernels.digits(np.arange(op.size ** op.arity), op.size, op.arity)
    return bool((d == op.table[:, None]).any(axis=1).all())


def qt_d(op, k):
    d = kernels.digits(np.arange(op.size ** op.arity), op.size, op.arity)
    counts = (d[:, :, None] == d[:, None, :]).sum(axis=2).max(axis=1)
    hit = (d == op.table[:, None]).any(axis=1)
    return bool(hit[counts >= k].all())


def brute_associative(op):
    return kernels.brute_first_failure(op.table, op.size, op.arity)[0] == 0


# ---------------------------------------------------------------------------


def criterion_1():
    # reference values: hierarchy positions, Y and exponent stated with the worked examples
    expected = {
        "z2sq-ternary-sum": "F^3_2 \\ F^3_1",
        "diamond-join-ternary": "F^3_3 \\ F^3_2",
        "z3-7ary": "F^7_6 \\ F^7_1",
        "chain5-4ary": "F^4_3 \\ F^4_1",
        "six-elt-ternary": "F^3_2 \\ F^3_1",
    }
    problems, slowest = [], 0.0
    for name, hier in expected.items():
        F = named_example(name)
        t0 = time.perf_counter()
        r = classify(F)
        slowest = max(slowest, time.perf_counter() - t0)
        if r.hierarchy != hier:
            problems.append(f"{name} -> {r.hierarchy}")
        # independent check of the two adjacent levels
        n = F.arity
        lo, hi = (1, n - 1) if name != "diamond-join-ternary" else (n - 1, n)
        if qt_d(F, lo) or not qt_d(F, hi) or not brute_associative(F):
            problems.append(f"{name}: direct evaluation disagrees")
    z2sq = named_example("z2sq-ternary-sum")
    if neutral_elements(z2sq).elements != (0, 1, 2, 3):
        problems.append("z2sq: E_F != X")
    labels = z2sq.labels
    displayed = tuple(labels.index(s) for s in ("[1,0]", "[0,1]", "[0,0]"))
    if z2sq.carrier.label(evaluate(z2sq, displayed)) != "[1,1]":
        problems.append("z2sq: displayed value differs")
    chain = classify(named_example("chain5-4ary"))
    if chain.Y != (0, 1, 2) or chain.group.exponent != 3:
        problems.append(f"chain5: Y={chain.Y}")
    six = classify(named_example("six-elt-ternary"))
    if six.s_hierarchy != "G^3_2 \\ G^3_3" or six.arity % 2 != 1 or six.group.exponent != 2:
        problems.append(f"six-elt: {six.s_hierarchy}, exponent {six.group.exponent}")
    if slowest >= 1.0:
        problems.append(f"slowest classify {slowest:.2f}s")
    return not problems, "; ".join(problems) or f"5 fixtures exact, slowest {slowest * 1000:.0f} ms"


def criterion_2():
    problems = []
    t0 = time.perf_counter()
    for m in (1, 2, 3):
        a, b = semigroup_tables(m, "naive"), semigroup_tables(m, "backtrack")
        if not (len(a) == len(b) == EXPECTED_SEMIGROUP_COUNTS[m] and np.array_equal(a, b)):
            problems.append(f"m={m}: naive {len(a)} backtrack {len(b)}")
    quick = time.perf_counter() - t0
    t0 = time.perf_counter()
    a, b = semigroup_tables(4, "backtrack"), semigroup_tables(4, "colmajor")
    slow = time.perf_counter() - t0
    if not (len(a) == len(b) == 3492 and np.array_equal(a, b)):
        problems.append(f"m=4: row-major {len(a)} column-major {len(b)}")
    if quick >= 10 or slow >= 900:
        problems.append(f"timing {quick:.1f}s / {slow:.1f}s")
    return not problems, "; ".join(problems) or f"1, 8, 113, 3492 ({quick:.2f}s, m=4 {slow:.2f}s)"


def criterion_3():
    universes = [(2, 3, NARY_EXHAUSTIVE), (2, 4, NARY_EXHAUSTIVE),
                 (3, 3, BINARY_EXTENDED), (3, 4, BINARY_EXTENDED), (3, 5, BINARY_EXTENDED)]
    checked, names = 0, set()
    try:
        for m, n, kind in universes:
            for F in universe(m, n, kind):
                names.update(check_operation(F, subsets=True))
                checked += 1
        rng = np.random.default_rng(3)
        for n in (3, 4, 5):
            for m in (4, 5):
                for _ in range(10):
                    _, F = assemble(random_construction_spec(n, m, rng))
                    names.update(check_operation(F, subsets=True))
                    checked += 1
    except TheoremViolation as exc:
        return False, f"counterexample: {exc}"
    required = {"collapse-F1-Fn-2", "neutral-symmetry", "neutral-closure", "neutral-pair", "off-neutral-quasitrivial", "quasitrivial-iff-few-neutrals", "annihilating-tail",
                "all-neutral-iff-group", "structure-clauses", "structure-block-unique", "two-valued-parity", "idempotent-boundary", "boundary-equivalences", "quasitrivial-reduction"}
    missing = required - names
    if missing:
        return False, f"statements never exercised: {sorted(missing)}"
    return True, f"{checked} operations, {len(names)} statements, zero counterexamples"


def criterion_4():
    count = 0
    for m, n, kind in [(2, 3, NARY_EXHAUSTIVE), (2, 4, NARY_EXHAUSTIVE),
                       (3, 3, BINARY_EXTENDED), (3, 4, BINARY_EXTENDED), (3, 5, BINARY_EXTENDED)]:
        for F in universe(m, n, kind):
            E = neutral_elements(F)
            for e in E:
                G = reduce_via_neutral(F, e)
                if extend_binary(G, n) != F:
                    return False, f"extend(reduce(F, {e})) != F for m={m} n={n}"
                count += 1
            for e1 in E:
                for e2 in E:
                    try:
                        conjugating_map(F, e1, e2)
                    except TheoremViolation as exc:
                        return False, str(exc)
                    count += 1
    for m in (1, 2, 3):
        for G in enumerate_semigroups(m):
            for e in neutral_elements(G):
                for n in (3, 4, 5):
                    if reduce_via_neutral(extend_binary(G, n), e) != G:
                        return False, f"reduce(extend(G, {n}), {e}) != G"
                    count += 1
    return True, f"{count} identities hold exactly"


def criterion_5():
    t0 = time.perf_counter()
    try:
        ok, detail = constructor_soundness(per_cell=50, seed=11)
    except TheoremViolation as exc:
        return False, str(exc)
    ok2, detail2 = clause_rejections()
    elapsed = time.perf_counter() - t0
    ok = ok and ok2 and elapsed < 30
    return ok, f"{detail}; {elapsed:.1f}s"


def criterion_6():
    cases = [(3, 4), (3, 5), (4, 3), (4, 4), (5, 4), (5, 5), (7, 3)]
    problems, slowest = [], 0.0
    for n, m in cases:
        t0 = time.perf_counter()
        op, _ = witness_strict_inclusion(n, m)
        good = (op is not None and brute_associative(op) and qt_d(op, n - 1) and not full_qt(op))
        slowest = max(slowest, time.perf_counter() - t0)
        if not good:
            problems.append(f"({n},{m})")
    if slowest >= 5:
        problems.append(f"slowest {slowest:.2f}s")
    return not problems, "; ".join(problems) or f"{len(cases)} witnesses, slowest {slowest:.2f}s"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6]


@pytest.mark.parametrize("k", range(1, 7))
def test_criterion(k, report):
    ok, detail = CRITERIA[k - 1]()
    report(k, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    for k, func in enumerate(CRITERIA, start=1):
        ok, detail = func()
        print(_line(k, ok, detail))
    sys.exit(0 if all(RESULTS.values()) else 1)
