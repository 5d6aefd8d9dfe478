"""Exhaustive verification of the structure theorems over small universes.

Every per-operation check raises :class:`~polysemi.errors.TheoremViolation`
on a counterexample.  Counting checks that merely disagree (e.g. two
enumerators returning different totals) are reported as failed results.
"""
import time
from dataclasses import dataclass
from itertools import product

import numpy as np

from . import kernels
from .construct import (
    ConstructionSpec,
    assemble,
    make_cyclic,
    make_quasitrivial,
    named_example,
    random_construction_spec,
    witness_strict_inclusion,
)
from .core import (
    TupleFamily,
    in_class_F,
    is_associative,
    is_idempotent,
    is_neutral_pair,
    is_annihilator,
    is_quasitrivial,
    is_quasitrivial_on,
    is_symmetric_on,
    neutral_elements,
    restrict,
    tuples_over,
)
from .enumerate import (
    BINARY_EXTENDED,
    NARY_EXHAUSTIVE,
    census,
    enumerate_semigroups,
    nary_tables,
    semigroup_tables,
    universe,
)
from .errors import ConstructionError, TheoremViolation
from .reduction import (
    boundary_violation,
    conjugating_map,
    extend_binary,
    find_isomorphism,
    reduce_idempotent,
    reduce_quasitrivial,
    reduce_via_neutral,
)
from .structure import check_all_neutral, classify, group_info, structure_subsets

EXPECTED_SEMIGROUP_COUNTS = {1: 1, 2: 8, 3: 113, 4: 3492}


def _require(cond, theorem, message, op=None):
    if not cond:
        raise TheoremViolation(theorem, message, op)


def check_operation(F, subsets=False):
    """Run every applicable theorem check on one associative operation; return their names."""
    n, m = F.arity, F.size
    ran = []
    if n < 3:
        return ran
    E = neutral_elements(F)
    f1 = in_class_F(F, 1)
    fn1 = in_class_F(F, n - 1)

    for k in range(2, n - 1):
        _require(in_class_F(F, k, direct=True) == f1, "collapse-F1-Fn-2", f"F_{k} membership differs from F_1", F)
    ran.append("collapse-F1-Fn-2")

    pw = kernels.powers(m, n)
    for e in E:
        # F(x_1..x_{n-1}) with e inserted at each slot gives the same value
        rest = kernels.digits(np.arange(m ** (n - 1)), m, n - 1)
        vals = []
        for p in range(n):
            tup = np.insert(rest, p, e, axis=1)
            vals.append(F.table[tup @ pw])
        _require(all(np.array_equal(vals[0], v) for v in vals), "neutral-symmetry", f"neutral {e} does not commute", F)
    if E:
        for x in range(m):
            _require(is_symmetric_on(F, {x, *E}), "neutral-symmetry", f"not symmetric on {{{x}}} + E_F", F)
        vals = F.table[tuples_over(E, n, m)]
        _require(np.isin(vals, E.elements).all(), "neutral-closure", "E_F not preserved", F)
        sub = check_all_neutral(restrict(F, E)) if len(E) >= 1 else None
        _require(sub.all_neutral and sub.group_extension, "neutral-block-group", "neutral block is not an Abelian group extension", F)
    ran += ["neutral-symmetry", "neutral-closure", "neutral-block-group"]

    check_all_neutral(F)
    ran.append("all-neutral-iff-group")

    report = classify(F)
    ran += ["structure-clauses", "two-valued-parity"]
    if report.memberships["G2"] and not report.memberships["Gn"]:
        _require(n % 2 == 1, "two-valued-parity", "G_2 \\ G_n member with even arity", F)

    qt = is_quasitrivial(F)
    rq = reduce_quasitrivial(F)
    _require(rq.reducible == (qt and len(E) <= 1), "quasitrivial-reduction", "quasitrivial reduction disagrees with |E_F| <= 1", F)
    ran.append("quasitrivial-reduction")

    if is_idempotent(F):
        boundary = boundary_violation(F) is None
        ri = reduce_idempotent(F)
        _require(ri.reducible == boundary, "idempotent-boundary", "boundary identity and idempotent reduction disagree", F)
        for e in E:
            Ge = reduce_via_neutral(F, e)
            if is_idempotent(Ge):
                _require(boundary, "idempotent-boundary", "idempotent reduction exists but boundary identity fails", F)
        ran.append("idempotent-boundary")
        if fn1:
            verdicts = (rq.reducible, ri.reducible, boundary, len(E) <= 1)
            _require(len(set(verdicts)) == 1, "boundary-equivalences", f"equivalences disagree: {verdicts}", F)
            ran.append("boundary-equivalences")

    if fn1:
        for a, b in product(range(m), repeat=2):
            if a != b:
                _require(is_neutral_pair(F, a, b) == (a in E and b in E), "neutral-pair",
                         f"pair ({a},{b}) misjudged", F)
        _require(qt == (len(E) <= 2), "quasitrivial-iff-few-neutrals", f"quasitrivial={qt} with |E_F|={len(E)}", F)
        d = kernels.digits(np.arange(m ** n), m, n)
        bad = ~(d == F.table[:, None]).any(axis=1)
        if bad.any():
            involved = np.unique(np.concatenate([d[bad].ravel(), F.table[bad]]))
            _require(np.isin(involved, E.elements).all(), "off-neutral-quasitrivial", "non-quasitrivial value outside E_F", F)
        outside = [x for x in range(m) if x not in E]
        if outside:
            _require(is_quasitrivial(restrict(F, outside)), "off-neutral-quasitrivial", "not quasitrivial off E_F", F)
        ran += ["neutral-pair", "quasitrivial-iff-few-neutrals", "off-neutral-quasitrivial"]
        if len(E) >= 3:
            for x in outside:
                _require(is_annihilator(F, x, [x, *E]), "annihilating-tail", f"{x} does not absorb E_F", F)
            if outside:
                _require(len(neutral_elements(restrict(F, outside))) <= 1, "annihilating-tail", "complement has two neutrals", F)
            ran.append("annihilating-tail")

    for e in E:
        G = reduce_via_neutral(F, e)
        _require(np.array_equal(kernels.extend_table(G.table, m, n), F.table), "neutral-reduction",
                 f"extension of G_{e} differs from F", F)
        _require(neutral_elements(G).elements == (e,), "neutral-reduction", f"{e} is not the unique neutral of G_{e}", F)
    for e1, e2 in product(E, repeat=2):
        conjugating_map(F, e1, e2)
    ran += ["round-trip", "conjugate-reductions"]

    if subsets:
        found = structure_subsets(F)
        in_diff = fn1 and not f1
        if found or in_diff:
            _require(in_diff and found == [E.elements], "structure-block-unique",
                     f"structure subsets {found} vs E_F {E.elements}", F)
        ran.append("structure-block-unique")
    return ran


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float

    def line(self):
        return f"{'PASS' if self.passed else 'FAIL'}  {self.name:<44} {self.detail} ({self.seconds:.2f}s)"


# ---------------------------------------------------------------------------
# individual batteries; each returns (passed, detail)


FIXTURE_EXPECTATIONS = {
    "z2sq-ternary-sum": ("F^3_2 \\ F^3_1", (0, 1, 2, 3), 2),
    "diamond-join-ternary": ("F^3_3 \\ F^3_2", None, None),
    "z3-7ary": ("F^7_6 \\ F^7_1", (0, 1, 2), 3),
    "chain5-4ary": ("F^4_3 \\ F^4_1", (0, 1, 2), 3),
    "six-elt-ternary": ("F^3_2 \\ F^3_1", (0, 1, 2, 3), 2),
}


def fixture_classifications():
    problems = []
    for name, (hier, Y, exponent) in FIXTURE_EXPECTATIONS.items():
        r = classify(named_example(name))
        if r.hierarchy != hier:
            problems.append(f"{name}: {r.hierarchy}")
        if Y is not None and (r.Y != Y or r.neutral.elements != Y or r.group.exponent != exponent):
            problems.append(f"{name}: Y={r.Y} exponent={r.group and r.group.exponent}")
    six = classify(named_example("six-elt-ternary"))
    if six.s_hierarchy != "G^3_2 \\ G^3_3" or six.arity % 2 == 0 or six.group.exponent != 2:
        problems.append(f"six-elt-ternary: {six.s_hierarchy}")
    if classify(named_example("z2sq-ternary-sum")).neutral.elements != (0, 1, 2, 3):
        problems.append("z2sq-ternary-sum: E_F != X")
    return not problems, "; ".join(problems) or f"{len(FIXTURE_EXPECTATIONS)} fixtures"


def semigroup_counts(sizes, methods=("naive", "backtrack")):
    problems, parts = [], []
    for m in sizes:
        results = [semigroup_tables(m, method) for method in methods]
        counts = [len(r) for r in results]
        same = all(np.array_equal(results[0], r) for r in results[1:])
        parts.append(f"m={m}:{counts[0]}")
        if not same or counts[0] != EXPECTED_SEMIGROUP_COUNTS[m]:
            problems.append(f"m={m}: {dict(zip(methods, counts))}")
    return not problems, "; ".join(problems) or " ".join(parts)


def nary_naive_vs_backtrack(m, n):
    a = nary_tables(m, n, method="naive")
    b = nary_tables(m, n, method="backtrack")
    return np.array_equal(a, b), f"m={m} n={n}: {len(a)} associative"


def universe_battery(m, n, kind, subsets=False):
    ops = universe(m, n, kind)
    names = set()
    for F in ops:
        _require(is_associative(F), "universe", "non-associative member emitted", F)
        names.update(check_operation(F, subsets=subsets))
    return True, f"{len(ops)} ops, {len(names)} statements"


def filtration_small_carriers(n):
    c = census(2, n, NARY_EXHAUSTIVE)
    cum = c.cumulative
    ok = cum["F1"] == cum["Fn-1"] == cum["Fn"]
    return ok, f"m=2 n={n}: F1={cum['F1']} Fn-1={cum['Fn-1']} Fn={cum['Fn']}"


def binary_round_trips(max_m=3, max_n=5):
    count = 0
    for m in range(1, max_m + 1):
        for G in enumerate_semigroups(m):
            for e in neutral_elements(G):
                for n in range(2, max_n + 1):
                    back = reduce_via_neutral(extend_binary(G, n), e)
                    _require(back == G, "neutral-reduction", f"reduce(extend(G,{n}),{e}) != G", G)
                    count += 1
    return True, f"{count} round trips"


def idempotent_ternary_containment():
    tables = nary_tables(3, 3, idempotent_only=True)
    got = {t.tobytes() for t in tables}
    missing = 0
    irreducible = 0
    for G in enumerate_semigroups(3):
        ext = kernels.extend_table(G.table, 3, 3)
        if np.array_equal(ext[[0, 13, 26]], [0, 1, 2]) and ext.tobytes() not in got:
            missing += 1
    ext_set = {kernels.extend_table(G.table, 3, 3).tobytes() for G in enumerate_semigroups(3)}
    irreducible = sum(1 for t in tables if t.tobytes() not in ext_set)
    return missing == 0, f"{len(tables)} idempotent ternary ops, {irreducible} not binary extensions"


CONSTRUCTOR_GRID = [(n, m) for n in (3, 4, 5) for m in (4, 5, 6)]


def constructor_soundness(per_cell=50, seed=0, subset_check_max=5):
    rng = np.random.default_rng(seed)
    built = 0
    for n, m in CONSTRUCTOR_GRID:
        for _ in range(per_cell):
            spec = random_construction_spec(n, m, rng)
            G, F = assemble(spec)
            _require(in_class_F(F, n - 1) and not is_quasitrivial(F), "construction",
                     "assembled operation is not in F_(n-1) \\ F_1", F)
            r = classify(F)
            _require(r.Y == tuple(sorted(spec.Y)), "construction", f"classifier Y {r.Y} != spec {spec.Y}", F)
            grp_spec = restrict(G, sorted(spec.Y))
            grp_found = restrict(reduce_via_neutral(F, r.Y[0]), r.Y)
            _require(find_isomorphism(grp_spec, grp_found) is not None, "construction", "group block not recovered", F)
            if n % 2 == 1 and group_info(G, spec.Y).exponent == 2:
                _require(is_quasitrivial_on(F, TupleFamily.S(2, n, m)) and not is_quasitrivial(F),
                         "construction-two-valued", "exponent-2 construction not in G_2 \\ G_n", F)
            if m <= subset_check_max and built % 10 == 0:
                check_operation(F, subsets=True)
            built += 1
    ok, detail = clause_rejections()
    return ok, f"{built} specs assembled; {detail}"


def violating_specs():
    """Specs that each break exactly one clause, paired with the expected tag."""
    z3 = tuple(make_cyclic(3).table)
    z4 = tuple(make_cyclic(4).table)
    chain = tuple(make_quasitrivial("max-chain", 2).table)
    s3 = []
    perms = [(0, 1, 2), (1, 2, 0), (2, 0, 1), (0, 2, 1), (2, 1, 0), (1, 0, 2)]
    for p in perms:
        for q in perms:
            comp = tuple(p[q[i]] for i in range(3))
            s3.append(perms.index(comp))
    return [
        (ConstructionSpec(5, 3, (0, 1, 2), z3, chain), "a"),            # exponent 3 does not divide 2
        (ConstructionSpec(5, 4, (0, 1, 2), (0, 0, 0) * 3, chain), "a"),   # not a group
        (ConstructionSpec(6, 7, tuple(range(6)), tuple(s3)), "a"),      # S3 is not Abelian
        (ConstructionSpec(6, 5, (0, 1, 2, 3), z4, (0, 0, 1, 0)), "b"),  # tail not associative
        (ConstructionSpec(6, 5, (0, 1, 2, 3), z4, (0, 1, 1, 0)), "b"),  # tail is Z2: not quasitrivial
        (ConstructionSpec(5, 4, (0, 1, 2), z3, (1, 1, 1, 1)), "b"),     # constant tail: not quasitrivial
    ]


def clause_rejections():
    wrong = []
    for spec, tag in violating_specs():
        try:
            assemble(spec)
        except ConstructionError as exc:
            if exc.clause != tag:
                wrong.append(f"{spec.Y}: got ({exc.clause}) expected ({tag})")
        else:
            wrong.append(f"{spec.Y}: accepted")
    # dropping the exponent condition breaks quasitriviality on D_{n-1}
    _, F = assemble(violating_specs()[0][0], check=False)
    if is_quasitrivial_on(F, TupleFamily.D(2, 3, 5)):
        wrong.append("unchecked exponent-3 ternary construction is still in F_2")
    return not wrong, "; ".join(wrong) or f"{len(violating_specs())} violating specs rejected"


WITNESS_CASES = [(3, 4), (3, 5), (4, 3), (4, 4), (5, 4), (5, 5), (7, 3)]


def strict_inclusion_witnesses():
    problems = []
    for n, m in WITNESS_CASES:
        op, note = witness_strict_inclusion(n, m)
        if op is None:
            problems.append(f"({n},{m}): none")
            continue
        ok = (is_associative(op) and is_quasitrivial_on(op, TupleFamily.D(n - 1, n, m))
              and not is_quasitrivial_on(op, TupleFamily.all(n, m)))
        if not ok:
            problems.append(f"({n},{m}): not a strict witness")
    return not problems, "; ".join(problems) or f"{len(WITNESS_CASES)} witnesses verified"


def battery_checks(level="quick"):
    """``(name, callable)`` pairs making up the battery at the given level."""
    checks = [
        ("fixture classifications", fixture_classifications),
        ("semigroup counts m<=2 (naive vs backtrack)", lambda: semigroup_counts((1, 2))),
        ("n-ary naive vs backtrack m=2 n=3", lambda: nary_naive_vs_backtrack(2, 3)),
        ("n-ary naive vs backtrack m=2 n=4", lambda: nary_naive_vs_backtrack(2, 4)),
        ("theorems: all associative m=2 n=3", lambda: universe_battery(2, 3, NARY_EXHAUSTIVE, True)),
        ("theorems: all associative m=2 n=4", lambda: universe_battery(2, 4, NARY_EXHAUSTIVE, True)),
        ("filtration collapses at m=2 n=3", lambda: filtration_small_carriers(3)),
        ("filtration collapses at m=2 n=4", lambda: filtration_small_carriers(4)),
        ("strict-inclusion witnesses", strict_inclusion_witnesses),
        ("clause-violating specs rejected", clause_rejections),
    ]
    if level == "full":
        checks += [
            ("semigroup counts m=3 (naive vs backtrack)", lambda: semigroup_counts((3,))),
            ("semigroup counts m<=4 (two backtrackers)",
             lambda: semigroup_counts((1, 2, 3, 4), ("backtrack", "colmajor"))),
            ("theorems: binary-extended m=3 n=3", lambda: universe_battery(3, 3, BINARY_EXTENDED, True)),
            ("theorems: binary-extended m=3 n=4", lambda: universe_battery(3, 4, BINARY_EXTENDED, True)),
            ("theorems: binary-extended m=3 n=5", lambda: universe_battery(3, 5, BINARY_EXTENDED, True)),
            ("binary round trips m<=3 n<=5", binary_round_trips),
            ("idempotent ternary m=3 contains extensions", idempotent_ternary_containment),
            ("constructor soundness (50 per cell)", constructor_soundness),
        ]
    return checks


def run_battery(level="quick", echo=None):
    """Run the battery; ``TheoremViolation`` propagates, other failures come back as results."""
    results = []
    for name, func in battery_checks(level):
        t0 = time.perf_counter()
        passed, detail = func()
        res = CheckResult(name, bool(passed), detail, time.perf_counter() - t0)
        results.append(res)
        if echo is not None:
            echo(res.line())
    return results
