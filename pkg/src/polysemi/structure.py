"""Group data of binary reductions and the structural classifier.

For an associative n-ary operation that is quasitrivial on every tuple with
n-1 equal entries but not quasitrivial everywhere, the neutral elements form a
block ``Y`` (``|Y| >= 3``) on which the operation extends an Abelian group of
exponent dividing ``n - 1``; the rest of the carrier carries a quasitrivial
operation with at most one neutral element, and each outside element absorbs
``Y``.  :func:`classify` computes ``Y`` as the neutral set and re-verifies each
of those clauses, raising :class:`~polysemi.errors.TheoremViolation` if one
fails.  The characterisation presumes the class is nonempty on the carrier; the
classifier does not test that global hypothesis.
"""
import math
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from . import kernels
from .core import (
    Carrier,
    NeutralSet,
    TupleFamily,
    idempotency_violation,
    is_associative,
    is_annihilator,
    is_closed,
    is_quasitrivial,
    neutral_elements,
    quasitriviality_violation,
    restrict,
)
from .errors import InputError, PreconditionError, TheoremViolation
from .reduction import ReductionResult, reduce, reduce_any, reduce_via_neutral


@dataclass(frozen=True)
class GroupInfo:
    is_group: bool
    is_abelian: bool = False
    neutral: int = None
    exponent: int = None
    order: int = None


def _power_table(H, e):
    """Rows ``x^1, x^2, ...`` up to the first power at which every element reaches ``e``."""
    m = H.size
    g = H.table.reshape(m, m)
    xs = np.arange(m)
    rows = [xs]
    while not np.all(rows[-1] == e):
        if len(rows) > m:
            return None
        rows.append(g[rows[-1], xs])
    return rows


def group_info(G, S=None):
    """Whether ``(S, G|S)`` is a group; if so, commutativity, neutral element and exponent.

    The exponent is computed as the lcm of element orders and cross-checked
    against the least ``k`` with ``x^k = e`` for all ``x``.
    """
    if G.arity != 2:
        raise InputError("group_info expects a binary operation")
    S = list(range(G.size)) if S is None else sorted(set(S))
    if not is_closed(G, S):
        restrict(G, S)  # raises with the offending product
    H = restrict(G, S)
    k = H.size
    g = H.table.reshape(k, k)
    xs = np.arange(k)
    neutral = [e for e in range(k) if np.array_equal(g[e], xs) and np.array_equal(g[:, e], xs)]
    if not neutral or not is_associative(H):
        return GroupInfo(False, order=k)
    e = neutral[0]
    if not all((g[x] == e).any() and (g[:, x] == e).any() for x in range(k)):
        return GroupInfo(False, order=k)
    abelian = bool(np.array_equal(g, g.T))
    orders = []
    for x in range(k):
        p, o = x, 1
        while p != e:
            p = int(g[p, x])
            o += 1
        orders.append(o)
    exponent = math.lcm(*orders)
    rows = _power_table(H, e)
    if rows is None or len(rows) != exponent:
        raise TheoremViolation("exponent", f"lcm of orders {exponent} disagrees with the defining power")
    return GroupInfo(True, abelian, S[e], exponent, k)


def exponent_divides(G, S, d):
    """``exponent | d`` decided twice: by division and by ``x^(d+1) = x`` for all ``x``."""
    info = group_info(G, S)
    if not info.is_group:
        raise PreconditionError("not a group")
    H = restrict(G, S)
    g = H.table.reshape(H.size, H.size)
    xs = np.arange(H.size)
    p = xs
    for _ in range(d):
        p = g[p, xs]
    by_identity = bool(np.array_equal(p, xs))
    by_division = d % info.exponent == 0
    if by_identity != by_division:
        raise TheoremViolation("exponent-identity", f"exponent {info.exponent} vs identity test for d={d}")
    return by_division


@dataclass(frozen=True)
class AllNeutralReport:
    applicable: bool
    all_neutral: bool = None
    group_extension: bool = None
    group: GroupInfo = None


def check_all_neutral(F):
    """Every element neutral iff the operation extends an Abelian group of exponent dividing n-1.

    Both sides are computed independently and must agree.
    """
    n, m = F.arity, F.size
    if n < 3:
        return AllNeutralReport(False)
    E = neutral_elements(F)
    lhs = len(E) == m
    rhs, info = False, None
    if E:
        G = reduce_via_neutral(F, E.min())
        info = group_info(G)
        ext = kernels.extend_table(G.table, m, n)
        rhs = (info.is_group and info.is_abelian and (n - 1) % info.exponent == 0
               and np.array_equal(ext, F.table))
    if lhs != rhs:
        raise TheoremViolation("all-neutral-iff-group", f"E_F = X is {lhs} but group-extension side is {rhs}", F)
    return AllNeutralReport(True, lhs, rhs, info)


@dataclass
class StructureReport:
    arity: int
    size: int
    associative: bool
    carrier: Carrier = None
    memberships: dict = field(default_factory=dict)
    neutral: NeutralSet = None
    Y: tuple = None
    group: GroupInfo = None
    tail_quasitrivial: bool = None
    tail_neutral_count: int = None
    annihilator_ok: bool = None
    reduction: ReductionResult = None
    witnesses: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def hierarchy(self):
        """Position in the D-filtration, e.g. ``F^3_2 \\ F^3_1``."""
        n = self.arity
        if not self.associative:
            return "not associative"
        mb = self.memberships
        if mb["F1"]:
            return f"F^{n}_1"
        if mb["Fn-1"]:
            return f"F^{n}_{n - 1} \\ F^{n}_1"
        if mb["Fn"]:
            return f"F^{n}_{n} \\ F^{n}_{n - 1}"
        return f"associative, not in F^{n}_{n}"

    @property
    def s_hierarchy(self):
        n = self.arity
        if not self.associative:
            return "not associative"
        if self.memberships["Gn"]:
            return f"G^{n}_{n}"
        if self.memberships["G2"]:
            return f"G^{n}_2 \\ G^{n}_{n}"
        return f"not in G^{n}_2"

    def to_text(self):
        """Line-oriented ``key: value`` rendering with a fixed field order."""
        lab = (self.carrier or Carrier(self.size)).label
        yn = {True: "yes", False: "no", None: "n/a"}

        def elems(xs):
            return " ".join(lab(x) for x in xs) if xs else "-"

        lines = [
            f"arity: {self.arity}",
            f"size: {self.size}",
            f"associative: {yn[self.associative]}",
        ]
        if self.associative:
            for key in ("F1", "Fn-1", "Fn", "G2", "Gn"):
                lines.append(f"class.{key}: {yn[self.memberships[key]]}")
            lines.append(f"hierarchy: {self.hierarchy}")
            lines.append(f"s-hierarchy: {self.s_hierarchy}")
            lines.append(f"neutral: {elems(self.neutral.elements)}")
            lines.append(f"Y: {elems(self.Y) if self.Y is not None else 'n/a'}")
            if self.group is not None:
                lines.append(f"group.abelian: {yn[self.group.is_abelian]}")
                lines.append(f"group.exponent: {self.group.exponent}")
            else:
                lines.append("group.abelian: n/a")
                lines.append("group.exponent: n/a")
            lines.append(f"tail.quasitrivial: {yn[self.tail_quasitrivial]}")
            tn = self.tail_neutral_count
            lines.append(f"tail.neutral_count: {tn if tn is not None else 'n/a'}")
            lines.append(f"annihilators: {yn[self.annihilator_ok]}")
            r = self.reduction
            if r is None:
                lines.append("reduction: n/a")
            else:
                lines.append(f"reduction: {'yes' if r.reducible else 'no'}")
                lines.append(f"reduction.method: {r.method}")
                if r.neutral_used is not None:
                    lines.append(f"reduction.neutral: {lab(r.neutral_used)}")
                if r.reducible:
                    lines.append(f"reduction.table: {' '.join(lab(int(v)) for v in r.reduction.table)}")
        for w in self.witnesses:
            lines.append(f"witness: {w.format(self.carrier)}")
        for note in self.notes:
            lines.append(f"note: {note}")
        return "\n".join(lines) + "\n"


def _fail(clause, message, F):
    raise TheoremViolation(clause, message, F)


def _structure_block(F, report):
    """Fill and verify Y, group, tail and annihilator fields for an F_{n-1} \\ F_1 member."""
    n, m = F.arity, F.size
    E = report.neutral
    Y = E.elements
    report.Y = Y
    if len(Y) < 3:
        _fail("quasitrivial-iff-few-neutrals", f"non-quasitrivial member of F_(n-1) with only {len(Y)} neutral elements", F)
    G = reduce_via_neutral(F, Y[0])
    if not is_closed(G, Y):
        _fail("neutral-closure", "neutral set not closed under the reduction", F)
    info = group_info(G, Y)
    report.group = info
    if not (info.is_group and info.is_abelian and (n - 1) % info.exponent == 0):
        _fail("structure-clause-a", f"neutral block is not an Abelian group of exponent dividing {n - 1}: {info}", F)
    GY = restrict(G, Y)
    if not np.array_equal(kernels.extend_table(GY.table, GY.size, n), restrict(F, Y).table):
        _fail("structure-clause-a", "restriction to Y is not the extension of the group", F)
    tail = [x for x in range(m) if x not in E]
    if tail:
        if not is_closed(F, tail):
            _fail("off-neutral-quasitrivial", "complement of the neutral set is not closed", F)
        FT = restrict(F, tail)
        report.tail_quasitrivial = is_quasitrivial(FT)
        report.tail_neutral_count = len(neutral_elements(FT))
        if not report.tail_quasitrivial or report.tail_neutral_count > 1:
            _fail("structure-clause-b", "complement is not quasitrivial with at most one neutral element", F)
    report.annihilator_ok = all(is_annihilator(F, x, [x, *Y]) for x in tail)
    if not report.annihilator_ok:
        _fail("structure-clause-c", "some element outside Y does not absorb Y", F)


def classify(F):
    """Classify an operation in the quasitriviality hierarchies and verify the structure clauses."""
    n, m = F.arity, F.size
    report = StructureReport(n, m, is_associative(F), F.carrier)
    if not report.associative:
        return report
    fam = {
        "F1": TupleFamily.all(n, m),
        "Fn-1": TupleFamily.D(n - 1, n, m),
        "G2": TupleFamily.S(2, n, m),
    }
    for key, family in fam.items():
        w = quasitriviality_violation(F, family)
        report.memberships[key] = w is None
        if w is not None:
            report.witnesses.append(w)
    w = idempotency_violation(F)
    report.memberships["Fn"] = w is None
    if w is not None:
        report.witnesses.append(w)
    report.memberships["Gn"] = report.memberships["F1"]
    report.neutral = neutral_elements(F)
    mb = report.memberships
    if n < 3:
        report.notes.append("structure theorems need arity >= 3: not applicable")
        report.reduction = reduce(F)
        return report
    if mb["Fn-1"] and not mb["F1"]:
        _structure_block(F, report)
        if mb["G2"]:
            if n % 2 == 0 or report.group.exponent != 2:
                _fail("two-valued-parity", f"G_2 \\ G_n member with n={n}, exponent {report.group.exponent}", F)
    if mb["Fn-1"]:
        report.reduction = reduce_any(F)
    else:
        report.reduction = reduce(F)
    return report


def structure_subsets(F):
    """Every subset ``Y`` with ``|Y| >= 3`` satisfying the three structure clauses.

    Exhaustive over subsets; used to cross-check that the clauses pin down a
    unique block.
    """
    m = F.size
    found = []
    for k in range(3, m + 1):
        for Y in combinations(range(m), k):
            if _clauses_hold(F, Y):
                found.append(Y)
    return found


def _clauses_hold(F, Y):
    n, m = F.arity, F.size
    if not is_closed(F, Y):
        return False
    FY = restrict(F, Y)
    E = neutral_elements(FY)
    if not E:
        return False
    G = reduce_via_neutral(FY, E.min())
    info = group_info(G)
    if not (info.is_group and info.is_abelian and (n - 1) % info.exponent == 0):
        return False
    if not np.array_equal(kernels.extend_table(G.table, G.size, n), FY.table):
        return False
    tail = [x for x in range(m) if x not in Y]
    if tail:
        if not is_closed(F, tail):
            return False
        FT = restrict(F, tail)
        if not is_quasitrivial(FT) or len(neutral_elements(FT)) > 1:
            return False
    return all(is_annihilator(F, x, [x, *Y]) for x in tail)
