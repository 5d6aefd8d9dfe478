"""Exhaustive universes of associative operations on small carriers."""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import kernels
from ._accel import default_jobs
from .core import NaryOp, in_class_F, is_quasitrivial
from .errors import CapacityError, InputError, TheoremViolation

MAX_SEMIGROUP_SIZE = 4
MAX_NAIVE_LEAVES = 1 << 20
MAX_BACKTRACK_CELLS = 32

BINARY_EXTENDED = "all-binary-extended"
NARY_EXHAUSTIVE = "all-nary-exhaustive"


def _free_cells(m, n, idempotent_only):
    fixed = np.full(m ** n, -1, dtype=np.int64)
    if idempotent_only:
        fixed[np.arange(m) * int(kernels.powers(m, n).sum())] = np.arange(m)
    return fixed


def semigroup_tables(m, method="backtrack"):
    """Flat tables of every associative binary operation on ``m`` elements, in table order.

    ``method`` is ``"backtrack"`` (row-major search), ``"colmajor"`` (the
    second, independently written search) or ``"naive"`` (filter all m^(m^2)
    tables; only for m <= 3).
    """
    if m < 1:
        raise InputError("size must be at least 1")
    if m > MAX_SEMIGROUP_SIZE:
        raise CapacityError(f"semigroup enumeration is capped at size {MAX_SEMIGROUP_SIZE}")
    if method == "backtrack":
        return kernels.backtrack_rowmajor(m, _free_cells(m, 2, False), *kernels.instance_tables(m, 2))
    if method == "colmajor":
        rows = kernels.backtrack_binary_colmajor(m)
        return rows[np.lexsort(rows.T[::-1])] if len(rows) else rows
    if method == "naive":
        if m ** (m * m) > MAX_NAIVE_LEAVES:
            raise CapacityError(f"naive filter over {m}^{m * m} tables is too large")
        return kernels.naive_filter(m, 2, _free_cells(m, 2, False))
    raise InputError(f"unknown method {method!r}")


def enumerate_semigroups(m):
    """Stream every associative binary operation on ``{0..m-1}`` exactly once, in table order."""
    for row in semigroup_tables(m):
        yield NaryOp(row, m, 2)


@lru_cache(maxsize=None)
def _quasitrivial_semigroups(t):
    return tuple(G for G in enumerate_semigroups(t) if is_quasitrivial(G))


def quasitrivial_semigroups(t):
    return list(_quasitrivial_semigroups(t))


def nary_tables(m, n, idempotent_only=False, method=None):
    """Flat tables of every associative n-ary operation on ``m`` elements, in table order.

    The naive filter is used when it visits at most 2^20 candidate tables;
    otherwise a backtracking search runs if the table has at most 32 cells.
    """
    if m < 1 or n < 2:
        raise InputError("need size >= 1 and arity >= 2")
    free = m ** n - (m if idempotent_only else 0)
    if method is None:
        method = "naive" if free * np.log2(max(m, 2)) <= 20 else "backtrack"
    fixed = _free_cells(m, n, idempotent_only)
    if method == "naive":
        if m ** free > MAX_NAIVE_LEAVES:
            raise CapacityError(f"naive filter over {m}^{free} tables exceeds {MAX_NAIVE_LEAVES}")
        return kernels.naive_filter(m, n, fixed)
    if method == "backtrack":
        if m ** n > MAX_BACKTRACK_CELLS:
            raise CapacityError(f"backtracking over {m ** n} cells exceeds the {MAX_BACKTRACK_CELLS} cell cap")
        return kernels.backtrack_rowmajor(m, fixed, *kernels.instance_tables(m, n))
    raise InputError(f"unknown method {method!r}")


def enumerate_nary_exhaustive(m, n, idempotent_only=False, method=None):
    for row in nary_tables(m, n, idempotent_only, method):
        yield NaryOp(row, m, n)


def binary_extended_universe(m, n):
    """Distinct n-ary extensions of all semigroups on ``m`` elements, in table order."""
    rows = {}
    for row in semigroup_tables(m):
        ext = kernels.extend_table(row, m, n)
        rows.setdefault(ext.tobytes(), ext)
    tables = sorted(rows.values(), key=lambda t: tuple(t))
    return [NaryOp(t, m, n) for t in tables]


def universe(m, n, kind, idempotent_only=False):
    if kind == BINARY_EXTENDED:
        return binary_extended_universe(m, n)
    if kind == NARY_EXHAUSTIVE:
        return list(enumerate_nary_exhaustive(m, n, idempotent_only))
    raise InputError(f"unknown universe {kind!r}")


CENSUS_CLASSES = ("associative", "F1", "Fn-1 \\ F1", "Fn \\ Fn-1", "G2")


@dataclass
class Census:
    size: int
    arity: int
    universe_kind: str
    counts: dict = field(default_factory=dict)

    def label(self, key):
        n = self.arity
        return (key.replace("Fn-1", f"F^{n}_{n - 1}").replace("Fn", f"F^{n}_{n}")
                .replace("F1", f"F^{n}_1").replace("G2", f"G^{n}_2"))

    @property
    def cumulative(self):
        c = self.counts
        f1 = c["F1"]
        fn1 = f1 + c["Fn-1 \\ F1"]
        return {"F1": f1, "Fn-1": fn1, "Fn": fn1 + c["Fn \\ Fn-1"], "associative": c["associative"]}

    def format(self):
        lines = [f"census size={self.size} arity={self.arity} universe={self.universe_kind}"]
        labels = [self.label(k) for k in CENSUS_CLASSES]
        width = max(len(s) for s in labels)
        for key, lab in zip(CENSUS_CLASSES, labels):
            lines.append(f"{lab:<{width}}  {self.counts[key]:>8}")
        return "\n".join(lines) + "\n"


def _census_row(op):
    from .structure import classify

    report = classify(op)
    mb = report.memberships
    n = op.arity
    for k in range(2, n - 1):
        if in_class_F(op, k, direct=True) != mb["F1"]:
            raise TheoremViolation("collapse-F1-Fn-2", f"class F_{k} differs from F_1", op)
    return mb["F1"], mb["Fn-1"], mb["Fn"], mb["G2"]


def census(m, n, kind=BINARY_EXTENDED, jobs=None, idempotent_only=False):
    """Class counts over a universe; every member is classified and structure clauses re-checked."""
    ops = universe(m, n, kind, idempotent_only)
    jobs = default_jobs() if jobs is None else jobs
    if jobs > 1 and len(ops) > 1:
        with ProcessPoolExecutor(jobs) as pool:
            rows = list(pool.map(_census_row, ops, chunksize=max(1, len(ops) // (4 * jobs))))
    else:
        rows = [_census_row(op) for op in ops]
    counts = dict.fromkeys(CENSUS_CLASSES, 0)
    counts["associative"] = len(rows)
    for f1, fn1, fn, g2 in rows:
        if f1:
            counts["F1"] += 1
        elif fn1:
            counts["Fn-1 \\ F1"] += 1
        elif fn:
            counts["Fn \\ Fn-1"] += 1
        counts["G2"] += g2
        if (f1 and not fn1) or (fn1 and not fn):
            raise TheoremViolation("filtration", "class membership is not nested")
    return Census(m, n, kind, counts)
