"""Operation tables on finite carriers and the pointwise predicates on them.

Elements of a carrier of size ``m`` are the integers ``0..m-1``.  An n-ary
operation is a flat table of ``m**n`` values; the entry for ``(x_1, ..., x_n)``
sits at ``sum(x_i * m**(n-i))`` so table order is lexicographic tuple order.
All "first violation" searches return the lexicographically smallest
counterexample.
"""
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import kernels
from ._accel import debug_enabled
from .errors import CapacityError, InputError, PreconditionError

MAX_TABLE_ENTRIES = 10 ** 8


@dataclass(frozen=True)
class Carrier:
    size: int
    labels: tuple = None

    def __post_init__(self):
        if self.size < 1:
            raise InputError("carrier size must be at least 1")
        if self.labels is not None:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != self.size:
                raise InputError(f"expected {self.size} labels, got {len(labels)}")
            if len(set(labels)) != self.size:
                raise InputError("labels must be distinct")
            object.__setattr__(self, "labels", labels)

    def label(self, x):
        return self.labels[x] if self.labels else str(x)


def check_capacity(m, n):
    if m < 1:
        raise InputError("carrier size must be at least 1")
    if n < 2:
        raise InputError("arity must be at least 2")
    if m ** n > MAX_TABLE_ENTRIES:
        raise CapacityError(f"table of {m}^{n} entries exceeds the {MAX_TABLE_ENTRIES} entry limit")


class NaryOp:
    """An immutable n-ary operation table on ``{0, ..., m-1}``."""

    __slots__ = ("carrier", "arity", "table")

    def __init__(self, table, size, arity, labels=None):
        check_capacity(size, arity)
        arr = np.array(table, dtype=np.int64).reshape(-1)
        if arr.shape[0] != size ** arity:
            raise InputError(f"table has {arr.shape[0]} entries, expected {size}^{arity} = {size ** arity}")
        if arr.size and (arr.min() < 0 or arr.max() >= size):
            bad = int(np.nonzero((arr < 0) | (arr >= size))[0][0])
            raise InputError(f"table entry {bad} = {arr[bad]} is outside 0..{size - 1}")
        arr.flags.writeable = False
        self.carrier = Carrier(size, labels)
        self.arity = arity
        self.table = arr

    @classmethod
    def from_function(cls, func, size, arity, labels=None):
        tuples = kernels.digits(np.arange(size ** arity), size, arity)
        return cls([func(*map(int, t)) for t in tuples], size, arity, labels)

    @property
    def size(self):
        return self.carrier.size

    @property
    def labels(self):
        return self.carrier.labels

    @property
    def cube(self):
        """The table viewed as an ``n``-dimensional array."""
        return self.table.reshape((self.size,) * self.arity)

    def with_labels(self, labels):
        return NaryOp(self.table, self.size, self.arity, labels)

    def __call__(self, *args):
        return evaluate(self, args)

    def __eq__(self, other):
        if not isinstance(other, NaryOp):
            return NotImplemented
        return (self.size == other.size and self.arity == other.arity
                and np.array_equal(self.table, other.table))

    def __hash__(self):
        return hash((self.size, self.arity, self.table.tobytes()))

    def __repr__(self):
        return f"NaryOp(size={self.size}, arity={self.arity})"


@dataclass(frozen=True)
class Witness:
    """A counterexample: ``tuple`` evaluates (or nests) to ``value``."""

    tuple: tuple
    value: int
    note: str

    def format(self, carrier=None):
        lab = carrier.label if carrier is not None else str
        args = ",".join(lab(x) for x in self.tuple)
        return f"{self.note} ({args}) -> {lab(self.value)}"


@dataclass(frozen=True)
class AssociativityViolation:
    i: int
    left: Witness
    right: Witness


@dataclass(frozen=True)
class NeutralSet:
    elements: tuple

    def __contains__(self, x):
        return x in self.elements

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __bool__(self):
        return bool(self.elements)

    def min(self):
        return self.elements[0]


# ---------------------------------------------------------------------------
# tuples and indices


def _check_tuple(tup, m, n):
    tup = tuple(int(x) for x in tup)
    if len(tup) != n:
        raise InputError(f"expected a tuple of length {n}, got {len(tup)}")
    for x in tup:
        if not 0 <= x < m:
            raise InputError(f"element {x} outside 0..{m - 1}")
    return tup


def tuple_index(tup, m, n):
    tup = _check_tuple(tup, m, n)
    idx = 0
    for x in tup:
        idx = idx * m + x
    return idx


def index_tuple(index, m, n):
    if not 0 <= index < m ** n:
        raise InputError(f"index {index} outside 0..{m ** n - 1}")
    out = []
    for _ in range(n):
        index, r = divmod(index, m)
        out.append(r)
    return tuple(reversed(out))


def build_tuple(parts):
    """``[(3, x), (0, y), (2, z)] -> (x, x, x, z, z)``."""
    out = []
    for count, x in parts:
        if count < 0:
            raise InputError("repetition counts must be non-negative")
        out.extend([x] * count)
    return tuple(out)


def evaluate(op, tup):
    return int(op.table[tuple_index(tup, op.size, op.arity)])


def _subset(S, m):
    s = sorted({int(x) for x in S})
    if not s:
        raise InputError("subset must be nonempty")
    if s[0] < 0 or s[-1] >= m:
        raise InputError(f"subset {s} not contained in 0..{m - 1}")
    return s


def tuples_over(S, n, m):
    """Sorted table indices of all tuples with every component in ``S``."""
    s = np.asarray(_subset(S, m), dtype=np.int64)
    k = s.shape[0]
    return kernels.encode(s[kernels.digits(np.arange(k ** n), k, n)], m)


# ---------------------------------------------------------------------------
# tuple families


@dataclass(frozen=True)
class TupleFamily:
    """A set of argument tuples: ``D_S``, ``D_k``, ``S_k`` or all of ``X^n``.

    ``positions`` (for ``D_S``) are 0-based argument slots.
    """

    kind: str
    arity: int
    size: int
    k: int = None
    positions: frozenset = None

    @classmethod
    def all(cls, n, m):
        return cls("ALL", n, m)

    @classmethod
    def D(cls, k, n, m):
        if not 1 <= k <= n:
            raise InputError(f"D_k needs 1 <= k <= {n}, got {k}")
        return cls("D_k", n, m, k=k)

    @classmethod
    def S(cls, k, n, m):
        if k < 1:
            raise InputError(f"S_k needs k >= 1, got {k}")
        return cls("S_k", n, m, k=k)

    @classmethod
    def DS(cls, positions, n, m):
        pos = frozenset(int(p) for p in positions)
        if any(not 0 <= p < n for p in pos):
            raise InputError(f"positions must lie in 0..{n - 1}")
        return cls("D_S", n, m, positions=pos)

    def contains(self, tup):
        tup = tuple(tup)
        if self.kind == "ALL":
            return True
        if self.kind == "D_S":
            return len({tup[p] for p in self.positions}) <= 1
        if self.kind == "D_k":
            return max(tup.count(x) for x in set(tup)) >= self.k
        return len(set(tup)) <= self.k

    def indices(self):
        """Sorted, duplicate-free table indices of the family's tuples."""
        n, m = self.arity, self.size
        diag = np.arange(m, dtype=np.int64) * int(kernels.powers(m, n).sum())
        if self.kind == "ALL" or (self.kind == "D_k" and self.k == 1):
            return np.arange(m ** n, dtype=np.int64)
        if (self.kind == "D_k" and self.k == n) or (self.kind == "S_k" and self.k == 1):
            return diag
        if self.kind == "S_k" and self.k >= min(n, m):
            return np.arange(m ** n, dtype=np.int64)
        if self.kind == "D_k" and self.k == n - 1:
            pw = kernels.powers(m, n)
            x, y = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
            x, y = x.reshape(-1), y.reshape(-1)
            parts = [diag] + [x * (pw.sum() - pw[p]) + y * pw[p] for p in range(n)]
            return np.unique(np.concatenate(parts))
        if self.kind == "S_k" and self.k == 2:
            masks = kernels.digits(np.arange(2 ** n), 2, n) @ kernels.powers(m, n)
            full = int(kernels.powers(m, n).sum())
            parts = [diag]
            for a, b in combinations(range(m), 2):
                parts.append(a * (full - masks) + b * masks)
            return np.unique(np.concatenate(parts))
        if self.kind == "D_S":
            pos = sorted(self.positions)
            free = [p for p in range(n) if p not in self.positions]
            if not pos:
                return np.arange(m ** n, dtype=np.int64)
            grid = kernels.digits(np.arange(m ** (len(free) + 1)), m, len(free) + 1)
            tuples = np.empty((grid.shape[0], n), dtype=np.int64)
            tuples[:, pos] = grid[:, :1]
            tuples[:, free] = grid[:, 1:]
            return np.unique(kernels.encode(tuples, m))
        d = kernels.digits(np.arange(m ** n), m, n)
        if self.kind == "D_k":
            counts = (d[:, :, None] == d[:, None, :]).sum(axis=2).max(axis=1)
            return np.nonzero(counts >= self.k)[0].astype(np.int64)
        distinct = np.array([len(set(row)) for row in d.tolist()])
        return np.nonzero(distinct <= self.k)[0].astype(np.int64)


# ---------------------------------------------------------------------------
# predicates


def associativity_violation(op):
    """Smallest failing bracket position and tuple, or ``None`` if associative."""
    m, n = op.size, op.arity
    i = kernels.first_failing_position(op.table, m, n)
    if i == 0:
        return None
    xs = kernels.smallest_violation_at(op.table, m, n, i)
    inner_l = evaluate(op, xs[i - 1:i - 1 + n])
    lhs = evaluate(op, xs[:i - 1] + (inner_l,) + xs[i - 1 + n:])
    inner_r = evaluate(op, xs[i:i + n])
    rhs = evaluate(op, xs[:i] + (inner_r,) + xs[i + n:])
    return AssociativityViolation(i, Witness(xs, lhs, f"assoc-left-{i}"), Witness(xs, rhs, f"assoc-right-{i}"))


def is_associative(op):
    return kernels.first_failing_position(op.table, op.size, op.arity) == 0


def idempotency_violation(op):
    diag = op.table[TupleFamily.D(op.arity, op.arity, op.size).indices()]
    bad = np.nonzero(diag != np.arange(op.size))[0]
    if bad.size == 0:
        return None
    x = int(bad[0])
    return Witness((x,) * op.arity, int(diag[x]), "not-idempotent")


def is_idempotent(op):
    return idempotency_violation(op) is None


def quasitriviality_violation(op, family):
    if family.arity != op.arity or family.size != op.size:
        raise InputError("tuple family does not match the operation's arity and carrier")
    idx = family.indices()
    j = kernels.qt_first_failure(op.table, idx, op.size, op.arity)
    if j < 0:
        return None
    t = int(idx[j])
    return Witness(index_tuple(t, op.size, op.arity), int(op.table[t]), f"not-quasitrivial-{family.kind}")


def is_quasitrivial_on(op, family):
    return quasitriviality_violation(op, family) is None


def is_quasitrivial(op):
    return is_quasitrivial_on(op, TupleFamily.all(op.arity, op.size))


def in_class_F(op, k, direct=None):
    """Membership in the class of associative operations quasitrivial on ``D_k``.

    For ``2 <= k <= n-2`` the answer equals the ``k = 1`` answer; ``direct=True``
    (or ``POLYSEMI_DEBUG``) iterates ``D_k`` anyway.
    """
    n = op.arity
    if direct is None:
        direct = debug_enabled()
    if not direct and 1 < k <= n - 2:
        k = 1
    return is_associative(op) and is_quasitrivial_on(op, TupleFamily.D(k, n, op.size))


def in_class_G(op, k):
    return is_associative(op) and is_quasitrivial_on(op, TupleFamily.S(k, op.arity, op.size))


def neutral_elements(op):
    """All ``e`` with ``F((k-1).e, x, (n-k).e) = x`` for every slot ``k`` and every ``x``."""
    m, n = op.size, op.arity
    pw = kernels.powers(m, n)
    full = int(pw.sum())
    xs = np.arange(m, dtype=np.int64)
    found = []
    for e in range(m):
        ok = True
        for p in range(n):
            vals = op.table[e * (full - pw[p]) + xs * pw[p]]
            if not np.array_equal(vals, xs):
                ok = False
                break
        if ok:
            found.append(e)
    return NeutralSet(tuple(found))


def is_neutral_pair(op, a, b, check=None):
    """``F((n-1).a, b) == b`` and ``F(a, (n-1).b) == a``.

    For associative operations quasitrivial on ``D_{n-1}`` this is equivalent
    to both ``a`` and ``b`` being neutral.
    """
    if a == b:
        raise InputError("is_neutral_pair needs two distinct elements")
    n = op.arity
    if check is None:
        check = debug_enabled()
    if check and not in_class_F(op, n - 1):
        raise PreconditionError("operation is not associative and quasitrivial on D_{n-1}")
    return (evaluate(op, build_tuple([(n - 1, a), (1, b)])) == b
            and evaluate(op, build_tuple([(1, a), (n - 1, b)])) == a)


def is_annihilator(op, a, S):
    """``F(t) == a`` for every tuple ``t`` over ``S`` that contains ``a``."""
    s = _subset(S, op.size)
    if a not in s:
        raise InputError(f"{a} is not in the subset {s}")
    idx = tuples_over(s, op.arity, op.size)
    d = kernels.digits(idx, op.size, op.arity)
    has_a = (d == a).any(axis=1)
    return bool(np.all(op.table[idx[has_a]] == a))


def symmetry_violation(op, S):
    """Smallest tuple ``t`` over ``S`` with ``F(t) != F(sorted(t))``, as a witness pair."""
    s = _subset(S, op.size)
    m, n = op.size, op.arity
    idx = tuples_over(s, n, m)
    d = kernels.digits(idx, m, n)
    sorted_idx = kernels.encode(np.sort(d, axis=1), m)
    bad = np.nonzero(op.table[idx] != op.table[sorted_idx])[0]
    if bad.size == 0:
        return None
    j = int(bad[0])
    t = tuple(int(x) for x in d[j])
    st = tuple(sorted(t))
    return (Witness(t, evaluate(op, t), "asymmetric"), Witness(st, evaluate(op, st), "asymmetric-sorted"))


def is_symmetric_on(op, S):
    return symmetry_violation(op, S) is None


def is_closed(op, S):
    s = _subset(S, op.size)
    vals = op.table[tuples_over(s, op.arity, op.size)]
    return bool(np.isin(vals, s).all())


def restrict(op, S):
    """The restriction to ``S^n`` relabelled onto ``0..|S|-1`` (``S`` in ascending order)."""
    s = _subset(S, op.size)
    idx = tuples_over(s, op.arity, op.size)
    vals = op.table[idx]
    pos = {x: i for i, x in enumerate(s)}
    try:
        table = [pos[int(v)] for v in vals]
    except KeyError:
        j = int(np.nonzero(~np.isin(vals, s))[0][0])
        t = index_tuple(int(idx[j]), op.size, op.arity)
        raise InputError(f"subset {s} is not closed: F{t} = {int(vals[j])}") from None
    labels = [op.carrier.label(x) for x in s] if op.labels else None
    return NaryOp(table, len(s), op.arity, labels)
