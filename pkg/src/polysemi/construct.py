"""Building operations from a group block, a quasitrivial tail and absorbing glue."""
import math
from dataclasses import dataclass

import numpy as np

from .core import NaryOp, is_associative, is_quasitrivial, quasitriviality_violation, TupleFamily
from .errors import ConstructionError, InputError, TheoremViolation
from .reduction import extend_binary, relabel_table
from .kernels import extend_table
from .structure import group_info

QUASITRIVIAL_KINDS = ("left-projection", "right-projection", "max-chain", "min-chain")


@dataclass(frozen=True)
class ConstructionSpec:
    """Carrier size, target arity, the ordered group block ``Y`` and two binary tables.

    ``group_table`` indexes into ``Y`` in the listed order; ``tail_table``
    indexes into the complement of ``Y`` in ascending order.
    """

    size: int
    arity: int
    Y: tuple
    group_table: tuple
    tail_table: tuple = ()

    @property
    def complement(self):
        ys = set(self.Y)
        return tuple(x for x in range(self.size) if x not in ys)


def make_cyclic(k):
    if k < 1:
        raise InputError("cyclic group order must be at least 1")
    x, y = np.meshgrid(np.arange(k), np.arange(k), indexing="ij")
    return NaryOp(((x + y) % k).reshape(-1), k, 2)


def make_direct_sum(parts):
    """Componentwise product of group tables; element tuples are encoded row-major."""
    if not parts:
        raise InputError("direct sum needs at least one part")
    for p in parts:
        if p.arity != 2 or not group_info(p).is_group:
            raise InputError("every part of a direct sum must be a binary group")
    table = parts[0].table.reshape(parts[0].size, parts[0].size)
    size = parts[0].size
    for p in parts[1:]:
        k = p.size
        g = p.table.reshape(k, k)
        # (a, b) encoded as a * k + b
        a1, b1, a2, b2 = np.meshgrid(np.arange(size), np.arange(k), np.arange(size), np.arange(k), indexing="ij")
        table = (table[a1, a2] * k + g[b1, b2]).reshape(size * k, size * k)
        size *= k
    return NaryOp(table.reshape(-1), size, 2)


def make_quasitrivial(kind, m):
    x, y = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    tables = {
        "left-projection": x,
        "right-projection": y,
        "max-chain": np.maximum(x, y),
        "min-chain": np.minimum(x, y),
    }
    if kind not in tables:
        raise InputError(f"unknown quasitrivial kind {kind!r}; choose from {', '.join(QUASITRIVIAL_KINDS)}")
    return NaryOp(tables[kind].reshape(-1), m, 2)


def abelian_group_types(max_order):
    """Invariant-factor lists ``(d1, ..., dr)`` with ``d1 | d2 | ...`` and product at most ``max_order``."""
    out = [()]

    def grow(prefix, prod):
        last = prefix[-1] if prefix else 1
        d = last if prefix else 2
        while prod * d <= max_order:
            if d % last == 0:
                out.append(prefix + (d,))
                grow(prefix + (d,), prod * d)
            d += 1

    grow((), 1)
    return sorted(out, key=lambda t: (math.prod(t), t))


def group_from_type(factors):
    if not factors:
        return make_cyclic(1)
    return make_direct_sum([make_cyclic(d) for d in factors])


def _validate(spec):
    m, n = spec.size, spec.arity
    if n < 2 or m < 1:
        raise InputError("need size >= 1 and arity >= 2")
    Y = tuple(int(y) for y in spec.Y)
    if not Y:
        raise InputError("group block Y must be nonempty")
    if len(set(Y)) != len(Y):
        raise InputError(f"group block lists a repeated element: {Y}")
    if any(not 0 <= y < m for y in Y):
        raise InputError(f"group block {Y} is not inside 0..{m - 1}")
    k, t = len(Y), m - len(Y)
    if len(spec.group_table) != k * k:
        raise InputError(f"group table needs {k * k} entries, got {len(spec.group_table)}")
    if len(spec.tail_table) != t * t:
        raise InputError(f"tail table needs {t * t} entries, got {len(spec.tail_table)}")
    try:
        grp = NaryOp(spec.group_table, k, 2)
    except InputError as exc:
        raise ConstructionError("a", f"group table: {exc}") from None
    info = group_info(grp)
    if not info.is_group:
        raise ConstructionError("a", "group table does not define a group")
    if not info.is_abelian:
        raise ConstructionError("a", "group is not Abelian")
    if (n - 1) % info.exponent:
        raise ConstructionError("a", f"group exponent {info.exponent} does not divide n-1 = {n - 1}")
    if t:
        try:
            tail = NaryOp(spec.tail_table, t, 2)
        except InputError as exc:
            raise ConstructionError("b", f"tail table: {exc}") from None
        if not is_associative(tail):
            raise ConstructionError("b", "tail operation is not associative")
        if not is_quasitrivial(tail):
            raise ConstructionError("b", "tail operation is not quasitrivial")
    return info


def binary_table(spec):
    """The binary operation glued from ``spec``: group on Y, tail outside, outside absorbs Y."""
    m = spec.size
    Y = [int(y) for y in spec.Y]
    rest = list(spec.complement)
    k, t = len(Y), len(rest)
    grp = np.asarray(spec.group_table, dtype=np.int64).reshape(k, k)
    tail = np.asarray(spec.tail_table, dtype=np.int64).reshape(t, t) if t else None
    ypos = {y: i for i, y in enumerate(Y)}
    rpos = {x: i for i, x in enumerate(rest)}
    g = np.empty((m, m), dtype=np.int64)
    for x in range(m):
        for y in range(m):
            if x in ypos and y in ypos:
                g[x, y] = Y[grp[ypos[x], ypos[y]]]
            elif x in rpos and y in rpos:
                g[x, y] = rest[tail[rpos[x], rpos[y]]]
            else:
                g[x, y] = x if x in rpos else y
    return g.reshape(-1)


def assemble(spec, labels=None, check=True):
    """Return ``(G, F)``: the glued binary operation and its ``spec.arity``-ary extension.

    ``check=False`` skips the clause validation (used to exhibit what goes wrong
    when the exponent condition is dropped).
    """
    if check:
        _validate(spec)
    G = NaryOp(binary_table(spec), spec.size, 2, labels)
    if not is_associative(G):
        if check:
            raise TheoremViolation("construction", "glued operation is not associative")
        raise ConstructionError("b", "glued operation is not associative")
    F = NaryOp(extend_table(G.table, G.size, spec.arity), spec.size, spec.arity, labels)
    return G, F


def random_quasitrivial_semigroup(t, rng):
    """A random associative quasitrivial binary table on ``t`` elements."""
    if t == 0:
        return ()
    if t <= 4:
        from .enumerate import quasitrivial_semigroups

        pool = quasitrivial_semigroups(t)
        base = pool[int(rng.integers(len(pool)))]
    else:
        base = make_quasitrivial(QUASITRIVIAL_KINDS[int(rng.integers(4))], t)
    perm = rng.permutation(t)
    return tuple(int(v) for v in relabel_table(base, perm))


def random_construction_spec(n, m, rng, min_block=3):
    """A random spec satisfying every clause: random block placement and relabellings."""
    types = [f for f in abelian_group_types(m)
             if math.prod(f) >= min_block and (not f or (n - 1) % f[-1] == 0)]
    if not types:
        raise InputError(f"no Abelian group of order {min_block}..{m} has exponent dividing {n - 1}")
    grp = group_from_type(types[int(rng.integers(len(types)))])
    k = grp.size
    perm = rng.permutation(k)
    gtable = tuple(int(v) for v in relabel_table(grp, perm))
    Y = tuple(int(y) for y in rng.choice(m, size=k, replace=False))
    return ConstructionSpec(m, n, Y, gtable, random_quasitrivial_semigroup(m - k, rng))


def _chain5(n=4):
    spec = ConstructionSpec(5, n, (0, 1, 2), tuple(make_cyclic(3).table), tuple(make_quasitrivial("max-chain", 2).table))
    return assemble(spec, labels=["1", "2", "3", "4", "5"])[1]


def _six(n=3):
    k4 = make_direct_sum([make_cyclic(2), make_cyclic(2)])
    spec = ConstructionSpec(6, n, (0, 1, 2, 3), tuple(k4.table), tuple(make_quasitrivial("left-projection", 2).table))
    return assemble(spec, labels=["1", "2", "3", "4", "5", "6"])[1]


def _diamond():
    # 0 < a, b < 1 with a, b incomparable
    join = [[0, 1, 2, 3], [1, 1, 3, 3], [2, 3, 2, 3], [3, 3, 3, 3]]
    G = NaryOp(np.array(join).reshape(-1), 4, 2)
    return extend_binary(G, 3).with_labels(["0", "a", "b", "1"])


NAMED_EXAMPLES = {
    "z2-ternary-sum": lambda: extend_binary(make_cyclic(2), 3),
    "z2sq-ternary-sum": lambda: extend_binary(make_direct_sum([make_cyclic(2), make_cyclic(2)]), 3)
    .with_labels(["[0,0]", "[0,1]", "[1,0]", "[1,1]"]),
    "z3-7ary": lambda: extend_binary(make_cyclic(3), 7),
    "chain5-4ary": _chain5,
    "six-elt-ternary": _six,
    "diamond-join-ternary": _diamond,
}


def named_example(name):
    try:
        return NAMED_EXAMPLES[name]()
    except KeyError:
        raise InputError(f"unknown example {name!r}; choose from {', '.join(NAMED_EXAMPLES)}") from None


def _padded(n, m, group):
    k = group.size
    spec = ConstructionSpec(m, n, tuple(range(k)), tuple(group.table),
                            tuple(make_quasitrivial("max-chain", m - k).table) if m > k else ())
    return assemble(spec)[1]


def witness_strict_inclusion(n, m):
    """An operation quasitrivial on ``D_{n-1}`` but not quasitrivial, with a note.

    Inside the sufficient bounds (n = 3 with m >= 4, or n >= 4 with m >= n-1)
    a witness always exists.  Outside them a cyclic block of order d >= 3 with
    d | n-1 and d <= m is tried, which covers e.g. the 7-ary extension of Z_3;
    otherwise ``(None, note)`` is returned.
    """
    if n < 3 or m < 1:
        raise InputError("witnesses need n >= 3 and m >= 1")
    if n == 3 and m >= 4:
        op = _padded(n, m, make_direct_sum([make_cyclic(2), make_cyclic(2)]))
        note = "inside sufficient bound (n=3, m>=4): Z2^2 block"
    elif n >= 4 and m >= n - 1:
        op = _padded(n, m, make_cyclic(n - 1))
        note = f"inside sufficient bound (n>=4, m>=n-1): Z{n - 1} block"
    else:
        d = next((d for d in range(3, m + 1) if (n - 1) % d == 0), None)
        if d is None:
            return None, (f"no witness constructed for n={n}, m={m}; the size bounds are sufficient, "
                          "not necessary, so this does not show the classes coincide")
        op = _padded(n, m, make_cyclic(d))
        note = f"outside sufficient bound: Z{d} block with {d} | {n - 1}"
    if quasitriviality_violation(op, TupleFamily.D(n - 1, n, m)) is not None or is_quasitrivial(op):
        raise TheoremViolation("strict-inclusion", f"constructed witness for n={n}, m={m} is not in the strict difference", op)
    return op, note
