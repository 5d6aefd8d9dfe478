"""Passing between binary and n-ary operations, and relabelling operations."""
import math
from dataclasses import dataclass
from itertools import permutations

import numpy as np

from . import kernels
from .core import (
    NaryOp,
    TupleFamily,
    associativity_violation,
    build_tuple,
    check_capacity,
    evaluate,
    idempotency_violation,
    in_class_F,
    is_associative,
    is_idempotent,
    is_quasitrivial,
    neutral_elements,
    quasitriviality_violation,
    tuples_over,
)
from .errors import CapacityError, InputError, PreconditionError, PropertyFailure, TheoremViolation

NEUTRAL = "neutral-element"
QUASITRIVIAL = "quasitrivial-formula"
IDEMPOTENT = "idempotent-boundary"
UNDECIDED = "undecided-by-this-tool"


@dataclass(frozen=True)
class Mapping:
    """A carrier map ``x -> image[x]``; ``verified_for`` names the pair it intertwines."""

    image: tuple
    verified_for: tuple = None

    @property
    def size(self):
        return len(self.image)

    @property
    def bijective(self):
        return sorted(self.image) == list(range(len(self.image)))

    def __call__(self, x):
        return self.image[x]

    def inverse(self):
        inv = [0] * len(self.image)
        for x, y in enumerate(self.image):
            inv[y] = x
        return Mapping(tuple(inv))


@dataclass(frozen=True)
class ReductionResult:
    reducible: bool
    reduction: NaryOp = None
    method: str = None
    neutral_used: int = None
    note: str = ""


def _require_binary(G):
    if G.arity != 2:
        raise InputError(f"expected a binary operation, got arity {G.arity}")


def extend_binary(G, n):
    """The n-ary extension ``G^{n-1}`` of an associative binary operation."""
    _require_binary(G)
    check_capacity(G.size, n)
    v = associativity_violation(G)
    if v is not None:
        raise PropertyFailure("refusing to extend a non-associative operation", v.left)
    return NaryOp(kernels.extend_table(G.table, G.size, n), G.size, n, G.labels)


def iterate_nary(F, q):
    """``F^q``: nest ``F`` into the last slot ``q-1`` times (arity ``qn - q + 1``)."""
    if q < 1:
        raise InputError("q must be at least 1")
    arity = q * F.arity - q + 1
    check_capacity(F.size, arity)
    v = associativity_violation(F)
    if v is not None:
        raise PropertyFailure("refusing to iterate a non-associative operation", v.left)
    return NaryOp(kernels.iterate_table(F.table, F.size, F.arity, q), F.size, arity, F.labels)


def _binary_from(F, left, right):
    """Binary table ``G(x, y) = F(left.x, right.y)`` for repetition counts summing to n."""
    m, n = F.size, F.arity
    pw = kernels.powers(m, n)
    x, y = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    idx = x.reshape(-1) * pw[:left].sum() + y.reshape(-1) * pw[left:left + right].sum()
    return NaryOp(F.table[idx], m, 2, F.labels)


def reduce_via_neutral(F, e):
    """``G_e(x, y) = F(x, (n-2).e, y)`` for a neutral element ``e``."""
    if e not in neutral_elements(F):
        raise PreconditionError(f"{e} is not a neutral element")
    m, n = F.size, F.arity
    pw = kernels.powers(m, n)
    x, y = np.meshgrid(np.arange(m), np.arange(m), indexing="ij")
    idx = x.reshape(-1) * pw[0] + e * pw[1:n - 1].sum() + y.reshape(-1) * pw[n - 1]
    return NaryOp(F.table[idx], m, 2, F.labels)


def boundary_violation(F):
    """Smallest ``(x, y)`` with ``F((n-1).x, y) != F(x, (n-1).y)``, or ``None``."""
    n = F.arity
    a = _binary_from(F, n - 1, 1).table
    b = _binary_from(F, 1, n - 1).table
    bad = np.nonzero(a != b)[0]
    if bad.size == 0:
        return None
    return divmod(int(bad[0]), F.size)


def reduce_quasitrivial(F):
    """Try ``G(x, y) = F(x, (n-1).y)``; succeeds iff ``G`` is associative, quasitrivial and extends to ``F``."""
    G = _binary_from(F, 1, F.arity - 1)
    if not is_associative(G):
        return ReductionResult(False, method=QUASITRIVIAL, note="candidate is not associative")
    if not is_quasitrivial(G):
        return ReductionResult(False, method=QUASITRIVIAL, note="candidate is not quasitrivial")
    ext = kernels.extend_table(G.table, G.size, F.arity)
    if not np.array_equal(ext, F.table):
        j = int(np.nonzero(ext != F.table)[0][0])
        return ReductionResult(False, method=QUASITRIVIAL, note=f"extension differs at table index {j}")
    return ReductionResult(True, G, QUASITRIVIAL)


def reduce_idempotent(F):
    """Reduction of an associative idempotent operation through the boundary identity."""
    w = idempotency_violation(F)
    if w is not None:
        raise PreconditionError(f"operation is not idempotent: {w.format()}")
    if not is_associative(F):
        raise PreconditionError("operation is not associative")
    bad = boundary_violation(F)
    if bad is not None:
        return ReductionResult(False, method=IDEMPOTENT, note=f"boundary identity fails at {bad}")
    G = _binary_from(F, F.arity - 1, 1)
    ext = kernels.extend_table(G.table, G.size, F.arity)
    if not (is_associative(G) and is_idempotent(G) and np.array_equal(ext, F.table)):
        raise TheoremViolation("idempotent-boundary", "boundary identity holds but the induced binary operation does not reduce F", F)
    return ReductionResult(True, G, IDEMPOTENT)


def reduce_any(F):
    """Binary reduction of an operation that is associative and quasitrivial on ``D_{n-1}``."""
    n = F.arity
    if n < 3:
        raise PreconditionError("reduce_any needs arity at least 3")
    v = associativity_violation(F)
    if v is not None:
        raise PropertyFailure("operation is not associative", v.left)
    w = quasitriviality_violation(F, TupleFamily.D(n - 1, n, F.size))
    if w is not None:
        raise PropertyFailure("operation is not quasitrivial on D_{n-1}", w)
    E = neutral_elements(F)
    if E:
        e = E.min()
        G = reduce_via_neutral(F, e)
        if not np.array_equal(kernels.extend_table(G.table, G.size, n), F.table):
            raise TheoremViolation("neutral-reduction", f"G_{e} does not extend back to F", F)
        return ReductionResult(True, G, NEUTRAL, e)
    res = reduce_quasitrivial(F)
    if not res.reducible:
        raise TheoremViolation("reducible", f"no neutral element and quasitrivial reduction failed: {res.note}", F)
    return res


def reduce(F):
    """Best-effort reduction of any associative operation (neutral route, then the F_{n-1} and idempotent routes)."""
    if F.arity == 2:
        return ReductionResult(True, F, NEUTRAL if neutral_elements(F) else QUASITRIVIAL,
                               note="already binary")
    E = neutral_elements(F)
    if E:
        return ReductionResult(True, reduce_via_neutral(F, E.min()), NEUTRAL, E.min())
    if in_class_F(F, F.arity - 1):
        return reduce_any(F)
    if is_idempotent(F):
        res = reduce_idempotent(F)
        if res.reducible:
            return res
    return ReductionResult(False, method=UNDECIDED,
                           note="no neutral element; general reducibility is not decided")


# ---------------------------------------------------------------------------
# relabellings


def relabel_table(F, image):
    """Table of the operation transported along the bijection ``image``."""
    phi = np.asarray(image, dtype=np.int64)
    m, n = F.size, F.arity
    d = kernels.digits(np.arange(m ** n), m, n)
    out = np.empty(m ** n, dtype=np.int64)
    out[kernels.encode(phi[d], m)] = phi[F.table]
    return out


def intertwines(image, A, B):
    """``image(A(t)) == B(image(t))`` for every tuple ``t``."""
    return np.array_equal(relabel_table(A, image), B.table)


def conjugating_map(F, e1, e2):
    """The isomorphism ``x -> F(e1, e2, x, (n-3).e1)`` from ``G_{e1}`` onto ``G_{e2}``."""
    n = F.arity
    if n < 3:
        raise PreconditionError("conjugating_map needs arity at least 3")
    E = neutral_elements(F)
    for e in (e1, e2):
        if e not in E:
            raise PreconditionError(f"{e} is not a neutral element")
    m = F.size
    psi = tuple(evaluate(F, build_tuple([(1, e1), (1, e2), (1, x), (n - 3, e1)])) for x in range(m))
    inv = tuple(evaluate(F, build_tuple([(n - 2, e2), (1, x), (1, e1)])) for x in range(m))
    G1, G2 = reduce_via_neutral(F, e1), reduce_via_neutral(F, e2)
    if any(inv[psi[x]] != x or psi[inv[x]] != x for x in range(m)):
        raise TheoremViolation("conjugate-reductions", f"conjugating map for ({e1},{e2}) is not a bijection with the stated inverse", F)
    if not intertwines(psi, G1, G2):
        raise TheoremViolation("conjugate-reductions", f"conjugating map for ({e1},{e2}) does not intertwine the reductions", F)
    return Mapping(psi, (G1, G2))


def _element_signatures(F):
    m, n = F.size, F.arity
    counts = np.bincount(F.table, minlength=m)
    diag = F.table[np.arange(m) * int(kernels.powers(m, n).sum())]
    E = neutral_elements(F)
    return [(int(counts[x]), int(diag[x] == x), int(x in E)) for x in range(m)]


def find_isomorphism(A, B, max_candidates=10 ** 6):
    """Lexicographically smallest bijection ``phi`` with ``phi(A(t)) = B(phi(t))``, or ``None``."""
    if A.size != B.size or A.arity != B.arity:
        raise InputError("isomorphism search needs equal carrier size and arity")
    m, n = A.size, A.arity
    sa, sb = _element_signatures(A), _element_signatures(B)
    if sorted(sa) != sorted(sb):
        return None
    candidates = [[y for y in range(m) if sb[y] == sa[x]] for x in range(m)]
    if m > 8:
        classes = {}
        for s in sa:
            classes[s] = classes.get(s, 0) + 1
        if math.prod(math.factorial(c) for c in classes.values()) > max_candidates:
            raise CapacityError("isomorphism search exhausted capacity")
    # tuples over {0..k} whose A-value is also in {0..k}: checkable once 0..k are mapped
    checks = []
    for k in range(m):
        idx = tuples_over(range(k + 1), n, m)
        idx = idx[A.table[idx] <= k]
        checks.append((kernels.digits(idx, m, n), A.table[idx]))
    phi = np.full(m, -1, dtype=np.int64)
    used = np.zeros(m, dtype=bool)

    def extend(k):
        if k == m:
            return True
        for y in candidates[k]:
            if used[y]:
                continue
            phi[k] = y
            d, vals = checks[k]
            if np.array_equal(phi[vals], B.table[kernels.encode(phi[d], m)]):
                used[y] = True
                if extend(k + 1):
                    return True
                used[y] = False
        phi[k] = -1
        return False

    if not extend(0):
        return None
    image = tuple(int(x) for x in phi)
    return Mapping(image, (A, B))


def canonical_form(F, max_size=6):
    """The lexicographically smallest table among all relabellings of ``F``."""
    if F.size > max_size:
        raise CapacityError(f"canonical form is limited to carriers of size <= {max_size}")
    best = None
    for perm in permutations(range(F.size)):
        t = relabel_table(F, perm)
        if best is None or tuple(t) < tuple(best):
            best = t
    return NaryOp(best, F.size, F.arity)
