"""Hot numeric kernels over flat operation tables.

Every table here is a flat ``int64`` array of length ``m**n`` indexed with the
first argument most significant.  Each public kernel has a compiled loop form
(``_nb`` suffix, wrapped by :func:`polysemi._accel.njit`) and, where the
computation vectorises, a numpy form (``_np`` suffix).  The backend flag in
:mod:`polysemi._accel` decides which one the public name calls.
"""
import numpy as np

from ._accel import USE_NUMBA, njit


def powers(m, n):
    """Place values ``m**(n-1), ..., m, 1`` for first-argument-most-significant indexing."""
    return m ** np.arange(n - 1, -1, -1, dtype=np.int64)


def digits(indices, m, n):
    """Decode table indices into an ``(len, n)`` array of argument tuples."""
    idx = np.asarray(indices, dtype=np.int64)
    return (idx[:, None] // powers(m, n)[None, :]) % m


def encode(tuples, m):
    arr = np.asarray(tuples, dtype=np.int64)
    return arr @ powers(m, arr.shape[-1])


# ---------------------------------------------------------------------------
# associativity: pair-signature scan (the production path)
#
# For bracket position i the two sides of the identity differ only in how the
# n+1 middle arguments w collapse to a pair placed at argument slots (i, i+1):
#     left pair  = (F(w[0:n]), w[n]),   right pair = (w[0], F(w[1:n+1])).
# Two pairs are interchangeable in every context iff their slices of the table
# with the pair slots fixed are identical, so the identity holds iff every
# middle tuple maps both pairs to the same slice class.


def pair_classes(tflat, m, n, i):
    """Class id of each pair ``(u, v)`` placed at 1-based slots ``i, i+1``."""
    cube = tflat.reshape((m,) * n)
    sl = np.moveaxis(cube, (i - 1, i), (0, 1)).reshape(m * m, -1)
    _, inverse = np.unique(sl, axis=0, return_inverse=True)
    return inverse.reshape(-1).astype(np.int64)


def middle_pairs(tflat, m, n):
    w = np.arange(m ** (n + 1), dtype=np.int64)
    mn = m ** n
    left = tflat[w // m] * m + w % m
    right = (w // mn) * m + tflat[w % mn]
    return left, right


@njit
def _middle_ok_nb(tflat, cls, m, n):
    mn = m ** n
    total = mn * m
    for w in range(total):
        a = tflat[w // m] * m + w % m
        b = (w // mn) * m + tflat[w % mn]
        if cls[a] != cls[b]:
            return False
    return True


def first_failing_position(tflat, m, n):
    """Smallest 1-based bracket position whose identity fails, or 0."""
    pairs = None if USE_NUMBA else middle_pairs(tflat, m, n)
    for i in range(1, n):
        cls = pair_classes(tflat, m, n, i)
        if USE_NUMBA:
            ok = _middle_ok_nb(tflat, cls, m, n)
        else:
            ok = np.array_equal(cls[pairs[0]], cls[pairs[1]])
        if not ok:
            return i
    return 0


def smallest_violation_at(tflat, m, n, i):
    """Lexicographically smallest ``2n-1`` tuple violating the identity at position ``i``.

    Called only after :func:`first_failing_position` reported ``i``.
    """
    cube = tflat.reshape((m,) * n)
    sl = np.moveaxis(cube, (i - 1, i), (0, 1)).reshape(m * m, m ** (i - 1), m ** (n - i - 1))
    left, right = middle_pairs(tflat, m, n)
    cls = pair_classes(tflat, m, n, i)
    bad = np.nonzero(cls[left] != cls[right])[0]
    combos = np.unique(left[bad] * (m * m) + right[bad])
    best_p = None
    diffs = {}
    for combo in combos:
        a, b = divmod(int(combo), m * m)
        diff = sl[a] != sl[b]
        diffs[int(combo)] = diff
        p = int(np.argmax(diff.any(axis=1)))
        if best_p is None or p < best_p:
            best_p = p
    for w in bad:
        combo = int(left[w] * (m * m) + right[w])
        row = diffs[combo][best_p]
        if row.any():
            s = int(np.argmax(row))
            prefix = digits([best_p], m, i - 1)[0] if i > 1 else np.empty(0, np.int64)
            middle = digits([w], m, n + 1)[0]
            suffix = digits([s], m, n - i - 1)[0] if n - i - 1 > 0 else np.empty(0, np.int64)
            return tuple(int(x) for x in np.concatenate([prefix, middle, suffix]))
    raise AssertionError("no violating tuple found at a failing position")


# ---------------------------------------------------------------------------
# associativity: direct scan of the definition (oracle path)


@njit
def _brute_first_failure_nb(tflat, m, n):
    length = 2 * n - 1
    total = m ** length
    d = np.zeros(length, np.int64)
    for i in range(1, n):
        s = i - 1
        for idx in range(total):
            r = idx
            for p in range(length - 1, -1, -1):
                d[p] = r % m
                r //= m
            inner = 0
            for j in range(n):
                inner = inner * m + d[s + j]
            vl = tflat[inner]
            outer = 0
            for j in range(s):
                outer = outer * m + d[j]
            outer = outer * m + vl
            for j in range(s + n, length):
                outer = outer * m + d[j]
            lhs = tflat[outer]
            inner = 0
            for j in range(n):
                inner = inner * m + d[s + 1 + j]
            vr = tflat[inner]
            outer = 0
            for j in range(s + 1):
                outer = outer * m + d[j]
            outer = outer * m + vr
            for j in range(s + n + 1, length):
                outer = outer * m + d[j]
            rhs = tflat[outer]
            if lhs != rhs:
                return i, idx
    return 0, -1


def _brute_first_failure_np(tflat, m, n, chunk=1 << 18):
    length = 2 * n - 1
    total = m ** length
    pw = powers(m, n)
    for i in range(1, n):
        s = i - 1
        for start in range(0, total, chunk):
            d = digits(np.arange(start, min(total, start + chunk)), m, length)
            vl = tflat[d[:, s:s + n] @ pw]
            lhs = tflat[np.column_stack([d[:, :s], vl, d[:, s + n:]]) @ pw]
            vr = tflat[d[:, s + 1:s + 1 + n] @ pw]
            rhs = tflat[np.column_stack([d[:, :s + 1], vr, d[:, s + n + 1:]]) @ pw]
            bad = np.nonzero(lhs != rhs)[0]
            if bad.size:
                return i, start + int(bad[0])
    return 0, -1


def brute_first_failure(tflat, m, n):
    """First ``(i, tuple_index)`` violating associativity by direct evaluation, or ``(0, -1)``."""
    if USE_NUMBA:
        i, idx = _brute_first_failure_nb(tflat, m, n)
        return int(i), int(idx)
    return _brute_first_failure_np(tflat, m, n)


# ---------------------------------------------------------------------------
# quasitriviality over an explicit list of tuple indices


@njit
def _qt_first_failure_nb(tflat, idx, m, n):
    for j in range(idx.shape[0]):
        t = idx[j]
        v = tflat[t]
        r = t
        found = False
        for _ in range(n):
            if r % m == v:
                found = True
                break
            r //= m
        if not found:
            return j
    return -1


def _qt_first_failure_np(tflat, idx, m, n, chunk=1 << 20):
    for start in range(0, idx.shape[0], chunk):
        part = idx[start:start + chunk]
        vals = tflat[part]
        ok = (digits(part, m, n) == vals[:, None]).any(axis=1)
        bad = np.nonzero(~ok)[0]
        if bad.size:
            return start + int(bad[0])
    return -1


def qt_first_failure(tflat, idx, m, n):
    """Position in ``idx`` of the first tuple whose value is not among its arguments, or -1."""
    idx = np.ascontiguousarray(idx, dtype=np.int64)
    if USE_NUMBA:
        return int(_qt_first_failure_nb(tflat, idx, m, n))
    return _qt_first_failure_np(tflat, idx, m, n)


# ---------------------------------------------------------------------------
# exhaustive enumeration


@njit
def _assoc_ok_nb(tflat, m, n):
    i, _ = _brute_first_failure_nb(tflat, m, n)
    return i == 0


@njit
def _naive_filter_nb(m, n, fixed):
    size = fixed.shape[0]
    nfree = 0
    for c in range(size):
        if fixed[c] < 0:
            nfree += 1
    free = np.empty(nfree, np.int64)
    k = 0
    for c in range(size):
        if fixed[c] < 0:
            free[k] = c
            k += 1
    total = m ** nfree
    table = fixed.copy()
    cap = 64
    out = np.empty((cap, size), np.int64)
    count = 0
    for code in range(total):
        r = code
        for j in range(nfree - 1, -1, -1):
            table[free[j]] = r % m
            r //= m
        if _assoc_ok_nb(table, m, n):
            if count == cap:
                cap *= 2
                grown = np.empty((cap, size), np.int64)
                grown[:count] = out[:count]
                out = grown
            out[count] = table
            count += 1
    return out[:count].copy()


def _naive_filter_np(m, n, fixed):
    size = fixed.shape[0]
    free = np.nonzero(fixed < 0)[0]
    total = m ** free.size
    tables = np.repeat(fixed[None, :], total, axis=0)
    if free.size:
        tables[:, free] = digits(np.arange(total), m, free.size)
    alive = np.arange(total)
    length = 2 * n - 1
    pw = powers(m, n)
    rows = np.arange(total)
    for i in range(1, n):
        s = i - 1
        for d in digits(np.arange(m ** length), m, length):
            if alive.size == 0:
                return tables[:0]
            t = tables[alive]
            r = rows[:alive.size]
            vl = t[r, int(d[s:s + n] @ pw)]
            lhs = t[r, (np.concatenate([d[:s], [0], d[s + n:]]) @ pw) + vl * pw[s]]
            vr = t[r, int(d[s + 1:s + 1 + n] @ pw)]
            rhs = t[r, (np.concatenate([d[:s + 1], [0], d[s + n + 1:]]) @ pw) + vr * pw[s + 1]]
            alive = alive[lhs == rhs]
    return tables[alive].reshape(-1, size)


def naive_filter(m, n, fixed):
    """All associative tables agreeing with ``fixed`` (``-1`` = free cell), in table order."""
    fixed = np.ascontiguousarray(fixed, dtype=np.int64)
    if USE_NUMBA:
        return _naive_filter_nb(m, n, fixed)
    return _naive_filter_np(m, n, fixed)


def instance_tables(m, n):
    """Cell bookkeeping for every associativity instance ``(i, x_1..x_{2n-1})``.

    Returns ``innerL, baseL, multL, innerR, baseR, multR`` such that the left
    side reads cell ``baseL + table[innerL] * multL`` and likewise on the right.
    """
    length = 2 * n - 1
    pw = powers(m, n)
    d = digits(np.arange(m ** length), m, length)
    parts = [[] for _ in range(6)]
    for s in range(n - 1):
        zero = np.zeros((d.shape[0], 1), np.int64)
        parts[0].append(d[:, s:s + n] @ pw)
        parts[1].append(np.hstack([d[:, :s], zero, d[:, s + n:]]) @ pw)
        parts[2].append(np.full(d.shape[0], pw[s]))
        parts[3].append(d[:, s + 1:s + 1 + n] @ pw)
        parts[4].append(np.hstack([d[:, :s + 1], zero, d[:, s + n + 1:]]) @ pw)
        parts[5].append(np.full(d.shape[0], pw[s + 1]))
    return tuple(np.ascontiguousarray(np.concatenate(p), dtype=np.int64) for p in parts)


@njit
def backtrack_rowmajor(m, fixed, innerL, baseL, multL, innerR, baseR, multR):
    """Depth-first cell assignment in index order with associativity propagation.

    After setting cell ``c`` only the instances whose four cells are all
    assigned and whose largest cell is ``c`` are new, so only those are tested.
    Output rows come out in lexicographic table order.
    """
    size = fixed.shape[0]
    nk = innerL.shape[0]
    table = np.full(size, -1, np.int64)
    nxt = np.zeros(size, np.int64)
    cap = 64
    out = np.empty((cap, size), np.int64)
    count = 0
    c = 0
    while c >= 0:
        if c == size:
            if count == cap:
                cap *= 2
                grown = np.empty((cap, size), np.int64)
                grown[:count] = out[:count]
                out = grown
            out[count] = table
            count += 1
            c -= 1
            continue
        v = -1
        if fixed[c] >= 0:
            if nxt[c] == 0:
                v = fixed[c]
                nxt[c] = 1
        elif nxt[c] < m:
            v = nxt[c]
            nxt[c] += 1
        if v < 0:
            table[c] = -1
            nxt[c] = 0
            c -= 1
            continue
        table[c] = v
        ok = True
        for k in range(nk):
            il = innerL[k]
            ir = innerR[k]
            if il > c or ir > c:
                continue
            ol = baseL[k] + table[il] * multL[k]
            orr = baseR[k] + table[ir] * multR[k]
            if ol > c or orr > c:
                continue
            if il != c and ir != c and ol != c and orr != c:
                continue
            if table[ol] != table[orr]:
                ok = False
                break
        if ok:
            c += 1
    return out[:count].copy()


@njit
def backtrack_binary_colmajor(m):
    """Second, independently written semigroup search.

    Cells are filled column by column (cell ``(a, b)`` at step ``b*m + a``)
    and every fully determined triple is re-checked at each node.  Rows are
    returned as row-major flat tables in discovery order, not sorted.
    """
    steps = m * m
    g = np.full((m, m), -1, np.int64)
    cap = 64
    out = np.empty((cap, steps), np.int64)
    count = 0
    k = 0
    while k >= 0:
        if k == steps:
            if count == cap:
                cap *= 2
                grown = np.empty((cap, steps), np.int64)
                grown[:count] = out[:count]
                out = grown
            for a in range(m):
                for b in range(m):
                    out[count, a * m + b] = g[a, b]
            count += 1
            k -= 1
            continue
        a = k % m
        b = k // m
        g[a, b] += 1
        if g[a, b] >= m:
            g[a, b] = -1
            k -= 1
            continue
        good = True
        for x in range(m):
            for y in range(m):
                xy = g[x, y]
                if xy < 0:
                    continue
                for z in range(m):
                    yz = g[y, z]
                    if yz < 0:
                        continue
                    left = g[xy, z]
                    right = g[x, yz]
                    if left >= 0 and right >= 0 and left != right:
                        good = False
                        break
                if not good:
                    break
            if not good:
                break
        if good:
            k += 1
    return out[:count].copy()


# ---------------------------------------------------------------------------
# extensions


def extend_table(gflat, m, n):
    """Right-nested fold ``G(x1, G(x2, ... G(x_{n-1}, x_n)))`` as a flat n-ary table."""
    g = np.asarray(gflat, dtype=np.int64).reshape(m, m)
    acc = np.arange(m, dtype=np.int64)
    for _ in range(n - 1):
        acc = g[:, acc].reshape(-1)
    return acc


def iterate_table(fflat, m, n, q):
    """Flat table of the (qn-q+1)-ary operation obtained by nesting F into its last slot."""
    f = np.asarray(fflat, dtype=np.int64)
    acc = f
    arity = n
    for _ in range(q - 1):
        prefix = np.arange(m ** (arity - 1), dtype=np.int64)
        acc = acc[(prefix[:, None] * m + f[None, :]).reshape(-1)]
        arity += n - 1
    return acc
