"""OPTAB and construction-spec text formats.

OPTAB::

    optab 1
    arity 3
    size 2
    labels a b        # optional
    table
    0 1
    1 0
    ...

``#`` starts a comment; tokens are whitespace separated.  The table lists the
``size**arity`` values in index order (first argument most significant) and
is written ``size`` entries per line.
"""
from .construct import ConstructionSpec
from .core import MAX_TABLE_ENTRIES, NaryOp
from .errors import CapacityError, InputError, ParseError

OPTAB_VERSION = 1
CONSTRUCT_VERSION = 1


def _lines(text):
    for no, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split("#", 1)[0].split()
        if tokens:
            yield no, tokens


def _int(token, no, what):
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"{what}: expected an integer, got {token!r}", no) from None


def _header(lines, key, no_hint):
    try:
        no, tokens = next(lines)
    except StopIteration:
        raise ParseError(f"missing '{key}' line", no_hint) from None
    if tokens[0] != key:
        raise ParseError(f"expected '{key}', got {tokens[0]!r}", no)
    return no, tokens


def _collect_ints(lines, count, what, start_no):
    values = []
    last = start_no
    for no, tokens in lines:
        last = no
        for tok in tokens:
            values.append((_int(tok, no, what), no))
        if len(values) >= count:
            break
    if len(values) != count:
        raise ParseError(f"{what}: expected {count} entries, got {len(values)}", last)
    return values


def parse_optab(text):
    lines = _lines(text)
    no, tokens = _header(lines, "optab", 1)
    if len(tokens) != 2 or _int(tokens[1], no, "version") != OPTAB_VERSION:
        raise ParseError(f"unsupported optab header {' '.join(tokens)!r}", no)
    no, tokens = _header(lines, "arity", no + 1)
    if len(tokens) != 2:
        raise ParseError("arity line takes one integer", no)
    n = _int(tokens[1], no, "arity")
    no, tokens = _header(lines, "size", no + 1)
    if len(tokens) != 2:
        raise ParseError("size line takes one integer", no)
    m = _int(tokens[1], no, "size")
    if n < 2 or m < 1:
        raise ParseError("need arity >= 2 and size >= 1", no)
    if m ** n > MAX_TABLE_ENTRIES:
        raise CapacityError(f"table of {m}^{n} entries exceeds the {MAX_TABLE_ENTRIES} entry limit")
    try:
        no, tokens = next(lines)
    except StopIteration:
        raise ParseError("missing 'table' line", no + 1) from None
    labels = None
    if tokens[0] == "labels":
        labels = tokens[1:]
        if len(labels) != m or len(set(labels)) != m:
            raise ParseError(f"labels line needs {m} distinct tokens", no)
        no, tokens = _header(lines, "table", no + 1)
    if tokens[0] != "table":
        raise ParseError(f"expected 'table', got {tokens[0]!r}", no)
    head = [(_int(t, no, "table"), no) for t in tokens[1:]]
    values = head + (_collect_ints(lines, m ** n - len(head), "table", no) if len(head) < m ** n else [])
    if len(values) != m ** n:
        raise ParseError(f"table: expected {m ** n} entries, got {len(values)}", no)
    for v, vno in values:
        if not 0 <= v < m:
            raise ParseError(f"table entry {v} outside 0..{m - 1}", vno)
    extra = next(lines, None)
    if extra is not None:
        raise ParseError("unexpected content after the table", extra[0])
    return NaryOp([v for v, _ in values], m, n, labels)


def serialize_optab(op):
    m = op.size
    out = [f"optab {OPTAB_VERSION}", f"arity {op.arity}", f"size {m}"]
    if op.labels:
        out.append("labels " + " ".join(op.labels))
    out.append("table")
    t = op.table.tolist()
    for start in range(0, len(t), m):
        out.append(" ".join(str(v) for v in t[start:start + m]))
    return "\n".join(out) + "\n"


def parse_construct(text):
    """Parse a construction spec (``construct 1 / size / arity / group / grouptable / rest``)."""
    lines = _lines(text)
    no, tokens = _header(lines, "construct", 1)
    if len(tokens) != 2 or _int(tokens[1], no, "version") != CONSTRUCT_VERSION:
        raise ParseError(f"unsupported construct header {' '.join(tokens)!r}", no)
    no, tokens = _header(lines, "size", no + 1)
    m = _int(tokens[1], no, "size") if len(tokens) == 2 else None
    if m is None or m < 1:
        raise ParseError("size line takes one positive integer", no)
    no, tokens = _header(lines, "arity", no + 1)
    n = _int(tokens[1], no, "arity") if len(tokens) == 2 else None
    if n is None or n < 2:
        raise ParseError("arity line takes one integer >= 2", no)
    no, tokens = _header(lines, "group", no + 1)
    Y = tuple(_int(t, no, "group") for t in tokens[1:])
    if not Y:
        raise ParseError("group line lists no elements", no)
    if len(set(Y)) != len(Y):
        raise ParseError("group line repeats an element", no)
    if any(not 0 <= y < m for y in Y):
        raise ParseError(f"group elements must lie in 0..{m - 1}", no)
    k = len(Y)
    no, tokens = _header(lines, "grouptable", no + 1)
    head = [(_int(t, no, "grouptable"), no) for t in tokens[1:]]
    gvals = head + (_collect_ints(lines, k * k - len(head), "grouptable", no) if len(head) < k * k else [])
    if len(gvals) != k * k:
        raise ParseError(f"grouptable: expected {k * k} entries, got {len(gvals)}", no)
    t = m - k
    tvals = []
    nxt = next(lines, None)
    if nxt is not None:
        no, tokens = nxt
        if tokens[0] != "rest":
            raise ParseError(f"expected 'rest', got {tokens[0]!r}", no)
        head = [(_int(tok, no, "rest"), no) for tok in tokens[1:]]
        tvals = head + (_collect_ints(lines, t * t - len(head), "rest", no) if len(head) < t * t else [])
        extra = next(lines, None)
        if extra is not None:
            raise ParseError("unexpected content after the rest table", extra[0])
    elif t:
        raise ParseError("missing 'rest' section", no + 1)
    if len(tvals) != t * t:
        raise ParseError(f"rest: expected {t * t} entries, got {len(tvals)}", no)
    for v, vno in gvals:
        if not 0 <= v < k:
            raise ParseError(f"grouptable entry {v} outside 0..{k - 1}", vno)
    for v, vno in tvals:
        if not 0 <= v < t:
            raise ParseError(f"rest entry {v} outside 0..{t - 1}", vno)
    return ConstructionSpec(m, n, Y, tuple(v for v, _ in gvals), tuple(v for v, _ in tvals))


def serialize_construct(spec):
    k = len(spec.Y)
    t = spec.size - k
    out = [f"construct {CONSTRUCT_VERSION}", f"size {spec.size}", f"arity {spec.arity}",
           "group " + " ".join(str(y) for y in spec.Y), "grouptable"]
    for start in range(0, k * k, k):
        out.append(" ".join(str(v) for v in spec.group_table[start:start + k]))
    if t:
        out.append("rest")
        for start in range(0, t * t, t):
            out.append(" ".join(str(v) for v in spec.tail_table[start:start + t]))
    return "\n".join(out) + "\n"


def read_optab(path):
    try:
        with open(path) as fh:
            return parse_optab(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def read_construct(path):
    try:
        with open(path) as fh:
            return parse_construct(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
