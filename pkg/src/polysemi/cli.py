"""Command-line interface: ``polysemi <command> ...``.

Exit codes: 0 success or property holds, 1 property fails (witness printed),
2 usage or parse error, 3 capacity exceeded, 4 a theorem check found a
counterexample.
"""
import argparse
import os
import sys

from .battery import run_battery
from .construct import assemble, witness_strict_inclusion
from .core import (
    TupleFamily,
    associativity_violation,
    idempotency_violation,
    neutral_elements,
    quasitriviality_violation,
)
from .enumerate import BINARY_EXTENDED, NARY_EXHAUSTIVE, census, nary_tables, semigroup_tables, universe
from .errors import InputError, PolysemiError, PropertyFailure, TheoremViolation
from .io import read_construct, read_optab, serialize_optab
from .reduction import (
    extend_binary,
    iterate_nary,
    reduce,
    reduce_any,
    reduce_idempotent,
    reduce_quasitrivial,
    reduce_via_neutral,
)
from .structure import classify


def _element(op, token):
    """Resolve an element given as a label or as an index."""
    if op.labels and token in op.labels:
        return op.labels.index(token)
    try:
        x = int(token)
    except ValueError:
        raise InputError(f"unknown element {token!r}") from None
    if not 0 <= x < op.size:
        raise InputError(f"element {x} outside 0..{op.size - 1}")
    return x


def _family(spec, op):
    kind, _, k = spec.partition(":")
    try:
        k = int(k)
    except ValueError:
        raise InputError(f"property {spec!r} needs an integer after ':'") from None
    if kind == "qt-dk":
        return TupleFamily.D(k, op.arity, op.size)
    return TupleFamily.S(k, op.arity, op.size)


def _check_property(op, prop, out):
    """Print the verdict for one property; return True when it holds."""
    fmt = op.carrier
    if prop == "assoc":
        v = associativity_violation(op)
        if v is None:
            out.write("assoc: holds\n")
            return True
        out.write(f"assoc: fails at bracket position {v.i}\n")
        out.write(f"witness: {v.left.format(fmt)}\n")
        out.write(f"witness: {v.right.format(fmt)}\n")
        return False
    if prop == "idem":
        w = idempotency_violation(op)
    elif prop == "neutral":
        E = neutral_elements(op)
        if E:
            out.write(f"neutral: {' '.join(fmt.label(e) for e in E)}\n")
            return True
        out.write("neutral: none\n")
        return False
    elif prop.startswith(("qt-dk:", "qt-sk:")):
        w = quasitriviality_violation(op, _family(prop, op))
    else:
        raise InputError(f"unknown property {prop!r}")
    if w is None:
        out.write(f"{prop}: holds\n")
        return True
    out.write(f"{prop}: fails\nwitness: {w.format(fmt)}\n")
    return False


def _load(args):
    op = read_optab(args.optab)
    args.carrier = op.carrier
    return op


def cmd_verify(args, out):
    op = _load(args)
    if args.property == "all":
        props = ["assoc", "idem", "qt-dk:1"]
        if op.arity >= 3:
            props.append(f"qt-dk:{op.arity - 1}")
        props += ["qt-sk:2", "neutral"]
    else:
        props = [args.property]
    ok = [_check_property(op, p, out) for p in props]
    return 0 if all(ok) else 1


def cmd_classify(args, out):
    op = _load(args)
    report = classify(op)
    out.write(report.to_text())
    if not report.associative:
        _check_property(op, "assoc", out)
        return 1
    return 0


def cmd_reduce(args, out):
    F = _load(args)
    if args.via_neutral is not None:
        G = reduce_via_neutral(F, _element(F, args.via_neutral))
        out.write(serialize_optab(G))
        return 0
    if args.quasitrivial:
        res = reduce_quasitrivial(F)
    elif args.idempotent:
        res = reduce_idempotent(F)
    elif args.any:
        res = reduce_any(F)
    else:
        v = associativity_violation(F)
        if v is not None:
            raise PropertyFailure("operation is not associative", v.left)
        res = reduce(F)
    if not res.reducible:
        sys.stderr.write(f"not reduced ({res.method}): {res.note}\n")
        return 1
    out.write(serialize_optab(res.reduction))
    return 0


def cmd_extend(args, out):
    op = _load(args)
    n = args.arity
    if n < op.arity or (n - 1) % (op.arity - 1):
        raise InputError(f"arity {n} is not reachable from arity {op.arity}: need (n-1) divisible by {op.arity - 1}")
    if op.arity == 2:
        res = extend_binary(op, n)
    else:
        res = iterate_nary(op, (n - 1) // (op.arity - 1))
    out.write(serialize_optab(res))
    return 0


def cmd_construct(args, out):
    spec = read_construct(args.spec)
    G, F = assemble(spec)
    out.write(serialize_optab(G if args.emit_binary else F))
    return 0


def cmd_enumerate(args, out):
    m, n = args.size, args.arity
    if args.census:
        kind = args.universe or BINARY_EXTENDED
        c = census(m, n, kind, jobs=args.jobs, idempotent_only=args.idempotent)
        out.write(c.format())
        return 0
    if n == 2 and not args.idempotent and args.universe in (None, NARY_EXHAUSTIVE):
        rows = semigroup_tables(m)
    elif args.universe == BINARY_EXTENDED:
        if args.idempotent:
            raise InputError("--idempotent applies to the exhaustive n-ary universe only")
        rows = [op.table for op in universe(m, n, BINARY_EXTENDED)]
    else:
        rows = nary_tables(m, n, idempotent_only=args.idempotent)
    out.write(f"# size {m} arity {n} count {len(rows)}\n")
    if not args.count:
        for row in rows:
            out.write(" ".join(str(int(v)) for v in row) + "\n")
    return 0


def cmd_witness(args, out):
    op, note = witness_strict_inclusion(args.arity, args.size)
    if op is None:
        out.write(f"# {note}\n")
        return 1
    out.write(f"# {note}\n")
    out.write(serialize_optab(op))
    return 0


def cmd_check_paper(args, out):
    results = run_battery(args.level, echo=lambda line: (out.write(line + "\n"), out.flush()))
    failed = sum(not r.passed for r in results)
    out.write(f"{len(results) - failed}/{len(results)} checks passed\n")
    return 0 if failed == 0 else 1


def build_parser():
    p = argparse.ArgumentParser(prog="polysemi", description="Verify, classify, reduce and enumerate finite n-ary semigroups.")
    p.add_argument("--jobs", type=int, default=None, help="worker processes for census runs (default: POLYSEMI_JOBS or 1)")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", help="check properties of an OPTAB operation")
    s.add_argument("optab")
    s.add_argument("--property", default="all",
                   help="assoc | idem | qt-dk:<k> | qt-sk:<k> | neutral | all (default)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("classify", help="print the structure report")
    s.add_argument("optab")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("reduce", help="write a binary reduction as OPTAB")
    s.add_argument("optab")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--via-neutral", metavar="E", help="reduce through the neutral element E (label or index)")
    g.add_argument("--quasitrivial", action="store_true", help="G(x,y) = F(x,(n-1).y)")
    g.add_argument("--idempotent", action="store_true", help="idempotent operations via the boundary identity")
    g.add_argument("--any", action="store_true", help="members of F_(n-1): neutral route, else quasitrivial")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("extend", help="n-ary extension of an associative operation")
    s.add_argument("optab")
    s.add_argument("--arity", type=int, required=True)
    s.set_defaults(func=cmd_extend)

    s = sub.add_parser("construct", help="assemble an operation from a construction spec")
    s.add_argument("spec")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--emit-binary", action="store_true")
    g.add_argument("--emit-nary", action="store_true", help="default")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("enumerate", help="list associative operations or print a class census")
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--arity", type=int, default=2)
    s.add_argument("--census", action="store_true")
    s.add_argument("--universe", choices=[BINARY_EXTENDED, NARY_EXHAUSTIVE])
    s.add_argument("--idempotent", action="store_true", help="restrict the exhaustive universe to idempotent tables")
    s.add_argument("--count", action="store_true", help="print only the count line")
    s.set_defaults(func=cmd_enumerate)

    s = sub.add_parser("witness", help="an operation in F_(n-1) \\ F_1")
    s.add_argument("--arity", type=int, required=True)
    s.add_argument("--size", type=int, required=True)
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("check-paper", help="run the theorem battery")
    s.add_argument("--level", choices=["quick", "full"], default="quick")
    s.set_defaults(func=cmd_check_paper)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    if args.jobs is not None:
        if args.jobs < 1:
            sys.stderr.write("error: --jobs must be at least 1\n")
            return 2
        os.environ["POLYSEMI_JOBS"] = str(args.jobs)
    try:
        return args.func(args, out)
    except TheoremViolation as exc:
        sys.stderr.write(f"THEOREM VIOLATION {exc}\n")
        return exc.exit_code
    except PropertyFailure as exc:
        sys.stderr.write(f"error: {exc}\n")
        if exc.witness is not None:
            out.write(f"witness: {exc.witness.format(getattr(args, 'carrier', None))}\n")
        return exc.exit_code
    except PolysemiError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.exit_code


def run():
    sys.exit(main())
