import numpy as np
import pytest

from polysemi.construct import make_cyclic, make_quasitrivial, named_example
from polysemi.core import NaryOp, neutral_elements
from polysemi.errors import PreconditionError, PropertyFailure
from polysemi.reduction import (
    IDEMPOTENT,
    NEUTRAL,
    QUASITRIVIAL,
    UNDECIDED,
    boundary_violation,
    canonical_form,
    conjugating_map,
    extend_binary,
    find_isomorphism,
    iterate_nary,
    reduce,
    reduce_any,
    reduce_idempotent,
    reduce_quasitrivial,
    reduce_via_neutral,
    relabel_table,
)
from polysemi.construct import make_direct_sum


def test_extend_refuses_non_associative():
    sub = NaryOp.from_function(lambda x, y: (x - y) % 3, 3, 2)
    with pytest.raises(PropertyFailure) as exc:
        extend_binary(sub, 3)
    assert exc.value.witness.tuple == (0, 0, 1)


def test_neutral_round_trips_on_fixtures():
    for name in ("z2sq-ternary-sum", "z3-7ary", "chain5-4ary", "six-elt-ternary"):
        F = named_example(name)
        for e in neutral_elements(F):
            G = reduce_via_neutral(F, e)
            assert extend_binary(G, F.arity) == F


def test_reduce_via_non_neutral_is_rejected():
    with pytest.raises(PreconditionError):
        reduce_via_neutral(named_example("chain5-4ary"), 3)


def test_quasitrivial_reduction():
    for kind in ("left-projection", "right-projection", "max-chain", "min-chain"):
        G = make_quasitrivial(kind, 4)
        F = extend_binary(G, 4)
        res = reduce_quasitrivial(F)
        assert res.reducible and res.method == QUASITRIVIAL and res.reduction == G
    # ternary sum on Z_2 is quasitrivial with two neutrals: formula fails
    assert not reduce_quasitrivial(extend_binary(make_cyclic(2), 3)).reducible


def test_idempotent_reduction_and_boundary():
    D = named_example("diamond-join-ternary")
    res = reduce_idempotent(D)
    assert res.reducible and res.method == IDEMPOTENT
    assert extend_binary(res.reduction, 3) == D
    assert boundary_violation(extend_binary(make_cyclic(2), 3)) == (0, 1)
    with pytest.raises(PreconditionError):
        reduce_idempotent(extend_binary(make_cyclic(2), 3).__class__([0] * 8, 2, 3))


def test_reduce_any_routes():
    res = reduce_any(named_example("chain5-4ary"))
    assert res.method == NEUTRAL and res.neutral_used == 0
    res = reduce_any(extend_binary(make_quasitrivial("left-projection", 3), 5))
    assert res.method == QUASITRIVIAL
    with pytest.raises(PropertyFailure):
        reduce_any(named_example("diamond-join-ternary"))


def test_reduce_undecided_for_ternary_without_neutral():
    # x + y + z + 1 on Z_2: associative, no neutral, not idempotent
    F = NaryOp.from_function(lambda x, y, z: (x + y + z + 1) % 2, 2, 3)
    res = reduce(F)
    assert not res.reducible and res.method == UNDECIDED


def test_iterate_nary():
    F = extend_binary(make_cyclic(3), 3)
    assert iterate_nary(F, 3) == extend_binary(make_cyclic(3), 7)


def test_conjugating_map_on_z3_7ary():
    F = named_example("z3-7ary")
    for e1 in range(3):
        for e2 in range(3):
            psi = conjugating_map(F, e1, e2)
            assert psi.bijective
            inv = psi.inverse()
            assert all(inv(psi(x)) == x for x in range(3))


def test_find_isomorphism():
    z6 = make_cyclic(6)
    z2z3 = make_direct_sum([make_cyclic(2), make_cyclic(3)])
    phi = find_isomorphism(z2z3, z6)
    assert phi is not None and phi.bijective
    assert np.array_equal(relabel_table(z2z3, phi.image), z6.table)
    k4 = make_direct_sum([make_cyclic(2), make_cyclic(2)])
    assert find_isomorphism(k4, make_cyclic(4)) is None


def test_canonical_form_is_relabelling_invariant():
    G = make_quasitrivial("max-chain", 4)
    H = NaryOp(relabel_table(G, (2, 0, 3, 1)), 4, 2)
    assert canonical_form(G) == canonical_form(H)


def test_ternary_sum_reductions_are_conjugate():
    F = named_example("z2-ternary-sum")
    assert reduce_via_neutral(F, 0).table.tolist() == [0, 1, 1, 0]
    assert reduce_via_neutral(F, 1).table.tolist() == [1, 0, 0, 1]
    assert conjugating_map(F, 0, 1).image == (1, 0)
