import itertools

import numpy as np
import pytest

from polysemi.construct import make_cyclic, named_example
from polysemi.core import (
    NaryOp,
    TupleFamily,
    associativity_violation,
    build_tuple,
    idempotency_violation,
    in_class_F,
    in_class_G,
    index_tuple,
    is_annihilator,
    is_associative,
    is_closed,
    is_neutral_pair,
    is_quasitrivial,
    neutral_elements,
    quasitriviality_violation,
    restrict,
    symmetry_violation,
    tuple_index,
)
from polysemi.errors import CapacityError, InputError
from polysemi.reduction import extend_binary


def proj1(m, n):
    return NaryOp.from_function(lambda *t: t[0], m, n)


def brute_family(kind, k, n, m):
    out = []
    for t in itertools.product(range(m), repeat=n):
        if kind == "D_k" and max(t.count(x) for x in t) >= k:
            out.append(t)
        elif kind == "S_k" and len(set(t)) <= k:
            out.append(t)
    return [tuple_index(t, m, n) for t in out]


@pytest.mark.parametrize("n,m", [(3, 2), (3, 3), (4, 3), (5, 2), (4, 4)])
def test_family_indices_match_definition(n, m):
    for k in range(1, n + 1):
        assert TupleFamily.D(k, n, m).indices().tolist() == brute_family("D_k", k, n, m)
        assert TupleFamily.S(k, n, m).indices().tolist() == brute_family("S_k", k, n, m)
        fam = TupleFamily.D(k, n, m)
        assert all(fam.contains(index_tuple(i, m, n)) for i in fam.indices())


def test_family_DS_positions_are_zero_based():
    fam = TupleFamily.DS({0, 2}, 3, 2)
    assert [index_tuple(i, 2, 3) for i in fam.indices()] == [(0, 0, 0), (0, 1, 0), (1, 0, 1), (1, 1, 1)]


def test_tuple_index_round_trip_and_errors():
    for i in range(27):
        assert tuple_index(index_tuple(i, 3, 3), 3, 3) == i
    with pytest.raises(InputError):
        tuple_index((0, 1), 3, 3)
    with pytest.raises(InputError):
        tuple_index((0, 1, 3), 3, 3)
    assert build_tuple([(2, 5), (0, 1), (1, 7)]) == (5, 5, 7)


def test_optable_validation():
    with pytest.raises(InputError):
        NaryOp([0, 1, 2], 2, 2)
    with pytest.raises(InputError):
        NaryOp([0, 1, 2, 0], 2, 2)
    with pytest.raises(CapacityError):
        NaryOp(np.zeros(1), 11, 8)
    op = NaryOp([0, 1, 1, 0], 2, 2)
    with pytest.raises(ValueError):
        op.table[0] = 1


def test_ternary_sum_z2():
    F = extend_binary(make_cyclic(2), 3)
    assert is_associative(F) and is_quasitrivial(F)
    assert neutral_elements(F).elements == (0, 1)
    assert F(1, 1, 0) == 0 and F(1, 1, 1) == 1


def test_associativity_witness_is_smallest():
    # x - y + z style on Z_3 is associative; x - y is not
    sub = NaryOp.from_function(lambda x, y: (x - y) % 3, 3, 2)
    v = associativity_violation(sub)
    assert v.i == 1
    assert v.left.tuple == (0, 0, 1)
    assert (v.left.value, v.right.value) == (2, 1)
    assert v.left.format() == "assoc-left-1 (0,0,1) -> 2"
    alt = NaryOp.from_function(lambda x, y, z: (x - y + z) % 3, 3, 3)
    assert associativity_violation(alt) is None


def test_z2sq_quasitriviality_witness_and_families():
    F = named_example("z2sq-ternary-sum")
    w = quasitriviality_violation(F, TupleFamily.all(3, 4))
    assert w.tuple == (0, 1, 2) and w.value == 3
    assert w.format(F.carrier) == "not-quasitrivial-ALL ([0,0],[0,1],[1,0]) -> [1,1]"
    assert in_class_F(F, 2) and not in_class_F(F, 1)
    assert in_class_G(F, 2) and not in_class_G(F, 3)


def test_idempotency_and_projection():
    P = proj1(3, 4)
    assert is_quasitrivial(P) and idempotency_violation(P) is None
    assert neutral_elements(P).elements == ()
    const = NaryOp.from_function(lambda *t: 0, 2, 3)
    assert idempotency_violation(const).tuple == (1, 1, 1)


def test_prop_collapse_direct_and_fast_agree():
    for n in (4, 5):
        for name_op in (proj1(3, n), extend_binary(make_cyclic(3), n), extend_binary(make_cyclic(2), n)):
            for k in range(2, n - 1):
                assert in_class_F(name_op, k, direct=True) == in_class_F(name_op, k) == in_class_F(name_op, 1)


def test_neutral_pair_and_annihilator():
    F = named_example("chain5-4ary")
    assert is_neutral_pair(F, 0, 1) and not is_neutral_pair(F, 0, 3)
    assert is_annihilator(F, 4, range(5))
    assert is_annihilator(F, 3, [0, 1, 2, 3]) and not is_annihilator(F, 3, range(5))
    with pytest.raises(InputError):
        is_neutral_pair(F, 1, 1)


def test_symmetry_witness():
    P = proj1(2, 3)
    a, b = symmetry_violation(P, [0, 1])
    assert (a.tuple, a.value, b.tuple, b.value) == ((1, 0, 0), 1, (0, 0, 1), 0)
    assert symmetry_violation(named_example("z2sq-ternary-sum"), range(4)) is None


def test_restrict_and_closure():
    F = named_example("chain5-4ary")
    assert is_closed(F, [0, 1, 2]) and is_closed(F, [0, 3, 4])
    assert not is_closed(extend_binary(make_cyclic(3), 3), [0, 1])
    R = restrict(F, [0, 1, 2])
    assert R == extend_binary(make_cyclic(3), 4)
    assert R.labels == ("1", "2", "3")
    with pytest.raises(InputError):
        restrict(extend_binary(make_cyclic(3), 3), [0, 1])
