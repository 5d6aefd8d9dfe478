from polysemi.construct import make_cyclic, make_direct_sum, make_quasitrivial, named_example
from polysemi.core import NaryOp
from polysemi.reduction import extend_binary
from polysemi.structure import check_all_neutral, classify, exponent_divides, group_info, structure_subsets


def test_group_info():
    info = group_info(make_cyclic(3))
    assert (info.is_group, info.is_abelian, info.neutral, info.exponent, info.order) == (True, True, 0, 3, 3)
    k4 = make_direct_sum([make_cyclic(2), make_cyclic(2)])
    assert group_info(k4).exponent == 2
    assert group_info(make_direct_sum([make_cyclic(2), make_cyclic(3)])).exponent == 6
    assert not group_info(make_quasitrivial("max-chain", 3)).is_group


def test_exponent_divides():
    z6 = make_cyclic(6)
    assert exponent_divides(z6, range(6), 6) and exponent_divides(z6, range(6), 12)
    assert not exponent_divides(z6, range(6), 3)


def test_classify_fixtures():
    r = classify(named_example("z2sq-ternary-sum"))
    assert r.hierarchy == "F^3_2 \\ F^3_1" and r.Y == (0, 1, 2, 3)
    assert r.group.exponent == 2 and r.s_hierarchy == "G^3_2 \\ G^3_3"
    r = classify(named_example("chain5-4ary"))
    assert r.hierarchy == "F^4_3 \\ F^4_1" and r.Y == (0, 1, 2)
    assert r.tail_quasitrivial and r.tail_neutral_count == 1 and r.annihilator_ok
    assert classify(named_example("diamond-join-ternary")).hierarchy == "F^3_3 \\ F^3_2"
    assert classify(named_example("z3-7ary")).hierarchy == "F^7_6 \\ F^7_1"


def test_classify_binary_and_non_associative():
    r = classify(make_cyclic(3))
    assert any("not applicable" in n for n in r.notes)
    bad = NaryOp.from_function(lambda x, y: (x - y) % 3, 3, 2)
    r = classify(bad)
    assert not r.associative and r.hierarchy == "not associative"
    assert r.to_text().splitlines() == ["arity: 2", "size: 3", "associative: no"]


def test_report_text_is_stable():
    text = classify(named_example("chain5-4ary")).to_text()
    assert "Y: 1 2 3\n" in text and "group.exponent: 3\n" in text
    assert "reduction.method: neutral-element\n" in text
    assert text == classify(named_example("chain5-4ary")).to_text()


def test_all_neutral_equivalence():
    r = check_all_neutral(named_example("z3-7ary"))
    assert r.applicable and r.all_neutral and r.group_extension
    r = check_all_neutral(named_example("chain5-4ary"))
    assert not r.all_neutral and not r.group_extension


def test_structure_subsets_unique():
    assert structure_subsets(named_example("chain5-4ary")) == [(0, 1, 2)]
    assert structure_subsets(extend_binary(make_quasitrivial("max-chain", 4), 3)) == []
