import pytest

from polysemi.battery import (
    check_operation,
    clause_rejections,
    idempotent_ternary_containment,
    run_battery,
    violating_specs,
)
from polysemi.construct import NAMED_EXAMPLES, assemble, named_example
from polysemi.core import NaryOp
from polysemi.errors import TheoremViolation


@pytest.mark.parametrize("name", list(NAMED_EXAMPLES))
def test_fixtures_pass_every_check(name):
    ran = check_operation(named_example(name), subsets=named_example(name).size <= 5)
    assert "all-neutral-iff-group" in ran and "quasitrivial-reduction" in ran


def test_check_operation_skips_binary():
    assert check_operation(NaryOp([0, 1, 1, 0], 2, 2)) == []


def test_clause_rejections():
    ok, detail = clause_rejections()
    assert ok, detail
    assert {tag for _, tag in violating_specs()} == {"a", "b"}


def test_unchecked_bad_construction_is_caught_by_battery():
    # exponent 3 with n = 3: the assembled operation leaves F_2, so classify must not
    # report a group block; running the checks must not raise either
    spec, _ = violating_specs()[0]
    _, F = assemble(spec, check=False)
    check_operation(F)


def test_theorem_violation_is_raised_for_forged_report(monkeypatch):
    from polysemi import battery

    monkeypatch.setattr(battery, "is_quasitrivial", lambda F: False)
    with pytest.raises(TheoremViolation):
        check_operation(named_example("z2-ternary-sum"))


def test_idempotent_ternary_containment():
    ok, detail = idempotent_ternary_containment()
    assert ok and detail.startswith("51 idempotent ternary ops, 7 not binary extensions")


def test_full_battery():
    results = run_battery("full")
    assert [r.name for r in results if not r.passed] == []
    assert len(results) == 18
