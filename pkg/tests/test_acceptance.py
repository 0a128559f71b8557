"""
验收套件测试
"""

import pytest

from src.core.acceptance import (
    CRITERIA,
    FULL,
    QUICK,
    CriterionOutcome,
    SuiteResult,
    run_criterion,
    run_suite,
    scale_by_name,
    summary_counts,
)
from src.core.exceptions import N2VermaError, VerificationError


def test_criteria_are_numbered_in_order():
    assert [number for number, _, _ in CRITERIA] == list(range(1, 12))


def test_scale_lookup():
    assert scale_by_name("quick") is QUICK
    assert scale_by_name("full") is FULL
    with pytest.raises(N2VermaError):
        scale_by_name("huge")


@pytest.mark.parametrize("number", [1, 2, 3, 11])
def test_fast_criteria_pass_at_quick_scale(number):
    outcome = run_criterion(number, QUICK, 20240127)
    assert outcome.passed, outcome.detail
    assert outcome.checks > 0


def test_same_seed_gives_same_detail():
    """同一种子的结果可复现"""
    first = run_criterion(2, QUICK, 7)
    second = run_criterion(2, QUICK, 7)
    assert (first.checks, first.detail) == (second.checks, second.detail)


def test_run_suite_with_selection():
    result = run_suite(QUICK, 20240127, only=[3, 11])
    assert [o.number for o in result.outcomes] == [3, 11]
    assert result.passed
    assert summary_counts(result) == {"passed": 2, "failed": 0}


@pytest.mark.slow
def test_quick_suite_passes():
    result = run_suite(QUICK)
    assert result.passed, [(o.number, o.detail) for o in result.outcomes if not o.passed]


@pytest.mark.slow
def test_full_suite_passes():
    result = run_suite(FULL)
    assert result.passed, [(o.number, o.detail) for o in result.outcomes if not o.passed]


def test_raise_for_failures_names_first_failure():
    result = SuiteResult("quick", 1)
    result.outcomes.append(CriterionOutcome(1, "ok", True, checks=3))
    result.raise_for_failures()
    result.outcomes.append(CriterionOutcome(5, "broken", False, detail="kernel 0"))
    with pytest.raises(VerificationError) as info:
        result.raise_for_failures()
    assert info.value.witness == "5. broken: kernel 0"


@pytest.mark.slow
def test_correspondence_includes_uncharged_and_off_locus_checks():
    """无荷 massive/relaxed 对应与离开轨迹的反例都计入检验"""
    outcome = run_criterion(7, QUICK, 20240127)
    assert outcome.passed, outcome.detail
    assert "uncharged" not in outcome.detail
