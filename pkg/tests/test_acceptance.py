"""Full-scale acceptance run: one shared suite execution, one test per criterion.

The suite takes a few minutes; each criterion prints its own pass/fail line.
Deselect with `-m "not acceptance"` for quick iteration.
"""

import sys

import pytest

from unionbench.acceptance import run_suite

pytestmark = pytest.mark.acceptance


@pytest.fixture(scope="module")
def suite():
    results = run_suite(quick=False, progress=sys.stderr)
    for res in results:
        print(res.line())
    return {res.index: res for res in results}


def _check(suite, index):
    res = suite[index]
    print(res.line())
    assert res.passed, res.detail


def test_criterion_1_construction_tightness(suite):
    _check(suite, 1)
    assert "(k=4,n=7):24/24" in suite[1].detail


def test_criterion_2_charge_certificates(suite):
    _check(suite, 2)
    assert "1000 families" in suite[2].detail
    assert "0 violations" in suite[2].detail


def test_criterion_3_common_point_bound(suite):
    _check(suite, 3)
    assert "500 families" in suite[3].detail
    assert "0 violations" in suite[3].detail


def test_criterion_4_union_complexity_bound(suite):
    _check(suite, 4)
    assert "0 violations" in suite[4].detail
    assert "6 == 6" in suite[4].detail


def test_criterion_5_edge_and_coloring_bounds(suite):
    _check(suite, 5)
    assert "500 families" in suite[5].detail


def test_criterion_6_sampling(suite):
    _check(suite, 6)
    assert "0 per-trial violations" in suite[6].detail


def test_criterion_7_oracle_equivalences(suite):
    _check(suite, 7)
    assert "0 mismatches" in suite[7].detail


def test_criterion_8_depth_ratio_report(suite):
    _check(suite, 8)
    assert "0 beyond 6e" in suite[8].detail


def test_stated_time_budgets(suite):
    # per-criterion budgets; generously met in practice
    assert suite[2].seconds < 300
    assert suite[3].seconds < 600
    assert suite[5].seconds < 900
    assert suite[6].seconds < 600
