from __future__ import annotations

import pytest

from clusterdiam.verify import run_verification

# The full verification pass is expensive (a couple of minutes); run it once
# and let the ten tests below each report their criterion's line.


@pytest.fixture(scope="module")
def report():
    return run_verification("full")


def _check(report, index: int):
    res = report.results[index]
    print(res.line)
    assert res.passed, res.line


def test_criterion_01_baseline_exactness(report):
    _check(report, 0)


def test_criterion_02_conservative_estimates(report):
    _check(report, 1)


def test_criterion_03_approximation_quality(report):
    _check(report, 2)


def test_criterion_04_round_and_work_advantage(report):
    _check(report, 3)


def test_criterion_05_delta_growth_bound(report):
    _check(report, 4)


def test_criterion_06_cluster_count_envelopes(report):
    _check(report, 5)


def test_criterion_07_initial_delta_contrast(report):
    _check(report, 6)


def test_criterion_08_safety_invariants(report):
    _check(report, 7)


def test_criterion_09_record_determinism(report):
    _check(report, 8)


def test_criterion_10_generator_fidelity(report):
    _check(report, 9)
