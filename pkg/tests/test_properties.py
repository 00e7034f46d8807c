"""Seeded property runs at full size."""
import time

import pytest

from verification.suites import run_suite


@pytest.mark.slow
def test_kgm_dominates_kme_on_a_thousand_states():
    start = time.perf_counter()
    report = run_suite("thm2", n=4, samples=1000, seed=2024)
    assert report.passed, report.to_record()
    assert {p.name for p in report.properties.values()} == {f"kgm >= kme (k={k})" for k in (2, 3, 4)}
    assert all(p.worst_slack >= -1e-10 for p in report.properties.values())
    assert time.perf_counter() - start < 300


@pytest.mark.slow
def test_sqrt2_qkme_relation_on_a_thousand_states():
    report = run_suite("thm5", n=4, samples=1000, seed=2024)
    assert report.passed, report.to_record()
    assert len(report.properties) == 6


def test_local_unitary_invariance():
    report = run_suite("lu", n=4, samples=100, seed=7)
    assert report.passed, report.to_record()
    assert all(p.worst_slack >= -1e-9 for p in report.properties.values())


def test_permutation_invariance():
    report = run_suite("perm", n=4, samples=100, seed=7)
    assert report.passed, report.to_record()


def test_k_separable_states_give_zero():
    report = run_suite("sep-zero", n=4, samples=100, seed=7)
    assert report.passed, report.to_record()
    # three k values times five families
    assert len(report.properties) == 15


def test_k_equal_n_collapses_gm_onto_me():
    report = run_suite("n-degeneracy", n=4, samples=100, seed=7)
    assert report.passed, report.to_record()


@pytest.mark.slow
def test_pi_sandwich_on_fifty_states():
    start = time.perf_counter()
    report = run_suite("pi-sandwich", n=3, samples=50, seed=7)
    assert report.passed, report.to_record()
    assert time.perf_counter() - start < 120
