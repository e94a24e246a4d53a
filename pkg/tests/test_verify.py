"""Suite-runner tests: suite selection, seeded reproducibility, and the
scope of the perturbation knob."""

import pytest

from curvedkepler import (
    H3,
    ParameterError,
    S3,
    SUITES,
    all_passed,
    run_suite,
    run_suites,
)


def test_all_suites_run_and_pass():
    results = run_suites("all", S3, 2.0, 2, seed=7)
    assert all_passed(results)
    assert {r.suite for r in results} == set(SUITES)


def test_string_and_list_selection_agree():
    a = run_suites("ode", S3, 2.0, 2, seed=7)
    b = run_suites(["ode"], S3, 2.0, 2, seed=7)
    assert [r.label for r in a] == [r.label for r in b]
    assert [r.report.max_abs for r in a] == [r.report.max_abs for r in b]


def test_unknown_suite_rejected():
    with pytest.raises(ParameterError):
        run_suite("bogus", S3, 2.0, 2, seed=7)


def test_seed_reproducibility():
    a = run_suite("hamiltonian", H3, 5.0, 2, seed=11)
    b = run_suite("hamiltonian", H3, 5.0, 2, seed=11)
    assert [r.report.max_abs for r in a] == [r.report.max_abs for r in b]
    c = run_suite("hamiltonian", H3, 5.0, 2, seed=12)
    assert [r.report.max_abs for r in a] != [r.report.max_abs for r in c]
    assert all_passed(c)


def test_perturbation_only_affects_residual_suites():
    clean = run_suites(["ode", "boperator"], S3, 2.0, 2, seed=7)
    dirty = run_suites(["ode", "boperator"], S3, 2.0, 2, seed=7, perturb_eps=1e-3)
    ode_clean = [r for r in clean if r.suite == "ode"]
    ode_dirty = [r for r in dirty if r.suite == "ode"]
    assert all(r.report.passed for r in ode_clean)
    assert any(not r.report.passed for r in ode_dirty)
    b_clean = [r.report.max_abs for r in clean if r.suite == "boperator"]
    b_dirty = [r.report.max_abs for r in dirty if r.suite == "boperator"]
    assert b_clean == b_dirty  # eigen-relation suites ignore the knob


def test_result_serialization_shape():
    res = run_suite("constraint", S3, 2.0, 1, seed=7)
    for r in res:
        d = r.to_json_dict()
        assert set(d) == {
            "label", "max_abs", "max_rel", "mean_rel", "n_points",
            "note", "passed", "suite", "tolerance", "worst_point",
        }
        assert d["suite"] == "constraint"
