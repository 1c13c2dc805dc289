"""Constant pipeline against the independently computed Simpson-grid values."""

import math

import pytest

from conftest import assert_close
from lfverify.contradiction import (
    ConstantTable,
    MissingConstantError,
    compute_b_matrix,
    compute_c1_c2,
    compute_c3,
    compute_c_matrix,
    compute_cancellation,
    compute_d_constants,
    compute_e_constants,
    compute_j1_bound,
    run_verification,
    short_window_checks,
)
from lfverify.kernels import default_model

CROSS_TOL = 1e-12  # adaptive quadrature vs frozen Simpson grid, both near machine precision


@pytest.fixture(scope="module")
def b_table():
    return compute_b_matrix()


@pytest.fixture(scope="module")
def c_table(b_table):
    return compute_c_matrix(b_table)


@pytest.fixture(scope="module")
def d_table():
    return compute_d_constants()


@pytest.fixture(scope="module")
def e_table():
    return compute_e_constants()


def test_b_matrix_matches_independent_grid(b_table, frozen_constants):
    for name in b_table.names():
        assert_close(b_table.value(name), frozen_constants[name], CROSS_TOL, name)
        assert b_table.error(name) < 1e-9


def test_b44_equals_b22(b_table):
    assert b_table.value("b44") == b_table.value("b22")


def test_c_matrix_matches_independent_grid(c_table, frozen_constants):
    for name in c_table.names():
        assert_close(c_table.value(name), frozen_constants[name], CROSS_TOL, name)


def test_c_matrix_hermitian_pairing(c_table):
    assert c_table.value("c21") == c_table.value("c12").conjugate()
    assert c_table.value("c43") == c_table.value("c34").conjugate()
    assert abs(c_table.value("c11").imag) == 0.0
    assert abs(c_table.value("c33").imag) == 0.0


def test_quadratic_forms_match_grid(c_table, frozen_constants):
    q1, q2 = compute_c1_c2(default_model(), c_table)
    assert_close(q1, frozen_constants["frak_c1"], 1e-10, "frak_c1")
    assert_close(q2, frozen_constants["frak_c2"], 1e-10, "frak_c2")
    # exact cancellation of conjugate pairs, not merely small
    assert q1.imag == 0.0
    assert q2.imag == 0.0


def test_d_constants_match_grid(d_table, frozen_constants):
    for name in d_table.names():
        assert_close(d_table.value(name), frozen_constants[name], CROSS_TOL, name)


def test_drift_inequalities(d_table):
    dp = d_table.value("frak_d_prime")
    dd = d_table.value("frak_d")
    assert dp.real > 5.1
    assert 0.0 < dd.real < 0.1
    assert (dp + dd).real > 5.0


def test_e_constants_match_grid(e_table, frozen_constants):
    for name in e_table.names():
        assert_close(e_table.value(name), frozen_constants[name], CROSS_TOL, name)


def test_c3_and_cancellation_match_grid(e_table, frozen_constants):
    c3 = compute_c3(e_table)
    cancel = compute_cancellation(e_table)
    assert_close(c3, frozen_constants["frak_c3"], 1e-9, "frak_c3")
    assert_close(cancel, frozen_constants["cancellation"], 1e-9, "cancellation")
    assert abs(cancel) < 1e-4


def test_chain_total_matches_grid(c_table, e_table, frozen_constants):
    q1, q2 = compute_c1_c2(default_model(), c_table)
    c3 = compute_c3(e_table)
    chain = q1.real + q2.real + 2.0 * c3.real
    assert abs(chain - frozen_constants["chain"].real) < 1e-9
    assert chain < 1e-3


def test_window_checks_match_grid(frozen_constants):
    w = short_window_checks()
    for j in (1, 2, 3):
        assert_close(
            w.value(f"window6_{j}"), frozen_constants[f"w6_{j}"], CROSS_TOL, f"w6_{j}"
        )
        assert_close(
            w.value(f"window7_{j}"), frozen_constants[f"w7_{j}"], CROSS_TOL, f"w7_{j}"
        )
        assert abs(w.value(f"window6_{j}") - (-0.002)) < 1e-4
        target7 = -0.004 - 1j * math.pi / 250.0**2
        assert abs(w.value(f"window7_{j}") - target7) < 1e-4


def test_j1_bound_matches_grid(frozen_constants):
    j1 = compute_j1_bound()
    assert abs(j1 - frozen_constants["j1_limit"].real) < 1e-9
    assert 0.0 < j1 < 4400.0 / math.pi


def test_constant_table_api(b_table):
    with pytest.raises(MissingConstantError):
        b_table.value("b99")
    with pytest.raises(MissingConstantError):
        b_table.error("b99")
    assert "b11" in b_table
    assert "b99" not in b_table
    merged = b_table.merged(ConstantTable({"extra": (1.0 + 0j, 0.0)}))
    assert "extra" in merged and "b11" in merged


def test_report_shape(report, records):
    assert len(report.records) == 27
    assert len(set(records)) == 27
    assert report.notes
    assert report.metadata["quadrature_tol"] == 1e-10


def test_exactly_one_record_fails(report):
    failed = report.failed_records()
    assert [r.name for r in failed] == ["c3_real"]
    assert not report.passed


def test_c3_shortfall_is_genuine(records, frozen_constants):
    # the computed value really does land above the claimed bound, and the
    # gap is far larger than any quadrature uncertainty in this pipeline
    rec = records["c3_real"]
    assert rec.claim_kind == "less_than"
    assert rec.claimed.real == -6.9951
    assert abs(rec.computed.real - frozen_constants["frak_c3"].real) < 1e-9
    assert 4.0e-3 < rec.computed.real - rec.claimed.real < 4.4e-3


def test_record_kinds_cover_all_comparisons(records):
    kinds = {r.claim_kind for r in records.values()}
    assert kinds == {"equals", "less_than", "greater_than", "abs_less_than"}


def test_report_tolerance_propagates():
    rep = run_verification(tol=1e-8)
    assert rep.metadata["quadrature_tol"] == 1e-8
    assert [r.name for r in rep.failed_records()] == ["c3_real"]
