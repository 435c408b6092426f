from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from nablafrac.bvp import eigen_spectrum
from nablafrac.calculus import Domain
from nablafrac.errors import InvalidOrder, InvalidParams
from nablafrac.mittag import (
    MLParams,
    characteristic_left,
    characteristic_right,
    exclusion_radius,
    ml_eval,
    ml_frac_diff_deviation,
    ml_grid,
    scan_points,
    zero_exclusion_scan,
)
from nablafrac.special import gamma, rising


def test_params_validation():
    with pytest.raises(InvalidParams):
        MLParams(1.0, 1.5, 0.0)
    with pytest.raises(InvalidParams):
        MLParams(0.5, 0.0, 0.0)
    with pytest.raises(InvalidParams):
        characteristic_left(1.0, 1.5, 4)


def test_series_against_oracle(oracles):
    for row in oracles["mittag_leffler"]:
        got = ml_eval(MLParams(row["p"], row["alpha"], row["beta"]), row["m"], 0)
        assert got == pytest.approx(row["value"], rel=1e-12, abs=1e-13), row


def test_examples():
    assert ml_eval(MLParams(0.0, 1.5, 0.0), 7, 0) == 1.0
    assert ml_eval(MLParams(0.7, 1.5, 0.0), 3, 3) == 1.0
    assert ml_eval(MLParams(0.5, 1.5, 0.3), 1, 0) == pytest.approx(2.0, abs=1e-14)
    assert ml_eval(MLParams(0.0, 1.5, -0.5), 4, 0) == pytest.approx(0.3125, rel=1e-14)
    assert np.all(ml_grid(MLParams(0.0, 1.3, 0.0), Domain(0, 5)).values == 1.0)
    assert ml_grid(MLParams(0.5, 1.5, 0.0), Domain(0, 5))(1) == pytest.approx(2.0)


@pytest.mark.parametrize("p", [-0.9, -0.5, 0.0, 0.5, 0.9])
def test_geometric_identity(p):
    assert ml_eval(MLParams(p, 1.5, 0.5), 1, 0) == pytest.approx(1 / (1 - p), abs=1e-12)


@settings(max_examples=80, deadline=None)
@given(
    p=st.floats(-0.95, 0.95),
    alpha=st.floats(0.3, 2.0),
    beta=st.floats(-1.0, 1.5),
    m=st.integers(1, 25),
    tol=st.sampled_from([1e-8, 1e-11, 1e-14]),
)
def test_truncation_certificate(p, alpha, beta, m, tol):
    params = MLParams(p, alpha, beta)
    coarse, fine = ml_eval(params, m, 0, tol), ml_eval(params, m, 0, tol / 10)
    # truncation part of the contract; rounding enters relative to the value
    assert abs(coarse - fine) < tol + 1e-14 * max(1.0, abs(fine))


def test_deviation():
    domain = Domain(0, 20)
    assert ml_frac_diff_deviation(MLParams(0.0, 1.5, 0.5), 1.5, domain) < 1e-9
    for p in (0.5, -0.5):
        assert ml_frac_diff_deviation(MLParams(p, 1.5, 0.5), 1.5, domain) < 1e-8
    assert ml_frac_diff_deviation(MLParams(0.3, 0.6, 0.2), 0.6, Domain(0, 12)) < 1e-10
    with pytest.raises(InvalidOrder):
        ml_frac_diff_deviation(MLParams(0.3, 1.5, 0.5), 1.0, domain)


@pytest.mark.parametrize("c", [0.5, -0.5, 0.9])
@pytest.mark.parametrize("nu", [1.25, 1.5, 1.75])
def test_fde_solutions(c, nu):
    from nablafrac.checks import fde_residual

    domain = Domain(0, 20)
    for beta, start in ((nu - 1, 2), (nu - 2, 3)):
        # growing solutions reach ~4e9 at t = 20, so scale by their size
        scale = max(1.0, float(np.max(np.abs(ml_grid(MLParams(-c, nu, beta), domain).values))))
        assert fde_residual(c, nu, beta, domain, start) < 1e-13 * scale


@pytest.mark.parametrize("lam", [-0.6, 0.0, 0.3])
def test_right_eigenfunction_vanishes_at_first_point(lam):
    # E_{-lam,alpha,alpha-1} - E_{-lam,alpha,alpha-2} is zero at t = a + 1
    first = ml_eval(MLParams(-lam, 1.5, 0.5), 1, 0)
    second = ml_eval(MLParams(-lam, 1.5, -0.5), 1, 0)
    assert first - second == pytest.approx(0.0, abs=1e-14)


def test_characteristic_examples():
    assert characteristic_left(0.0, 1.5, 4) == pytest.approx(0.3125, rel=1e-14)
    assert characteristic_right(0.0, 1.5, 4) == 1.0
    assert characteristic_right(0.3, 1.5, 0) == 1.0


def test_characteristic_against_oracle(oracles):
    table = {"left": characteristic_left, "right": characteristic_right}
    for row in oracles["characteristic"]["values"]:
        got = table[row["kind"]](row["lam"], row["alpha"], row["n"])
        assert got == pytest.approx(row["value"], rel=1e-12, abs=1e-13), row


@pytest.mark.parametrize("alpha", [1.05, 1.5, 1.95])
def test_characteristic_positive_at_zero(alpha):
    for n in range(3, 41):
        expected = rising(n, alpha - 2) / gamma(alpha - 1)
        assert characteristic_left(0.0, alpha, n) == pytest.approx(expected, rel=1e-12)
        assert characteristic_left(0.0, alpha, n) > 0
        assert characteristic_right(0.0, alpha, n) > 0


def test_characteristic_continuity():
    for delta in (1e-3, 1e-6, 1e-9):
        diff = abs(characteristic_left(0.2 + delta, 1.5, 6) - characteristic_left(0.2, 1.5, 6))
        assert diff < 100 * delta


def test_zeros_match_oracle(oracles):
    table = {"left": characteristic_left, "right": characteristic_right}
    for row in oracles["characteristic"]["zeros"]:
        for z in row["zeros"]:
            f = table[row["kind"]]
            assert abs(f(z, row["alpha"], row["n"])) < 1e-12


def test_zeros_are_green_eigenvalues(oracles):
    """Real zeros inside (-0.9, 0.9) coincide with eigenvalues of the Green operator."""
    for row in oracles["characteristic"]["zeros"]:
        spectrum = eigen_spectrum(row["kind"], Domain(0, row["n"]), row["alpha"])
        inside = sorted(l.real for l in spectrum.eigenvalues if abs(l.imag) < 1e-12 and abs(l.real) < 0.9)
        assert np.allclose(inside, sorted(row["zeros"]), rtol=1e-10, atol=1e-12), row


def test_exclusion_radius():
    assert exclusion_radius("left", 1.5, 4) == pytest.approx(0.5 / 9)
    assert exclusion_radius("right", 1.5, 4) == pytest.approx(gamma(1.5) / (3 * rising(3, 0.5)))
    with pytest.raises(ValueError):
        exclusion_radius("up", 1.5, 4)


def test_scan_points():
    pts = scan_points(0.2, 5)
    assert len(pts) == 5 and pts[2] == 0.0
    assert np.all(np.abs(pts) < 0.2)
    assert np.array_equal(pts, -pts[::-1])


@pytest.mark.parametrize("kind", ["left", "right"])
def test_scan_examples(kind):
    report = zero_exclusion_scan(kind, 1.5, 4, 101)
    assert report.sign_changes == 0 and report.passed
    tiny = zero_exclusion_scan(kind, 1.5, 4, 3)
    assert tiny.samples == 3 and tiny.min_abs_value > 0


def test_scan_clamps_large_radius():
    report = zero_exclusion_scan("left", 1.99, 2, 11)
    assert report.radius > 0.98
    assert not report.clamped
    report = zero_exclusion_scan("right", 1.9, 2, 11)
    assert report.clamped == (report.radius > 0.999)
    assert math.isfinite(report.min_abs_value)
