"""Deterministic invariant sweep behind ``nablafrac verify``.

Every check returns a plain dict ``{name, passed, detail}``; the sweep runs
in a fixed order with a fixed seed, so two runs give identical reports.
"""

from __future__ import annotations

import math
from typing import Callable, Iterable

import numpy as np

from .bvp import BvpSpec, check_nonexistence, eigen_bound, eigen_spectrum, lyapunov_bound
from .bvp import solve_greens, verify_solution
from .calculus import Domain, GridFunction, frac_diff, frac_sum, monomial, power_rule
from .greens import KINDS, Kind, closed_form_bounds, greens, kernel_stats
from .mittag import MLParams, ml_eval, ml_frac_diff_deviation, ml_grid, zero_exclusion_scan
from .special import gamma, rising

SEED = 20240611

SWEEP_ALPHAS = (1.05, 1.25, 1.5, 1.75, 1.95)
SWEEP_SPANS = range(2, 41)
BVP_ALPHAS = (1.1, 1.5, 1.9)
BVP_SPANS = (3, 8, 32)
SPECTRAL_SPANS = range(3, 21)
SCAN_ALPHAS = (1.25, 1.5, 1.75)
SCAN_NS = range(3, 11)

Check = dict


def _check(name: str, passed: bool, **detail) -> Check:
    return {"name": name, "passed": bool(passed), "detail": detail}


def _rel(x: float, ref: float) -> float:
    return abs(x - ref) / max(abs(ref), 1e-300)


# special


def check_gamma_reference() -> Check:
    root_pi = math.sqrt(math.pi)
    table = {0.5: root_pi, -0.5: -2 * root_pi, -1.5: 4 * root_pi / 3, 6.0: 120.0, 1.5: root_pi / 2}
    worst = max(_rel(gamma(x), ref) for x, ref in table.items())
    return _check("special.gamma_reference", worst < 1e-13, worst_rel_err=worst)


def check_rising_product(rng: np.random.Generator) -> Check:
    worst = 0.0
    for _ in range(200):
        t, r, s = rng.uniform(0.5, 10.0), rng.uniform(0.1, 3.0), rng.uniform(0.1, 3.0)
        worst = max(worst, _rel(rising(t, r) * rising(t + r, s), rising(t, r + s)))
    return _check("special.rising_product_rule", worst < 1e-12, worst_rel_err=worst)


# calculus


def check_operator_equivalence(rng: np.random.Generator, count: int = 20) -> Check:
    worst = 0.0
    for nu in (0.3, 1.5, 1.9):
        for _ in range(count):
            u = GridFunction(1, rng.standard_normal(32))
            c = frac_diff(u, nu, 0, method="composition").values
            d = frac_diff(u, nu, 0, method="direct").values
            worst = max(worst, float(np.max(np.abs(c - d)) / np.max(np.abs(d))))
    return _check("calculus.operator_equivalence", worst < 1e-9, worst_rel_err=worst)


def power_rule_error(alpha: float, a: int = 0, b: int = 20) -> float:
    """Worst error of sums and differences of monomials against their closed forms on ``a+2..b``."""
    worst = 0.0
    for mu in (0.0, alpha - 2, alpha - 1, 1.0):
        u = monomial(mu, a, b)
        for nu in (0.5, alpha):
            for mode, op in (("sum", frac_sum), ("diff", frac_diff)):
                got = op(u, nu, a).restrict(a + 2)
                want = [power_rule(mu, nu, a, mode, t) for t in got.points()]
                worst = max(worst, float(np.max(np.abs(got.values - want))))
    return worst


def kernel_mode_errors(alpha: float, a: int = 0, b: int = 20) -> dict[str, float]:
    first = frac_diff(monomial(alpha - 1, a, b), alpha, a, method="direct")
    second = frac_diff(monomial(alpha - 2, a, b), alpha, a, method="direct")
    return {
        "first_mode_max": float(np.max(np.abs(first.restrict(a + 2).values))),
        "second_mode_max": float(np.max(np.abs(second.restrict(a + 3).values))),
        "second_mode_at_a2_err": abs(second(a + 2) + gamma(alpha - 1)),
    }


def check_power_rules() -> Check:
    worst = max(power_rule_error(alpha) for alpha in SCAN_ALPHAS)
    return _check("calculus.power_rules", worst < 1e-9, worst_abs_err=worst)


def check_kernel_modes() -> Check:
    worst = {"first_mode_max": 0.0, "second_mode_max": 0.0, "second_mode_at_a2_err": 0.0}
    for alpha in SCAN_ALPHAS:
        for key, value in kernel_mode_errors(alpha).items():
            worst[key] = max(worst[key], value)
    return _check("calculus.kernel_modes", max(worst.values()) < 1e-10, **worst)


# mittag


def fde_residual(c: float, nu: float, beta: float, domain: Domain, start: int) -> float:
    """``max |nabla^nu u + c u|`` on ``start..b`` for ``u = E_{-c,nu,beta}``."""
    a = domain.a
    u = ml_grid(MLParams(-c, nu, beta), domain).restrict(a + 1)
    lhs = frac_diff(u, nu, a, method="direct").values + c * u.values
    return float(np.max(np.abs(lhs[start - a - 1 :])))


def check_ml_geometric() -> Check:
    worst = max(
        abs(ml_eval(MLParams(p, 1.5, 0.3), 1, 0) - 1 / (1 - p)) for p in (-0.9, -0.5, 0.0, 0.5, 0.9)
    )
    return _check("mittag.geometric_identity", worst < 1e-12, worst_abs_err=worst)


def check_ml_deviation() -> Check:
    domain = Domain(0, 20)
    devs = [ml_frac_diff_deviation(MLParams(p, 1.5, 0.5), 1.5, domain) for p in (0.5, -0.5)]
    return _check("mittag.frac_diff_identity", max(devs) < 1e-8, worst_deviation=max(devs))


def check_ml_fde() -> Check:
    domain = Domain(0, 20)
    nu = 1.5
    first = max(fde_residual(c, nu, nu - 1, domain, 2) for c in (0.5, -0.5))
    second = max(fde_residual(c, nu, nu - 2, domain, 3) for c in (0.5, -0.5))
    return _check(
        "mittag.fde_solutions",
        first < 1e-8 and second < 1e-8,
        first_mode_residual=first,
        second_mode_residual=second,
    )


# greens


def kernel_sweep(kind: Kind) -> dict[str, float]:
    worst = {"min_entry": math.inf, "max_rel_err": 0.0, "rowsum_rel_err": 0.0, "dominance_gap": -math.inf}
    for alpha in SWEEP_ALPHAS:
        for span in SWEEP_SPANS:
            domain = Domain(0, span)
            stats = kernel_stats(greens(kind, domain, alpha))
            cf = closed_form_bounds(kind, domain, alpha)
            worst["min_entry"] = min(worst["min_entry"], stats.min)
            worst["max_rel_err"] = max(worst["max_rel_err"], _rel(stats.max, cf.max))
            worst["rowsum_rel_err"] = max(worst["rowsum_rel_err"], _rel(stats.rowsum_max, cf.rowsum_max))
            gap = max(stats.max - cf.max, stats.rowsum_max - cf.rowsum_max) / max(cf.max, 1.0)
            worst["dominance_gap"] = max(worst["dominance_gap"], gap)
    return worst


def check_kernels(kind: Kind) -> list[Check]:
    w = kernel_sweep(kind)
    return [
        _check(f"greens.{kind}.positivity", w["min_entry"] >= -1e-12, min_entry=w["min_entry"]),
        _check(f"greens.{kind}.max_closed_form", w["max_rel_err"] <= 1e-10, worst_rel_err=w["max_rel_err"]),
        _check(
            f"greens.{kind}.rowsum_closed_form",
            w["rowsum_rel_err"] <= 1e-10,
            worst_rel_err=w["rowsum_rel_err"],
        ),
        _check(
            f"greens.{kind}.closed_form_dominates",
            w["dominance_gap"] <= 1e-12,
            worst_gap=w["dominance_gap"],
        ),
    ]


# bvp


def round_trip(kind: Kind, rng: np.random.Generator, count: int, tol: float) -> tuple[int, int]:
    """``(failures, total)`` over random forcings on every cell."""
    failures = total = 0
    for alpha in BVP_ALPHAS:
        for span in BVP_SPANS:
            domain = Domain(0, span)
            kernel = greens(kind, domain, alpha)
            for _ in range(count):
                h = GridFunction(2, rng.uniform(-1.0, 1.0, span - 1))
                spec = BvpSpec(kind, domain, alpha, h)
                report = verify_solution(spec, solve_greens(spec, kernel), tol)
                failures += not report.passed
                total += 1
    return failures, total


def spectral_sweep(kind: Kind) -> dict[str, float]:
    """Worst ratio ``|lambda| / eigen_bound`` and ``(b-a-1)|lambda| / lyapunov_bound``."""
    eig_ratio = lyap_ratio = math.inf
    for alpha in BVP_ALPHAS:
        for span in SPECTRAL_SPANS:
            domain = Domain(0, span)
            spectrum = eigen_spectrum(kind, domain, alpha)
            if not spectrum.eigenvalues:
                continue
            eig_ratio = min(eig_ratio, spectrum.min_abs_lambda / eigen_bound(kind, domain, alpha))
            for lam, _ in spectrum.real_eigenpairs():
                total = (span - 1) * abs(lam)
                lyap_ratio = min(lyap_ratio, total / lyapunov_bound(kind, domain, alpha))
    return {"min_eigen_ratio": eig_ratio, "min_lyapunov_ratio": lyap_ratio}


def check_bvp(kind: Kind, rng: np.random.Generator, count: int, tol: float) -> list[Check]:
    failures, total = round_trip(kind, rng, count, tol)
    sweep = spectral_sweep(kind)
    nonexist_ok = True
    for alpha in BVP_ALPHAS:
        for span in SPECTRAL_SPANS:
            domain = Domain(0, span)
            bound = lyapunov_bound(kind, domain, alpha)
            small = np.full(span - 1, 0.9 * bound / (span - 1))
            lam_min = eigen_spectrum(kind, domain, alpha).min_abs_lambda
            below = check_nonexistence(BvpSpec(kind, domain, alpha, GridFunction(2, small)))
            above = check_nonexistence(BvpSpec(kind, domain, alpha, GridFunction(2, np.full(span - 1, lam_min))))
            nonexist_ok &= below.guaranteed_no_nontrivial and not above.guaranteed_no_nontrivial
    return [
        _check(f"bvp.{kind}.round_trip", failures == 0, failures=failures, cases=total),
        _check(
            f"bvp.{kind}.spectral_lower_bound",
            sweep["min_eigen_ratio"] >= 1 - 1e-10,
            min_ratio=sweep["min_eigen_ratio"],
        ),
        _check(
            f"bvp.{kind}.lyapunov_inequality",
            sweep["min_lyapunov_ratio"] >= 1 - 1e-10,
            min_ratio=sweep["min_lyapunov_ratio"],
        ),
        _check(f"bvp.{kind}.nonexistence", nonexist_ok),
    ]


def check_scans(kind: Kind, samples: int) -> Check:
    worst_min = math.inf
    changes = 0
    for alpha in SCAN_ALPHAS:
        for n in SCAN_NS:
            report = zero_exclusion_scan(kind, alpha, n, samples)
            worst_min = min(worst_min, report.min_abs_value)
            changes += report.sign_changes
    return _check(
        f"mittag.{kind}.zero_exclusion",
        changes == 0 and worst_min > 0,
        sign_changes=changes,
        min_abs_value=worst_min,
    )


def run_checks(
    kinds: Iterable[Kind] = KINDS,
    samples: int = 1001,
    tol: float = 1e-9,
    forcings: int = 10,
    seed: int = SEED,
) -> list[Check]:
    rng = np.random.default_rng(seed)
    kinds = tuple(kinds)
    steps: list[Callable[[], Check | list[Check]]] = [
        check_gamma_reference,
        lambda: check_rising_product(rng),
        lambda: check_operator_equivalence(rng),
        check_power_rules,
        check_kernel_modes,
        check_ml_geometric,
        check_ml_deviation,
        check_ml_fde,
    ]
    for kind in kinds:
        steps.append(lambda kind=kind: check_kernels(kind))
        steps.append(lambda kind=kind: check_bvp(kind, rng, forcings, tol))
        steps.append(lambda kind=kind: check_scans(kind, samples))
    out: list[Check] = []
    for step in steps:
        result = step()
        out.extend(result if isinstance(result, list) else [result])
    return out
