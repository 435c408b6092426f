"""Acceptance criteria 1-10, each at its stated tolerance.

Every test records a PASS/FAIL line (see ``acceptance_log``); the lines are
printed together at the end of the pytest run.
"""

from __future__ import annotations

import math

import numpy as np

from acceptance_log import record
from golden_cases import check_case, load_cases
from nablafrac.bvp import (
    BvpSpec,
    check_nonexistence,
    eigen_bound,
    eigen_spectrum,
    lyapunov_bound,
    solve_greens,
    verify_solution,
)
from nablafrac.calculus import Domain, GridFunction, frac_diff, monomial
from nablafrac.checks import fde_residual, kernel_mode_errors, kernel_sweep, power_rule_error
from nablafrac.greens import closed_form_bounds, greens, kernel_stats
from nablafrac.mittag import MLParams, ml_eval, ml_frac_diff_deviation, zero_exclusion_scan
from nablafrac.special import gamma

KINDS = ("left", "right")


def rel(x: float, ref: float) -> float:
    return abs(x - ref) / abs(ref)


def test_criterion_01_closed_form_maxima():
    domain, alpha = Domain(0, 4), 1.5
    stated = {"left": (6.0, 14.0), "right": (1.875, 5.625)}
    parts, passed = [], True
    for kind in KINDS:
        stats = kernel_stats(greens(kind, domain, alpha))
        cf = closed_form_bounds(kind, domain, alpha)
        want_max, want_row = stated[kind]
        ok = all(
            rel(x, ref) <= 1e-10
            for x, ref in ((stats.max, want_max), (stats.rowsum_max, want_row), (cf.max, want_max), (cf.rowsum_max, want_row))
        )
        passed &= ok
        parts.append(
            f"{kind} scan max={stats.max:.10g} rowsum={stats.rowsum_max:.10g} "
            f"vs closed form {cf.max:.10g}/{cf.rowsum_max:.10g} ({'ok' if ok else 'mismatch'})"
        )
    record(1, "closed-form Green maxima", passed, "; ".join(parts))
    assert passed, parts


def test_criterion_02_sweep_agreement():
    parts, passed = [], True
    for kind in KINDS:
        w = kernel_sweep(kind)
        ok_pos = w["min_entry"] >= -1e-12
        ok_eq = w["max_rel_err"] <= 1e-10 and w["rowsum_rel_err"] <= 1e-10
        passed &= ok_pos and ok_eq
        parts.append(
            f"{kind} min={w['min_entry']:.3g} max rel err={w['max_rel_err']:.3g} "
            f"rowsum rel err={w['rowsum_rel_err']:.3g}"
        )
    record(2, "kernel sweep vs closed forms", passed, "; ".join(parts))
    assert passed, parts


def test_criterion_03_operator_equivalence():
    rng = np.random.default_rng(3)
    worst = 0.0
    for nu in (0.3, 1.5, 1.9):
        for _ in range(100):
            u = GridFunction(1, rng.standard_normal(32))
            c = frac_diff(u, nu, 0, "composition").values
            d = frac_diff(u, nu, 0, "direct").values
            worst = max(worst, float(np.max(np.abs(c - d)) / np.max(np.abs(d))))
    passed = worst <= 1e-9
    record(3, "composition vs direct difference", passed, f"worst relative error {worst:.3g} (limit 1e-9)")
    assert passed


def test_criterion_04_power_rules(oracles):
    alphas = (1.1, 1.25, 1.5, 1.75, 1.9)
    rule_err = max(power_rule_error(alpha) for alpha in alphas)
    modes = [kernel_mode_errors(alpha) for alpha in alphas]
    first = max(m["first_mode_max"] for m in modes)
    second = max(m["second_mode_max"] for m in modes)
    at_a2 = max(m["second_mode_at_a2_err"] for m in modes)
    # brute-force oracle: nabla^alpha of (t-a)^(alpha-2) at t = a+2 is -Gamma(alpha-1)
    oracle_err = max(
        abs(case["diff_direct"][1] + gamma(case["alpha"] - 1))
        for case in oracles["monomials"]
        if case["mu"] == "alpha-2" and case["nu"] == case["alpha"]
    )
    passed = rule_err <= 1e-9 and first <= 1e-10 and second <= 1e-10 and at_a2 <= 1e-10 and oracle_err <= 1e-10
    record(
        4,
        "power rules and kernel modes",
        passed,
        f"power rules {rule_err:.3g}; first mode {first:.3g}; second mode {second:.3g}; "
        f"a+2 value err {at_a2:.3g}; oracle err {oracle_err:.3g}",
    )
    assert passed


def test_criterion_05_bvp_round_trip():
    rng = np.random.default_rng(5)
    failures = total = 0
    worst_bc = 0.0
    worst_pred = 0.0
    for kind in KINDS:
        for alpha in (1.1, 1.5, 1.9):
            for span in (3, 8, 32):
                domain = Domain(0, span)
                kernel = greens(kind, domain, alpha)
                for _ in range(100):
                    spec = BvpSpec(kind, domain, alpha, GridFunction(2, rng.uniform(-1, 1, span - 1)))
                    u = solve_greens(spec, kernel)
                    report = verify_solution(spec, u, 1e-9)
                    exact_bc = u(span) == 0.0 if kind == "left" else u(1) == 0.0
                    failures += not (report.passed and exact_bc)
                    total += 1
                    worst_bc = max(worst_bc, *map(abs, report.bc_values.values()))
                    worst_pred = max(worst_pred, abs(report.residual_at_a2 - report.predicted_residual_at_a2))
    passed = failures == 0
    record(
        5,
        "BVP round trip",
        passed,
        f"{total - failures}/{total} pass; worst a+2 prediction gap {worst_pred:.3g}; worst BC {worst_bc:.3g}",
    )
    assert passed


def test_criterion_06_spectral_bounds(oracles):
    worst_ratio = math.inf
    for kind in KINDS:
        for alpha in (1.1, 1.5, 1.9):
            for span in range(3, 21):
                domain = Domain(0, span)
                spectrum = eigen_spectrum(kind, domain, alpha)
                bound = eigen_bound(kind, domain, alpha)
                worst_ratio = min(worst_ratio, min(abs(l) / bound for l in spectrum.eigenvalues))
    oracle_err = 0.0
    for case in oracles["eigen_small"]:
        if case["b"] != 3:
            continue
        got = np.array(eigen_spectrum(case["kind"], Domain(0, 3), case["alpha"]).eigenvalues)
        want = np.array([complex(re, im) for re, im in case["eigenvalues"]])
        assert len(got) == len(want)
        oracle_err = max(oracle_err, float(np.max(np.abs(got - want) / np.maximum(1.0, np.abs(want)))))
    passed = worst_ratio >= 1 - 1e-10 and oracle_err <= 1e-8
    record(
        6,
        "spectral lower bounds",
        passed,
        f"min |lambda|/eigen_bound = {worst_ratio:.6g}; b-a=3 oracle err {oracle_err:.3g}",
    )
    assert passed


def test_criterion_07_lyapunov():
    worst_ratio = math.inf
    pairs = 0
    eigvec_ok = nonexist_ok = True
    for kind in KINDS:
        for alpha in (1.1, 1.5, 1.9):
            for span in range(3, 21):
                domain = Domain(0, span)
                bound = lyapunov_bound(kind, domain, alpha)
                spectrum = eigen_spectrum(kind, domain, alpha)
                for lam, vec in spectrum.real_eigenpairs():
                    pairs += 1
                    worst_ratio = min(worst_ratio, (span - 1) * abs(lam) / bound)
                    # the eigenvector really solves the problem with potential lambda
                    spec = BvpSpec(kind, domain, alpha, GridFunction(2, lam * vec[1:]))
                    eigvec_ok &= verify_solution(spec, GridFunction(1, vec), 1e-8).passed
                q_small = GridFunction(2, np.full(span - 1, 0.9 * bound / (span - 1)))
                q_eig = GridFunction(2, np.full(span - 1, spectrum.min_abs_lambda))
                nonexist_ok &= check_nonexistence(BvpSpec(kind, domain, alpha, q_small)).guaranteed_no_nontrivial
                nonexist_ok &= not check_nonexistence(BvpSpec(kind, domain, alpha, q_eig)).guaranteed_no_nontrivial
    passed = worst_ratio >= 1 - 1e-10 and eigvec_ok and nonexist_ok
    record(
        7,
        "Lyapunov inequality",
        passed,
        f"{pairs} real eigenpairs, min (b-a-1)|lambda|/bound = {worst_ratio:.6g}; "
        f"eigenvectors verified: {eigvec_ok}; nonexistence checks: {nonexist_ok}",
    )
    assert passed


def test_criterion_08_mittag_leffler():
    geo = max(abs(ml_eval(MLParams(p, 1.5, 0.5), 1, 0) - 1 / (1 - p)) for p in (-0.9, -0.5, 0.5, 0.9))
    domain = Domain(0, 20)
    dev = max(ml_frac_diff_deviation(MLParams(p, 1.5, 0.5), 1.5, domain) for p in (0.5, -0.5))
    fde = max(fde_residual(c, 1.5, 0.5, domain, 2) for c in (0.5, -0.5))
    passed = geo <= 1e-12 and dev < 1e-8 and fde <= 1e-8
    record(
        8,
        "Mittag-Leffler identities",
        passed,
        f"geometric {geo:.3g}; deviation {dev:.3g}; FDE residual {fde:.3g}",
    )
    assert passed


def test_criterion_09_zero_exclusion():
    changes = 0
    worst_min = math.inf
    for kind in KINDS:
        for alpha in (1.25, 1.5, 1.75):
            for n in range(3, 11):
                report = zero_exclusion_scan(kind, alpha, n, 1001)
                changes += report.sign_changes
                worst_min = min(worst_min, report.min_abs_value)
    passed = changes == 0 and worst_min > 0
    record(9, "zero exclusion", passed, f"48 scans, sign changes {changes}, min |value| {worst_min:.6g}")
    assert passed


def test_criterion_10_cli_contract():
    failures = []
    cases = load_cases()
    for case in cases:
        ok, reason = check_case(case)
        if not ok:
            failures.append(f"{case['name']}: {reason}")
    subcommands = {c["args"][0] for c in cases if c["exit"] != 2}
    passed = not failures and len(subcommands) == 6
    record(
        10,
        "CLI golden files and exit codes",
        passed,
        f"{len(cases) - len(failures)}/{len(cases)} cases, subcommands covered {len(subcommands)}/6",
    )
    assert passed, failures
