"""Regenerate tests/data/oracles.json with 40-digit mpmath reference values.

Nothing here imports nablafrac: every value comes from brute-force sums,
dense linear solves or plain series in arbitrary precision.

    python3 scripts/make_oracles.py
"""

from __future__ import annotations

import json
from pathlib import Path

import mpmath as mp

mp.mp.dps = 40

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "oracles.json"


def f(x) -> float:
    return float(mp.re(x))


def rising_over_gamma(m: int, r):
    """``m^(r) / Gamma(r + 1) = Gamma(m + r) / (Gamma(m) Gamma(r + 1))`` for integer ``m >= 0``."""
    r = mp.mpf(r)
    if m == 0:
        return mp.mpf(1) if r == 0 else mp.mpf(0)
    # finite product form, valid through the poles of Gamma(r + 1)
    return mp.fprod((r + j) / j for j in range(1, m)) if m > 1 else mp.mpf(1)


def gamma_table() -> list[dict]:
    xs = [0.1, 0.25, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.3, 4.0, 5.5, 7.25, 10.0, 12.7, 15.5, 20.0, 25.1, 30.0]
    xs += [-0.5, -1.5, -2.5, -0.1, -0.9, -3.7, -7.25, -10.5, -15.3]
    out = []
    for x in xs:
        g = mp.gamma(mp.mpf(x))
        out.append({"x": x, "gamma": f(g), "log_abs": f(mp.log(abs(g))), "sign": 1 if g > 0 else -1})
    return out


def rising_table() -> list[dict]:
    pairs = [(4.0, 0.5), (4.0, -0.5), (0.5, 2.5), (1.0, 0.3), (10.0, 1.7), (3.0, -2.5), (7.5, -0.25)]
    return [{"t": t, "r": r, "value": f(mp.gamma(t + r) / mp.gamma(t))} for t, r in pairs]


def direct_weights(nu, n: int) -> list:
    """``(m + 1)^(-nu-1) / Gamma(-nu)`` for ``m = 0 .. n-1``, straight from the gamma quotient."""
    return [mp.gamma(m - nu) / (mp.gamma(m + 1) * mp.gamma(-nu)) for m in range(n)]


def frac_sum_bf(values: list, nu) -> list:
    """Order-``nu`` sum based at 0 of ``values`` on 1..n."""
    n = len(values)
    out = []
    for t in range(1, n + 1):
        acc = mp.mpf(0)
        for s in range(1, t + 1):
            acc += mp.gamma(t - s + nu) / (mp.gamma(t - s + 1) * mp.gamma(nu)) * values[s - 1]
        out.append(acc)
    return out


def frac_diff_composition_bf(values: list, nu) -> list:
    """``nabla^N`` of the order-``N - nu`` sum, with zeros at and below the base."""
    N = int(mp.ceil(nu))
    inner = frac_sum_bf(values, N - nu)
    padded = [mp.mpf(0)] * N + inner
    for _ in range(N):
        padded = [padded[i] - padded[i - 1] for i in range(1, len(padded))]
    return padded


def frac_diff_direct_bf(values: list, nu) -> list:
    w = direct_weights(nu, len(values))
    return [mp.fsum(w[t - s] * values[s] for s in range(t + 1)) for t in range(len(values))]


def monomial_cases() -> list[dict]:
    """Brute-force sums and differences of ``(t - a)^(mu)`` on 1..12, a = 0."""
    out = []
    n = 12
    for alpha in (1.25, 1.5, 1.75):
        al = mp.mpf(alpha)
        for mu_name, mu in (("0", mp.mpf(0)), ("alpha-2", al - 2), ("alpha-1", al - 1), ("1", mp.mpf(1))):
            u = [mp.gamma(t + mu) / mp.gamma(t) for t in range(1, n + 1)]
            for nu in (mp.mpf(0.5), al):
                out.append(
                    {
                        "alpha": alpha,
                        "mu": mu_name,
                        "nu": f(nu),
                        "sum": [f(x) for x in frac_sum_bf(u, nu)],
                        "diff_composition": [f(x) for x in frac_diff_composition_bf(u, nu)],
                        "diff_direct": [f(x) for x in frac_diff_direct_bf(u, nu)],
                    }
                )
    return out


def green_by_linear_solve(kind: str, span: int, alpha: float) -> list[list[float]]:
    """Columns are solutions of the focal problem for unit forcings.

    Unknowns ``u(1..span)``; rows: the equation at ``3..span`` plus the two
    boundary conditions (left: ``u(span) = 0`` and
    ``nabla^(alpha-1) u(2) = -h(2)``; right: ``u(1) = 0`` and
    ``nabla^(alpha-1) u(span) = 0``).
    """
    al = mp.mpf(alpha)
    w = direct_weights(al, span)
    v = direct_weights(al - 1, span)
    cols = []
    for s in range(2, span + 1):
        h = [mp.mpf(1) if t == s else mp.mpf(0) for t in range(1, span + 1)]
        A = mp.zeros(span, span)
        rhs = mp.zeros(span, 1)
        row = 0
        for t in range(3, span + 1):
            for j in range(1, t + 1):
                A[row, j - 1] = w[t - j]
            rhs[row] = -h[t - 1]
            row += 1
        if kind == "left":
            A[row, span - 1] = 1
            row += 1
            A[row, 0], A[row, 1] = v[1], v[0]
            rhs[row] = -h[1]
        else:
            A[row, 0] = 1
            row += 1
            for j in range(1, span + 1):
                A[row, j - 1] = v[span - j]
        cols.append(mp.lu_solve(A, rhs))
    return [[f(cols[j][i]) for j in range(span - 1)] for i in range(span)]


def kernels() -> list[dict]:
    out = []
    for kind in ("left", "right"):
        for span in (3, 4, 7, 10):
            for alpha in (1.25, 1.5, 1.75):
                out.append({"kind": kind, "a": 0, "b": span, "alpha": alpha, "entries": green_by_linear_solve(kind, span, alpha)})
    return out


def charpoly(B) -> list:
    """Coefficients of ``det(x I - B)``, leading first (Faddeev-LeVerrier)."""
    n = B.rows
    coeffs = [mp.mpf(1)]
    M = mp.zeros(n, n)
    for k in range(1, n + 1):
        M = B * M + coeffs[-1] * mp.eye(n)
        coeffs.append(-sum((B * M)[i, i] for i in range(n)) / k)
    return coeffs


def eigen_small() -> list[dict]:
    """``b - a`` in 3..5: lambda = 1/mu over the nonzero roots mu of the interior block's characteristic polynomial."""
    out = []
    for kind in ("left", "right"):
        for span in (3, 4, 5):
            for alpha in (1.1, 1.5, 1.9):
                G = green_by_linear_solve(kind, span, alpha)
                B = mp.matrix([[mp.mpf(x) for x in row] for row in G[1:]])
                coeffs = charpoly(B)
                # strip exact-zero roots (trailing zero coefficients)
                while abs(coeffs[-1]) < mp.mpf(10) ** -30:
                    coeffs.pop()
                mus = mp.polyroots(coeffs, maxsteps=200, extraprec=60) if len(coeffs) > 1 else []
                lams = [1 / z for z in mus]
                out.append(
                    {
                        "kind": kind,
                        "b": span,
                        "alpha": alpha,
                        "eigenvalues": sorted(
                            [[f(mp.re(z)), f(mp.im(z))] for z in lams], key=lambda z: (abs(complex(*z)), z)
                        ),
                    }
                )
    return out


def ml_series(p, alpha, beta, m: int):
    """``sum_k p^k m^(alpha k + beta) / Gamma(alpha k + beta + 1)`` to full working precision."""
    p, alpha, beta = mp.mpf(p), mp.mpf(alpha), mp.mpf(beta)
    total = mp.mpf(0)
    k = 0
    small = 0
    while True:
        term = p**k * rising_over_gamma(m, alpha * k + beta)
        total += term
        if k > 5 and abs(term) < mp.mpf(10) ** -32 * max(1, abs(total)):
            small += 1
            if small > 5:
                return total
        else:
            small = 0
        k += 1


def ml_values() -> list[dict]:
    out = []
    for p in (-0.9, -0.5, -0.1, 0.0, 0.3, 0.5, 0.9):
        for alpha, beta in ((1.5, 0.5), (1.5, -0.5), (1.25, 0.25), (1.75, -0.25), (0.5, 0.0), (1.5, 0.0)):
            for m in (0, 1, 2, 5, 10, 20):
                out.append({"p": p, "alpha": alpha, "beta": beta, "m": m, "value": f(ml_series(p, alpha, beta, m))})
    return out


def char_left(lam, alpha, n):
    return lam * ml_series(-lam, alpha, alpha - 1, n) + ml_series(-lam, alpha, alpha - 2, n)


def char_right(lam, alpha, n):
    return ml_series(-lam, alpha, 0, n) + lam * ml_series(-lam, alpha, alpha - 1, n)


def characteristic() -> dict:
    values = []
    for kind, fn in (("left", char_left), ("right", char_right)):
        for lam in (-0.5, -0.1, 0.0, 0.1, 0.3):
            for alpha in (1.25, 1.5, 1.75):
                for n in (0, 2, 4, 7):
                    values.append({"kind": kind, "lam": lam, "alpha": alpha, "n": n, "value": f(fn(mp.mpf(lam), mp.mpf(alpha), n))})
    zeros = []
    for kind, fn in (("left", char_left), ("right", char_right)):
        for alpha in (1.25, 1.5, 1.75):
            for n in (3, 4, 5):
                grid = [mp.mpf(-0.9) + mp.mpf(1.8) * i / 60 for i in range(61)]
                vals = [fn(x, alpha, n) for x in grid]
                roots = []
                for x0, x1, v0, v1 in zip(grid, grid[1:], vals, vals[1:]):
                    if v0 * v1 < 0:
                        roots.append(f(mp.findroot(lambda x: fn(x, alpha, n), (x0, x1), solver="anderson")))
                zeros.append({"kind": kind, "alpha": alpha, "n": n, "zeros": roots})
    return {"values": values, "zeros": zeros}


def main() -> None:
    data = {
        "gamma": gamma_table(),
        "rising": rising_table(),
        "monomials": monomial_cases(),
        "kernels": kernels(),
        "eigen_small": eigen_small(),
        "mittag_leffler": ml_values(),
        "characteristic": characteristic(),
    }
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(data, indent=1) + "\n")
    print(f"wrote {OUT}")


if __name__ == "__main__":
    main()
