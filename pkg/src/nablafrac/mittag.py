"""Nabla Mittag-Leffler series

    E_{p,alpha,beta}(t, a) = sum_k p^k (t - a)^(alpha k + beta) / Gamma(alpha k + beta + 1)

with a certified truncation, plus the characteristic functions whose real
zeros are the eigenvalues of the focal problems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import numpy as np

from .calculus import Domain, GridFunction, frac_diff
from .errors import InvalidOrder, InvalidParams, TruncationError
from .special import POLE_TOL, gamma, rising, rising_over_gamma

DEFAULT_TOL = 1e-14
MAX_TERMS = 200_000
SCAN_CLAMP = 0.999


@dataclass(frozen=True)
class MLParams:
    p: float
    alpha: float
    beta: float

    def __post_init__(self) -> None:
        if not abs(self.p) < 1:
            raise InvalidParams(f"need |p| < 1, got p={self.p}")
        if not self.alpha > 0:
            raise InvalidParams(f"need alpha > 0, got alpha={self.alpha}")


def _term(p: float, k: int, m: int, alpha: float, beta: float) -> float:
    return p**k * rising_over_gamma(m, alpha * k + beta)


def ml_eval(params: MLParams, t: int, a: int, tol: float = DEFAULT_TOL) -> float:
    """Sum the series until the geometric tail bound drops below ``tol``.

    For ``k >= 1`` with ``alpha k + beta + 1 > 0`` the ratio of consecutive
    terms beyond ``k`` is dominated by
    ``r_k = |p| ((alpha k + beta + m) / (alpha k + beta + 1))^alpha``;
    once ``r_k < 1`` the remainder is at most ``|term_k| r_k / (1 - r_k)``.
    """
    if tol <= 0:
        raise ValueError(f"tol must be positive, got {tol}")
    p, alpha, beta = params.p, params.alpha, params.beta
    m = t - a
    if m < 0:
        raise ValueError(f"need t >= a, got t={t}, a={a}")
    if m == 0:
        # only a term with alpha k + beta == 0 survives
        k = -beta / alpha
        if k >= -POLE_TOL and abs(k - round(k)) <= POLE_TOL:
            return p ** int(round(k))
        return 0.0
    terms = [_term(p, 0, m, alpha, beta)]
    for k in range(1, MAX_TERMS):
        term = _term(p, k, m, alpha, beta)
        terms.append(term)
        shift = alpha * k + beta
        if shift + 1 <= 0:
            continue
        ratio = abs(p) * ((shift + m) / (shift + 1)) ** alpha
        if ratio < 1 and abs(term) * ratio / (1 - ratio) < tol:
            break
    else:
        raise TruncationError(f"no truncation certificate after {MAX_TERMS} terms for {params}, m={m}")
    total = math.fsum(terms)
    magnitude = math.fsum(abs(x) for x in terms)
    # each float term carries ~(2m + 4) roundings; under heavy cancellation
    # that exceeds tol and the truncated sum is redone in exact rationals
    if magnitude > 4 * abs(total) and magnitude * (2 * m + 4) * _EPS > tol:
        return _exact_partial_sum(params, m, len(terms))
    return total


_EPS = 2.0**-52


def _dyadic(x: float) -> tuple[int, int]:
    """``x == n / 2**e`` exactly."""
    n, d = x.as_integer_ratio()
    return n, d.bit_length() - 1


def _exact_partial_sum(params: MLParams, m: int, count: int) -> float:
    """Correctly rounded value of the first ``count`` series terms at ``t - a = m``.

    Floats are dyadic rationals, so every term is an integer over
    ``2**e * (m-1)!`` and the sum needs only integer shifts.
    """
    p_num, p_exp = _dyadic(params.p)
    numerators: list[tuple[int, int]] = []
    p_power = 1
    for k in range(count):
        r_num, r_exp = _dyadic(Fraction(params.alpha) * k + Fraction(params.beta))
        step = 1 << r_exp
        prod = 1
        for j in range(1, m):
            prod *= r_num + j * step
        numerators.append((p_power * prod, p_exp * k + r_exp * (m - 1)))
        p_power *= p_num
    top = max(e for _, e in numerators)
    total = sum(n << (top - e) for n, e in numerators)
    return float(Fraction(total, math.factorial(m - 1) << top))


def ml_grid(params: MLParams, domain: Domain, tol: float = DEFAULT_TOL) -> GridFunction:
    """``E_{p,alpha,beta}(t, a)`` on ``a .. b``."""
    a, b = domain.a, domain.b
    return GridFunction(a, [ml_eval(params, t, a, tol) for t in range(a, b + 1)])


def ml_frac_diff_deviation(
    params: MLParams, nu: float, domain: Domain, tol: float = DEFAULT_TOL
) -> float:
    """Max over ``t in a+3..b`` of ``|nabla^nu E_{p,alpha,beta} - E_{p,alpha,beta-nu}|``.

    The first two points are excluded: zero extension below the base point
    perturbs the lowest modes there.
    """
    if not (0 < nu < 1 or 1 < nu < 2):
        raise InvalidOrder(f"need 0 < nu < 1 or 1 < nu < 2, got {nu}")
    domain.require(4)
    a = domain.a
    u = ml_grid(params, domain, tol).restrict(a + 1)
    lhs = frac_diff(u, nu, a, method="direct").restrict(a + 3)
    shifted = MLParams(params.p, params.alpha, params.beta - nu)
    rhs = np.array([ml_eval(shifted, t, a, tol) for t in range(a + 3, domain.b + 1)])
    return float(np.max(np.abs(lhs.values - rhs)))


def _check_lambda(lam: float) -> None:
    if not abs(lam) < 1:
        raise InvalidParams(f"Mittag-Leffler representation needs |lambda| < 1, got {lam}")


def characteristic_left(lam: float, alpha: float, n: int, tol: float = DEFAULT_TOL) -> float:
    """``lam E_{-lam,alpha,alpha-1}(n, 0) + E_{-lam,alpha,alpha-2}(n, 0)``."""
    _check_lambda(lam)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    first = ml_eval(MLParams(-lam, alpha, alpha - 1), n, 0, tol)
    second = ml_eval(MLParams(-lam, alpha, alpha - 2), n, 0, tol)
    return lam * first + second


def characteristic_right(lam: float, alpha: float, n: int, tol: float = DEFAULT_TOL) -> float:
    """``E_{-lam,alpha,0}(n, 0) + lam E_{-lam,alpha,alpha-1}(n, 0)``."""
    _check_lambda(lam)
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    first = ml_eval(MLParams(-lam, alpha, 0.0), n, 0, tol)
    second = ml_eval(MLParams(-lam, alpha, alpha - 1), n, 0, tol)
    return first + lam * second


Kind = Literal["left", "right"]

CHARACTERISTIC = {"left": characteristic_left, "right": characteristic_right}


def exclusion_radius(kind: Kind, alpha: float, n: int) -> float:
    """Half-width of the interval around 0 that is proved free of real zeros."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if kind == "left":
        return (alpha - 1) / (n - 1) ** 2
    if kind == "right":
        return gamma(alpha) / ((n - 1) * rising(n - 1, alpha - 1))
    raise ValueError(f"kind must be 'left' or 'right', got {kind!r}")


@dataclass(frozen=True)
class ScanReport:
    kind: str
    alpha: float
    n: int
    radius: float
    samples: int
    min_abs_value: float
    sign_changes: int
    clamped: bool

    @property
    def passed(self) -> bool:
        return self.sign_changes == 0 and self.min_abs_value > 0


def scan_points(radius: float, samples: int) -> np.ndarray:
    """``samples`` equispaced points strictly inside ``(-radius, radius)``."""
    i = np.arange(1, samples + 1)
    # integer numerator keeps the grid symmetric and hits 0 exactly for odd counts
    return radius * (2 * i - (samples + 1)) / (samples + 1)


def zero_exclusion_scan(
    kind: Kind, alpha: float, n: int, samples: int = 1001, tol: float = DEFAULT_TOL
) -> ScanReport:
    if samples < 3:
        raise ValueError(f"need at least 3 samples, got {samples}")
    radius = exclusion_radius(kind, alpha, n)
    clamped = radius > SCAN_CLAMP
    reach = min(radius, SCAN_CLAMP)
    f = CHARACTERISTIC[kind]
    values = np.array([f(float(lam), alpha, n, tol) for lam in scan_points(reach, samples)])
    signs = np.sign(values)
    return ScanReport(
        kind=kind,
        alpha=float(alpha),
        n=int(n),
        radius=float(radius),
        samples=int(samples),
        min_abs_value=float(np.min(np.abs(values))),
        sign_changes=int(np.count_nonzero(signs[1:] * signs[:-1] < 0)),
        clamped=clamped,
    )
