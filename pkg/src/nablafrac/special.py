"""Gamma-function kernel: signed log-gamma, pole-aware gamma ratios and the
generalized rising function ``t^(r) = Gamma(t + r) / Gamma(t)``.

Everything here is a pure scalar function.  Ratios are formed in log space
and exponentiated once so arguments of a few hundred never overflow.

Pole conventions
----------------
* ``1 / Gamma(pole) = 0``, so ``gamma_ratio(finite, pole) == 0``.
* ``gamma_ratio(pole, pole)`` is the limit of ``Gamma(z + k) / Gamma(z)``;
  with ``num = -i`` and ``den = -j`` this is ``(-1)**(i - j) * j! / i!``.
* ``rising(0, 0) == 1`` and ``rising(0, r) == 0`` for ``r != 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import PoleError

POLE_TOL = 1e-12


def is_pole(x: float) -> bool:
    """True if ``x`` is within ``POLE_TOL`` of a nonpositive integer."""
    return x < 0.5 and abs(x - round(x)) <= POLE_TOL


def _is_zero(x: float) -> bool:
    return abs(x) <= POLE_TOL


@dataclass(frozen=True)
class SignedMagnitude:
    """A real number stored as ``sign * exp(log_abs)``; ``sign == 0`` means 0."""

    log_abs: float
    sign: int

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.log_abs)


def lgamma_signed(x: float) -> SignedMagnitude:
    if is_pole(x):
        raise PoleError(f"Gamma has a pole at {x!r}")
    if x > 0:
        return SignedMagnitude(math.lgamma(x), 1)
    # sign alternates between consecutive poles on the negative axis
    sign = -1 if math.ceil(-x) % 2 else 1
    return SignedMagnitude(math.lgamma(x), sign)


def gamma(x: float) -> float:
    return lgamma_signed(x).value


def rgamma(x: float) -> float:
    """Reciprocal gamma; zero at the poles."""
    if is_pole(x):
        return 0.0
    g = lgamma_signed(x)
    return g.sign * math.exp(-g.log_abs)


def _pole_index(x: float) -> int:
    return -int(round(x))


def gamma_ratio(num: float, den: float) -> float:
    """``Gamma(num) / Gamma(den)`` with the module's pole conventions."""
    num_pole, den_pole = is_pole(num), is_pole(den)
    if num_pole and den_pole:
        i, j = _pole_index(num), _pole_index(den)
        sign = -1.0 if (i - j) % 2 else 1.0
        # exact integer factorials, one final rounding
        return sign * (math.factorial(j) / math.factorial(i))
    if den_pole:
        return 0.0
    if num_pole:
        raise PoleError(f"Gamma({num!r}) / Gamma({den!r}): numerator at a pole")
    gn, gd = lgamma_signed(num), lgamma_signed(den)
    return gn.sign * gd.sign * math.exp(gn.log_abs - gd.log_abs)


def rising(t: float, r: float) -> float:
    """Generalized rising function ``t^(r)``."""
    if _is_zero(t):
        return 1.0 if _is_zero(r) else 0.0
    if float(r).is_integer() and 0 <= r <= 64:
        # plain product t (t+1) ... (t+r-1), exact for small integer data
        return math.prod((t + j for j in range(int(r))), start=1.0)
    return gamma_ratio(t + r, t)


def rising_over_gamma(t: float, r: float) -> float:
    """``t^(r) / Gamma(r + 1)``, continued through removable poles.

    This is the building block of power rules, fractional-sum weights and
    Mittag-Leffler terms.  When ``t + r`` and ``r + 1`` are both poles the
    quotient has a finite limit, which is returned instead of raising.  For
    integer ``t >= 1`` the value equals ``prod_{j=1}^{t-1} (r + j) / j``
    and is evaluated that way (relative error of order ``t`` ulps).
    """
    if _is_zero(t):
        return 1.0 if _is_zero(r) else 0.0
    if t >= 1 and float(t).is_integer():
        value = 1.0
        for j in range(1, int(t)):
            value = value * (r + j) / j
        if math.isfinite(value):
            return value
    return _rising_over_gamma_log(t, r)


def _rising_over_gamma_log(t: float, r: float) -> float:
    top_pole, bottom_pole = is_pole(t + r), is_pole(r + 1)
    if top_pole and bottom_pole:
        return gamma_ratio(t + r, r + 1) * rgamma(t)
    if bottom_pole:
        return 0.0
    if top_pole:
        raise PoleError(f"({t!r})^({r!r}) is undefined")
    gt = lgamma_signed(t)
    gtr, gr1 = lgamma_signed(t + r), lgamma_signed(r + 1)
    return gt.sign * gtr.sign * gr1.sign * math.exp(gtr.log_abs - gt.log_abs - gr1.log_abs)


def backward_jump(t: int, a: int) -> int:
    """``rho(t) = max(a, t - 1)`` on the grid based at ``a``."""
    return max(a, t - 1)
