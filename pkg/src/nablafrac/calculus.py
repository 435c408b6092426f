"""Nabla (backward) differences and Riemann-Liouville fractional sums and
differences on integer grids.

Grid convention: a fractional operator "based at ``a``" acts on functions
living on ``a+1, a+2, ...``.  Every such sum is zero for ``t <= a`` (empty
sum), and the outer integer differences of the composition form read those
zeros.  Under that convention the composition and direct forms agree on the
whole grid ``N_{a+1}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .errors import (
    BaseMismatch,
    DomainTooSmall,
    IntegerOrderWithDirectMethod,
    InvalidOrder,
)
from .special import POLE_TOL, gamma, rising, rising_over_gamma


@dataclass(frozen=True)
class Domain:
    """Integer interval pair ``(a, b)``; grids are ``a+1..b`` and ``a+2..b``."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if int(self.a) != self.a or int(self.b) != self.b:
            raise DomainTooSmall(f"domain endpoints must be integers, got ({self.a}, {self.b})")
        if self.b - self.a < 2:
            raise DomainTooSmall(f"need b - a >= 2, got a={self.a}, b={self.b}")

    @property
    def size(self) -> int:
        """``b - a``: number of points in ``N^b_{a+1}``."""
        return self.b - self.a

    def points(self, start: int) -> np.ndarray:
        return np.arange(start, self.b + 1)

    def require(self, min_size: int) -> None:
        if self.size < min_size:
            raise DomainTooSmall(f"need b - a >= {min_size}, got {self.size}")


def validate_alpha(alpha: float) -> float:
    """Standing assumption of the focal problems: ``1 < alpha < 2``."""
    alpha = float(alpha)
    if not 1.0 < alpha < 2.0:
        raise InvalidOrder(f"alpha must satisfy 1 < alpha < 2, got {alpha}")
    return alpha


class GridFunction:
    """Real values on the contiguous integer grid ``base .. base + len - 1``."""

    __slots__ = ("base", "values")

    def __init__(self, base: int, values) -> None:
        arr = np.array(values, dtype=float).reshape(-1)
        if arr.size == 0:
            raise ValueError("a grid function needs at least one point")
        arr.setflags(write=False)
        self.base = int(base)
        self.values = arr

    @classmethod
    def from_callable(cls, f: Callable[[int], float], base: int, end: int) -> "GridFunction":
        return cls(base, [f(t) for t in range(base, end + 1)])

    @property
    def end(self) -> int:
        return self.base + len(self.values) - 1

    def points(self) -> np.ndarray:
        return np.arange(self.base, self.end + 1)

    def __len__(self) -> int:
        return len(self.values)

    def __call__(self, t: int) -> float:
        if not self.base <= t <= self.end:
            raise IndexError(f"t={t} outside grid {self.base}..{self.end}")
        return float(self.values[t - self.base])

    def restrict(self, start: int, end: int | None = None) -> "GridFunction":
        end = self.end if end is None else end
        if not self.base <= start <= end <= self.end:
            raise IndexError(f"{start}..{end} not inside {self.base}..{self.end}")
        return GridFunction(start, self.values[start - self.base : end - self.base + 1])

    def __repr__(self) -> str:
        return f"GridFunction(base={self.base}, values={self.values.tolist()!r})"


def sup_norm(u: GridFunction) -> float:
    return float(np.max(np.abs(u.values)))


def nabla_diff(u: GridFunction, order: int = 1) -> GridFunction:
    """``order``-fold backward difference; the result starts ``order`` points later."""
    if order < 1 or int(order) != order:
        raise InvalidOrder(f"order must be a positive integer, got {order}")
    if len(u) < order + 1:
        raise DomainTooSmall(f"need at least {order + 1} points, got {len(u)}")
    return GridFunction(u.base + order, np.diff(u.values, n=order))


def _is_integer(x: float) -> bool:
    return abs(x - round(x)) <= POLE_TOL


def _check_base(u: GridFunction, a: int) -> None:
    if u.base != a + 1:
        raise BaseMismatch(f"operator based at a={a} needs u based at {a + 1}, got {u.base}")


def sum_weights(nu: float, n: int) -> np.ndarray:
    """Kernel of the order-``nu`` sum: ``w[m] = (m+1)^(nu-1) / Gamma(nu)``, ``m = t - s``."""
    if _is_integer(nu):
        k = int(round(nu))
        # exact binomials C(m + k - 1, k - 1)
        return np.array([float(math.comb(m + k - 1, k - 1)) for m in range(n)])
    return np.array([rising_over_gamma(m + 1, nu - 1) for m in range(n)])


def diff_weights(nu: float, n: int) -> np.ndarray:
    """Kernel of the direct form: ``w[m] = (m+1)^(-nu-1) / Gamma(-nu)``.

    Written as ``prod_{j<=m} (j - nu - 1) / j`` this stays finite at integer
    ``nu`` and reduces to signed binomial coefficients there.
    """
    return np.array([rising_over_gamma(m + 1, -nu - 1) for m in range(n)])


def _convolve(weights: np.ndarray, values: np.ndarray) -> np.ndarray:
    out = np.empty(len(values))
    for i in range(len(values)):
        out[i] = math.fsum(weights[i::-1] * values[: i + 1])
    return out


def frac_sum(u: GridFunction, nu: float, a: int) -> GridFunction:
    """Nabla fractional sum of order ``nu >= 0`` based at ``a``."""
    _check_base(u, a)
    if nu < 0:
        raise InvalidOrder(f"sum order must be >= 0, got {nu}")
    if nu == 0:
        return GridFunction(u.base, u.values)
    return GridFunction(u.base, _convolve(sum_weights(nu, len(u)), u.values))


Method = Literal["composition", "direct"]


def frac_diff(u: GridFunction, nu: float, a: int, method: Method = "composition") -> GridFunction:
    """Riemann-Liouville nabla difference of order ``nu > 0`` based at ``a``.

    ``composition`` applies ``N = ceil(nu)`` backward differences to the
    order ``N - nu`` sum (padded with zeros at ``a, a-1, ...``);
    ``direct`` convolves with the ``(t - rho(s))^(-nu-1) / Gamma(-nu)`` kernel.
    """
    _check_base(u, a)
    if nu <= 0:
        raise InvalidOrder(f"difference order must be > 0, got {nu}")
    if method == "direct":
        if _is_integer(nu):
            raise IntegerOrderWithDirectMethod(f"direct form needs non-integer order, got {nu}")
        return GridFunction(u.base, _convolve(diff_weights(nu, len(u)), u.values))
    if method != "composition":
        raise ValueError(f"unknown method {method!r}")
    if _is_integer(nu):
        order = int(round(nu))
        inner = u.values
    else:
        order = math.ceil(nu)
        inner = frac_sum(u, order - nu, a).values
    padded = GridFunction(a + 1 - order, np.concatenate([np.zeros(order), inner]))
    return nabla_diff(padded, order)


def frac_op(u: GridFunction, order: float, a: int) -> GridFunction:
    """Signed-order dispatch: difference for ``order > 0``, sum of ``-order`` otherwise."""
    if order > 0:
        return frac_diff(u, order, a)
    return frac_sum(u, -order, a)


def power_rule(mu: float, nu: float, a: int, mode: Literal["sum", "diff"], t: int) -> float:
    """Closed form of the order-``nu`` sum or difference of ``(t - a)^(mu)``.

    ``Gamma(mu+1) / Gamma(mu +- nu + 1) * (t - a)^(mu +- nu)``; where both
    gammas in the second factor hit poles the product's limit is used, which
    reproduces the zero-extended operators at the left end of the grid.
    """
    m = t - a
    if m < 1:
        raise ValueError(f"t must lie in N_(a+1), got t={t}, a={a}")
    if mode == "sum":
        shifted = mu + nu
    elif mode == "diff":
        shifted = mu - nu
    else:
        raise ValueError(f"mode must be 'sum' or 'diff', got {mode!r}")
    return gamma(mu + 1) * rising_over_gamma(m, shifted)


def monomial(mu: float, a: int, b: int) -> GridFunction:
    """``(t - a)^(mu)`` sampled on ``a+1 .. b``."""
    return GridFunction.from_callable(lambda t: rising(t - a, mu), a + 1, b)
