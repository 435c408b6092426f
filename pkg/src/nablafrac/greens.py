"""Left- and right-focal Green's kernels in closed form.

Both kernels live on ``t in a+1..b`` (rows) by ``s in a+2..b`` (columns).
The lower branch (``t >= s``) subtracts ``(t - s + 1)^(alpha-1) / Gamma(alpha)``;
the upper branch covers ``t <= s - 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .calculus import Domain, validate_alpha
from .special import gamma, rising, rising_over_gamma

Kind = Literal["left", "right"]
KINDS: tuple[Kind, ...] = ("left", "right")


def check_kind(kind: str) -> Kind:
    if kind not in KINDS:
        raise ValueError(f"kind must be 'left' or 'right', got {kind!r}")
    return kind  # type: ignore[return-value]


@dataclass(frozen=True, eq=False)
class GreensKernel:
    kind: Kind
    domain: Domain
    alpha: float
    entries: np.ndarray

    @property
    def t_points(self) -> np.ndarray:
        return self.domain.points(self.domain.a + 1)

    @property
    def s_points(self) -> np.ndarray:
        return self.domain.points(self.domain.a + 2)

    def entry(self, t: int, s: int) -> float:
        a, b = self.domain.a, self.domain.b
        if not (a + 1 <= t <= b and a + 2 <= s <= b):
            raise IndexError(f"(t, s) = ({t}, {s}) outside the kernel grid")
        return float(self.entries[t - a - 1, s - a - 2])

    def interior(self) -> np.ndarray:
        """Square block with ``t, s`` both in ``a+2..b``."""
        return self.entries[1:, :]


def _tables(domain: Domain, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """``m^(alpha-1)/Gamma(alpha)`` and ``m^(alpha-2)/Gamma(alpha-1)`` for ``m = 0..b-a``."""
    n = domain.size
    first = np.array([rising_over_gamma(m, alpha - 1) for m in range(n + 1)])
    second = np.array([rising_over_gamma(m, alpha - 2) for m in range(n + 1)])
    return first, second


def _lower_mask(domain: Domain) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    t = domain.points(domain.a + 1)[:, None]
    s = domain.points(domain.a + 2)[None, :]
    return t, s, t >= s


def greens_left(domain: Domain, alpha: float) -> GreensKernel:
    alpha = validate_alpha(alpha)
    a, b = domain.a, domain.b
    first, second = _tables(domain, alpha)
    t, s, lower = _lower_mask(domain)
    # (t-a)^(alpha-2) / (b-a)^(alpha-2); exactly 1 on the row t = b
    decay = second[t - a] / second[b - a]
    entries = first[b - s + 1] * decay
    entries = np.where(lower, entries - first[np.clip(t - s + 1, 0, None)], entries)
    return GreensKernel("left", domain, alpha, entries)


def greens_right(domain: Domain, alpha: float) -> GreensKernel:
    alpha = validate_alpha(alpha)
    a = domain.a
    first, _ = _tables(domain, alpha)
    t, s, lower = _lower_mask(domain)
    entries = np.broadcast_to(first[t - a - 1], lower.shape).astype(float)
    entries = np.where(lower, entries - first[np.clip(t - s + 1, 0, None)], entries)
    return GreensKernel("right", domain, alpha, entries)


def greens(kind: Kind, domain: Domain, alpha: float) -> GreensKernel:
    check_kind(kind)
    return greens_left(domain, alpha) if kind == "left" else greens_right(domain, alpha)


@dataclass(frozen=True)
class KernelStats:
    min: float
    max: float
    argmax: tuple[int, int]
    rowsum_max: float
    argmax_row: int


def kernel_stats(kernel: GreensKernel) -> KernelStats:
    """Exhaustive scan; ties go to the lexicographically smallest ``(t, s)``."""
    entries = kernel.entries
    a = kernel.domain.a
    flat = int(np.argmax(entries))
    i, j = divmod(flat, entries.shape[1])
    rowsums = np.array([math.fsum(row) for row in entries])
    row = int(np.argmax(rowsums))
    return KernelStats(
        min=float(entries.min()),
        max=float(entries[i, j]),
        argmax=(a + 1 + i, a + 2 + j),
        rowsum_max=float(rowsums[row]),
        argmax_row=a + 1 + row,
    )


@dataclass(frozen=True)
class ClosedFormBounds:
    max: float
    rowsum_max: float


def closed_form_bounds(kind: Kind, domain: Domain, alpha: float) -> ClosedFormBounds:
    """Closed-form kernel maximum and row-sum bound for either kind."""
    check_kind(kind)
    alpha = validate_alpha(alpha)
    span = domain.size - 1  # b - a - 1
    if kind == "left":
        return ClosedFormBounds(
            max=span / (alpha - 1),
            rowsum_max=span * (span + alpha - 1) / (alpha * (alpha - 1)),
        )
    peak = rising(span, alpha - 1) / gamma(alpha)
    return ClosedFormBounds(max=peak, rowsum_max=peak * span)
