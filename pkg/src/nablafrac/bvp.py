"""Focal boundary value problems

    nabla^alpha_a u(t) + h(t) = 0,  t in a+2..b

left-focal:  nabla^(alpha-1)_a u(a+1) = 0,  u(b) = 0
right-focal: u(a+1) = 0,  nabla^(alpha-1)_a u(b) = 0

solved through the Green representation ``u(t) = sum_s G(t, s) h(s)``,
checked against direct operator evaluation, plus spectra of the Green
operator and the Lyapunov-type thresholds.

Forcings and potentials live on ``a+2..b``; ``h(a+1)`` is taken as 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .calculus import Domain, GridFunction, diff_weights, frac_diff, sup_norm, validate_alpha
from .errors import InvalidSpec, ShapeMismatch, SolverFailure
from .greens import GreensKernel, Kind, check_kind, greens
from .special import gamma, rising

ZERO_EIGENVALUE_CUTOFF = 1e-13
RESIDUAL_GATE = 1e-9


@dataclass(frozen=True, eq=False)
class BvpSpec:
    """Problem data; ``forcing`` is ``h`` for the solver or ``q`` for the bound checks."""

    kind: Kind
    domain: Domain
    alpha: float
    forcing: GridFunction

    def __post_init__(self) -> None:
        try:
            check_kind(self.kind)
            validate_alpha(self.alpha)
        except ValueError as exc:
            raise InvalidSpec(str(exc)) from exc
        a, b = self.domain.a, self.domain.b
        if self.forcing.base != a + 2 or len(self.forcing) != b - a - 1:
            raise InvalidSpec(
                f"forcing must live on {a + 2}..{b}, got {self.forcing.base}..{self.forcing.end}"
            )


@dataclass(frozen=True)
class SolutionCoefficients:
    c1: float
    c2: float


def solve_greens(spec: BvpSpec, kernel: GreensKernel | None = None) -> GridFunction:
    """``u(t) = sum_{s=a+2}^{b} G(t, s) h(s)`` on ``a+1..b``."""
    if kernel is None:
        kernel = greens(spec.kind, spec.domain, spec.alpha)
    h = spec.forcing.values
    u = [math.fsum(row * h) for row in kernel.entries]
    return GridFunction(spec.domain.a + 1, u)


def solution_coefficients(spec: BvpSpec) -> SolutionCoefficients:
    """Coefficients of ``(t-a)^(alpha-1)`` and ``(t-a)^(alpha-2)`` in the general solution."""
    alpha, a, b = spec.alpha, spec.domain.a, spec.domain.b
    h = spec.forcing.values
    if spec.kind == "left":
        weights = np.array([rising(b - s + 1, alpha - 1) for s in range(a + 2, b + 1)])
        c2 = math.fsum(weights * h) / (rising(b - a, alpha - 2) * gamma(alpha))
        return SolutionCoefficients(c1=0.0, c2=c2)
    total = math.fsum(h)
    return SolutionCoefficients(c1=total / gamma(alpha), c2=-total / gamma(alpha - 1))


@dataclass(frozen=True)
class VerificationReport:
    residual_interior_max: float
    residual_at_a2: float
    predicted_residual_at_a2: float
    bc_values: dict[str, float]
    scale: float
    tol: float
    passed: bool = field(init=False)

    def __post_init__(self) -> None:
        limit = self.tol * self.scale
        ok = (
            self.residual_interior_max <= limit
            and abs(self.residual_at_a2 - self.predicted_residual_at_a2) <= limit
            and all(abs(v) <= limit for v in self.bc_values.values())
        )
        object.__setattr__(self, "passed", bool(ok))


def _extend_forcing(spec: BvpSpec) -> np.ndarray:
    return np.concatenate([[0.0], spec.forcing.values])


def verify_solution(spec: BvpSpec, u: GridFunction, tol: float = 1e-9) -> VerificationReport:
    """Residual of ``nabla^alpha u + h`` and the boundary conditions of ``spec.kind``.

    At ``t = a+2`` the direct operator does not annihilate the
    ``(t-a)^(alpha-2)`` mode; the residual there is expected to be
    ``-Gamma(alpha-1) * c2`` rather than zero.  The left-focal condition at
    ``a+1`` is checked in its equivalent form
    ``nabla^(alpha-1) u(a+2) + h(a+2) = 0``.
    """
    a, b = spec.domain.a, spec.domain.b
    if u.base != a + 1 or len(u) != b - a:
        raise ShapeMismatch(f"u must live on {a + 1}..{b}, got {u.base}..{u.end}")
    alpha = spec.alpha
    h = _extend_forcing(spec)
    residual = frac_diff(u, alpha, a, method="direct").values + h
    interior = residual[2:]
    lower = frac_diff(u, alpha - 1, a, method="composition")
    if spec.kind == "left":
        bc = {
            "u_at_b": u(b),
            "diff_alpha_minus_1_at_a2_plus_h": lower(a + 2) + spec.forcing(a + 2),
        }
    else:
        bc = {"u_at_a1": u(a + 1), "diff_alpha_minus_1_at_b": lower(b)}
    coeffs = solution_coefficients(spec)
    return VerificationReport(
        residual_interior_max=float(np.max(np.abs(interior))) if interior.size else 0.0,
        residual_at_a2=float(residual[1]),
        predicted_residual_at_a2=-gamma(alpha - 1) * coeffs.c2,
        bc_values={k: float(v) for k, v in bc.items()},
        scale=1.0 + sup_norm(spec.forcing),
        tol=tol,
    )


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Eigenvalues ``lambda`` of ``nabla^alpha u + lambda u = 0`` under ``kind``'s conditions.

    ``eigenvectors[:, i]`` is the eigenfunction on ``a+1..b`` belonging to
    ``eigenvalues[i]``; ``zero_modes`` counts Green-operator eigenvalues
    below the cutoff (they have no finite ``lambda``).
    """

    kind: Kind
    domain: Domain
    alpha: float
    eigenvalues: tuple[complex, ...]
    eigenvectors: np.ndarray
    zero_modes: int
    residual: float

    @property
    def eigen_bound(self) -> float:
        return eigen_bound(self.kind, self.domain, self.alpha)

    @property
    def min_abs_lambda(self) -> float:
        return min((abs(x) for x in self.eigenvalues), default=math.inf)

    def real_eigenpairs(self, imag_tol: float = 1e-12) -> list[tuple[float, np.ndarray]]:
        out = []
        for i, lam in enumerate(self.eigenvalues):
            if abs(lam.imag) <= imag_tol * max(1.0, abs(lam)):
                vec = self.eigenvectors[:, i]
                # pick the phase that makes the vector real
                k = int(np.argmax(np.abs(vec)))
                vec = np.real(vec / vec[k] * abs(vec[k]))
                out.append((lam.real, vec))
        return out


def eigen_spectrum(kind: Kind, domain: Domain, alpha: float) -> Spectrum:
    """Spectrum of the Green operator restricted to ``a+2..b``; ``lambda = 1 / mu``."""
    check_kind(kind)
    domain.require(3)
    kernel = greens(kind, domain, alpha)
    block = kernel.interior()
    try:
        mu, vecs = np.linalg.eig(block)
    except np.linalg.LinAlgError as exc:
        raise SolverFailure(f"eigensolver failed: {exc}") from exc
    if not (np.all(np.isfinite(mu)) and np.all(np.isfinite(vecs))):
        raise SolverFailure("eigensolver returned non-finite values")
    norm = np.linalg.norm(block, 2)
    residual = float(np.max(np.linalg.norm(block @ vecs - vecs * mu, axis=0))) / max(norm, 1e-300)
    if residual > RESIDUAL_GATE:
        raise SolverFailure(f"eigenpair residual {residual:.3e} exceeds {RESIDUAL_GATE:g}")
    keep = np.abs(mu) > ZERO_EIGENVALUE_CUTOFF
    lam = 1.0 / mu[keep]
    interior_vecs = vecs[:, keep]
    # extend to t = a+1 through the representation u = lambda G u
    top = lam * (kernel.entries[0, :] @ interior_vecs)
    full = np.vstack([top[None, :], interior_vecs])
    order = sorted(range(lam.size), key=lambda i: (abs(lam[i]), lam[i].real, lam[i].imag))
    return Spectrum(
        kind=kind,
        domain=domain,
        alpha=float(alpha),
        eigenvalues=tuple(complex(lam[i]) for i in order),
        eigenvectors=full[:, order] if order else full,
        zero_modes=int(np.count_nonzero(~keep)),
        residual=residual,
    )


def lyapunov_bound(kind: Kind, domain: Domain, alpha: float) -> float:
    """Threshold on ``sum |q|`` below which only the trivial solution exists."""
    check_kind(kind)
    alpha = validate_alpha(alpha)
    span = domain.size - 1
    if kind == "left":
        return (alpha - 1) / span
    return gamma(alpha) / rising(span, alpha - 1)


def eigen_bound(kind: Kind, domain: Domain, alpha: float) -> float:
    return lyapunov_bound(kind, domain, alpha) / (domain.size - 1)


@dataclass(frozen=True)
class NonexistenceCheck:
    bound: float
    total: float
    guaranteed_no_nontrivial: bool


def check_nonexistence(spec: BvpSpec) -> NonexistenceCheck:
    """``spec.forcing`` is read as the potential ``q``."""
    bound = lyapunov_bound(spec.kind, spec.domain, spec.alpha)
    total = math.fsum(np.abs(spec.forcing.values))
    return NonexistenceCheck(bound=bound, total=total, guaranteed_no_nontrivial=total < bound)


def operator_matrix(domain: Domain, alpha: float) -> np.ndarray:
    """Lower-triangular ``W`` with ``(W u)(t) = nabla^alpha_a u(t)`` on ``a+1..b``.

    Integer ``alpha`` gives the plain backward-difference matrix.
    """
    if alpha <= 0:
        raise ValueError(f"order must be positive, got {alpha}")
    n = domain.size
    w = diff_weights(alpha, n)
    idx = np.arange(n)
    lag = idx[:, None] - idx[None, :]
    return np.where(lag >= 0, w[np.clip(lag, 0, None)], 0.0)

