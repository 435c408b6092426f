"""Nabla fractional calculus on integer grids and its focal boundary value problems."""

from __future__ import annotations

from .bvp import (
    BvpSpec,
    NonexistenceCheck,
    SolutionCoefficients,
    Spectrum,
    VerificationReport,
    check_nonexistence,
    eigen_bound,
    eigen_spectrum,
    lyapunov_bound,
    operator_matrix,
    solution_coefficients,
    solve_greens,
    verify_solution,
)
from .calculus import (
    Domain,
    GridFunction,
    frac_diff,
    frac_op,
    frac_sum,
    monomial,
    nabla_diff,
    power_rule,
    sup_norm,
)
from .errors import (
    BaseMismatch,
    DomainTooSmall,
    IntegerOrderWithDirectMethod,
    InvalidOrder,
    InvalidParams,
    InvalidSpec,
    NablaError,
    ParseError,
    PoleError,
    ShapeMismatch,
    SolverFailure,
    TruncationError,
)
from .greens import GreensKernel, closed_form_bounds, greens, greens_left, greens_right, kernel_stats
from .mittag import (
    MLParams,
    ScanReport,
    characteristic_left,
    characteristic_right,
    ml_eval,
    ml_frac_diff_deviation,
    ml_grid,
    zero_exclusion_scan,
)
from .serialize import parse_grid_file
from .special import SignedMagnitude, backward_jump, gamma, gamma_ratio, lgamma_signed, rising

__version__ = "0.1.0"
