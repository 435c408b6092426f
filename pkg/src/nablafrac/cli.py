"""Command-line front end.

Exit codes: 0 success, 1 a check failed (the report is still printed),
2 invalid input (diagnostic on stderr).
"""

from __future__ import annotations

import argparse
import math
import sys
from dataclasses import dataclass
from typing import Sequence

from .bvp import BvpSpec, eigen_bound, eigen_spectrum, lyapunov_bound, solution_coefficients
from .bvp import solve_greens, verify_solution
from .calculus import Domain, validate_alpha
from .checks import run_checks
from .errors import NablaError
from .greens import KINDS, closed_form_bounds, greens, kernel_stats
from .mittag import zero_exclusion_scan
from .serialize import dumps, format_float, grid_to_csv, grid_to_json, kernel_to_csv, parse_grid_file

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2
SPECTRAL_SLACK = 1e-10
SUBCOMMANDS = ("greens", "solve", "bounds", "eigen", "mlzeros", "verify")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class CommandConfig:
    subcommand: str
    a: int = 0
    b: int | None = None
    alpha: float | None = None
    kind: str | None = None
    input_path: str | None = None
    tol: float = 1e-9
    format: str = "json"
    samples: int = 1001

    def validate(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise UsageError(f"unknown subcommand {self.subcommand!r}")
        if not (self.tol > 0 and math.isfinite(self.tol)):
            raise UsageError(f"--tol must be positive, got {self.tol}")
        if self.format not in ("json", "csv"):
            raise UsageError(f"--format must be json or csv, got {self.format!r}")
        if self.kind is not None and self.kind not in KINDS:
            raise UsageError(f"--kind must be left or right, got {self.kind!r}")
        if self.subcommand == "verify":
            if self.samples < 3:
                raise UsageError(f"--samples must be at least 3, got {self.samples}")
            return
        if self.kind is None:
            raise UsageError("--kind is required")
        if self.b is None or self.alpha is None:
            raise UsageError("--b and --alpha are required")
        try:
            validate_alpha(self.alpha)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        need = 3 if self.subcommand in ("eigen", "mlzeros") else 2
        if self.b - self.a < need:
            raise UsageError(f"{self.subcommand} needs b - a >= {need}, got {self.b - self.a}")
        if self.subcommand == "mlzeros" and self.samples < 3:
            raise UsageError(f"--samples must be at least 3, got {self.samples}")
        if self.subcommand == "solve" and self.input_path is None:
            raise UsageError("solve needs --input")


def _header(cfg: CommandConfig) -> dict:
    return {"kind": cfg.kind, "a": cfg.a, "b": cfg.b, "alpha": cfg.alpha}


def _key_value_csv(rows: dict) -> str:
    def cell(v) -> str:
        if isinstance(v, bool):
            return "true" if v else "false"
        if isinstance(v, float):
            return format_float(v)
        return str(v)

    return "key,value\n" + "".join(f"{k},{cell(v)}\n" for k, v in rows.items())


def _rel_err(x: float, ref: float) -> float:
    return abs(x - ref) / abs(ref) if ref else abs(x)


def cmd_greens(cfg: CommandConfig) -> tuple[int, str]:
    domain = Domain(cfg.a, cfg.b)
    kernel = greens(cfg.kind, domain, cfg.alpha)
    if cfg.format == "csv":
        return EXIT_OK, kernel_to_csv(kernel)
    stats = kernel_stats(kernel)
    cf = closed_form_bounds(cfg.kind, domain, cfg.alpha)
    payload = _header(cfg) | {
        "t_points": [int(t) for t in kernel.t_points],
        "s_points": [int(s) for s in kernel.s_points],
        "entries": [[float(x) for x in row] for row in kernel.entries],
        "stats": {
            "min": stats.min,
            "max": stats.max,
            "argmax": list(stats.argmax),
            "rowsum_max": stats.rowsum_max,
            "argmax_row": stats.argmax_row,
        },
        "closed_form": {
            "max": cf.max,
            "rowsum_max": cf.rowsum_max,
            "max_rel_err": _rel_err(stats.max, cf.max),
            "rowsum_max_rel_err": _rel_err(stats.rowsum_max, cf.rowsum_max),
        },
    }
    return EXIT_OK, dumps(payload)


def cmd_solve(cfg: CommandConfig) -> tuple[int, str]:
    domain = Domain(cfg.a, cfg.b)
    h = parse_grid_file(cfg.input_path, cfg.a + 2, cfg.b - cfg.a - 1)
    spec = BvpSpec(cfg.kind, domain, cfg.alpha, h)
    u = solve_greens(spec)
    report = verify_solution(spec, u, cfg.tol)
    code = EXIT_OK if report.passed else EXIT_FAILED
    if cfg.format == "csv":
        return code, grid_to_csv(u)
    coeffs = solution_coefficients(spec)
    payload = _header(cfg) | {
        "u": grid_to_json(u),
        "coefficients": {"c1": coeffs.c1, "c2": coeffs.c2},
        "report": {
            "residual_interior_max": report.residual_interior_max,
            "residual_at_a2": report.residual_at_a2,
            "predicted_residual_at_a2": report.predicted_residual_at_a2,
            "bc_values": report.bc_values,
            "scale": report.scale,
            "tol": report.tol,
            "passed": report.passed,
        },
    }
    return code, dumps(payload)


def cmd_bounds(cfg: CommandConfig) -> tuple[int, str]:
    domain = Domain(cfg.a, cfg.b)
    payload = _header(cfg) | {
        "lyapunov_bound": lyapunov_bound(cfg.kind, domain, cfg.alpha),
        "eigen_bound": eigen_bound(cfg.kind, domain, cfg.alpha),
    }
    if cfg.format == "csv":
        return EXIT_OK, _key_value_csv(payload)
    return EXIT_OK, dumps(payload)


def cmd_eigen(cfg: CommandConfig) -> tuple[int, str]:
    spectrum = eigen_spectrum(cfg.kind, Domain(cfg.a, cfg.b), cfg.alpha)
    bound = spectrum.eigen_bound
    holds = all(abs(lam) >= bound * (1 - SPECTRAL_SLACK) for lam in spectrum.eigenvalues)
    code = EXIT_OK if holds else EXIT_FAILED
    if cfg.format == "csv":
        rows = "".join(f"{format_float(l.real)},{format_float(l.imag)}\n" for l in spectrum.eigenvalues)
        return code, "re,im\n" + rows
    payload = _header(cfg) | {
        "eigenvalues": [{"re": l.real, "im": l.imag} for l in spectrum.eigenvalues],
        "zero_modes": spectrum.zero_modes,
        "eigen_bound": bound,
        "min_abs_lambda": spectrum.min_abs_lambda if spectrum.eigenvalues else None,
        "bound_holds": holds,
    }
    return code, dumps(payload)


def cmd_mlzeros(cfg: CommandConfig) -> tuple[int, str]:
    report = zero_exclusion_scan(cfg.kind, cfg.alpha, cfg.b - cfg.a, cfg.samples)
    payload = {
        "kind": report.kind,
        "alpha": report.alpha,
        "n": report.n,
        "radius": report.radius,
        "samples": report.samples,
        "min_abs_value": report.min_abs_value,
        "sign_changes": report.sign_changes,
        "clamped": report.clamped,
        "passed": report.passed,
    }
    code = EXIT_OK if report.passed else EXIT_FAILED
    if cfg.format == "csv":
        return code, _key_value_csv(payload)
    return code, dumps(payload)


def cmd_verify(cfg: CommandConfig) -> tuple[int, str]:
    kinds = KINDS if cfg.kind is None else (cfg.kind,)
    checks = run_checks(kinds, samples=cfg.samples, tol=cfg.tol)
    failed = sum(not c["passed"] for c in checks)
    code = EXIT_OK if failed == 0 else EXIT_FAILED
    if cfg.format == "csv":
        return code, "name,passed\n" + "".join(
            f"{c['name']},{'true' if c['passed'] else 'false'}\n" for c in checks
        )
    payload = {"checks": checks, "n_checks": len(checks), "n_failed": failed, "passed": failed == 0}
    return code, dumps(payload)


HANDLERS = {
    "greens": cmd_greens,
    "solve": cmd_solve,
    "bounds": cmd_bounds,
    "eigen": cmd_eigen,
    "mlzeros": cmd_mlzeros,
    "verify": cmd_verify,
}


def run(cfg: CommandConfig) -> tuple[int, str]:
    """Validate ``cfg`` and execute it; returns ``(exit_code, output)``.

    Raises ``UsageError`` or ``NablaError`` on invalid input.
    """
    cfg.validate()
    return HANDLERS[cfg.subcommand](cfg)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nablafrac",
        description="Nabla fractional focal boundary value problems: kernels, solutions, bounds, spectra.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True, metavar="COMMAND")
    helps = {
        "greens": "dump a Green's kernel with its stats and closed-form bounds",
        "solve": "solve the BVP for a forcing read from --input",
        "bounds": "Lyapunov and eigenvalue bounds",
        "eigen": "eigenvalues of the focal problem",
        "mlzeros": "scan the characteristic function on its zero-free interval (n = b - a)",
        "verify": "run the full invariant sweep",
    }
    for name in SUBCOMMANDS:
        p = sub.add_parser(name, help=helps[name])
        p.add_argument("--kind", choices=KINDS, required=name != "verify")
        if name != "verify":
            p.add_argument("--a", type=int, default=0)
            p.add_argument("--b", type=int, required=True)
            p.add_argument("--alpha", type=float, required=True)
        if name == "solve":
            p.add_argument("--input", dest="input_path", required=True, help="forcing h on a+2..b, CSV or JSON")
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if name in ("mlzeros", "verify"):
            p.add_argument("--samples", type=int, default=1001)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = CommandConfig(**vars(args))
    try:
        code, output = run(cfg)
    except (UsageError, NablaError, ValueError) as exc:
        print(f"nablafrac {cfg.subcommand}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE if not isinstance(exc, RuntimeError) else EXIT_FAILED
    sys.stdout.write(output)
    return code


if __name__ == "__main__":
    sys.exit(main())
