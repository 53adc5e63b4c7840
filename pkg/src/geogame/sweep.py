"""Grid sweep: the most stable agreement for every pair of preferences."""

from __future__ import annotations

import math
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .errors import DomainError, GeoGameError
from .model import Scenario
from .optimize import DEFAULT_TOL, OptimizeResult, minimize_scalar
from .stability import (
    DEFAULT_SHRINK,
    SustainableRange,
    delta_min_objective,
    sustainable_range,
    unguarded_delta_min_objective,
)

STATUS_OK = "ok"
STATUS_ZERO = "zero-cell"
STATUS_FAILED = "failed"

RECORD_FIELDS = ("y_star_h", "y_star_c", "y_tilde_opt", "delta_min_opt", "status")

DEFAULT_Y_H_VALUES = tuple(float(-i) for i in range(7))
DEFAULT_Y_C_VALUES = tuple(float(j) for j in range(7))


def _finite_tuple(name: str, values: Sequence[float]) -> tuple[float, ...]:
    out = tuple(float(v) for v in values)
    if not out:
        raise DomainError(f"{name} must not be empty")
    if not all(math.isfinite(v) for v in out):
        raise DomainError(f"{name} must contain only finite values")
    return out


@dataclass(frozen=True)
class SweepConfig:
    y_h_values: tuple[float, ...] = DEFAULT_Y_H_VALUES
    y_c_values: tuple[float, ...] = DEFAULT_Y_C_VALUES
    z: float = 1.0
    tol: float = DEFAULT_TOL
    shrink: float = DEFAULT_SHRINK

    def __post_init__(self) -> None:
        object.__setattr__(self, "y_h_values", _finite_tuple("y_h_values", self.y_h_values))
        object.__setattr__(self, "y_c_values", _finite_tuple("y_c_values", self.y_c_values))
        if not (math.isfinite(self.z) and self.z > 0):
            raise DomainError(f"risk factor z must be > 0, got {self.z!r}")
        if not (math.isfinite(self.tol) and self.tol > 0):
            raise DomainError(f"tol must be > 0, got {self.tol!r}")
        if not (math.isfinite(self.shrink) and self.shrink > 0):
            raise DomainError(f"shrink must be > 0, got {self.shrink!r}")


@dataclass(frozen=True)
class SweepCell:
    y_star_h: float
    y_star_c: float
    y_tilde_opt: float
    delta_min_opt: float
    status: str
    lower: float | None = None
    upper: float | None = None
    evaluations: int = 0
    message: str = ""

    def record(self) -> tuple[float, float, float, float, str]:
        return (self.y_star_h, self.y_star_c, self.y_tilde_opt, self.delta_min_opt, self.status)


@dataclass(frozen=True)
class SweepSurface:
    """Cells in loop order: ``y_h_values`` outer, ``y_c_values`` inner."""

    config: SweepConfig
    cells: tuple[tuple[SweepCell, ...], ...] = field(default_factory=tuple)

    def __iter__(self):
        for row in self.cells:
            yield from row

    def ok_cells(self) -> list[SweepCell]:
        return [c for c in self if c.status == STATUS_OK]


def most_stable_agreement(
    s: Scenario, tol: float = DEFAULT_TOL, shrink: float = DEFAULT_SHRINK
) -> tuple[SustainableRange, OptimizeResult]:
    """Minimize ``delta_min`` over the sustainable range of ``s``."""
    bounds = sustainable_range(s, shrink)
    result = minimize_scalar(delta_min_objective(s), bounds.lower, bounds.upper, tol)
    return bounds, result


def unguarded_most_stable_agreement(s: Scenario, tol: float = DEFAULT_TOL) -> OptimizeResult:
    """Minimize raw ``delta_min`` between the two preferences, with no range or singularity guard.

    This is the naive procedure whose output can sit on a singular agreement.
    """
    lo, hi = sorted((s.y_star_h, s.y_star_c))
    return minimize_scalar(unguarded_delta_min_objective(s), lo, hi, tol, guard=False)


def solve_cell(
    y_star_h: float,
    y_star_c: float,
    z: float,
    tol: float = DEFAULT_TOL,
    shrink: float = DEFAULT_SHRINK,
    guard: bool = True,
) -> SweepCell:
    if y_star_h == 0 and y_star_c == 0:
        # delta_min cannot be computed here; zero by convention
        return SweepCell(y_star_h, y_star_c, 0.0, 0.0, STATUS_ZERO)
    try:
        s = Scenario(y_star_h, y_star_c, z)
        if guard:
            bounds, result = most_stable_agreement(s, tol, shrink)
            lower, upper = bounds.lower, bounds.upper
        else:
            result = unguarded_most_stable_agreement(s, tol)
            lower, upper = sorted((y_star_h, y_star_c))
    except (GeoGameError, ArithmeticError) as exc:
        return SweepCell(
            y_star_h,
            y_star_c,
            math.nan,
            math.nan,
            STATUS_FAILED,
            message=f"{type(exc).__name__}: {exc}",
        )
    return SweepCell(
        y_star_h,
        y_star_c,
        result.minimizer,
        result.objective,
        STATUS_OK,
        lower=lower,
        upper=upper,
        evaluations=result.evaluations,
    )


def run_sweep(cfg: SweepConfig, *, guard: bool = True, workers: int = 1) -> SweepSurface:
    """Solve every cell of the preference grid.

    Cells are independent; with ``workers > 1`` they are solved on a thread
    pool, and the result keeps loop order either way. Failures are recorded
    per cell and never abort the sweep.
    """
    pairs = [(yh, yc) for yh in cfg.y_h_values for yc in cfg.y_c_values]

    def solve(pair: tuple[float, float]) -> SweepCell:
        return solve_cell(pair[0], pair[1], cfg.z, cfg.tol, cfg.shrink, guard)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            flat = list(pool.map(solve, pairs))
    else:
        flat = [solve(p) for p in pairs]

    n = len(cfg.y_c_values)
    rows = tuple(tuple(flat[i : i + n]) for i in range(0, len(flat), n))
    return SweepSurface(config=cfg, cells=rows)


def surface_to_records(surface: SweepSurface) -> list[tuple[float, float, float, float, str]]:
    """Flatten row-major, ``y_h`` outer and ``y_c`` inner."""
    return [cell.record() for cell in surface]
