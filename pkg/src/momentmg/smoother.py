"""SGS-Richardson smoother: two opposite-direction Gauss-Seidel sweeps,
each cell relaxed by one local-CFL-sized Richardson step."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import max_wave_speed
from .errors import ConvergenceError, PositivityError
from .grid import Field, Grid1D, ScenarioSource, mass_correction
from .residual import CellRhs, cell_defect
from .states import MomentState, recover_macros

__all__ = ["SmootherConfig", "richardson_step", "sgs_sweep", "smooth"]


@dataclass
class SmootherConfig:
    cfl: float = 0.9
    max_backoff: int = 30
    rhs: list[CellRhs] | None = None

    def __post_init__(self):
        if not 0.0 < self.cfl < 1.0:
            raise ValueError("CFL factor must lie strictly in (0, 1)")


def richardson_step(i: int, field: Field, grid: Grid1D, src: ScenarioSource,
                    walls, cfg: SmootherConfig) -> MomentState:
    """One Richardson relaxation of cell i against its current neighbors.

    Step size omega = cfl * dx_i / lambda_max,i; when the intermediate
    coefficients lose density/temperature positivity, omega is halved and
    the step retried.
    """
    this = field.cells[i]
    rhs_i = cfg.rhs[i] if cfg.rhs is not None else None
    defect = cell_defect(field, i, grid, src, walls, rhs_i)
    dx = float(grid.nodes[i + 1] - grid.nodes[i])
    omega = cfg.cfl * dx / max_wave_speed(this)
    for _ in range(cfg.max_backoff + 1):
        try:
            return recover_macros(this.coeffs + omega * defect, this.u, this.theta, this.order)
        except PositivityError:
            omega *= 0.5
    raise ConvergenceError(
        f"positivity back-off exhausted at cell {i} "
        f"(rho={this.rho}, theta={this.theta}, |defect|={np.max(np.abs(defect))})")


def sgs_sweep(field: Field, grid: Grid1D, src: ScenarioSource, walls,
              cfg: SmootherConfig, target_mass: float | None = None) -> Field:
    """Forward then backward Gauss-Seidel pass, updating cells in place so
    each local step sees the freshest neighbor values; the total-mass
    correction is applied once at the end of the sweep."""
    n = len(field)
    for i in range(n):
        field.cells[i] = richardson_step(i, field, grid, src, walls, cfg)
    for i in range(n - 1, -1, -1):
        field.cells[i] = richardson_step(i, field, grid, src, walls, cfg)
    if target_mass is not None:
        mass_correction(field, grid, target_mass)
    return field


def smooth(field: Field, steps: int, grid: Grid1D, src: ScenarioSource, walls,
           cfg: SmootherConfig, target_mass: float | None = None) -> Field:
    for _ in range(steps):
        field = sgs_sweep(field, grid, src, walls, cfg, target_mass)
    return field
