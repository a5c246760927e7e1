"""Cell residual operator of the steady finite-volume discretization."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import change_basis
from .equilibrium import collision_frequency, equilibrium_coeffs
from .fluxes import numerical_flux
from .grid import Field, Grid1D, ScenarioSource
from .indices import OrderTable
from .states import MomentState
from .walls import Side, wall_flux

__all__ = ["CellRhs", "source_coeffs", "cell_residual", "cell_defect",
           "field_residuals"]


@dataclass
class CellRhs:
    """A known right-hand-side expansion, pinned to the basis it was built
    in; re-expressed into a cell's current basis on every evaluation."""

    coeffs: np.ndarray
    u: np.ndarray
    theta: float

    def in_basis(self, u, theta: float, table: OrderTable) -> np.ndarray:
        return change_basis(self.coeffs, self.u, self.theta, u, theta, table)


def source_coeffs(s: MomentState, src: ScenarioSource) -> np.ndarray:
    """G_alpha = sum_d F_d f_{alpha - e_d} + nu (f^E_alpha - f_alpha)."""
    table = s.table
    nu = collision_frequency(src.collision, s.rho, s.theta)
    out = nu * (equilibrium_coeffs(s, src.collision) - s.coeffs)
    for d in range(3):
        fd = src.force[d]
        if fd != 0.0:
            out += fd * table.shift_down(s.coeffs, d)
    return out


def cell_residual(f_prev: MomentState | None, f_this: MomentState,
                  f_next: MomentState | None, grid: Grid1D, i: int,
                  src: ScenarioSource, rhs_i: CellRhs | None = None,
                  wall_left=None, wall_right=None) -> np.ndarray:
    """Defect r_i - R_i (or -R_i without a right-hand side), in f_this's
    basis, where R_i = (F(f_i, f_{i+1}) - F(f_{i-1}, f_i)) / dx_i - G(f_i).

    A face adjacent to a wall (f_prev / f_next replaced by a BoundarySpec in
    wall_left / wall_right) uses the velocity-upwinded wall flux instead of
    the interior numerical flux.
    """
    table = f_this.table
    u, theta = f_this.u, f_this.theta
    if wall_right is not None:
        flux_r = wall_flux(f_this, wall_right, Side.RIGHT)
    else:
        flux_r = numerical_flux(f_this, f_next, u, theta, table)
    if wall_left is not None:
        flux_l = wall_flux(f_this, wall_left, Side.LEFT)
    else:
        flux_l = numerical_flux(f_prev, f_this, u, theta, table)
    dx = float(grid.nodes[i + 1] - grid.nodes[i])
    R = (flux_r - flux_l) / dx - source_coeffs(f_this, src)
    if rhs_i is None:
        return -R
    return rhs_i.in_basis(u, theta, table) - R


def cell_defect(field: Field, i: int, grid: Grid1D, src: ScenarioSource,
                walls, rhs_i: CellRhs | None = None) -> np.ndarray:
    """Defect of cell i against its current neighbors; domain ends use the
    wall flux, or periodic wrap-around when ``walls`` is None (test hook)."""
    n = len(field)
    wall_left = walls[0] if (walls is not None and i == 0) else None
    wall_right = walls[1] if (walls is not None and i == n - 1) else None
    prev = None if wall_left is not None else field.cells[(i - 1) % n]
    nxt = None if wall_right is not None else field.cells[(i + 1) % n]
    return cell_residual(prev, field.cells[i], nxt, grid, i, src, rhs_i,
                         wall_left, wall_right)


def field_residuals(field: Field, grid: Grid1D, src: ScenarioSource, walls,
                    rhs: list[CellRhs] | None = None) -> list[np.ndarray]:
    """Defect arrays r_i - R_i for every cell of a frozen field."""
    return [cell_defect(field, i, grid, src, walls,
                        None if rhs is None else rhs[i])
            for i in range(len(field))]
