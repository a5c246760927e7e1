"""Order-transfer operators between levels of the moment hierarchy.

Restriction is degree truncation (a prefix slice under the graded index
order), which keeps the expansion center and therefore the conservative
moments.  Prolongation zero-pads the coarse correction back to the fine
order and re-centers everything onto the corrected conservative moments.
"""

from __future__ import annotations

import numpy as np

from .basis import change_basis, conservative_moments
from .errors import PositivityError
from .grid import Field, Grid1D, ScenarioSource
from .indices import OrderTable, moment_count
from .residual import CellRhs, field_residuals
from .states import MomentState

__all__ = ["restrict_state", "restrict_residual", "zero_pad", "coarse_rhs",
           "prolong_correction"]


def restrict_state(fine: MomentState, m: int) -> MomentState:
    """Truncate to order m < M; expansion center unchanged, so the result
    is admissible and shares the fine state's conservative moments."""
    if not 2 <= m < fine.order:
        raise ValueError(f"restriction target {m} not in [2, {fine.order})")
    return MomentState(m, fine.u.copy(), fine.theta,
                       fine.coeffs[:moment_count(m)].copy())


def restrict_residual(fine_res: np.ndarray, m: int) -> np.ndarray:
    return np.asarray(fine_res)[:moment_count(m)].copy()


def zero_pad(coeffs: np.ndarray, M: int) -> np.ndarray:
    out = np.zeros(moment_count(M))
    out[:len(coeffs)] = coeffs
    return out


def coarse_rhs(fine_field: Field, fine_defects: list[np.ndarray],
               coarse_field: Field, grid: Grid1D, src: ScenarioSource,
               walls) -> list[CellRhs]:
    """Right-hand side of the lower-order problem,
    r_m = R_m(restricted field) + truncation of (r_M - R_M(fine field)),
    pinned cellwise to the restricted states' bases."""
    m = coarse_field.order
    coarse_ops = field_residuals(coarse_field, grid, src, walls)  # = -R_m
    out = []
    for cell, neg_Rm, fine_def in zip(coarse_field.cells, coarse_ops, fine_defects):
        r = -neg_Rm + restrict_residual(fine_def, m)
        out.append(CellRhs(r, cell.u.copy(), cell.theta))
    return out


def prolong_correction(fine: MomentState, coarse_new: MomentState,
                       coarse_old: MomentState) -> MomentState:
    """Apply the coarse-level increment to a fine state.

    The increment (new minus old, compared in the new coarse basis) is
    zero-padded to the fine order; its conservative moments are added to the
    fine state's to fix the corrected center, and both contributions are
    re-expressed there and summed.

    Raises :class:`~momentmg.errors.PositivityError` via ValueError-style
    checks when the corrected density or temperature is non-positive; the
    caller decides whether to skip the cell.
    """
    M = fine.order
    table = OrderTable(M)
    old_in_new = change_basis(coarse_old.coeffs, coarse_old.u, coarse_old.theta,
                              coarse_new.u, coarse_new.theta, coarse_new.table)
    delta = zero_pad(coarse_new.coeffs - old_in_new, M)

    rho_f, mom_f, en_f = conservative_moments(fine.coeffs, fine.u, fine.theta, table)
    rho_d, mom_d, en_d = conservative_moments(delta, coarse_new.u, coarse_new.theta, table)
    rho = rho_f + rho_d
    if rho <= 0.0:
        raise PositivityError(f"corrected density {rho} not positive")
    u_hat = (mom_f + mom_d) / rho
    theta_hat = (en_f + en_d - rho * (u_hat @ u_hat)) / (3.0 * rho)
    if theta_hat <= 0.0:
        raise PositivityError(f"corrected temperature {theta_hat} not positive")

    w = change_basis(fine.coeffs, fine.u, fine.theta, u_hat, theta_hat, table)
    w += change_basis(delta, coarse_new.u, coarse_new.theta, u_hat, theta_hat, table)
    w[table.r_unit] = 0.0
    w[table.r_unit2] -= w[table.r_unit2].sum() / 3.0
    return MomentState(M, u_hat, theta_hat, w)
