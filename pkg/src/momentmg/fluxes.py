"""Advection flux in the local basis and the interface numerical flux."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .basis import change_basis, max_wave_speed
from .indices import OrderTable
from .states import MomentState

__all__ = ["advection_flux_coeffs", "flux_from_coeffs", "numerical_flux"]


@lru_cache(maxsize=None)
def _flux_plan(M: int):
    """(lower index map, safe raise map, closure-weighted raise factors)."""
    table = OrderTable(M)
    lower = table.minus[0]
    raise_ = table.plus[0]
    # coefficient (alpha_1 + 1) on f_{alpha + e_1}; zeroed at the top degree
    factor = (table.alphas[:, 0] + 1.0) * (table.degree < M) * (raise_ >= 0)
    return lower, np.where(raise_ >= 0, raise_, 0), factor


def flux_from_coeffs(coeffs: np.ndarray, u1: float, theta: float, table: OrderTable) -> np.ndarray:
    """Phi_alpha = theta f_{alpha-e1} + u1 f_alpha + (1-delta_{|alpha|,M})
    (alpha_1+1) f_{alpha+e1}, in the basis carrying ``(u1, theta)``."""
    lower, raise_safe, factor = _flux_plan(table.M)
    out = u1 * coeffs + factor * coeffs[raise_safe]
    out += theta * np.where(lower >= 0, coeffs[lower], 0.0)
    return out


def advection_flux_coeffs(s: MomentState) -> np.ndarray:
    return flux_from_coeffs(s.coeffs, float(s.u[0]), s.theta, s.table)


def numerical_flux(left: MomentState, right: MomentState,
                   target_u, target_theta: float,
                   table: OrderTable | None = None) -> np.ndarray:
    """Local Lax-Friedrichs interface flux expressed in the target basis:
    0.5 (Phi(L) + Phi(R)) - 0.5 lambda (R - L), with lambda the larger of
    the two states' characteristic speed bounds."""
    if table is None:
        table = left.table
    wl = change_basis(left.coeffs, left.u, left.theta, target_u, target_theta, table)
    wr = change_basis(right.coeffs, right.u, right.theta, target_u, target_theta, table)
    lam = max(max_wave_speed(left), max_wave_speed(right))
    u1 = float(target_u[0])
    phi = flux_from_coeffs(wl + wr, u1, target_theta, table)
    return 0.5 * phi - 0.5 * lam * (wr - wl)
