"""
MIT License

Copyright (c) 2024-present japandotorg

Permission is hereby granted, free of charge, to any person obtaining a copy
of this software and associated documentation files (the "Software"), to deal
in the Software without restriction, including without limitation the rights
to use, copy, modify, merge, publish, distribute, sublicense, and/or sell
copies of the Software, and to permit persons to whom the Software is
furnished to do so, subject to the following conditions:

The above copyright notice and this permission notice shall be included in all
copies or substantial portions of the Software.

THE SOFTWARE IS PROVIDED "AS IS", WITHOUT WARRANTY OF ANY KIND, EXPRESS OR
IMPLIED, INCLUDING BUT NOT LIMITED TO THE WARRANTIES OF MERCHANTABILITY,
FITNESS FOR A PARTICULAR PURPOSE AND NONINFRINGEMENT. IN NO EVENT SHALL THE
AUTHORS OR COPYRIGHT HOLDERS BE LIABLE FOR ANY CLAIM, DAMAGES OR OTHER
LIABILITY, WHETHER IN AN ACTION OF CONTRACT, TORT OR OTHERWISE, ARISING FROM,
OUT OF OR IN CONNECTION WITH THE SOFTWARE OR THE USE OR OTHER DEALINGS IN THE
SOFTWARE.
"""

from __future__ import annotations

from typing import Optional

from ..constants import MAX_EXPANSION_ORDER
from ..modes.algebra import poisson_bracket
from ..modes.field import ModeField, VectorModeField
from ..modes.operators import apply_L, poisson_inverse
from .interaction import shifted_stream
from .models import EpsilonSeries, VortexIndex

__all__ = ("residual", "total_stream")


def total_stream(
    series: EpsilonSeries,
    i: VortexIndex,
    epsilon: float,
    nu: float,
    shift_order: Optional[int] = None,
) -> ModeField:
    """Self stream, shifted partner stream and frame terms seen by vortex ``i``."""
    c = series.circulations
    grid = series.grid
    omega = series.vorticity(epsilon, nu)
    partner: VortexIndex = 2 if i == 1 else 1
    kappa = c.kappa(i)
    alpha = series.alpha(epsilon)
    rate = series.theta_dot(epsilon, nu)
    order = shift_order or min(series.order + 2, MAX_EXPANSION_ORDER)
    rho = grid.nodes
    psi = poisson_inverse(omega.component(i))
    psi = psi + shifted_stream(omega.component(partner), kappa * epsilon / alpha, order)
    psi = psi + ModeField.radial(grid, 0.5 * epsilon**2 * rate * rho * rho, "polynomial")
    factor = epsilon * kappa * c.partner(i) / c.gamma
    psi = psi + ModeField.xi(grid, 1) * (factor * rate * alpha)
    psi = psi + ModeField.xi(grid, 2) * (factor * series.alpha_dot(epsilon, nu))
    return psi


def residual(
    series: EpsilonSeries, epsilon: float, nu: float, shift_order: Optional[int] = None
) -> VectorModeField:
    """
    ``t d_t Omega - L Omega + nu^{-1} {Psi, Omega}`` for the truncated series at ``(eps, nu)``.

    ``t d_t`` acts on ``eps^k`` as multiplication by ``k / 2``.
    """
    omega = series.vorticity(epsilon, nu)
    growth = VectorModeField.zeros(series.grid)
    for k in range(1, series.order + 1):
        growth = growth + (series.euler[k] + series.viscous[k] * nu) * (0.5 * k * epsilon**k)

    def _component(i: VortexIndex) -> ModeField:
        field = omega.component(i)
        psi = total_stream(series, i, epsilon, nu, shift_order)
        return growth.component(i) - apply_L(field) + poisson_bracket(psi, field) * (1.0 / nu)

    return VectorModeField(_component(1), _component(2))
