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

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

from ..errors import UnsupportedOrderError
from ..modes.field import ModeField
from ..modes.quadrature import inner_V
from ..profiles.grid import RadialProfile
from .core import build_order2
from .models import Circulations, EpsilonSeries

__all__ = (
    "BetaCoefficients",
    "beta_coefficients",
    "beta4_closed_form",
    "beta4_dual_form",
    "alpha_series",
    "theta_dot",
)

log: logging.Logger = logging.getLogger("seina.vortexpair.asymptotics.phase")


@dataclass(frozen=True)
class BetaCoefficients:
    """
    Phase coefficients in both conventions.

    ``raw[k] = -thetaE_k`` and ``normalized[k] = -(2 pi / Gamma) thetaE_k``, so the
    physical angular velocity is ``(Gamma / 2 pi) (1 + sum_k normalized[k] (nu t)^(k/2))``.
    """

    raw: Tuple[float, ...]
    normalized: Tuple[float, ...]
    beta4_closed: float
    warnings: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if len(self.raw) != len(self.normalized):
            raise TypeError("raw and normalized coefficient lists must have equal length")

    @property
    def beta4(self) -> float:
        return self.normalized[4]


def beta4_closed_form(c: Circulations, euler2: RadialProfile) -> float:
    """``pi (Gamma_1^2 + Gamma_2^2) / (Gamma_1 Gamma_2) int E_2 rho^3 d rho``."""
    return math.pi * (c.gamma1**2 + c.gamma2**2) / c.product * euler2.moment(2)


def beta4_dual_form(c: Circulations, euler2: RadialProfile) -> float:
    """Same constant through ``(1 / 2 pi) int (xi_1^2 - xi_2^2) E_2 cos(2 t) d xi``."""
    grid = euler2.grid
    quadratic = ModeField.harmonic(grid, 2, "cos")
    profile = ModeField.from_profile(grid, 2, "cos", euler2)
    half_moment = inner_V(quadratic, profile) / (2.0 * math.pi)
    return 2.0 * math.pi * (c.gamma1**2 + c.gamma2**2) / c.product * half_moment


def beta_coefficients(
    series: EpsilonSeries, euler2: Optional[RadialProfile] = None
) -> BetaCoefficients:
    if series.order < 4:
        raise UnsupportedOrderError(
            "phase coefficients need a series of order >= 4, got {}".format(series.order)
        )
    c = series.circulations
    if euler2 is None:
        euler2, _ = build_order2(c, series.grid)
    closed = beta4_closed_form(c, euler2)
    raw = [-t for t in series.theta_dot_euler]
    # the rate of order 4 only exists from order 5 on
    if len(raw) < 5:
        raw.extend([0.0] * (5 - len(raw)))
        raw[4] = closed * c.gamma / (2.0 * math.pi)
    scale = 2.0 * math.pi / c.gamma
    normalized = [scale * b for b in raw]
    warnings = tuple(c.validity_flags())
    for warning in warnings:
        log.warning("Phase coefficients for %s: %s.", c, warning)
    return BetaCoefficients(tuple(raw), tuple(normalized), closed, warnings)


def alpha_series(series: EpsilonSeries, epsilon: float) -> float:
    return series.alpha(epsilon)


def theta_dot(series: EpsilonSeries, epsilon: float, nu: float) -> float:
    """Angular velocity of the rotating frame; the physical pair turns the other way."""
    return series.theta_dot(epsilon, nu)
