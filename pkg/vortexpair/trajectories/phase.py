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
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..asymptotics.models import Circulations, EpsilonSeries
from ..asymptotics.phase import BetaCoefficients
from ..constants import PHASE_VALIDITY_CAP, TWO_PI
from .models import PairState

__all__ = (
    "corrected_phase",
    "pair_centers",
    "period",
    "predicted_state",
    "two_vortex_exact",
)

log: logging.Logger = logging.getLogger("seina.vortexpair.trajectories.phase")

Betas = Union[BetaCoefficients, Sequence[float]]


def _normalized(beta: Betas) -> Tuple[float, ...]:
    if isinstance(beta, BetaCoefficients):
        return beta.normalized
    return tuple(float(b) for b in beta)


def _rate(c: Circulations) -> float:
    return c.gamma / (TWO_PI * c.d**2)


def pair_centers(c: Circulations, theta: float, alpha: float = 1.0) -> NDArray[np.float64]:
    """``x_i = alpha l_i (cos theta, sin theta)``."""
    direction = np.array([math.cos(theta), math.sin(theta)])
    return alpha * np.array([c.ell1 * direction, c.ell2 * direction])


def period(c: Circulations) -> float:
    return 4.0 * math.pi**2 * c.d**2 / abs(c.gamma)


def two_vortex_exact(c: Circulations, t: float) -> PairState:
    """Rigid rotation of the point pair at ``Gamma / (2 pi d^2)``."""
    theta = _rate(c) * t
    return PairState(pair_centers(c, theta), theta, 1.0, t)


def corrected_phase(
    c: Circulations, beta: Betas, nu: float, t: ArrayLike
) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Phase and angular velocity with the viscous corrections,

    ``theta = (Gamma / 2 pi d^2) (t + sum_{k>=4} 2 beta_k nu^(k/2) t^(k/2+1) / ((k+2) d^k))``.

    ``beta`` holds normalized coefficients; entries below ``k = 4`` are not used.
    """
    times = np.asarray(t, dtype=np.float64)
    coefficients = _normalized(beta)
    if nu < 0.0:
        raise ValueError("viscosity must be non-negative")
    horizon = float(np.max(np.abs(times))) if times.size else 0.0
    if nu * horizon / c.d**2 > PHASE_VALIDITY_CAP:
        log.warning(
            "nu t / d^2 = %.3g exceeds the validity cap %.3g.",
            nu * horizon / c.d**2,
            PHASE_VALIDITY_CAP,
        )
    rate = _rate(c)
    theta = times.copy()
    omega = np.ones_like(times)
    for k in range(4, len(coefficients)):
        b = coefficients[k]
        if b == 0.0:
            continue
        scaled = (nu * np.abs(times)) ** (0.5 * k) / c.d**k
        theta = theta + 2.0 * b * scaled * times / (k + 2)
        omega = omega + b * scaled
    return rate * theta, rate * omega


def predicted_state(
    c: Circulations,
    beta: Betas,
    nu: float,
    t: float,
    series: Optional[EpsilonSeries] = None,
) -> PairState:
    """Centres predicted by the corrected phase; ``alpha`` follows ``series`` when given."""
    theta, _ = corrected_phase(c, beta, nu, t)
    alpha = 1.0
    if series is not None and nu > 0.0 and t > 0.0:
        alpha = series.alpha(math.sqrt(nu * t) / c.d)
    value = float(theta)
    return PairState(pair_centers(c, value, alpha), value, alpha, t)
