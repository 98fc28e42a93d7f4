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
from typing import Tuple, Union

import numpy as np
from numpy.typing import NDArray

from ..constants import TWO_PI, Y_CUTOFF_FRACTION, Y_TAIL_FRACTION, Y_TAIL_RATIO
from ..errors import NonIntegrableError
from ..profiles.core import gaussian_G
from ..profiles.grid import RadialGrid
from .field import ModeField, VectorModeField

__all__ = (
    "absolute_moment",
    "mass_and_moment",
    "inner_Y",
    "inner_V",
    "norm_Y",
    "max_abs",
    "y_weights",
)

log: logging.Logger = logging.getLogger("seina.vortexpair.modes.quadrature")

AnyField = Union[ModeField, VectorModeField]


def mass_and_moment(f: ModeField) -> Tuple[float, NDArray[np.float64]]:
    """Return ``(m, M)``: the plane integral and the first moment vector of ``f``."""
    grid = f.grid
    mass = grid.plane_integral(f.cos[0])
    if f.max_mode < 1:
        return mass, np.zeros(2)
    rho = grid.nodes
    moment = np.array(
        [math.pi * grid.integrate(f.cos[1] * rho), math.pi * grid.integrate(f.sin[1] * rho)]
    )
    return mass, moment


def absolute_moment(f: ModeField, power: int = 0) -> float:
    """Mode-by-mode bound on ``int |f| |xi|**power d xi``, used as the scale for defects."""
    top = f.max_mode
    rows = np.abs(f.cos[: top + 1]) + np.abs(f.sin[: top + 1])
    density = np.sum(_mode_factors(top) * rows, axis=0) * f.grid.nodes**power
    return f.grid.integrate(density)


def y_weights(grid: RadialGrid) -> NDArray[np.float64]:
    """Quadrature weights for ``f rho d rho / G`` cut off at ``rho_max / 2``."""
    rho = grid.nodes
    inside = rho <= Y_CUTOFF_FRACTION * grid.rho_max
    out = np.zeros(grid.size)
    out[inside] = grid.weights[inside] / gaussian_G(rho[inside])
    return out


def _mode_factors(top: int) -> NDArray[np.float64]:
    factors = np.full(top + 1, math.pi)
    factors[0] = TWO_PI
    return factors[:, None]


def inner_Y(f: ModeField, g: ModeField) -> float:
    """``<f, g>_Y``, the pairing weighted by ``1/G``, summed mode by mode."""
    if f.grid != g.grid:
        raise ValueError("fields live on different grids")
    top = min(f.max_mode, g.max_mode)
    integrand = _mode_factors(top) * (
        f.cos[: top + 1] * g.cos[: top + 1] + f.sin[: top + 1] * g.sin[: top + 1]
    )
    weights = y_weights(f.grid)
    with np.errstate(over="ignore", invalid="ignore"):
        density = np.sum(integrand, axis=0) * weights
    if not np.all(np.isfinite(density)):
        raise NonIntegrableError("Y pairing overflows on the truncated grid")
    rho = f.grid.nodes
    cutoff = Y_CUTOFF_FRACTION * f.grid.rho_max
    tail = (rho > (1.0 - Y_TAIL_FRACTION) * cutoff) & (rho <= cutoff)
    peak = float(np.max(np.abs(density / f.grid.weights)))
    if peak > 0.0 and np.max(np.abs(density[tail] / f.grid.weights[tail])) > Y_TAIL_RATIO * peak:
        raise NonIntegrableError("Y pairing integrand does not decay faster than sqrt(G)")
    return float(np.sum(density))


def norm_Y(f: ModeField) -> float:
    return math.sqrt(max(inner_Y(f, f), 0.0))


def _inner_V_scalar(f: ModeField, g: ModeField) -> float:
    if f.grid != g.grid:
        raise ValueError("fields live on different grids")
    top = min(f.max_mode, g.max_mode)
    integrand = _mode_factors(top) * (
        f.cos[: top + 1] * g.cos[: top + 1] + f.sin[: top + 1] * g.sin[: top + 1]
    )
    return f.grid.integrate(np.sum(integrand, axis=0))


def inner_V(f: AnyField, g: AnyField) -> float:
    """Plain L2 pairing; for vector fields the component pairings are summed."""
    if isinstance(f, VectorModeField) and isinstance(g, VectorModeField):
        return _inner_V_scalar(f.c1, g.c1) + _inner_V_scalar(f.c2, g.c2)
    if isinstance(f, ModeField) and isinstance(g, ModeField):
        return _inner_V_scalar(f, g)
    raise TypeError("inner_V needs two ModeFields or two VectorModeFields")


def max_abs(f: AnyField) -> float:
    """Largest absolute value over the radial nodes and ``4 (max_mode + 1)`` directions."""
    if isinstance(f, VectorModeField):
        return max(max_abs(f.c1), max_abs(f.c2))
    return float(np.max(np.abs(f.samples(4 * f.max_mode + 4))))
