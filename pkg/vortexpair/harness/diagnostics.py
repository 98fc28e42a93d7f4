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
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.ndimage import map_coordinates
from scipy.optimize import curve_fit

from ..asymptotics.models import Circulations, EpsilonSeries
from ..constants import (
    CENTROID_MAX_ITER,
    CENTROID_RADIUS,
    CENTROID_TOLERANCE,
    TWO_PI,
    VIEW_SPLINE_ORDER,
)
from ..errors import DomainError, ExtractionError
from ..modes.field import ModeField, VectorModeField
from ..modes.operators import poisson_inverse
from ..modes.quadrature import inner_V, mass_and_moment
from ..profiles.core import gaussian_G, w0_weight
from ..profiles.grid import RadialGrid, default_grid
from ..solver.core import oseen_superposition
from ..solver.models import GridField

__all__ = (
    "LinearFit",
    "DriftFit",
    "energy_W0",
    "extract_centers",
    "fit_drift",
    "fit_through_origin",
    "l1_error",
    "measure_phase",
    "measured_perturbation",
    "self_similar_view",
)

log: logging.Logger = logging.getLogger("seina.vortexpair.harness.diagnostics")


def _wrap(delta: NDArray[np.float64], box: float) -> NDArray[np.float64]:
    return delta - box * np.round(delta / box)


def extract_centers(
    w: GridField,
    guesses: ArrayLike,
    gammas: Sequence[float],
    d: float = 1.0,
    radius: Optional[float] = None,
    tolerance: float = CENTROID_TOLERANCE,
    max_iter: int = CENTROID_MAX_ITER,
) -> NDArray[np.float64]:
    """
    Vorticity-weighted centroids over disks of radius ``0.4 d``, iterated from ``guesses``.

    Only vorticity with the sign of the respective circulation contributes.
    """
    starts = np.asarray(guesses, dtype=np.float64).reshape(-1, 2)
    radius = CENTROID_RADIUS * d if radius is None else radius
    x, y = w.grid.coordinates
    out = np.zeros_like(starts)
    for index, (start, gamma) in enumerate(zip(starts, gammas)):
        signed = np.maximum(math.copysign(1.0, gamma) * w.values, 0.0)
        center = start.copy()
        for iteration in range(1, max_iter + 1):
            dx = _wrap(x - center[0], w.box)
            dy = _wrap(y - center[1], w.box)
            weight = np.where(dx * dx + dy * dy <= radius * radius, signed, 0.0)
            total = float(np.sum(weight))
            if total <= 0.0:
                raise ExtractionError(
                    "no vorticity of the right sign near {}".format(center.tolist()), iteration
                )
            shift = np.array([np.sum(weight * dx), np.sum(weight * dy)]) / total
            center = center + shift
            if np.linalg.norm(_wrap(center - start, w.box)) > radius:
                raise ExtractionError(
                    "centroid {} escaped the disk around {}".format(
                        center.tolist(), start.tolist()
                    ),
                    iteration,
                )
            if np.linalg.norm(shift) < tolerance * d:
                break
        else:
            raise ExtractionError(
                "centroid {} did not settle at t={:.6g}".format(index + 1, w.time), max_iter
            )
        out[index] = center
    return out


def l1_error(
    w: GridField,
    c: Circulations,
    centers: ArrayLike,
    t: Optional[float] = None,
    nu: Optional[float] = None,
) -> float:
    """``int |w - sum_i Gamma_i / (4 pi nu t) exp(-|x - x_i|^2 / 4 nu t)| dx``."""
    t = w.time if t is None else t
    nu = w.nu if nu is None else nu
    reference = oseen_superposition(w.grid, centers, (c.gamma1, c.gamma2), nu, t)
    return float(np.sum(np.abs(w.values - reference)) * w.cell_area)


def self_similar_view(
    w: GridField,
    center: ArrayLike,
    theta: float,
    t: Optional[float] = None,
    nu: Optional[float] = None,
    grid: Optional[RadialGrid] = None,
    max_mode: int = 8,
    radius: Optional[float] = None,
) -> ModeField:
    """
    ``Omega_i(xi) = nu t w(x_i + sqrt(nu t) R(theta) xi)`` projected on angular modes.

    Samples farther than ``radius`` (default ``0.4``) from the centre are set to zero.
    """
    t = w.time if t is None else t
    nu = w.nu if nu is None else nu
    grid = grid or default_grid()
    radius = CENTROID_RADIUS if radius is None else radius
    scale = math.sqrt(nu * t)
    angles = 4 * (max_mode + 1)
    phi = TWO_PI * np.arange(angles) / angles
    rho = grid.nodes
    local = scale * rho[None, :]
    px = center[0] + local * np.cos(phi[:, None] + theta)
    py = center[1] + local * np.sin(phi[:, None] + theta)
    h = w.box / w.n
    columns = (px + 0.5 * w.box) / h
    rows = (py + 0.5 * w.box) / h
    samples = map_coordinates(
        np.asarray(w.values),
        [rows.ravel(), columns.ravel()],
        order=VIEW_SPLINE_ORDER,
        mode="grid-wrap",
    ).reshape(angles, grid.size)
    samples = np.where(local <= radius, samples, 0.0) * (nu * t)
    return ModeField.from_samples(grid, samples, max_mode)


def measure_phase(
    times: ArrayLike, centers: ArrayLike, c: Circulations
) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """
    Unwrapped direction of ``x_1 - x_2`` and its drift from the point-vortex law, both
    referenced to the first sample.
    """
    t = np.asarray(times, dtype=np.float64)
    positions = np.asarray(centers, dtype=np.float64)
    if len(t) < 3:
        raise DomainError("phase measurement needs at least 3 samples")
    delta = positions[:, 0] - positions[:, 1]
    theta = np.unwrap(np.arctan2(delta[:, 1], delta[:, 0]))
    rate = c.gamma / (TWO_PI * c.d**2)
    drift = theta - theta[0] - rate * (t - t[0])
    return theta, drift


def energy_W0(omega: Union[ModeField, VectorModeField]) -> float:
    """``1/2 (int omega^2 W_0 + <Delta^{-1} omega, omega>)``, summed over components."""
    if isinstance(omega, VectorModeField):
        return sum(energy_W0(component) for component in omega)
    weighted = omega.radial_multiply(w0_weight(omega.rho), "polynomial")
    return 0.5 * (inner_V(omega, weighted) + inner_V(poisson_inverse(omega), omega))


@dataclass(frozen=True)
class LinearFit:
    slope: float
    residual: float
    relative_residual: float


def fit_through_origin(x: ArrayLike, y: ArrayLike) -> LinearFit:
    """Least-squares ``y = slope x``; the relative residual is taken against ``|y|``."""
    xs = np.asarray(x, dtype=np.float64)
    ys = np.asarray(y, dtype=np.float64)
    if xs.shape != ys.shape or xs.size == 0:
        raise DomainError("a linear fit needs two non-empty samples of equal length")
    denominator = float(np.dot(xs, xs))
    if denominator == 0.0:
        raise DomainError("a fit through the origin needs a nonzero abscissa")
    slope = float(np.dot(xs, ys)) / denominator
    residual = float(np.linalg.norm(ys - slope * xs))
    size = float(np.linalg.norm(ys))
    return LinearFit(slope, residual, residual / size if size > 0.0 else 0.0)


@dataclass(frozen=True)
class DriftFit:
    """``drift(t) = coefficient (t^exponent - t_0^exponent)``."""

    coefficient: float
    exponent: float
    cubic_coefficient: float


def fit_drift(times: ArrayLike, drift: ArrayLike) -> DriftFit:
    """
    Fit the phase drift referenced to the first sample.

    The exponent comes from a free two-parameter fit; ``cubic_coefficient`` is the
    least-squares coefficient with the exponent pinned to 3.
    """
    t = np.asarray(times, dtype=np.float64)
    y = np.asarray(drift, dtype=np.float64)
    if len(t) < 3 or t[0] <= 0.0:
        raise DomainError("a drift fit needs 3 samples at positive times")
    start = t[0]
    cubic = fit_through_origin(t**3 - start**3, y).slope

    def _law(x: NDArray[np.float64], a: float, p: float) -> NDArray[np.float64]:
        return a * (np.power(x / start, p) - 1.0)

    guess = cubic * start**3 if cubic != 0.0 else 1e-12
    try:
        (scaled, exponent), _ = curve_fit(_law, t, y, p0=(guess, 3.0), maxfev=10000)
    except RuntimeError as error:
        raise DomainError("drift fit did not converge: {}".format(error)) from error
    return DriftFit(float(scaled / start**exponent), float(exponent), cubic)


def measured_perturbation(
    w: GridField,
    centers: ArrayLike,
    theta: float,
    series: EpsilonSeries,
    max_mode: Optional[int] = None,
) -> VectorModeField:
    """
    ``Omega_measured - Omega_a`` in both self-similar frames, with the truncation mass of
    each view removed along ``G``.
    """
    grid = series.grid
    positions = np.asarray(centers, dtype=np.float64)
    nu = w.nu
    epsilon = math.sqrt(nu * w.time) / series.circulations.d
    reference = series.vorticity(epsilon, nu)
    top = max_mode or max(component.max_mode for component in reference) + 2
    gauss = ModeField.radial(grid, gaussian_G(grid.nodes))
    parts: List[ModeField] = []
    for i, component in enumerate(reference):
        view = self_similar_view(w, positions[i], theta, grid=grid, max_mode=top)
        difference = view - component
        defect, _ = mass_and_moment(difference)
        log.debug("View %s at t=%.6g has mass defect %.3e.", i + 1, w.time, defect)
        parts.append(difference - gauss * defect)
    return VectorModeField(parts[0], parts[1])
