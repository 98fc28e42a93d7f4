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
from typing import List, Optional, Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.integrate import RK45

from ..constants import COLLISION_FRACTION, INTEGRATOR_TOLERANCE, TWO_PI
from ..errors import CollisionError, DomainError
from .models import Trajectory

__all__ = (
    "integrate_n_body",
    "kirchhoff_hamiltonian",
    "linear_impulse",
    "minimum_distance",
    "point_vortex_rhs",
)

log: logging.Logger = logging.getLogger("seina.vortexpair.trajectories.point_vortex")


def _pairwise(z: NDArray[np.float64]) -> NDArray[np.float64]:
    return z[:, None, :] - z[None, :, :]


def minimum_distance(z: ArrayLike) -> float:
    points = np.asarray(z, dtype=np.float64).reshape(-1, 2)
    if len(points) < 2:
        return math.inf
    distances = np.linalg.norm(_pairwise(points), axis=-1)
    return float(np.min(distances[np.triu_indices(len(points), 1)]))


def point_vortex_rhs(z: ArrayLike, gammas: Sequence[float]) -> NDArray[np.float64]:
    """
    Helmholtz-Kirchhoff velocities
    ``dz_i/dt = (1 / 2 pi) sum_{j != i} Gamma_j (z_i - z_j)^perp / |z_i - z_j|^2``.
    """
    points = np.asarray(z, dtype=np.float64).reshape(-1, 2)
    weights = np.asarray(gammas, dtype=np.float64)
    if weights.shape != (len(points),):
        raise DomainError("expected {} circulations, got {}".format(len(points), len(weights)))
    delta = _pairwise(points)
    square = np.sum(delta * delta, axis=-1)
    np.fill_diagonal(square, np.inf)
    if np.any(square == 0.0):
        raise DomainError("point vortices must occupy distinct positions")
    perp = np.stack((-delta[..., 1], delta[..., 0]), axis=-1)
    return np.einsum("j,ijk->ik", weights, perp / square[..., None]) / TWO_PI


def kirchhoff_hamiltonian(z: ArrayLike, gammas: Sequence[float]) -> float:
    """``sum_{i<j} Gamma_i Gamma_j log |z_i - z_j|``."""
    points = np.asarray(z, dtype=np.float64).reshape(-1, 2)
    weights = np.asarray(gammas, dtype=np.float64)
    upper = np.triu_indices(len(points), 1)
    distances = np.linalg.norm(_pairwise(points), axis=-1)[upper]
    return float(np.sum(np.outer(weights, weights)[upper] * np.log(distances)))


def linear_impulse(z: ArrayLike, gammas: Sequence[float]) -> NDArray[np.float64]:
    """``sum_i Gamma_i z_i``."""
    points = np.asarray(z, dtype=np.float64).reshape(-1, 2)
    return np.asarray(gammas, dtype=np.float64) @ points


def integrate_n_body(
    z0: ArrayLike,
    gammas: Sequence[float],
    t_end: float,
    tol: float = INTEGRATOR_TOLERANCE,
    max_step: Optional[float] = None,
) -> Trajectory:
    """
    Advance the point-vortex system with the Dormand-Prince 5(4) pair.

    Every accepted step is recorded. A pair closing below ``COLLISION_FRACTION`` of the
    initial minimum distance aborts with :class:`CollisionError`.
    """
    start = np.asarray(z0, dtype=np.float64).reshape(-1, 2)
    weights = list(gammas)
    if t_end < 0.0:
        raise DomainError("t_end must be non-negative")
    if tol <= 0.0:
        raise DomainError("tolerance must be positive")
    initial = minimum_distance(start)
    if initial == 0.0:
        raise DomainError("point vortices must occupy distinct positions")
    floor = COLLISION_FRACTION * initial
    scale = max(float(np.max(np.abs(start))), initial)

    def _rhs(_: float, y: NDArray[np.float64]) -> NDArray[np.float64]:
        return point_vortex_rhs(y, weights).ravel()

    times: List[float] = [0.0]
    states: List[NDArray[np.float64]] = [start.copy()]
    if t_end > 0.0:
        integrator = RK45(
            _rhs,
            0.0,
            start.ravel(),
            t_end,
            rtol=tol,
            atol=tol * scale,
            max_step=max_step or np.inf,
        )
        while integrator.status == "running":
            message = integrator.step()
            if integrator.status == "failed":
                raise DomainError("point-vortex integration failed: {}".format(message))
            y = integrator.y.reshape(-1, 2)
            distance = minimum_distance(y)
            if distance < floor:
                raise CollisionError(float(integrator.t), distance)
            times.append(float(integrator.t))
            states.append(y.copy())
    log.debug("Integrated %s vortices to t=%s in %s steps.", len(start), t_end, len(times) - 1)
    return Trajectory(np.asarray(times), np.stack(states), tuple(float(g) for g in weights))
