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

import functools
from dataclasses import dataclass, field
from typing import Callable, Literal, Tuple, Union

import numpy as np
from numpy.typing import NDArray

from ..constants import GRID_NODES, GRID_POWER, GRID_RHO_MAX, TWO_PI

__all__ = ("RadialGrid", "RadialProfile", "DecayClass", "default_grid")

DecayClass = Literal["schwartz_weighted", "polynomial"]
GridKey = Tuple[int, float, float]


@dataclass(frozen=True, eq=False)
class RadialGrid:
    """
    Graded radial nodes ``rho_j = rho_max (j / N) ** power`` for ``j = 1..N``.

    ``weights`` integrate ``f(rho) rho d rho`` on ``[0, rho_max]`` by the
    trapezoidal rule in the uniform variable ``s = j / N``.
    """

    size: int
    rho_max: float
    power: float
    nodes: NDArray[np.float64] = field(repr=False)
    weights: NDArray[np.float64] = field(repr=False)

    def __post_init__(self) -> None:
        if self.nodes.shape != (self.size,) or self.weights.shape != (self.size,):
            raise TypeError("nodes and weights must have shape ({},)".format(self.size))
        if np.any(np.diff(self.nodes) <= 0.0):
            raise ValueError("radial nodes must be strictly increasing")
        if np.any(self.weights <= 0.0):
            raise ValueError("quadrature weights must be positive")

    @classmethod
    def build(
        cls, size: int = GRID_NODES, rho_max: float = GRID_RHO_MAX, power: float = GRID_POWER
    ) -> "RadialGrid":
        return _build_grid(int(size), float(rho_max), float(power))

    @property
    def key(self) -> GridKey:
        return (self.size, self.rho_max, self.power)

    @property
    def rho(self) -> NDArray[np.float64]:
        return self.nodes

    def integrate(self, values: NDArray[np.float64]) -> float:
        """Return ``int f(rho) rho d rho``."""
        return float(np.dot(self.weights, values))

    def plane_integral(self, values: NDArray[np.float64]) -> float:
        """Return the plane integral of a radial function, ``2 pi int f rho d rho``."""
        return TWO_PI * self.integrate(values)

    def profile(
        self,
        func: Callable[[NDArray[np.float64]], NDArray[np.float64]],
        decay: DecayClass = "schwartz_weighted",
    ) -> "RadialProfile":
        return RadialProfile(self, np.asarray(func(self.nodes), dtype=np.float64), decay)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RadialGrid) and other.key == self.key

    def __hash__(self) -> int:
        return hash(self.key)


@functools.lru_cache(maxsize=16)
def _build_grid(size: int, rho_max: float, power: float) -> RadialGrid:
    s = np.arange(1, size + 1, dtype=np.float64) / size
    nodes = rho_max * s**power
    jacobian = power * rho_max * s ** (power - 1.0)
    weights = nodes * jacobian / size
    weights[-1] *= 0.5
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return RadialGrid(size, rho_max, power, nodes, weights)


def default_grid() -> RadialGrid:
    return RadialGrid.build()


@dataclass(frozen=True, eq=False)
class RadialProfile:
    grid: RadialGrid
    values: NDArray[np.float64] = field(repr=False)
    decay: DecayClass = "schwartz_weighted"

    def __post_init__(self) -> None:
        if self.values.shape != (self.grid.size,):
            raise TypeError("profile has {} samples for a grid of {}".format(
                self.values.shape, self.grid.size
            ))
        if not np.all(np.isfinite(self.values)):
            raise ValueError("profile values must be finite")
        if self.decay == "schwartz_weighted" and not self.is_decaying():
            raise ValueError(
                "profile tagged schwartz_weighted ends at {:.3e}".format(float(self.values[-1]))
            )

    def is_decaying(self, tolerance: float = 1e-12) -> bool:
        scale = float(np.max(np.abs(self.values)))
        return abs(float(self.values[-1])) <= tolerance * scale if scale > 0.0 else True

    def integrate(self) -> float:
        return self.grid.integrate(self.values)

    def moment(self, k: int) -> float:
        """Return ``int f(rho) rho**(k + 1) d rho``."""
        return self.grid.integrate(self.values * self.grid.nodes**k)

    def _coerce(self, other: Union["RadialProfile", float]) -> Union[NDArray[np.float64], float]:
        if isinstance(other, RadialProfile):
            if other.grid != self.grid:
                raise ValueError("profiles live on different grids")
            return other.values
        return float(other)

    def _join(self, other: Union["RadialProfile", float]) -> DecayClass:
        if isinstance(other, RadialProfile) and other.decay == "polynomial":
            return "polynomial"
        return self.decay

    def __add__(self, other: Union["RadialProfile", float]) -> "RadialProfile":
        return RadialProfile(self.grid, self.values + self._coerce(other), self._join(other))

    def __sub__(self, other: Union["RadialProfile", float]) -> "RadialProfile":
        return RadialProfile(self.grid, self.values - self._coerce(other), self._join(other))

    def __mul__(self, other: Union["RadialProfile", float]) -> "RadialProfile":
        weighted = isinstance(other, RadialProfile) and "schwartz_weighted" in (
            self.decay,
            other.decay,
        )
        decay: DecayClass = "schwartz_weighted" if weighted else self._join(other)
        return RadialProfile(self.grid, self.values * self._coerce(other), decay)

    __rmul__ = __mul__

    def __neg__(self) -> "RadialProfile":
        return RadialProfile(self.grid, -self.values, self.decay)
