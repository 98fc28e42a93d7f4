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

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterator, Literal, Optional, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.interpolate import CubicSpline
from typing_extensions import Self

from ..profiles.grid import DecayClass, RadialGrid, RadialProfile

__all__ = ("ModeField", "VectorModeField", "Parity")

Parity = Literal["cos", "sin"]
Number = Union[int, float]


def _join(a: DecayClass, b: DecayClass) -> DecayClass:
    return "polynomial" if "polynomial" in (a, b) else "schwartz_weighted"


@dataclass(frozen=True, eq=False)
class ModeField:
    """
    A function on the plane as a finite Fourier series in the polar angle,
    ``f = c_0(rho) + sum_n c_n(rho) cos(n theta) + s_n(rho) sin(n theta)``.

    ``cos`` and ``sin`` have shape ``(max_mode + 1, grid.size)``; ``sin[0]`` is zero.
    """

    grid: RadialGrid
    cos: NDArray[np.float64] = field(repr=False)
    sin: NDArray[np.float64] = field(repr=False)
    decay: DecayClass = "schwartz_weighted"

    def __post_init__(self) -> None:
        if self.cos.ndim != 2 or self.cos.shape != self.sin.shape:
            raise TypeError("cos and sin tables must share a (modes, nodes) shape")
        if self.cos.shape[1] != self.grid.size:
            raise TypeError("mode tables do not match the radial grid")
        if np.any(self.sin[0] != 0.0):
            raise ValueError("mode 0 carries no sine part")

    @property
    def max_mode(self) -> int:
        return self.cos.shape[0] - 1

    @property
    def rho(self) -> NDArray[np.float64]:
        return self.grid.nodes

    @classmethod
    def zeros(
        cls, grid: RadialGrid, max_mode: int = 0, decay: DecayClass = "schwartz_weighted"
    ) -> Self:
        shape = (max_mode + 1, grid.size)
        return cls(grid, np.zeros(shape), np.zeros(shape), decay)

    @classmethod
    def from_profile(
        cls,
        grid: RadialGrid,
        n: int,
        parity: Parity,
        values: Union[ArrayLike, RadialProfile],
        decay: Optional[DecayClass] = None,
    ) -> Self:
        if isinstance(values, RadialProfile):
            decay = decay or values.decay
            values = values.values
        if n == 0 and parity == "sin":
            raise ValueError("mode 0 carries no sine part")
        out = cls.zeros(grid, n, decay or "schwartz_weighted")
        (out.cos if parity == "cos" else out.sin)[n] = np.asarray(values, dtype=np.float64)
        return out

    @classmethod
    def radial(
        cls,
        grid: RadialGrid,
        values: Union[ArrayLike, RadialProfile],
        decay: Optional[DecayClass] = None,
    ) -> Self:
        return cls.from_profile(grid, 0, "cos", values, decay)

    @classmethod
    def xi(cls, grid: RadialGrid, j: int) -> Self:
        """The coordinate function ``xi_1`` or ``xi_2``."""
        return cls.from_profile(grid, 1, "cos" if j == 1 else "sin", grid.nodes, "polynomial")

    @classmethod
    def harmonic(cls, grid: RadialGrid, n: int, parity: Parity) -> Self:
        if n == 0:
            return cls.radial(grid, np.ones(grid.size), "polynomial")
        return cls.from_profile(grid, n, parity, grid.nodes**n, "polynomial")

    def profile(self, n: int, parity: Parity = "cos") -> NDArray[np.float64]:
        if n > self.max_mode:
            return np.zeros(self.grid.size)
        return (self.cos if parity == "cos" else self.sin)[n]

    @property
    def entries(self) -> Dict[Tuple[int, Parity], RadialProfile]:
        out: Dict[Tuple[int, Parity], RadialProfile] = {}
        for n in range(self.max_mode + 1):
            for parity, table in (("cos", self.cos), ("sin", self.sin)):
                if np.any(table[n] != 0.0):
                    out[(n, parity)] = RadialProfile(self.grid, table[n].copy(), self.decay)
        return out

    def padded(self, max_mode: int) -> Self:
        if max_mode == self.max_mode:
            return self
        shape = (max_mode + 1, self.grid.size)
        cos = np.zeros(shape)
        sin = np.zeros(shape)
        keep = min(max_mode, self.max_mode) + 1
        cos[:keep] = self.cos[:keep]
        sin[:keep] = self.sin[:keep]
        return type(self)(self.grid, cos, sin, self.decay)

    def truncated(self) -> Self:
        """Drop trailing modes that are identically zero."""
        top = self.max_mode
        while top > 0 and not np.any(self.cos[top]) and not np.any(self.sin[top]):
            top -= 1
        return self.padded(top)

    def map_profiles(
        self, func: Callable[[int, NDArray[np.float64]], NDArray[np.float64]]
    ) -> Self:
        cos = np.array([func(n, row) for n, row in enumerate(self.cos)])
        sin = np.array([func(n, row) for n, row in enumerate(self.sin)])
        sin[0] = 0.0
        return type(self)(self.grid, cos, sin, self.decay)

    def radial_multiply(
        self, values: NDArray[np.float64], decay: Optional[DecayClass] = None
    ) -> Self:
        return type(self)(self.grid, self.cos * values, self.sin * values, decay or self.decay)

    def cos_part(self) -> Self:
        return type(self)(self.grid, self.cos.copy(), np.zeros_like(self.sin), self.decay)

    def sin_part(self) -> Self:
        return type(self)(self.grid, np.zeros_like(self.cos), self.sin.copy(), self.decay)

    def mode_part(self, n: int) -> Self:
        cos = np.zeros_like(self.cos)
        sin = np.zeros_like(self.sin)
        if n <= self.max_mode:
            cos[n] = self.cos[n]
            sin[n] = self.sin[n]
        return type(self)(self.grid, cos, sin, self.decay)

    def without_mode(self, n: int) -> Self:
        return self - self.mode_part(n)

    def max_abs(self) -> float:
        return float(max(np.max(np.abs(self.cos)), np.max(np.abs(self.sin))))

    def samples(self, angles: int) -> NDArray[np.float64]:
        """Values on ``angles`` equispaced directions, shape ``(angles, nodes)``."""
        if angles <= 2 * self.max_mode:
            raise ValueError("need more than {} angles".format(2 * self.max_mode))
        spectrum = np.zeros((angles // 2 + 1, self.grid.size), dtype=np.complex128)
        spectrum[0] = angles * self.cos[0]
        spectrum[1 : self.max_mode + 1] = 0.5 * angles * (self.cos[1:] - 1j * self.sin[1:])
        return np.fft.irfft(spectrum, n=angles, axis=0)

    @classmethod
    def from_samples(
        cls,
        grid: RadialGrid,
        values: NDArray[np.float64],
        max_mode: int,
        decay: DecayClass = "schwartz_weighted",
    ) -> Self:
        angles = values.shape[0]
        if angles <= 2 * max_mode:
            raise ValueError("{} angles cannot resolve mode {}".format(angles, max_mode))
        spectrum = np.fft.rfft(values, axis=0)
        cos = np.zeros((max_mode + 1, grid.size))
        sin = np.zeros((max_mode + 1, grid.size))
        cos[0] = spectrum[0].real / angles
        cos[1:] = 2.0 * spectrum[1 : max_mode + 1].real / angles
        sin[1:] = -2.0 * spectrum[1 : max_mode + 1].imag / angles
        return cls(grid, cos, sin, decay)

    def evaluate(self, points: ArrayLike) -> NDArray[np.float64]:
        """Evaluate at plane points ``points[..., 2]`` by cubic interpolation in ``rho``."""
        pts = np.asarray(points, dtype=np.float64)
        rho = np.hypot(pts[..., 0], pts[..., 1])
        theta = np.arctan2(pts[..., 1], pts[..., 0])
        out = np.zeros(rho.shape)
        nodes = self.grid.nodes
        for n in range(self.max_mode + 1):
            for table, trig in ((self.cos, np.cos), (self.sin, np.sin)):
                row = table[n]
                if not np.any(row):
                    continue
                # mirror across the origin so the spline sees a smooth function
                sign = 1.0 if n % 2 == 0 else -1.0
                x = np.concatenate((-nodes[::-1], nodes))
                y = np.concatenate((sign * row[::-1], row))
                out += CubicSpline(x, y)(rho) * trig(n * theta)
        return out

    def _binary(self, other: "ModeField", sign: float) -> Self:
        if other.grid != self.grid:
            raise ValueError("fields live on different grids")
        top = max(self.max_mode, other.max_mode)
        a = self.padded(top)
        b = other.padded(top)
        return type(self)(
            self.grid, a.cos + sign * b.cos, a.sin + sign * b.sin, _join(self.decay, other.decay)
        )

    def __add__(self, other: "ModeField") -> Self:
        return self._binary(other, 1.0)

    def __sub__(self, other: "ModeField") -> Self:
        return self._binary(other, -1.0)

    def __mul__(self, scalar: Number) -> Self:
        return type(self)(self.grid, self.cos * scalar, self.sin * scalar, self.decay)

    __rmul__ = __mul__

    def __truediv__(self, scalar: Number) -> Self:
        return self * (1.0 / scalar)

    def __neg__(self) -> Self:
        return self * -1.0


@dataclass(frozen=True, eq=False)
class VectorModeField:
    """The pair ``(Omega_1, Omega_2)`` of fields attached to the two vortices."""

    c1: ModeField
    c2: ModeField

    def __post_init__(self) -> None:
        if not isinstance(self.c1, ModeField) or not isinstance(self.c2, ModeField):
            raise TypeError("VectorModeField components must be ModeField instances")
        if self.c1.grid != self.c2.grid:
            raise ValueError("both components must share one radial grid")

    @property
    def grid(self) -> RadialGrid:
        return self.c1.grid

    @classmethod
    def zeros(cls, grid: RadialGrid, max_mode: int = 0) -> Self:
        return cls(ModeField.zeros(grid, max_mode), ModeField.zeros(grid, max_mode))

    @classmethod
    def of(cls, first: ModeField, second: ModeField) -> Self:
        return cls(first, second)

    def component(self, i: int) -> ModeField:
        if i not in (1, 2):
            raise ValueError("component index must be 1 or 2, got {}".format(i))
        return self.c1 if i == 1 else self.c2

    def __iter__(self) -> Iterator[ModeField]:
        yield self.c1
        yield self.c2

    def map(self, func: Callable[[ModeField], ModeField]) -> Self:
        return type(self)(func(self.c1), func(self.c2))

    def map_indexed(self, func: Callable[[int, ModeField], ModeField]) -> Self:
        return type(self)(func(1, self.c1), func(2, self.c2))

    def max_abs(self) -> float:
        return max(self.c1.max_abs(), self.c2.max_abs())

    def __add__(self, other: "VectorModeField") -> Self:
        return type(self)(self.c1 + other.c1, self.c2 + other.c2)

    def __sub__(self, other: "VectorModeField") -> Self:
        return type(self)(self.c1 - other.c1, self.c2 - other.c2)

    def __mul__(self, scalar: Number) -> Self:
        return type(self)(self.c1 * scalar, self.c2 * scalar)

    __rmul__ = __mul__

    def __neg__(self) -> Self:
        return self * -1.0
