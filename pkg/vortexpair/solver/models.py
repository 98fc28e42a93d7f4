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
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Tuple

import numpy as np
from numpy.typing import NDArray
from typing_extensions import Self

__all__ = ("GridField", "SpectralGrid", "spectral_grid")

log: logging.Logger = logging.getLogger("seina.vortexpair.solver.models")


class SpectralGrid:
    """Wavenumbers of an ``n x n`` periodic box of side ``box`` in the real-FFT layout."""

    __slots__: Tuple[str, ...] = ("n", "box", "kx", "ky", "k2", "inverse_k2", "coordinates")

    def __init__(self, n: int, box: float) -> None:
        self.n: int = n
        self.box: float = box
        scale = 2.0 * np.pi / box
        kx = scale * np.fft.rfftfreq(n, 1.0 / n)
        ky = scale * np.fft.fftfreq(n, 1.0 / n)
        self.kx: NDArray[np.float64] = np.broadcast_to(kx[None, :], (n, n // 2 + 1)).copy()
        self.ky: NDArray[np.float64] = np.broadcast_to(ky[:, None], (n, n // 2 + 1)).copy()
        self.k2: NDArray[np.float64] = self.kx**2 + self.ky**2
        inverse = np.zeros_like(self.k2)
        np.divide(1.0, self.k2, out=inverse, where=self.k2 > 0.0)
        self.inverse_k2: NDArray[np.float64] = inverse
        axis = -0.5 * box + (box / n) * np.arange(n)
        # values[row, col] = w(x[col], y[row])
        self.coordinates: Tuple[NDArray[np.float64], NDArray[np.float64]] = tuple(
            np.meshgrid(axis, axis)
        )

    @property
    def spacing(self) -> float:
        return self.box / self.n

    @property
    def nyquist(self) -> float:
        return np.pi * self.n / self.box

    def dealias_mask(self, fraction: float) -> NDArray[np.bool_]:
        cut = fraction * self.nyquist
        return (np.abs(self.kx) < cut) & (np.abs(self.ky) < cut)


@lru_cache(maxsize=None)
def spectral_grid(n: int, box: float) -> SpectralGrid:
    log.debug("Building spectral grid n=%s box=%s.", n, box)
    return SpectralGrid(n, box)


@dataclass(frozen=True, eq=False)
class GridField:
    """Vorticity samples on the periodic box at physical ``time``; the array is read-only."""

    values: NDArray[np.float64] = field(repr=False)
    box: float
    time: float
    nu: float

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64, copy=True)
        if values.ndim != 2 or values.shape[0] != values.shape[1]:
            raise TypeError("vorticity must be a square array, got {}".format(values.shape))
        n = values.shape[0]
        if n < 2 or n & (n - 1):
            raise ValueError("grid size must be a power of two, got {}".format(n))
        if self.box <= 0.0:
            raise ValueError("box must be positive")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def n(self) -> int:
        return int(self.values.shape[0])

    @property
    def grid(self) -> SpectralGrid:
        return spectral_grid(self.n, self.box)

    @property
    def cell_area(self) -> float:
        return (self.box / self.n) ** 2

    def mass(self) -> float:
        return float(np.sum(self.values) * self.cell_area)

    def moments(self) -> NDArray[np.float64]:
        """First moments about the box centre."""
        x, y = self.grid.coordinates
        return np.array(
            [np.sum(x * self.values), np.sum(y * self.values)], dtype=np.float64
        ) * self.cell_area

    def with_values(self, values: NDArray[np.float64], time: float) -> Self:
        return type(self)(values, self.box, time, self.nu)
