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

import math
from typing import List, Sequence

import numpy as np
from numpy.typing import NDArray

from ..constants import MAX_EXPANSION_ORDER, TWO_PI
from ..errors import UnsupportedOrderError
from ..modes.field import ModeField

__all__ = (
    "multipole_moments",
    "convolved_harmonic",
    "moment_expansion",
    "shifted_stream",
    "series_inverse",
    "series_power",
)


def multipole_moments(omega: ModeField, count: int) -> NDArray[np.complex128]:
    """``mu_j = int (xi_1 + i xi_2)^j Omega d xi`` for ``j = 0..count``."""
    grid = omega.grid
    rho = grid.nodes
    out = np.zeros(count + 1, dtype=np.complex128)
    out[0] = grid.plane_integral(omega.cos[0])
    for j in range(1, min(count, omega.max_mode) + 1):
        weight = rho**j
        out[j] = math.pi * complex(
            grid.integrate(omega.cos[j] * weight), grid.integrate(omega.sin[j] * weight)
        )
    return out


def convolved_harmonic(omega: ModeField, n: int) -> ModeField:
    """``int Q^c_n(xi - eta) Omega(eta) d eta`` as a polynomial field of degree ``n``."""
    grid = omega.grid
    rho = grid.nodes
    mu = multipole_moments(omega, n)
    cos = np.zeros((n + 1, grid.size))
    sin = np.zeros((n + 1, grid.size))
    for j in range(n + 1):
        coefficient = math.comb(n, j) * (-1.0) ** j * mu[j]
        if coefficient == 0.0:
            continue
        m = n - j
        power = rho**m
        cos[m] += coefficient.real * power
        if m > 0:
            sin[m] -= coefficient.imag * power
    return ModeField(grid, cos, sin, "polynomial")


def moment_expansion(omega: ModeField, order: int) -> List[ModeField]:
    """
    Terms of the far-field stream of ``omega`` seen from a point shifted by ``1/lambda``
    along ``xi_1``.

    Entry ``n - 1`` is the coefficient of ``lambda**n``, ``(-1)^(n-1) / (2 pi n)`` times the
    convolution of ``Q^c_n`` with ``omega``. The ``log |lambda|`` constant is omitted.
    """
    if order < 1 or order > MAX_EXPANSION_ORDER:
        raise UnsupportedOrderError(
            "moment expansion order must lie in [1, {}], got {}".format(MAX_EXPANSION_ORDER, order)
        )
    return [
        convolved_harmonic(omega, n) * ((-1.0) ** (n - 1) / (TWO_PI * n))
        for n in range(1, order + 1)
    ]


def shifted_stream(omega: ModeField, lam: float, order: int) -> ModeField:
    total = ModeField.zeros(omega.grid, 0, "polynomial")
    for n, term in enumerate(moment_expansion(omega, order), start=1):
        total = total + term * lam**n
    return total


def series_inverse(coefficients: Sequence[float], size: int) -> NDArray[np.float64]:
    """Power-series reciprocal of ``1 + c_1 x + ...`` truncated to ``size`` terms."""
    b = np.zeros(size)
    b[: min(size, len(coefficients))] = coefficients[:size]
    if b[0] == 0.0:
        raise ZeroDivisionError("series with vanishing constant term has no reciprocal")
    out = np.zeros(size)
    out[0] = 1.0 / b[0]
    for k in range(1, size):
        out[k] = -np.dot(b[1 : k + 1], out[k - 1 :: -1][:k]) / b[0]
    return out


def series_power(coefficients: NDArray[np.float64], n: int, size: int) -> NDArray[np.float64]:
    out = np.zeros(size)
    out[0] = 1.0
    for _ in range(n):
        out = np.convolve(out, coefficients[:size])[:size]
    return out
