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

from typing import Literal

import numpy as np
from numpy.typing import NDArray

from .field import ModeField, _join
from .stencils import stencils_for

__all__ = (
    "radial_derivative",
    "angular_derivative",
    "partial",
    "product",
    "poisson_bracket",
)

Direction = Literal[1, 2]


def _angles_for(*fields: ModeField) -> int:
    return 2 * sum(f.max_mode for f in fields) + 2


def radial_derivative(f: ModeField) -> ModeField:
    """``d/d rho`` of every radial factor, each with the stencil parity of its mode."""
    return f.map_profiles(lambda n, row: stencils_for(f.grid, n).d1 @ row if np.any(row) else row)


def angular_derivative(f: ModeField) -> ModeField:
    n = np.arange(f.max_mode + 1, dtype=np.float64)[:, None]
    return ModeField(f.grid, n * f.sin, -n * f.cos, f.decay)


def partial(f: ModeField, j: Direction) -> ModeField:
    """
    Cartesian derivative ``d/d xi_j`` as a mode shift.

    A radial factor ``a`` of mode ``n`` feeds mode ``n + 1`` with ``(a' - n a / rho) / 2``
    and mode ``n - 1`` with ``(a' + n a / rho) / 2``.
    """
    if j not in (1, 2):
        raise ValueError("direction must be 1 or 2, got {}".format(j))
    rho = f.grid.nodes
    top = f.max_mode + 1
    cos = np.zeros((top + 1, f.grid.size))
    sin = np.zeros((top + 1, f.grid.size))
    derivative = radial_derivative(f)
    for n in range(f.max_mode + 1):
        pairs = (("cos", f.cos, derivative.cos), ("sin", f.sin, derivative.sin))
        for parity, table, dtable in pairs:
            a = table[n]
            if not np.any(a):
                continue
            up = 0.5 * (dtable[n] - n * a / rho)
            down = 0.5 * (dtable[n] + n * a / rho)
            if j == 1:
                target = cos if parity == "cos" else sin
                target[n + 1] += up
                if n >= 1:
                    target[n - 1] += down
                elif parity == "cos":
                    target[1] += down
            elif parity == "cos":
                sin[n + 1] += up
                if n >= 1:
                    sin[n - 1] -= down
                else:
                    sin[1] += down
            else:
                cos[n + 1] -= up
                cos[n - 1] += down
    sin[0] = 0.0
    return ModeField(f.grid, cos, sin, f.decay)


def _combine(values: NDArray[np.float64], f: ModeField, g: ModeField, top: int) -> ModeField:
    decay = "schwartz_weighted" if "schwartz_weighted" in (f.decay, g.decay) else _join(
        f.decay, g.decay
    )
    return ModeField.from_samples(f.grid, values, top, decay)


def product(f: ModeField, g: ModeField) -> ModeField:
    """Pointwise product; the result carries modes up to ``f.max_mode + g.max_mode``."""
    if f.grid != g.grid:
        raise ValueError("fields live on different grids")
    angles = _angles_for(f, g)
    return _combine(f.samples(angles) * g.samples(angles), f, g, f.max_mode + g.max_mode)


def poisson_bracket(f: ModeField, g: ModeField) -> ModeField:
    """``{f, g} = (f_rho g_theta - f_theta g_rho) / rho`` by exact trigonometric products."""
    if f.grid != g.grid:
        raise ValueError("fields live on different grids")
    angles = _angles_for(f, g)
    f_rho = radial_derivative(f).samples(angles)
    g_rho = radial_derivative(g).samples(angles)
    f_theta = angular_derivative(f).samples(angles)
    g_theta = angular_derivative(g).samples(angles)
    values = (f_rho * g_theta - f_theta * g_rho) / f.grid.nodes
    return _combine(values, f, g, f.max_mode + g.max_mode)
