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
from typing import Dict, List, Literal, NamedTuple, Tuple

import numpy as np
from numpy.typing import NDArray
from scipy import sparse

from ..profiles.grid import RadialGrid

__all__ = ("fornberg_weights", "RadialStencils", "stencils_for", "parity_of")

Parity = Literal["even", "odd"]

STENCIL_WIDTH = 5


def parity_of(n: int) -> Parity:
    return "even" if n % 2 == 0 else "odd"


def fornberg_weights(z: float, x: NDArray[np.float64], order: int) -> NDArray[np.float64]:
    """
    Finite-difference weights at ``z`` on arbitrary nodes ``x``.

    Returns an array of shape ``(len(x), order + 1)`` whose column ``k`` holds the
    weights of the ``k``-th derivative.
    """
    n = len(x)
    c = np.zeros((n, order + 1))
    c1 = 1.0
    c4 = x[0] - z
    c[0, 0] = 1.0
    for i in range(1, n):
        mn = min(i, order)
        c2 = 1.0
        c5 = c4
        c4 = x[i] - z
        for j in range(i):
            c3 = x[i] - x[j]
            c2 *= c3
            if j == i - 1:
                for k in range(mn, 0, -1):
                    c[i, k] = c1 * (k * c[i - 1, k - 1] - c5 * c[i - 1, k]) / c2
                c[i, 0] = -c1 * c5 * c[i - 1, 0] / c2
            for k in range(mn, 0, -1):
                c[j, k] = (c4 * c[j, k] - k * c[j, k - 1]) / c3
            c[j, 0] = c4 * c[j, 0] / c3
        c1 = c2
    return c


class RadialStencils(NamedTuple):
    d1: sparse.csr_matrix
    d2: sparse.csr_matrix


def _stencil_indices(i: int, size: int) -> List[int]:
    half = STENCIL_WIDTH // 2
    if i >= size - half:
        return list(range(size - STENCIL_WIDTH, size))
    return list(range(i - half, i + half + 1))


def _assemble(grid: RadialGrid, sign: float) -> RadialStencils:
    rho = grid.nodes
    size = grid.size
    rows: List[int] = []
    cols: List[int] = []
    first: List[float] = []
    second: List[float] = []
    for i in range(size):
        indices = _stencil_indices(i, size)
        # index -1 is the mirror of node 0, index -2 the mirror of node 1
        points = np.array([rho[j] if j >= 0 else -rho[-j - 1] for j in indices])
        weights = fornberg_weights(rho[i], points, 2)
        for j, w in zip(indices, weights):
            column = j if j >= 0 else -j - 1
            factor = 1.0 if j >= 0 else sign
            rows.append(i)
            cols.append(column)
            first.append(factor * w[1])
            second.append(factor * w[2])
    shape = (size, size)
    d1 = sparse.coo_matrix((first, (rows, cols)), shape=shape).tocsr()
    d2 = sparse.coo_matrix((second, (rows, cols)), shape=shape).tocsr()
    return RadialStencils(d1, d2)


@functools.lru_cache(maxsize=8)
def _stencil_table(grid: RadialGrid) -> Dict[Parity, RadialStencils]:
    return {"even": _assemble(grid, 1.0), "odd": _assemble(grid, -1.0)}


def stencils_for(grid: RadialGrid, n: int) -> RadialStencils:
    """
    Fourth-order first and second radial derivatives for the radial factor of mode ``n``.

    Near the origin the stencil reaches across ``rho = 0``; the mirrored samples
    equal ``(-1)**n`` times the samples at ``rho``.
    """
    return _stencil_table(grid)[parity_of(n)]


def derivative_pair(grid: RadialGrid, n: int, values: NDArray[np.float64]) -> Tuple[
    NDArray[np.float64], NDArray[np.float64]
]:
    table = stencils_for(grid, n)
    return table.d1 @ values, table.d2 @ values
