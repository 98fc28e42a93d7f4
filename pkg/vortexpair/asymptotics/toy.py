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

from typing import Dict

import numpy as np

from ..modes.algebra import poisson_bracket
from ..modes.field import ModeField
from ..modes.operators import apply_Lambda, apply_Lambda_star, apply_Lstar, poisson_inverse
from ..profiles.core import f0, gaussian_G, upsilon, w0_weight
from ..profiles.grid import RadialGrid

__all__ = ("toy_lambda", "toy_identity_defects")


def _inner_sup(f: ModeField, inner: np.ndarray) -> float:
    return float(max(np.max(np.abs(f.cos[:, inner])), np.max(np.abs(f.sin[:, inner]))))


def toy_lambda(f: ModeField) -> ModeField:
    """``{f W_0 + Delta^{-1} f, G}``, which equals ``Lambda f`` because ``-W_0 G' = Upsilon'``."""
    grid = f.grid
    weighted = f.radial_multiply(w0_weight(grid.nodes), "polynomial")
    gauss = ModeField.radial(grid, gaussian_G(grid.nodes))
    return poisson_bracket(weighted + poisson_inverse(f), gauss)


def toy_identity_defects(grid: RadialGrid, gamma: float = 1.0) -> Dict[str, float]:
    """Sup-norm defects of the leading-order identities on the inner half of ``grid``."""
    rho = grid.nodes
    inner = rho <= 0.5 * grid.rho_max
    out: Dict[str, float] = {}
    probe = ModeField.from_profile(grid, 2, "cos", rho * rho * gaussian_G(rho))
    difference = apply_Lambda(probe) - toy_lambda(probe)
    out["lambda_vs_toy"] = float(np.max(np.abs(difference.sin[2][inner])))
    for j in (1, 2):
        xi = ModeField.xi(grid, j)
        lstar = apply_Lstar(xi) + xi * 0.5
        out["lstar_xi{}".format(j)] = _inner_sup(lstar, inner)
        out["lambda_star_xi{}".format(j)] = _inner_sup(apply_Lambda_star(xi), inner)
    out["functional_relation"] = float(
        np.max(np.abs(f0(gamma * gaussian_G(rho[inner]), gamma) + gamma * upsilon(rho[inner])))
    )
    return out
