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
from typing import Callable, Hashable, Optional, Tuple, Union

import numpy as np
from numpy.typing import NDArray
from scipy import sparse
from scipy.sparse.linalg import splu

from ..constants import FOUR_PI, MOMENT_TOLERANCE, RESOLVENT_MASS_TOLERANCE, SMALL_RHO
from ..errors import DomainError, LogBranchError, MomentConditionError, ResolutionError
from ..profiles.core import gaussian_G, gaussian_G_prime, upsilon_prime, w0_weight
from ..profiles.grid import RadialGrid, RadialProfile
from .cache import operator_cache
from .field import ModeField, Parity
from .stencils import stencils_for

__all__ = (
    "apply_laplacian",
    "apply_L",
    "apply_Lstar",
    "poisson_inverse_mode",
    "poisson_inverse",
    "apply_Lambda",
    "invert_Lambda",
    "invert_Lambda_field",
    "apply_Lambda_star",
    "invert_Lambda_star",
    "invert_Lambda_star_field",
    "resolvent_mode",
    "resolvent",
)

log: logging.Logger = logging.getLogger("seina.vortexpair.modes.operators")

Profile = Union[RadialProfile, NDArray[np.float64]]
Solver = Callable[[NDArray[np.float64]], NDArray[np.float64]]


def _check_parity(parity: str) -> None:
    if parity not in ("cos", "sin"):
        raise ValueError("parity must be 'cos' or 'sin', got {!r}".format(parity))


def _potential(rho: NDArray[np.float64]) -> NDArray[np.float64]:
    # (rho^2/4) / (exp(rho^2/4) - 1), tending to 1 at the origin
    return 1.0 / w0_weight(rho)


def _source_factor(rho: NDArray[np.float64], n: int) -> NDArray[np.float64]:
    # 2 pi rho^2 / (n (1 - exp(-rho^2/4))), tending to 8 pi / n at the origin
    x = 0.25 * rho * rho
    out = np.full_like(rho, 2.0 * FOUR_PI / n)
    regular = rho >= SMALL_RHO
    xr = x[regular]
    out[regular] = 2.0 * FOUR_PI * xr / (-np.expm1(-xr)) / n
    return out


def _laplacian_row(grid: RadialGrid, n: int, row: NDArray[np.float64]) -> NDArray[np.float64]:
    if not np.any(row):
        return np.zeros_like(row)
    table = stencils_for(grid, n)
    rho = grid.nodes
    return table.d2 @ row + (table.d1 @ row) / rho - (n * n) * row / (rho * rho)


def apply_laplacian(f: ModeField) -> ModeField:
    return f.map_profiles(lambda n, row: _laplacian_row(f.grid, n, row))


def apply_L(f: ModeField) -> ModeField:
    """``L f = Delta f + (xi / 2) . grad f + f``."""
    rho = f.grid.nodes

    def _row(n: int, row: NDArray[np.float64]) -> NDArray[np.float64]:
        if not np.any(row):
            return row
        drift = 0.5 * rho * (stencils_for(f.grid, n).d1 @ row)
        return _laplacian_row(f.grid, n, row) + drift + row

    return f.map_profiles(_row)


def apply_Lstar(f: ModeField) -> ModeField:
    """``L* f = Delta f - (xi / 2) . grad f``."""
    rho = f.grid.nodes

    def _row(n: int, row: NDArray[np.float64]) -> NDArray[np.float64]:
        if not np.any(row):
            return row
        return _laplacian_row(f.grid, n, row) - 0.5 * rho * (stencils_for(f.grid, n).d1 @ row)

    return f.map_profiles(_row)


def _scaled_laplacian(grid: RadialGrid, n: int) -> sparse.csr_matrix:
    table = stencils_for(grid, n)
    rho = grid.nodes
    return (
        sparse.diags(rho * rho) @ table.d2
        + sparse.diags(rho) @ table.d1
        - (n * n) * sparse.identity(grid.size, format="csr")
    ).tocsr()


def _robin_row(grid: RadialGrid, n: int) -> NDArray[np.float64]:
    row = stencils_for(grid, n).d1[-1].toarray().ravel()
    row[-1] += n / grid.rho_max
    return row


def _with_last_row(matrix: sparse.spmatrix, row: NDArray[np.float64]) -> sparse.csr_matrix:
    lil = sparse.lil_matrix(matrix)
    lil[lil.shape[0] - 1, :] = row
    return lil.tocsr()


def _factorize(matrix: sparse.spmatrix, label: str) -> Solver:
    try:
        lu = splu(sparse.csc_matrix(matrix))
    except RuntimeError as error:
        raise ResolutionError("{} matrix is singular on this grid".format(label)) from error
    return lu.solve


def _cached(key: Hashable, build: Callable[[], Solver]) -> Solver:
    return operator_cache.get_or_build(key, build)  # type: ignore[return-value]


def _poisson_solver(grid: RadialGrid, n: int) -> Solver:
    def build() -> Solver:
        last = np.zeros(grid.size)
        last[-1] = 1.0
        row = last if n == 0 else _robin_row(grid, n)
        return _factorize(_with_last_row(_scaled_laplacian(grid, n), row), "Poisson")

    return _cached(("poisson", n, grid.key), build)


def _lambda_matrix(grid: RadialGrid, n: int) -> sparse.csr_matrix:
    rho = grid.nodes
    matrix = _scaled_laplacian(grid, n) + sparse.diags(rho * rho * _potential(rho))
    return _with_last_row(matrix, _robin_row(grid, n))


def _lambda_solver(grid: RadialGrid, n: int) -> Solver:
    def build() -> Solver:
        return _factorize(_lambda_matrix(grid, n), "Lambda")

    return _cached(("lambda", n, grid.key), build)


def _bordered_solver(grid: RadialGrid) -> Solver:
    """
    Mode-1 system with the kernel direction ``upsilon'`` bordered out.

    The unknown vector is ``(phi, sigma)``; ``sigma`` measures how far the source
    sits from the range, and ``phi`` is orthogonal to ``upsilon'``.
    """

    def build() -> Solver:
        rho = grid.nodes
        kernel = upsilon_prime(rho)
        column = rho * rho * kernel
        column[-1] = 0.0
        row = grid.weights * kernel
        blocks = [
            [_lambda_matrix(grid, 1), sparse.csr_matrix(column[:, None])],
            [sparse.csr_matrix(row[None, :]), None],
        ]
        matrix = sparse.bmat(blocks, format="csc")
        return _factorize(matrix, "bordered Lambda")

    return _cached(("lambda-bordered", 1, grid.key), build)


def _solve_lambda_system(
    grid: RadialGrid, n: int, rhs: NDArray[np.float64]
) -> NDArray[np.float64]:
    if n != 1:
        return _lambda_solver(grid, n)(rhs)
    solution = _bordered_solver(grid)(np.append(rhs, 0.0))
    log.debug("Bordered mode-1 solve defect sigma=%.3e.", solution[-1])
    return solution[:-1]


def _resolvent_solver(grid: RadialGrid, n: int, kappa: float) -> Solver:
    def build() -> Solver:
        table = stencils_for(grid, n)
        rho = grid.nodes
        matrix = (
            (kappa - 1.0) * sparse.diags(rho * rho)
            - _scaled_laplacian(grid, n)
            - sparse.diags(0.5 * rho**3) @ table.d1
        )
        last = np.zeros(grid.size)
        last[-1] = 1.0
        return _factorize(_with_last_row(matrix, last), "resolvent")

    return _cached(("resolvent", n, float(kappa), grid.key), build)


def _unpack(
    b: Profile, grid: Optional[RadialGrid] = None
) -> Tuple[RadialGrid, NDArray[np.float64]]:
    if isinstance(b, RadialProfile):
        return b.grid, b.values
    if grid is None:
        raise TypeError("a raw array needs an explicit grid")
    return grid, np.asarray(b, dtype=np.float64)


def poisson_inverse_mode(n: int, b: RadialProfile, decaying: bool = False) -> RadialProfile:
    """
    Solve ``a'' + a'/rho - n^2 a/rho^2 = b`` with ``a`` regular at the origin.

    For ``n = 0`` the far value is pinned to ``m log(rho_max)`` with ``m = int b rho d rho``,
    which is the behaviour of the true logarithmic convolution. With ``decaying=True``
    a nonzero ``m`` raises :class:`LogBranchError`.
    """
    if n < 0:
        raise DomainError("mode index must be non-negative, got {}".format(n))
    grid, values = _unpack(b)
    rho = grid.nodes
    rhs = rho * rho * values
    if n == 0:
        mass = grid.integrate(values)
        scale = grid.integrate(np.abs(values))
        if decaying and abs(mass) > MOMENT_TOLERANCE * max(scale, 1e-300):
            raise LogBranchError(mass)
        rhs[-1] = mass * math.log(grid.rho_max)
    else:
        rhs[-1] = 0.0
    return RadialProfile(grid, _poisson_solver(grid, n)(rhs), "polynomial")


def poisson_inverse(f: ModeField, decaying: bool = False) -> ModeField:
    """``Delta^{-1} f`` mode by mode."""
    grid = f.grid

    def _row(n: int, row: NDArray[np.float64]) -> NDArray[np.float64]:
        if not np.any(row):
            return row
        return poisson_inverse_mode(n, RadialProfile(grid, row, f.decay), decaying).values

    out = f.map_profiles(_row)
    return ModeField(grid, out.cos, out.sin, "polynomial")


def apply_Lambda(f: ModeField) -> ModeField:
    """``Lambda f = {Upsilon, f} + {Delta^{-1} f, G}``; radial parts are annihilated."""
    grid = f.grid
    rho = grid.nodes
    up = upsilon_prime(rho)
    gp = gaussian_G_prime(rho)
    cos = np.zeros_like(f.cos)
    sin = np.zeros_like(f.sin)
    for n in range(1, f.max_mode + 1):
        a = f.cos[n]
        if np.any(a):
            phi = poisson_inverse_mode(n, RadialProfile(grid, a, f.decay)).values
            sin[n] += (n / rho) * (-up * a + gp * phi)
        s = f.sin[n]
        if np.any(s):
            phi = poisson_inverse_mode(n, RadialProfile(grid, s, f.decay)).values
            cos[n] += (n / rho) * (up * s - gp * phi)
    return ModeField(grid, cos, sin, "schwartz_weighted")


def _remove_moment(
    grid: RadialGrid,
    values: NDArray[np.float64],
    weight: NDArray[np.float64],
    direction: NDArray[np.float64],
    tolerance: float,
) -> NDArray[np.float64]:
    # removes int values * weight rho d rho along direction, refusing large defects
    moment = grid.integrate(values * weight)
    scale = grid.integrate(np.abs(values * weight))
    if scale == 0.0:
        return values
    if abs(moment) > tolerance * scale:
        raise MomentConditionError(moment, tolerance)
    log.debug("Projected out first moment %.3e before mode-1 inversion.", moment)
    return values - (moment / grid.integrate(direction * weight)) * direction


def invert_Lambda(
    n: int, b: RadialProfile, input_parity: Parity, tolerance: float = MOMENT_TOLERANCE
) -> RadialProfile:
    """
    Radial factor ``w`` of the preimage of ``b`` under Lambda, living in the flipped parity.

    ``b sin(n theta)`` comes from ``w cos(n theta)`` and ``b cos(n theta)`` from
    ``w sin(n theta)``. Mode 1 requires ``int b rho^2 d rho = 0`` and returns the
    preimage with vanishing first moment.
    """
    _check_parity(input_parity)
    if n < 1:
        raise DomainError("Lambda is invertible only on modes n >= 1, got {}".format(n))
    grid, values = _unpack(b)
    rho = grid.nodes
    kernel = gaussian_G_prime(rho)
    if n == 1:
        values = _remove_moment(grid, values, rho, kernel, tolerance)
    source = _source_factor(rho, n)
    rhs = -rho * rho * source * values
    rhs[-1] = 0.0
    phi = _solve_lambda_system(grid, n, rhs)
    w = -_potential(rho) * phi - source * values
    if n == 1:
        w = w - (grid.integrate(w * rho) / grid.integrate(kernel * rho)) * kernel
    return RadialProfile(grid, w if input_parity == "sin" else -w, "schwartz_weighted")


def invert_Lambda_field(f: ModeField, tolerance: float = MOMENT_TOLERANCE) -> ModeField:
    if np.any(f.cos[0]):
        raise DomainError("radial content is not in the range of Lambda")
    out = ModeField.zeros(f.grid, f.max_mode)
    for n in range(1, f.max_mode + 1):
        for parity, table in (("cos", f.cos), ("sin", f.sin)):
            if np.any(table[n]):
                w = invert_Lambda(n, RadialProfile(f.grid, table[n], f.decay), parity, tolerance)
                (out.sin if parity == "cos" else out.cos)[n] += w.values
    return out


def apply_Lambda_star(f: ModeField) -> ModeField:
    """``Lambda* g = -G^{-1} Lambda[G g]``, evaluated without dividing by ``G``."""
    grid = f.grid
    rho = grid.nodes
    up = upsilon_prime(rho)
    g = gaussian_G(rho)
    cos = np.zeros_like(f.cos)
    sin = np.zeros_like(f.sin)
    for n in range(1, f.max_mode + 1):
        r = f.cos[n]
        if np.any(r):
            phi = poisson_inverse_mode(n, RadialProfile(grid, g * r)).values
            sin[n] += (n / rho) * (up * r + 0.5 * rho * phi)
        s = f.sin[n]
        if np.any(s):
            phi = poisson_inverse_mode(n, RadialProfile(grid, g * s)).values
            cos[n] -= (n / rho) * (up * s + 0.5 * rho * phi)
    return ModeField(grid, cos, sin, "polynomial")


def invert_Lambda_star(
    n: int, h: RadialProfile, input_parity: Parity, tolerance: float = MOMENT_TOLERANCE
) -> RadialProfile:
    """
    Radial factor ``r`` with ``Lambda*[r trig_flipped(n theta)] = h trig(n theta)``.

    Mode 1 requires ``int h rho^2 G d rho = 0`` and returns ``r`` with the same
    Gaussian moment equal to zero.
    """
    _check_parity(input_parity)
    if n < 1:
        raise DomainError("Lambda* is invertible only on modes n >= 1, got {}".format(n))
    grid, values = _unpack(h)
    rho = grid.nodes
    gauss = gaussian_G(rho)
    target = values if input_parity == "sin" else -values
    if n == 1:
        target = _remove_moment(grid, target, rho * gauss, rho, tolerance)
    source = _source_factor(rho, n)
    rhs = rho * rho * gauss * source * target
    rhs[-1] = 0.0
    phi = _solve_lambda_system(grid, n, rhs)
    r = -(0.5 * n) * source * phi + source * target
    if n == 1:
        r = r - (grid.integrate(r * rho * gauss) / grid.integrate(rho * rho * gauss)) * rho
    return RadialProfile(grid, r, "polynomial")


def invert_Lambda_star_field(h: ModeField, tolerance: float = MOMENT_TOLERANCE) -> ModeField:
    if np.any(h.cos[0]):
        raise DomainError("radial content is not in the range of Lambda*")
    out = ModeField.zeros(h.grid, h.max_mode, "polynomial")
    for n in range(1, h.max_mode + 1):
        for parity, table in (("cos", h.cos), ("sin", h.sin)):
            if np.any(table[n]):
                profile = RadialProfile(h.grid, table[n], h.decay)
                r = invert_Lambda_star(n, profile, parity, tolerance)
                (out.sin if parity == "cos" else out.cos)[n] += r.values
    return out


def resolvent_mode(n: int, kappa: float, f: RadialProfile) -> RadialProfile:
    """
    Solve ``(kappa - L) u = f`` on mode ``n`` for ``kappa > 0`` with ``u(rho_max) = 0``.

    On the radial mode the mass of ``u`` is ``m(f) / kappa``; the discrete defect of that
    identity is moved onto ``G`` when it is below ``RESOLVENT_MASS_TOLERANCE`` and raises
    :class:`ResolutionError` otherwise.
    """
    if kappa <= 0.0:
        raise DomainError("resolvent needs kappa > 0, got {}".format(kappa))
    if n < 0:
        raise DomainError("mode index must be non-negative, got {}".format(n))
    grid, values = _unpack(f)
    rho = grid.nodes
    rhs = rho * rho * values
    rhs[-1] = 0.0
    u = _resolvent_solver(grid, n, kappa)(rhs)
    if n == 0:
        gauss = gaussian_G(rho)
        defect = grid.integrate(u) - grid.integrate(values) / kappa
        scale = grid.integrate(np.abs(values)) / kappa
        if abs(defect) > RESOLVENT_MASS_TOLERANCE * max(scale, 1e-300):
            raise ResolutionError(
                "resolvent mass defect {:.3e} against {:.3e}".format(defect, scale)
            )
        log.debug("Resolvent at kappa=%s moved mass defect %.3e onto G.", kappa, defect)
        u = u - (defect / grid.integrate(gauss)) * gauss
    return RadialProfile(grid, u, "schwartz_weighted")


def resolvent(f: ModeField, kappa: float) -> ModeField:
    grid = f.grid

    def _row(n: int, row: NDArray[np.float64]) -> NDArray[np.float64]:
        if not np.any(row):
            return row
        return resolvent_mode(n, kappa, RadialProfile(grid, row, f.decay)).values

    out = f.map_profiles(_row)
    return ModeField(grid, out.cos, out.sin, "schwartz_weighted")
