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
from typing import Dict, Literal, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from ..asymptotics.core import SeriesBuilder
from ..asymptotics.interaction import moment_expansion, series_inverse, series_power
from ..asymptotics.models import Circulations, EpsilonSeries, VortexIndex
from ..asymptotics.residual import total_stream
from ..constants import MAX_EXPANSION_ORDER, SINGULAR_PROJECTION_TOLERANCE, TWO_PI
from ..errors import DomainError, SingularProjectionError, UnsupportedOrderError
from ..modes.algebra import angular_derivative, partial, poisson_bracket
from ..modes.field import ModeField, VectorModeField
from ..modes.operators import apply_Lambda_star, poisson_inverse
from ..modes.quadrature import inner_V
from ..profiles.grid import RadialGrid, default_grid
from .models import Decomposition, PseudoMomentaSet

__all__ = (
    "bracket_V",
    "build_pseudo_momenta",
    "coupled_stream_B",
    "euler_stream",
    "frame_derivative",
    "frame_stream_X",
    "inner_product_matrix",
    "lambda_E_apply",
    "lambda_E_star_apply",
    "lambda_E_star_order",
    "linear_coefficients",
    "modulation_rate",
    "project_perturbation",
)

log: logging.Logger = logging.getLogger("seina.vortexpair.momenta.core")

INDICES: Tuple[VortexIndex, VortexIndex] = (1, 2)
LINEAR_TOLERANCE: float = 1e-12


def _partner(i: VortexIndex) -> VortexIndex:
    return 2 if i == 1 else 1


def _default_shift_order(series: EpsilonSeries) -> int:
    return min(series.order + 2, MAX_EXPANSION_ORDER)


def bracket_V(a: VectorModeField, b: VectorModeField) -> VectorModeField:
    """Componentwise Poisson bracket ``({a_1, b_1}, {a_2, b_2})``."""
    return VectorModeField(poisson_bracket(a.c1, b.c1), poisson_bracket(a.c2, b.c2))


def coupled_stream_B(
    omega: VectorModeField, epsilon: float, alpha: float, order: int
) -> Tuple[VectorModeField, Tuple[float, float]]:
    """
    ``B_a omega``: each component sees its own stream plus the partner stream shifted by
    ``kappa_i alpha / epsilon`` along ``xi_1``, expanded to ``epsilon**order``.

    The additive constants ``(m[omega_partner] / 2 pi) log(alpha / epsilon)`` are returned
    separately and are zero at ``epsilon = 0``, where only the self part remains.
    """
    if alpha <= 0.0:
        raise DomainError("alpha must be positive, got {}".format(alpha))
    if epsilon < 0.0:
        raise DomainError("epsilon must be non-negative, got {}".format(epsilon))
    grid = omega.grid
    streams = []
    constants = []
    for i in INDICES:
        psi = poisson_inverse(omega.component(i))
        source = omega.component(_partner(i))
        constant = 0.0
        if epsilon > 0.0:
            lam = Circulations.kappa(i) * epsilon / alpha
            for n, term in enumerate(moment_expansion(source, order), start=1):
                psi = psi + term * lam**n
            constant = grid.plane_integral(source.cos[0]) / TWO_PI * math.log(alpha / epsilon)
        streams.append(psi)
        constants.append(constant)
    return VectorModeField(streams[0], streams[1]), (constants[0], constants[1])


def frame_stream_X(
    c: Circulations, epsilon: float, alpha: float, grid: Optional[RadialGrid] = None
) -> VectorModeField:
    """``X_hat = xi_1 Y_2 + (eps Gamma / 2 alpha) |xi|^2 Y_1``."""
    grid = grid or default_grid()
    rho = grid.nodes
    xi1 = ModeField.xi(grid, 1)
    swirl = ModeField.radial(grid, epsilon * c.gamma / (2.0 * alpha) * rho * rho, "polynomial")
    return VectorModeField(xi1 * c.gamma2 + swirl, xi1 * (-c.gamma1) + swirl)


def frame_derivative(
    omega: VectorModeField,
    c: Circulations,
    epsilon: float,
    alpha: float,
    method: Literal["direct", "bracket"] = "direct",
) -> VectorModeField:
    """
    ``X omega = (Y_2 d_2 + (eps Gamma / alpha) Y_1 d_theta) omega``.

    ``method="bracket"`` evaluates the same operator as ``{X_hat, omega}_V``.
    """
    if method == "bracket":
        return bracket_V(frame_stream_X(c, epsilon, alpha, omega.grid), omega)
    if method != "direct":
        raise ValueError("unknown frame derivative method {!r}".format(method))
    rotation = epsilon * c.gamma / alpha

    def _component(i: int, f: ModeField) -> ModeField:
        weight = c.gamma2 if i == 1 else -c.gamma1
        return partial(f, 2) * weight + angular_derivative(f) * rotation

    return omega.map_indexed(_component)


def euler_stream(
    series: EpsilonSeries, epsilon: float, shift_order: Optional[int] = None
) -> VectorModeField:
    """``Psi^E_a = B_a Omega^E_a + (eps / Gamma) thetaE alpha X_hat`` without constants."""
    order = shift_order or _default_shift_order(series)
    return VectorModeField(
        total_stream(series, 1, epsilon, 0.0, order), total_stream(series, 2, epsilon, 0.0, order)
    )


def lambda_E_apply(
    omega: VectorModeField,
    series: EpsilonSeries,
    epsilon: float,
    shift_order: Optional[int] = None,
) -> VectorModeField:
    """``Lambda^E omega = {Psi^E_a, omega}_V + {B_a omega, Omega^E_a}_V``."""
    order = shift_order or _default_shift_order(series)
    alpha = series.alpha(epsilon)
    background = series.vorticity(epsilon, 0.0)
    stream, _ = coupled_stream_B(omega, epsilon, alpha, order)
    return bracket_V(euler_stream(series, epsilon, order), omega) + bracket_V(stream, background)


def lambda_E_star_apply(
    rho: VectorModeField,
    series: EpsilonSeries,
    epsilon: float,
    shift_order: Optional[int] = None,
) -> VectorModeField:
    """``Lambda^{E*} rho = -{Psi^E_a, rho}_V - B_a {rho, Omega^E_a}_V``."""
    order = shift_order or _default_shift_order(series)
    alpha = series.alpha(epsilon)
    background = series.vorticity(epsilon, 0.0)
    stream, _ = coupled_stream_B(bracket_V(rho, background), epsilon, alpha, order)
    return -(bracket_V(euler_stream(series, epsilon, order), rho) + stream)


def linear_coefficients(rho: VectorModeField) -> Optional[NDArray[np.float64]]:
    """
    ``[[a_1, b_1], [a_2, b_2]]`` when ``rho_i = a_i xi_1 + b_i xi_2`` for both components,
    otherwise ``None``.
    """
    out = np.zeros((2, 2))
    for row, component in enumerate(rho):
        r = component.rho
        scale = max(component.max_abs(), 1.0)
        if component.max_mode < 1:
            if np.any(np.abs(component.cos) > LINEAR_TOLERANCE * scale):
                return None
            continue
        rest_cos = component.cos.copy()
        rest_sin = component.sin.copy()
        rest_cos[1] = 0.0
        rest_sin[1] = 0.0
        if np.any(np.abs(rest_cos) > LINEAR_TOLERANCE * scale) or np.any(
            np.abs(rest_sin) > LINEAR_TOLERANCE * scale
        ):
            return None
        norm = float(np.dot(r, r))
        for col, values in enumerate((component.cos[1], component.sin[1])):
            coefficient = float(np.dot(values, r)) / norm
            if np.max(np.abs(values - coefficient * r)) > LINEAR_TOLERANCE * scale:
                return None
            out[row, col] = coefficient
    return out


def _linear_star(
    ell: int, coefficients: NDArray[np.float64], c: Circulations, grid: RadialGrid
) -> VectorModeField:
    a = coefficients[:, 0]
    b = coefficients[:, 1]
    gammas = (c.gamma1, c.gamma2)
    components = []
    for index, i in enumerate(INDICES):
        other = 1 - index
        if ell == 1:
            value = c.kappa(i) * gammas[other] * b[other] / TWO_PI
            components.append(ModeField.radial(grid, np.full(grid.size, value), "polynomial"))
            continue
        across = -(a[0] * gammas[0] + a[1] * gammas[1]) / TWO_PI
        along = (gammas[other] * (b[index] - b[other]) + b[index] * c.gamma) / TWO_PI
        components.append(ModeField.xi(grid, 1) * along + ModeField.xi(grid, 2) * across)
    return VectorModeField(components[0], components[1])


def _alpha_coefficients(series: EpsilonSeries, size: int) -> NDArray[np.float64]:
    out = np.zeros(size)
    out[0] = 1.0
    for j in range(2, size):
        if j - 2 < len(series.alpha_dot_viscous):
            out[j] = 2.0 / j * series.alpha_dot_viscous[j - 2]
    return out


def _numerical_star(ell: int, rho: VectorModeField, series: EpsilonSeries) -> VectorModeField:
    if series.order < ell:
        raise UnsupportedOrderError(
            "order-{} adjoint needs a series of order >= {}, got {}".format(
                ell, ell, series.order
            )
        )
    builder = SeriesBuilder.from_series(series)
    sources: Dict[Tuple[int, int], ModeField] = {
        (i, k): poisson_bracket(rho.component(i), series.euler[k].component(i))
        for i in INDICES
        for k in range(ell + 1)
    }
    inverse = series_inverse(_alpha_coefficients(series, ell + 1), ell + 1)
    components = []
    for i in INDICES:
        partner = _partner(i)
        total = -poisson_bracket(builder.stream(i, ell, 0), rho.component(i))
        total = total - poisson_inverse(sources[(i, ell)])
        for n in range(1, ell + 1):
            powers = series_power(inverse, n, ell + 1)
            for k in range(ell - n + 1):
                weight = Circulations.kappa(i) ** n * powers[ell - n - k]
                if weight != 0.0:
                    total = total - moment_expansion(sources[(partner, k)], n)[n - 1] * weight
        components.append(total)
    return VectorModeField(components[0], components[1])


def lambda_E_star_order(
    ell: int,
    rho: VectorModeField,
    c: Circulations,
    series: Optional[EpsilonSeries] = None,
) -> VectorModeField:
    """
    Coefficient of ``eps**ell`` in ``Lambda^{E*}``.

    Order 0 is ``diag(Gamma_1 Lambda*, Gamma_2 Lambda*)``. Orders 1 and 2 use closed forms on
    inputs linear in ``xi`` and expand ``B_a`` and ``Psi^E_a`` through ``series`` otherwise.
    """
    if ell not in (0, 1, 2):
        raise UnsupportedOrderError(
            "adjoint coefficients exist for orders 0..2, got {}".format(ell)
        )
    if ell == 0:
        return VectorModeField(
            apply_Lambda_star(rho.c1) * c.gamma1, apply_Lambda_star(rho.c2) * c.gamma2
        )
    coefficients = linear_coefficients(rho)
    if coefficients is not None:
        return _linear_star(ell, coefficients, c, rho.grid)
    if series is None:
        raise DomainError("order-{} adjoint of a non-linear input needs the series".format(ell))
    return _numerical_star(ell, rho, series)


def build_pseudo_momenta(series: EpsilonSeries, epsilon: float) -> PseudoMomentaSet:
    """
    The trivial pair ``xi_j Y_1`` and the nontrivial pair through ``eps**2``:
    ``rho_e = X_hat``, ``rho_o = xi_2 Y_2`` and ``lambda_e = eps**2 Gamma / pi``.
    """
    if series.order < 2:
        raise UnsupportedOrderError(
            "pseudo-momenta need a series of order >= 2, got {}".format(series.order)
        )
    c = series.circulations
    grid = series.grid
    alpha = series.alpha(epsilon)
    background = series.vorticity(epsilon, 0.0)
    xi1 = ModeField.xi(grid, 1)
    xi2 = ModeField.xi(grid, 2)
    rho_te = VectorModeField(xi1, xi1)
    rho_to = VectorModeField(xi2, xi2)
    rho_e = frame_stream_X(c, epsilon, alpha, grid)
    rho_o = VectorModeField(xi2 * c.gamma2, xi2 * (-c.gamma1))

    image = lambda_E_star_order(2, rho_o, c)
    coefficients = linear_coefficients(image)
    if coefficients is None:
        raise UnsupportedOrderError("order-2 adjoint of xi_2 Y_2 left the linear span")
    lambda2 = (coefficients[0, 0] * c.gamma2 - coefficients[1, 0] * c.gamma1) / (
        c.gamma1**2 + c.gamma2**2
    )
    log.debug("Pseudo-momenta at eps=%s: alpha=%.12f lambda_e2=%.12e.", epsilon, alpha, lambda2)
    return PseudoMomentaSet(
        c,
        epsilon,
        alpha,
        rho_te=rho_te,
        rho_to=rho_to,
        rho_e=rho_e,
        rho_o=rho_o,
        f_te=bracket_V(rho_te, background),
        f_to=bracket_V(rho_to, background),
        f_e=bracket_V(rho_e, background),
        f_o=bracket_V(rho_o, background),
        lambda_e=(0.0, 0.0, float(lambda2)),
    )


def inner_product_matrix(
    momenta: PseudoMomentaSet, epsilon: Optional[float] = None
) -> NDArray[np.float64]:
    """``I[j, k] = <f_k, rho_j>_V`` in the order ``(te, to, e, o)``."""
    if epsilon is not None and not math.isclose(epsilon, momenta.epsilon, rel_tol=1e-12):
        raise DomainError(
            "pseudo-momenta were built at eps={}, not {}".format(momenta.epsilon, epsilon)
        )
    out = np.zeros((4, 4))
    for j, rho in enumerate(momenta.momenta):
        for k, f in enumerate(momenta.images):
            out[j, k] = inner_V(f, rho)
    return out


def project_perturbation(omega: VectorModeField, momenta: PseudoMomentaSet) -> Decomposition:
    """
    Split ``omega`` along the four images ``f_*`` so that the remainder is orthogonal to
    every pseudo-momentum.
    """
    c = momenta.circulations
    matrix = inner_product_matrix(momenta)
    a_bar = matrix[0, 3]
    b_bar = matrix[2, 3]
    c_bar = matrix[1, 2]
    pivot = b_bar + a_bar * c_bar / c.gamma
    if abs(pivot) < SINGULAR_PROJECTION_TOLERANCE * abs(c.product * c.gamma):
        raise SingularProjectionError(
            "b + a c / Gamma = {:.3e} is degenerate for {}".format(pivot, c)
        )
    rhs = np.array([inner_V(omega, rho) for rho in momenta.momenta])
    mu_te, mu_to, mu_e, mu_o = np.linalg.solve(matrix, rhs)
    remainder = omega
    for mu, image in zip((mu_te, mu_to, mu_e, mu_o), momenta.images):
        remainder = remainder - image * float(mu)
    log.debug("Projection: mu_o=%.6e mu_e=%.6e pivot=%.6e.", mu_o, mu_e, pivot)
    return Decomposition(float(mu_o), float(mu_e), float(mu_te), float(mu_to), remainder)


def modulation_rate(momenta: PseudoMomentaSet, mu_o: float) -> float:
    """``theta_dot_p = Gamma lambda_e mu_o / (eps alpha)``."""
    if momenta.epsilon <= 0.0:
        raise DomainError("the modulation rate needs eps > 0")
    return (
        momenta.circulations.gamma
        * momenta.lambda_e_value()
        * mu_o
        / (momenta.epsilon * momenta.alpha)
    )
