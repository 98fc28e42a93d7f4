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
from typing import Dict, List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from ..constants import (
    DEFAULT_ORDER,
    FOUR_PI,
    MAX_ORDER,
    MOMENT_NOISE_FLOOR,
    SOLVABILITY_TOLERANCE,
)
from ..errors import ConstructionError, MomentConditionError, UnsupportedOrderError
from ..modes.algebra import partial, poisson_bracket
from ..modes.field import ModeField, VectorModeField
from ..modes.operators import (
    apply_L,
    invert_Lambda,
    invert_Lambda_field,
    poisson_inverse,
    resolvent,
)
from ..modes.quadrature import absolute_moment, mass_and_moment
from ..profiles.core import gaussian_G
from ..profiles.grid import RadialGrid, RadialProfile, default_grid
from .interaction import convolved_harmonic, series_inverse, series_power
from .models import Circulations, EpsilonSeries, VortexIndex

__all__ = ("build_order2", "construct_approximation", "SeriesBuilder")

log: logging.Logger = logging.getLogger("seina.vortexpair.asymptotics.core")

Slot = Tuple[int, int]
INDICES: Tuple[VortexIndex, VortexIndex] = (1, 2)


def build_order2(
    c: Circulations, grid: Optional[RadialGrid] = None
) -> Tuple[RadialProfile, RadialProfile]:
    """
    The two universal second-order profiles.

    ``E`` solves ``Lambda[E cos 2t] = -(rho^2 / 16 pi^2) exp(-rho^2/4) sin 2t`` and ``NS``
    solves ``Lambda[NS sin 2t] = (L - 1)[E cos 2t]``. They do not depend on ``c``.
    """
    grid = grid or default_grid()
    rho = grid.nodes
    source = RadialProfile(grid, -rho * rho * gaussian_G(rho) / FOUR_PI)
    euler = invert_Lambda(2, source, "sin")
    field = ModeField.from_profile(grid, 2, "cos", euler)
    forcing = apply_L(field) - field
    viscous = invert_Lambda(2, RadialProfile(grid, forcing.cos[2]), "cos")
    log.debug("Second-order profiles ready (circulations %s).", c)
    return euler, viscous


class SeriesBuilder:
    """
    Order-by-order construction of the approximate pair solution.

    Coefficients are kept per slot ``(k, p)``: the power ``k`` of ``eps`` and the power
    ``p`` in ``{0, 1}`` of ``nu``.
    """

    __slots__: Tuple[str, ...] = (
        "c",
        "grid",
        "omega",
        "potential",
        "theta",
        "alpha_dot",
        "_gauss",
        "_dgauss",
        "_harmonics",
    )

    def __init__(self, c: Circulations, grid: RadialGrid) -> None:
        self.c: Circulations = c
        self.grid: RadialGrid = grid
        gauss = ModeField.radial(grid, gaussian_G(grid.nodes))
        self._gauss: ModeField = gauss
        self._dgauss: Tuple[ModeField, ModeField] = (partial(gauss, 1), partial(gauss, 2))
        base = VectorModeField(gauss * c.gamma1, gauss * c.gamma2)
        zero = VectorModeField.zeros(grid)
        self.omega: Dict[Slot, VectorModeField] = {(0, 0): base, (0, 1): zero}
        self.potential: Dict[Slot, VectorModeField] = {
            (0, 0): base.map(poisson_inverse),
            (0, 1): zero,
        }
        self.theta: List[Tuple[float, float]] = []
        self.alpha_dot: List[float] = []
        self._harmonics: Dict[Tuple[int, int, int, int], ModeField] = {}

    @classmethod
    def from_series(cls, series: EpsilonSeries) -> "SeriesBuilder":
        """Rebuild the slot tables of a finished series, e.g. to read off stream coefficients."""
        builder = cls(series.circulations, series.grid)
        for k in range(1, series.order + 1):
            for p, vector in ((0, series.euler[k]), (1, series.viscous[k])):
                builder.omega[(k, p)] = vector
                builder.potential[(k, p)] = vector.map(poisson_inverse)
        builder.theta = list(zip(series.theta_dot_euler, series.theta_dot_viscous))
        builder.alpha_dot = list(series.alpha_dot_viscous)
        return builder

    @property
    def order(self) -> int:
        return max(k for k, _ in self.omega)

    def _alpha_coefficients(self, size: int) -> NDArray[np.float64]:
        out = np.zeros(size)
        out[0] = 1.0
        for j in range(2, size):
            if j - 2 < len(self.alpha_dot):
                out[j] = 2.0 / j * self.alpha_dot[j - 2]
        return out

    def _theta(self, k: int, p: int) -> float:
        return self.theta[k][p] if k < len(self.theta) else 0.0

    def _harmonic(self, i: VortexIndex, k: int, p: int, n: int) -> ModeField:
        key = (i, k, p, n)
        if key not in self._harmonics:
            source = self.omega[(k, p)].component(i)
            self._harmonics[key] = convolved_harmonic(source, n) * (
                (-1.0) ** (n - 1) / (2.0 * math.pi * n)
            )
        return self._harmonics[key]

    def stream(self, i: VortexIndex, K: int, p: int) -> ModeField:
        """Coefficient ``(K, p)`` of the total stream function seen by vortex ``i``."""
        c = self.c
        partner: VortexIndex = 2 if i == 1 else 1
        kappa = c.kappa(i)
        total = ModeField.zeros(self.grid, 0, "polynomial")
        if (K, p) in self.potential:
            total = total + self.potential[(K, p)].component(i)
        inverse = series_inverse(self._alpha_coefficients(K + 1), K + 1)
        for n in range(1, K + 1):
            powers = series_power(inverse, n, K + 1)
            for k in range(0, K - n + 1):
                weight = kappa**n * powers[K - n - k]
                if weight == 0.0 or (k, p) not in self.omega:
                    continue
                if not np.any(self.omega[(k, p)].component(partner).cos) and not np.any(
                    self.omega[(k, p)].component(partner).sin
                ):
                    continue
                total = total + self._harmonic(partner, k, p, n) * weight
        rho = self.grid.nodes
        if K >= 2 and self._theta(K - 2, p) != 0.0:
            total = total + ModeField.radial(
                self.grid, 0.5 * self._theta(K - 2, p) * rho * rho, "polynomial"
            )
        if K >= 1:
            alpha = self._alpha_coefficients(K)
            product = sum(self._theta(j, p) * alpha[K - 1 - j] for j in range(K))
            factor = kappa * c.partner(i) / c.gamma
            if product != 0.0:
                total = total + ModeField.xi(self.grid, 1) * (factor * product)
            if p == 1 and K - 1 < len(self.alpha_dot) and self.alpha_dot[K - 1] != 0.0:
                total = total + ModeField.xi(self.grid, 2) * (factor * self.alpha_dot[K - 1])
        return total

    def bracket_coefficient(self, i: VortexIndex, K: int, p: int) -> ModeField:
        """Coefficient ``(K, p)`` of ``{Psi_i, Omega_i}`` from the orders built so far."""
        total = ModeField.zeros(self.grid, K)
        for k1 in range(K + 1):
            for p1 in (0, 1):
                p2 = p - p1
                if p2 not in (0, 1) or (K - k1, p2) not in self.omega:
                    continue
                omega = self.omega[(K - k1, p2)].component(i)
                if not np.any(omega.cos) and not np.any(omega.sin):
                    continue
                psi = self.stream(i, k1, p1)
                total = total + poisson_bracket(psi, omega).padded(K)
        return total.padded(K)

    def _moment_scale(self, *fields: ModeField) -> float:
        rho = self.grid.nodes
        scale = 0.0
        for f in fields:
            if f.max_mode >= 1:
                scale += math.pi * self.grid.integrate((np.abs(f.cos[1]) + np.abs(f.sin[1])) * rho)
        return scale

    def _check_discard(self, dropped: float, scale: float, order: int, label: str) -> None:
        if dropped > SOLVABILITY_TOLERANCE * max(scale, 1e-300):
            raise ConstructionError(
                order,
                "{} discards {:.3e} against a source of size {:.3e}".format(label, dropped, scale),
            )
        if dropped > 0.0:
            log.debug("Order %s %s: discarded %.3e of %.3e.", order, label, dropped, scale)

    def _split(self, h: ModeField, parity: str, order: int, label: str) -> ModeField:
        # keeps the parity the construction expects, refusing a sizeable remainder
        kept = h.sin_part() if parity == "sin" else h.cos_part()
        other = h - kept
        self._check_discard(absolute_moment(other), absolute_moment(h), order, label + " parity")
        return kept

    def _project(self, h: ModeField, reference: float, order: int, label: str) -> ModeField:
        # removes residual mass and first moments along G and its gradient
        mass, moment = mass_and_moment(h)
        defect = float(np.max(np.abs(moment)))
        floor = max(
            SOLVABILITY_TOLERANCE * reference, MOMENT_NOISE_FLOOR * absolute_moment(h, 1)
        )
        if defect > floor:
            raise ConstructionError(
                order,
                "{} first moment {:.3e} is not small against {:.3e}".format(label, defect, floor),
            )
        self._check_discard(abs(mass), absolute_moment(h), order, label + " mass")
        log.debug("Order %s %s: mass defect %.3e, moment defect %.3e.", order, label, mass, defect)
        d1, d2 = self._dgauss
        _, m1 = mass_and_moment(d1)
        _, m2 = mass_and_moment(d2)
        out = h - d1 * (moment[0] / m1[0]) - d2 * (moment[1] / m2[1])
        if mass != 0.0:
            out = out - self._gauss * (mass / self.grid.plane_integral(self._gauss.cos[0]))
        return out

    def step(self) -> None:
        """Fix ``theta_dot_m``, ``alpha_dot_m`` and add the coefficients of order ``m + 1``."""
        c = self.c
        m = self.order
        K = m + 1
        kappa_t = 0.5 * K
        raw0 = {i: self.bracket_coefficient(i, K, 0) for i in INDICES}
        raw1 = {i: self.bracket_coefficient(i, K, 1) for i in INDICES}
        d1, d2 = self._dgauss
        _, m1 = mass_and_moment(d1)
        _, m2 = mass_and_moment(d2)
        coupling = c.product / c.gamma
        _, mh0 = mass_and_moment(raw0[1])
        _, mh1 = mass_and_moment(raw1[1])
        theta_e = -mh0[1] / (coupling * m2[1])
        theta_ns = -mh1[1] / (coupling * m2[1])
        alpha_ns = mh1[0] / (coupling * m1[0])
        self.theta.append((float(theta_e), float(theta_ns)))
        self.alpha_dot.append(float(alpha_ns))
        log.debug(
            "Order %s rates: thetaE=%.12e thetaNS=%.3e alphaNS=%.12e.",
            m,
            theta_e,
            theta_ns,
            alpha_ns,
        )

        euler: Dict[VortexIndex, ModeField] = {}
        viscous: Dict[VortexIndex, ModeField] = {}
        for i in INDICES:
            weight = c.kappa(i) * coupling
            added0 = d2 * (weight * theta_e)
            added1 = d2 * (weight * theta_ns) - d1 * (weight * alpha_ns)
            scale0 = self._moment_scale(raw0[i], added0)
            scale1 = self._moment_scale(raw1[i], added1)
            h0 = self._split(raw0[i] + added0, "sin", K, "H0")
            h0 = self._project(h0, scale0, K, "H0")
            h1 = self._split(raw1[i] + added1, "cos", K, "H1")
            h1 = self._project(h1, scale1, K, "H1")
            gamma_i = c.of(i)
            try:
                radial = resolvent(ModeField.radial(self.grid, -h1.cos[0]), kappa_t)
                lam = invert_Lambda_field(h0.without_mode(0) * (-1.0 / gamma_i))
                lam = self._split(lam, "cos", K, "Euler profile")
                forcing = h1.without_mode(0) + lam * kappa_t - apply_L(lam)
                forcing = self._project(forcing, self._moment_scale(forcing), K, "NS source")
                ns = invert_Lambda_field(
                    forcing.without_mode(0) * (-1.0 / gamma_i), SOLVABILITY_TOLERANCE
                )
                ns = self._split(ns, "sin", K, "NS profile")
            except MomentConditionError as error:
                raise ConstructionError(K, "solvability violated: {}".format(error)) from error
            euler[i] = (radial + lam).padded(K)
            viscous[i] = ns.padded(K)

        e_vec = VectorModeField(euler[1], euler[2])
        ns_vec = VectorModeField(viscous[1], viscous[2])
        self.omega[(K, 0)] = e_vec
        self.omega[(K, 1)] = ns_vec
        self.potential[(K, 0)] = e_vec.map(poisson_inverse)
        self.potential[(K, 1)] = ns_vec.map(poisson_inverse)

    def series(self) -> EpsilonSeries:
        M = self.order
        return EpsilonSeries(
            self.c,
            M,
            tuple(self.omega[(k, 0)] for k in range(M + 1)),
            tuple(self.omega[(k, 1)] for k in range(M + 1)),
            tuple(t for t, _ in self.theta),
            tuple(t for _, t in self.theta),
            tuple(self.alpha_dot),
        )


def construct_approximation(
    c: Circulations, order: int = DEFAULT_ORDER, grid: Optional[RadialGrid] = None
) -> EpsilonSeries:
    """Build the approximate solution up to ``eps**order``."""
    if order < 1 or order > MAX_ORDER:
        raise UnsupportedOrderError(
            "expansion order must lie in [1, {}], got {}".format(MAX_ORDER, order)
        )
    for flag in c.validity_flags():
        log.warning("Circulations %s: %s.", c, flag)
    builder = SeriesBuilder(c, grid or default_grid())
    while builder.order < order:
        builder.step()
        log.info("Constructed order %s of %s.", builder.order, order)
    return builder.series()
