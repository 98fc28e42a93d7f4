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

import numpy as np
import pytest
from scipy import integrate

from vortexpair.constants import EIN_SWITCH, EULER_GAMMA
from vortexpair.errors import DomainError
from vortexpair.modes import ModeField, apply_laplacian
from vortexpair.profiles import (
    ein,
    f0,
    f0_prime,
    gaussian_G,
    gaussian_G_prime,
    harmonic_Q,
    harmonic_Q_gradient,
    upsilon,
    upsilon_prime,
    w0_weight,
)
from vortexpair.profiles.grid import RadialGrid, RadialProfile


def _ein_quadrature(x: float) -> float:
    value, _ = integrate.quad(
        lambda t: -math.expm1(-t) / t if t > 0 else 1.0, 0.0, x, epsabs=0.0, epsrel=1e-13
    )
    return value


class TestEin:
    def test_zero(self) -> None:
        assert ein(0.0) == 0.0

    @pytest.mark.parametrize("x", [0.1, 1.0, 1.9, 3.0, 10.0])
    def test_matches_quadrature(self, x: float) -> None:
        assert ein(x) == pytest.approx(_ein_quadrature(x), rel=1e-11)

    def test_large_argument(self) -> None:
        assert ein(25.0) == pytest.approx(EULER_GAMMA + math.log(25.0), abs=1e-12)

    def test_branches_agree_at_switch(self) -> None:
        below = ein(np.nextafter(EIN_SWITCH, 0.0))
        above = ein(np.nextafter(EIN_SWITCH, 10.0))
        assert abs(below - above) <= 1e-13

    def test_vectorized(self) -> None:
        values = ein(np.array([0.5, 1.0, 5.0]))
        assert values.shape == (3,)
        assert values[1] == pytest.approx(0.7965995992970532, rel=1e-12)

    def test_negative_rejected(self) -> None:
        with pytest.raises(DomainError):
            ein(-1.0)


class TestGaussian:
    def test_values(self) -> None:
        assert gaussian_G(0.0) == pytest.approx(1.0 / (4.0 * math.pi))
        assert gaussian_G(2.0) == pytest.approx(math.exp(-1.0) / (4.0 * math.pi))

    def test_unit_mass(self, grid: RadialGrid) -> None:
        assert grid.plane_integral(gaussian_G(grid.nodes)) == pytest.approx(1.0, abs=1e-10)

    def test_derivative(self) -> None:
        rho = np.linspace(0.1, 6.0, 25)
        h = 1e-6
        numeric = (gaussian_G(rho + h) - gaussian_G(rho - h)) / (2 * h)
        np.testing.assert_allclose(gaussian_G_prime(rho), numeric, atol=1e-10)


class TestUpsilon:
    def test_origin(self) -> None:
        assert upsilon(0.0) == pytest.approx(-EULER_GAMMA / (4.0 * math.pi))

    def test_prime_value(self) -> None:
        expected = (1.0 - math.exp(-0.25)) / (2.0 * math.pi)
        assert upsilon_prime(1.0) == pytest.approx(expected, rel=1e-14)

    def test_scalars_come_back_as_floats(self) -> None:
        assert type(upsilon(1.0)) is float
        assert type(upsilon_prime(1.0)) is float
        assert isinstance(upsilon(np.array([1.0, 2.0])), np.ndarray)

    def test_circulation_function(self) -> None:
        rho = np.linspace(0.05, 12.0, 40)
        np.testing.assert_allclose(
            2.0 * math.pi * rho * upsilon_prime(rho), -np.expm1(-rho * rho / 4.0), rtol=1e-13
        )

    def test_prime_is_derivative(self) -> None:
        rho = np.linspace(0.2, 8.0, 20)
        h = 1e-5
        numeric = (upsilon(rho + h) - upsilon(rho - h)) / (2 * h)
        np.testing.assert_allclose(upsilon_prime(rho), numeric, atol=1e-9)

    def test_laplacian_is_gaussian(self, grid: RadialGrid) -> None:
        field = ModeField.radial(grid, upsilon(grid.nodes), "polynomial")
        lap = apply_laplacian(field).cos[0]
        window = grid.nodes <= 0.5 * grid.rho_max
        window[0] = False
        deviation = np.max(np.abs(lap[window] - gaussian_G(grid.nodes[window])))
        assert deviation <= 1e-7


class TestW0:
    def test_origin_and_value(self) -> None:
        assert w0_weight(0.0) == pytest.approx(1.0, abs=1e-15)
        assert w0_weight(2.0) == pytest.approx(math.e - 1.0, rel=1e-14)

    def test_taylor_branch_is_continuous(self) -> None:
        rho = 2.0 * math.sqrt(1e-4)
        left = w0_weight(np.nextafter(rho, 0.0))
        right = w0_weight(np.nextafter(rho, 1.0))
        assert abs(left - right) <= 1e-14

    def test_negative_rejected(self) -> None:
        with pytest.raises(DomainError):
            w0_weight(-0.1)


class TestF0:
    @pytest.mark.parametrize("gamma", [1.0, 2.0])
    @pytest.mark.parametrize("rho", [0.5, 1.0, 3.0])
    def test_prime_matches_w0(self, gamma: float, rho: float) -> None:
        s = gamma * gaussian_G(rho)
        assert f0_prime(s, gamma) == pytest.approx(w0_weight(rho), rel=1e-10)

    def test_prime_identity_on_interval(self) -> None:
        rho = np.linspace(0.01, 10.0, 200)
        np.testing.assert_allclose(f0_prime(gaussian_G(rho), 1.0), w0_weight(rho), rtol=1e-10)

    def test_prime_is_derivative(self) -> None:
        s = np.array([0.01, 0.03, 0.06])
        h = 1e-7
        numeric = (f0(s + h, 1.0) - f0(s - h, 1.0)) / (2 * h)
        np.testing.assert_allclose(f0_prime(s, 1.0), numeric, rtol=1e-6)

    def test_functional_relation(self) -> None:
        rho = np.linspace(0.01, 10.0, 50)
        gamma = 1.5
        np.testing.assert_allclose(
            f0(gamma * gaussian_G(rho), gamma), -gamma * upsilon(rho), atol=1e-12
        )

    def test_negative_circulation_symmetry(self) -> None:
        s = -0.02
        assert f0(s, -1.0) == pytest.approx(-f0(-s, 1.0))

    def test_outside_range(self) -> None:
        with pytest.raises(DomainError):
            f0(1.0, 1.0)
        with pytest.raises(DomainError):
            f0(0.01, 0.0)


class TestHarmonics:
    def test_values(self) -> None:
        assert harmonic_Q(2, "cos", (1.0, 1.0)) == pytest.approx(0.0, abs=1e-15)
        assert harmonic_Q(1, "cos", (0.3, -0.7)) == pytest.approx(0.3)
        assert harmonic_Q(1, "sin", (0.3, -0.7)) == pytest.approx(-0.7)

    @pytest.mark.parametrize("kind", ["cos", "sin"])
    @pytest.mark.parametrize("n", [1, 2, 3, 5, 8])
    def test_gradient(self, n: int, kind: str) -> None:
        rng = np.random.default_rng(7)
        points = rng.uniform(-1.0, 1.0, size=(20, 2))
        h = 1e-6
        gx, gy = harmonic_Q_gradient(n, kind, points)
        ex = np.array([h, 0.0])
        ey = np.array([0.0, h])
        fx = (harmonic_Q(n, kind, points + ex) - harmonic_Q(n, kind, points - ex)) / (2 * h)
        fy = (harmonic_Q(n, kind, points + ey) - harmonic_Q(n, kind, points - ey)) / (2 * h)
        np.testing.assert_allclose(gx, fx, atol=1e-8)
        np.testing.assert_allclose(gy, fy, atol=1e-8)

    def test_no_sine_of_degree_zero(self) -> None:
        with pytest.raises(DomainError):
            harmonic_Q(0, "sin", (1.0, 0.0))


class TestRadialProfile:
    def test_arithmetic_and_moments(self, coarse_grid: RadialGrid) -> None:
        g = coarse_grid.profile(gaussian_G)
        doubled = g + g
        assert isinstance(doubled, RadialProfile)
        assert doubled.integrate() == pytest.approx(2.0 * g.integrate())
        # int G rho^3 d rho = 8 / (4 pi)
        assert g.moment(2) == pytest.approx(2.0 / math.pi, rel=1e-8)

    def test_shape_checked(self, coarse_grid: RadialGrid) -> None:
        with pytest.raises(TypeError):
            RadialProfile(coarse_grid, np.zeros(3))

    def test_weighted_profiles_must_decay(self, coarse_grid: RadialGrid) -> None:
        flat = np.ones(coarse_grid.size)
        with pytest.raises(ValueError):
            RadialProfile(coarse_grid, flat)
        assert RadialProfile(coarse_grid, flat, "polynomial").decay == "polynomial"
        assert coarse_grid.profile(gaussian_G).is_decaying()

    def test_grid_cache_and_key(self) -> None:
        a = RadialGrid.build(256, 20.0, 1.5)
        b = RadialGrid.build(256, 20.0, 1.5)
        assert a is b
        assert a.key == (256, 20.0, 1.5)
