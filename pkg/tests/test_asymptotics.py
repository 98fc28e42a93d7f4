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
from typing import Tuple

import numpy as np
import pytest

from vortexpair.asymptotics import (
    Circulations,
    EpsilonSeries,
    SeriesBuilder,
    beta4_closed_form,
    beta4_dual_form,
    beta_coefficients,
    build_order2,
    construct_approximation,
    moment_expansion,
    multipole_moments,
    residual,
    series_inverse,
    series_power,
    shifted_stream,
    toy_identity_defects,
)
from vortexpair.constants import UPSILON_OFFSET
from vortexpair.errors import ConstructionError, DomainError, UnsupportedOrderError
from vortexpair.modes import ModeField, absolute_moment, apply_Lambda, mass_and_moment
from vortexpair.profiles import gaussian_G, upsilon
from vortexpair.profiles.grid import RadialGrid


def _inner_sup(f: ModeField) -> float:
    inner = f.grid.nodes <= 0.5 * f.grid.rho_max
    return float(max(np.max(np.abs(f.cos[:, inner])), np.max(np.abs(f.sin[:, inner]))))


class TestCirculations:
    def test_geometry(self, unequal: Circulations) -> None:
        assert unequal.gamma == 1.5
        assert unequal.ell1 - unequal.ell2 == pytest.approx(unequal.d)
        assert unequal.gamma1 * unequal.ell1 + unequal.gamma2 * unequal.ell2 == pytest.approx(0.0)

    def test_rejects_degenerate(self) -> None:
        with pytest.raises(DomainError):
            Circulations(1.0, -1.0)
        with pytest.raises(DomainError):
            Circulations(1.0, 0.0)
        with pytest.raises(DomainError):
            Circulations(1.0, 1.0, d=0.0)

    def test_validity_flags(self) -> None:
        assert Circulations(1.0, 1.0).validity_flags() == []
        assert len(Circulations(1.0, 0.01).validity_flags()) == 1
        assert len(Circulations(1.0, -0.99).validity_flags()) == 1


class TestMomentExpansion:
    def test_gaussian_terms(self, grid: RadialGrid) -> None:
        gauss = ModeField.radial(grid, gaussian_G(grid.nodes))
        first, second = moment_expansion(gauss, 2)
        rho = grid.nodes
        np.testing.assert_allclose(first.cos[1], rho / (2.0 * math.pi), rtol=1e-9)
        np.testing.assert_allclose(second.cos[2], -(rho**2) / (4.0 * math.pi), rtol=1e-9)
        assert np.max(np.abs(first.cos[0])) <= 1e-12

    def test_multipole_of_shifted_field(self, grid: RadialGrid) -> None:
        rho = grid.nodes
        shifted = ModeField.from_profile(grid, 1, "sin", rho * gaussian_G(rho))
        mu = multipole_moments(shifted, 2)
        assert abs(mu[0]) <= 1e-12
        assert mu[1] == pytest.approx(2.0j, abs=1e-9)

    @pytest.mark.parametrize("order", [2, 4, 6])
    def test_truncation_against_convolution(self, grid: RadialGrid, order: int) -> None:
        # unit Gaussian centred at (0.5, 0), evaluated at (-rho_k, 0)
        shift = 0.5
        phi = 2.0 * math.pi * np.arange(64) / 64
        x = np.cos(phi)[:, None] * grid.nodes - shift
        y = np.sin(phi)[:, None] * grid.nodes
        omega = ModeField.from_samples(grid, gaussian_G(np.hypot(x, y)), 24)
        k = int(np.argmin(np.abs(grid.nodes - 1.0)))
        rho_k = float(grid.nodes[k])

        def error(lam: float) -> float:
            stream = shifted_stream(omega, lam, order)
            value = sum((-1.0) ** n * stream.cos[n][k] for n in range(stream.max_mode + 1))
            distance = 1.0 / lam - rho_k - shift
            exact = upsilon(distance) + UPSILON_OFFSET + math.log(lam) / (2.0 * math.pi)
            return abs(value - exact)

        assert error(0.1) / error(0.05) == pytest.approx(2.0 ** (order + 1), rel=0.2)

    def test_order_range(self, grid: RadialGrid) -> None:
        with pytest.raises(UnsupportedOrderError):
            moment_expansion(ModeField.zeros(grid), 0)

    def test_series_helpers(self) -> None:
        inverse = series_inverse([1.0, 0.5], 4)
        np.testing.assert_allclose(inverse, [1.0, -0.5, 0.25, -0.125])
        np.testing.assert_allclose(series_power(np.array([1.0, 1.0, 0.0]), 2, 3), [1.0, 2.0, 1.0])


class TestOrderTwo:
    def test_profiles(self, grid: RadialGrid, pair: Circulations) -> None:
        euler, _ = build_order2(pair, grid)
        rho = grid.nodes
        assert np.all(euler.values > 0.0)
        inner = rho <= 0.5 * grid.rho_max
        image = apply_Lambda(ModeField.from_profile(grid, 2, "cos", euler))
        source = -(rho**2) / (16.0 * math.pi**2) * np.exp(-rho * rho / 4.0)
        scale = np.max(np.abs(source))
        assert np.max(np.abs(image.sin[2][inner] - source[inner])) <= 1e-5 * scale

    def test_series_matches_universal_profile(
        self, grid: RadialGrid, pair: Circulations, series2: EpsilonSeries
    ) -> None:
        euler, _ = build_order2(pair, grid)
        for i in (1, 2):
            component = series2.euler[2].component(i)
            expected = pair.partner(i) * euler.values
            np.testing.assert_allclose(
                component.cos[2], expected, atol=1e-6 * np.max(np.abs(expected))
            )

    def test_beta4_forms_agree(self, grid: RadialGrid, unequal: Circulations) -> None:
        euler, _ = build_order2(unequal, grid)
        closed = beta4_closed_form(unequal, euler)
        assert closed != 0.0
        assert beta4_dual_form(unequal, euler) == pytest.approx(closed, rel=1e-6)


class TestConstruction:
    def test_leading_rotation(self, series2: EpsilonSeries, pair: Circulations) -> None:
        assert series2.theta_dot_euler[0] == pytest.approx(-pair.gamma / (2.0 * math.pi), rel=1e-8)

    def test_masses_and_moments(self, series4: EpsilonSeries) -> None:
        c = series4.circulations
        for i in (1, 2):
            mass, _ = mass_and_moment(series4.euler[0].component(i))
            assert mass == pytest.approx(c.of(i), rel=1e-9)
        for k in range(1, series4.order + 1):
            for vector in (series4.euler[k], series4.viscous[k]):
                for component in vector:
                    mass, moment = mass_and_moment(component)
                    scale = max(component.max_abs(), 1.0)
                    assert abs(mass) <= 1e-7 * scale
                    assert np.max(np.abs(moment)) <= 1e-7 * scale

    def test_fourth_order_carries_no_mass(self, series4: EpsilonSeries) -> None:
        for vector in (series4.euler[4], series4.viscous[4]):
            for component in vector:
                mass, _ = mass_and_moment(component)
                assert abs(mass) <= 1e-10 * absolute_moment(component)

    @pytest.mark.parametrize("gamma2", [1.0, 0.5])
    def test_order_six(self, grid: RadialGrid, gamma2: float) -> None:
        series = construct_approximation(Circulations(1.0, gamma2), 6, grid)
        assert series.order == 6
        for k in range(1, 7):
            for vector in (series.euler[k], series.viscous[k]):
                for component in vector:
                    mass, moment = mass_and_moment(component)
                    scale = max(component.max_abs(), 1.0)
                    assert abs(mass) <= 1e-7 * scale
                    assert np.max(np.abs(moment)) <= 1e-7 * scale
        beta = beta_coefficients(series)
        assert beta.normalized[0] == pytest.approx(1.0, rel=1e-8)

    def test_euler_terms_are_even_in_xi2(self, series4: EpsilonSeries) -> None:
        for k in range(series4.order + 1):
            for component in series4.euler[k]:
                assert np.max(np.abs(component.sin)) == 0.0

    def test_order_limits(self, pair: Circulations, coarse_grid: RadialGrid) -> None:
        with pytest.raises(UnsupportedOrderError):
            construct_approximation(pair, 0, coarse_grid)

    def test_save_and_load(self, series2: EpsilonSeries, tmp_path) -> None:
        path = series2.save(tmp_path / "series.json")
        loaded = EpsilonSeries.load(path)
        assert loaded.circulations == series2.circulations
        assert loaded.order == series2.order
        assert loaded.theta_dot_euler == pytest.approx(series2.theta_dot_euler)
        np.testing.assert_allclose(loaded.euler[2].c1.cos, series2.euler[2].c1.cos)

    def test_builder_from_series(self, series2: EpsilonSeries) -> None:
        builder = SeriesBuilder.from_series(series2)
        assert builder.order == series2.order
        assert builder.theta[0][0] == series2.theta_dot_euler[0]


class TestPhase:
    def test_beta_coefficients(self, series4: EpsilonSeries) -> None:
        beta = beta_coefficients(series4)
        assert beta.normalized[0] == pytest.approx(1.0, rel=1e-8)
        assert abs(beta.normalized[2]) <= 1e-6
        assert abs(beta.normalized[3]) <= 1e-6
        assert beta.beta4 != 0.0
        assert beta.beta4 == pytest.approx(beta.beta4_closed, rel=1e-12)

    def test_low_order_rejected(self, series2: EpsilonSeries) -> None:
        with pytest.raises(UnsupportedOrderError):
            beta_coefficients(series2)

    def test_alpha_starts_at_one(self, series4: EpsilonSeries) -> None:
        assert series4.alpha(0.0) == 1.0


def test_residual_of_isolated_vortices(series2: EpsilonSeries) -> None:
    defect = residual(series2, 0.0, 1e-3)
    scale = float(np.max(gaussian_G(series2.grid.nodes)))
    for i, component in enumerate(defect, start=1):
        assert _inner_sup(component) <= 1e-5 * scale * abs(series2.circulations.of(i))


def _residual_size(series: EpsilonSeries, epsilon: float, nu: float) -> float:
    return max(_inner_sup(component) for component in residual(series, epsilon, nu))


class TestResidualScaling:
    def test_order_two_gains_three_powers(self, series2: EpsilonSeries) -> None:
        sizes = [_residual_size(series2, epsilon, 1e-5) for epsilon in (0.01, 0.005)]
        assert sizes[0] / sizes[1] == pytest.approx(8.0, rel=0.2)

    def test_inviscid_part_scales_with_inverse_viscosity(self, series2: EpsilonSeries) -> None:
        ratio = _residual_size(series2, 0.01, 1e-5) / _residual_size(series2, 0.01, 2e-5)
        assert ratio == pytest.approx(2.0, rel=0.2)

    @pytest.mark.slow
    def test_order_four_gains_five_powers(self, series4: EpsilonSeries) -> None:
        sizes = [_residual_size(series4, epsilon, 1e-5) for epsilon in (0.08, 0.04)]
        assert sizes[0] / sizes[1] == pytest.approx(32.0, rel=0.2)


class TestParitySplit:
    @staticmethod
    def _fields(grid: RadialGrid) -> Tuple[ModeField, ModeField]:
        rho = grid.nodes
        values = rho**2 * gaussian_G(rho)
        return (
            ModeField.from_profile(grid, 2, "cos", values),
            ModeField.from_profile(grid, 2, "sin", values),
        )

    def test_refuses_sizeable_wrong_parity(
        self, coarse_grid: RadialGrid, pair: Circulations
    ) -> None:
        even, odd = self._fields(coarse_grid)
        builder = SeriesBuilder(pair, coarse_grid)
        with pytest.raises(ConstructionError):
            builder._split(odd + even * 1e-3, "sin", 3, "H0")
        with pytest.raises(ConstructionError):
            builder._split(odd, "cos", 3, "H1")

    def test_drops_roundoff_with_a_log_line(
        self, coarse_grid: RadialGrid, pair: Circulations, caplog: pytest.LogCaptureFixture
    ) -> None:
        even, odd = self._fields(coarse_grid)
        builder = SeriesBuilder(pair, coarse_grid)
        with caplog.at_level(logging.DEBUG, logger="seina.vortexpair.asymptotics.core"):
            kept = builder._split(odd + even * 1e-12, "sin", 3, "H0")
        np.testing.assert_array_equal(kept.sin, odd.sin)
        assert not np.any(kept.cos)
        assert "H0 parity: discarded" in caplog.text


def test_toy_identities(grid: RadialGrid) -> None:
    defects = toy_identity_defects(grid)
    assert defects["functional_relation"] <= 1e-10
    for name, value in defects.items():
        assert value <= 1e-5, name
