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

import csv
import math

import numpy as np
import pytest

from vortexpair.asymptotics import Circulations, EpsilonSeries
from vortexpair.errors import CollisionError, DomainError
from vortexpair.trajectories import (
    TRAJECTORY_COLUMNS,
    PairState,
    corrected_phase,
    integrate_n_body,
    kirchhoff_hamiltonian,
    linear_impulse,
    minimum_distance,
    pair_centers,
    period,
    point_vortex_rhs,
    predicted_state,
    two_vortex_exact,
    write_csv,
)
from vortexpair.trajectories import point_vortex


class TestPointVortices:
    def test_pair_rotates_rigidly(self, pair: Circulations) -> None:
        t_end = 10.0 * period(pair)
        trajectory = integrate_n_body(pair_centers(pair, 0.0), (1.0, 1.0), t_end, tol=1e-12)
        exact = two_vortex_exact(pair, t_end)
        np.testing.assert_allclose(trajectory.final, exact.centers, atol=1e-8)
        assert trajectory.phase()[-1] == pytest.approx(20.0 * math.pi, rel=1e-9)

    def test_unequal_pair(self, unequal: Circulations) -> None:
        t_end = 2.0 * period(unequal)
        trajectory = integrate_n_body(pair_centers(unequal, 0.0), (1.0, 0.5), t_end, tol=1e-12)
        np.testing.assert_allclose(
            trajectory.final, two_vortex_exact(unequal, t_end).centers, atol=1e-8
        )
        for state in trajectory.states():
            assert state.separation == pytest.approx(1.0, rel=1e-9)

    def test_unequal_pair_over_ten_periods(self, unequal: Circulations) -> None:
        gammas = (1.0, 0.5)
        z0 = pair_centers(unequal, 0.0)
        trajectory = integrate_n_body(z0, gammas, 10.0 * period(unequal), tol=1e-12)
        energy = kirchhoff_hamiltonian(z0, gammas)
        for t, positions in zip(trajectory.times, trajectory.positions):
            exact = two_vortex_exact(unequal, float(t)).centers
            np.testing.assert_allclose(positions, exact, atol=1e-8)
            assert kirchhoff_hamiltonian(positions, gammas) == pytest.approx(energy, abs=1e-8)

    def test_invariants_of_three_vortices(self) -> None:
        z0 = [(0.0, 0.0), (1.0, 0.0), (0.3, 0.8)]
        gammas = (1.0, 0.7, -0.4)
        trajectory = integrate_n_body(z0, gammas, 10.0, tol=1e-12)
        start = kirchhoff_hamiltonian(z0, gammas)
        impulse = linear_impulse(z0, gammas)
        for positions in trajectory.positions:
            assert kirchhoff_hamiltonian(positions, gammas) == pytest.approx(start, abs=1e-8)
            np.testing.assert_allclose(linear_impulse(positions, gammas), impulse, atol=1e-8)

    def test_rhs_of_pair(self) -> None:
        velocity = point_vortex_rhs([(0.5, 0.0), (-0.5, 0.0)], (1.0, 1.0))
        np.testing.assert_allclose(velocity, [[0.0, 0.5 / math.pi], [0.0, -0.5 / math.pi]])

    def test_rejections(self) -> None:
        with pytest.raises(DomainError):
            point_vortex_rhs([(0.0, 0.0), (0.0, 0.0)], (1.0, 1.0))
        with pytest.raises(DomainError):
            point_vortex_rhs([(0.0, 0.0), (1.0, 0.0)], (1.0,))
        with pytest.raises(DomainError):
            integrate_n_body([(0.0, 0.0), (1.0, 0.0)], (1.0, 1.0), -1.0)

    def test_collision_guard(self, monkeypatch: pytest.MonkeyPatch) -> None:
        monkeypatch.setattr(point_vortex, "COLLISION_FRACTION", 1.5)
        with pytest.raises(CollisionError) as info:
            integrate_n_body([(0.5, 0.0), (-0.5, 0.0)], (1.0, 1.0), 1.0)
        assert info.value.distance == pytest.approx(1.0, rel=1e-6)

    def test_minimum_distance(self) -> None:
        assert minimum_distance([(0.0, 0.0)]) == math.inf
        assert minimum_distance([(0.0, 0.0), (3.0, 4.0), (0.0, 1.0)]) == pytest.approx(1.0)

    def test_zero_horizon(self, pair: Circulations) -> None:
        trajectory = integrate_n_body(pair_centers(pair, 0.0), (1.0, 1.0), 0.0)
        assert len(trajectory) == 1


class TestPhase:
    def test_pair_geometry(self, unequal: Circulations) -> None:
        centers = pair_centers(unequal, 0.7, alpha=1.2)
        state = PairState(centers, 0.7, 1.2)
        assert state.separation == pytest.approx(1.2)
        np.testing.assert_allclose(state.momentum(1.0, 0.5), [0.0, 0.0], atol=1e-14)
        delta = centers[0] - centers[1]
        assert math.atan2(delta[1], delta[0]) == pytest.approx(0.7)

    def test_period(self, pair: Circulations) -> None:
        assert period(pair) == pytest.approx(2.0 * math.pi**2)

    def test_inviscid_phase_is_linear(self, pair: Circulations) -> None:
        times = np.linspace(0.0, 5.0, 11)
        theta, omega = corrected_phase(pair, [1.0, 0.0, 0.0, 0.0, 2.5], 0.0, times)
        np.testing.assert_allclose(theta, times / math.pi)
        np.testing.assert_allclose(omega, 1.0 / math.pi)

    def test_cubic_correction(self, pair: Circulations) -> None:
        nu, beta4 = 1e-3, 2.5
        times = np.linspace(1.0, 20.0, 40)
        theta, omega = corrected_phase(pair, [1.0, 0.0, 0.0, 0.0, beta4], nu, times)
        rate = 1.0 / math.pi
        np.testing.assert_allclose(theta, rate * (times + beta4 * nu**2 * times**3 / 3.0))
        np.testing.assert_allclose(omega, rate * (1.0 + beta4 * nu**2 * times**2))
        slope = np.gradient(theta, times, edge_order=2)
        np.testing.assert_allclose(slope, omega, rtol=1e-6)

    def test_negative_viscosity(self, pair: Circulations) -> None:
        with pytest.raises(ValueError):
            corrected_phase(pair, [1.0], -1.0, 1.0)

    def test_predicted_state(self, pair: Circulations, series2: EpsilonSeries) -> None:
        nu, t = 1e-3, 2.5
        state = predicted_state(pair, [1.0, 0.0, 0.0, 0.0, 1.0], nu, t, series2)
        assert state.alpha == pytest.approx(series2.alpha(math.sqrt(nu * t)))
        assert state.separation == pytest.approx(state.alpha)
        assert predicted_state(pair, [1.0], nu, t).alpha == 1.0

    def test_state_shape(self) -> None:
        with pytest.raises(TypeError):
            PairState(np.zeros(3), 0.0)


class TestCsv:
    def test_layout(self, pair: Circulations, tmp_path) -> None:
        rows = [two_vortex_exact(pair, t).row() + [0.1 * t] for t in (0.0, 1.0, 2.0)]
        path = write_csv(tmp_path / "out" / "pair.csv", rows, ["l1_err"])
        with path.open(newline="", encoding="utf-8") as fp:
            table = list(csv.reader(fp))
        assert table[0] == list(TRAJECTORY_COLUMNS) + ["l1_err"]
        assert len(table) == 4
        assert float(table[2][0]) == 1.0

    def test_row_length_checked(self, tmp_path) -> None:
        with pytest.raises(ValueError):
            write_csv(tmp_path / "bad.csv", [[0.0, 1.0]])
