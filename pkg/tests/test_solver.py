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

from vortexpair.asymptotics import Circulations
from vortexpair.config import SolverConfig
from vortexpair.errors import BlowUpError, ConfigurationError
from vortexpair.solver import (
    GridField,
    biot_savart_velocity,
    checkpoint,
    init_superposed_oseen,
    oseen_superposition,
    run,
    spectral_grid,
    stable_dt,
    step,
    tail_fraction,
)

NU = 1e-2
T0 = 0.9


@pytest.fixture(scope="module")
def cfg() -> SolverConfig:
    return SolverConfig(n=128, box=8.0, nu=NU, t0=T0, t_end=1.0, output_stride=1)


def _single(cfg: SolverConfig, t: float = T0) -> GridField:
    grid = spectral_grid(cfg.n, cfg.box)
    values = oseen_superposition(grid, [(0.0, 0.0)], [1.0], cfg.nu, t)
    return GridField(values, cfg.box, t, cfg.nu)


class TestInitialField:
    def test_mass_of_superposition(self, cfg: SolverConfig, pair: Circulations) -> None:
        w = init_superposed_oseen(pair, cfg)
        assert w.mass() == pytest.approx(2.0, abs=1e-10)
        np.testing.assert_allclose(w.moments(), [0.0, 0.0], atol=1e-10)

    def test_moment_of_unequal_pair(self, cfg: SolverConfig, unequal: Circulations) -> None:
        w = init_superposed_oseen(unequal, cfg)
        np.testing.assert_allclose(w.moments(), [0.0, 0.0], atol=1e-10)
        assert w.values[64, 64 + 5] > w.values[64, 64 - 11]

    def test_under_resolved_rejected(self, pair: Circulations) -> None:
        coarse = SolverConfig(n=16, box=8.0, nu=NU, t0=T0, t_end=1.0)
        with pytest.raises(ConfigurationError):
            init_superposed_oseen(pair, coarse)

    def test_separation_must_match(self, cfg: SolverConfig) -> None:
        with pytest.raises(ConfigurationError):
            init_superposed_oseen(Circulations(1.0, 1.0, d=0.5), cfg)

    def test_oseen_needs_positive_age(self, cfg: SolverConfig) -> None:
        with pytest.raises(ConfigurationError):
            oseen_superposition(spectral_grid(cfg.n, cfg.box), [(0.0, 0.0)], [1.0], NU, 0.0)

    def test_field_shape_checks(self) -> None:
        with pytest.raises(ValueError):
            GridField(np.zeros((12, 12)), 8.0, 1.0, NU)
        with pytest.raises(TypeError):
            GridField(np.zeros((16, 8)), 8.0, 1.0, NU)


class TestStepping:
    def test_diffusion_is_exact(self, cfg: SolverConfig) -> None:
        w = _single(cfg)
        later = step(w, 0.05, advect=False)
        assert later.time == pytest.approx(T0 + 0.05)
        np.testing.assert_allclose(later.values, _single(cfg, T0 + 0.05).values, atol=1e-9)

    def test_single_vortex_stays_oseen(self, cfg: SolverConfig) -> None:
        w = _single(cfg)
        for _ in range(5):
            w = step(w, 0.02)
        exact = _single(cfg, w.time).values
        error = np.sum(np.abs(w.values - exact)) * w.cell_area
        assert error <= 1e-3

    def test_velocity_of_single_vortex(self, cfg: SolverConfig) -> None:
        u, v = biot_savart_velocity(_single(cfg))
        # (x, y) = (0.5, 0) sits at row 64, column 72
        assert abs(u[64, 72]) <= 1e-3
        assert v[64, 72] == pytest.approx(1.0 / (2.0 * math.pi * 0.5), rel=0.02)

    def test_stable_dt(self, cfg: SolverConfig) -> None:
        rest = GridField(np.zeros((cfg.n, cfg.n)), cfg.box, T0, NU)
        assert stable_dt(rest, 0.5) == math.inf
        w = _single(cfg)
        u, v = biot_savart_velocity(w)
        speed = float(np.max(np.hypot(u, v)))
        assert stable_dt(w, 0.5) == pytest.approx(0.5 * cfg.spacing / speed)

    def test_tail_fraction(self, cfg: SolverConfig) -> None:
        assert tail_fraction(_single(cfg)) <= 1e-4
        noise = np.random.default_rng(0).standard_normal((cfg.n, cfg.n))
        assert tail_fraction(GridField(noise, cfg.box, T0, NU)) > 0.1


class TestRun:
    def test_conserves_mass_and_moment(self, cfg: SolverConfig, pair: Circulations) -> None:
        # the default 128-point box leaves the moment at the 1e-8 level
        cfg = cfg.model_copy(update={"n": 256})
        seen = []
        result = run(pair, cfg, probe=lambda w, steps: seen.append((steps, w.mass())))
        assert result.final.time == pytest.approx(cfg.t_end)
        assert result.steps >= 1
        assert result.record_times[0] == pytest.approx(T0)
        assert len(seen) == result.steps + 1
        for _, mass in seen:
            assert mass == pytest.approx(2.0, abs=1e-10)
        np.testing.assert_allclose(result.final.moments(), [0.0, 0.0], atol=1e-9)

    def test_resumes_from_initial_field(self, cfg: SolverConfig, pair: Circulations) -> None:
        start = init_superposed_oseen(pair, cfg)
        middle = run(pair, cfg.model_copy(update={"t_end": 0.95}), initial=start).final
        resumed = run(pair, cfg, initial=middle)
        assert resumed.record_times[0] == pytest.approx(0.95)
        assert resumed.final.time == pytest.approx(cfg.t_end)

    def test_blow_up(self, cfg: SolverConfig, pair: Circulations) -> None:
        broken = GridField(np.full((cfg.n, cfg.n), np.nan), cfg.box, T0, NU)
        with pytest.raises(BlowUpError):
            run(pair, cfg, initial=broken)


class TestCheckpoint:
    def test_round_trip(self, cfg: SolverConfig, pair: Circulations, tmp_path) -> None:
        w = init_superposed_oseen(pair, cfg)
        path, meta = checkpoint.save(w, tmp_path / "state.bin")
        assert meta.suffix == ".json"
        loaded = checkpoint.load(path)
        np.testing.assert_array_equal(loaded.values, w.values)
        assert (loaded.time, loaded.nu, loaded.box) == (w.time, w.nu, w.box)

    def test_rejects_foreign_schema(self, cfg: SolverConfig, pair: Circulations, tmp_path) -> None:
        path, meta = checkpoint.save(init_superposed_oseen(pair, cfg), tmp_path / "state.bin")
        meta.write_text('{"schema": "other"}', encoding="utf-8")
        with pytest.raises(ConfigurationError):
            checkpoint.load(path)

    def test_missing_file(self, tmp_path) -> None:
        with pytest.raises(ConfigurationError):
            checkpoint.load(tmp_path / "absent.bin")


class TestConvergence:
    @staticmethod
    def _advance(pair: Circulations, n: int, dt: float, steps: int) -> GridField:
        grid = spectral_grid(n, 8.0)
        centers = [(pair.ell1, 0.0), (pair.ell2, 0.0)]
        values = oseen_superposition(grid, centers, (pair.gamma1, pair.gamma2), NU, T0)
        w = GridField(values, 8.0, T0, NU)
        for _ in range(steps):
            w = step(w, dt)
        return w

    def test_spatial(self, pair: Circulations) -> None:
        fine = self._advance(pair, 256, 0.01, 5).values[::2, ::2]
        medium = self._advance(pair, 128, 0.01, 5).values
        coarse = self._advance(pair, 64, 0.01, 5).values
        assert np.max(np.abs(medium - fine)) <= 0.25 * np.max(np.abs(coarse - fine[::2, ::2]))

    def test_temporal(self, pair: Circulations) -> None:
        runs = [self._advance(pair, 128, 0.02 / 2**k, 2 * 2**k).values for k in range(3)]
        first = np.max(np.abs(runs[0] - runs[1]))
        second = np.max(np.abs(runs[1] - runs[2]))
        assert first / second >= 8.0

    def test_single_vortex_over_four_ages(self, pair: Circulations) -> None:
        cfg = SolverConfig(n=256, box=8.0, nu=NU, t0=T0, t_end=4.0 * T0, output_stride=50)
        w = _single(cfg)
        final = run(pair, cfg, initial=w).final
        exact = _single(cfg, final.time).values
        assert final.time == pytest.approx(4.0 * T0)
        assert np.sum(np.abs(final.values - exact)) * final.cell_area <= 1e-3
        assert final.mass() == pytest.approx(w.mass(), abs=1e-12)
