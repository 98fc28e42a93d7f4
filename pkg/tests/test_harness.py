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

import json
import math
import pickle
from typing import List

import numpy as np
import pytest

from vortexpair.asymptotics import Circulations
from vortexpair.config import ExperimentConfig
from vortexpair.constants import REPORT_SCHEMA, SERIES_SCHEMA, SWEEP_SCHEMA
from vortexpair.errors import (
    BlowUpError,
    ConfigurationError,
    ConstructionError,
    DomainError,
    ExtractionError,
)
from vortexpair.harness import (
    PairTrajectory,
    Record,
    RunMetadata,
    VortexPairLab,
    energy_W0,
    extract_centers,
    fit_drift,
    fit_through_origin,
    l1_error,
    main,
    measure_phase,
    self_similar_view,
)
from vortexpair.harness.compare import compare_run, remainder_scaling
from vortexpair.harness.sweep import run_sweep, sweep_config, sweep_point
from vortexpair.modes import ModeField, VectorModeField, mass_and_moment, partial
from vortexpair.profiles import gaussian_G
from vortexpair.profiles.grid import RadialGrid
from vortexpair.solver import GridField, oseen_superposition, spectral_grid
from vortexpair.trajectories import corrected_phase, pair_centers

NU = 1e-3
BETA = (1.0, 0.0, 0.0, 0.0, 10.0)
SMALL_RUN = {
    "gamma2": 1.0,
    "order": 2,
    "probes": False,
    "n": 128,
    "box": 8.0,
    "nu": 1e-2,
    "t0": 0.9,
    "t_end": 1.0,
    "output_stride": 2,
    "nodes": 1024,
    "rho_max": 24.0,
    "power": 1.5,
}


def _oseen_pair(n: int, t: float, centers, gammas=(1.0, 1.0)) -> GridField:
    grid = spectral_grid(n, 8.0)
    return GridField(oseen_superposition(grid, centers, gammas, NU, t), 8.0, t, NU)


def _synthetic_run(
    pair: Circulations, l1_slope: float = 0.5, remainder_power: float = math.nan
) -> PairTrajectory:
    metadata = RunMetadata(1.0, 1.0, 1.0, NU, 2.5, 128, 8.0, 4)
    times = np.linspace(2.5, 50.0, 20)
    origin = float(corrected_phase(pair, BETA, NU, times[0])[0])
    records: List[Record] = []
    for t in times:
        theta = float(corrected_phase(pair, BETA, NU, t)[0]) - origin
        records.append(
            Record(
                t=float(t),
                centers=pair_centers(pair, theta),
                theta_measured=theta,
                theta_predicted=theta,
                l1_error=l1_slope * NU * t,
                mass=2.0,
                moment=np.zeros(2),
                remainder_norm=0.3 * NU * math.sqrt(NU * t) ** remainder_power,
            )
        )
    return PairTrajectory(metadata, tuple(records))


class TestCentroids:
    def test_symmetric_pair(self) -> None:
        w = _oseen_pair(256, 2.5, [(0.5, 0.0), (-0.5, 0.0)])
        centers = extract_centers(w, [(0.45, 0.05), (-0.55, -0.02)], (1.0, 1.0))
        np.testing.assert_allclose(centers, [[0.5, 0.0], [-0.5, 0.0]], atol=1e-6)

    def test_off_grid_unequal_pair(self, unequal: Circulations) -> None:
        truth = pair_centers(unequal, 0.3)
        w = _oseen_pair(256, 2.5, truth, (1.0, 0.5))
        centers = extract_centers(w, truth + 0.03, (1.0, 0.5))
        np.testing.assert_allclose(centers, truth, atol=1e-6)

    def test_sign_matching(self) -> None:
        w = _oseen_pair(256, 2.5, [(0.5, 0.0), (-0.5, 0.0)], (1.0, -1.0))
        centers = extract_centers(w, [(0.5, 0.0), (-0.5, 0.0)], (1.0, -1.0))
        np.testing.assert_allclose(centers, [[0.5, 0.0], [-0.5, 0.0]], atol=1e-6)

    def test_empty_disk(self) -> None:
        w = _oseen_pair(256, 2.5, [(0.5, 0.0), (-0.5, 0.0)])
        with pytest.raises(ExtractionError):
            extract_centers(w, [(3.0, 3.0), (-0.5, 0.0)], (1.0, 1.0))


class TestFieldDiagnostics:
    def test_l1_error_of_exact_field(self, pair: Circulations) -> None:
        centers = [(0.5, 0.0), (-0.5, 0.0)]
        w = _oseen_pair(256, 2.5, centers)
        assert l1_error(w, pair, centers) == 0.0
        assert l1_error(w, pair, [(0.55, 0.0), (-0.45, 0.0)]) > 0.1

    def test_self_similar_view_of_oseen(self, coarse_grid: RadialGrid) -> None:
        w = _oseen_pair(512, 2.5, [(0.5, 0.0), (-0.5, 0.0)])
        view = self_similar_view(w, (0.5, 0.0), 0.0, grid=coarse_grid, max_mode=4)
        expected = gaussian_G(coarse_grid.nodes)
        peak = float(expected[0])
        np.testing.assert_allclose(view.cos[0], expected, atol=2e-3 * peak)
        assert np.max(np.abs(view.cos[1:])) <= 2e-3 * peak
        assert np.max(np.abs(view.sin)) <= 2e-3 * peak
        mass, _ = mass_and_moment(view)
        assert mass == pytest.approx(1.0, abs=2e-3)


class TestPhaseFits:
    def test_measure_phase_of_rigid_rotation(self, pair: Circulations) -> None:
        times = np.linspace(0.0, 30.0, 31)
        centers = np.array([pair_centers(pair, t / math.pi) for t in times])
        theta, drift = measure_phase(times, centers, pair)
        np.testing.assert_allclose(theta, times / math.pi, atol=1e-12)
        np.testing.assert_allclose(drift, 0.0, atol=1e-12)
        with pytest.raises(DomainError):
            measure_phase(times[:2], centers[:2], pair)

    def test_fit_through_origin(self) -> None:
        x = np.linspace(0.1, 1.0, 10)
        fit = fit_through_origin(x, 2.0 * x)
        assert fit.slope == pytest.approx(2.0)
        assert fit.relative_residual == pytest.approx(0.0, abs=1e-12)
        with pytest.raises(DomainError):
            fit_through_origin(np.zeros(3), np.ones(3))

    def test_fit_drift_recovers_cubic(self) -> None:
        times = np.linspace(2.0, 40.0, 30)
        drift = 3e-6 * (times**3 - times[0] ** 3)
        fit = fit_drift(times, drift)
        assert fit.exponent == pytest.approx(3.0, rel=1e-5)
        assert fit.coefficient == pytest.approx(3e-6, rel=1e-4)
        assert fit.cubic_coefficient == pytest.approx(3e-6, rel=1e-10)

    def test_fit_drift_needs_positive_times(self) -> None:
        with pytest.raises(DomainError):
            fit_drift([0.0, 1.0, 2.0], [0.0, 1.0, 8.0])


class TestEnergy:
    def test_translation_mode_has_no_energy(self, grid: RadialGrid) -> None:
        gauss = ModeField.radial(grid, gaussian_G(grid.nodes))
        assert abs(energy_W0(partial(gauss, 1))) <= 1e-6
        assert energy_W0(ModeField.zeros(grid, 2)) == 0.0

    def test_quadratic_and_additive(self, grid: RadialGrid) -> None:
        rho = grid.nodes
        f = ModeField.from_profile(grid, 2, "cos", rho * rho * gaussian_G(rho))
        single = energy_W0(f)
        assert energy_W0(f * 2.0) == pytest.approx(4.0 * single, rel=1e-12)
        assert energy_W0(VectorModeField(f, f)) == pytest.approx(2.0 * single, rel=1e-12)


class TestRunFiles:
    def test_save_and_load(self, pair: Circulations, tmp_path) -> None:
        run = _synthetic_run(pair)
        path = run.save(tmp_path / "run.csv")
        loaded = PairTrajectory.load(path)
        assert loaded.metadata == run.metadata
        np.testing.assert_allclose(loaded.times, run.times)
        np.testing.assert_allclose(loaded.centers, run.centers)
        assert np.all(np.isnan(loaded.column("mu_o")))
        np.testing.assert_allclose(loaded.epsilons, np.sqrt(NU * run.times))

    def test_times_must_increase(self, pair: Circulations) -> None:
        run = _synthetic_run(pair)
        with pytest.raises(ValueError):
            run.appended(run.records[0])

    def test_missing_sidecar(self, pair: Circulations, tmp_path) -> None:
        path = _synthetic_run(pair).save(tmp_path / "run.csv")
        path.with_name(path.name + ".meta.json").unlink()
        with pytest.raises(ConfigurationError):
            PairTrajectory.load(path)


class TestCompare:
    def test_consistent_run_passes(self, pair: Circulations) -> None:
        report = compare_run(_synthetic_run(pair), BETA)
        assert report["schema"] == REPORT_SCHEMA
        assert report["l1"]["slope"] == pytest.approx(0.5)
        assert report["drift"]["exponent"] == pytest.approx(3.0, abs=1e-3)
        assert report["drift"]["ratio"] == pytest.approx(1.0, rel=1e-6)
        assert report["passed"]

    def test_wrong_sign_fails(self, pair: Circulations) -> None:
        report = compare_run(_synthetic_run(pair), (1.0, 0.0, 0.0, 0.0, -10.0))
        assert not report["drift"]["sign_pass"]
        assert not report["passed"]

    def test_remainder_scaling_like_nu_eps_squared(self, pair: Circulations) -> None:
        report = compare_run(_synthetic_run(pair, remainder_power=2.0), BETA)
        assert report["remainder"]["halving_ratio"] == pytest.approx(4.0, rel=1e-9)
        assert report["remainder"]["pass"] is True
        assert report["passed"]

    def test_remainder_scaling_like_eps_fails(self, pair: Circulations) -> None:
        report = compare_run(_synthetic_run(pair, remainder_power=1.0), BETA)
        assert report["remainder"]["halving_ratio"] == pytest.approx(2.0, rel=1e-9)
        assert report["remainder"]["pass"] is False
        assert not report["passed"]

    def test_remainder_scaling_needs_measurements(self, pair: Circulations) -> None:
        scaling = remainder_scaling(_synthetic_run(pair))
        assert scaling["pass"] is None
        assert math.isnan(scaling["halving_ratio"])
        run = _synthetic_run(pair, remainder_power=2.0)
        short = PairTrajectory(run.metadata, run.records[:3])
        assert remainder_scaling(short)["pass"] is None

    def test_too_few_records(self, pair: Circulations) -> None:
        run = _synthetic_run(pair)
        with pytest.raises(ConfigurationError):
            compare_run(PairTrajectory(run.metadata, run.records[:2]), BETA)


class TestSweep:
    def test_config_per_parameter(self) -> None:
        cfg = ExperimentConfig.from_mapping(SMALL_RUN)
        slower = sweep_config(cfg, "nu", 5e-3)
        assert slower.solver.nu == 5e-3
        assert slower.solver.t0 == pytest.approx(1.8)
        assert slower.solver.t_end == pytest.approx(2.0)
        assert slower.solver.epsilon0 == pytest.approx(cfg.solver.epsilon0)
        assert sweep_config(cfg, "n", 256.0).solver.n == 256
        assert sweep_config(cfg, "box", 16.0).solver.box == 16.0
        assert sweep_config(cfg, "gamma2", 0.5).gamma2 == 0.5

    def test_rejects_bad_points(self) -> None:
        cfg = ExperimentConfig.from_mapping(SMALL_RUN)
        with pytest.raises(ConfigurationError):
            sweep_config(cfg, "order", 4.0)
        with pytest.raises(ConfigurationError):
            sweep_config(cfg, "gamma2", 2.0)
        with pytest.raises(ConfigurationError):
            sweep_config(cfg, "n", 100.0)
        with pytest.raises(ConfigurationError):
            run_sweep(cfg, "n", [])

    def test_worker_errors_survive_pickling(self) -> None:
        for error in (
            ConstructionError(4, "mass defect"),
            BlowUpError(3, 1.5, 0.01),
            ExtractionError("lost vortex", 7),
        ):
            copy = pickle.loads(pickle.dumps(error))
            assert type(copy) is type(error)
            assert str(copy) == str(error)
        assert pickle.loads(pickle.dumps(ConstructionError(4, "x"))).order == 4

    def test_points_come_back_in_order(self, tmp_path) -> None:
        cfg = ExperimentConfig.from_mapping(SMALL_RUN)
        points = run_sweep(cfg, "n", [256.0, 128.0], workers=2, out=str(tmp_path))
        assert [point.value for point in points] == [256.0, 128.0]
        for point in points:
            assert point.records >= 2
            assert point.final_time == pytest.approx(1.0)
            assert point.passed is None
            assert PairTrajectory.load(point.run).metadata.n == int(point.value)


@pytest.mark.slow
class TestDeskRun:
    def test_equal_pair_follows_the_corrected_orbit(self) -> None:
        # n=512, box 16, nu=1e-3 up to nu t = 0.05
        point = sweep_point(ExperimentConfig(), "box", 16.0)
        report = point.report
        assert report is not None
        assert report["l1"]["pass"]
        assert report["drift"]["exponent_pass"]
        assert report["drift"]["sign_pass"]
        assert report["energy_nonnegative"]
        assert report["remainder"]["pass"] is True


class TestCommandLine:
    def test_missing_config(self, tmp_path) -> None:
        assert main(["simulate", "--config", str(tmp_path / "absent.json")]) == 2

    def test_invalid_config(self, tmp_path) -> None:
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({**SMALL_RUN, "gamma2": 2.0}), encoding="utf-8")
        assert main(["simulate", "--config", str(path)]) == 2

    def test_expand(self, tmp_path) -> None:
        out = tmp_path / "series.json"
        argv = ["expand", "--order", "2", "--nodes", "1024", "--rho-max", "24", "--out"]
        assert main(argv + [str(out)]) == 0
        document = json.loads(out.read_text(encoding="utf-8"))
        assert document["schema"] == SERIES_SCHEMA
        assert "beta" not in document
        assert document["validity"] == []

    def test_expand_sixth_order(self, tmp_path) -> None:
        out = tmp_path / "series.json"
        argv = ["expand", "--order", "6", "--gamma2", "0.5", "--nodes", "1024", "--out"]
        assert main(argv + [str(out)]) == 0
        document = json.loads(out.read_text(encoding="utf-8"))
        assert document["order"] == 6
        assert document["beta"]["normalized"][0] == pytest.approx(1.0)
        assert all(math.isfinite(value) for value in document["beta"]["raw"])

    def test_compare(self, pair: Circulations, tmp_path) -> None:
        run = _synthetic_run(pair).save(tmp_path / "run.csv")
        coeffs = tmp_path / "series.json"
        coeffs.write_text(
            json.dumps({"schema": SERIES_SCHEMA, "beta": {"normalized": list(BETA)}}),
            encoding="utf-8",
        )
        report = tmp_path / "report.json"
        argv = ["compare", "--run", str(run), "--coeffs", str(coeffs), "--out", str(report)]
        assert main(argv) == 0
        assert json.loads(report.read_text(encoding="utf-8"))["passed"] is True
        coeffs.write_text(
            json.dumps({"schema": SERIES_SCHEMA, "beta": {"normalized": [1.0, 0, 0, 0, -10.0]}}),
            encoding="utf-8",
        )
        assert main(argv) == 1

    def test_simulate_experiment(self) -> None:
        cfg = ExperimentConfig.from_mapping(SMALL_RUN)
        run = VortexPairLab().simulate_experiment(cfg)
        assert len(run) >= 2
        assert run.times[0] == pytest.approx(0.9)
        assert run.times[-1] == pytest.approx(1.0)
        np.testing.assert_allclose(run.column("mass"), 2.0, atol=1e-10)
        measured = run.column("theta_measured")
        predicted = run.column("theta_predicted")
        assert np.max(np.abs(measured - predicted)) <= 1e-2

    def test_sweep(self, tmp_path) -> None:
        config = tmp_path / "run.json"
        config.write_text(json.dumps(SMALL_RUN), encoding="utf-8")
        out = tmp_path / "sweep"
        argv = ["sweep", "--config", str(config), "--parameter", "box", "--values", "8"]
        assert main(argv + ["--workers", "1", "--out", str(out)]) == 0
        document = json.loads((out / "sweep_box.json").read_text(encoding="utf-8"))
        assert document["schema"] == SWEEP_SCHEMA
        assert [point["value"] for point in document["points"]] == [8.0]
        assert (out / "box_8.csv").exists()
        assert main(argv[:-1] + ["4", "--out", str(out)]) == 2
