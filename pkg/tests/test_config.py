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

import pytest
from pydantic import ValidationError

from vortexpair.config import ExperimentConfig, GridSettings, SolverConfig
from vortexpair.errors import ConfigurationError
from vortexpair.harness.utils import circulations_for, render_table, write_json


class TestSolverConfig:
    def test_defaults(self) -> None:
        cfg = SolverConfig()
        assert cfg.n == 512
        assert cfg.epsilon0 == pytest.approx(0.05)
        assert cfg.spacing == pytest.approx(cfg.box / cfg.n)

    @pytest.mark.parametrize("n", [100, 8])
    def test_grid_size(self, n: int) -> None:
        with pytest.raises(ValidationError):
            SolverConfig(n=n)

    def test_regime(self) -> None:
        with pytest.raises(ValidationError):
            SolverConfig(box=4.0)
        with pytest.raises(ValidationError):
            SolverConfig(nu=1e-2, t0=2.0)
        with pytest.raises(ValidationError):
            SolverConfig(t0=2.5, t_end=1.0)

    def test_frozen(self) -> None:
        with pytest.raises(ValidationError):
            SolverConfig().nu = 1.0


class TestExperimentConfig:
    def test_flat_layout(self) -> None:
        cfg = ExperimentConfig.from_mapping(
            {"gamma2": 0.5, "order": 3, "nu": 2e-3, "t0": 1.0, "nodes": 512, "seed": 7}
        )
        assert cfg.gamma2 == 0.5
        assert cfg.solver.nu == 2e-3
        assert cfg.solver.t0 == 1.0
        assert cfg.grid.nodes == 512
        assert cfg.seed == 7

    def test_nested_layout(self) -> None:
        cfg = ExperimentConfig.from_mapping({"solver": {"n": 256}, "grid": {"power": 2.0}})
        assert cfg.solver.n == 256
        assert cfg.grid == GridSettings(power=2.0)

    def test_probes_need_order_two(self) -> None:
        with pytest.raises(ConfigurationError):
            ExperimentConfig.from_mapping({"order": 1})
        assert ExperimentConfig.from_mapping({"order": 1, "probes": False}).order == 1

    @pytest.mark.parametrize(
        "data",
        [{"gamma2": 1.5}, {"gamma1": -1.0, "gamma2": 1.0}, {"order": 11}, {"unknown": 1}],
    )
    def test_rejected(self, data) -> None:
        with pytest.raises(ConfigurationError):
            ExperimentConfig.from_mapping(data)

    def test_from_json(self, tmp_path) -> None:
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"gamma2": 0.25, "t_end": 20.0}), encoding="utf-8")
        cfg = ExperimentConfig.from_json(path)
        assert cfg.gamma2 == 0.25
        assert cfg.solver.t_end == 20.0

    def test_from_json_errors(self, tmp_path) -> None:
        with pytest.raises(ConfigurationError):
            ExperimentConfig.from_json(tmp_path / "absent.json")
        path = tmp_path / "list.json"
        path.write_text("[1, 2]", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            ExperimentConfig.from_json(path)
        path.write_text("{", encoding="utf-8")
        with pytest.raises(ConfigurationError):
            ExperimentConfig.from_json(path)

    def test_circulations(self) -> None:
        c = circulations_for(ExperimentConfig(gamma2=0.5))
        assert (c.gamma1, c.gamma2, c.d) == (1.0, 0.5, 1.0)


class TestOutput:
    def test_non_finite_values_become_null(self, tmp_path) -> None:
        path = write_json(tmp_path / "nested" / "doc.json", {"a": float("nan"), "b": [1.0, None]})
        assert json.loads(path.read_text(encoding="utf-8")) == {"a": None, "b": [1.0, None]}

    def test_table(self) -> None:
        table = render_table([["mass", 1.0]], ("check", "value"))
        assert table.splitlines()[0].startswith("|")
        assert "mass" in table
