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

import argparse
import logging
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from pathlib import Path
from typing import Any, Dict, List, NamedTuple, Optional, Sequence

from pydantic import ValidationError

from ..asymptotics import beta_coefficients
from ..config import ExperimentConfig
from ..constants import SWEEP_PARAMETERS, SWEEP_SCHEMA
from ..errors import ConfigurationError, ValidationFailure
from .abc import CompositeMetaClass, MixinMeta
from .compare import compare_run
from .simulate import run_experiment
from .utils import circulations_for, render_table, series_for, write_json

log: logging.Logger = logging.getLogger("seina.vortexpair.harness.sweep")


class SweepPoint(NamedTuple):
    parameter: str
    value: float
    records: int
    final_time: float
    final_l1: float
    passed: Optional[bool]
    report: Optional[Dict[str, Any]]
    run: Optional[str]


def sweep_config(cfg: ExperimentConfig, parameter: str, value: float) -> ExperimentConfig:
    """
    ``cfg`` with one parameter replaced.

    A viscosity sweep rescales ``t0`` and ``t_end`` so that every point covers the same
    range of ``eps``.
    """
    if parameter not in SWEEP_PARAMETERS:
        raise ConfigurationError(
            "cannot sweep {!r}; choose one of {}".format(parameter, ", ".join(SWEEP_PARAMETERS))
        )
    data = cfg.model_dump()
    solver = data["solver"]
    if parameter == "gamma2":
        data["gamma2"] = float(value)
    elif parameter == "n":
        solver["n"] = int(value)
    elif parameter == "box":
        solver["box"] = float(value)
    else:
        scale = solver["nu"] / float(value)
        solver.update(nu=float(value), t0=solver["t0"] * scale, t_end=solver["t_end"] * scale)
    try:
        return ExperimentConfig.model_validate(data)
    except ValidationError as error:
        raise ConfigurationError(
            "{}={} gives an invalid experiment: {}".format(parameter, value, error)
        ) from error


def sweep_point(
    cfg: ExperimentConfig, parameter: str, value: float, out: Optional[str] = None
) -> SweepPoint:
    """Run one experiment and, when the series carries phase coefficients, compare it."""
    cache: Dict[Any, Any] = {}
    trajectory = run_experiment(cfg, cache)
    path = None
    if out is not None:
        path = str(trajectory.save(Path(out) / "{}_{:g}.csv".format(parameter, value)))
    series = series_for(cache, circulations_for(cfg), cfg.order, cfg.grid)
    report = None
    passed = None
    if series.order >= 4 and len(trajectory) >= 3:
        report = compare_run(trajectory, beta_coefficients(series).normalized)
        passed = bool(report["passed"])
    last = trajectory.records[-1]
    log.info("Point %s=%g finished at t=%.6g (passed: %s).", parameter, value, last.t, passed)
    return SweepPoint(
        parameter, value, len(trajectory), last.t, last.l1_error, passed, report, path
    )


def run_sweep(
    cfg: ExperimentConfig,
    parameter: str,
    values: Sequence[float],
    workers: Optional[int] = None,
    out: Optional[str] = None,
) -> List[SweepPoint]:
    """Run one experiment per value on a process pool; results come back in input order."""
    configs = [sweep_config(cfg, parameter, value) for value in values]
    if not configs:
        raise ConfigurationError("a sweep needs at least one value")
    workers = workers or max(1, min(len(configs), (os.cpu_count() or 2) // 2))
    log.info("Sweeping %s over %s values on %s workers.", parameter, len(configs), workers)
    points: Dict[int, SweepPoint] = {}
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = {
            pool.submit(sweep_point, config, parameter, value, out): index
            for index, (config, value) in enumerate(zip(configs, values))
        }
        for future in as_completed(futures):
            point = future.result()
            points[futures[future]] = point
            log.debug("Point %s=%g: %s records.", parameter, point.value, point.records)
    return [points[index] for index in range(len(configs))]


class Sweep(MixinMeta, metaclass=CompositeMetaClass):
    def register(self, subparsers: argparse._SubParsersAction) -> None:
        parser = subparsers.add_parser(
            "sweep", help="Repeat an experiment over values of nu, gamma2, n or box."
        )
        parser.add_argument("--config", required=True, help="Experiment JSON.")
        parser.add_argument("--parameter", required=True, choices=SWEEP_PARAMETERS)
        parser.add_argument("--values", required=True, type=float, nargs="+")
        parser.add_argument("--workers", type=int, help="Worker processes.")
        parser.add_argument("--out", required=True, help="Directory for runs and the summary.")
        parser.set_defaults(handler=self.sweep)
        super().register(subparsers)

    def sweep(self, args: argparse.Namespace) -> int:
        cfg = ExperimentConfig.from_json(args.config)
        points = run_sweep(cfg, args.parameter, args.values, args.workers, args.out)
        summary = Path(args.out) / "sweep_{}.json".format(args.parameter)
        write_json(
            summary,
            {
                "schema": SWEEP_SCHEMA,
                "parameter": args.parameter,
                "points": [point._asdict() for point in points],
            },
        )
        print(
            render_table(
                [
                    [point.value, point.records, point.final_time, point.final_l1, point.passed]
                    for point in points
                ],
                (args.parameter, "records", "t", "L1 error", "pass"),
            )
        )
        failed = [point.value for point in points if point.passed is False]
        if failed:
            raise ValidationFailure(
                "sweep of {} failed at {}; see {}".format(args.parameter, failed, summary)
            )
        return 0
