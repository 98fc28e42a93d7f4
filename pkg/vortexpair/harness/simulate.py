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
import math
from typing import Any, Dict, List, Optional, Tuple

import numpy as np
from numpy.typing import NDArray

from .. import solver
from ..asymptotics import EpsilonSeries, beta_coefficients
from ..asymptotics.models import Circulations
from ..config import ExperimentConfig
from ..constants import TWO_PI
from ..errors import ConfigurationError, SingularProjectionError
from ..modes import inner_V
from ..momenta import build_pseudo_momenta, project_perturbation
from ..solver.models import GridField
from ..trajectories import corrected_phase, pair_centers
from .abc import CompositeMetaClass, MixinMeta
from .diagnostics import energy_W0, extract_centers, l1_error, measured_perturbation
from .models import PairTrajectory, Record, RunMetadata
from .utils import circulations_for, render_table, series_for

log: logging.Logger = logging.getLogger("seina.vortexpair.harness.simulate")


class RecordingProbe:
    """Solver probe that turns snapshots into :class:`Record` rows."""

    __slots__: Tuple[str, ...] = (
        "c",
        "series",
        "beta",
        "probes",
        "records",
        "_origin",
        "_theta",
        "_time",
        "_mass",
        "_moment",
    )

    def __init__(
        self,
        c: Circulations,
        series: EpsilonSeries,
        beta: Tuple[float, ...],
        nu: float,
        t0: float,
        probes: bool = True,
    ) -> None:
        self.c: Circulations = c
        self.series: EpsilonSeries = series
        self.beta: Tuple[float, ...] = beta
        self.probes: bool = probes
        self.records: List[Record] = []
        self._origin: float = float(corrected_phase(c, beta, nu, t0)[0])
        self._theta: float = 0.0
        self._time: float = t0
        self._mass: Optional[float] = None
        self._moment: Optional[NDArray[np.float64]] = None

    def _guesses(self, time: float, alpha: float) -> NDArray[np.float64]:
        turn = self.c.gamma / (TWO_PI * self.c.d**2) * (time - self._time)
        return pair_centers(self.c, self._theta + turn, alpha)

    def __call__(self, w: GridField, steps: int) -> None:
        c = self.c
        epsilon = math.sqrt(w.nu * w.time) / c.d
        alpha = self.series.alpha(epsilon)
        centers = extract_centers(w, self._guesses(w.time, alpha), (c.gamma1, c.gamma2), c.d)
        delta = centers[0] - centers[1]
        raw = math.atan2(delta[1], delta[0])
        theta = self._theta + math.remainder(raw - self._theta, TWO_PI)
        predicted = float(corrected_phase(c, self.beta, w.nu, w.time)[0]) - self._origin
        l1 = l1_error(w, c, pair_centers(c, predicted, alpha))

        mass = w.mass()
        moment = w.moments()
        if self._mass is None:
            self._mass, self._moment = mass, moment
        log.debug(
            "t=%.6g step %s: mass drift %.3e, moment drift %.3e, L1 %.6e.",
            w.time,
            steps,
            mass - self._mass,
            float(np.max(np.abs(moment - self._moment))),
            l1,
        )

        mu_o = mu_e = energy = remainder = math.nan
        if self.probes:
            omega = measured_perturbation(w, centers, theta, self.series)
            try:
                split = project_perturbation(omega, build_pseudo_momenta(self.series, epsilon))
            except SingularProjectionError as error:
                log.warning("Skipping projection at t=%.6g: %s", w.time, error)
            else:
                mu_o, mu_e = split.mu_o, split.mu_e
                energy = energy_W0(split.remainder)
                remainder = math.sqrt(max(inner_V(split.remainder, split.remainder), 0.0))

        self.records.append(
            Record(
                t=w.time,
                centers=centers,
                theta_measured=theta,
                theta_predicted=predicted,
                l1_error=l1,
                mass=mass,
                moment=moment,
                mu_o=mu_o,
                mu_e=mu_e,
                energy_w0=energy,
                remainder_norm=remainder,
            )
        )
        self._theta, self._time = theta, w.time


class Simulate(MixinMeta, metaclass=CompositeMetaClass):
    def register(self, subparsers: argparse._SubParsersAction) -> None:
        parser = subparsers.add_parser(
            "simulate", help="Run the pseudo-spectral solver and record the pair diagnostics."
        )
        parser.add_argument("--config", required=True, help="Experiment JSON.")
        parser.add_argument("--out", help="Trajectory CSV; defaults to the config's out.")
        parser.add_argument("--coeffs", help="Series JSON from expand, instead of rebuilding.")
        parser.add_argument("--resume", help="Checkpoint to start from instead of t0.")
        parser.add_argument("--checkpoint", help="Write the final field here.")
        parser.set_defaults(handler=self.simulate)
        super().register(subparsers)

    def simulate(self, args: argparse.Namespace) -> int:
        cfg = ExperimentConfig.from_json(args.config)
        out = args.out or cfg.out
        if out is None:
            raise ConfigurationError("no output path: pass --out or set out in the config")
        trajectory = self.simulate_experiment(cfg, args.coeffs, args.resume, args.checkpoint)
        trajectory.save(out)
        last = trajectory.records[-1]
        print(
            render_table(
                [
                    [
                        last.t,
                        last.theta_measured,
                        last.theta_predicted,
                        last.l1_error,
                        len(trajectory),
                    ]
                ],
                ("t", "theta", "theta (predicted)", "L1 error", "records"),
            )
        )
        return 0

    def simulate_experiment(
        self,
        cfg: ExperimentConfig,
        coeffs: Optional[str] = None,
        resume: Optional[str] = None,
        checkpoint: Optional[str] = None,
    ) -> PairTrajectory:
        return run_experiment(cfg, self.cache, coeffs, resume, checkpoint)


def run_experiment(
    cfg: ExperimentConfig,
    cache: Optional[Dict[Any, Any]] = None,
    coeffs: Optional[str] = None,
    resume: Optional[str] = None,
    checkpoint: Optional[str] = None,
) -> PairTrajectory:
    """Build or load the series, run the solver and collect one record per output stride."""
    c = circulations_for(cfg)
    series = series_for(cache if cache is not None else {}, c, cfg.order, cfg.grid, coeffs)
    beta: Tuple[float, ...] = ()
    if series.order >= 4:
        beta = beta_coefficients(series).normalized
    else:
        log.warning("Order %s has no phase corrections; predicting rigid rotation.", cfg.order)
    settings = cfg.solver
    initial = solver.checkpoint.load(resume) if resume else None
    if initial is not None and (initial.n != settings.n or initial.box != settings.box):
        raise ConfigurationError("checkpoint {} does not match the solver grid".format(resume))
    probe = RecordingProbe(c, series, beta, settings.nu, settings.t0, cfg.probes)
    result = solver.run(c, settings, probe, initial)
    if checkpoint:
        solver.checkpoint.save(result.final, checkpoint)
    metadata = RunMetadata(
        gamma1=c.gamma1,
        gamma2=c.gamma2,
        d=c.d,
        nu=settings.nu,
        t0=settings.t0,
        n=settings.n,
        box=settings.box,
        order=series.order,
    )
    log.info("Recorded %s snapshots over %s steps.", len(probe.records), result.steps)
    return PairTrajectory(metadata, tuple(probe.records))
