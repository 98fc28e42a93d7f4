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
import json
import logging
import math
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from ..constants import (
    DRIFT_COEFFICIENT_TOLERANCE,
    DRIFT_EXPONENT,
    DRIFT_EXPONENT_TOLERANCE,
    L1_FIT_HORIZON,
    L1_FIT_RESIDUAL,
    MASS_DRIFT_TOLERANCE,
    MOMENT_DRIFT_TOLERANCE,
    REMAINDER_EXPONENT,
    REMAINDER_HALVING_TOLERANCE,
    REPORT_SCHEMA,
    SERIES_SCHEMA,
    TWO_PI,
)
from ..errors import ConfigurationError, DomainError, ValidationFailure
from .abc import CompositeMetaClass, MixinMeta
from .diagnostics import fit_drift, fit_through_origin, measure_phase
from .models import PairTrajectory
from .utils import render_table, write_json

log: logging.Logger = logging.getLogger("seina.vortexpair.harness.compare")


def _load_beta(path: str) -> List[float]:
    try:
        document = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as error:
        raise ConfigurationError("cannot read coefficients {}: {}".format(path, error)) from error
    if document.get("schema") != SERIES_SCHEMA:
        raise ConfigurationError("{} is not a {} document".format(path, SERIES_SCHEMA))
    beta = document.get("beta")
    if not beta or len(beta.get("normalized", ())) < 5:
        raise ConfigurationError("{} carries no phase coefficients (order < 4)".format(path))
    return [float(b) for b in beta["normalized"]]


def remainder_scaling(trajectory: PairTrajectory) -> Dict[str, Any]:
    """
    Halving ratio of the projected remainder norm in ``eps`` from a log-log fit.

    ``pass`` is ``None`` when fewer than 3 records carry a remainder or the records span
    less than a factor 2 in ``eps``.
    """
    norms = trajectory.column("remainder_norm")
    epsilons = trajectory.epsilons
    kept = np.isfinite(norms) & (norms > 0.0)
    expected = 2.0**REMAINDER_EXPONENT
    if np.count_nonzero(kept) < 3 or np.max(epsilons[kept]) < 2.0 * np.min(epsilons[kept]):
        log.warning("Too few remainder measurements to check the nu eps^2 scaling.")
        return {
            "exponent": math.nan,
            "halving_ratio": math.nan,
            "expected": expected,
            "pass": None,
        }
    exponent = float(np.polyfit(np.log(epsilons[kept]), np.log(norms[kept]), 1)[0])
    ratio = 2.0**exponent
    return {
        "exponent": exponent,
        "halving_ratio": ratio,
        "expected": expected,
        "pass": abs(ratio / expected - 1.0) <= REMAINDER_HALVING_TOLERANCE,
    }


def compare_run(
    trajectory: PairTrajectory, beta: Sequence[float], validity: Optional[List[str]] = None
) -> Dict[str, Any]:
    """Fit the recorded run against the asymptotic predictions."""
    meta = trajectory.metadata
    c = meta.circulations
    if len(trajectory) < 3:
        raise ConfigurationError("a comparison needs at least 3 records")
    times = trajectory.times
    nu_t = meta.nu * times

    window = nu_t / meta.d**2 <= L1_FIT_HORIZON
    if np.count_nonzero(window) < 2:
        window = np.ones_like(window)
    l1 = fit_through_origin(nu_t[window], trajectory.column("l1_error")[window])
    l1_pass = l1.relative_residual <= L1_FIT_RESIDUAL

    _, drift = measure_phase(times, trajectory.centers, c)
    expected = c.gamma / (TWO_PI * meta.d**2) * beta[4] * meta.nu**2 / (3.0 * meta.d**4)
    if times[-1] < 10.0 * times[0]:
        log.warning("The run covers t in [%.4g, %.4g], less than a decade.", times[0], times[-1])
    try:
        fit = fit_drift(times, drift)
        exponent, coefficient, cubic = fit.exponent, fit.coefficient, fit.cubic_coefficient
    except DomainError as error:
        log.warning("Drift fit failed: %s", error)
        exponent = coefficient = cubic = math.nan
    ratio = cubic / expected if expected != 0.0 else math.nan
    exponent_pass = abs(exponent - DRIFT_EXPONENT) <= DRIFT_EXPONENT_TOLERANCE
    coefficient_pass = abs(ratio - 1.0) <= DRIFT_COEFFICIENT_TOLERANCE
    sign_pass = bool(np.sign(cubic) == np.sign(expected)) and expected != 0.0

    mass = trajectory.column("mass")
    moments = np.array([record.moment for record in trajectory.records])
    mass_drift = float(np.max(np.abs(mass - mass[0])))
    moment_drift = float(np.max(np.abs(moments - moments[0])))
    mass_pass = mass_drift <= MASS_DRIFT_TOLERANCE * abs(c.gamma)
    moment_pass = moment_drift <= MOMENT_DRIFT_TOLERANCE

    energy = trajectory.column("energy_w0")
    measured = energy[np.isfinite(energy)]
    energy_pass = bool(np.all(measured >= 0.0))
    scaling = remainder_scaling(trajectory)

    passed = l1_pass and exponent_pass and sign_pass and mass_pass and moment_pass and energy_pass
    passed = passed and scaling["pass"] is not False
    if not coefficient_pass:
        log.warning(
            "Drift coefficient ratio %.4g is outside 1 +/- %s; asserting sign and exponent.",
            ratio,
            DRIFT_COEFFICIENT_TOLERANCE,
        )
    return {
        "schema": REPORT_SCHEMA,
        "circulations": {"gamma1": c.gamma1, "gamma2": c.gamma2, "d": c.d},
        "nu": meta.nu,
        "records": len(trajectory),
        "l1": {
            "slope": l1.slope,
            "residual": l1.residual,
            "relative_residual": l1.relative_residual,
            "samples": int(np.count_nonzero(window)),
            "pass": l1_pass,
        },
        "drift": {
            "exponent": exponent,
            "coefficient": coefficient,
            "cubic_coefficient": cubic,
            "expected": expected,
            "ratio": ratio,
            "exponent_pass": exponent_pass,
            "coefficient_pass": coefficient_pass,
            "sign_pass": sign_pass,
        },
        "conservation": {
            "mass_drift": mass_drift,
            "moment_drift": moment_drift,
            "mass_pass": mass_pass,
            "moment_pass": moment_pass,
        },
        "energy_nonnegative": energy_pass,
        "remainder": scaling,
        "validity": validity if validity is not None else c.validity_flags(),
        "passed": passed,
    }


class Compare(MixinMeta, metaclass=CompositeMetaClass):
    def register(self, subparsers: argparse._SubParsersAction) -> None:
        parser = subparsers.add_parser(
            "compare", help="Check a recorded run against the asymptotic predictions."
        )
        parser.add_argument("--run", required=True, help="Trajectory CSV from simulate.")
        parser.add_argument("--coeffs", required=True, help="Series JSON from expand.")
        parser.add_argument("--out", required=True, help="Report JSON to write.")
        parser.set_defaults(handler=self.compare)
        super().register(subparsers)

    def compare(self, args: argparse.Namespace) -> int:
        trajectory = PairTrajectory.load(args.run)
        report = compare_run(trajectory, _load_beta(args.coeffs))
        report["run"] = str(args.run)
        report["coeffs"] = str(args.coeffs)
        write_json(args.out, report)
        l1, drift, kept = report["l1"], report["drift"], report["conservation"]
        scaling = report["remainder"]
        rows = [
            ["L1 relative residual", l1["relative_residual"], l1["pass"]],
            ["drift exponent", drift["exponent"], drift["exponent_pass"]],
            ["drift coefficient ratio", drift["ratio"], drift["coefficient_pass"]],
            ["mass drift", kept["mass_drift"], kept["mass_pass"]],
            ["moment drift", kept["moment_drift"], kept["moment_pass"]],
            ["remainder halving ratio", scaling["halving_ratio"], scaling["pass"]],
        ]
        print(render_table(rows, ("check", "value", "pass")))
        for flag in report["validity"]:
            log.warning("Outside the validated regime: %s.", flag)
        if not report["passed"]:
            raise ValidationFailure("comparison of {} failed; see {}".format(args.run, args.out))
        return 0
