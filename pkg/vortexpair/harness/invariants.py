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
from typing import Any, Dict, List, NamedTuple, Optional

import numpy as np

from ..asymptotics import (
    beta4_closed_form,
    beta4_dual_form,
    build_order2,
    construct_approximation,
    toy_identity_defects,
)
from ..asymptotics.models import Circulations
from ..config import GridSettings
from ..constants import EXACT_TOLERANCE, GRID_NODES, GRID_POWER, GRID_RHO_MAX, IDENTITY_TOLERANCE
from ..errors import ConfigurationError, DomainError, ValidationFailure
from ..modes import ModeField, apply_L, apply_Lambda, inner_Y, norm_Y
from ..momenta import build_pseudo_momenta, inner_product_matrix
from ..profiles.core import gaussian_G, gaussian_G_prime
from ..profiles.grid import RadialGrid
from .abc import CompositeMetaClass, MixinMeta
from .utils import grid_for, render_table, write_json

log: logging.Logger = logging.getLogger("seina.vortexpair.harness.invariants")


class Check(NamedTuple):
    name: str
    value: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return math.isfinite(self.value) and self.value <= self.tolerance


def _inner_sup(f: ModeField, grid: RadialGrid) -> float:
    inner = grid.nodes <= 0.5 * grid.rho_max
    return float(max(np.max(np.abs(f.cos[:, inner])), np.max(np.abs(f.sin[:, inner]))))


def random_field(grid: RadialGrid, rng: np.random.Generator, max_mode: int = 3) -> ModeField:
    """Gaussian-enveloped polynomial field with mode ``>= 1`` content only."""
    rho = grid.nodes
    envelope = np.exp(-rho * rho / 4.0)
    cos = np.zeros((max_mode + 1, grid.size))
    sin = np.zeros((max_mode + 1, grid.size))
    for n in range(1, max_mode + 1):
        for table in (cos, sin):
            a, b = rng.normal(size=2)
            table[n] = (a + b * rho * rho) * rho**n * envelope
    return ModeField(grid, cos, sin)


def operator_checks(grid: RadialGrid, seed: int = 0, pairs: int = 10) -> List[Check]:
    rho = grid.nodes
    gauss = ModeField.radial(grid, gaussian_G(rho))
    checks: List[Check] = []
    derivatives = {
        j: ModeField.from_profile(grid, 1, "cos" if j == 1 else "sin", gaussian_G_prime(rho))
        for j in (1, 2)
    }
    d1 = derivatives[1]
    scale = _inner_sup(d1, grid)
    checks.append(
        Check("Lambda[d1 G]", _inner_sup(apply_Lambda(d1), grid) / scale, IDENTITY_TOLERANCE)
    )
    relative = _inner_sup(apply_L(gauss), grid) / _inner_sup(gauss, grid)
    checks.append(Check("L G", relative, IDENTITY_TOLERANCE))
    for j in (1, 2):
        dj = derivatives[j]
        checks.append(
            Check(
                "(1/2 + L) d{} G".format(j),
                _inner_sup(apply_L(dj) + dj * 0.5, grid) / scale,
                IDENTITY_TOLERANCE,
            )
        )
    for name, value in toy_identity_defects(grid).items():
        exact = name == "functional_relation"
        checks.append(Check(name, value, EXACT_TOLERANCE if exact else IDENTITY_TOLERANCE))

    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(pairs):
        f, g = random_field(grid, rng), random_field(grid, rng)
        lf, lg = apply_Lambda(f), apply_Lambda(g)
        size = norm_Y(lf) * norm_Y(g) + norm_Y(f) * norm_Y(lg)
        worst = max(worst, abs(inner_Y(lf, g) + inner_Y(f, lg)) / size)
    checks.append(Check("Lambda skew in Y", worst, IDENTITY_TOLERANCE))
    return checks


def phase_checks(grid: RadialGrid, c: Circulations) -> List[Check]:
    euler2, _ = build_order2(c, grid)
    closed = beta4_closed_form(c, euler2)
    dual = beta4_dual_form(c, euler2)
    return [
        Check(
            "E_2 negativity",
            max(0.0, -float(np.min(euler2.values))) / float(np.max(euler2.values)),
            IDENTITY_TOLERANCE,
        ),
        Check("beta4 closed vs dual", abs(closed - dual) / abs(closed), IDENTITY_TOLERANCE),
    ]


def momenta_checks(grid: RadialGrid, c: Circulations, epsilon: float) -> List[Check]:
    series = construct_approximation(c, 2, grid)
    momenta = build_pseudo_momenta(series, epsilon)
    matrix = inner_product_matrix(momenta)
    scale = float(np.max(np.abs(matrix)))
    lambda2 = momenta.lambda_e[2]
    return [
        Check("lambda_e2 = Gamma / pi", abs(lambda2 - c.gamma / math.pi), EXACT_TOLERANCE),
        Check(
            "pairing antisymmetry",
            float(np.max(np.abs(matrix + matrix.T))) / scale,
            IDENTITY_TOLERANCE,
        ),
        Check(
            "<f_to, rho_te> = Gamma",
            abs(matrix[0, 1] - c.gamma) / abs(c.gamma),
            IDENTITY_TOLERANCE,
        ),
    ]


class Invariants(MixinMeta, metaclass=CompositeMetaClass):
    def register(self, subparsers: argparse._SubParsersAction) -> None:
        parser = subparsers.add_parser(
            "invariants", help="Evaluate the operator and pseudo-momenta identities."
        )
        parser.add_argument("--gamma2", type=float, default=1.0)
        parser.add_argument("--nodes", type=int, default=GRID_NODES)
        parser.add_argument("--rho-max", type=float, default=GRID_RHO_MAX)
        parser.add_argument("--power", type=float, default=GRID_POWER)
        parser.add_argument("--epsilon", type=float, default=0.05)
        parser.add_argument("--seed", type=int, default=0)
        parser.add_argument("--skip-momenta", action="store_true")
        parser.add_argument("--out", help="Optional JSON report.")
        parser.set_defaults(handler=self.invariants)
        super().register(subparsers)

    def run_checks(
        self,
        grid: RadialGrid,
        c: Circulations,
        epsilon: Optional[float] = 0.05,
        seed: int = 0,
    ) -> List[Check]:
        checks = operator_checks(grid, seed) + phase_checks(grid, c)
        if epsilon is not None:
            checks += momenta_checks(grid, c, epsilon)
        for check in checks:
            log.debug("%s = %.3e (tolerance %.1e).", check.name, check.value, check.tolerance)
        return checks

    def invariants(self, args: argparse.Namespace) -> int:
        grid = grid_for(GridSettings(nodes=args.nodes, rho_max=args.rho_max, power=args.power))
        try:
            c = Circulations(1.0, args.gamma2)
        except DomainError as error:
            raise ConfigurationError(str(error)) from error
        epsilon = None if args.skip_momenta else args.epsilon
        checks = self.run_checks(grid, c, epsilon, args.seed)
        print(
            render_table(
                [[check.name, check.value, check.tolerance, check.passed] for check in checks],
                ("identity", "defect", "tolerance", "pass"),
            )
        )
        if args.out:
            document: Dict[str, Any] = {
                "checks": [{**check._asdict(), "passed": check.passed} for check in checks]
            }
            write_json(args.out, document)
        failed = [check.name for check in checks if not check.passed]
        if failed:
            raise ValidationFailure("identities out of tolerance: {}".format(", ".join(failed)))
        return 0
