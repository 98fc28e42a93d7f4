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
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Literal, Tuple, Union

import numpy as np
from typing_extensions import Self

from ..constants import GAMMA2_ANTI, GAMMA2_SMALL, SERIES_SCHEMA
from ..errors import ConfigurationError, DomainError
from ..modes.field import ModeField, VectorModeField
from ..profiles.grid import RadialGrid

__all__ = ("Circulations", "EpsilonSeries", "VortexIndex")

log: logging.Logger = logging.getLogger("seina.vortexpair.asymptotics.models")

VortexIndex = Literal[1, 2]


@dataclass(frozen=True)
class Circulations:
    """Circulations of the two vortices and their initial separation."""

    gamma1: float = 1.0
    gamma2: float = 1.0
    d: float = 1.0

    def __post_init__(self) -> None:
        for name in ("gamma1", "gamma2", "d"):
            if not isinstance(getattr(self, name), (int, float)):
                raise TypeError("{} must be a real number".format(name))
        if self.gamma1 + self.gamma2 == 0.0:
            raise DomainError("total circulation must be nonzero")
        if self.gamma1 == 0.0 or self.gamma2 == 0.0:
            raise DomainError("both circulations must be nonzero")
        if self.d <= 0.0:
            raise DomainError("separation must be positive, got {}".format(self.d))

    @property
    def gamma(self) -> float:
        return self.gamma1 + self.gamma2

    @property
    def product(self) -> float:
        return self.gamma1 * self.gamma2

    def of(self, i: VortexIndex) -> float:
        return self.gamma1 if i == 1 else self.gamma2

    def partner(self, i: VortexIndex) -> float:
        return self.gamma2 if i == 1 else self.gamma1

    @staticmethod
    def kappa(i: VortexIndex) -> float:
        return 1.0 if i == 1 else -1.0

    @property
    def ell1(self) -> float:
        return self.gamma2 / self.gamma * self.d

    @property
    def ell2(self) -> float:
        return -self.gamma1 / self.gamma * self.d

    def is_normalized(self) -> bool:
        return self.gamma1 == 1.0 and abs(self.gamma2) <= 1.0 and self.d == 1.0

    def validity_flags(self) -> List[str]:
        flags: List[str] = []
        if abs(self.gamma2) < GAMMA2_SMALL * abs(self.gamma1):
            flags.append("weak-partner: phase constants degenerate as gamma2 -> 0")
        if self.gamma2 < GAMMA2_ANTI * abs(self.gamma1):
            flags.append("near-antiparallel: total circulation is small")
        return flags


@dataclass(frozen=True, eq=False)
class EpsilonSeries:
    """
    Coefficients of ``Omega_a = sum_k eps^k (E_k + nu NS_k)`` together with
    ``theta_dot_k = thetaE_k + nu thetaNS_k`` and ``alpha_dot_k = nu alphaNS_k``.

    Vorticity coefficients run over ``k = 0..order``, the scalar rates over
    ``k = 0..order - 1``.
    """

    circulations: Circulations
    order: int
    euler: Tuple[VectorModeField, ...] = field(repr=False)
    viscous: Tuple[VectorModeField, ...] = field(repr=False)
    theta_dot_euler: Tuple[float, ...] = ()
    theta_dot_viscous: Tuple[float, ...] = ()
    alpha_dot_viscous: Tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.order < 0:
            raise TypeError("order must be non-negative")
        if len(self.euler) != self.order + 1 or len(self.viscous) != self.order + 1:
            raise TypeError("expected {} vorticity coefficients".format(self.order + 1))
        for name in ("theta_dot_euler", "theta_dot_viscous", "alpha_dot_viscous"):
            if len(getattr(self, name)) != self.order:
                raise TypeError("expected {} entries in {}".format(self.order, name))

    @property
    def grid(self) -> RadialGrid:
        return self.euler[0].grid

    def vorticity(self, epsilon: float, nu: float) -> VectorModeField:
        total = self.euler[0] + self.viscous[0] * nu
        for k in range(1, self.order + 1):
            total = total + (self.euler[k] + self.viscous[k] * nu) * epsilon**k
        return total

    def alpha(self, epsilon: float) -> float:
        """Separation factor ``1 + sum_{k=2}^{order+1} (2/k) eps^k alphaNS_{k-2}``."""
        return 1.0 + sum(
            (2.0 / k) * epsilon**k * self.alpha_dot_viscous[k - 2]
            for k in range(2, self.order + 2)
        )

    def theta_dot(self, epsilon: float, nu: float) -> float:
        return sum(
            epsilon**k * (self.theta_dot_euler[k] + nu * self.theta_dot_viscous[k])
            for k in range(self.order)
        )

    def alpha_dot(self, epsilon: float, nu: float) -> float:
        return nu * sum(epsilon**k * a for k, a in enumerate(self.alpha_dot_viscous))

    def to_dict(self) -> Dict[str, Any]:
        grid = self.grid

        def _dump(fields: Tuple[VectorModeField, ...]) -> List[Dict[str, Any]]:
            out: List[Dict[str, Any]] = []
            for k, vector in enumerate(fields):
                for i, component in enumerate(vector, start=1):
                    for (n, parity), profile in component.entries.items():
                        out.append(
                            {
                                "k": k,
                                "vortex": i,
                                "mode": n,
                                "parity": parity,
                                "decay": component.decay,
                                "values": profile.values.tolist(),
                            }
                        )
            return out

        return {
            "schema": SERIES_SCHEMA,
            "circulations": {
                "gamma1": self.circulations.gamma1,
                "gamma2": self.circulations.gamma2,
                "d": self.circulations.d,
            },
            "grid": {"nodes": grid.size, "rho_max": grid.rho_max, "power": grid.power},
            "order": self.order,
            "theta_dot_euler": list(self.theta_dot_euler),
            "theta_dot_viscous": list(self.theta_dot_viscous),
            "alpha_dot_viscous": list(self.alpha_dot_viscous),
            "euler": _dump(self.euler),
            "viscous": _dump(self.viscous),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> Self:
        if data.get("schema") != SERIES_SCHEMA:
            raise ConfigurationError(
                "unsupported series schema {!r}, expected {!r}".format(
                    data.get("schema"), SERIES_SCHEMA
                )
            )
        try:
            grid = RadialGrid.build(
                data["grid"]["nodes"], data["grid"]["rho_max"], data["grid"]["power"]
            )
            order = int(data["order"])
            circulations = Circulations(**data["circulations"])

            def _load(entries: List[Dict[str, Any]]) -> Tuple[VectorModeField, ...]:
                tops = [[0, 0] for _ in range(order + 1)]
                for entry in entries:
                    slot = tops[entry["k"]]
                    slot[entry["vortex"] - 1] = max(slot[entry["vortex"] - 1], entry["mode"])
                tables = [
                    [ModeField.zeros(grid, tops[k][0]), ModeField.zeros(grid, tops[k][1])]
                    for k in range(order + 1)
                ]
                decays = [["schwartz_weighted", "schwartz_weighted"] for _ in range(order + 1)]
                for entry in entries:
                    target = tables[entry["k"]][entry["vortex"] - 1]
                    row = target.cos if entry["parity"] == "cos" else target.sin
                    row[entry["mode"]] = np.asarray(entry["values"], dtype=np.float64)
                    slot = decays[entry["k"]]
                    slot[entry["vortex"] - 1] = entry.get("decay", "schwartz_weighted")
                return tuple(
                    VectorModeField(
                        ModeField(grid, a.cos, a.sin, decays[k][0]),
                        ModeField(grid, b.cos, b.sin, decays[k][1]),
                    )
                    for k, (a, b) in enumerate(tables)
                )

            return cls(
                circulations,
                order,
                _load(data["euler"]),
                _load(data["viscous"]),
                tuple(float(x) for x in data["theta_dot_euler"]),
                tuple(float(x) for x in data["theta_dot_viscous"]),
                tuple(float(x) for x in data["alpha_dot_viscous"]),
            )
        except (KeyError, TypeError, ValueError) as error:
            raise ConfigurationError("malformed series document: {}".format(error)) from error

    def save(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as fp:
            json.dump(self.to_dict(), fp)
        log.info("Wrote order-%s series to %s.", self.order, path)
        return path

    @classmethod
    def load(cls, path: Union[str, Path]) -> Self:
        try:
            with Path(path).open(encoding="utf-8") as fp:
                data = json.load(fp)
        except (OSError, json.JSONDecodeError) as error:
            raise ConfigurationError("cannot read series {}: {}".format(path, error)) from error
        return cls.from_dict(data)
