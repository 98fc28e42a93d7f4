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
from typing import Any, Dict, Iterator, List, Optional, Tuple, Union

import numpy as np
from typing_extensions import Self

from ..asymptotics.models import Circulations
from ..constants import MOMENTA_SCHEMA
from ..errors import ConfigurationError
from ..modes.field import ModeField, VectorModeField
from ..profiles.grid import RadialGrid

__all__ = ("Decomposition", "MOMENTUM_NAMES", "PseudoMomentaSet")

log: logging.Logger = logging.getLogger("seina.vortexpair.momenta.models")

MOMENTUM_NAMES: Tuple[str, ...] = ("te", "to", "e", "o")


def _dump(vector: VectorModeField) -> List[Dict[str, Any]]:
    out: List[Dict[str, Any]] = []
    for i, component in enumerate(vector, start=1):
        for (n, parity), profile in component.entries.items():
            out.append(
                {
                    "vortex": i,
                    "mode": n,
                    "parity": parity,
                    "decay": component.decay,
                    "values": profile.values.tolist(),
                }
            )
    return out


def _load(grid: RadialGrid, entries: List[Dict[str, Any]]) -> VectorModeField:
    top = [0, 0]
    for entry in entries:
        top[entry["vortex"] - 1] = max(top[entry["vortex"] - 1], int(entry["mode"]))
    tables = [ModeField.zeros(grid, top[0]), ModeField.zeros(grid, top[1])]
    decays = ["polynomial", "polynomial"]
    for entry in entries:
        target = tables[entry["vortex"] - 1]
        row = target.cos if entry["parity"] == "cos" else target.sin
        row[entry["mode"]] = np.asarray(entry["values"], dtype=np.float64)
        decays[entry["vortex"] - 1] = entry.get("decay", "polynomial")
    return VectorModeField(
        ModeField(grid, tables[0].cos, tables[0].sin, decays[0]),
        ModeField(grid, tables[1].cos, tables[1].sin, decays[1]),
    )


@dataclass(frozen=True, eq=False)
class PseudoMomentaSet:
    """
    The four pseudo-momenta ``rho_*`` of the Euler pair, their images
    ``f_* = {rho_*, Omega^E}_V`` and the eigenvalue series ``lambda_e``.

    All objects are evaluated at one ``(epsilon, alpha)``; ``lambda_e`` holds the
    coefficients of ``epsilon**k``.
    """

    circulations: Circulations
    epsilon: float
    alpha: float
    rho_te: VectorModeField = field(repr=False)
    rho_to: VectorModeField = field(repr=False)
    rho_e: VectorModeField = field(repr=False)
    rho_o: VectorModeField = field(repr=False)
    f_te: VectorModeField = field(repr=False)
    f_to: VectorModeField = field(repr=False)
    f_e: VectorModeField = field(repr=False)
    f_o: VectorModeField = field(repr=False)
    lambda_e: Tuple[float, ...] = (0.0, 0.0, 0.0)
    order: int = 2

    def __post_init__(self) -> None:
        if self.epsilon < 0.0:
            raise ValueError("epsilon must be non-negative")
        if self.alpha <= 0.0:
            raise ValueError("alpha must be positive")
        if len(self.lambda_e) != self.order + 1:
            raise TypeError("expected {} lambda_e coefficients".format(self.order + 1))

    @property
    def grid(self) -> RadialGrid:
        return self.rho_te.grid

    @property
    def momenta(self) -> Tuple[VectorModeField, ...]:
        return (self.rho_te, self.rho_to, self.rho_e, self.rho_o)

    @property
    def images(self) -> Tuple[VectorModeField, ...]:
        return (self.f_te, self.f_to, self.f_e, self.f_o)

    def __iter__(self) -> Iterator[Tuple[str, VectorModeField, VectorModeField]]:
        return iter(zip(MOMENTUM_NAMES, self.momenta, self.images))

    def lambda_e_value(self, epsilon: Optional[float] = None) -> float:
        eps = self.epsilon if epsilon is None else epsilon
        return float(sum(value * eps**k for k, value in enumerate(self.lambda_e)))

    def to_dict(self) -> Dict[str, Any]:
        grid = self.grid
        return {
            "schema": MOMENTA_SCHEMA,
            "circulations": {
                "gamma1": self.circulations.gamma1,
                "gamma2": self.circulations.gamma2,
                "d": self.circulations.d,
            },
            "grid": {"nodes": grid.size, "rho_max": grid.rho_max, "power": grid.power},
            "epsilon": self.epsilon,
            "alpha": self.alpha,
            "order": self.order,
            "lambda_e": list(self.lambda_e),
            "momenta": {
                name: {"rho": _dump(rho), "f": _dump(f)} for name, rho, f in self
            },
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> Self:
        if data.get("schema") != MOMENTA_SCHEMA:
            raise ConfigurationError(
                "unsupported momenta schema {!r}, expected {!r}".format(
                    data.get("schema"), MOMENTA_SCHEMA
                )
            )
        try:
            grid = RadialGrid.build(
                data["grid"]["nodes"], data["grid"]["rho_max"], data["grid"]["power"]
            )
            tables = data["momenta"]
            loaded: Dict[str, VectorModeField] = {}
            for name in MOMENTUM_NAMES:
                loaded["rho_" + name] = _load(grid, tables[name]["rho"])
                loaded["f_" + name] = _load(grid, tables[name]["f"])
            return cls(
                Circulations(**data["circulations"]),
                float(data["epsilon"]),
                float(data["alpha"]),
                lambda_e=tuple(float(x) for x in data["lambda_e"]),
                order=int(data["order"]),
                **loaded,
            )
        except (KeyError, TypeError, ValueError) as error:
            raise ConfigurationError("malformed momenta document: {}".format(error)) from error

    def save(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as fp:
            json.dump(self.to_dict(), fp)
        log.info("Wrote pseudo-momenta at eps=%s to %s.", self.epsilon, path)
        return path

    @classmethod
    def load(cls, path: Union[str, Path]) -> Self:
        try:
            with Path(path).open(encoding="utf-8") as fp:
                data = json.load(fp)
        except (OSError, json.JSONDecodeError) as error:
            raise ConfigurationError("cannot read momenta {}: {}".format(path, error)) from error
        return cls.from_dict(data)


@dataclass(frozen=True, eq=False)
class Decomposition:
    """
    ``omega = mu_te f_te + mu_to f_to + mu_e f_e + mu_o f_o + remainder`` with the remainder
    orthogonal to all four pseudo-momenta.
    """

    mu_o: float
    mu_e: float
    mu_te: float
    mu_to: float
    remainder: VectorModeField = field(repr=False)

    def reassemble(self, momenta: PseudoMomentaSet) -> VectorModeField:
        total = self.remainder
        for mu, image in zip(
            (self.mu_te, self.mu_to, self.mu_e, self.mu_o), momenta.images
        ):
            total = total + image * mu
        return total
