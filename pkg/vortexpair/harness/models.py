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
import json
import logging
import math
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np
from numpy.typing import NDArray
from typing_extensions import Self

from ..asymptotics.models import Circulations
from ..constants import RUN_SCHEMA
from ..errors import ConfigurationError
from ..trajectories.models import TRAJECTORY_COLUMNS, write_csv

__all__ = ("RECORD_COLUMNS", "Record", "RunMetadata", "PairTrajectory")

log: logging.Logger = logging.getLogger("seina.vortexpair.harness.models")

RECORD_COLUMNS: Tuple[str, ...] = (
    "l1_err",
    "mass",
    "mom_x",
    "mom_y",
    "mu_o",
    "mu_e",
    "energy_w0",
    "theta_pred",
    "omega_r",
)


@dataclass(frozen=True, eq=False)
class Record:
    t: float
    centers: NDArray[np.float64] = field(repr=False)
    theta_measured: float
    theta_predicted: float
    l1_error: float
    mass: float
    moment: NDArray[np.float64] = field(repr=False)
    mu_o: float = math.nan
    mu_e: float = math.nan
    energy_w0: float = math.nan
    remainder_norm: float = math.nan

    def row(self) -> List[float]:
        return [
            self.t,
            *self.centers[0],
            *self.centers[1],
            self.theta_measured,
            self.l1_error,
            self.mass,
            *self.moment,
            self.mu_o,
            self.mu_e,
            self.energy_w0,
            self.theta_predicted,
            self.remainder_norm,
        ]


@dataclass(frozen=True)
class RunMetadata:
    gamma1: float
    gamma2: float
    d: float
    nu: float
    t0: float
    n: int
    box: float
    order: int

    @property
    def circulations(self) -> Circulations:
        return Circulations(self.gamma1, self.gamma2, self.d)


def _sidecar(path: Path) -> Path:
    return path.with_name(path.name + ".meta.json")


@dataclass(frozen=True, eq=False)
class PairTrajectory:
    """Time series of diagnostics recorded along one solver run."""

    metadata: RunMetadata
    records: Tuple[Record, ...] = ()

    def __post_init__(self) -> None:
        times = [record.t for record in self.records]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("record times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.records)

    def appended(self, record: Record) -> Self:
        return type(self)(self.metadata, self.records + (record,))

    @property
    def times(self) -> NDArray[np.float64]:
        return np.array([record.t for record in self.records])

    @property
    def epsilons(self) -> NDArray[np.float64]:
        return np.sqrt(self.metadata.nu * self.times) / self.metadata.d

    @property
    def centers(self) -> NDArray[np.float64]:
        return np.array([record.centers for record in self.records]).reshape(-1, 2, 2)

    def column(self, name: str) -> NDArray[np.float64]:
        return np.array([getattr(record, name) for record in self.records], dtype=np.float64)

    def save(self, path: Union[str, Path]) -> Path:
        path = write_csv(path, [record.row() for record in self.records], RECORD_COLUMNS)
        meta: Dict[str, Any] = {"schema": RUN_SCHEMA, **asdict(self.metadata)}
        _sidecar(path).write_text(json.dumps(meta, indent=2), encoding="utf-8")
        return path

    @classmethod
    def load(cls, path: Union[str, Path]) -> Self:
        path = Path(path)
        try:
            meta = json.loads(_sidecar(path).read_text(encoding="utf-8"))
            with path.open(newline="", encoding="utf-8") as fp:
                rows = list(csv.reader(fp))
        except (OSError, json.JSONDecodeError) as error:
            raise ConfigurationError("cannot read run {}: {}".format(path, error)) from error
        if meta.pop("schema", None) != RUN_SCHEMA:
            raise ConfigurationError("{} is not a {} sidecar".format(_sidecar(path), RUN_SCHEMA))
        header = tuple(TRAJECTORY_COLUMNS) + RECORD_COLUMNS
        if not rows or tuple(rows[0]) != header:
            raise ConfigurationError("unexpected columns in {}".format(path))
        try:
            metadata = RunMetadata(**meta)
            records = tuple(_parse(row) for row in rows[1:])
        except (TypeError, ValueError) as error:
            raise ConfigurationError("malformed run {}: {}".format(path, error)) from error
        log.debug("Loaded %s records from %s.", len(records), path)
        return cls(metadata, records)


def _parse(row: Sequence[str]) -> Record:
    values = [float(value) for value in row]
    if len(values) != len(TRAJECTORY_COLUMNS) + len(RECORD_COLUMNS):
        raise ValueError("row has {} values".format(len(values)))
    return Record(
        t=values[0],
        centers=np.array(values[1:5]).reshape(2, 2),
        theta_measured=values[5],
        l1_error=values[6],
        mass=values[7],
        moment=np.array(values[8:10]),
        mu_o=values[10],
        mu_e=values[11],
        energy_w0=values[12],
        theta_predicted=values[13],
        remainder_norm=values[14],
    )
