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
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np
from numpy.typing import NDArray

from ..constants import CSV_DIGITS

__all__ = ("PairState", "Trajectory", "TRAJECTORY_COLUMNS", "write_csv")

log: logging.Logger = logging.getLogger("seina.vortexpair.trajectories.models")

TRAJECTORY_COLUMNS: Tuple[str, ...] = ("t", "x1x", "x1y", "x2x", "x2y", "theta")


def _format(value: float) -> str:
    return "{:.{}g}".format(value, CSV_DIGITS)


@dataclass(frozen=True, eq=False)
class PairState:
    """Centres of the two vortices at ``time`` with unwrapped phase ``theta``."""

    centers: NDArray[np.float64] = field(repr=False)
    theta: float
    alpha: float = 1.0
    time: float = 0.0

    def __post_init__(self) -> None:
        centers = np.asarray(self.centers, dtype=np.float64)
        if centers.shape != (2, 2):
            raise TypeError("centers must have shape (2, 2), got {}".format(centers.shape))
        if self.alpha <= 0.0:
            raise ValueError("alpha must be positive")
        object.__setattr__(self, "centers", centers)

    @property
    def separation(self) -> float:
        return float(np.linalg.norm(self.centers[0] - self.centers[1]))

    def momentum(self, gamma1: float, gamma2: float) -> NDArray[np.float64]:
        """``Gamma_1 x_1 + Gamma_2 x_2``; zero for a normalized pair."""
        return gamma1 * self.centers[0] + gamma2 * self.centers[1]

    def row(self) -> List[float]:
        return [self.time, *self.centers[0], *self.centers[1], self.theta]


@dataclass(frozen=True, eq=False)
class Trajectory:
    """Positions ``(T, N, 2)`` of ``N`` point vortices sampled at ``times``."""

    times: NDArray[np.float64] = field(repr=False)
    positions: NDArray[np.float64] = field(repr=False)
    circulations: Tuple[float, ...]

    def __post_init__(self) -> None:
        times = np.asarray(self.times, dtype=np.float64)
        positions = np.asarray(self.positions, dtype=np.float64)
        if positions.ndim != 3 or positions.shape[2] != 2:
            raise TypeError("positions must have shape (T, N, 2)")
        if positions.shape[0] != times.shape[0]:
            raise TypeError("times and positions disagree on the number of samples")
        if positions.shape[1] != len(self.circulations):
            raise TypeError("one circulation per vortex is required")
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "positions", positions)

    def __len__(self) -> int:
        return int(self.times.shape[0])

    @property
    def count(self) -> int:
        return int(self.positions.shape[1])

    @property
    def final(self) -> NDArray[np.float64]:
        return self.positions[-1]

    def phase(self) -> NDArray[np.float64]:
        """Unwrapped angle of ``x_1 - x_2`` for a pair."""
        if self.count != 2:
            raise ValueError("the phase is defined for pairs only")
        delta = self.positions[:, 0] - self.positions[:, 1]
        return np.unwrap(np.arctan2(delta[:, 1], delta[:, 0]))

    def states(self, alpha: float = 1.0) -> Iterator[PairState]:
        for t, centers, theta in zip(self.times, self.positions, self.phase()):
            yield PairState(centers, float(theta), alpha, float(t))


def write_csv(
    path: Union[str, Path],
    rows: Sequence[Sequence[float]],
    extra_columns: Optional[Sequence[str]] = None,
) -> Path:
    """Write trajectory rows with the standard columns followed by ``extra_columns``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    header = list(TRAJECTORY_COLUMNS) + list(extra_columns or ())
    with path.open("w", newline="", encoding="utf-8") as fp:
        writer = csv.writer(fp)
        writer.writerow(header)
        for row in rows:
            if len(row) != len(header):
                raise ValueError("row has {} values for {} columns".format(len(row), len(header)))
            writer.writerow([_format(float(value)) for value in row])
    log.info("Wrote %s trajectory rows to %s.", len(rows), path)
    return path
