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
import math
from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Optional, Sequence, Union

from tabulate import tabulate

from ..asymptotics import EpsilonSeries, construct_approximation
from ..asymptotics.models import Circulations
from ..config import ExperimentConfig, GridSettings
from ..errors import ConfigurationError, DomainError
from ..profiles.grid import RadialGrid

__all__ = ("circulations_for", "grid_for", "render_table", "series_for", "write_json")

log: logging.Logger = logging.getLogger("seina.vortexpair.harness.utils")


def circulations_for(cfg: ExperimentConfig) -> Circulations:
    try:
        return Circulations(cfg.gamma1, cfg.gamma2, cfg.solver.d)
    except DomainError as error:
        raise ConfigurationError(str(error)) from error


def grid_for(settings: GridSettings) -> RadialGrid:
    return RadialGrid.build(settings.nodes, settings.rho_max, settings.power)


def series_for(
    cache: Dict[Any, Any],
    c: Circulations,
    order: int,
    settings: GridSettings,
    path: Optional[Union[str, Path]] = None,
) -> EpsilonSeries:
    """Load the series from ``path`` or construct it once per process."""
    if path is not None:
        series = EpsilonSeries.load(path)
        if series.circulations != c:
            raise ConfigurationError(
                "series in {} was built for {}, not {}".format(path, series.circulations, c)
            )
        if series.order < order:
            raise ConfigurationError(
                "series in {} has order {} < {}".format(path, series.order, order)
            )
        return series
    grid = grid_for(settings)
    key = ("series", c, order, grid.key)
    if key not in cache:
        log.info("Constructing order-%s series for %s.", order, c)
        cache[key] = construct_approximation(c, order, grid)
    return cache[key]


def _clean(value: Any) -> Any:
    if isinstance(value, float) and not math.isfinite(value):
        return None
    if isinstance(value, Mapping):
        return {key: _clean(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(item) for item in value]
    return value


def write_json(
    path: Union[str, Path], document: Mapping[str, Any], indent: Optional[int] = 2
) -> Path:
    """Non-finite floats become ``null``."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(_clean(document), indent=indent), encoding="utf-8")
    log.info("Wrote %s.", path)
    return path


def render_table(rows: Iterable[Sequence[Any]], headers: Sequence[str]) -> str:
    return tabulate(list(rows), headers=list(headers), tablefmt="orgtbl", floatfmt=".6g")
