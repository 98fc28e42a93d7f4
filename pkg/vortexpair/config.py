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
import math
from pathlib import Path
from typing import Any, Dict, Optional, Union

from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)
from typing_extensions import Self

from .constants import (
    DEFAULT_ORDER,
    GRID_NODES,
    GRID_POWER,
    GRID_RHO_MAX,
    MAX_ORDER,
    SOLVER_BOX,
    SOLVER_CFL,
    SOLVER_DEALIAS,
    SOLVER_N,
    SOLVER_NU_T0,
)
from .errors import ConfigurationError

__all__ = ("GridSettings", "SolverConfig", "ExperimentConfig")


class GridSettings(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    nodes: int = Field(default=GRID_NODES, ge=64)
    rho_max: float = Field(default=GRID_RHO_MAX, gt=4.0)
    power: float = Field(default=GRID_POWER, ge=1.0, le=3.0)


class SolverConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    n: int = SOLVER_N
    box: float = SOLVER_BOX
    nu: float = Field(default=1e-3, gt=0.0)
    t0: float = Field(default=SOLVER_NU_T0 / 1e-3, gt=0.0)
    t_end: float = Field(default=50.0, gt=0.0)
    cfl: float = Field(default=SOLVER_CFL, gt=0.0, le=1.0)
    dealias: float = Field(default=SOLVER_DEALIAS, gt=0.0, le=1.0)
    output_stride: int = Field(default=10, ge=1)
    d: float = Field(default=1.0, gt=0.0)

    @field_validator("n")
    @classmethod
    def _power_of_two(cls, value: int) -> int:
        if value < 16 or value & (value - 1):
            raise ValueError("n must be a power of two >= 16, got {}".format(value))
        return value

    @model_validator(mode="after")
    def _check_regime(self) -> Self:
        if self.box < 8.0 * self.d:
            raise ValueError("box must be at least 8 separations, got {}".format(self.box))
        if self.epsilon0 > 0.1:
            raise ValueError("initial epsilon {:.4f} exceeds 0.1".format(self.epsilon0))
        if self.t_end < self.t0:
            raise ValueError("t_end must not precede t0")
        return self

    @property
    def epsilon0(self) -> float:
        return math.sqrt(self.nu * self.t0) / self.d

    @property
    def spacing(self) -> float:
        return self.box / self.n


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(frozen=True, extra="forbid")

    gamma1: float = 1.0
    gamma2: float = Field(default=1.0, ge=-1.0, le=1.0)
    order: int = Field(default=DEFAULT_ORDER, ge=1, le=MAX_ORDER)
    solver: SolverConfig = Field(default_factory=SolverConfig)
    grid: GridSettings = Field(default_factory=GridSettings)
    out: Optional[str] = None
    seed: int = 0
    probes: bool = True

    @model_validator(mode="after")
    def _check_order(self) -> Self:
        if self.gamma1 + self.gamma2 == 0.0:
            raise ValueError("total circulation must be nonzero")
        if self.probes and self.order < 2:
            raise ValueError("pseudo-momenta probes need order >= 2")
        return self

    @classmethod
    def from_mapping(cls, data: Dict[str, Any]) -> Self:
        """Build from the flat JSON layout used on the command line."""
        solver_keys = set(SolverConfig.model_fields)
        grid_keys = {"nodes", "rho_max", "power"}
        solver: Dict[str, Any] = dict(data.get("solver", {}))
        grid: Dict[str, Any] = dict(data.get("grid", {}))
        top: Dict[str, Any] = {}
        for key, value in data.items():
            if key in ("solver", "grid"):
                continue
            if key in solver_keys:
                solver[key] = value
            elif key in grid_keys:
                grid[key] = value
            else:
                top[key] = value
        try:
            return cls(solver=SolverConfig(**solver), grid=GridSettings(**grid), **top)
        except ValidationError as error:
            raise ConfigurationError(str(error)) from error

    @classmethod
    def from_json(cls, path: Union[str, Path]) -> Self:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as error:
            raise ConfigurationError("cannot read config {}: {}".format(path, error)) from error
        if not isinstance(data, dict):
            raise ConfigurationError("config root must be an object")
        return cls.from_mapping(data)
