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
from pathlib import Path
from typing import Tuple, Union

import numpy as np

from ..constants import CHECKPOINT_SCHEMA
from ..errors import ConfigurationError
from .models import GridField

__all__ = ("load", "save", "sidecar_path")

log: logging.Logger = logging.getLogger("seina.vortexpair.solver.checkpoint")

_DTYPE = np.dtype("<f8")


def sidecar_path(path: Union[str, Path]) -> Path:
    return Path(path).with_suffix(".json")


def save(w: GridField, path: Union[str, Path]) -> Tuple[Path, Path]:
    """Raw little-endian float64 samples in row-major order plus a JSON sidecar."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    w.values.astype(_DTYPE).tofile(path)
    meta = sidecar_path(path)
    meta.write_text(
        json.dumps(
            {
                "schema": CHECKPOINT_SCHEMA,
                "n": w.n,
                "box": w.box,
                "time": w.time,
                "nu": w.nu,
                "dtype": _DTYPE.str,
            }
        ),
        encoding="utf-8",
    )
    log.info("Checkpoint at t=%.6g written to %s.", w.time, path)
    return path, meta


def load(path: Union[str, Path]) -> GridField:
    path = Path(path)
    meta_path = sidecar_path(path)
    try:
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
        raw = np.fromfile(path, dtype=_DTYPE)
    except (OSError, json.JSONDecodeError) as error:
        raise ConfigurationError("cannot read checkpoint {}: {}".format(path, error)) from error
    if meta.get("schema") != CHECKPOINT_SCHEMA:
        raise ConfigurationError(
            "unsupported checkpoint schema {!r}, expected {!r}".format(
                meta.get("schema"), CHECKPOINT_SCHEMA
            )
        )
    try:
        n = int(meta["n"])
        if raw.size != n * n:
            raise ValueError("{} samples for an {}x{} grid".format(raw.size, n, n))
        return GridField(
            raw.reshape(n, n), float(meta["box"]), float(meta["time"]), float(meta["nu"])
        )
    except (KeyError, TypeError, ValueError) as error:
        raise ConfigurationError("malformed checkpoint {}: {}".format(path, error)) from error
