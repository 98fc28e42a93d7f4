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

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np
from numpy.typing import ArrayLike, NDArray

from ..asymptotics.models import Circulations
from ..config import SolverConfig
from ..constants import PERIODIC_IMAGES, RESOLUTION_CELLS, TAIL_THRESHOLD
from ..errors import BlowUpError, ConfigurationError
from .models import GridField, SpectralGrid, spectral_grid

__all__ = (
    "Probe",
    "SolverRun",
    "biot_savart_velocity",
    "init_superposed_oseen",
    "oseen_superposition",
    "run",
    "stable_dt",
    "step",
    "tail_fraction",
)

log: logging.Logger = logging.getLogger("seina.vortexpair.solver.core")

Probe = Callable[[GridField, int], None]
Spectrum = NDArray[np.complex128]


def oseen_superposition(
    grid: SpectralGrid,
    centers: ArrayLike,
    gammas: Sequence[float],
    nu: float,
    t: float,
) -> NDArray[np.float64]:
    """Periodized ``sum_i Gamma_i / (4 pi nu t) exp(-|x - x_i|^2 / 4 nu t)`` on the box."""
    spread = 4.0 * nu * t
    if spread <= 0.0:
        raise ConfigurationError("Oseen cores need nu t > 0")
    x, y = grid.coordinates
    out = np.zeros_like(x)
    shifts = range(-PERIODIC_IMAGES, PERIODIC_IMAGES + 1)
    points = np.asarray(centers, dtype=np.float64).reshape(-1, 2)
    for (cx, cy), gamma in zip(points, gammas):
        if gamma == 0.0:
            continue
        core = np.zeros_like(x)
        for sx in shifts:
            for sy in shifts:
                dx = x - cx - sx * grid.box
                dy = y - cy - sy * grid.box
                core += np.exp(-(dx * dx + dy * dy) / spread)
        out += gamma / (math.pi * spread) * core
    return out


def init_superposed_oseen(c: Circulations, cfg: SolverConfig) -> GridField:
    """Two Oseen cores of age ``t0`` at ``(l_1, 0)`` and ``(l_2, 0)`` about the box centre."""
    grid = spectral_grid(cfg.n, cfg.box)
    radius = math.sqrt(4.0 * cfg.nu * cfg.t0)
    if radius < RESOLUTION_CELLS * grid.spacing:
        raise ConfigurationError(
            "core radius {:.4g} spans fewer than {} cells of width {:.4g}".format(
                radius, RESOLUTION_CELLS, grid.spacing
            )
        )
    if not math.isclose(c.d, cfg.d):
        raise ConfigurationError(
            "separation {} disagrees with the solver setting {}".format(c.d, cfg.d)
        )
    centers = [(c.ell1, 0.0), (c.ell2, 0.0)]
    values = oseen_superposition(grid, centers, (c.gamma1, c.gamma2), cfg.nu, cfg.t0)
    log.info(
        "Initialized pair %s at t0=%s (eps0=%.4f) on n=%s box=%s.",
        c,
        cfg.t0,
        cfg.epsilon0,
        cfg.n,
        cfg.box,
    )
    return GridField(values, cfg.box, cfg.t0, cfg.nu)


def _velocity(grid: SpectralGrid, w_hat: Spectrum) -> Tuple[NDArray[np.float64], ...]:
    # u = (-d_y psi, d_x psi) with Delta psi = w on the mean-free part
    psi_hat = -w_hat * grid.inverse_k2
    u = np.fft.irfft2(-1j * grid.ky * psi_hat, s=(grid.n, grid.n))
    v = np.fft.irfft2(1j * grid.kx * psi_hat, s=(grid.n, grid.n))
    return u, v


def biot_savart_velocity(w: GridField) -> Tuple[NDArray[np.float64], NDArray[np.float64]]:
    """``u = grad^perp Delta^{-1} w`` with the mean vorticity removed before inversion."""
    u, v = _velocity(w.grid, np.fft.rfft2(w.values))
    return u, v


def _advection(grid: SpectralGrid, w_hat: Spectrum, mask: NDArray[np.bool_]) -> Spectrum:
    filtered = w_hat * mask
    u, v = _velocity(grid, filtered)
    wx = np.fft.irfft2(1j * grid.kx * filtered, s=(grid.n, grid.n))
    wy = np.fft.irfft2(1j * grid.ky * filtered, s=(grid.n, grid.n))
    out = -np.fft.rfft2(u * wx + v * wy) * mask
    out[0, 0] = 0.0
    return out


def step(w: GridField, dt: float, dealias: float = 2.0 / 3.0, advect: bool = True) -> GridField:
    """
    One integrating-factor RK4 step: diffusion through the exact factor
    ``exp(-nu |k|^2 dt)``, advection pseudo-spectrally with the dealiasing cut.
    """
    grid = w.grid
    w_hat = np.fft.rfft2(w.values)
    half = np.exp(-0.5 * w.nu * grid.k2 * dt)
    full = half * half
    if advect:
        mask = grid.dealias_mask(dealias)
        k1 = _advection(grid, w_hat, mask)
        k2 = _advection(grid, half * (w_hat + 0.5 * dt * k1), mask)
        k3 = _advection(grid, half * w_hat + 0.5 * dt * k2, mask)
        k4 = _advection(grid, full * w_hat + dt * half * k3, mask)
        w_hat = full * w_hat + dt / 6.0 * (full * k1 + 2.0 * half * (k2 + k3) + k4)
    else:
        w_hat = full * w_hat
    return w.with_values(np.fft.irfft2(w_hat, s=(grid.n, grid.n)), w.time + dt)


def stable_dt(w: GridField, cfl: float) -> float:
    """``cfl h / max |u|``; infinite for a fluid at rest."""
    u, v = biot_savart_velocity(w)
    speed = float(np.max(np.hypot(u, v)))
    if speed == 0.0:
        return math.inf
    return cfl * w.grid.spacing / speed


def tail_fraction(w: GridField) -> float:
    """Share of the enstrophy spectrum in the last octave below the Nyquist wavenumber."""
    grid = w.grid
    power = np.abs(np.fft.rfft2(w.values)) ** 2
    # the half-spectrum counts interior columns twice
    power[:, 1 : grid.n // 2] *= 2.0
    total = float(np.sum(power))
    if total == 0.0:
        return 0.0
    k = np.sqrt(grid.k2)
    return float(np.sum(power[k > 0.5 * grid.nyquist])) / total


@dataclass(frozen=True, eq=False)
class SolverRun:
    """Final field of a run with the number of steps and the record times."""

    final: GridField = field(repr=False)
    steps: int
    record_times: Tuple[float, ...] = ()


def run(
    c: Circulations,
    cfg: SolverConfig,
    probe: Optional[Probe] = None,
    initial: Optional[GridField] = None,
) -> SolverRun:
    """
    Advance from ``t0`` (or ``initial``) to ``t_end`` with the CFL step, calling ``probe``
    on the starting field and then every ``output_stride`` steps.
    """
    w = initial or init_superposed_oseen(c, cfg)
    steps = 0
    records: List[float] = []
    warned = False

    def _record(snapshot: GridField) -> None:
        records.append(snapshot.time)
        if probe is not None:
            probe(snapshot, steps)

    slack = 1e-12 * max(1.0, cfg.t_end)
    _record(w)
    while cfg.t_end - w.time > slack:
        dt = min(stable_dt(w, cfg.cfl), cfg.t_end - w.time)
        w = step(w, dt, cfg.dealias)
        steps += 1
        if not np.all(np.isfinite(w.values)):
            raise BlowUpError(steps, w.time, dt)
        if steps % cfg.output_stride == 0 or cfg.t_end - w.time <= slack:
            tail = tail_fraction(w)
            if tail > TAIL_THRESHOLD and not warned:
                log.warning(
                    "Spectral tail %.3e exceeds %.1e at t=%.4g: the run is under-resolved.",
                    tail,
                    TAIL_THRESHOLD,
                    w.time,
                )
                warned = True
            log.debug(
                "step %s t=%.6g dt=%.3e mass=%.15g moment=%s",
                steps,
                w.time,
                dt,
                w.mass(),
                w.moments(),
            )
            _record(w)
    log.info("Reached t=%.6g after %s steps.", w.time, steps)
    return SolverRun(w, steps, tuple(records))
