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
from typing import Literal, Tuple, Union

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import special

from ..constants import (
    EIN_SWITCH,
    EIN_TERM_CUTOFF,
    EULER_GAMMA,
    FOUR_PI,
    TWO_PI,
    W0_TAYLOR_SWITCH,
)
from ..errors import DomainError

__all__ = (
    "ein",
    "gaussian_G",
    "gaussian_G_prime",
    "upsilon",
    "upsilon_prime",
    "w0_weight",
    "f0",
    "f0_prime",
    "harmonic_Q",
    "harmonic_Q_gradient",
)

log: logging.Logger = logging.getLogger("seina.vortexpair.profiles")

Scalar = Union[float, NDArray[np.float64]]
Kind = Literal["cos", "sin"]


def _unwrap(values: NDArray[np.float64], scalar: bool) -> Scalar:
    return values.item() if scalar else values


def _series_ein(x: NDArray[np.float64]) -> NDArray[np.float64]:
    total = np.zeros_like(x)
    term = np.ones_like(x)
    k = 0
    while True:
        k += 1
        term = -term * x / k
        contribution = -term / k
        total += contribution
        if np.all(np.abs(contribution) <= EIN_TERM_CUTOFF * np.maximum(np.abs(total), 1e-300)):
            break
        if k > 200:
            break
    return total


def ein(x: ArrayLike) -> Scalar:
    """
    Entire exponential integral ``Ein(x) = int_0^x (1 - exp(-t)) / t dt``.

    The alternating power series is used up to ``EIN_SWITCH`` and the identity
    ``Ein(x) = gamma_E + log(x) + E1(x)`` above it.
    """
    scalar = np.ndim(x) == 0
    arr = np.atleast_1d(np.asarray(x, dtype=np.float64))
    if np.any(arr < 0.0) or not np.all(np.isfinite(arr)):
        raise DomainError("Ein is only defined here for finite x >= 0")
    out = np.empty_like(arr)
    low = arr <= EIN_SWITCH
    out[low] = _series_ein(arr[low]) if np.any(low) else out[low]
    high = ~low
    if np.any(high):
        out[high] = EULER_GAMMA + np.log(arr[high]) + special.exp1(arr[high])
    return _unwrap(out, scalar)


def gaussian_G(rho: ArrayLike) -> Scalar:
    """The Oseen profile ``exp(-rho**2 / 4) / (4 pi)`` with unit mass."""
    scalar = np.ndim(rho) == 0
    r = np.atleast_1d(np.asarray(rho, dtype=np.float64))
    return _unwrap(np.exp(-0.25 * r * r) / FOUR_PI, scalar)


def gaussian_G_prime(rho: ArrayLike) -> Scalar:
    scalar = np.ndim(rho) == 0
    r = np.atleast_1d(np.asarray(rho, dtype=np.float64))
    return _unwrap(-0.5 * r * np.exp(-0.25 * r * r) / FOUR_PI, scalar)


def upsilon(rho: ArrayLike) -> Scalar:
    """
    Stream function of ``G`` in the Ein form, ``(Ein(rho**2 / 4) - gamma_E) / (4 pi)``.

    It differs from the logarithmic convolution of ``G`` by the constant
    ``UPSILON_OFFSET``; only derivatives enter brackets and velocities.
    """
    scalar = np.ndim(rho) == 0
    r = np.atleast_1d(np.asarray(rho, dtype=np.float64))
    values = (np.atleast_1d(ein(0.25 * r * r)) - EULER_GAMMA) / FOUR_PI
    return _unwrap(values, scalar)


def upsilon_prime(rho: ArrayLike) -> Scalar:
    scalar = np.ndim(rho) == 0
    r = np.atleast_1d(np.asarray(rho, dtype=np.float64))
    out = np.zeros_like(r)
    positive = r > 0.0
    rp = r[positive]
    out[positive] = -np.expm1(-0.25 * rp * rp) / (TWO_PI * rp)
    return _unwrap(out, scalar)


def _expm1_ratio(x: NDArray[np.float64]) -> NDArray[np.float64]:
    # (exp(x) - 1) / x with the removable singularity filled in
    out = np.empty_like(x)
    small = np.abs(x) < W0_TAYLOR_SWITCH
    xs = x[small]
    out[small] = 1.0 + xs / 2.0 + xs * xs / 6.0 + xs * xs * xs / 24.0
    xl = x[~small]
    with np.errstate(over="ignore"):
        out[~small] = np.expm1(xl) / xl
    return out


def w0_weight(rho: ArrayLike) -> Scalar:
    """Radial weight ``4 (exp(rho**2 / 4) - 1) / rho**2`` with value 1 at the origin."""
    scalar = np.ndim(rho) == 0
    r = np.atleast_1d(np.asarray(rho, dtype=np.float64))
    if np.any(r < 0.0):
        raise DomainError("w0_weight requires rho >= 0")
    return _unwrap(_expm1_ratio(0.25 * r * r), scalar)


def _f0_argument(s: NDArray[np.float64], gamma: float) -> NDArray[np.float64]:
    upper = gamma / FOUR_PI
    if np.any(s <= 0.0) or np.any(s > upper * (1.0 + 1e-14)):
        raise DomainError("F0 needs 0 < s <= Gamma / (4 pi) = {:.6g}".format(upper))
    return np.maximum(np.log(gamma / (FOUR_PI * s)), 0.0)


def f0(s: ArrayLike, gamma: float) -> Scalar:
    """
    Leading functional relation between stream function and vorticity,
    ``F0(s) = (Gamma / 4 pi) (gamma_E - Ein(log(Gamma / (4 pi s))))``.

    Negative total circulation is handled through ``F0(s; -Gamma) = -F0(-s; Gamma)``.
    """
    if gamma == 0.0:
        raise DomainError("F0 is undefined for zero circulation")
    scalar = np.ndim(s) == 0
    arr = np.atleast_1d(np.asarray(s, dtype=np.float64))
    if gamma < 0.0:
        return _unwrap(-np.atleast_1d(f0(-arr, -gamma)), scalar)
    y = _f0_argument(arr, gamma)
    values = gamma / FOUR_PI * (EULER_GAMMA - np.atleast_1d(ein(y)))
    return _unwrap(values, scalar)


def f0_prime(s: ArrayLike, gamma: float) -> Scalar:
    if gamma == 0.0:
        raise DomainError("F0 is undefined for zero circulation")
    scalar = np.ndim(s) == 0
    arr = np.atleast_1d(np.asarray(s, dtype=np.float64))
    if gamma < 0.0:
        return _unwrap(np.atleast_1d(f0_prime(-arr, -gamma)), scalar)
    # dF0/ds = (exp(y) - 1) / y with y = log(Gamma / (4 pi s))
    return _unwrap(_expm1_ratio(_f0_argument(arr, gamma)), scalar)


def harmonic_Q(n: int, kind: Kind, xi: ArrayLike) -> Scalar:
    """``rho**n cos(n theta)`` or ``rho**n sin(n theta)`` at plane points ``xi[..., 2]``."""
    point = np.asarray(xi, dtype=np.float64)
    z = point[..., 0] + 1j * point[..., 1]
    if n < 0:
        raise DomainError("harmonic polynomials need n >= 0")
    if n == 0:
        if kind == "sin":
            raise DomainError("there is no sine harmonic of degree 0")
        values = np.ones(np.shape(z))
    else:
        power = z**n
        values = power.real if kind == "cos" else power.imag
    return float(values) if np.ndim(values) == 0 else values


def harmonic_Q_gradient(n: int, kind: Kind, xi: ArrayLike) -> Tuple[Scalar, Scalar]:
    """Gradient through the degree-lowering recursion of the harmonic polynomials."""
    if n == 0:
        zero = 0.0 * harmonic_Q(0, "cos", xi)
        return zero, zero
    qc = harmonic_Q(n - 1, "cos", xi)
    qs = 0.0 * qc if n == 1 else harmonic_Q(n - 1, "sin", xi)
    if kind == "cos":
        return n * qc, -n * qs
    return n * qs, n * qc
