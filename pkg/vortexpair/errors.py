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

from typing import Any, Optional, Tuple

__all__ = (
    "VortexPairError",
    "DomainError",
    "NonIntegrableError",
    "LogBranchError",
    "MomentConditionError",
    "ResolutionError",
    "ConstructionError",
    "SingularProjectionError",
    "UnsupportedOrderError",
    "ConfigurationError",
    "BlowUpError",
    "CollisionError",
    "ExtractionError",
    "ValidationFailure",
)


class VortexPairError(Exception):
    """Base exception class."""


class DomainError(VortexPairError, ValueError):
    """Raised when an argument lies outside the domain of a closed-form function."""


class NonIntegrableError(VortexPairError):
    """Raised when a weighted quadrature does not converge on the truncated grid."""


class LogBranchError(VortexPairError):
    """
    Raised when a decaying mode-0 Poisson solution is demanded but the source
    carries mass, so the solution grows like ``coefficient * log(rho)``.
    """

    def __init__(self, coefficient: float) -> None:
        self.coefficient: float = coefficient
        super().__init__(
            "Mode-0 source has nonzero mass, log branch coefficient {:.6e}.".format(coefficient)
        )


class MomentConditionError(VortexPairError):
    """Raised when an n=1 inversion is requested for a source with a nonzero first moment."""

    def __init__(self, moment: float, tolerance: float) -> None:
        self.moment: float = moment
        self.tolerance: float = tolerance
        super().__init__(
            "First moment {:.3e} exceeds tolerance {:.1e}.".format(moment, tolerance)
        )


class ResolutionError(VortexPairError):
    """Raised when a discretized problem is singular or under-resolved."""


class ConstructionError(VortexPairError):
    """Raised when the order-by-order construction cannot proceed."""

    def __init__(self, order: int, message: str) -> None:
        self.order: int = order
        self.detail: str = message
        super().__init__("Order {}: {}".format(order, message))

    def __reduce__(self) -> Tuple[Any, ...]:
        return type(self), (self.order, self.detail)


class SingularProjectionError(VortexPairError):
    """Raised when the pseudo-momenta pairing matrix cannot be inverted."""


class UnsupportedOrderError(VortexPairError):
    """Raised when an expansion order beyond the implemented range is requested."""


class ConfigurationError(VortexPairError):
    """Raised when an experiment or solver configuration is invalid."""


class BlowUpError(VortexPairError):
    """Raised when the spectral solver produces non-finite values."""

    def __init__(self, step: int, time: float, dt: float) -> None:
        self.step: int = step
        self.time: float = time
        self.dt: float = dt
        super().__init__(
            "Non-finite vorticity at step {} (t={:.6e}, dt={:.3e}).".format(step, time, dt)
        )

    def __reduce__(self) -> Tuple[Any, ...]:
        return type(self), (self.step, self.time, self.dt)


class CollisionError(VortexPairError):
    """Raised when two point vortices come closer than the integrator can resolve."""

    def __init__(self, time: float, distance: float) -> None:
        self.time: float = time
        self.distance: float = distance
        super().__init__(
            "Collision detected at t={:.6e} (distance {:.3e}).".format(time, distance)
        )

    def __reduce__(self) -> Tuple[Any, ...]:
        return type(self), (self.time, self.distance)


class ExtractionError(VortexPairError):
    """Raised when the centroid iteration fails to locate a vortex centre."""

    def __init__(self, message: str, iterations: Optional[int] = None) -> None:
        self.iterations: Optional[int] = iterations
        super().__init__(message)

    def __reduce__(self) -> Tuple[Any, ...]:
        return type(self), (self.args[0], self.iterations)


class ValidationFailure(VortexPairError):
    """Raised when a comparison or invariant check fails its tolerance."""
