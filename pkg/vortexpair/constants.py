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

import math
from typing import Final, Tuple

EULER_GAMMA: Final[float] = 0.57721566490153286061
FOUR_PI: Final[float] = 4.0 * math.pi
TWO_PI: Final[float] = 2.0 * math.pi

# true convolution of G minus the Ein closed form of the stream function
UPSILON_OFFSET: Final[float] = math.log(4.0) / FOUR_PI

EIN_SWITCH: Final[float] = 2.0
EIN_TERM_CUTOFF: Final[float] = 1e-16
SMALL_RHO: Final[float] = 1e-6
W0_TAYLOR_SWITCH: Final[float] = 1e-4

GRID_NODES: Final[int] = 2048
GRID_RHO_MAX: Final[float] = 24.0
GRID_POWER: Final[float] = 1.5

MOMENT_TOLERANCE: Final[float] = 1e-8
SOLVABILITY_TOLERANCE: Final[float] = 1e-6
# roundoff floor for first moments, relative to the whole source
MOMENT_NOISE_FLOOR: Final[float] = 1e-9
RESOLVENT_MASS_TOLERANCE: Final[float] = 1e-6
Y_CUTOFF_FRACTION: Final[float] = 0.5
Y_TAIL_FRACTION: Final[float] = 0.05
Y_TAIL_RATIO: Final[float] = 1e-3
DEFAULT_ORDER: Final[int] = 6
MAX_ORDER: Final[int] = 10
MAX_EXPANSION_ORDER: Final[int] = 12

SOLVER_N: Final[int] = 512
SOLVER_BOX: Final[float] = 16.0
SOLVER_CFL: Final[float] = 0.5
SOLVER_DEALIAS: Final[float] = 2.0 / 3.0
SOLVER_NU_T0: Final[float] = 2.5e-3
TAIL_THRESHOLD: Final[float] = 1e-10
RESOLUTION_CELLS: Final[float] = 3.0
PERIODIC_IMAGES: Final[int] = 1

CENTROID_RADIUS: Final[float] = 0.4
CENTROID_TOLERANCE: Final[float] = 1e-10
CENTROID_MAX_ITER: Final[int] = 50
VIEW_SPLINE_ORDER: Final[int] = 5
L1_FIT_RESIDUAL: Final[float] = 0.15
DRIFT_EXPONENT: Final[float] = 3.0
DRIFT_EXPONENT_TOLERANCE: Final[float] = 0.3
DRIFT_COEFFICIENT_TOLERANCE: Final[float] = 0.25
L1_FIT_HORIZON: Final[float] = 0.05
MASS_DRIFT_TOLERANCE: Final[float] = 1e-12
MOMENT_DRIFT_TOLERANCE: Final[float] = 1e-6
# ||omega_R|| ~ nu eps^2: a factor 4 per halving of eps
REMAINDER_EXPONENT: Final[float] = 2.0
REMAINDER_HALVING_TOLERANCE: Final[float] = 0.3
IDENTITY_TOLERANCE: Final[float] = 1e-5
EXACT_TOLERANCE: Final[float] = 1e-10

INTEGRATOR_TOLERANCE: Final[float] = 1e-10
COLLISION_FRACTION: Final[float] = 1e-6
PHASE_VALIDITY_CAP: Final[float] = 0.1
SINGULAR_PROJECTION_TOLERANCE: Final[float] = 1e-6

GAMMA2_SMALL: Final[float] = 0.05
GAMMA2_ANTI: Final[float] = -0.95

SERIES_SCHEMA: Final[str] = "vortexpair.series/1"
MOMENTA_SCHEMA: Final[str] = "vortexpair.momenta/1"
CHECKPOINT_SCHEMA: Final[str] = "vortexpair.checkpoint/1"
REPORT_SCHEMA: Final[str] = "vortexpair.report/1"
RUN_SCHEMA: Final[str] = "vortexpair.run/1"
SWEEP_SCHEMA: Final[str] = "vortexpair.sweep/1"
SWEEP_PARAMETERS: Final[Tuple[str, ...]] = ("nu", "gamma2", "n", "box")
CSV_DIGITS: Final[int] = 17
