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

from .algebra import angular_derivative, partial, poisson_bracket, product, radial_derivative
from .cache import OperatorCache, operator_cache
from .field import ModeField, Parity, VectorModeField
from .operators import (
    apply_L,
    apply_Lambda,
    apply_Lambda_star,
    apply_laplacian,
    apply_Lstar,
    invert_Lambda,
    invert_Lambda_field,
    invert_Lambda_star,
    invert_Lambda_star_field,
    poisson_inverse,
    poisson_inverse_mode,
    resolvent,
    resolvent_mode,
)
from .quadrature import (
    absolute_moment,
    inner_V,
    inner_Y,
    mass_and_moment,
    max_abs,
    norm_Y,
    y_weights,
)
from .stencils import derivative_pair, fornberg_weights, stencils_for

__all__ = (
    "ModeField",
    "OperatorCache",
    "Parity",
    "VectorModeField",
    "absolute_moment",
    "angular_derivative",
    "apply_L",
    "apply_Lambda",
    "apply_Lambda_star",
    "apply_laplacian",
    "apply_Lstar",
    "derivative_pair",
    "fornberg_weights",
    "inner_V",
    "inner_Y",
    "invert_Lambda",
    "invert_Lambda_field",
    "invert_Lambda_star",
    "invert_Lambda_star_field",
    "mass_and_moment",
    "max_abs",
    "norm_Y",
    "operator_cache",
    "partial",
    "poisson_bracket",
    "poisson_inverse",
    "poisson_inverse_mode",
    "product",
    "radial_derivative",
    "resolvent",
    "resolvent_mode",
    "stencils_for",
    "y_weights",
)
