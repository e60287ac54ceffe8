# Copyright prym-parity contributors. All Rights Reserved.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Univariate polynomials over the rationals.

Polynomials are ``sympy.Poly`` objects over ``QQ``. Coefficient sequences handed in and out of
this module are ordered lowest degree first, and scalars are ``fractions.Fraction``.
"""

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from sympy import QQ, Poly, Rational, Symbol
from typing import Iterable, List, Sequence, Union


X = Symbol('x')
T = Symbol('t')

Coefficient = Union[int, str, Fraction, Rational]


def to_fraction(value) -> Fraction:
    """Convert an integer, sympy rational or constant polynomial to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Poly):
        value = value.as_expr()
    rational = Rational(value)
    return Fraction(int(rational.p), int(rational.q))


def to_rational(value: Coefficient) -> Rational:
    """Convert a coefficient to a sympy Rational."""
    value = Fraction(value) if not isinstance(value, Rational) else value
    if isinstance(value, Fraction):
        return Rational(value.numerator, value.denominator)
    return value


def make_poly(coefficients: Iterable[Coefficient], gen: Symbol = X) -> Poly:
    """Build a polynomial over QQ from coefficients listed lowest degree first."""
    high_first = [to_rational(c) for c in reversed(list(coefficients))]
    if not high_first:
        high_first = [Rational(0)]
    return Poly.from_list(high_first, gen, domain=QQ)


def coefficients(poly: Poly) -> List[Fraction]:
    """Return the coefficients lowest degree first; the zero polynomial gives []."""
    if poly.is_zero:
        return []
    return [to_fraction(c) for c in reversed(poly.all_coeffs())]


def leading_coefficient(poly: Poly) -> Fraction:
    """Return the leading coefficient."""
    return to_fraction(poly.LC())


def evaluate(poly: Poly, value: Fraction) -> Fraction:
    """Evaluate exactly at a rational point by Horner's rule."""
    result = Fraction(0)
    for c in reversed(coefficients(poly)):
        result = result * value + c
    return result


def _require_nonzero(*polys: Poly) -> None:
    for poly in polys:
        if poly.is_zero:
            raise ValueError('operation is undefined for the zero polynomial')


def poly_resultant(a: Poly, b: Poly) -> Fraction:
    """Return the resultant of two nonzero polynomials.

    The computation runs through sympy's subresultant pseudo-remainder sequence and is exact.

    Raises:
        ValueError: If either input is the zero polynomial
    """
    _require_nonzero(a, b)
    if a.degree() == 0 or b.degree() == 0:
        return leading_coefficient(a) ** b.degree() * leading_coefficient(b) ** a.degree()
    return to_fraction(a.resultant(b))


def discriminant(poly: Poly) -> Fraction:
    """Return the discriminant of a polynomial of degree at least 1."""
    _require_nonzero(poly)
    if poly.degree() < 1:
        raise ValueError('discriminant needs a polynomial of positive degree')
    if poly.degree() == 1:
        return Fraction(1)
    return to_fraction(poly.discriminant())


def is_squarefree(poly: Poly) -> bool:
    """Check squarefreeness through gcd(p, p')."""
    _require_nonzero(poly)
    return poly.gcd(poly.diff()).degree() == 0


def shift(poly: Poly, c: Coefficient) -> Poly:
    """Return p(x + c)."""
    return poly.shift(to_rational(c))


def integral_primitive(poly: Poly) -> List[int]:
    """Scale by a positive rational to integer coefficients with content 1.

    Returns:
        Integer coefficients lowest degree first
    """
    _require_nonzero(poly)
    coeffs = coefficients(poly)
    denominator = reduce(lcm, (c.denominator for c in coeffs), 1)
    scaled = [int(c * denominator) for c in coeffs]
    content = reduce(gcd, scaled, 0)
    return [c // content for c in scaled]


def poly_to_string(poly: Poly) -> str:
    """Render a polynomial the way reports print it."""
    return str(poly.as_expr()).replace('**', '^')


def int_eval(coeffs: Sequence[int], x: int) -> int:
    """Evaluate an integer polynomial given lowest degree first."""
    result = 0
    for c in reversed(coeffs):
        result = result * x + c
    return result


def int_taylor_shift(coeffs: Sequence[int], a: int) -> List[int]:
    """Return the coefficients of F(a + t)."""
    out = list(coeffs)
    n = len(out)
    for i in range(n - 1):
        for j in range(n - 2, i - 1, -1):
            out[j] += a * out[j + 1]
    return out


def int_scale(coeffs: Sequence[int], s: int) -> List[int]:
    """Return the coefficients of F(s t)."""
    return [c * s**i for i, c in enumerate(coeffs)]


def int_content(coeffs: Sequence[int]) -> int:
    """Return the gcd of the coefficients."""
    return reduce(gcd, coeffs, 0)


def int_strip(coeffs: Sequence[int]) -> List[int]:
    """Drop vanishing leading coefficients."""
    out = list(coeffs)
    while out and out[-1] == 0:
        out.pop()
    return out
