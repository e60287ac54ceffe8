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

"""Unramified double covers D -> C of hyperelliptic curves y^2 = f(x) g(x).

A factorization F = f g defines the cover D = {u^2 = f(x), v^2 = g(x)} of C: y^2 = F(x) and
the 2-torsion class epsilon of the roots of g. The Prym variety of the cover is read off the
degrees of f and g.
"""

from ..algebra.integers import rational_square_root, square_part
from ..algebra.poly import (
    T,
    coefficients,
    is_squarefree,
    make_poly,
    poly_to_string,
    shift,
    to_fraction,
    to_rational,
)
from ..common.constants import ROLE_C, ROLE_D, ROLE_PRYM1, ROLE_PRYM2
from ..common.errors import InvalidInputError, NotSquarefreeError, UnsupportedCaseError
from ..torsion.classes import TwoTorsionClass
from .hyperelliptic import HyperellipticCurve
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import reduce
from loguru import logger
from math import gcd, lcm
from sympy import Poly
from typing import Any, Dict, Tuple


class CaseTag(str, Enum):
    """Rows of the classification of Prym varieties in genus 2 and 3."""

    II = 'II'
    III_A = 'III.a'
    III_B = 'III.b'
    III_C = 'III.c'
    III_D = 'III.d-symbolic'


DEGREE_PATTERNS = {
    (4, 2): CaseTag.II,
    (6, 2): CaseTag.III_A,
    (4, 4): CaseTag.III_B,
}


@dataclass(frozen=True)
class DoubleCoverDatum:
    """The ordered factorization F = f g behind a double cover.

    Roots are labelled 1 .. deg f for f and deg f + 1 .. deg F for g.
    """

    f: Poly
    g: Poly
    case_tag: CaseTag

    @property
    def product(self) -> Poly:
        return self.f * self.g

    @property
    def curve(self) -> HyperellipticCurve:
        return HyperellipticCurve(self.product, ROLE_C)

    @property
    def genus(self) -> int:
        return (self.product.degree() - 1) // 2

    @property
    def ambient(self) -> int:
        return self.product.degree()

    @property
    def f_labels(self) -> Tuple[int, ...]:
        return tuple(range(1, self.f.degree() + 1))

    @property
    def g_labels(self) -> Tuple[int, ...]:
        return tuple(range(self.f.degree() + 1, self.ambient + 1))

    @property
    def is_end_to_end(self) -> bool:
        """Whether every local term can be evaluated for this case."""
        return self.case_tag in (CaseTag.II, CaseTag.III_A)

    def shifted(self, c) -> 'DoubleCoverDatum':
        """The same cover after x -> x + c."""
        return classify_cover(shift(self.f, c), shift(self.g, c))


def classify_cover(f: Poly, g: Poly) -> DoubleCoverDatum:
    """Assign the case of the cover defined by F = f g.

    Raises:
        InvalidInputError: If the degree pattern is not (4, 2), (6, 2) or (4, 4)
        NotSquarefreeError: If f g has a repeated factor
    """
    pattern = (f.degree(), g.degree())
    if pattern not in DEGREE_PATTERNS:
        raise InvalidInputError(
            f'unsupported degree pattern (deg f, deg g) = {pattern}; '
            'expected (4, 2), (6, 2) or (4, 4)'
        )
    if not is_squarefree(f * g):
        raise NotSquarefreeError(f'f g = {poly_to_string(f * g)} is not squarefree')
    case_tag = DEGREE_PATTERNS[pattern]
    logger.debug(f'Classified cover with degrees {pattern} as case {case_tag.value}')
    return DoubleCoverDatum(f, g, case_tag)


@dataclass(frozen=True)
class PrymDescriptor:
    """Prym variety of a cover as a Jacobian or a product of two Jacobians."""

    case_tag: CaseTag
    components: Tuple[HyperellipticCurve, ...]

    @property
    def dimension(self) -> int:
        return sum(c.genus for c in self.components)

    @property
    def is_jacobian(self) -> bool:
        return len(self.components) == 1

    def describe(self) -> Dict[str, Any]:
        return {
            'case': self.case_tag.value,
            'dimension': self.dimension,
            'components': [c.describe() for c in self.components],
        }


def build_prym(d: DoubleCoverDatum) -> PrymDescriptor:
    """Prym variety: Jac(y^2 = f) in cases II and III.a, Jac(y^2 = f) x Jac(y^2 = g) in III.b."""
    if d.case_tag == CaseTag.III_B:
        components = (
            HyperellipticCurve(d.f, ROLE_PRYM1),
            HyperellipticCurve(d.g, ROLE_PRYM2),
        )
    elif d.case_tag in (CaseTag.II, CaseTag.III_A):
        components = (HyperellipticCurve(d.f, ROLE_PRYM1),)
    else:
        raise UnsupportedCaseError(f'case {d.case_tag.value} has no polynomial Prym model')
    prym = PrymDescriptor(d.case_tag, components)
    if prym.dimension != d.genus - 1:
        raise AssertionError('Prym dimension must be genus(C) - 1')  # pragma: no cover
    return prym


@dataclass(frozen=True)
class ConicParametrization:
    """Rational parametrization x = x(t), v = v(t) of the conic v^2 = g(x).

    The parameter t runs through the line of slopes at the rational point at infinity, so
    x(t) and v(t) are quotients of polynomials of degree at most 2 in t.
    """

    x_numerator: Poly
    x_denominator: Poly
    v_numerator: Poly
    v_denominator: Poly
    conic: Poly

    @property
    def base_point(self) -> str:
        return 'infinity'

    def evaluate(self, t: Fraction) -> Tuple[Fraction, Fraction]:
        t = Fraction(t)
        x = to_fraction(self.x_numerator.eval(to_rational(t))) / to_fraction(
            self.x_denominator.eval(to_rational(t))
        )
        v = to_fraction(self.v_numerator.eval(to_rational(t))) / to_fraction(
            self.v_denominator.eval(to_rational(t))
        )
        return x, v

    def verify(self) -> bool:
        """Check v(t)^2 = g(x(t)) as an identity of rational functions."""
        g = coefficients(self.conic)
        degree = len(g) - 1
        numerator = sum(
            (
                to_rational(c) * self.x_numerator**i * self.x_denominator ** (degree - i)
                for i, c in enumerate(g)
            ),
            Poly(0, T, domain='QQ'),
        )
        lhs = self.v_numerator**2 * self.x_denominator**degree
        rhs = numerator * self.v_denominator**2
        return (lhs - rhs).is_zero


def parametrize_conic(g: Poly) -> ConicParametrization:
    """Parametrize v^2 = g(x) for a quadratic g with square leading coefficient.

    Writing g = X^2 - delta with X = a (x + b), the conic factors as (X - v)(X + v) = delta and
    X + v = -kappa t gives the parametrization; kappa is a square root of delta when delta is
    a rational square and 1 otherwise.

    Raises:
        InvalidInputError: If the leading coefficient of g is not a rational square
    """
    if g.degree() != 2:
        raise InvalidInputError('the conic must be defined by a quadratic polynomial')
    a0, a1, a2 = coefficients(g)
    a = rational_square_root(a2)
    if a is None:
        raise InvalidInputError(
            f'leading coefficient {a2} of g is not a square; change coordinates '
            '(for example x -> 1/x after moving a rational root of g to 0) so that the '
            'conic v^2 = g(x) has a rational point at infinity'
        )
    b = a1 / (2 * a2)
    delta = (a1 * a1 - 4 * a2 * a0) / (4 * a2)
    kappa = rational_square_root(delta) or Fraction(1)
    return ConicParametrization(
        x_numerator=make_poly([-delta, -2 * a * b * kappa, -kappa * kappa], T),
        x_denominator=make_poly([0, 2 * a * kappa], T),
        v_numerator=make_poly([-delta, 0, kappa * kappa], T),
        v_denominator=make_poly([0, 2 * kappa], T),
        conic=g,
    )


def build_cover_model(d: DoubleCoverDatum) -> HyperellipticCurve:
    """Hyperelliptic model of D of degree 2 deg f.

    Substituting the conic parametrization into u^2 = f(x) and clearing the even power of the
    denominator gives w^2 = M(t) with M(t) = sum f_i N(t)^i Den(t)^(deg f - i). M is scaled by
    squares only, to integer coefficients with squarefree content, so the twist of D is the
    one fixed by the fibre product {u^2 = f, v^2 = g}.

    Raises:
        UnsupportedCaseError: In case III.b, where D is not hyperelliptic
        InvalidInputError: If the leading coefficient of g is not a square
    """
    if not d.is_end_to_end:
        raise UnsupportedCaseError(
            f'case {d.case_tag.value}: the cover is not hyperelliptic and gets no model'
        )
    conic = parametrize_conic(d.g)
    if not conic.verify():
        raise AssertionError('conic parametrization does not satisfy v^2 = g(x)')  # pragma: no cover
    f = coefficients(d.f)
    degree = len(f) - 1
    model = sum(
        (
            to_rational(c) * conic.x_numerator**i * conic.x_denominator ** (degree - i)
            for i, c in enumerate(f)
        ),
        Poly(0, T, domain='QQ'),
    )
    coeffs = coefficients(model)
    denominator = reduce(lcm, (c.denominator for c in coeffs), 1)
    integral = [int(c * denominator * denominator) for c in coeffs]
    content = reduce(gcd, integral, 0)
    s = square_part(content)
    integral = [c // (s * s) for c in integral]
    cover = HyperellipticCurve(make_poly(integral), ROLE_D)
    if cover.genus != 2 * d.genus - 1:
        raise AssertionError('cover model has the wrong genus')  # pragma: no cover
    logger.debug(f'Cover model: {cover}')
    return cover


def epsilon_class(d: DoubleCoverDatum) -> TwoTorsionClass:
    """The class of the roots of g, which defines the cover."""
    return TwoTorsionClass.of(d.ambient, d.g_labels)


@dataclass(frozen=True)
class CoverModels:
    """Every curve attached to an end-to-end double cover, built once per run."""

    datum: DoubleCoverDatum
    prym: PrymDescriptor
    cover: HyperellipticCurve

    @classmethod
    def build(cls, d: DoubleCoverDatum) -> 'CoverModels':
        """Build the Prym variety and the model of D.

        Raises:
            UnsupportedCaseError: If the case is not evaluated end to end
        """
        return cls(d, build_prym(d), build_cover_model(d))

    @property
    def curve(self) -> HyperellipticCurve:
        return self.datum.curve

    @property
    def epsilon(self) -> TwoTorsionClass:
        return epsilon_class(self.datum)

    @property
    def curves(self) -> Tuple[HyperellipticCurve, ...]:
        """C, the Prym components and D, in report order."""
        return (self.curve, *self.prym.components, self.cover)
