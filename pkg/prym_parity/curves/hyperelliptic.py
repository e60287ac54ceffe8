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

"""Hyperelliptic curves y^2 = F(x) over the rationals."""

from ..algebra.poly import (
    coefficients,
    discriminant,
    is_squarefree,
    leading_coefficient,
    make_poly,
    poly_to_string,
    shift,
)
from ..common.errors import InvalidInputError, NotSquarefreeError
from dataclasses import dataclass
from fractions import Fraction
from sympy import Poly
from typing import Any, Dict, Iterable, List, Optional


@dataclass(frozen=True)
class HyperellipticCurve:
    """The curve y^2 = F(x) with F squarefree.

    ``role`` names the curve inside a double cover ("C", "D", "Prym1", "Prym2") and is only used
    for override keys and reports.
    """

    polynomial: Poly
    role: Optional[str] = None

    def __post_init__(self):
        if self.polynomial.degree() < 3:
            raise InvalidInputError(
                f'y^2 = {poly_to_string(self.polynomial)} is not a curve of positive genus'
            )
        if not is_squarefree(self.polynomial):
            raise NotSquarefreeError(f'{poly_to_string(self.polynomial)} is not squarefree')

    @classmethod
    def from_coefficients(
        cls, coeffs: Iterable, role: Optional[str] = None
    ) -> 'HyperellipticCurve':
        """Build the curve from coefficients listed lowest degree first."""
        return cls(make_poly(coeffs), role)

    @property
    def degree(self) -> int:
        return self.polynomial.degree()

    @property
    def genus(self) -> int:
        return (self.degree - 1) // 2

    @property
    def leading_coefficient(self) -> Fraction:
        return leading_coefficient(self.polynomial)

    @property
    def coefficients(self) -> List[Fraction]:
        return coefficients(self.polynomial)

    @property
    def discriminant(self) -> Fraction:
        return discriminant(self.polynomial)

    @property
    def points_at_infinity(self) -> int:
        """Number of points at infinity of the smooth model (1 for odd degree)."""
        return 1 if self.degree % 2 else 2

    def shifted(self, c) -> 'HyperellipticCurve':
        """The isomorphic curve obtained by x -> x + c."""
        return HyperellipticCurve(shift(self.polynomial, c), self.role)

    def describe(self) -> Dict[str, Any]:
        return {
            'role': self.role,
            'equation': f'y^2 = {poly_to_string(self.polynomial)}',
            'genus': self.genus,
        }

    def __str__(self) -> str:
        return f'y^2 = {poly_to_string(self.polynomial)}'
