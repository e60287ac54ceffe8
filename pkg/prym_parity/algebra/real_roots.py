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

"""Exact root isolation.

Real roots get Sturm sequences and dyadic intervals, conjugate pairs get rational boxes.
"""

from ..common.errors import NotSquarefreeError
from .poly import coefficients, evaluate, is_squarefree, to_fraction
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from sympy import Poly, Rational, im, re
from typing import List, Sequence


HALF = Fraction(1, 2)
COMPLEX_BOX_WIDTH = Rational(1, 2**12)


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _cauchy_bound(poly: Poly) -> Fraction:
    coeffs = coefficients(poly)
    lead = abs(coeffs[-1])
    bound = 1 + max((abs(c) / lead for c in coeffs[:-1]), default=Fraction(0))
    power = Fraction(1)
    while power <= bound:
        power *= 2
    return power


@dataclass(frozen=True)
class IsolatingInterval:
    """Closed rational interval holding exactly one real root of ``polynomial``.

    Endpoints are never roots, so the polynomial changes sign across the interval.
    """

    lower: Fraction
    upper: Fraction
    polynomial: Poly

    @property
    def width(self) -> Fraction:
        return self.upper - self.lower

    @property
    def midpoint(self) -> Fraction:
        return (self.lower + self.upper) / 2

    def overlaps(self, other: 'IsolatingInterval') -> bool:
        return self.lower <= other.upper and other.lower <= self.upper

    def bisect(self) -> 'IsolatingInterval':
        """Halve the interval around the root."""
        lower, upper = self.lower, self.upper
        mid = (lower + upper) / 2
        value = evaluate(self.polynomial, mid)
        if value == 0:
            quarter = (upper - lower) / 4
            return IsolatingInterval(mid - quarter, mid + quarter, self.polynomial)
        if _sign(value) == _sign(evaluate(self.polynomial, lower)):
            return IsolatingInterval(mid, upper, self.polynomial)
        return IsolatingInterval(lower, mid, self.polynomial)

    def refine(self, width: Fraction) -> 'IsolatingInterval':
        """Bisect until the interval is at most ``width`` wide."""
        interval = self
        while interval.width > width:
            interval = interval.bisect()
        return interval


class SturmSequence:
    """Sturm sequence of a squarefree polynomial, evaluated exactly."""

    def __init__(self, poly: Poly):
        """Build the sequence p, p', -rem(p, p'), ..."""
        self._sequence = [coefficients(q) for q in poly.sturm()]

    def variations(self, x: Fraction) -> int:
        """Count sign changes at a point that is not a root."""
        signs = []
        for coeffs in self._sequence:
            value = Fraction(0)
            for c in reversed(coeffs):
                value = value * x + c
            if value:
                signs.append(value > 0)
        return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _detach(intervals: List[IsolatingInterval]) -> List[IsolatingInterval]:
    """Shrink intervals until no two share an endpoint."""
    result = list(intervals)
    while True:
        endpoints = [i.lower for i in result] + [i.upper for i in result]
        shared = {e for e in endpoints if endpoints.count(e) > 1}
        if not shared:
            return result
        result = [
            i.bisect() if i.lower in shared or i.upper in shared else i for i in result
        ]


def sturm_isolate_real_roots(poly: Poly) -> List[IsolatingInterval]:
    """Isolate every real root of a squarefree polynomial.

    Args:
        poly: Squarefree polynomial over QQ

    Returns:
        Pairwise disjoint isolating intervals with dyadic endpoints, sorted left to right

    Raises:
        NotSquarefreeError: If gcd(p, p') is not constant
    """
    if not is_squarefree(poly):
        raise NotSquarefreeError(f'{poly.as_expr()} is not squarefree')
    if poly.degree() < 1:
        return []

    sturm = SturmSequence(poly)
    bound = _cauchy_bound(poly)
    stack = [(-bound, bound, sturm.variations(-bound), sturm.variations(bound))]
    found = []
    while stack:
        a, b, va, vb = stack.pop()
        roots = va - vb
        if roots == 0:
            continue
        if roots == 1:
            found.append(IsolatingInterval(a, b, poly))
            continue
        m = (a + b) / 2
        j = 2
        while evaluate(poly, m) == 0:
            m = a + (b - a) * (HALF + Fraction(1, 2**j))
            j += 1
        vm = sturm.variations(m)
        stack.append((a, m, va, vm))
        stack.append((m, b, vm, vb))
    return sorted(_detach(found), key=lambda i: i.lower)


def separate(intervals: Sequence[IsolatingInterval]) -> List[IsolatingInterval]:
    """Refine intervals of possibly different polynomials until they are pairwise disjoint.

    The roots must be pairwise distinct, which holds for the roots of coprime factors. The
    result keeps the input order.
    """
    result = list(intervals)
    while True:
        clash = set()
        for k in range(len(result)):
            for j in range(k + 1, len(result)):
                if result[k].overlaps(result[j]):
                    clash.update((k, j))
        if not clash:
            return result
        result = [i.bisect() if k in clash else i for k, i in enumerate(result)]


@dataclass(frozen=True)
class ComplexBox:
    """Rational rectangle in the upper half plane holding exactly one non-real root."""

    re_lower: Fraction
    im_lower: Fraction
    re_upper: Fraction
    im_upper: Fraction

    def __str__(self) -> str:
        return f'[{self.re_lower}, {self.re_upper}] x [{self.im_lower}, {self.im_upper}]i'


def isolate_complex_roots(poly: Poly) -> List[ComplexBox]:
    """Isolate the non-real roots of a squarefree polynomial, one box per conjugate pair.

    Boxes are narrower than ``COMPLEX_BOX_WIDTH`` and ordered by real part, then by imaginary
    part of the root in the upper half plane. Roots whose real parts cannot be told apart at
    that width count as having equal real parts.

    Raises:
        NotSquarefreeError: If gcd(p, p') is not constant
    """
    if not is_squarefree(poly):
        raise NotSquarefreeError(f'{poly.as_expr()} is not squarefree')
    if poly.degree() < 2:
        return []
    _, rectangles = poly.intervals(all=True, sqf=True, eps=COMPLEX_BOX_WIDTH)
    boxes = []
    for lower, upper in rectangles:
        box = ComplexBox(
            re_lower=to_fraction(re(lower)),
            im_lower=to_fraction(im(lower)),
            re_upper=to_fraction(re(upper)),
            im_upper=to_fraction(im(upper)),
        )
        if box.im_lower >= 0 and box.im_upper > 0:
            boxes.append(box)
    return sorted(boxes, key=cmp_to_key(_compare_boxes))


def _compare_boxes(a: ComplexBox, b: ComplexBox) -> int:
    if a.re_upper < b.re_lower:
        return -1
    if b.re_upper < a.re_lower:
        return 1
    return (a.im_lower > b.im_lower) - (a.im_lower < b.im_lower)
