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

"""Tests for exact real root isolation."""

import pytest
from fractions import Fraction
from prym_parity.algebra.poly import evaluate, make_poly
from prym_parity.algebra.real_roots import (
    ComplexBox,
    SturmSequence,
    isolate_complex_roots,
    separate,
    sturm_isolate_real_roots,
)
from prym_parity.common.errors import NotSquarefreeError
from sympy import Poly, Symbol


x = Symbol('x')


def holds(box: ComplexBox, re, im) -> bool:
    return box.re_lower <= re <= box.re_upper and box.im_lower <= im <= box.im_upper


class TestSturmIsolation:
    """Test cases for sturm_isolate_real_roots."""

    def test_two_roots(self):
        """Test the roots of x^2 - 2."""
        intervals = sturm_isolate_real_roots(make_poly([-2, 0, 1]))
        assert len(intervals) == 2
        assert intervals[0].upper < 0 < intervals[1].lower
        refined = intervals[1].refine(Fraction(1, 1000))
        assert refined.width <= Fraction(1, 1000)
        assert refined.lower ** 2 < 2 < refined.upper**2

    def test_no_real_roots(self):
        """Test x^2 + 1."""
        assert sturm_isolate_real_roots(make_poly([1, 0, 1])) == []

    def test_rational_roots(self, worked_g):
        """Test that roots at dyadic midpoints are still isolated."""
        intervals = sturm_isolate_real_roots(worked_g)
        assert len(intervals) == 2
        for interval in intervals:
            lower = evaluate(worked_g, interval.lower)
            upper = evaluate(worked_g, interval.upper)
            assert lower * upper < 0

    def test_worked_example(self, worked_f):
        """Test that f of the worked example has two real roots."""
        assert len(sturm_isolate_real_roots(worked_f)) == 2

    def test_not_squarefree(self):
        """Test that repeated roots are rejected."""
        with pytest.raises(NotSquarefreeError):
            sturm_isolate_real_roots(make_poly([1, -2, 1]))

    def test_variations(self):
        """Test that Sturm's theorem counts the roots in an interval."""
        sturm = SturmSequence(make_poly([0, -1, 0, 1]))
        assert sturm.variations(Fraction(-2)) - sturm.variations(Fraction(2)) == 3
        assert sturm.variations(Fraction(1, 2)) - sturm.variations(Fraction(2)) == 1


class TestSeparate:
    """Test cases for separating roots of different polynomials."""

    def test_disjoint(self):
        """Test that the roots of x^2 - 2 and x^2 - 3 end up in disjoint intervals."""
        intervals = sturm_isolate_real_roots(make_poly([-2, 0, 1])) + sturm_isolate_real_roots(
            make_poly([-3, 0, 1])
        )
        result = separate(intervals)
        assert len(result) == 4
        for k, first in enumerate(result):
            for second in result[k + 1 :]:
                assert not first.overlaps(second)
        assert [i.polynomial for i in result] == [i.polynomial for i in intervals]


class TestComplexIsolation:
    """Test cases for isolate_complex_roots."""

    def test_order(self):
        """Test that pairs are ordered by real part, then by imaginary part."""
        poly = Poly((x**2 + 4) * (x**2 + 1) * (x**2 - 2 * x + 2), x, domain='QQ')
        boxes = isolate_complex_roots(poly)
        assert len(boxes) == 3
        assert holds(boxes[0], 0, 1)
        assert holds(boxes[1], 0, 2)
        assert holds(boxes[2], 1, 1)

    def test_negative_real_part_first(self):
        """Test that the roots of x^4 + 1 are ordered left to right."""
        boxes = isolate_complex_roots(Poly(x**4 + 1, x, domain='QQ'))
        assert len(boxes) == 2
        assert boxes[0].re_upper < 0 < boxes[1].re_lower
        assert all(box.im_lower > 0 for box in boxes)

    def test_narrow(self):
        """Test that boxes are narrower than the configured width."""
        for box in isolate_complex_roots(Poly(x**6 + x + 1, x, domain='QQ')):
            assert box.re_upper - box.re_lower <= Fraction(1, 2**12)
            assert box.im_upper - box.im_lower <= Fraction(1, 2**12)

    def test_scaling(self):
        """Test that a multiple of a polynomial orders its roots the same way."""
        poly = Poly((x**2 + 9) * (x**2 + 2 * x + 5), x, domain='QQ')
        for boxes in (isolate_complex_roots(poly), isolate_complex_roots(poly * 7)):
            assert holds(boxes[0], -1, 2)
            assert holds(boxes[1], 0, 3)

    @pytest.mark.parametrize('coeffs', [[-2, 0, 1], [3, 1], [5]])
    def test_no_pairs(self, coeffs):
        """Test polynomials without non-real roots."""
        assert isolate_complex_roots(make_poly(coeffs)) == []

    def test_not_squarefree(self):
        """Test that repeated roots are rejected."""
        with pytest.raises(NotSquarefreeError):
            isolate_complex_roots(Poly((x**2 + 1) ** 2, x, domain='QQ'))
