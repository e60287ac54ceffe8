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

"""Tests for hyperelliptic curves."""

import pytest
from prym_parity.algebra.poly import make_poly
from prym_parity.common.errors import InvalidInputError, NotSquarefreeError
from prym_parity.curves.hyperelliptic import HyperellipticCurve


class TestHyperellipticCurve:
    """Test cases for HyperellipticCurve."""

    def test_invariants(self, worked_f, worked_g):
        """Test degree, genus and points at infinity of C in the worked example."""
        c = HyperellipticCurve(worked_f * worked_g, 'C')
        assert c.degree == 8
        assert c.genus == 3
        assert c.points_at_infinity == 2
        assert c.leading_coefficient == 1

    def test_odd_degree(self):
        """Test that odd degree models have one point at infinity."""
        c = HyperellipticCurve.from_coefficients([1, 0, 0, 1, 0, 1])
        assert c.genus == 2
        assert c.points_at_infinity == 1

    def test_too_small(self):
        """Test that conics are not curves of positive genus."""
        with pytest.raises(InvalidInputError):
            HyperellipticCurve(make_poly([1, 0, 1]))

    def test_not_squarefree(self):
        """Test that singular models are rejected."""
        with pytest.raises(NotSquarefreeError):
            HyperellipticCurve.from_coefficients([0, 0, 1, 1])

    def test_shifted(self, worked_g):
        """Test that shifting keeps the role and the discriminant."""
        c = HyperellipticCurve.from_coefficients([-2, 0, 0, 0, 1], 'Prym1')
        moved = c.shifted(3)
        assert moved.role == 'Prym1'
        assert moved.discriminant == c.discriminant
        assert moved.polynomial != c.polynomial

    def test_describe(self):
        """Test the report entry."""
        c = HyperellipticCurve.from_coefficients([-2, 0, 0, 0, 1], 'Prym1')
        assert c.describe() == {'role': 'Prym1', 'equation': 'y^2 = x^4 - 2', 'genus': 1}
        assert str(c) == 'y^2 = x^4 - 2'
