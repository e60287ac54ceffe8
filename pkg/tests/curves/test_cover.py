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

"""Tests for double covers, Prym varieties and cover models."""

import pytest
from fractions import Fraction
from prym_parity.algebra.poly import evaluate, make_poly, shift
from prym_parity.common.errors import (
    InvalidInputError,
    NotSquarefreeError,
    UnsupportedCaseError,
)
from prym_parity.curves.cover import (
    CaseTag,
    CoverModels,
    build_cover_model,
    build_prym,
    classify_cover,
    epsilon_class,
    parametrize_conic,
)
from prym_parity.torsion.classes import TwoTorsionClass


class TestClassifyCover:
    """Test cases for classify_cover."""

    def test_worked_example(self, worked_datum):
        """Test the worked example, a case III.a cover of a genus 3 curve."""
        assert worked_datum.case_tag == CaseTag.III_A
        assert worked_datum.genus == 3
        assert worked_datum.f_labels == (1, 2, 3, 4, 5, 6)
        assert worked_datum.g_labels == (7, 8)
        assert worked_datum.is_end_to_end

    def test_case_ii(self, genus2_datum):
        """Test a (4, 2) cover."""
        assert genus2_datum.case_tag == CaseTag.II
        assert genus2_datum.genus == 2

    def test_case_iii_b(self):
        """Test that (4, 4) covers are classified but not evaluated end to end."""
        d = classify_cover(make_poly([-2, 0, 0, 0, 1]), make_poly([-3, 0, 0, 0, 1]))
        assert d.case_tag == CaseTag.III_B
        assert not d.is_end_to_end

    def test_unsupported_degrees(self):
        """Test that other degree patterns are invalid input."""
        with pytest.raises(InvalidInputError):
            classify_cover(make_poly([-2, 0, 0, 1]), make_poly([-3, 0, 1]))

    def test_common_root(self):
        """Test that f = x^4 - 1, g = x^2 - 1 share roots and are rejected."""
        with pytest.raises(NotSquarefreeError):
            classify_cover(make_poly([-1, 0, 0, 0, 1]), make_poly([-1, 0, 1]))

    def test_shifted(self, worked_datum):
        """Test that a shift moves f and g together."""
        moved = worked_datum.shifted(-1)
        assert moved.f == shift(worked_datum.f, -1)
        assert moved.g == shift(worked_datum.g, -1)
        assert moved.case_tag == worked_datum.case_tag


class TestPrym:
    """Test cases for build_prym."""

    def test_jacobian(self, worked_datum):
        """Test that the Prym of a III.a cover is Jac(y^2 = f)."""
        prym = build_prym(worked_datum)
        assert prym.is_jacobian
        assert prym.dimension == 2
        assert prym.components[0].polynomial == worked_datum.f
        assert prym.components[0].role == 'Prym1'

    def test_product(self):
        """Test that the Prym of a III.b cover is a product of two elliptic curves."""
        d = classify_cover(make_poly([-2, 0, 0, 0, 1]), make_poly([-3, 0, 0, 0, 1]))
        prym = build_prym(d)
        assert not prym.is_jacobian
        assert [c.role for c in prym.components] == ['Prym1', 'Prym2']
        assert prym.describe()['dimension'] == 2


class TestConic:
    """Test cases for parametrize_conic."""

    @pytest.mark.parametrize('g', [[12, 8, 1], [-3, 0, 1], [5, 1, 4]])
    def test_parametrization(self, g):
        """Test that every parameter value lands on v^2 = g(x)."""
        conic = parametrize_conic(make_poly(g))
        assert conic.verify()
        for t in (Fraction(1), Fraction(2), Fraction(-1, 3)):
            x, v = conic.evaluate(t)
            assert v * v == evaluate(make_poly(g), x)

    def test_non_square_leading_coefficient(self):
        """Test that the conic needs a rational point at infinity."""
        with pytest.raises(InvalidInputError):
            parametrize_conic(make_poly([1, 0, 2]))


class TestCoverModels:
    """Test cases for the model of D."""

    def test_worked_example(self, worked_models):
        """Test that D has genus 5 and the roles are in report order."""
        assert worked_models.cover.genus == 5
        assert worked_models.cover.role == 'D'
        assert [c.role for c in worked_models.curves] == ['C', 'Prym1', 'D']
        assert worked_models.epsilon == TwoTorsionClass.of(8, {7, 8})
        assert epsilon_class(worked_models.datum) == worked_models.epsilon

    def test_integral_coefficients(self, genus2_datum):
        """Test that the cover model has integral coefficients."""
        cover = build_cover_model(genus2_datum)
        assert cover.genus == 3
        assert all(c.denominator == 1 for c in cover.coefficients)

    def test_case_iii_b(self):
        """Test that III.b covers get no hyperelliptic model."""
        d = classify_cover(make_poly([-2, 0, 0, 0, 1]), make_poly([-3, 0, 0, 0, 1]))
        with pytest.raises(UnsupportedCaseError):
            CoverModels.build(d)
