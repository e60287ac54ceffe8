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

"""Tests for local solubility and the deficiency signs."""

import pytest
from prym_parity.common.context import ParityContext
from prym_parity.common.errors import DeficiencyUndeterminedError, UnsupportedCaseError
from prym_parity.common.overrides import OverrideFile
from prym_parity.curves.cover import CaseTag, PrymDescriptor
from prym_parity.curves.hyperelliptic import HyperellipticCurve
from prym_parity.places import solubility
from prym_parity.places.solubility import (
    SolubilityCertificate,
    Verdict,
    delta_term,
    has_local_point,
    mu_term,
    rational_point,
    verify_witness,
)
from sympy import Poly, Symbol
from unittest.mock import patch


x = Symbol('x')


def curve(expr, role='C') -> HyperellipticCurve:
    return HyperellipticCurve(Poly(expr, x, domain='QQ'), role)


@pytest.fixture(autouse=True)
def small_prescan():
    """Keep the rational point pre-scan short."""
    ParityContext.initialize(prescan_integer_bound=20, prescan_fraction_bound=5)


@pytest.fixture
def pointless_at_3():
    """y^2 = 3x^4 + 3, which has no point over Q_3."""
    return curve(3 * x**4 + 3)


class TestRationalPoint:
    """Test cases for the global pre-scan."""

    def test_odd_degree(self):
        """Test that odd degree models have a rational point at infinity."""
        assert rational_point(curve(x**3 - x)) == ('infinity',)

    def test_square_leading_coefficient(self):
        """Test that a square leading coefficient gives points at infinity."""
        assert rational_point(curve(x**4 + 2)) == ('infinity',)

    def test_integral_point(self):
        """Test that small integral points are found."""
        assert rational_point(curve(2 * x**4 + 2)) == ('1', '2')

    def test_no_point(self, pointless_at_3):
        """Test that a curve without rational points gives None."""
        assert rational_point(pointless_at_3) is None


class TestHasLocalPoint:
    """Test cases for has_local_point."""

    def test_no_point_at_3(self, pointless_at_3):
        """Test that the residue disk search proves there is no 3-adic point."""
        certificate = has_local_point(pointless_at_3, 3)
        assert certificate.verdict == Verdict.NO_POINT
        assert not certificate.has_point

    def test_point_at_7(self, pointless_at_3):
        """Test that 3 * 17 is a square mod 7, so x = 2 is a witness."""
        certificate = has_local_point(pointless_at_3, 7)
        assert certificate.has_point
        assert certificate.witness == ('2',)
        assert certificate.method == 'local-search'
        assert verify_witness(pointless_at_3, certificate)

    def test_real_points_at_infinity(self, pointless_at_3):
        """Test that a positive leading coefficient gives real points at infinity."""
        certificate = has_local_point(pointless_at_3, 'inf')
        assert certificate.place == 'inf'
        assert certificate.witness == ('infinity',)
        assert verify_witness(pointless_at_3, certificate)

    def test_real_root_witness(self):
        """Test that a real root of F is a witness at the real place."""
        c = curve(-(x**4) + 3)
        certificate = has_local_point(c, 'infinity')
        assert certificate.has_point
        assert certificate.witness[0] == 'root'

    def test_no_real_points(self):
        """Test that a negative definite F has no real points."""
        certificate = has_local_point(curve(-(x**6) - 1), 'inf')
        assert certificate.verdict == Verdict.NO_POINT

    def test_rational_point_settles_every_place(self):
        """Test that the pre-scan witness is used at finite primes."""
        certificate = has_local_point(curve(2 * x**4 + 2), 5)
        assert certificate.method == 'rational-point'
        assert certificate.witness == ('1', '2')

    def test_search_exhausted(self, pointless_at_3):
        """Test that running out of budget leaves the verdict undetermined."""
        with patch.object(
            solubility._DiskSearch, 'search', side_effect=solubility._SearchExhausted('budget')
        ):
            certificate = has_local_point(pointless_at_3, 17)
        assert certificate.verdict == Verdict.UNDETERMINED

    def test_witness_checked(self, pointless_at_3):
        """Test that every found point is re-checked on the curve before it is returned."""
        with patch.object(solubility, 'verify_witness', wraps=verify_witness) as verify:
            certificate = has_local_point(pointless_at_3, 7)
        verify.assert_called_once_with(pointless_at_3, certificate)

    def test_bad_witness_rejected(self, pointless_at_3):
        """Test that a certificate whose witness is not a local point is never returned."""
        bad = SolubilityCertificate('7', Verdict.POINT_FOUND, ('1',))
        with (
            patch.object(solubility, '_certificate', return_value=bad),
            pytest.raises(AssertionError, match='fails'),
        ):
            has_local_point(pointless_at_3, 7)

    def test_verify_rejects_missing_point(self, pointless_at_3):
        """Test that a certificate without a point does not verify."""
        certificate = SolubilityCertificate('3', Verdict.NO_POINT)
        assert not verify_witness(pointless_at_3, certificate)

    def test_verify_rejects_wrong_witness(self, pointless_at_3):
        """Test that a witness whose value is not a square is rejected."""
        certificate = SolubilityCertificate('7', Verdict.POINT_FOUND, ('1',))
        assert not verify_witness(pointless_at_3, certificate)


class TestMuTerm:
    """Test cases for mu_term."""

    def test_point_gives_one(self, pointless_at_3):
        """Test that a curve with a local point is not deficient."""
        assert mu_term(pointless_at_3, 7) == 1

    def test_no_point_at_finite_prime_raises(self, pointless_at_3):
        """Test that a pointless curve at a finite prime needs an override."""
        with pytest.raises(DeficiencyUndeterminedError) as exc_info:
            mu_term(pointless_at_3, 3)
        assert exc_info.value.place == '3'
        assert 'no local point' in exc_info.value.message
        assert '"C@3"' in exc_info.value.override_recipe

    def test_override_used(self, pointless_at_3):
        """Test that the override entry is consulted when the computation fails."""
        overrides = OverrideFile(mu={'C@3': -1})
        assert mu_term(pointless_at_3, 3, overrides=overrides) == -1
        assert overrides.applied == ['mu.C@3']

    def test_override_not_used_when_computed(self, pointless_at_3):
        """Test that an entry is ignored when the sign is computed natively."""
        overrides = OverrideFile(mu={'C@7': -1})
        assert mu_term(pointless_at_3, 7, overrides=overrides) == 1
        assert overrides.applied == []

    def test_real_even_genus(self):
        """Test that a pointless real curve of even genus is deficient."""
        assert mu_term(curve(-(x**6) - 1), 'inf') == -1

    def test_real_odd_genus(self):
        """Test that a pointless real curve of odd genus is not deficient."""
        assert mu_term(curve(-(x**4) - 1), 'inf') == 1


class TestDeltaTerm:
    """Test cases for delta_term."""

    def test_product_of_components(self, pointless_at_3):
        """Test that the Prym sign is the product over its Jacobian factors."""
        prym = PrymDescriptor(
            CaseTag.III_B, (curve(-(x**6) - 1, 'Prym1'), curve(-(x**4) - 1, 'Prym2'))
        )
        assert delta_term(prym, 'inf') == -1

    def test_weil_restriction_unsupported(self):
        """Test that case III.c is refused."""
        with pytest.raises(UnsupportedCaseError):
            delta_term(PrymDescriptor(CaseTag.III_C, ()), 'inf')
