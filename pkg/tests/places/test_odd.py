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

"""Tests for the local terms at odd primes."""

import pytest
from prym_parity.common.errors import TamagawaUnavailableError
from prym_parity.places import odd
from prym_parity.places.odd import bad_primes, lambda_odd, tamagawa_table
from prym_parity.places.solubility import LocalSigns
from prym_parity.places.tamagawa import TamagawaResult
from unittest.mock import patch


def fake_tamagawa(values):
    def tamagawa_number(c, p, overrides=None):
        return TamagawaResult(values[c.role], 'cluster')

    return tamagawa_number


class TestLambdaOdd:
    """Test cases for lambda_odd with the local inputs mocked."""

    @pytest.mark.parametrize(
        'values,expected,exponent',
        [
            ({'C': 1, 'Prym1': 1, 'D': 1}, 1, 0),
            ({'C': 2, 'Prym1': 1, 'D': 1}, -1, 1),
            ({'C': 2, 'Prym1': 1, 'D': 2}, 1, 0),
            ({'C': 1, 'Prym1': 4, 'D': 2}, -1, 1),
            ({'C': 2, 'Prym1': 3, 'D': 6}, 1, 0),
        ],
    )
    def test_tamagawa_ratio(self, worked_models, values, expected, exponent):
        """Test that the term is -1 to the 2-adic valuation of c(C) c(Prym) / c(D)."""
        with (
            patch.object(odd, 'tamagawa_number', side_effect=fake_tamagawa(values)),
            patch.object(odd, 'local_signs', return_value=LocalSigns(1, 1, 1, {})),
        ):
            report = lambda_odd(worked_models, 1201)
        assert report.place == '1201'
        assert report.lambda_ == expected
        assert report.exponent == exponent
        assert report.details['tamagawa'] == values
        assert report.methods['tamagawa:C'] == 'cluster'

    def test_deficiency_signs(self, worked_models):
        """Test that the deficiency signs multiply into the term."""
        signs = LocalSigns(-1, 1, 1, {'mu:C': 'override'})
        with (
            patch.object(
                odd, 'tamagawa_number', side_effect=fake_tamagawa({'C': 1, 'Prym1': 1, 'D': 1})
            ),
            patch.object(odd, 'local_signs', return_value=signs),
        ):
            report = lambda_odd(worked_models, 7)
        assert report.lambda_ == -1
        assert report.mu_c == -1
        assert report.methods['mu:C'] == 'override'

    def test_tamagawa_failure_propagates(self, worked_models):
        """Test that a missing Tamagawa number stops the term."""
        with patch.object(
            odd, 'tamagawa_number', side_effect=TamagawaUnavailableError('no', place='7')
        ):
            with pytest.raises(TamagawaUnavailableError):
                lambda_odd(worked_models, 7)

    def test_tamagawa_table_roles(self, worked_models):
        """Test that the table covers C, the Prym and D."""
        with patch.object(
            odd, 'tamagawa_number', side_effect=fake_tamagawa({'C': 1, 'Prym1': 1, 'D': 1})
        ):
            table = tamagawa_table(worked_models, 5)
        assert list(table) == ['C', 'Prym1', 'D']


@pytest.mark.slow
class TestWorkedExample:
    """Test cases on the worked example."""

    def test_bad_primes(self, worked_models):
        """Test that the odd bad primes contain the primes of the worked example."""
        primes = bad_primes(worked_models)
        assert 2 not in primes
        assert {5, 7, 59, 653, 1201, 193793, 17283342701} <= set(primes)
        assert primes == sorted(primes)

    def test_lambda_at_1201(self, worked_models):
        """Test that c(C) = 2 at 1201 makes the term -1."""
        report = lambda_odd(worked_models, 1201)
        assert report.details['tamagawa'] == {'C': 2, 'Prym1': 1, 'D': 1}
        assert report.lambda_ == -1
