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

"""Tests for common utility functions."""

import pytest
from fractions import Fraction
from prym_parity.common.utils import (
    convert_fractions_to_string,
    ord2,
    parse_rational,
    sign_power,
    valuation,
)


class TestParseRational:
    """Test cases for parse_rational."""

    @pytest.mark.parametrize(
        'text,expected',
        [('-295', Fraction(-295)), ('3/4', Fraction(3, 4)), (' 1.5 ', Fraction(3, 2)), (7, 7)],
    )
    def test_valid(self, text, expected):
        """Test integers, fractions and decimals."""
        assert parse_rational(text) == expected

    @pytest.mark.parametrize('text', ['x', '1/0', ''])
    def test_invalid(self, text):
        """Test that non-rationals raise ValueError."""
        with pytest.raises(ValueError):
            parse_rational(text)


class TestValuation:
    """Test cases for valuations."""

    def test_valuation(self):
        """Test valuations of integers and fractions."""
        assert valuation(1201 * 2, 1201) == 1
        assert valuation(Fraction(3, 25), 5) == -2
        assert ord2(Fraction(1, 2)) == -1
        assert ord2(8) == 3

    def test_zero(self):
        """Test that zero has no finite valuation."""
        with pytest.raises(ValueError):
            valuation(0, 3)

    def test_sign_power(self):
        """Test (-1)^n."""
        assert sign_power(0) == 1
        assert sign_power(3) == -1
        assert sign_power(-2) == 1


class TestConvertFractionsToString:
    """Test cases for convert_fractions_to_string."""

    def test_nested(self):
        """Test conversion inside nested containers."""
        data = {'a': Fraction(1, 2), 'b': [Fraction(4), (Fraction(-3, 7),)], 3: {Fraction(1, 3)}}
        assert convert_fractions_to_string(data) == {
            'a': '1/2',
            'b': ['4', ['-3/7']],
            '3': ['1/3'],
        }

    def test_passthrough(self):
        """Test that other values are left alone."""
        assert convert_fractions_to_string(5) == 5
        assert convert_fractions_to_string('x') == 'x'
        assert convert_fractions_to_string(None) is None
