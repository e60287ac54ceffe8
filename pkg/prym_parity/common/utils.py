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

"""General utility functions for prym-parity."""

from fractions import Fraction
from sympy import multiplicity
from typing import Any, Union


Number = Union[int, Fraction]


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse a decimal or ``a/b`` string into an exact rational.

    Args:
        text: Coefficient as written in an input file

    Returns:
        The exact rational value

    Raises:
        ValueError: If the string is not a rational number
    """
    if isinstance(text, (int, Fraction)):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ValueError(f"'{text}' is not a rational number") from None


def valuation(value: Number, p: int) -> int:
    """Return the p-adic valuation of a nonzero rational."""
    value = Fraction(value)
    if value == 0:
        raise ValueError('valuation of zero is infinite')
    return multiplicity(p, value.numerator) - multiplicity(p, value.denominator)


def ord2(value: Number) -> int:
    """Return the 2-adic valuation of a nonzero rational."""
    return valuation(value, 2)


def sign_power(exponent: int) -> int:
    """Return (-1)^exponent."""
    return -1 if exponent % 2 else 1


def convert_fractions_to_string(obj: Any) -> Any:
    """Recursively convert rationals to strings so reports stay JSON-serializable.

    Args:
        obj: Object to convert

    Returns:
        Object with non-integral rationals converted to ``a/b`` strings
    """
    if isinstance(obj, Fraction):
        return str(obj.numerator) if obj.denominator == 1 else str(obj)
    elif isinstance(obj, dict):
        return {str(k): convert_fractions_to_string(v) for k, v in obj.items()}
    elif isinstance(obj, (list, tuple)):
        return [convert_fractions_to_string(item) for item in obj]
    elif isinstance(obj, (set, frozenset)):
        return sorted(convert_fractions_to_string(item) for item in obj)
    return obj
