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

"""Run-wide configuration for prym-parity."""

import os
from .constants import (
    DEFAULT_FACTOR_TIMEOUT,
    DEFAULT_PADIC_PRECISION,
    DEFAULT_PADIC_PRECISION_CAP,
    DEFAULT_PRESCAN_FRACTION_BOUND,
    DEFAULT_PRESCAN_INTEGER_BOUND,
    DEFAULT_SOLUBILITY_MAX_DEPTH,
    DEFAULT_SOLUBILITY_SEARCH_LIMIT,
    DEFAULT_TRIAL_DIVISION_LIMIT,
    DEFAULT_TWO_ADIC_MAX_EXTENSION,
    ENV_PREFIX,
)
from typing import Any, Callable, Dict, Optional


def _from_env(name: str, default: Any, cast: Callable[[str], Any]) -> Any:
    value = os.environ.get(f'{ENV_PREFIX}_{name}')
    return default if value is None else cast(value)


class ParityContext:
    """Context class holding the numeric budgets of a run.

    Values are written once by ``initialize`` before any computation starts and only read
    afterwards.
    """

    _padic_precision = DEFAULT_PADIC_PRECISION
    _padic_precision_cap = DEFAULT_PADIC_PRECISION_CAP
    _two_adic_max_extension = DEFAULT_TWO_ADIC_MAX_EXTENSION
    _factor_timeout = DEFAULT_FACTOR_TIMEOUT
    _trial_division_limit = DEFAULT_TRIAL_DIVISION_LIMIT
    _prescan_integer_bound = DEFAULT_PRESCAN_INTEGER_BOUND
    _prescan_fraction_bound = DEFAULT_PRESCAN_FRACTION_BOUND
    _solubility_search_limit = DEFAULT_SOLUBILITY_SEARCH_LIMIT
    _solubility_max_depth = DEFAULT_SOLUBILITY_MAX_DEPTH

    @classmethod
    def initialize(
        cls,
        padic_precision: Optional[int] = None,
        padic_precision_cap: Optional[int] = None,
        factor_timeout: Optional[float] = None,
        two_adic_max_extension: Optional[int] = None,
        prescan_integer_bound: Optional[int] = None,
        prescan_fraction_bound: Optional[int] = None,
        solubility_search_limit: Optional[int] = None,
        solubility_max_depth: Optional[int] = None,
        trial_division_limit: Optional[int] = None,
    ):
        """Initialize the context.

        Arguments left as None fall back to the ``PRYM_PARITY_*`` environment variables and
        then to the built-in defaults.

        Args:
            padic_precision (int): Starting p-adic precision in digits.
            padic_precision_cap (int): Largest p-adic precision before giving up.
            factor_timeout (float): Seconds allowed for each integer factorization.
            two_adic_max_extension (int): Largest residue degree used at p = 2.
            prescan_integer_bound (int): Bound on |x| for integral rational points.
            prescan_fraction_bound (int): Bound on numerators and denominators of fractions.
            solubility_search_limit (int): Largest prime for a naive residue scan.
            solubility_max_depth (int): Recursion depth of the residue-disk descent.
            trial_division_limit (int): Trial division bound before Pollard rho.
        """
        settings: Dict[str, Any] = {
            'padic_precision': (padic_precision, DEFAULT_PADIC_PRECISION, int),
            'padic_precision_cap': (padic_precision_cap, DEFAULT_PADIC_PRECISION_CAP, int),
            'factor_timeout': (factor_timeout, DEFAULT_FACTOR_TIMEOUT, float),
            'two_adic_max_extension': (
                two_adic_max_extension,
                DEFAULT_TWO_ADIC_MAX_EXTENSION,
                int,
            ),
            'prescan_integer_bound': (
                prescan_integer_bound,
                DEFAULT_PRESCAN_INTEGER_BOUND,
                int,
            ),
            'prescan_fraction_bound': (
                prescan_fraction_bound,
                DEFAULT_PRESCAN_FRACTION_BOUND,
                int,
            ),
            'solubility_search_limit': (
                solubility_search_limit,
                DEFAULT_SOLUBILITY_SEARCH_LIMIT,
                int,
            ),
            'solubility_max_depth': (solubility_max_depth, DEFAULT_SOLUBILITY_MAX_DEPTH, int),
            'trial_division_limit': (trial_division_limit, DEFAULT_TRIAL_DIVISION_LIMIT, int),
        }
        for name, (value, default, cast) in settings.items():
            if value is None:
                value = _from_env(name.upper(), default, cast)
            setattr(cls, f'_{name}', cast(value))

        if cls._padic_precision_cap < cls._padic_precision:
            raise ValueError('padic_precision_cap must not be smaller than padic_precision')

    @classmethod
    def padic_precision(cls) -> int:
        """Get the starting p-adic precision in digits."""
        return cls._padic_precision

    @classmethod
    def padic_precision_cap(cls) -> int:
        """Get the p-adic precision cap in digits."""
        return cls._padic_precision_cap

    @classmethod
    def two_adic_max_extension(cls) -> int:
        """Get the largest residue degree m of F_{2^m} used at p = 2."""
        return cls._two_adic_max_extension

    @classmethod
    def factor_timeout(cls) -> float:
        """Get the time budget in seconds for one integer factorization."""
        return cls._factor_timeout

    @classmethod
    def trial_division_limit(cls) -> int:
        """Get the trial division bound."""
        return cls._trial_division_limit

    @classmethod
    def prescan_integer_bound(cls) -> int:
        """Get the bound on |x| for the integral part of the rational-point pre-scan."""
        return cls._prescan_integer_bound

    @classmethod
    def prescan_fraction_bound(cls) -> int:
        """Get the numerator and denominator bound for fractional pre-scan points."""
        return cls._prescan_fraction_bound

    @classmethod
    def solubility_search_limit(cls) -> int:
        """Get the largest prime for which residues are scanned one by one."""
        return cls._solubility_search_limit

    @classmethod
    def solubility_max_depth(cls) -> int:
        """Get the recursion depth of the residue-disk descent."""
        return cls._solubility_max_depth
