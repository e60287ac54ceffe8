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

"""Integer factorization, primality and local square tests."""

import time
from ..common.context import ParityContext
from ..common.errors import FactorizationTimeoutError
from collections import Counter
from fractions import Fraction
from itertools import count
from loguru import logger
from math import isqrt
from sympy import factorint, isprime, legendre_symbol, multiplicity, perfect_power, pollard_rho
from sympy.ntheory import pollard_pm1
from typing import Dict, Iterable, List, Optional, Union


RHO_STEPS = 1 << 16
PM1_BOUND = 10**5


def _split(m: int, deadline: float) -> int:
    """Find a nontrivial divisor of a composite that is not a perfect power."""
    divisor = pollard_pm1(m, B=PM1_BOUND)
    if divisor:
        return int(divisor)
    for attempt in count(1):
        if time.monotonic() > deadline:
            raise FactorizationTimeoutError(m)
        divisor = pollard_rho(m, s=attempt + 1, a=attempt, retries=0, max_steps=RHO_STEPS)
        if divisor:
            return int(divisor)
    raise AssertionError('unreachable')  # pragma: no cover


def factor_integer(
    n: int,
    timeout: Optional[float] = None,
    trial_limit: Optional[int] = None,
) -> Dict[int, int]:
    """Factor a nonzero integer completely.

    Trial division runs up to ``trial_limit``; every remaining composite is split by Pollard
    p-1 and then Pollard rho with fresh parameters until the deadline. Every returned prime
    passes sympy's ``isprime`` (BPSW, deterministic below 2^64).

    Args:
        n: Integer to factor
        timeout: Seconds allowed, defaults to ``ParityContext.factor_timeout()``
        trial_limit: Trial division bound, defaults to the context value

    Returns:
        Mapping prime -> exponent for |n|, sorted by prime

    Raises:
        ValueError: If n is zero
        FactorizationTimeoutError: If a cofactor could not be split in time
    """
    if n == 0:
        raise ValueError('cannot factor zero')
    n = abs(int(n))
    timeout = ParityContext.factor_timeout() if timeout is None else timeout
    trial_limit = ParityContext.trial_division_limit() if trial_limit is None else trial_limit
    deadline = time.monotonic() + timeout

    primes: Counter = Counter()
    pending: Counter = Counter(factorint(n, limit=trial_limit))
    while pending:
        m, e = pending.popitem()
        m = int(m)
        if m == 1:
            continue
        if isprime(m):
            primes[m] += e
            continue
        power = perfect_power(m)
        if power:
            base, k = power
            pending[int(base)] += k * e
            continue
        logger.debug(f'Splitting {m.bit_length()}-bit cofactor')
        divisor = _split(m, deadline)
        pending[divisor] += e
        pending[m // divisor] += e
    return dict(sorted(primes.items()))


def prime_support(values: Iterable[int], timeout: Optional[float] = None) -> List[int]:
    """Return the sorted primes dividing any of the nonzero values."""
    support = set()
    for value in values:
        if value:
            support.update(factor_integer(value, timeout=timeout))
    return sorted(support)


def strip_primes(n: int, primes: Iterable[int]) -> int:
    """Remove every power of the given primes from |n|."""
    n = abs(n)
    for p in primes:
        while n % p == 0:
            n //= p
    return n


def valuation_int(n: int, p: int) -> int:
    """Return v_p of a nonzero integer."""
    return multiplicity(p, n)


def reduce_square_class(n: int, p: int) -> int:
    """Divide out the largest even power of p; the class in Q_p*/Q_p*^2 is unchanged."""
    if n == 0:
        return 0
    v = multiplicity(p, n)
    return n // p ** (v - v % 2)


def is_square_in_qp(x: Union[int, Fraction], p: int) -> bool:
    """Decide whether a rational is a square in Q_p."""
    x = Fraction(x)
    if x == 0:
        return True
    n = x.numerator * x.denominator
    v = multiplicity(p, n)
    if v % 2:
        return False
    unit = n // p**v
    if p == 2:
        return unit % 8 == 1
    return legendre_symbol(unit % p, p) == 1


def is_probable_prime(n: int) -> bool:
    """Primality as used throughout the package."""
    return bool(isprime(n))


def rational_square_root(x: Union[int, Fraction]) -> Optional[Fraction]:
    """Return the nonnegative rational square root of x, or None when x is not a square."""
    x = Fraction(x)
    if x < 0:
        return None
    num, den = isqrt(x.numerator), isqrt(x.denominator)
    if num * num != x.numerator or den * den != x.denominator:
        return None
    return Fraction(num, den)


def square_part(n: int, timeout: Optional[float] = None) -> int:
    """Largest s with s^2 dividing the nonzero integer n."""
    s = 1
    for p, e in factor_integer(n, timeout=timeout).items():
        s *= p ** (e // 2)
    return s
