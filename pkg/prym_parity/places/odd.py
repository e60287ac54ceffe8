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

"""Local terms at odd primes."""

from ..algebra.integers import prime_support
from ..algebra.poly import coefficients, discriminant, leading_coefficient
from ..common.context import ParityContext
from ..common.overrides import OverrideFile
from ..common.utils import ord2, sign_power
from ..curves.cover import CoverModels
from ..pipeline.models import LocalTermReport
from .solubility import local_signs
from .tamagawa import TamagawaResult, tamagawa_number
from fractions import Fraction
from loguru import logger
from math import prod
from typing import Dict, Iterator, List, Optional


def _bad_values(models: CoverModels) -> Iterator[int]:
    datum = models.datum
    quantities = [
        discriminant(datum.product),
        discriminant(datum.f),
        discriminant(datum.g),
        leading_coefficient(datum.f),
        leading_coefficient(datum.g),
    ]
    for c in models.curves:
        quantities.append(c.discriminant)
        quantities.append(c.leading_coefficient)
    for q in quantities:
        q = Fraction(q)
        yield q.numerator
        yield q.denominator
    for c in models.curves:
        yield from (Fraction(a).denominator for a in coefficients(c.polynomial))


def bad_primes(models: CoverModels) -> List[int]:
    """Odd primes where C, D or the Prym variety may have bad reduction.

    Every other odd prime has good reduction for all of them, with integral models of unit
    discriminant.

    Raises:
        FactorizationTimeoutError: If a discriminant cannot be factored in time
    """
    primes = prime_support(_bad_values(models), timeout=ParityContext.factor_timeout())
    odd = [p for p in primes if p != 2]
    logger.info(f'Odd bad primes: {odd}')
    return odd


def tamagawa_table(
    models: CoverModels, p: int, overrides: Optional[OverrideFile] = None
) -> Dict[str, TamagawaResult]:
    """Tamagawa numbers of every curve of the cover at p, keyed by role."""
    return {c.role: tamagawa_number(c, p, overrides=overrides) for c in models.curves}


def lambda_odd(
    models: CoverModels, p: int, overrides: Optional[OverrideFile] = None
) -> LocalTermReport:
    """The local term at an odd prime.

    The kernel/cokernel ratio of the isogeny at p is c(Jac C) c(Prym) / c(Jac D).

    Raises:
        OverrideRequiredError: If a Tamagawa number or deficiency needs an override
    """
    table = tamagawa_table(models, p, overrides=overrides)
    c_c = table[models.curve.role].value
    c_d = table[models.cover.role].value
    c_prym = prod(table[c.role].value for c in models.prym.components)
    exponent = ord2(Fraction(c_c * c_prym, c_d))
    signs = local_signs(models, p, overrides=overrides)
    value = signs.product * sign_power(exponent)
    logger.info(f'lambda_{p} = {value} (Tamagawa numbers {[t.value for t in table.values()]})')
    return LocalTermReport(
        place=str(p),
        lambda_=value,
        mu_c=signs.mu_c,
        mu_d=signs.mu_d,
        delta=signs.delta,
        exponent=exponent,
        methods={
            **signs.methods,
            **{f'tamagawa:{role}': result.method for role, result in table.items()},
        },
        details={
            'tamagawa': {role: result.value for role, result in table.items()},
            'clusters': {role: result.details for role, result in table.items() if result.details},
        },
    )
