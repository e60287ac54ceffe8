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

"""End-to-end evaluation of the local formula for a double cover."""

import asyncio
from ..algebra.poly import poly_to_string
from ..common.constants import PLACE_INFINITY
from ..common.errors import InvalidInputError, UnsupportedCaseError
from ..common.overrides import OverrideFile
from ..common.utils import parse_rational
from ..curves.cover import CaseTag, CoverModels, DoubleCoverDatum, build_prym, epsilon_class
from ..places.odd import bad_primes, lambda_odd
from ..places.real import lambda_infinity
from ..places.two_adic import lambda_two
from ..torsion.kernel import kernel_of_phi
from ..torsion.steiner import describe_steiner
from .models import CurveInput, GlobalParityReport, LocalTermReport
from fractions import Fraction
from functools import reduce
from loguru import logger
from operator import mul
from sympy import isprime, nextprime
from typing import Any, Dict, List, Optional, Union


def describe_cover(d: DoubleCoverDatum) -> Dict[str, Any]:
    """Case, Prym components, model of D, epsilon and the kernel of the isogeny.

    Case III.c gets only its case and III.d only its Steiner complex bookkeeping; neither has
    polynomial models.
    """
    if d.case_tag == CaseTag.III_C:
        return {'case': d.case_tag.value, 'end_to_end': False}
    if d.case_tag == CaseTag.III_D:
        return {'case': d.case_tag.value, 'end_to_end': False, 'steiner': describe_steiner()}
    description: Dict[str, Any] = {
        'case': d.case_tag.value,
        'f': poly_to_string(d.f),
        'g': poly_to_string(d.g),
        'genus': d.genus,
        'prym': build_prym(d).describe(),
        'epsilon': str(epsilon_class(d)),
        'kernel': [str(e) for e in kernel_of_phi(d)],
    }
    if d.is_end_to_end:
        description['cover'] = CoverModels.build(d).cover.describe()
    return description


def evaluate_place(
    models: CoverModels, place: str, overrides: Optional[OverrideFile] = None
) -> LocalTermReport:
    """The local term at one place: "inf", "2" or an odd prime."""
    logger.info(f'Evaluating the local term at {place}')
    if place == PLACE_INFINITY:
        term = lambda_infinity(models, overrides=overrides)
    elif place == '2':
        term = lambda_two(models, overrides=overrides)
    else:
        term = lambda_odd(models, int(place), overrides=overrides)
    logger.success(f'lambda_{place} = {term.lambda_}')
    return term


def _good_primes(count: int, bad: List[int]) -> List[int]:
    primes: List[int] = []
    p = 2
    while len(primes) < count:
        p = nextprime(p)
        if p not in bad:
            primes.append(p)
    return primes


def _parity_statement(product: int) -> str:
    parity = 'even' if product == 1 else 'odd'
    return f'rk2 Jac C + rk2 Prym(D/C) is {parity}'


def combine_with_known_prym_parity(report: GlobalParityReport, prym_sign: int) -> int:
    """The predicted (-1)^(rk2 Jac C) from the global product and (-1)^(rk2 Prym).

    Raises:
        ValueError: If the report has no global product or the sign is not +1 or -1
    """
    if prym_sign not in (1, -1):
        raise ValueError('the Prym sign must be 1 or -1')
    if report.global_product is None:
        raise ValueError('a restricted or partial report has no global product')
    return report.global_product * prym_sign


async def run_pipeline(
    curve: CurveInput,
    overrides: Optional[OverrideFile] = None,
    spot_check_good_primes: int = 0,
    shift: Union[str, Fraction, None] = None,
    prym_sign: Optional[int] = None,
) -> GlobalParityReport:
    """Evaluate every local term of a double cover and multiply them.

    Places are evaluated concurrently in worker threads; the report lists them in the order
    infinity, 2, then the odd bad primes in increasing order.

    Args:
        curve: The input polynomials and options
        overrides: Override file, read from ``curve.override_path`` when omitted
        spot_check_good_primes: Number of good odd primes to evaluate as a check
        shift: Apply x -> x + shift to f and g first
        prym_sign: Known (-1)^(rk2 Prym), combined with the product when given

    Returns:
        The report

    Raises:
        UnsupportedCaseError: For case III.b, with the cover description as partial report
        OverrideRequiredError: If a quantity needs an override entry that is missing
    """
    datum = curve.datum()
    if shift is not None and parse_rational(shift) != 0:
        datum = datum.shifted(parse_rational(shift))
    if not datum.is_end_to_end:
        raise UnsupportedCaseError(
            f'case {datum.case_tag.value} is not evaluated end to end',
            partial_report=await asyncio.to_thread(describe_cover, datum),
        )
    if overrides is None:
        overrides = OverrideFile.load(curve.override_path)

    models = await asyncio.to_thread(CoverModels.build, datum)
    primes = await asyncio.to_thread(bad_primes, models)
    all_places = [PLACE_INFINITY, '2', *(str(p) for p in primes)]
    places = all_places if curve.places is None else curve.places
    for place in places:
        if place != PLACE_INFINITY and not isprime(int(place)):
            raise InvalidInputError(f'place {place} is neither "inf" nor a prime')

    terms = await asyncio.gather(
        *(asyncio.to_thread(evaluate_place, models, place, overrides) for place in places)
    )
    restricted = curve.places is not None
    product = None if restricted else reduce(mul, (t.lambda_ for t in terms), 1)

    spot_checks: List[LocalTermReport] = []
    if spot_check_good_primes:
        good = _good_primes(spot_check_good_primes, primes)
        spot_checks = list(
            await asyncio.gather(
                *(asyncio.to_thread(lambda_odd, models, p, overrides) for p in good)
            )
        )
        for check in spot_checks:
            if check.lambda_ != 1:
                raise AssertionError(f'local term at the good prime {check.place} is not +1')

    report = GlobalParityReport(
        input={'f': poly_to_string(datum.f), 'g': poly_to_string(datum.g)},
        case=datum.case_tag.value,
        bad_primes=[str(p) for p in primes],
        places=list(terms),
        global_product=product,
        restricted=restricted,
        parity_statement=None if product is None else _parity_statement(product),
        spot_checks=spot_checks,
        kernel={'epsilon': str(models.epsilon), 'elements': len(kernel_of_phi(datum))},
        overrides_used=overrides.applied,
    )
    if prym_sign is not None and product is not None:
        report.combined_sign = combine_with_known_prym_parity(report, prym_sign)
        parity = 'even' if report.combined_sign == 1 else 'odd'
        report.parity_statement += f'; with the given Prym parity, rk2 Jac C is {parity}'
    logger.info(f'Global product: {product}')
    return report
