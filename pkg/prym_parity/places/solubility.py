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

"""Local solubility of y^2 = F(x) and the deficiency signs built on it.

At a finite prime the search walks the residue disks of the affine chart and of the chart at
infinity. The square class of F is constant on a disk where F is a unit, so only disks around
the roots of F mod p are refined. At the real place a curve has points exactly when F takes a
nonnegative value.
"""

from ..algebra.finite_field import FiniteField, fq_lift, fq_roots
from ..algebra.integers import is_square_in_qp, rational_square_root, reduce_square_class
from ..algebra.poly import int_content, int_eval, int_strip, int_taylor_shift
from ..algebra.real_roots import sturm_isolate_real_roots
from ..common.constants import METHOD_NATIVE, METHOD_OVERRIDE, PLACE_INFINITY, RECIPE_MU
from ..common.context import ParityContext
from ..common.decorators.override_check import override_check
from ..common.errors import DeficiencyUndeterminedError, UnsupportedCaseError
from ..common.overrides import OverrideFile, place_key
from ..curves.cover import CaseTag, CoverModels, PrymDescriptor
from ..curves.hyperelliptic import HyperellipticCurve
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache, reduce
from loguru import logger
from math import gcd, lcm
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_from_int_poly, gf_sqf_list
from typing import Dict, Iterator, List, Optional, Tuple, Union


Place = Union[int, str]


class Verdict(str, Enum):
    """Outcome of a local point search."""

    POINT_FOUND = 'point-found'
    NO_POINT = 'no-point'
    UNDETERMINED = 'undetermined'


@dataclass(frozen=True)
class SolubilityCertificate:
    """Result of a local point search at one place.

    A witness is a rational x-coordinate (as a string) whose F-value is a square at the place,
    or "infinity" for a point at infinity, or a real root interval at the real place.
    """

    place: str
    verdict: Verdict
    witness: Optional[Tuple[str, ...]] = None
    method: str = 'local-search'

    @property
    def has_point(self) -> bool:
        return self.verdict == Verdict.POINT_FOUND


class _SearchExhausted(Exception):
    pass


def _integral_model(c: HyperellipticCurve) -> Tuple[List[int], int]:
    """Write s^2 F = m G with G integral and primitive.

    Returns:
        Coefficients of G lowest degree first, and the integer m
    """
    coeffs = c.coefficients
    denominator = reduce(lcm, (a.denominator for a in coeffs), 1)
    scaled = [int(a * denominator * denominator) for a in coeffs]
    content = int_content(scaled)
    return [a // content for a in scaled], content


def _heights(bound: int) -> Iterator[int]:
    yield 0
    for n in range(1, bound + 1):
        yield n
        yield -n


def _value(coeffs: List[Fraction], x: Fraction) -> Fraction:
    result = Fraction(0)
    for a in reversed(coeffs):
        result = result * x + a
    return result


@lru_cache(maxsize=None)
def rational_point(c: HyperellipticCurve) -> Optional[Tuple[str, ...]]:
    """Look for a rational point of small height on the global model.

    Points at infinity are tried first, then integers up to the pre-scan bound and then
    fractions a/b with numerator and denominator up to the fraction bound.

    Returns:
        A witness as for SolubilityCertificate, or None
    """
    if c.degree % 2 or rational_square_root(c.leading_coefficient) is not None:
        return ('infinity',)
    coeffs = c.coefficients
    for x in _heights(ParityContext.prescan_integer_bound()):
        y = rational_square_root(_value(coeffs, Fraction(x)))
        if y is not None:
            return (str(x), str(y))
    bound = ParityContext.prescan_fraction_bound()
    for b in range(2, bound + 1):
        for a in _heights(bound):
            if gcd(a, b) != 1:
                continue
            x = Fraction(a, b)
            y = rational_square_root(_value(coeffs, x))
            if y is not None:
                return (str(x), str(y))
    return None


def verify_witness(c: HyperellipticCurve, certificate: SolubilityCertificate) -> bool:
    """Re-check a witness exactly on the model of ``c``."""
    if not certificate.has_point or certificate.witness is None:
        return False
    witness = certificate.witness
    if witness[0] == 'infinity':
        if c.degree % 2:
            return True
        lead = c.leading_coefficient
        if certificate.place == PLACE_INFINITY:
            return lead > 0
        return is_square_in_qp(lead, int(certificate.place))
    if witness[0] == 'root':
        lower, upper = Fraction(witness[1]), Fraction(witness[2])
        return _value(c.coefficients, lower) * _value(c.coefficients, upper) < 0
    x = Fraction(witness[0])
    value = _value(c.coefficients, x)
    if len(witness) > 1:
        return Fraction(witness[1]) ** 2 == value
    if certificate.place == PLACE_INFINITY:
        return value >= 0
    return is_square_in_qp(value, int(certificate.place))


class _DiskSearch:
    """Search for t in Z_p with c G(t) a square in Q_p, refining disks around roots mod p."""

    def __init__(self, p: int):
        self.p = p
        self.limit = ParityContext.solubility_search_limit()
        self.max_depth = ParityContext.solubility_max_depth()
        self.steps = 0

    def _tick(self) -> None:
        self.steps += 1
        if self.steps > self.limit:
            raise _SearchExhausted(f'search limit {self.limit} reached at p = {self.p}')

    def _roots_mod_p(self, coeffs: List[int]) -> List[int]:
        p = self.p
        if p <= self.limit:
            return [t for t in range(p) if int_eval(coeffs, t) % p == 0]
        field = FiniteField(p, 1)
        return [int(root.key[-1]) if root.key else 0
                for root, _ in fq_roots(fq_lift(field, coeffs))]

    def _unit_disks_empty(self, coeffs: List[int], c: int) -> bool:
        """Decide, for large p, that no disk with G(t) a unit carries a point.

        Writing G = lc R^2 S mod p, the unit disks are empty only when S is constant and
        c lc is not a square mod p.
        """
        p = self.p
        if c % p == 0:
            return True
        lead = coeffs[-1] % p
        if lead == 0:
            return False
        _, factors = gf_sqf_list(gf_from_int_poly(coeffs[::-1], p), p, ZZ)
        if any(multiplicity % 2 for _, multiplicity in factors):
            return False
        return not is_square_in_qp(c * lead, p)

    def search(self, coeffs: List[int], c: int, depth: int = 0) -> Optional[int]:
        """Return an integer t with c G(t) a square in Q_p, or None when there is none.

        Args:
            coeffs: Integer coefficients of G, lowest degree first, not all divisible by p
            c: Square class multiplier, a p-unit or p times a p-unit
            depth: Number of refinements so far

        Raises:
            _SearchExhausted: If the depth or step budget runs out
        """
        p = self.p
        if depth > self.max_depth:
            raise _SearchExhausted(f'disk refinement deeper than {self.max_depth} at p = {p}')
        modulus = 8 if p == 2 else p
        enumerable = modulus <= self.limit
        if (c % p or p == 2) and (enumerable or not self._unit_disks_empty(coeffs, c)):
            for t in range(min(modulus, self.limit)):
                if is_square_in_qp(c * int_eval(coeffs, t), p):
                    return t
            if not enumerable:
                raise _SearchExhausted(f'residue field too large to enumerate at p = {p}')
        roots = [t for t in (0, 1) if int_eval(coeffs, t) % 2 == 0] if p == 2 else (
            self._roots_mod_p(coeffs)
        )
        for t0 in roots:
            self._tick()
            shifted = int_taylor_shift(coeffs, t0)
            refined = int_strip([a * p**i for i, a in enumerate(shifted)])
            if not refined:
                return t0
            content = int_content(refined)
            refined = [a // content for a in refined]
            found = self.search(refined, reduce_square_class(c * content, p), depth + 1)
            if found is not None:
                return t0 + p * found
        return None


def _padic_certificate(c: HyperellipticCurve, p: int) -> SolubilityCertificate:
    place = str(p)
    lead = c.leading_coefficient
    if c.degree % 2 or is_square_in_qp(lead, p):
        return SolubilityCertificate(place, Verdict.POINT_FOUND, ('infinity',))
    coeffs, multiplier = _integral_model(c)
    multiplier = reduce_square_class(multiplier, p)
    search = _DiskSearch(p)
    try:
        t = search.search(coeffs, multiplier)
        if t is not None:
            return SolubilityCertificate(place, Verdict.POINT_FOUND, (str(t),))
        # x = 1 / (p t) covers every point with v(x) < 0
        degree = len(coeffs) - 1
        reversed_coeffs = [coeffs[degree - i] * p**i for i in range(degree + 1)]
        content = int_content(reversed_coeffs)
        reversed_coeffs = [a // content for a in reversed_coeffs]
        t = search.search(reversed_coeffs, reduce_square_class(multiplier * content, p))
    except _SearchExhausted as exhausted:
        logger.warning(f'Local point search for {c} undetermined: {exhausted}')
        return SolubilityCertificate(place, Verdict.UNDETERMINED)
    if t is None:
        return SolubilityCertificate(place, Verdict.NO_POINT)
    if t == 0:
        return SolubilityCertificate(place, Verdict.POINT_FOUND, ('infinity',))
    return SolubilityCertificate(place, Verdict.POINT_FOUND, (str(Fraction(1, p * t)),))


def _real_certificate(c: HyperellipticCurve) -> SolubilityCertificate:
    if c.degree % 2 or c.leading_coefficient > 0:
        return SolubilityCertificate(PLACE_INFINITY, Verdict.POINT_FOUND, ('infinity',))
    roots = sturm_isolate_real_roots(c.polynomial)
    if roots:
        root = roots[0]
        return SolubilityCertificate(
            PLACE_INFINITY, Verdict.POINT_FOUND, ('root', str(root.lower), str(root.upper))
        )
    return SolubilityCertificate(PLACE_INFINITY, Verdict.NO_POINT)


@lru_cache(maxsize=None)
def _certificate(c: HyperellipticCurve, place: str) -> SolubilityCertificate:
    witness = rational_point(c)
    if witness is not None:
        return SolubilityCertificate(place, Verdict.POINT_FOUND, witness, 'rational-point')
    if place == PLACE_INFINITY:
        return _real_certificate(c)
    return _padic_certificate(c, int(place))


def has_local_point(c: HyperellipticCurve, place: Place) -> SolubilityCertificate:
    """Decide whether a curve has a point over Q_p or over the reals.

    A rational point found by the global pre-scan settles every place at once.

    Args:
        c: The curve
        place: An odd or even prime, or "inf"

    Returns:
        The certificate; undetermined only when the search budget runs out

    Raises:
        AssertionError: If a found point does not lie on the curve over the completion
    """
    certificate = _certificate(c, place_key(place))
    if certificate.has_point and not verify_witness(c, certificate):
        raise AssertionError(f'witness {certificate.witness} for {c} at {certificate.place} fails')
    logger.debug(f'Solubility of {c} at {certificate.place}: {certificate.verdict.value}')
    return certificate


def _mu_override(overrides: OverrideFile, arguments: Dict) -> Optional[Tuple[str, int]]:
    role = arguments['c'].role
    place = place_key(arguments['place'])
    value = overrides.mu_for(role, place)
    return None if value is None else (f'mu.{role}@{place}', value)


@override_check(_mu_override, fallback=True)
def mu_term(
    c: HyperellipticCurve, place: Place, overrides: Optional[OverrideFile] = None
) -> int:
    """Deficiency sign of a curve at a place.

    A curve with a local point is not deficient. Without real points a curve of genus g is
    deficient exactly when g is even; without points at a finite prime the sign is left to the
    override file.

    Raises:
        DeficiencyUndeterminedError: If there is no local point at a finite prime, or the
            search ran out of budget, and the override file has no entry
    """
    certificate = has_local_point(c, place)
    if certificate.has_point:
        return 1
    if certificate.place == PLACE_INFINITY:
        return -1 if c.genus % 2 == 0 else 1
    reason = 'no local point' if certificate.verdict == Verdict.NO_POINT else 'search undetermined'
    raise DeficiencyUndeterminedError(
        f'deficiency of {c.role or c} at {certificate.place} undetermined ({reason}); '
        'supply an override',
        place=certificate.place,
        override_recipe=RECIPE_MU.format(role=c.role, place=certificate.place),
    )


def delta_term(
    prym: PrymDescriptor, place: Place, overrides: Optional[OverrideFile] = None
) -> int:
    """Deficiency sign of the Prym variety: the product over its Jacobian factors.

    Raises:
        UnsupportedCaseError: In case III.c, whose Prym is a Weil restriction
    """
    if prym.case_tag == CaseTag.III_C:
        raise UnsupportedCaseError('the deficiency of a Weil restriction is not evaluated')
    sign = 1
    for component in prym.components:
        sign *= mu_term(component, place, overrides=overrides)
    return sign


@dataclass(frozen=True)
class LocalSigns:
    """The deficiency factors of a local term."""

    mu_c: int
    mu_d: int
    delta: int
    methods: Dict[str, str] = field(default_factory=dict)

    @property
    def product(self) -> int:
        return self.mu_c * self.mu_d * self.delta


def local_signs(
    models: CoverModels, place: Place, overrides: Optional[OverrideFile] = None
) -> LocalSigns:
    """Deficiency signs of C, D and the Prym variety at a place, with their provenance."""
    key = place_key(place)
    mu_c = mu_term(models.curve, key, overrides=overrides)
    mu_d = mu_term(models.cover, key, overrides=overrides)
    delta = delta_term(models.prym, key, overrides=overrides)
    methods = {}
    applied = set(overrides.applied) if overrides is not None else set()
    for c in models.curves:
        tag = METHOD_OVERRIDE if f'mu.{c.role}@{key}' in applied else METHOD_NATIVE
        certificate = has_local_point(c, key)
        methods[f'mu:{c.role}'] = (
            tag if tag == METHOD_OVERRIDE else f'{certificate.method}:{certificate.verdict.value}'
        )
    return LocalSigns(mu_c, mu_d, delta, methods)
