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

"""p-adic roots of rational polynomials.

Roots are found by descending through Newton polygons: every segment is rescaled to slope
zero, its residual polynomial is split over the residue field, simple residual roots are
Newton-lifted and multiple ones are recentred and searched again. Whenever a residual
polynomial does not split or a slope is fractional, the whole search restarts in a larger
tamely ramified field; when roots cannot be told apart the precision doubles.
"""

from ..common.context import ParityContext
from ..common.errors import (
    ExtensionTooLargeError,
    NotSquarefreeError,
    PrecisionExhaustedError,
    WildRamificationError,
)
from .finite_field import fq_roots, fq_strip, splitting_degree
from .padic import LocalElement, LocalField, newton_segments
from .poly import integral_primitive, is_squarefree, poly_to_string
from dataclasses import dataclass
from fractions import Fraction
from loguru import logger
from math import lcm
from sympy import Poly, multiplicity
from sympy.ntheory import n_order
from typing import Dict, List, Optional, Sequence, Tuple


MAX_EXTENSION_DEGREE = 96


class _Escalate(Exception):
    """Restart the search over a field with the requested residue degree and ramification."""

    def __init__(self, f: int = 1, e: int = 1):
        super().__init__(f'escalate to f={f}, e={e}')
        self.f = f
        self.e = e


class _RootFinder:
    """Root search inside one fixed local field.

    ``reliable`` counts the pi-adic digits of the current coefficients that are still exact;
    dividing by pi^w spends w of them.
    """

    def __init__(self, field: LocalField):
        self.field = field
        self.iterations = (field.precision * field.e).bit_length() + 2

    def valuations(self, poly: Sequence[LocalElement], reliable: int) -> List[Optional[Fraction]]:
        e = self.field.e
        out: List[Optional[Fraction]] = []
        for c in poly:
            v = self.field.valuation(c)
            if v is None or v * e >= reliable:
                out.append(None)
            else:
                out.append(v * e)
        return out

    def newton(self, poly: Sequence[LocalElement], start: LocalElement) -> LocalElement:
        field = self.field
        derivative = [field.mul(field.from_int(i), c) for i, c in enumerate(poly)][1:]
        x = start
        for _ in range(self.iterations):
            value = field.evaluate(poly, x)
            if field.valuation(value) is None:
                break
            x = field.sub(x, field.mul(value, field.inverse(field.evaluate(derivative, x))))
        return x

    def unit_roots(self, poly: Sequence[LocalElement], reliable: int) -> List[LocalElement]:
        """Roots of valuation exactly zero."""
        field = self.field
        vals = self.valuations(poly, reliable)
        present = [v for v in vals if v is not None]
        if not present:
            raise PrecisionExhaustedError('polynomial vanishes at the working precision')
        w = int(min(present))
        reliable -= w
        if reliable <= 0:
            raise PrecisionExhaustedError('no reliable digits left')
        poly = [field.shift(c, -w) if v is not None else field.zero for c, v in zip(poly, vals)]

        reduced = fq_strip([field.residue(c) for c in poly])
        lowest = next(i for i, c in enumerate(reduced) if not c.is_zero)
        residual = reduced[lowest:]
        if len(residual) <= 1:
            return []
        found = fq_roots(residual)
        if sum(m for _, m in found) < len(residual) - 1:
            raise _Escalate(f=field.f * splitting_degree(residual))

        roots = []
        for rho, m in found:
            center = field.from_residue(rho)
            if m == 1:
                roots.append(self.newton(poly, center))
                continue
            near = self.positive_roots(field.taylor_shift(poly, center), reliable)
            if len(near) != m:
                raise PrecisionExhaustedError('lost roots while recentring')
            roots.extend(field.add(center, y) for y in near)
        return roots

    def positive_roots(self, poly: Sequence[LocalElement], reliable: int) -> List[LocalElement]:
        """Roots of positive valuation."""
        field = self.field
        try:
            zeros, segments = newton_segments(self.valuations(poly, reliable))
        except ValueError:
            raise PrecisionExhaustedError('polynomial vanishes at the working precision') from None
        if zeros > 1:
            raise PrecisionExhaustedError('roots coincide at the working precision')
        roots = [field.zero] if zeros else []
        for _, _, slope in segments:
            if slope <= 0:
                continue
            if slope.denominator != 1:
                raise _Escalate(e=field.e * slope.denominator)
            k = int(slope)
            scaled = [field.shift(c, k * i) for i, c in enumerate(poly)]
            roots.extend(field.shift(z, k) for z in self.unit_roots(scaled, reliable))
        return roots


@dataclass(frozen=True)
class PAdicRoot:
    """A root together with the ramification index and residue degree of Q_p(root)."""

    value: LocalElement
    ramification_index: int
    residue_degree: int


@dataclass(frozen=True, eq=False)
class PAdicRootSet:
    """All roots of a polynomial, held in one local field.

    The roots are those of the monic integral polynomial ``monic``; the roots of the original
    polynomial are ``root / scale``.
    """

    p: int
    field: LocalField
    scale: int
    monic: Tuple[int, ...]
    roots: Tuple[PAdicRoot, ...]

    def __len__(self) -> int:
        return len(self.roots)

    def difference_valuation(self, i: int, j: int) -> Fraction:
        """v_p(r_i - r_j) for the roots of the original polynomial."""
        v = self.field.valuation(self.field.sub(self.roots[i].value, self.roots[j].value))
        if v is None:
            raise PrecisionExhaustedError('two roots agree to the working precision')
        return v - multiplicity(self.p, abs(self.scale))

    def frobenius_permutation(self) -> Tuple[int, ...]:
        values = [r.value for r in self.roots]
        return galois_permutation(self.field, values, self.field.frobenius)

    def inertia_permutation(self) -> Tuple[int, ...]:
        values = [r.value for r in self.roots]
        return galois_permutation(self.field, values, self.field.inertia)


def galois_permutation(
    field: LocalField, values: Sequence[LocalElement], action
) -> Tuple[int, ...]:
    """Match the image of every root under a field automorphism with the closest root."""
    images = []
    for value in values:
        image = action(value)
        scores = []
        for j, other in enumerate(values):
            v = field.valuation(field.sub(image, other))
            scores.append((float('inf') if v is None else v, j))
        scores.sort(reverse=True)
        if len(scores) > 1 and scores[0][0] == scores[1][0]:
            raise PrecisionExhaustedError('Galois image of a root is ambiguous')
        images.append(scores[0][1])
    if sorted(images) != list(range(len(values))):
        raise PrecisionExhaustedError('Galois action on roots is not a permutation')
    return tuple(images)


def _orbit(start: int, generators: Sequence[Tuple[int, ...]]) -> set:
    seen = {start}
    frontier = [start]
    while frontier:
        i = frontier.pop()
        for perm in generators:
            if perm[i] not in seen:
                seen.add(perm[i])
                frontier.append(perm[i])
    return seen


def monic_padic_roots(
    p: int,
    monic: Sequence[int],
    precision: Optional[int] = None,
    residue_degree: int = 1,
) -> Tuple[LocalField, List[LocalElement]]:
    """Find all roots of a monic integral polynomial with distinct roots.

    Args:
        p: Prime
        monic: Integer coefficients, lowest degree first, leading coefficient 1
        precision: Starting precision in p-adic digits
        residue_degree: Starting residue degree of the field

    Returns:
        The field that splits the polynomial and its roots there

    Raises:
        PrecisionExhaustedError: If the roots cannot be separated below the precision cap
        WildRamificationError: If the splitting field is wildly ramified
        ExtensionTooLargeError: If the splitting field is too large
    """
    if monic[-1] != 1:
        raise ValueError('polynomial must be monic')
    precision = precision or ParityContext.padic_precision()
    cap = ParityContext.padic_precision_cap()
    f, e = residue_degree, 1
    degree = len(monic) - 1
    while True:
        try:
            field = LocalField(p, f, e, precision)
            finder = _RootFinder(field)
            poly = [field.from_int(c) for c in monic]
            reliable = e * precision
            roots = finder.unit_roots(poly, reliable) + finder.positive_roots(poly, reliable)
            if len(roots) != degree:
                raise PrecisionExhaustedError(f'found {len(roots)} of {degree} roots')
            return field, roots
        except _Escalate as step:
            f = lcm(f, step.f)
            e = lcm(e, step.e)
            if e % p == 0:
                raise WildRamificationError(
                    f'splitting field is wildly ramified at {p} (e divisible by {p})'
                ) from None
            if e > 1:
                f = lcm(f, n_order(p, e))
            if f * e > MAX_EXTENSION_DEGREE:
                raise ExtensionTooLargeError(
                    f'splitting field at {p} needs f={f}, e={e}', place=str(p)
                ) from None
            logger.debug(f'Enlarging the field at {p} to f={f}, e={e}')
        except PrecisionExhaustedError as error:
            if precision >= cap:
                raise PrecisionExhaustedError(
                    f'{error.message} at precision cap {cap}', place=str(p)
                ) from None
            precision = min(2 * precision, cap)
            logger.debug(f'Raising p-adic precision at {p} to {precision}')


def padic_lift_roots(p: int, q: Poly, precision: Optional[int] = None) -> PAdicRootSet:
    """Compute every root of a squarefree rational polynomial over an extension of Q_p.

    Args:
        p: Prime
        q: Squarefree polynomial over QQ of positive degree
        precision: Starting precision, defaults to the context value

    Returns:
        The roots, each tagged with the ramification index and residue degree of the field it
        generates

    Raises:
        NotSquarefreeError: If q has a repeated factor
        PrecisionExhaustedError: If the roots cannot be separated; the message names q
    """
    if q.degree() < 1:
        raise ValueError('polynomial must have positive degree')
    if not is_squarefree(q):
        raise NotSquarefreeError(f'{poly_to_string(q)} is not squarefree')
    ints = integral_primitive(q)
    scale = ints[-1]
    n = len(ints) - 1
    monic = [ints[i] * scale ** (n - 1 - i) for i in range(n)] + [1]
    try:
        field, values = monic_padic_roots(p, monic, precision)
    except PrecisionExhaustedError as error:
        raise PrecisionExhaustedError(
            f'{error.message} while lifting the roots of {poly_to_string(q)}', place=str(p)
        ) from None

    partial = PAdicRootSet(p, field, scale, tuple(monic), tuple(PAdicRoot(v, 1, 1) for v in values))
    generators = [partial.frobenius_permutation(), partial.inertia_permutation()]
    roots = []
    for i, value in enumerate(values):
        degree = len(_orbit(i, generators))
        ramification = len(_orbit(i, generators[1:]))
        roots.append(PAdicRoot(value, ramification, degree // ramification))
    logger.debug(f'Lifted {n} roots at {p} over f={field.f}, e={field.e}')
    return PAdicRootSet(p, field, scale, tuple(monic), tuple(roots))


def root_valuation_profile(root_set: PAdicRootSet) -> Dict[Optional[Fraction], int]:
    """Multiset of root valuations, as a Newton polygon would report them."""
    profile: Dict[Optional[Fraction], int] = {}
    shift = multiplicity(root_set.p, abs(root_set.scale))
    for root in root_set.roots:
        v = root_set.field.valuation(root.value)
        key = None if v is None else v - shift
        profile[key] = profile.get(key, 0) + 1
    return profile
