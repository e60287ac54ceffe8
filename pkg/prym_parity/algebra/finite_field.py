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

"""Finite fields F_{p^k} and polynomials over them.

F_{p^k} is represented as F_p[w] modulo the lexicographically least monic irreducible of
degree k, so the representation of every element is reproducible across runs. Base-field
arithmetic comes from sympy's dense ``galoistools``.
"""

import random
from dataclasses import dataclass
from functools import lru_cache
from math import lcm
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import (
    gf_add,
    gf_gcdex,
    gf_irreducible_p,
    gf_mul,
    gf_neg,
    gf_pow_mod,
    gf_rem,
    gf_strip,
    gf_sub,
)
from typing import Iterator, List, Sequence, Set, Tuple, Union


Rep = Tuple[int, ...]


@lru_cache(maxsize=None)
def least_irreducible(p: int, k: int) -> Rep:
    """Return the lexicographically least monic irreducible of degree k over F_p.

    Candidates x^k + c_{k-1} x^{k-1} + ... + c_0 are ordered by the digit string
    (c_{k-1}, ..., c_0).

    Returns:
        Coefficients highest degree first
    """
    if k < 1:
        raise ValueError('extension degree must be at least 1')
    for n in range(p**k):
        tail = []
        for _ in range(k):
            tail.append(n % p)
            n //= p
        candidate = [1] + tail[::-1]
        if gf_irreducible_p(candidate, p, ZZ):
            return tuple(candidate)
    raise AssertionError('no irreducible polynomial found')  # pragma: no cover


def _normalize(rep) -> Rep:
    return tuple(int(c) for c in gf_strip(list(rep)))


@dataclass(frozen=True)
class FiniteField:
    """The field F_{p^k}."""

    p: int
    k: int = 1

    @property
    def order(self) -> int:
        return self.p**self.k

    @property
    def modulus(self) -> Rep:
        return least_irreducible(self.p, self.k)

    def __call__(self, value: Union[int, Sequence[int], 'FiniteFieldElement']) -> 'FiniteFieldElement':
        """Coerce an integer, a coefficient sequence (highest first) or an element."""
        if isinstance(value, FiniteFieldElement):
            if value.field != self:
                raise ValueError(f'cannot coerce an element of {value.field} into {self}')
            return value
        if isinstance(value, int):
            rep = [value % self.p]
        else:
            rep = [int(c) % self.p for c in value]
        reduced = gf_rem(list(rep), list(self.modulus), self.p, ZZ)
        return FiniteFieldElement(self, _normalize(reduced))

    @property
    def zero(self) -> 'FiniteFieldElement':
        return FiniteFieldElement(self, ())

    @property
    def one(self) -> 'FiniteFieldElement':
        return FiniteFieldElement(self, (1,))

    @property
    def gen(self) -> 'FiniteFieldElement':
        """The class of w."""
        return self([1, 0])

    def from_low_coefficients(self, coeffs: Sequence[int]) -> 'FiniteFieldElement':
        """Build w-polynomial from coefficients listed lowest degree first."""
        return self(list(reversed(list(coeffs))))

    def elements(self) -> Iterator['FiniteFieldElement']:
        """Enumerate all q elements in a fixed order."""
        for n in range(self.order):
            digits = []
            for _ in range(self.k):
                digits.append(n % self.p)
                n //= self.p
            yield self.from_low_coefficients(digits)

    def random_element(self, rng: random.Random) -> 'FiniteFieldElement':
        return self.from_low_coefficients([rng.randrange(self.p) for _ in range(self.k)])

    def __str__(self) -> str:
        return f'GF({self.p}^{self.k})'


@dataclass(frozen=True)
class FiniteFieldElement:
    """Element of F_{p^k}, stored as a reduced w-polynomial (highest coefficient first)."""

    field: FiniteField
    rep: Rep

    def _coerce(self, other) -> 'FiniteFieldElement':
        if isinstance(other, FiniteFieldElement):
            if other.field != self.field:
                raise ValueError(f'mixing elements of {self.field} and {other.field}')
            return other
        if isinstance(other, int):
            return self.field(other)
        return NotImplemented

    def _wrap(self, rep) -> 'FiniteFieldElement':
        return FiniteFieldElement(self.field, _normalize(rep))

    @property
    def is_zero(self) -> bool:
        return not self.rep

    def __bool__(self) -> bool:
        return bool(self.rep)

    def __add__(self, other) -> 'FiniteFieldElement':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(gf_add(list(self.rep), list(other.rep), self.field.p, ZZ))

    __radd__ = __add__

    def __neg__(self) -> 'FiniteFieldElement':
        return self._wrap(gf_neg(list(self.rep), self.field.p, ZZ))

    def __sub__(self, other) -> 'FiniteFieldElement':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self._wrap(gf_sub(list(self.rep), list(other.rep), self.field.p, ZZ))

    def __rsub__(self, other) -> 'FiniteFieldElement':
        return -(self - other)

    def __mul__(self, other) -> 'FiniteFieldElement':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        product = gf_mul(list(self.rep), list(other.rep), p, ZZ)
        return self._wrap(gf_rem(product, list(self.field.modulus), p, ZZ))

    __rmul__ = __mul__

    def inverse(self) -> 'FiniteFieldElement':
        if self.is_zero:
            raise ZeroDivisionError('zero has no inverse in a finite field')
        s, _, h = gf_gcdex(list(self.rep), list(self.field.modulus), self.field.p, ZZ)
        if list(h) != [1]:
            raise AssertionError('modulus is not irreducible')  # pragma: no cover
        return self._wrap(s)

    def __truediv__(self, other) -> 'FiniteFieldElement':
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, exponent: int) -> 'FiniteFieldElement':
        if exponent < 0:
            return self.inverse() ** (-exponent)
        if exponent == 0:
            return self.field.one
        if self.is_zero:
            return self
        p = self.field.p
        return self._wrap(gf_pow_mod(list(self.rep), exponent, list(self.field.modulus), p, ZZ))

    def frobenius(self) -> 'FiniteFieldElement':
        """Return x^p."""
        return self**self.field.p

    def is_square(self) -> bool:
        if self.is_zero or self.field.p == 2:
            return True
        return self ** ((self.field.order - 1) // 2) == self.field.one

    def sqrt_char2(self) -> 'FiniteFieldElement':
        """Return the unique square root in characteristic 2."""
        if self.field.p != 2:
            raise ValueError('unique square roots exist only in characteristic 2')
        return self ** (self.field.order // 2)

    @property
    def key(self) -> Rep:
        """Sort key: coefficients lowest degree first, padded to the extension degree."""
        low = list(reversed(self.rep))
        return tuple(low + [0] * (self.field.k - len(low)))

    def __str__(self) -> str:
        if self.is_zero:
            return '0'
        degree = len(self.rep) - 1
        terms = []
        for i, c in enumerate(self.rep):
            e = degree - i
            if c == 0:
                continue
            if e == 0:
                terms.append(str(c))
            else:
                monomial = 'w' if e == 1 else f'w^{e}'
                terms.append(monomial if c == 1 else f'{c}*{monomial}')
        return '+'.join(terms)


# Polynomials over F_q are lists of elements, lowest degree first.
FqPoly = List[FiniteFieldElement]


def fq_strip(poly: Sequence[FiniteFieldElement]) -> FqPoly:
    out = list(poly)
    while out and out[-1].is_zero:
        out.pop()
    return out


def fq_add(a: Sequence[FiniteFieldElement], b: Sequence[FiniteFieldElement]) -> FqPoly:
    if len(a) < len(b):
        a, b = b, a
    return fq_strip([x + y for x, y in zip(a, b)] + list(a[len(b) :]))


def fq_sub(a: Sequence[FiniteFieldElement], b: Sequence[FiniteFieldElement]) -> FqPoly:
    return fq_add(a, [-c for c in b])


def fq_mul(a: Sequence[FiniteFieldElement], b: Sequence[FiniteFieldElement]) -> FqPoly:
    if not a or not b:
        return []
    zero = a[0].field.zero
    out = [zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return fq_strip(out)


def fq_divmod(
    a: Sequence[FiniteFieldElement], b: Sequence[FiniteFieldElement]
) -> Tuple[FqPoly, FqPoly]:
    b = fq_strip(b)
    if not b:
        raise ZeroDivisionError('polynomial division by zero')
    a = fq_strip(a)
    if len(a) < len(b):
        return [], a
    remainder = list(a)
    inverse = b[-1].inverse()
    quotient = [b[0].field.zero] * (len(a) - len(b) + 1)
    for i in range(len(a) - len(b), -1, -1):
        coef = remainder[i + len(b) - 1] * inverse
        quotient[i] = coef
        if coef.is_zero:
            continue
        for j, c in enumerate(b):
            remainder[i + j] = remainder[i + j] - coef * c
    return fq_strip(quotient), fq_strip(remainder[: len(b) - 1])


def fq_monic(poly: Sequence[FiniteFieldElement]) -> FqPoly:
    poly = fq_strip(poly)
    if not poly:
        return []
    inverse = poly[-1].inverse()
    return [c * inverse for c in poly]


def fq_gcd(a: Sequence[FiniteFieldElement], b: Sequence[FiniteFieldElement]) -> FqPoly:
    a, b = fq_strip(a), fq_strip(b)
    while b:
        a, b = b, fq_divmod(a, b)[1]
    return fq_monic(a)


def fq_powmod(
    base: Sequence[FiniteFieldElement], exponent: int, modulus: Sequence[FiniteFieldElement]
) -> FqPoly:
    field = modulus[-1].field
    result: FqPoly = [field.one]
    base = fq_divmod(base, modulus)[1]
    while exponent:
        if exponent & 1:
            result = fq_divmod(fq_mul(result, base), modulus)[1]
        base = fq_divmod(fq_mul(base, base), modulus)[1]
        exponent >>= 1
    return result


def fq_eval(poly: Sequence[FiniteFieldElement], x: FiniteFieldElement) -> FiniteFieldElement:
    result = x.field.zero
    for c in reversed(poly):
        result = result * x + c
    return result


def fq_lift(field: FiniteField, coeffs: Sequence[int]) -> FqPoly:
    """Embed an integer polynomial (lowest degree first) into F_q[x]."""
    return fq_strip([field(c) for c in coeffs])


def _x(field: FiniteField) -> FqPoly:
    return [field.zero, field.one]


def _split_distinct_linear(poly: FqPoly, rng: random.Random) -> List[FiniteFieldElement]:
    """Roots of a monic polynomial that is a product of distinct linear factors."""
    if len(poly) <= 1:
        return []
    if len(poly) == 2:
        return [-poly[0] / poly[1]]
    field = poly[-1].field
    while True:
        delta = field.random_element(rng)
        if field.p == 2:
            term = fq_divmod([field.zero, delta], poly)[1]
            trace = list(term)
            for _ in range(field.k - 1):
                term = fq_divmod(fq_mul(term, term), poly)[1]
                trace = fq_add(trace, term)
            candidate = fq_gcd(poly, trace)
        else:
            power = fq_powmod([delta, field.one], (field.order - 1) // 2, poly)
            candidate = fq_gcd(poly, fq_sub(power, [field.one]))
        if 1 < len(candidate) < len(poly):
            rest = fq_divmod(poly, candidate)[0]
            return _split_distinct_linear(candidate, rng) + _split_distinct_linear(
                fq_monic(rest), rng
            )


def fq_roots(poly: Sequence[FiniteFieldElement]) -> List[Tuple[FiniteFieldElement, int]]:
    """Return the roots in F_q with multiplicities, sorted by element key.

    The equal-degree splitting is randomized with a fixed seed; the result does not depend on
    the random choices.
    """
    poly = fq_monic(poly)
    if len(poly) <= 1:
        return []
    field = poly[-1].field
    xq = fq_powmod(_x(field), field.order, poly)
    distinct = fq_gcd(poly, fq_sub(xq, _x(field)))
    roots = _split_distinct_linear(distinct, random.Random(field.order))
    result = []
    for root in sorted(roots, key=lambda r: r.key):
        multiplicity = 0
        rest = poly
        linear = [-root, field.one]
        while True:
            quotient, remainder = fq_divmod(rest, linear)
            if remainder:
                break
            multiplicity += 1
            rest = quotient
        result.append((root, multiplicity))
    return result


def fq_factor_degrees(poly: Sequence[FiniteFieldElement]) -> Set[int]:
    """Return the degrees of the distinct irreducible factors (distinct-degree factorization)."""
    rest = fq_monic(poly)
    if len(rest) <= 1:
        return set()
    field = rest[-1].field
    degrees = set()
    power = _x(field)
    d = 0
    while len(rest) > 1:
        d += 1
        power = fq_powmod(power, field.order, rest)
        found = fq_gcd(rest, fq_sub(power, _x(field)))
        if len(found) > 1:
            degrees.add(d)
            while True:
                common = fq_gcd(rest, found)
                if len(common) <= 1:
                    break
                rest = fq_divmod(rest, common)[0]
            power = fq_divmod(power, rest)[1] if len(rest) > 1 else power
    return degrees


def splitting_degree(poly: Sequence[FiniteFieldElement]) -> int:
    """Smallest r such that the polynomial splits over F_{q^r}."""
    return lcm(*fq_factor_degrees(poly)) if len(fq_strip(poly)) > 1 else 1
