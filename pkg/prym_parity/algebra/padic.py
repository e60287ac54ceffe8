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

"""p-adic arithmetic in tamely ramified extensions of Q_p, and Newton polygons.

A ``LocalField(p, f, e, precision)`` is Q_p(w, pi) where w generates the unramified extension
of degree f (its minimal polynomial lifts the modulus of ``FiniteField(p, f)``) and
pi^e = p. Elements are tuples of e components, the coefficient of pi^j, each a tuple of f
integers modulo p^precision (coefficients of w^0 .. w^(f-1)). All elements handled here are
integral.
"""

from ..common.errors import PrecisionExhaustedError, WildRamificationError
from ..common.utils import valuation
from .finite_field import FiniteField, FiniteFieldElement
from .poly import coefficients
from dataclasses import dataclass
from fractions import Fraction
from sympy import Poly, factorint, multiplicity
from typing import List, Optional, Sequence, Tuple


Unramified = Tuple[int, ...]
LocalElement = Tuple[Unramified, ...]


@dataclass(frozen=True)
class PAdicFactorSlope:
    """One segment of a Newton polygon.

    ``slope`` is the common valuation of the ``multiplicity`` roots on the segment (the
    negative of the segment's geometric slope); None stands for the root 0.
    """

    p: int
    slope: Optional[Fraction]
    multiplicity: int


def lower_convex_hull(points: Sequence[Tuple[int, Fraction]]) -> List[Tuple[int, Fraction]]:
    """Lower convex hull of points sorted by abscissa, collinear points dropped."""
    hull: List[Tuple[int, Fraction]] = []
    for point in sorted(points):
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] when it lies on or above the chord hull[-2] -> point
            if (y2 - y1) * (point[0] - x1) >= (point[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(point)
    return hull


def newton_segments(
    valuations: Sequence[Optional[Fraction]],
) -> Tuple[int, List[Tuple[int, int, Fraction]]]:
    """Segments of the Newton polygon of a coefficient valuation list.

    Args:
        valuations: v(c_i) lowest degree first, None for a vanishing coefficient

    Returns:
        The number of leading vanishing coefficients and, left to right, the segments
        (i0, i1, root valuation)
    """
    points = [(i, v) for i, v in enumerate(valuations) if v is not None]
    if not points:
        raise ValueError('Newton polygon of the zero polynomial')
    zeros = points[0][0]
    hull = lower_convex_hull(points)
    segments = []
    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        segments.append((x1, x2, Fraction(y1 - y2) / (x2 - x1)))
    return zeros, segments


def padic_newton_polygon(p: int, q: Poly) -> List[PAdicFactorSlope]:
    """Newton polygon of a nonzero rational polynomial at p.

    Args:
        p: Prime
        q: Nonzero polynomial over QQ

    Returns:
        Segments left to right (decreasing root valuation); the root 0 comes first when present
    """
    if q.is_zero:
        raise ValueError('Newton polygon of the zero polynomial')
    vals = [Fraction(valuation(c, p)) if c else None for c in coefficients(q)]
    zeros, segments = newton_segments(vals)
    result = [PAdicFactorSlope(p, None, zeros)] if zeros else []
    result.extend(PAdicFactorSlope(p, slope, i1 - i0) for i0, i1, slope in segments)
    return result


class LocalField:
    """Tamely ramified extension Q_p(w, pi) with pi^e = p, at fixed absolute precision."""

    def __init__(self, p: int, f: int = 1, e: int = 1, precision: int = 50):
        """Create the field.

        Args:
            p: Prime
            f: Residue degree
            e: Ramification index, prime to p
            precision: Number of p-adic digits kept in every coordinate

        Raises:
            WildRamificationError: If p divides e
        """
        if e % p == 0:
            raise WildRamificationError(f'ramification index {e} is divisible by {p}')
        if (p**f - 1) % e:
            raise ValueError('the residue field must contain the e-th roots of unity')
        self.p = p
        self.f = f
        self.e = e
        self.precision = precision
        self.modulus = p**precision
        self.residue_field = FiniteField(p, f)
        self._poly = [int(c) for c in reversed(self.residue_field.modulus)]
        self._frobenius_image = self._lift_frobenius()
        self._zeta = self._root_of_unity()

    def __repr__(self) -> str:
        return f'LocalField(p={self.p}, f={self.f}, e={self.e}, precision={self.precision})'

    # unramified layer

    def _u(self, value: int) -> Unramified:
        return (value % self.modulus,) + (0,) * (self.f - 1)

    def _u_add(self, a: Unramified, b: Unramified) -> Unramified:
        return tuple((x + y) % self.modulus for x, y in zip(a, b))

    def _u_sub(self, a: Unramified, b: Unramified) -> Unramified:
        return tuple((x - y) % self.modulus for x, y in zip(a, b))

    def _u_scale(self, a: Unramified, s: int) -> Unramified:
        return tuple(x * s % self.modulus for x in a)

    def _u_mul(self, a: Unramified, b: Unramified) -> Unramified:
        f = self.f
        if f == 1:
            return (a[0] * b[0] % self.modulus,)
        product = [0] * (2 * f - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    product[i + j] += x * y
        for k in range(2 * f - 2, f - 1, -1):
            c = product[k]
            if c:
                for j in range(f):
                    product[k - f + j] -= c * self._poly[j]
        return tuple(c % self.modulus for c in product[:f])

    def _u_valuation(self, a: Unramified) -> Optional[int]:
        values = [multiplicity(self.p, x) for x in a if x]
        return min(values) if values else None

    def _u_residue(self, a: Unramified) -> FiniteFieldElement:
        return self.residue_field.from_low_coefficients([x % self.p for x in a])

    def _u_from_residue(self, r: FiniteFieldElement) -> Unramified:
        return tuple(r.key)

    def _u_inverse(self, a: Unramified) -> Unramified:
        w = self._u_from_residue(self._u_residue(a).inverse())
        two = self._u(2)
        for _ in range(self.precision.bit_length() + 1):
            w = self._u_mul(w, self._u_sub(two, self._u_mul(a, w)))
        return w

    def _u_pow(self, a: Unramified, n: int) -> Unramified:
        result = self._u(1)
        while n:
            if n & 1:
                result = self._u_mul(result, a)
            a = self._u_mul(a, a)
            n >>= 1
        return result

    def _u_eval(self, coeffs: Sequence[int], w: Unramified) -> Unramified:
        result = self._u(0)
        for c in reversed(coeffs):
            result = self._u_add(self._u_mul(result, w), self._u(c))
        return result

    def _lift_frobenius(self) -> Unramified:
        """Root of the lifted modulus congruent to w^p: the image of w under Frobenius."""
        if self.f == 1:
            return self._u(0)
        generator = (0, 1) + (0,) * (self.f - 2)
        derivative = [i * c for i, c in enumerate(self._poly)][1:]
        w = self._u_pow(generator, self.p)
        for _ in range(self.precision.bit_length() + 1):
            step = self._u_mul(
                self._u_eval(self._poly, w), self._u_inverse(self._u_eval(derivative, w))
            )
            w = self._u_sub(w, step)
        return w

    def _root_of_unity(self) -> Unramified:
        """Teichmueller lift of a primitive e-th root of unity."""
        if self.e == 1:
            return self._u(1)
        field = self.residue_field
        q = field.order
        primes = list(factorint(self.e))
        candidate = None
        for element in field.elements():
            if element.is_zero:
                continue
            z = element ** ((q - 1) // self.e)
            if all(z ** (self.e // ell) != field.one for ell in primes):
                candidate = z
                break
        if candidate is None:  # pragma: no cover
            raise AssertionError('no primitive root of unity found')
        w = self._u_from_residue(candidate)
        for _ in range(self.precision.bit_length() + 1):
            value = self._u_sub(self._u_pow(w, self.e), self._u(1))
            slope = self._u_scale(self._u_pow(w, self.e - 1), self.e)
            w = self._u_sub(w, self._u_mul(value, self._u_inverse(slope)))
        return w

    # elements

    @property
    def zero(self) -> LocalElement:
        return ((0,) * self.f,) * self.e

    @property
    def one(self) -> LocalElement:
        return self.from_int(1)

    def from_int(self, n: int) -> LocalElement:
        return (self._u(n),) + ((0,) * self.f,) * (self.e - 1)

    def from_residue(self, r: FiniteFieldElement) -> LocalElement:
        """Lift a residue to the element with the same w-coefficients."""
        return (self._u_from_residue(r),) + ((0,) * self.f,) * (self.e - 1)

    def add(self, a: LocalElement, b: LocalElement) -> LocalElement:
        return tuple(self._u_add(x, y) for x, y in zip(a, b))

    def sub(self, a: LocalElement, b: LocalElement) -> LocalElement:
        return tuple(self._u_sub(x, y) for x, y in zip(a, b))

    def neg(self, a: LocalElement) -> LocalElement:
        return self.sub(self.zero, a)

    def mul(self, a: LocalElement, b: LocalElement) -> LocalElement:
        e = self.e
        if e == 1:
            return (self._u_mul(a[0], b[0]),)
        out = [(0,) * self.f] * (2 * e - 1)
        for i, x in enumerate(a):
            if not any(x):
                continue
            for j, y in enumerate(b):
                if any(y):
                    out[i + j] = self._u_add(out[i + j], self._u_mul(x, y))
        for k in range(2 * e - 2, e - 1, -1):
            if any(out[k]):
                out[k - e] = self._u_add(out[k - e], self._u_scale(out[k], self.p))
        return tuple(out[:e])

    def pow(self, a: LocalElement, n: int) -> LocalElement:
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            n >>= 1
        return result

    def valuation(self, a: LocalElement) -> Optional[Fraction]:
        """Valuation normalized by v(p) = 1, or None when the element is zero at precision."""
        best = None
        for j, x in enumerate(a):
            v = self._u_valuation(x)
            if v is not None:
                candidate = v + Fraction(j, self.e)
                best = candidate if best is None else min(best, candidate)
        return best

    def shift(self, a: LocalElement, m: int) -> LocalElement:
        """Multiply by pi^m; negative m must divide exactly."""
        e = self.e
        out = [(0,) * self.f] * e
        for j, x in enumerate(a):
            if not any(x):
                continue
            q, r = divmod(j + m, e)
            if q >= 0:
                moved = self._u_scale(x, self.p**q)
            else:
                divisor = self.p ** (-q)
                if any(c % divisor for c in x):
                    raise PrecisionExhaustedError(
                        f'inexact division by p^{-q} at precision {self.precision}'
                    )
                moved = tuple(c // divisor for c in x)
            out[r] = self._u_add(out[r], moved)
        return tuple(out)

    def unit_part(self, a: LocalElement) -> Tuple[Fraction, LocalElement]:
        """Split a nonzero element as pi^(e v) times a unit."""
        v = self.valuation(a)
        if v is None:
            raise PrecisionExhaustedError(f'element vanishes at precision {self.precision}')
        return v, self.shift(a, -int(v * self.e))

    def residue(self, a: LocalElement) -> FiniteFieldElement:
        """Residue of an integral element."""
        return self._u_residue(a[0])

    def inverse(self, a: LocalElement) -> LocalElement:
        """Inverse of a unit."""
        residue = self.residue(a)
        if residue.is_zero:
            raise ZeroDivisionError('only units are inverted')
        w = self.from_residue(residue.inverse())
        two = self.from_int(2)
        for _ in range((self.precision * self.e).bit_length() + 1):
            w = self.mul(w, self.sub(two, self.mul(a, w)))
        return w

    def frobenius(self, a: LocalElement) -> LocalElement:
        """Apply the Frobenius automorphism that fixes pi."""
        if self.f == 1:
            return a
        return tuple(self._u_eval(list(x), self._frobenius_image) for x in a)

    def inertia(self, a: LocalElement) -> LocalElement:
        """Apply the generator of inertia sending pi to zeta pi."""
        if self.e == 1:
            return a
        out = []
        power = self._u(1)
        for x in a:
            out.append(self._u_mul(x, power))
            power = self._u_mul(power, self._zeta)
        return tuple(out)

    def evaluate(self, coeffs: Sequence[LocalElement], x: LocalElement) -> LocalElement:
        """Evaluate a polynomial with coefficients in the field, lowest degree first."""
        result = self.zero
        for c in reversed(coeffs):
            result = self.add(self.mul(result, x), c)
        return result

    def evaluate_int(self, coeffs: Sequence[int], x: LocalElement) -> LocalElement:
        """Evaluate an integer polynomial, lowest degree first."""
        return self.evaluate([self.from_int(c) for c in coeffs], x)

    def taylor_shift(self, coeffs: Sequence[LocalElement], c: LocalElement) -> List[LocalElement]:
        """Coefficients of P(c + y) from those of P(y)."""
        out = list(coeffs)
        n = len(out)
        for i in range(n - 1):
            for j in range(n - 2, i - 1, -1):
                out[j] = self.add(out[j], self.mul(c, out[j + 1]))
        return out
