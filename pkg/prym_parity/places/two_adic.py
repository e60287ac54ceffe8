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

"""The local term at 2 for covers with good ordinary reduction.

A model y^2 + h(x) y = k(x) with F = h^2 + 4k and smooth reduction is searched for C and for
every Prym factor. Over F_2 the x-map of an ordinary reduction is branched at g + 1 distinct
points of P^1, and the roots of F reduce onto them in pairs (the fibres). A 2-torsion class
reduces to the identity exactly when its roots are a union of fibres, which leaves 2^g
classes in the kernel of reduction.
"""

from ..algebra.finite_field import FiniteField, FiniteFieldElement
from ..algebra.poly import integral_primitive, make_poly, poly_to_string
from ..common.constants import METHOD_NATIVE, METHOD_OVERRIDE, RECIPE_LAMBDA2
from ..common.context import ParityContext
from ..common.decorators.override_check import override_check
from ..common.errors import TwoAdicOverrideRequiredError
from ..common.overrides import OverrideFile
from ..common.utils import sign_power
from ..curves.cover import CoverModels, DoubleCoverDatum
from ..curves.hyperelliptic import HyperellipticCurve
from ..pipeline.models import LocalTermReport
from ..torsion.classes import TwoTorsionClass, enumerate_classes, f2_dimension
from ..torsion.kernel import kernel_of_phi, prym_image
from .solubility import local_signs
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from loguru import logger
from math import lcm
from sympy import Poly
from sympy.polys.domains import ZZ
from sympy.polys.galoistools import gf_add, gf_diff, gf_factor, gf_from_int_poly, gf_gcd, gf_mul
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple


Fibre = FrozenSet[int]


def _two_integral(coefficients: Sequence[Fraction]) -> List[int]:
    """Scale by rational squares until the coefficients are integers not all divisible by 4."""
    denominator = lcm(*(Fraction(c).denominator for c in coefficients))
    ints = [int(Fraction(c) * denominator**2) for c in coefficients]
    while all(c % 4 == 0 for c in ints):
        ints = [c // 4 for c in ints]
    return ints


def _coefficient(coeffs: Sequence[int], i: int) -> int:
    return coeffs[i] if i < len(coeffs) else 0


def _mod2_high(coeffs: Sequence[int]) -> List[int]:
    """Reduction mod 2 as a sympy dense polynomial, highest degree first."""
    return gf_from_int_poly([int(c) for c in reversed(coeffs)], 2)


@dataclass(frozen=True)
class ReducedCurve:
    """The special fibre y^2 + h(x) y = k(x) over F_2, coefficients lowest degree first."""

    h: Tuple[int, ...]
    k: Tuple[int, ...]
    genus: int

    def singular_locus(self) -> Dict[str, Any]:
        """Where the model may be singular: a gcd over F_2 and the chart at infinity.

        An affine point is singular exactly when h(x) = 0 and h'(x)^2 k(x) + k'(x)^2 = 0.
        """
        h, k = _mod2_high(self.h), _mod2_high(self.k)
        dh, dk = gf_diff(h, 2, ZZ), gf_diff(k, 2, ZZ)
        jacobian = gf_add(gf_mul(gf_mul(dh, dh, 2, ZZ), k, 2, ZZ), gf_mul(dk, dk, 2, ZZ), 2, ZZ)
        common = gf_gcd(h, jacobian, 2, ZZ)
        g = self.genus
        h_top, h_next = _coefficient(self.h, g + 1), _coefficient(self.h, g)
        k_top, k_next = _coefficient(self.k, 2 * g + 2), _coefficient(self.k, 2 * g + 1)
        at_infinity = not h_top and (h_next * k_top + k_next) % 2 == 0
        return {
            'h_vanishes': not h,
            'affine_gcd': [int(c) for c in common],
            'singular_at_infinity': at_infinity,
        }

    @property
    def is_smooth(self) -> bool:
        locus = self.singular_locus()
        return (
            not locus['h_vanishes']
            and len(locus['affine_gcd']) == 1
            and not locus['singular_at_infinity']
        )

    def describe(self) -> Dict[str, str]:
        return {
            'h': poly_to_string(make_poly(self.h)),
            'k': poly_to_string(make_poly(self.k)),
        }


@dataclass(frozen=True)
class IntegralModelAt2:
    """A model y^2 + h(x) y = k(x) of a curve over Z_2 with F = h^2 + 4k up to squares."""

    curve: HyperellipticCurve
    h: Tuple[int, ...]
    k: Tuple[int, ...]

    def reduce(self) -> ReducedCurve:
        return ReducedCurve(
            tuple(c % 2 for c in self.h), tuple(c % 2 for c in self.k), self.curve.genus
        )

    def describe(self) -> Dict[str, str]:
        return {
            'h': poly_to_string(make_poly(self.h)),
            'k': poly_to_string(make_poly(self.k)),
        }


def _square(h: Sequence[int]) -> List[int]:
    out = [0] * (2 * len(h) - 1)
    for i, a in enumerate(h):
        for j, b in enumerate(h):
            out[i + j] += a * b
    return out


def find_good_model_at2(c: HyperellipticCurve) -> IntegralModelAt2:
    """Search for a model with smooth reduction at 2.

    The candidates are h with coefficients in {0, 1} and degree at most g + 1; shifting h by
    2e gives the isomorphic model y -> y + e, so nothing else needs searching.

    Raises:
        TwoAdicOverrideRequiredError: If no candidate has smooth reduction
    """
    g = c.genus
    ints = _two_integral(c.coefficients)
    ints += [0] * (2 * g + 3 - len(ints))
    for bits in product((0, 1), repeat=g + 2):
        h = list(reversed(bits))
        squared = _square(h) + [0] * (2 * g + 3)
        difference = [a - b for a, b in zip(ints, squared)]
        if any(d % 4 for d in difference):
            continue
        while len(h) > 1 and h[-1] == 0:
            h.pop()
        k = [d // 4 for d in difference]
        while len(k) > 1 and k[-1] == 0:
            k.pop()
        model = IntegralModelAt2(c, tuple(h), tuple(k))
        if model.reduce().is_smooth:
            logger.debug(f'Good model of {c.role or c} at 2: {model.describe()}')
            return model
    raise TwoAdicOverrideRequiredError(
        f'good reduction at 2 not established for {c.role or c}; supply a lambda2 override',
        place='2',
        override_recipe=RECIPE_LAMBDA2,
    )


def _trace(z: FiniteFieldElement) -> FiniteFieldElement:
    """Absolute trace to F_2."""
    total, power = z, z
    for _ in range(z.field.k - 1):
        power = power * power
        total = total + power
    return total


def _artin_schreier_count(a: FiniteFieldElement, b: FiniteFieldElement) -> int:
    """Number of y in the field with y^2 + a y = b."""
    if a.is_zero:
        return 1
    return 0 if _trace(b / (a * a)) else 2


def count_points(r: ReducedCurve, k: int) -> int:
    """Number of points of the smooth projective model over F_{2^k}.

    Raises:
        ValueError: If k exceeds 2g
    """
    if not 1 <= k <= 2 * r.genus:
        raise ValueError(f'extension degree {k} outside 1..{2 * r.genus}')
    field = FiniteField(2, k)

    def evaluate(coeffs: Sequence[int], x: FiniteFieldElement) -> FiniteFieldElement:
        result = field.zero
        for c in reversed(coeffs):
            result = result * x + c
        return result

    affine = sum(
        _artin_schreier_count(evaluate(r.h, x), evaluate(r.k, x)) for x in field.elements()
    )
    g = r.genus
    at_infinity = _artin_schreier_count(
        field(_coefficient(r.h, g + 1)), field(_coefficient(r.k, 2 * g + 2))
    )
    total = affine + at_infinity
    q = field.order
    if (total - q - 1) ** 2 > 4 * g * g * q:
        raise AssertionError(f'{total} points over F_{q} violate the Weil bound')
    return total


@dataclass(frozen=True)
class LPolynomial:
    """Numerator 1 + a_1 T + ... + a_2g T^2g of the zeta function of a curve over F_q."""

    coefficients: Tuple[int, ...]
    q: int = 2

    @property
    def genus(self) -> int:
        return (len(self.coefficients) - 1) // 2

    def satisfies_functional_equation(self) -> bool:
        g, a = self.genus, self.coefficients
        return all(a[2 * g - i] == self.q ** (g - i) * a[i] for i in range(g + 1))

    @classmethod
    def from_counts(cls, counts: Sequence[int], q: int = 2) -> 'LPolynomial':
        """Build the polynomial from #X(F_{q^k}) for k = 1 .. g with Newton's identities.

        Raises:
            ValueError: If the counts are inconsistent with any L-polynomial
        """
        g = len(counts)
        power_sums = [q**k + 1 - n for k, n in enumerate(counts, start=1)]
        a = [1]
        for j in range(1, g + 1):
            total = -sum(power_sums[i - 1] * a[j - i] for i in range(1, j + 1))
            if total % j:
                raise ValueError(f'point counts {list(counts)} give a non-integral a_{j}')
            a.append(total // j)
        a += [q ** (g - i) * a[i] for i in range(g - 1, -1, -1)]
        return cls(tuple(a), q)


def l_polynomial(r: ReducedCurve) -> LPolynomial:
    """L-polynomial of the reduction from its point counts over F_2 .. F_{2^g}.

    Raises:
        TwoAdicOverrideRequiredError: If F_{2^g} exceeds the configured extension degree
    """
    if r.genus > ParityContext.two_adic_max_extension():
        raise TwoAdicOverrideRequiredError(
            f'point counts over F_(2^{r.genus}) exceed the configured extension degree',
            place='2',
            override_recipe=RECIPE_LAMBDA2,
        )
    return LPolynomial.from_counts([count_points(r, k) for k in range(1, r.genus + 1)])


def is_ordinary(l: LPolynomial, g: int) -> bool:
    """Ordinary reduction has an odd middle coefficient."""
    return l.coefficients[g] % 2 == 1


def two_rank(r: ReducedCurve) -> int:
    """The 2-rank of the reduction: one less than the number of branch points on P^1."""
    h = _mod2_high(r.h)
    _, factors = gf_factor(h, 2, ZZ)
    branch_points = sum(len(phi) - 1 for phi, _ in factors)
    if len(h) - 1 < r.genus + 1:
        branch_points += 1
    return branch_points - 1


def _letters(n: int) -> str:
    digits = []
    while True:
        n, r = divmod(n, 26)
        digits.append(chr(ord('a') + r))
        if not n:
            return ''.join(reversed(digits))


def lmfdb_label(l: LPolynomial) -> str:
    """Isogeny class label "g.q.a1_..._ag", negative coefficients prefixed by "a"."""
    coefficients = l.coefficients[1 : l.genus + 1]
    encoded = [('a' + _letters(-a)) if a < 0 else _letters(a) for a in coefficients]
    return f'{l.genus}.{l.q}.' + '_'.join(encoded)


@dataclass(frozen=True)
class RootResidues:
    """Reduction in P^1(F_2bar) of every labelled root of f g.

    A residue is an irreducible factor over F_2 together with the index of one of its
    conjugate roots, or None for infinity.
    """

    residues: Dict[int, Optional[Tuple[Tuple[int, ...], int]]]

    def fibres(self, labels: Sequence[int], offset: int = 0) -> List[Fibre]:
        """Labels grouped by residue, shifted down by ``offset``."""
        groups: Dict[Any, set] = {}
        for label in labels:
            groups.setdefault(self.residues[label], set()).add(label - offset)
        return sorted((frozenset(group) for group in groups.values()), key=sorted)


def _residue_multiplicities(poly: Poly) -> Dict[Any, int]:
    reduced = _mod2_high(integral_primitive(poly))
    _, factors = gf_factor(reduced, 2, ZZ)
    counts: Dict[Any, int] = {tuple(int(c) for c in phi): m for phi, m in factors}
    counts[None] = poly.degree() - (len(reduced) - 1)
    return counts


def root_residues(d: DoubleCoverDatum) -> RootResidues:
    """Assign the labels of the roots of f and g to their residues at 2.

    Labels are handed out residue by residue, so only the number of roots of f and of g on
    every residue matters. They are local to the computation at 2 and do not name the same
    roots as the labels used at other places.
    """
    on_f = _residue_multiplicities(d.f)
    on_g = _residue_multiplicities(d.g)
    keys = sorted({*on_f, *on_g} - {None}, key=lambda phi: (len(phi), phi)) + [None]
    f_labels, g_labels = iter(d.f_labels), iter(d.g_labels)
    residues: Dict[int, Any] = {}
    for phi in keys:
        conjugates = [None] if phi is None else [(phi, j) for j in range(len(phi) - 1)]
        for residue in conjugates:
            for _ in range(on_f.get(phi, 0)):
                residues[next(f_labels)] = residue
            for _ in range(on_g.get(phi, 0)):
                residues[next(g_labels)] = residue
    return RootResidues(residues)


def reduces_to_identity(cls: TwoTorsionClass, fibres: Sequence[Fibre]) -> bool:
    """Whether a class lies in the kernel of reduction: its roots are a union of fibres."""
    members = set(cls.subset)
    return all(fibre <= members or not fibre & members for fibre in fibres)


@dataclass(frozen=True)
class ReductionKernelReport:
    """Membership of every 2-torsion class of one curve in the kernel of reduction."""

    role: str
    entries: Tuple[Tuple[TwoTorsionClass, bool], ...]

    @property
    def reducing(self) -> List[TwoTorsionClass]:
        return [cls for cls, ok in self.entries if ok]

    @property
    def dimension(self) -> int:
        return f2_dimension(len(self.reducing))

    def is_subgroup(self) -> bool:
        found = set(self.reducing)
        return all(a + b in found for a in found for b in found)


@dataclass(frozen=True)
class _CurveAt2:
    model: IntegralModelAt2
    l_polynomial: LPolynomial
    fibres: Tuple[Fibre, ...]
    kernel: ReductionKernelReport


def _good_ordinary(c: HyperellipticCurve, fibres: Sequence[Fibre]) -> _CurveAt2:
    model = find_good_model_at2(c)
    l = l_polynomial(model.reduce())
    if not l.satisfies_functional_equation():
        raise AssertionError(f'L-polynomial of {c.role} fails the functional equation')
    ordinary = is_ordinary(l, c.genus)
    if ordinary != (two_rank(model.reduce()) == c.genus):
        raise AssertionError(f'2-rank and L-polynomial of {c.role} disagree on ordinariness')
    if not ordinary:
        raise TwoAdicOverrideRequiredError(
            f'{c.role or c} has good but not ordinary reduction at 2 ({lmfdb_label(l)})',
            place='2',
            override_recipe=RECIPE_LAMBDA2,
        )
    if len(fibres) != c.genus + 1 or any(len(fibre) != 2 for fibre in fibres):
        raise AssertionError(f'roots of {c.role} do not reduce in pairs at 2')
    classes = enumerate_classes(c.genus, c.degree)
    kernel = ReductionKernelReport(
        c.role, tuple((cls, reduces_to_identity(cls, fibres)) for cls in classes)
    )
    if kernel.dimension != c.genus or not kernel.is_subgroup():
        raise AssertionError(f'kernel of reduction of {c.role} is not a rank g subgroup')
    return _CurveAt2(model, l, tuple(fibres), kernel)


def _override_report(value: int, _: Dict) -> LocalTermReport:
    return LocalTermReport(
        place='2',
        lambda_=value,
        mu_c=1,
        mu_d=1,
        delta=1,
        exponent=0 if value == 1 else 1,
        methods={'lambda2': METHOD_OVERRIDE},
        details={'note': 'the whole local term was supplied by the override file'},
    )


def _lambda2_override(overrides: OverrideFile, _: Dict) -> Optional[Tuple[str, int]]:
    return None if overrides.lambda2 is None else ('lambda2', overrides.lambda2)


@override_check(_lambda2_override, build=_override_report, fallback=True)
def lambda_two(models: CoverModels, overrides: Optional[OverrideFile] = None) -> LocalTermReport:
    """The local term at 2 when Jac C and the Prym variety have good ordinary reduction.

    The kernel/cokernel ratio at 2 is 2 to the dimension of the part of the kernel of the
    isogeny whose components both reduce to the identity.

    Raises:
        TwoAdicOverrideRequiredError: If good ordinary reduction cannot be established
    """
    d = models.datum
    residues = root_residues(d)
    offset = d.f.degree()
    at2 = {
        models.curve.role: _good_ordinary(models.curve, residues.fibres(range(1, d.ambient + 1)))
    }
    for i, component in enumerate(models.prym.components):
        labels = d.f_labels if i == 0 else d.g_labels
        fibres = residues.fibres(labels, offset if i else 0)
        at2[component.role] = _good_ordinary(component, fibres)

    c_kernel = set(at2[models.curve.role].kernel.reducing)
    prym_kernels = [set(at2[c.role].kernel.reducing) for c in models.prym.components]

    def beta_reduces(beta) -> bool:
        return all(b in kernel for b, kernel in zip(beta.components, prym_kernels))

    pairs = [e for e in kernel_of_phi(d) if e.alpha in c_kernel and beta_reduces(e.beta)]
    through_preimages = [
        alpha
        for alpha in c_kernel
        if (beta := prym_image(alpha, d)) is not None and beta_reduces(beta)
    ]
    if len(pairs) != len(through_preimages):
        raise AssertionError('the two counts of the reducing kernel disagree')
    exponent = f2_dimension(len(pairs))

    signs = local_signs(models, 2, overrides=overrides)
    value = signs.product * sign_power(exponent)
    logger.info(f'lambda_2 = {value} (reducing kernel of dimension {exponent})')
    return LocalTermReport(
        place='2',
        lambda_=value,
        mu_c=signs.mu_c,
        mu_d=signs.mu_d,
        delta=signs.delta,
        exponent=exponent,
        methods={**signs.methods, 'lambda2': METHOD_NATIVE},
        details={
            'models': {role: entry.model.describe() for role, entry in at2.items()},
            'reductions': {role: lmfdb_label(entry.l_polynomial) for role, entry in at2.items()},
            'l_polynomials': {
                role: list(entry.l_polynomial.coefficients) for role, entry in at2.items()
            },
            'reduction_kernels': {
                role: {'size': len(entry.kernel.reducing), 'dimension': entry.kernel.dimension}
                for role, entry in at2.items()
            },
            'kernel_pairs': len(pairs),
            'dimension': exponent,
        },
    )
