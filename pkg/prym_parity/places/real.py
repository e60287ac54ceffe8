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

"""The real place: ovals of y^2 = F(x), component counts of Jacobians and the d-map.

Roots are labelled factor by factor: the real roots of a factor from left to right, then its
conjugate pairs on adjacent labels, ordered by the real and then the imaginary part of the root
in the upper half plane, which takes the first label of its pair. A divisor is a mapping from
points to multiplicities, where a point is a root label or one of the points at infinity.
"""

from ..algebra.real_roots import (
    ComplexBox,
    IsolatingInterval,
    isolate_complex_roots,
    separate,
    sturm_isolate_real_roots,
)
from ..common.constants import METHOD_NATIVE, METHOD_OVERRIDE, PLACE_INFINITY, RECIPE_REAL_KERNEL
from ..common.decorators.override_check import override_check
from ..common.errors import RealLocusUndeterminedError
from ..common.overrides import OverrideFile
from ..common.utils import convert_fractions_to_string, ord2, sign_power
from ..curves.cover import CoverModels
from ..curves.hyperelliptic import HyperellipticCurve
from ..pipeline.models import LocalTermReport
from ..torsion.classes import TwoTorsionClass, enumerate_classes, galois_act
from ..torsion.kernel import kernel_of_phi
from .solubility import local_signs
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from loguru import logger
from operator import mul
from sympy import Poly
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union


INFINITY_PLUS = 'inf+'
INFINITY_MINUS = 'inf-'
INFINITY_POINT = 'inf'

Point = Union[int, str]
DVector = Tuple[int, ...]


@dataclass(frozen=True)
class RootLabelling:
    """Labels of the roots of F = product of its factors."""

    real: Tuple[Tuple[int, IsolatingInterval], ...]
    complex_pairs: Tuple[Tuple[int, int], ...]
    complex_boxes: Tuple[ComplexBox, ...] = ()

    @property
    def size(self) -> int:
        return len(self.real) + 2 * len(self.complex_pairs)

    @property
    def real_labels(self) -> Tuple[int, ...]:
        """Labels of the real roots, from left to right."""
        return tuple(label for label, _ in self.real)

    @property
    def conjugation(self) -> Dict[int, int]:
        """Complex conjugation as a permutation of labels; real labels are fixed."""
        perm = {label: label for label, _ in self.real}
        for a, b in self.complex_pairs:
            perm[a], perm[b] = b, a
        return perm


def label_roots(factors: Sequence[Poly]) -> RootLabelling:
    """Label the roots of a product of pairwise coprime squarefree factors."""
    labelled: List[Tuple[int, IsolatingInterval]] = []
    pairs: List[Tuple[int, int]] = []
    boxes: List[ComplexBox] = []
    offset = 0
    for factor in factors:
        intervals = sturm_isolate_real_roots(factor)
        labelled.extend((offset + k + 1, interval) for k, interval in enumerate(intervals))
        start = offset + len(intervals)
        factor_boxes = isolate_complex_roots(factor)
        if 2 * len(factor_boxes) != factor.degree() - len(intervals):
            raise ValueError(f'root count mismatch while labelling {factor.as_expr()}')
        pairs.extend((start + 2 * k + 1, start + 2 * k + 2) for k in range(len(factor_boxes)))
        boxes.extend(factor_boxes)
        offset += factor.degree()
    refined = separate([interval for _, interval in labelled])
    real = sorted(
        zip((label for label, _ in labelled), refined), key=lambda item: item[1].lower
    )
    return RootLabelling(tuple(real), tuple(pairs), tuple(boxes))


@dataclass(frozen=True)
class Oval:
    """A connected component of the real locus.

    ``roots`` are the labels of the real Weierstrass points on the oval and ``infinity`` the
    real points at infinity it passes through.
    """

    roots: Tuple[int, ...]
    infinity: Tuple[str, ...] = ()

    def describe(self, labelling: RootLabelling) -> str:
        intervals = dict(labelling.real)
        ends = [f'[{intervals[r].lower}, {intervals[r].upper}]' for r in self.roots]
        if not self.infinity:
            return f'bounded oval between the roots in {ends[0]} and {ends[1]}'
        if len(self.roots) == 2:
            return f'oval through infinity, from the root in {ends[1]} to the root in {ends[0]}'
        if self.roots:
            return f'oval through infinity, ending at the root in {ends[0]}'
        return 'oval through ' + ' and '.join(self.infinity)


@dataclass(frozen=True)
class RealTopology:
    """The ovals of a real hyperelliptic curve.

    Bounded ovals come first from left to right; the oval through infinity, if any, is last.
    """

    curve: HyperellipticCurve
    labelling: RootLabelling
    ovals: Tuple[Oval, ...]

    @property
    def oval_count(self) -> int:
        return len(self.ovals)

    @property
    def root_to_oval(self) -> Dict[int, int]:
        return {root: k for k, oval in enumerate(self.ovals) for root in oval.roots}

    @property
    def infinity_oval(self) -> Optional[int]:
        """The oval carrying both points at infinity, when there is one."""
        for k, oval in enumerate(self.ovals):
            if INFINITY_PLUS in oval.infinity and INFINITY_MINUS in oval.infinity:
                return k
        return None

    def oval_of(self, point: Point) -> Optional[int]:
        """The oval a point lies on, or None for a point that is not real."""
        for k, oval in enumerate(self.ovals):
            if point in oval.roots or point in oval.infinity:
                return k
        return None

    @property
    def conjugation(self) -> Dict[int, int]:
        return self.labelling.conjugation

    def describe(self) -> Dict[str, Any]:
        return {
            'curve': str(self.curve),
            'ovals': [oval.describe(self.labelling) for oval in self.ovals],
            'real_roots': len(self.labelling.real),
            'complex_roots': {
                f'P{a}': str(box)
                for (a, _), box in zip(self.labelling.complex_pairs, self.labelling.complex_boxes)
            },
        }


def real_topology(
    c: HyperellipticCurve, factors: Optional[Sequence[Poly]] = None
) -> RealTopology:
    """Read the ovals of y^2 = F(x) off the sign pattern of F.

    F changes sign at each of its real roots and has the sign of its leading coefficient at
    +infinity. The rays at both ends are joined through the points at infinity when they are
    real.

    Args:
        c: The curve
        factors: Factorization of F fixing the root labels; F itself when omitted
    """
    factors = tuple(factors) if factors else (c.polynomial,)
    if sum(f.degree() for f in factors) != c.degree:
        raise ValueError('the factors do not multiply to the curve polynomial')
    labelling = label_roots(factors)
    roots = labelling.real_labels
    r = len(roots)
    lead = 1 if c.leading_coefficient > 0 else -1

    def positive(region: int) -> bool:
        return lead * sign_power(r - region) > 0

    ovals = [Oval((roots[k - 1], roots[k])) for k in range(1, r) if positive(k)]
    if c.degree % 2:
        ray = (roots[-1],) if positive(r) else (roots[0],)
        ovals.append(Oval(ray, (INFINITY_POINT,)))
    elif lead > 0:
        if r:
            ovals.append(Oval((roots[0], roots[-1]), (INFINITY_PLUS, INFINITY_MINUS)))
        elif c.genus % 2 == 0:
            ovals.append(Oval((), (INFINITY_PLUS, INFINITY_MINUS)))
        else:
            ovals.extend([Oval((), (INFINITY_PLUS,)), Oval((), (INFINITY_MINUS,))])
    topology = RealTopology(c, labelling, tuple(ovals))
    logger.debug(f'{c} has {topology.oval_count} real ovals')
    return topology


def jacobian_component_count(n_curve: int, genus: int) -> int:
    """Number of connected components of Jac(X)(R) for a curve with ``n_curve`` ovals."""
    if n_curve < 0:
        raise ValueError('the number of ovals cannot be negative')
    if n_curve > 0:
        return 2 ** (n_curve - 1)
    return 2 if genus % 2 else 1


def d_map(divisor: Mapping[Point, int], topo: RealTopology) -> DVector:
    """Parity of the degree of a real divisor on each oval.

    Points that are not real contribute nothing, so a conjugate pair adds 0 to every oval.

    Raises:
        ValueError: If the divisor does not have degree 0
        RealLocusUndeterminedError: If the curve has no real points
    """
    if sum(divisor.values()) != 0:
        raise ValueError('d is only defined on divisors of degree 0')
    if not topo.ovals:
        raise RealLocusUndeterminedError(
            f'{topo.curve} has no real points, so components cannot be read off ovals',
            place=PLACE_INFINITY,
            override_recipe=RECIPE_REAL_KERNEL,
        )
    vector = [0] * topo.oval_count
    for point, multiplicity in divisor.items():
        oval = topo.oval_of(point)
        if oval is not None:
            vector[oval] += multiplicity
    return tuple(v % 2 for v in vector)


def class_divisor(c: TwoTorsionClass, topo: RealTopology) -> Dict[Point, int]:
    """The degree-0 divisor sum of the Weierstrass points in the class minus points at infinity.

    On an odd degree model the last label is the point at infinity itself.
    """
    degree = topo.curve.degree
    members = [i for i in c.subset if i <= degree]
    divisor: Dict[Point, int] = {i: 1 for i in members}
    if degree % 2:
        divisor[INFINITY_POINT] = -len(members)
    elif members:
        divisor[INFINITY_PLUS] = -(len(members) // 2)
        divisor[INFINITY_MINUS] = -(len(members) // 2)
    return divisor


def is_identity_component(c: TwoTorsionClass, topo: RealTopology) -> bool:
    return not any(d_map(class_divisor(c, topo), topo))


def conjugation_fixed_classes(topo: RealTopology) -> List[TwoTorsionClass]:
    """The real 2-torsion classes of the Jacobian, in canonical order."""
    conjugation = topo.conjugation
    return [
        c
        for c in enumerate_classes(topo.curve.genus, 2 * topo.curve.genus + 2)
        if galois_act(conjugation, c) == c
    ]


def _curve_topologies(models: CoverModels) -> Tuple[RealTopology, List[RealTopology]]:
    d = models.datum
    return (
        real_topology(models.curve, (d.f, d.g)),
        [real_topology(component) for component in models.prym.components],
    )


def _real_kernel_override(overrides: OverrideFile, arguments: Dict) -> Optional[Tuple[str, int]]:
    value = overrides.real_kernel_identity
    return None if value is None else ('real_kernel_identity', value)


@override_check(_real_kernel_override, fallback=True)
def real_kernel_identity_count(
    models: CoverModels, overrides: Optional[OverrideFile] = None
) -> int:
    """Count kernel elements (alpha, beta) that are real and lie on identity components.

    Raises:
        RealLocusUndeterminedError: If C or a Prym curve has no real points and the override
            file has no count
    """
    topo_c, topo_prym = _curve_topologies(models)
    count = 0
    for element in kernel_of_phi(models.datum):
        alpha, betas = element.alpha, element.beta.components
        if galois_act(topo_c.conjugation, alpha) != alpha:
            continue
        if any(galois_act(t.conjugation, b) != b for t, b in zip(topo_prym, betas)):
            continue
        image = {topo_c.conjugation[i] for i in alpha.subset}
        if image != set(alpha.subset):
            logger.warning(
                f'{alpha} has no conjugation-stable representative; complex points are '
                'counted as conjugate pairs'
            )
        if not is_identity_component(alpha, topo_c):
            continue
        if all(is_identity_component(b, t) for t, b in zip(topo_prym, betas)):
            count += 1
    logger.debug(f'{count} real kernel elements lie on identity components')
    return count


def lambda_infinity(
    models: CoverModels, overrides: Optional[OverrideFile] = None
) -> LocalTermReport:
    """The local term at the real place.

    The kernel/cokernel ratio of the isogeny at the real place is
    n(Jac D) / (n(Jac C) n(Prym) |ker on identity components|), where n counts the components
    of the real points.

    Raises:
        RealLocusUndeterminedError: If a real locus needed for the count is empty
    """
    topo_c, topo_prym = _curve_topologies(models)
    topo_d = real_topology(models.cover)
    n_c = jacobian_component_count(topo_c.oval_count, models.curve.genus)
    n_d = jacobian_component_count(topo_d.oval_count, models.cover.genus)
    n_prym = reduce(
        mul,
        (jacobian_component_count(t.oval_count, t.curve.genus) for t in topo_prym),
        1,
    )
    count = real_kernel_identity_count(models, overrides=overrides)
    exponent = ord2(Fraction(n_d, n_c * n_prym * count))
    signs = local_signs(models, PLACE_INFINITY, overrides=overrides)
    value = signs.product * sign_power(exponent)
    used = overrides is not None and 'real_kernel_identity' in overrides.applied
    logger.info(f'lambda_inf = {value} (kernel exponent {exponent})')
    return LocalTermReport(
        place=PLACE_INFINITY,
        lambda_=value,
        mu_c=signs.mu_c,
        mu_d=signs.mu_d,
        delta=signs.delta,
        exponent=exponent,
        methods={
            **signs.methods,
            'real_kernel_identity': METHOD_OVERRIDE if used else METHOD_NATIVE,
        },
        details=convert_fractions_to_string(
            {
                'ovals': {
                    'C': topo_c.oval_count,
                    **{t.curve.role: t.oval_count for t in topo_prym},
                    'D': topo_d.oval_count,
                },
                'component_counts': {'C': n_c, 'Prym': n_prym, 'D': n_d},
                'real_kernel_identity': count,
                'topology': {
                    'C': topo_c.describe(),
                    **{t.curve.role: t.describe() for t in topo_prym},
                    'D': topo_d.describe(),
                },
            }
        ),
    )
