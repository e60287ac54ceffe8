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

"""The kernel of the Prym isogeny Jac C x Prym(D/C) -> Jac D on 2-torsion.

The kernel consists of the pairs (alpha, beta) with pi^*(alpha) = beta; every beta in
Prym[2] has exactly the two preimages alpha and alpha + epsilon, read off a table per case.
"""

from ..curves.cover import CaseTag, DoubleCoverDatum, epsilon_class
from .classes import TwoTorsionClass, class_order, enumerate_classes
from dataclasses import dataclass
from itertools import product
from typing import List, Optional, Tuple


@dataclass(frozen=True)
class PrymTwoTorsion:
    """A 2-torsion point of the Prym variety, one class per Jacobian factor.

    Cases II and III.a have one class on the roots of f (labels 1 .. deg f); case III.b has a
    class on the roots of f and one on the roots of g, the latter labelled 1 .. deg g.
    """

    components: Tuple[TwoTorsionClass, ...]

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def __add__(self, other: 'PrymTwoTorsion') -> 'PrymTwoTorsion':
        if len(self.components) != len(other.components):
            raise ValueError('Prym points of different shapes')
        return PrymTwoTorsion(tuple(a + b for a, b in zip(self.components, other.components)))

    def __str__(self) -> str:
        if len(self.components) == 1:
            return str(self.components[0])
        return '(' + ', '.join(str(c).replace('P', "P'") if i else str(c)
                               for i, c in enumerate(self.components)) + ')'


@dataclass(frozen=True)
class KernelElement:
    """A pair (alpha, beta) in Jac C[2] x Prym[2] with pi^*(alpha) = beta."""

    alpha: TwoTorsionClass
    beta: PrymTwoTorsion

    def __add__(self, other: 'KernelElement') -> 'KernelElement':
        return KernelElement(self.alpha + other.alpha, self.beta + other.beta)

    def __str__(self) -> str:
        return f'({self.alpha}, {self.beta})'


def _prym_ambients(d: DoubleCoverDatum) -> Tuple[int, ...]:
    if d.case_tag == CaseTag.III_B:
        return (d.f.degree(), d.g.degree())
    if d.case_tag in (CaseTag.II, CaseTag.III_A):
        return (d.f.degree(),)
    raise ValueError(f'case {d.case_tag.value} has no kernel table')


def prym_classes(d: DoubleCoverDatum) -> List[PrymTwoTorsion]:
    """All 2^(2(g - 1)) points of Prym[2], in canonical order."""
    per_factor = [enumerate_classes((n - 2) // 2, n) for n in _prym_ambients(d)]
    return [PrymTwoTorsion(tuple(combo)) for combo in product(*per_factor)]


def pullback_preimage(
    beta: PrymTwoTorsion, d: DoubleCoverDatum
) -> Tuple[TwoTorsionClass, TwoTorsionClass]:
    """The two classes alpha, alpha + epsilon with pi^*(alpha) = beta.

    Cases II and III.a send [P_i, P_j] to [P_i, P_j]; case III.b sends
    ([P_i, P_j], [P'_k, P'_l]) to [P_i, P_j, P'_k, P'_l], the primed labels shifted past the
    roots of f.

    Raises:
        ValueError: If beta is not a 2-torsion point of this Prym variety
    """
    ambients = _prym_ambients(d)
    if tuple(c.ambient for c in beta.components) != ambients:
        raise ValueError(f'{beta} is not a 2-torsion point of the Prym variety')
    members = set(beta.components[0].subset)
    if d.case_tag == CaseTag.III_B:
        offset = d.f.degree()
        members |= {offset + i for i in beta.components[1].subset}
    alpha = TwoTorsionClass.of(d.ambient, members)
    other = alpha + epsilon_class(d)
    first, second = sorted((alpha, other), key=class_order)
    return first, second


def kernel_of_phi(d: DoubleCoverDatum) -> List[KernelElement]:
    """All 2^(2g - 1) elements of the kernel, ordered by beta and then alpha."""
    elements = []
    for beta in prym_classes(d):
        for alpha in pullback_preimage(beta, d):
            elements.append(KernelElement(alpha, beta))
    return elements


def prym_image(alpha: TwoTorsionClass, d: DoubleCoverDatum) -> Optional[PrymTwoTorsion]:
    """The beta with (alpha, beta) in the kernel, or None when alpha has no such partner."""
    ambients = _prym_ambients(d)
    f_labels = set(d.f_labels)
    offset = d.f.degree()
    for side in (alpha.subset, alpha.complement):
        for representative in (set(side), set(side) ^ set(d.g_labels)):
            on_f = representative & f_labels
            on_g = {i - offset for i in representative - f_labels}
            if len(on_f) % 2:
                continue
            if d.case_tag == CaseTag.III_B:
                beta = PrymTwoTorsion(
                    (
                        TwoTorsionClass.of(ambients[0], on_f),
                        TwoTorsionClass.of(ambients[1], on_g),
                    )
                )
            elif on_g:
                continue
            else:
                beta = PrymTwoTorsion((TwoTorsionClass.of(ambients[0], on_f),))
            if alpha in pullback_preimage(beta, d):
                return beta
    return None
