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

"""Tamagawa numbers of semistable hyperelliptic Jacobians at odd primes.

The component group of the Néron model is the cokernel of the length pairing on the cycle
lattice of the dual graph of the special fibre. The lattice is read off the cluster picture:
it is spanned by the even clusters that are neither übereven nor the top, with a relation
among those whose star is the top when the top is übereven. Frobenius permutes these
clusters up to a sign, and the Tamagawa number counts the Frobenius-fixed components.
"""

from ..common.constants import METHOD_CLUSTER, METHOD_OVERRIDE, RECIPE_TAMAGAWA
from ..common.decorators.override_check import override_check
from ..common.errors import (
    FrobeniusSignUncertifiedError,
    TamagawaUnavailableError,
    WildRamificationError,
)
from ..common.overrides import OverrideFile, place_key
from ..curves.hyperelliptic import HyperellipticCurve
from .clusters import Cluster, ClusterPicture, cluster_picture, is_semistable, semistability_checks
from dataclasses import dataclass, field
from loguru import logger
from math import prod
from sympy import ZZ, Matrix, eye, zeros
from sympy.matrices.normalforms import invariant_factors
from typing import Any, Dict, List, Literal, Optional, Tuple


@dataclass(frozen=True)
class DualGraphData:
    """Cycle lattice of the dual graph of the special fibre with its Frobenius action.

    ``gram`` is the length pairing on the cycles and ``frobenius`` the matrix of Frobenius in
    the same basis, acting on column vectors.
    """

    cycles: Tuple[str, ...]
    gram: Matrix
    frobenius: Matrix

    @property
    def rank(self) -> int:
        return len(self.cycles)

    def component_group(self) -> List[int]:
        """Invariant factors of the geometric component group, trivial ones dropped."""
        if not self.rank:
            return []
        return [int(d) for d in invariant_factors(self.gram, domain=ZZ) if abs(int(d)) != 1]

    def fixed_component_count(self) -> int:
        """Order of the Frobenius-fixed part of the component group.

        Raises:
            ValueError: If the cokernel is infinite, which means the data are inconsistent
        """
        if not self.rank:
            return 1
        relations = self.gram.row_join(self.frobenius.T - eye(self.rank))
        factors = [int(d) for d in invariant_factors(relations, domain=ZZ)]
        if len(factors) < self.rank or 0 in factors:
            raise ValueError('component group has an infinite Frobenius-fixed part')
        return abs(prod(factors))


@dataclass(frozen=True)
class TamagawaResult:
    """Tamagawa number of a Jacobian at a prime and how it was obtained."""

    value: int
    method: Literal['cluster', 'override']
    details: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.value < 1:
            raise ValueError('Tamagawa numbers are positive')


def _cluster_name(s: Cluster) -> str:
    return '{' + ','.join(str(i + 1) for i in sorted(s)) + '}'


def _character(cp: ClusterPicture, t: Cluster, k: int, role: Optional[str]) -> int:
    """Sign by which Frobenius^k acts on the square root of theta_t^2."""
    place = str(cp.p)
    theta = cp.theta_squared(t)
    pi_exponent = theta.valuation * theta.ramification_index
    if pi_exponent.denominator != 1 or pi_exponent.numerator % 2:
        raise FrobeniusSignUncertifiedError(
            f'theta^2 of cluster {_cluster_name(t)} has odd valuation at {place}',
            place=place,
            override_recipe=RECIPE_TAMAGAWA.format(role=role, place=place),
        )
    q = cp.p**k
    residue = theta.residue
    if residue ** q != residue:
        raise FrobeniusSignUncertifiedError(
            f'theta^2 of cluster {_cluster_name(t)} is not fixed by Frobenius^{k} at {place}',
            place=place,
            override_recipe=RECIPE_TAMAGAWA.format(role=role, place=place),
        )
    return 1 if residue ** ((q - 1) // 2) == residue.field.one else -1


def _frobenius_signs(
    cp: ClusterPicture, stars: List[Cluster], role: Optional[str]
) -> Dict[Cluster, int]:
    """Sign of Frobenius for each star, trivial except at the end of every orbit."""
    signs: Dict[Cluster, int] = {}
    for t in stars:
        if t in signs:
            continue
        orbit = [t]
        while (image := cp.image(orbit[-1], cp.frobenius)) != t:
            orbit.append(image)
        for u in orbit[:-1]:
            signs[u] = 1
        signs[orbit[-1]] = _character(cp, t, len(orbit), role)
    return signs


def dual_graph_data(cp: ClusterPicture, role: Optional[str] = None) -> DualGraphData:
    """Build the cycle lattice and Frobenius action from a semistable cluster picture.

    Raises:
        FrobeniusSignUncertifiedError: If the sign of Frobenius on a cycle cannot be certified
    """
    top = cp.top
    spanning = [
        s
        for s in cp.proper_clusters()
        if s != top and cp.is_even(s) and not cp.is_ubereven(s)
    ]
    if not spanning:
        return DualGraphData((), zeros(0, 0), zeros(0, 0))
    index = {s: i for i, s in enumerate(spanning)}
    star = {s: cp.star(s) for s in spanning}

    def pairing(s1: Cluster, s2: Cluster) -> int:
        if star[s1] != star[s2]:
            return 0
        anchor = top if star[s1] == top else cp.parent(star[s1])
        length = 2 * (cp.depth(cp.meet(s1, s2)) - cp.depth(anchor))
        if length.denominator != 1:
            raise ValueError(f'non-integral cycle length at {cp.p}')
        return int(length)

    size = len(spanning)
    gram = Matrix(size, size, lambda i, j: pairing(spanning[i], spanning[j]))
    signs = _frobenius_signs(cp, sorted(set(star.values()), key=sorted), role)
    frobenius = zeros(size, size)
    for s in spanning:
        frobenius[index[cp.image(s, cp.frobenius)], index[s]] = signs[star[s]]

    if cp.is_ubereven(top):
        tied = [s for s in spanning if star[s] == top]
        free = [s for s in spanning if star[s] != top]
        basis = zeros(size, size - 1)
        kept = free + tied[1:]
        for column, s in enumerate(kept):
            basis[index[s], column] = 1
            if s in tied:
                basis[index[tied[0]], column] = -1
        image = frobenius * basis
        # a vector of the sublattice is determined by its entries at the kept clusters
        frobenius = Matrix(size - 1, size - 1, lambda i, j: image[index[kept[i]], j])
        gram = basis.T * gram * basis
        names = tuple(
            _cluster_name(s) if s in free else f'{_cluster_name(s)}-{_cluster_name(tied[0])}'
            for s in kept
        )
    else:
        names = tuple(_cluster_name(s) for s in spanning)
    return DualGraphData(names, gram, frobenius)


def _tamagawa_override(overrides: OverrideFile, arguments: Dict) -> Optional[Tuple[str, int]]:
    role = arguments['c'].role
    place = place_key(arguments['p'])
    value = overrides.tamagawa_for(role, place)
    return None if value is None else (f'tamagawa.{role}@{place}', value)


@override_check(
    _tamagawa_override, build=lambda value, _: TamagawaResult(value, METHOD_OVERRIDE)
)
def tamagawa_number(
    c: HyperellipticCurve, p: int, overrides: Optional[OverrideFile] = None
) -> TamagawaResult:
    """Tamagawa number of the Jacobian of a curve at an odd prime.

    An override entry for the curve and prime is used without computing anything.

    Args:
        c: Curve, whose role names it in override keys
        p: Odd prime
        overrides: Override file

    Returns:
        The Tamagawa number with the cluster data it was derived from

    Raises:
        TamagawaUnavailableError: If the Jacobian is not semistable at p
        FrobeniusSignUncertifiedError: If Frobenius on the dual graph cannot be certified
    """
    place = str(p)
    recipe = RECIPE_TAMAGAWA.format(role=c.role, place=place)
    try:
        cp = cluster_picture(c, p)
    except WildRamificationError as error:
        raise TamagawaUnavailableError(
            f'{c.role or c} is not semistable at {p}: {error.message}',
            place=place,
            override_recipe=recipe,
        ) from None
    checks = semistability_checks(cp)
    if not is_semistable(cp):
        failed = ', '.join(name for name, ok in checks.items() if not ok)
        raise TamagawaUnavailableError(
            f'{c.role or c} is not semistable at {p} (failed: {failed})',
            place=place,
            override_recipe=recipe,
        )
    data = dual_graph_data(cp, c.role)
    value = data.fixed_component_count()
    logger.debug(f'Tamagawa number of {c.role or c} at {p}: {value} from cycles {data.cycles}')
    return TamagawaResult(
        value,
        METHOD_CLUSTER,
        {
            'clusters': cp.describe(),
            'semistability': checks,
            'cycles': list(data.cycles),
            'component_group': data.component_group(),
        },
    )
