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

"""Cluster pictures of y^2 = F(x) at odd primes.

F is replaced by the monic integral G(X) = a^(n-1) F0(X / a), where F0 is the primitive
integral multiple of F and a its leading coefficient, so v(r_i - r_j) = v(R_i - R_j) - v(a).
G is factored mod p and its coprime parts phi^m are Hensel-lifted. Roots of different parts
are at distance 0, and so are the roots of a part with m = 1, so only parts with m > 1 are
split into p-adic roots.
"""

import networkx as nx
from ..algebra.finite_field import FiniteField, FiniteFieldElement
from ..algebra.padic import LocalElement, LocalField
from ..algebra.padic_roots import galois_permutation, monic_padic_roots
from ..algebra.poly import integral_primitive, leading_coefficient
from ..common.context import ParityContext
from ..common.errors import PrecisionExhaustedError
from ..common.utils import valuation
from ..curves.hyperelliptic import HyperellipticCurve
from dataclasses import dataclass
from fractions import Fraction
from loguru import logger
from math import lcm
from sympy.polys.domains import ZZ
from sympy.polys.factortools import dup_zz_hensel_lift
from sympy.polys.galoistools import gf_factor, gf_from_int_poly, gf_pow
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple


Cluster = FrozenSet[int]


@dataclass(frozen=True, eq=False)
class RootBlock:
    """The roots of one Hensel-lifted factor of G, all congruent to roots of phi^m mod p.

    ``factor`` is monic with coefficients lowest degree first, exact modulo p^precision.
    Blocks with ``multiplicity`` 1 keep no root values.
    """

    factor: Tuple[int, ...]
    residue_degree: int
    multiplicity: int
    labels: Tuple[int, ...]
    field: Optional[LocalField] = None
    values: Tuple[LocalElement, ...] = ()

    @property
    def is_split(self) -> bool:
        return self.field is not None

    def value_of(self, label: int) -> LocalElement:
        return self.values[self.labels.index(label)]


@dataclass(frozen=True)
class ThetaSquared:
    """Valuation and unit residue of c prod_{r not in t} (z_t - r) for a cluster t."""

    valuation: Fraction
    residue: FiniteFieldElement
    ramification_index: int


def _lift_factors(
    p: int, monic: Sequence[int], precision: int
) -> List[Tuple[List[int], int, int]]:
    """Hensel-lift the coprime parts phi^m of G mod p.

    Returns:
        (lifted factor lowest degree first, deg phi, m) per part
    """
    high = [int(c) for c in reversed(monic)]
    _, factors = gf_factor(gf_from_int_poly(high, p), p, ZZ)
    factors = sorted(
        ((list(map(int, phi)), m) for phi, m in factors), key=lambda f: (len(f[0]), f)
    )
    pieces = [gf_pow(phi, m, p, ZZ) for phi, m in factors]
    lifted = dup_zz_hensel_lift(p, high, pieces, precision, ZZ)
    return [
        ([int(c) for c in reversed(factor)], len(phi) - 1, m)
        for factor, (phi, m) in zip(lifted, factors)
    ]


def _root_blocks(p: int, monic: Sequence[int], precision: int) -> Tuple[RootBlock, ...]:
    blocks = []
    start = 0
    for factor, degree, m in _lift_factors(p, monic, precision):
        labels = tuple(range(start, start + len(factor) - 1))
        start += len(labels)
        if m == 1:
            blocks.append(RootBlock(tuple(factor), degree, m, labels))
            continue
        field, values = monic_padic_roots(p, factor, precision, residue_degree=degree)
        blocks.append(RootBlock(tuple(factor), degree, m, labels, field, tuple(values)))
    return tuple(blocks)


def _block_distances(blocks: Sequence[RootBlock]) -> Dict[Tuple[int, int], Fraction]:
    """v(R_i - R_j) for i < j in the monic model."""
    distances = {}
    labels = [label for block in blocks for label in block.labels]
    for block in blocks:
        if not block.is_split:
            continue
        field = block.field
        for a, i in enumerate(block.labels):
            for j in block.labels[a + 1:]:
                v = field.valuation(field.sub(block.value_of(i), block.value_of(j)))
                if v is None:
                    raise PrecisionExhaustedError('two roots agree to the working precision')
                distances[(i, j)] = v
    for a, i in enumerate(labels):
        for j in labels[a + 1:]:
            distances.setdefault((i, j), Fraction(0))
    return distances


def _reliable(blocks: Sequence[RootBlock], distances: Dict, precision: int) -> bool:
    """Whether the lifted factors are exact enough for the root distances found."""
    for block in blocks:
        if not block.is_split:
            continue
        inside = [distances[(i, j)] for i in block.labels for j in block.labels if i < j]
        if inside and block.multiplicity * max(inside) + 1 >= precision:
            return False
    return True


def _cluster_tree(size: int, distances: Dict[Tuple[int, int], Fraction]) -> nx.DiGraph:
    def dist(i: int, j: int) -> Fraction:
        return distances[(min(i, j), max(i, j))]

    clusters = {frozenset(range(size))} | {frozenset({i}) for i in range(size)}
    levels = sorted(set(distances.values()))
    for i in range(size):
        for level in levels:
            members = frozenset({i} | {j for j in range(size) if j != i and dist(i, j) >= level})
            if len(members) > 1:
                clusters.add(members)
    tree = nx.DiGraph()
    for s in clusters:
        depth = min((dist(i, j) for i in s for j in s if i < j), default=None)
        tree.add_node(s, depth=depth)
    for s in clusters:
        above = [t for t in clusters if s < t]
        if above:
            tree.add_edge(min(above, key=len), s)
    return tree


def _label_permutation(blocks: Sequence[RootBlock], action: str) -> Tuple[int, ...]:
    """Frobenius or inertia on root labels; unsplit blocks are cycled by Frobenius."""
    perm = {}
    for block in blocks:
        if block.is_split:
            local = galois_permutation(block.field, block.values, getattr(block.field, action))
            perm.update({block.labels[k]: block.labels[image] for k, image in enumerate(local)})
        elif action == 'frobenius':
            n = len(block.labels)
            perm.update({block.labels[k]: block.labels[(k + 1) % n] for k in range(n)})
        else:
            perm.update({label: label for label in block.labels})
    return tuple(perm[i] for i in range(len(perm)))


def _unit_residue(value: Fraction, p: int) -> int:
    """Residue mod p of the p-unit part of a nonzero rational."""
    v = valuation(value, p)
    unit = value / Fraction(p) ** v
    return unit.numerator * pow(unit.denominator, -1, p) % p


@dataclass(frozen=True, eq=False)
class ClusterPicture:
    """Clusters of the roots of F at an odd prime, with depths and Galois action.

    Roots are labelled 0 .. n - 1 block by block. ``tree`` has the clusters as nodes, each
    carrying its depth, and an edge from every cluster to each of its children.
    """

    p: int
    leading_coefficient: Fraction
    scale: int
    blocks: Tuple[RootBlock, ...]
    distances: Dict[Tuple[int, int], Fraction]
    tree: nx.DiGraph
    frobenius: Tuple[int, ...]
    inertia: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.frobenius)

    @property
    def genus(self) -> int:
        return (self.size - 1) // 2

    @property
    def top(self) -> Cluster:
        return frozenset(range(self.size))

    @property
    def ramification_index(self) -> int:
        """Ramification index of the splitting field of F over Q_p."""
        e = 1
        for i in range(self.size):
            orbit, j = 1, self.inertia[i]
            while j != i:
                orbit, j = orbit + 1, self.inertia[j]
            e = lcm(e, orbit)
        return e

    @property
    def leading_valuation(self) -> int:
        return valuation(self.leading_coefficient, self.p)

    def clusters(self) -> List[Cluster]:
        """All clusters, largest first, then by their smallest labels."""
        return sorted(self.tree.nodes, key=lambda s: (-len(s), sorted(s)))

    def proper_clusters(self) -> List[Cluster]:
        return [s for s in self.clusters() if len(s) > 1]

    def depth(self, s: Cluster) -> Optional[Fraction]:
        return self.tree.nodes[s]['depth']

    def parent(self, s: Cluster) -> Optional[Cluster]:
        return next(iter(self.tree.predecessors(s)), None)

    def children(self, s: Cluster) -> List[Cluster]:
        return sorted(self.tree.successors(s), key=lambda t: (-len(t), sorted(t)))

    def relative_depth(self, s: Cluster) -> Fraction:
        parent = self.parent(s)
        return self.depth(s) - self.depth(parent) if parent is not None else self.depth(s)

    def meet(self, s: Cluster, t: Cluster) -> Cluster:
        """Smallest cluster containing both."""
        u = s
        while not t <= u:
            u = self.parent(u)
        return u

    def is_even(self, s: Cluster) -> bool:
        return len(s) % 2 == 0

    def is_ubereven(self, s: Cluster) -> bool:
        children = self.children(s)
        return self.is_even(s) and bool(children) and all(self.is_even(t) for t in children)

    def is_cotwin(self, s: Cluster) -> bool:
        return not self.is_ubereven(s) and any(
            len(t) == 2 * self.genus for t in self.children(s)
        )

    def is_principal(self, s: Cluster) -> bool:
        """Proper, not a twin or cotwin, and with at least three children if it is the top."""
        children = self.children(s)
        if s == self.top and self.is_even(s) and len(children) == 2:
            return False
        if any(len(t) == 2 * self.genus for t in children):
            return False
        return len(s) >= 3

    def star(self, s: Cluster) -> Cluster:
        """The child of size 2g for a cotwin; otherwise climb while the parent is übereven."""
        if self.is_cotwin(s):
            return next(t for t in self.children(s) if len(t) == 2 * self.genus)
        while self.parent(s) is not None and self.is_ubereven(self.parent(s)):
            s = self.parent(s)
        return s

    def nu(self, s: Cluster) -> Fraction:
        """v(c) plus the depths of the meets of s with every root."""
        total = Fraction(self.leading_valuation)
        for r in range(self.size):
            total += self.depth(self.meet(frozenset({r}), s))
        return total

    def image(self, s: Cluster, perm: Sequence[int]) -> Cluster:
        return frozenset(perm[i] for i in s)

    def _block_of(self, label: int) -> RootBlock:
        return next(block for block in self.blocks if label in block.labels)

    def theta_squared(self, t: Cluster) -> ThetaSquared:
        """c prod_{r not in t} (z - r) for a root z in t, as valuation and unit residue.

        Raises:
            ValueError: If t is a proper cluster other than the top whose roots were not split
        """
        p = self.p
        outside = self.size - len(t)
        v = Fraction(self.leading_valuation) - outside * valuation(self.scale, p)
        if t == self.top:
            unit = FiniteField(p, 1)(_unit_residue(self.leading_coefficient, p))
            return ThetaSquared(v, unit, 1)
        label = min(t)
        block = self._block_of(label)
        if not block.is_split:
            raise ValueError('only clusters inside split blocks carry theta')
        field = block.field
        residue = field.residue_field(_unit_residue(self.leading_coefficient, p))
        scale = field.residue_field(_unit_residue(Fraction(self.scale), p))
        residue = residue * scale ** (-outside)
        z = block.value_of(label)
        factors = [field.sub(z, block.value_of(r)) for r in block.labels if r not in t]
        factors += [
            field.evaluate_int(other.factor, z) for other in self.blocks if other is not block
        ]
        for factor in factors:
            w, unit = field.unit_part(factor)
            v += w
            residue = residue * field.residue(unit)
        return ThetaSquared(v, residue, field.e)

    def describe(self) -> List[str]:
        """Clusters as "{labels}_depth", largest first."""
        return [
            '{' + ','.join(str(i + 1) for i in sorted(s)) + '}_' + str(self.depth(s))
            for s in self.proper_clusters()
        ]


def cluster_picture(c: HyperellipticCurve, p: int) -> ClusterPicture:
    """Compute the cluster picture of y^2 = F(x) at an odd prime.

    Raises:
        ValueError: If p = 2
        PrecisionExhaustedError: If the roots cannot be separated below the precision cap
        WildRamificationError: If the splitting field is wildly ramified at p
        ExtensionTooLargeError: If the roots need too large an extension of Q_p
    """
    if p == 2:
        raise ValueError('cluster pictures are only used at odd primes')
    ints = integral_primitive(c.polynomial)
    scale = ints[-1]
    n = len(ints) - 1
    monic = [ints[i] * scale ** (n - 1 - i) for i in range(n)] + [1]
    shift = Fraction(valuation(scale, p))
    precision = ParityContext.padic_precision()
    cap = ParityContext.padic_precision_cap()
    while True:
        blocks = _root_blocks(p, monic, precision)
        distances = _block_distances(blocks)
        if _reliable(blocks, distances, precision):
            break
        if precision >= cap:
            raise PrecisionExhaustedError(
                f'root distances of {c} exceed the precision cap {cap}', place=str(p)
            )
        precision = min(2 * precision, cap)
    distances = {pair: d - shift for pair, d in distances.items()}
    picture = ClusterPicture(
        p=p,
        leading_coefficient=leading_coefficient(c.polynomial),
        scale=scale,
        blocks=blocks,
        distances=distances,
        tree=_cluster_tree(n, distances),
        frobenius=_label_permutation(blocks, 'frobenius'),
        inertia=_label_permutation(blocks, 'inertia'),
    )
    logger.debug(f'Cluster picture of {c.role or c} at {p}: {picture.describe()}')
    return picture


def semistability_checks(cp: ClusterPicture) -> Dict[str, bool]:
    """The sub-checks of the semistability criterion, by name."""
    principal = [s for s in cp.proper_clusters() if cp.is_principal(s)]
    return {
        'principal_depths_integral': all(cp.depth(s).denominator == 1 for s in principal),
        'principal_nu_even': all((cp.nu(s) / 2).denominator == 1 for s in principal),
        'ramification_at_most_2': cp.ramification_index <= 2,
        'proper_clusters_inertia_stable': all(
            cp.image(s, cp.inertia) == s for s in cp.proper_clusters()
        ),
    }


def is_semistable(cp: ClusterPicture) -> bool:
    """Whether the Jacobian of the curve has semistable reduction over Q_p."""
    return all(semistability_checks(cp).values())
