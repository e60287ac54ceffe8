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

"""Two-torsion of hyperelliptic Jacobians as even subsets of Weierstrass roots.

With the roots of a degree 2g + 2 polynomial labelled 1 .. 2g + 2, every 2-torsion class of
the Jacobian is an even subset of labels modulo complementation, and addition is symmetric
difference.
"""

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Mapping, Optional, Sequence, Set, Tuple


Permutation = Mapping[int, int]


def _canonical(ambient: int, members: Iterable[int]) -> Tuple[int, ...]:
    subset = tuple(sorted(set(members)))
    complement = tuple(i for i in range(1, ambient + 1) if i not in subset)
    return min(subset, complement)


@dataclass(frozen=True)
class TwoTorsionClass:
    """An even subset of {1, ..., ambient} up to complement, stored canonically."""

    ambient: int
    subset: Tuple[int, ...]

    @classmethod
    def of(cls, ambient: int, members: Iterable[int] = ()) -> 'TwoTorsionClass':
        """Build the class of a set of root labels.

        Raises:
            ValueError: If the set has odd size or a label is out of range
        """
        if ambient % 2:
            raise ValueError(f'ambient set must have even size, got {ambient}')
        members = set(members)
        if len(members) % 2:
            raise ValueError(f'{sorted(members)} has odd size')
        if any(not 1 <= i <= ambient for i in members):
            raise ValueError(f'{sorted(members)} is not a subset of 1..{ambient}')
        return cls(ambient, _canonical(ambient, members))

    @classmethod
    def zero(cls, ambient: int) -> 'TwoTorsionClass':
        return cls.of(ambient)

    @property
    def is_zero(self) -> bool:
        return not self.subset

    @property
    def complement(self) -> Tuple[int, ...]:
        return tuple(i for i in range(1, self.ambient + 1) if i not in self.subset)

    @property
    def genus(self) -> int:
        return (self.ambient - 2) // 2

    def smaller_side(self) -> Tuple[int, ...]:
        """The representative of smaller size (the canonical one on ties)."""
        complement = self.complement
        return complement if len(complement) < len(self.subset) else self.subset

    def __add__(self, other: 'TwoTorsionClass') -> 'TwoTorsionClass':
        return symmetric_sum(self, other)

    def __contains__(self, index: int) -> bool:
        return index in self.subset

    def __str__(self) -> str:
        if self.is_zero:
            return '0'
        return '[' + ', '.join(f'P{i}' for i in self.subset) + ']'


def symmetric_sum(a: TwoTorsionClass, b: TwoTorsionClass) -> TwoTorsionClass:
    """Sum of two classes: the symmetric difference of representatives.

    Raises:
        ValueError: If the classes live on different root sets
    """
    if a.ambient != b.ambient:
        raise ValueError(f'cannot add classes on {a.ambient} and {b.ambient} roots')
    return TwoTorsionClass.of(a.ambient, set(a.subset) ^ set(b.subset))


def enumerate_classes(genus: int, ambient: Optional[int] = None) -> List[TwoTorsionClass]:
    """All 2^(2g) classes of a genus g hyperelliptic Jacobian, in canonical order.

    Genus 0 gives the trivial group, the 2-torsion of a point.

    Every class has exactly one even representative avoiding label 1, which makes the
    enumeration duplicate free.
    """
    if genus < 0:
        raise ValueError('genus cannot be negative')
    ambient = ambient or 2 * genus + 2
    labels = range(2, ambient + 1)
    classes = [
        TwoTorsionClass.of(ambient, subset)
        for size in range(0, ambient, 2)
        for subset in combinations(labels, size)
    ]
    return sorted(classes, key=class_order)


def class_order(c: TwoTorsionClass) -> Tuple[int, Tuple[int, ...]]:
    """Sort key used wherever classes are listed."""
    return (len(c.subset), c.subset)


def check_partition(perm: Permutation, blocks: Sequence[Iterable[int]]) -> None:
    """Ensure a permutation maps every block of labels onto itself.

    Raises:
        ValueError: If it does not
    """
    for block in blocks:
        block = set(block)
        if {perm.get(i, i) for i in block} != block:
            raise ValueError(f'permutation does not preserve the root block {sorted(block)}')


def galois_act(
    perm: Permutation,
    c: TwoTorsionClass,
    blocks: Optional[Sequence[Iterable[int]]] = None,
) -> TwoTorsionClass:
    """Image of a class under a permutation of root labels.

    Labels missing from ``perm`` are fixed. When ``blocks`` is given (the labels of the roots
    of f and of g) the permutation must preserve each block.
    """
    if blocks is not None:
        check_partition(perm, blocks)
    return TwoTorsionClass.of(c.ambient, (perm.get(i, i) for i in c.subset))


def fixed_classes(perm: Permutation, classes: Iterable[TwoTorsionClass]) -> List[TwoTorsionClass]:
    return [c for c in classes if galois_act(perm, c) == c]


def span(generators: Iterable[TwoTorsionClass], ambient: int) -> Set[TwoTorsionClass]:
    """Subgroup generated by the given classes."""
    group = {TwoTorsionClass.zero(ambient)}
    for generator in generators:
        if generator not in group:
            group |= {element + generator for element in group}
    return group


def f2_dimension(size: int) -> int:
    """Dimension of an elementary abelian 2-group of the given order."""
    if size < 1 or size & (size - 1):
        raise ValueError(f'{size} is not the order of an elementary abelian 2-group')
    return size.bit_length() - 1
