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

"""Bitangent bookkeeping for non-hyperelliptic genus 3 covers.

The 28 bitangents of a plane quartic correspond to the odd theta characteristics
(a, b) in F_2^3 x F_2^3 with a.b = 1. A pair of bitangents {b1, b2} determines the 2-torsion
class b1 + b2, and two pairs lie in a common Steiner complex exactly when they determine the
same class. Only this combinatorics is supported; no bitangents are computed.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Any, Dict, List, Tuple


Characteristic = Tuple[int, ...]
BitangentPair = Tuple[int, int]


@lru_cache(maxsize=None)
def odd_characteristics() -> Tuple[Characteristic, ...]:
    """The 28 odd characteristics in lexicographic order; bitangent i is entry i - 1."""
    odd = []
    for bits in product((0, 1), repeat=6):
        a, b = bits[:3], bits[3:]
        if sum(x * y for x, y in zip(a, b)) % 2:
            odd.append(bits)
    return tuple(odd)


def _characteristic(index: int) -> Characteristic:
    if not 1 <= index <= 28:
        raise ValueError(f'bitangent index {index} is not in 1..28')
    return odd_characteristics()[index - 1]


def _index(characteristic: Characteristic) -> int:
    return odd_characteristics().index(characteristic) + 1


def steiner_class(pair: BitangentPair) -> Characteristic:
    """The nonzero 2-torsion class b1 + b2 of a pair of distinct bitangents."""
    b1, b2 = pair
    if b1 == b2:
        raise ValueError('a bitangent pair needs two distinct bitangents')
    return tuple((x + y) % 2 for x, y in zip(_characteristic(b1), _characteristic(b2)))


def steiner_complex(eta: Characteristic) -> List[BitangentPair]:
    """The six bitangent pairs determining the class eta."""
    if not any(eta):
        raise ValueError('the zero class has no Steiner complex')
    pairs = set()
    for theta in odd_characteristics():
        partner = tuple((x + y) % 2 for x, y in zip(theta, eta))
        if partner in odd_characteristics():
            pairs.add(tuple(sorted((_index(theta), _index(partner)))))
    return sorted(pairs)


@dataclass(frozen=True)
class SteinerLabel:
    """A set of bitangent pairs and whether they all lie in one Steiner complex."""

    pairs: Tuple[BitangentPair, ...]
    common_complex: bool

    @classmethod
    def of(cls, pairs) -> 'SteinerLabel':
        pairs = tuple(tuple(sorted(pair)) for pair in pairs)
        classes = {steiner_class(pair) for pair in pairs}
        return cls(pairs, len(classes) == 1)


def recombination(beta: SteinerLabel) -> Tuple[SteinerLabel, SteinerLabel]:
    """Preimages of beta = [{b1, b2}, {b3, b4}] on the quartic.

    They are the complexes of {b1, b3}, {b2, b4} and of {b1, b4}, {b2, b3}, each completed to
    its six pairs.

    Raises:
        ValueError: If beta is not two pairs of one Steiner complex
    """
    if len(beta.pairs) != 2 or not beta.common_complex:
        raise ValueError('beta must be two bitangent pairs of one Steiner complex')
    (b1, b2), (b3, b4) = beta.pairs
    first = SteinerLabel.of(steiner_complex(steiner_class((b1, b3))))
    second = SteinerLabel.of(steiner_complex(steiner_class((b1, b4))))
    if steiner_class((b1, b3)) != steiner_class((b2, b4)):
        raise AssertionError('recombined pairs left the Steiner complex')  # pragma: no cover
    return first, second


def describe_steiner() -> Dict[str, Any]:
    """Bitangent and Steiner complex counts, with the recombination of the first beta.

    beta is the first two pairs of the complex through bitangents 1 and 2.
    """
    classes = {steiner_class(pair) for pair in combinations(range(1, 29), 2)}
    beta = SteinerLabel.of(steiner_complex(steiner_class((1, 2)))[:2])
    return {
        'bitangents': len(odd_characteristics()),
        'steiner_complexes': len(classes),
        'beta': [list(pair) for pair in beta.pairs],
        'preimages': [[list(pair) for pair in label.pairs] for label in recombination(beta)],
    }
