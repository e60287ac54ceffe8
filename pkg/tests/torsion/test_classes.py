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

"""Tests for 2-torsion classes of hyperelliptic Jacobians."""

import pytest
import random
from itertools import combinations
from prym_parity.torsion.classes import (
    TwoTorsionClass,
    enumerate_classes,
    f2_dimension,
    fixed_classes,
    galois_act,
    span,
    symmetric_sum,
)


class TestTwoTorsionClass:
    """Test cases for TwoTorsionClass."""

    def test_complement_is_same_class(self):
        """Test that a set and its complement give one class."""
        assert TwoTorsionClass.of(6, {1, 2, 3, 4}) == TwoTorsionClass.of(6, {5, 6})
        assert TwoTorsionClass.of(6, range(1, 7)).is_zero

    def test_sum(self):
        """Test the symmetric difference."""
        a = TwoTorsionClass.of(6, {1, 2})
        b = TwoTorsionClass.of(6, {2, 3})
        assert a + b == TwoTorsionClass.of(6, {1, 3})
        assert (a + a).is_zero

    def test_symmetric_sum_respects_complements(self):
        """Test that sums do not depend on the representative."""
        a = TwoTorsionClass.of(6, {1, 2, 3, 4})
        b = TwoTorsionClass.of(6, {3, 4, 5, 6})
        assert symmetric_sum(a, b) == TwoTorsionClass.of(6, {3, 4})
        assert symmetric_sum(a, TwoTorsionClass.of(6, {5, 6})).is_zero

    def test_symmetric_sum_mismatched_ambient(self):
        """Test that classes on different root sets cannot be added."""
        with pytest.raises(ValueError, match='cannot add'):
            symmetric_sum(TwoTorsionClass.of(6, {1, 2}), TwoTorsionClass.of(8, {1, 2}))

    def test_smaller_side(self):
        """Test the short representative."""
        assert TwoTorsionClass.of(8, {1, 2, 3, 4, 5, 6}).smaller_side() == (7, 8)

    @pytest.mark.parametrize('members', [{1, 2, 3}, {0, 1}, {1, 9}])
    def test_invalid(self, members):
        """Test that odd sets and labels out of range are rejected."""
        with pytest.raises(ValueError):
            TwoTorsionClass.of(8, members)

    def test_str(self):
        """Test the report rendering."""
        assert str(TwoTorsionClass.of(6, {1, 3})) == '[P1, P3]'
        assert str(TwoTorsionClass.zero(6)) == '0'


class TestEnumeration:
    """Test cases for enumerate_classes and span."""

    @pytest.mark.parametrize('genus,count', [(1, 4), (2, 16), (3, 64)])
    def test_count(self, genus, count):
        """Test that there are 2^(2g) distinct classes, zero first."""
        classes = enumerate_classes(genus)
        assert len(classes) == len(set(classes)) == count
        assert classes[0].is_zero

    def test_genus_zero(self):
        """Test that genus 0 gives the trivial group."""
        assert enumerate_classes(0) == [TwoTorsionClass.zero(2)]

    def test_negative_genus(self):
        """Test that a negative genus is rejected."""
        with pytest.raises(ValueError):
            enumerate_classes(-1)

    def test_span(self):
        """Test the subgroup generated by two independent classes."""
        group = span([TwoTorsionClass.of(6, {1, 2}), TwoTorsionClass.of(6, {3, 4})], 6)
        assert len(group) == 4
        assert f2_dimension(len(group)) == 2

    def test_f2_dimension(self):
        """Test that only powers of two are group orders."""
        assert f2_dimension(1) == 0
        assert f2_dimension(8) == 3
        with pytest.raises(ValueError):
            f2_dimension(6)


class TestGaloisAction:
    """Test cases for permutations of root labels."""

    def test_act(self):
        """Test the image of a class under a transposition."""
        c = TwoTorsionClass.of(6, {1, 3})
        assert galois_act({1: 2, 2: 1}, c) == TwoTorsionClass.of(6, {2, 3})

    def test_blocks_preserved(self):
        """Test that a permutation mixing the roots of f and g is rejected."""
        c = TwoTorsionClass.of(6, {1, 3})
        with pytest.raises(ValueError):
            galois_act({4: 5, 5: 4}, c, blocks=[(1, 2, 3, 4), (5, 6)])

    def test_fixed_classes(self):
        """Test that a transposition fixes 8 of the 16 classes in genus 2."""
        fixed = fixed_classes({1: 2, 2: 1}, enumerate_classes(2))
        assert len(fixed) == 8


def even_subsets(ambient: int):
    labels = range(1, ambient + 1)
    return [set(s) for size in range(0, ambient + 1, 2) for s in combinations(labels, size)]


class TestGroupLaw:
    """Exhaustive checks of the group law for genus 1, 2 and 3."""

    @pytest.mark.parametrize('genus', [1, 2, 3])
    def test_every_subset(self, genus):
        """Test that complements agree and sums do not depend on representatives."""
        ambient = 2 * genus + 2
        subsets = even_subsets(ambient)
        assert len(subsets) == 2 ** (ambient - 1)
        everything = set(range(1, ambient + 1))
        for s in subsets:
            assert TwoTorsionClass.of(ambient, s) == TwoTorsionClass.of(ambient, everything - s)
            for t in subsets:
                total = TwoTorsionClass.of(ambient, s) + TwoTorsionClass.of(ambient, t)
                assert total == TwoTorsionClass.of(ambient, s ^ t)

    @pytest.mark.parametrize('genus', [1, 2, 3])
    def test_axioms(self, genus):
        """Test closure, identity, inverses, commutativity and associativity."""
        classes = enumerate_classes(genus)
        zero = TwoTorsionClass.zero(2 * genus + 2)
        table = {(a, b): a + b for a in classes for b in classes}
        assert set(table.values()) == set(classes)
        for a in classes:
            assert table[a, zero] == a
            assert table[a, a] == zero
            for b in classes:
                assert table[a, b] == table[b, a]
                for c in classes:
                    assert table[table[a, b], c] == table[a, table[b, c]]


class TestGaloisCompatibility:
    """Random permutations of root labels against the group law."""

    def test_commutes_with_addition(self):
        """Test that acting by a permutation is a homomorphism on random classes."""
        rng = random.Random(20)
        classes = {n: enumerate_classes((n - 2) // 2) for n in (4, 6, 8)}
        for _ in range(1000):
            ambient = rng.choice([4, 6, 8])
            labels = list(range(1, ambient + 1))
            images = rng.sample(labels, ambient)
            perm = dict(zip(labels, images))
            a, b = rng.choice(classes[ambient]), rng.choice(classes[ambient])
            assert galois_act(perm, a + b) == galois_act(perm, a) + galois_act(perm, b)

    def test_block_preserving(self):
        """Test that permutations preserving the roots of f and g fix the class of g."""
        rng = random.Random(8)
        blocks = [(1, 2, 3, 4, 5, 6), (7, 8)]
        epsilon = TwoTorsionClass.of(8, {7, 8})
        classes = enumerate_classes(3)
        for _ in range(1000):
            perm = {}
            for block in blocks:
                perm.update(zip(block, rng.sample(block, len(block))))
            a, b = rng.choice(classes), rng.choice(classes)
            assert galois_act(perm, epsilon, blocks) == epsilon
            assert galois_act(perm, a + b, blocks) == (
                galois_act(perm, a, blocks) + galois_act(perm, b, blocks)
            )
