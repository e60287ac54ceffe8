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

"""Tests for the real place."""

import pytest
import random
from prym_parity.common.errors import RealLocusUndeterminedError
from prym_parity.common.overrides import OverrideFile
from prym_parity.curves.hyperelliptic import HyperellipticCurve
from prym_parity.places import real
from prym_parity.places.real import (
    conjugation_fixed_classes,
    d_map,
    is_identity_component,
    jacobian_component_count,
    label_roots,
    lambda_infinity,
    real_kernel_identity_count,
    real_topology,
)
from prym_parity.places.solubility import LocalSigns
from prym_parity.torsion.classes import TwoTorsionClass
from sympy import Poly, Symbol
from unittest.mock import patch


x = Symbol('x')


def curve(expr) -> HyperellipticCurve:
    return HyperellipticCurve(Poly(expr, x, domain='QQ'), 'C')


def random_curve(rng: random.Random, degree: int):
    """A squarefree polynomial with at least two integer roots and well separated real roots.

    Real roots are integers in [-8, 8] and square roots of 2, 3, 5, 6 or 7, so any two of them
    are more than 1/64 apart.
    """
    real_count = rng.choice([r for r in (2, 4, 6, 8) if r <= degree])
    sqrt_pairs = rng.randint(0, (real_count - 2) // 2)
    integers = rng.sample(range(-8, 9), real_count - 2 * sqrt_pairs)
    squares = rng.sample([2, 3, 5, 6, 7], sqrt_pairs)
    centres = rng.sample(
        [(a, b) for a in range(-3, 4) for b in range(1, 4)], (degree - real_count) // 2
    )
    expr = rng.choice([-3, -2, -1, 1, 2, 3])
    for r in integers:
        expr *= x - r
    for m in squares:
        expr *= x**2 - m
    for a, b in centres:
        expr *= (x - a) ** 2 + b**2
    return expr


def scanned_oval_count(expr) -> int:
    """Count the ovals of y^2 = F from the sign of F on a grid of step 1/64 over [-12, 12].

    The even degree rays at both ends are one oval through infinity.
    """
    coeffs = [int(c) for c in Poly(expr, x).all_coeffs()]
    degree = len(coeffs) - 1
    signs = []
    for k in range(-12 * 64, 12 * 64):
        t = 2 * k + 1
        value = sum(c * t ** (degree - i) * 128**i for i, c in enumerate(coeffs))
        signs.append(value > 0)
    runs = sum(1 for i, s in enumerate(signs) if s and (i == 0 or not signs[i - 1]))
    if signs[0] and signs[-1] and runs > 1:
        runs -= 1
    return runs


@pytest.fixture
def no_signs():
    """Make every deficiency sign trivial."""
    with patch.object(real, 'local_signs', return_value=LocalSigns(1, 1, 1, {})) as mocked:
        yield mocked


class TestRealTopology:
    """Test cases for real_topology."""

    @pytest.mark.parametrize(
        'expr,ovals',
        [
            (x**3 - x, 2),
            (x**3 + x, 1),
            (x**4 - 5 * x**2 + 4, 2),
            (-(x**4) + 5 * x**2 - 4, 2),
            (x**6 + 1, 1),
            (x**4 + 1, 2),
            (-(x**6) - 1, 0),
        ],
    )
    def test_oval_count(self, expr, ovals):
        """Test the number of ovals read off the sign pattern."""
        assert real_topology(curve(expr)).oval_count == ovals

    def test_factors_must_match(self):
        """Test that factors of the wrong degree are refused."""
        with pytest.raises(ValueError):
            real_topology(curve(x**3 - x), (Poly(x, x, domain='QQ'),))


class TestRootLabelling:
    """Test cases for label_roots."""

    def test_pairs_follow_root_order(self):
        """Test that conjugate pairs are labelled by real part, then imaginary part."""
        labelling = label_roots([Poly((x**2 + 4) * (x**2 - 2) * (x**2 + 1), x, domain='QQ')])
        assert labelling.real_labels == (1, 2)
        assert labelling.complex_pairs == ((3, 4), (5, 6))
        first, second = labelling.complex_boxes
        assert first.im_lower <= 1 <= first.im_upper
        assert second.im_lower <= 2 <= second.im_upper
        assert labelling.conjugation == {1: 1, 2: 2, 3: 4, 4: 3, 5: 6, 6: 5}

    def test_equivalent_inputs(self):
        """Test that a scaled polynomial gets the same pair order."""
        expr = (x**2 + 2 * x + 2) * (x**2 - 2 * x + 5) * (x**2 - 3)
        for scale in (1, -5):
            boxes = label_roots([Poly(scale * expr, x, domain='QQ')]).complex_boxes
            assert boxes[0].re_upper < 0 < boxes[1].re_lower

    def test_factors_keep_their_labels(self):
        """Test that each factor labels its own pairs."""
        labelling = label_roots(
            [Poly(x**2 + 9, x, domain='QQ'), Poly(x**2 + 1, x, domain='QQ')]
        )
        assert labelling.complex_pairs == ((1, 2), (3, 4))
        assert labelling.complex_boxes[0].im_lower <= 3 <= labelling.complex_boxes[0].im_upper

    def test_describe(self):
        """Test that the report lists the box of each pair under its first label."""
        topo = real_topology(curve((x**2 + 1) * (x**2 - 2)))
        assert list(topo.describe()['complex_roots']) == ['P3']


class TestRandomCurves:
    """Oval counts and real classes on seeded random sextics and octics."""

    @pytest.mark.parametrize('seed', range(100))
    def test_against_sign_scan(self, seed):
        """Test the oval count against a grid scan and the real class count against 2^g n(Jac)."""
        rng = random.Random(seed)
        expr = random_curve(rng, 6 if seed % 2 else 8)
        c = curve(expr)
        topo = real_topology(c)
        assert topo.oval_count == scanned_oval_count(expr)
        assert topo.oval_count > 0
        components = jacobian_component_count(topo.oval_count, c.genus)
        assert len(conjugation_fixed_classes(topo)) == 2**c.genus * components


class TestComponents:
    """Test cases for component counts and the d-map."""

    @pytest.mark.parametrize(
        'ovals,genus,expected', [(3, 2, 4), (1, 3, 1), (0, 2, 1), (0, 1, 2), (2, 1, 2)]
    )
    def test_jacobian_component_count(self, ovals, genus, expected):
        """Test 2^(n - 1) components, or 1 or 2 without real points."""
        assert jacobian_component_count(ovals, genus) == expected

    def test_negative_ovals(self):
        """Test that a negative count is refused."""
        with pytest.raises(ValueError):
            jacobian_component_count(-1, 2)

    def test_identity_component(self):
        """Test which classes of y^2 = x^3 - x lie on the identity component."""
        topo = real_topology(curve(x**3 - x))
        assert is_identity_component(TwoTorsionClass.zero(4), topo)
        assert is_identity_component(TwoTorsionClass.of(4, {1, 2}), topo)
        assert not is_identity_component(TwoTorsionClass.of(4, {1, 3}), topo)

    def test_real_classes(self):
        """Test that every class is real when all roots are real."""
        topo = real_topology(curve(x**3 - x))
        assert len(conjugation_fixed_classes(topo)) == 4

    @pytest.mark.parametrize('expr', [x**3 - x, x**4 + 1, x**6 - x, (x**2 + 1) * (x**4 - 2)])
    def test_real_class_count(self, expr):
        """Test that there are 2^g n(Jac) real classes when the curve has real points."""
        c = curve(expr)
        topo = real_topology(c)
        components = jacobian_component_count(topo.oval_count, c.genus)
        assert len(conjugation_fixed_classes(topo)) == 2**c.genus * components

    def test_d_map_degree(self):
        """Test that divisors of nonzero degree are refused."""
        topo = real_topology(curve(x**3 - x))
        with pytest.raises(ValueError):
            d_map({1: 1}, topo)

    def test_d_map_without_real_points(self):
        """Test that a curve without ovals cannot be read."""
        topo = real_topology(curve(-(x**6) - 1))
        with pytest.raises(RealLocusUndeterminedError) as exc_info:
            d_map({}, topo)
        assert exc_info.value.place == 'inf'


class TestLambdaInfinity:
    """Test cases for the local term at the real place on the worked example."""

    def test_worked_example(self, worked_models, no_signs):
        """Test that the worked example has lambda_inf = +1."""
        report = lambda_infinity(worked_models)
        assert report.place == 'inf'
        assert report.lambda_ == 1
        assert report.details['ovals'] == {'C': 2, 'Prym1': 1, 'D': 2}
        assert report.details['component_counts'] == {'C': 2, 'Prym': 1, 'D': 2}
        assert report.details['real_kernel_identity'] == 4
        assert report.methods['real_kernel_identity'] == 'native'

    def test_kernel_count(self, worked_models):
        """Test that four kernel elements are real and on identity components."""
        assert real_kernel_identity_count(worked_models) == 4

    def test_override(self, worked_models, no_signs):
        """Test that the count falls back to the override file."""
        overrides = OverrideFile(real_kernel_identity=4)
        with patch.object(
            real,
            'is_identity_component',
            side_effect=RealLocusUndeterminedError('no real points', place='inf'),
        ):
            report = lambda_infinity(worked_models, overrides=overrides)
        assert report.details['real_kernel_identity'] == 4
        assert report.methods['real_kernel_identity'] == 'override'
        assert overrides.applied == ['real_kernel_identity']

    def test_no_override_raises(self, worked_models, no_signs):
        """Test that an undetermined count without an override stops the term."""
        with patch.object(
            real,
            'is_identity_component',
            side_effect=RealLocusUndeterminedError('no real points', place='inf'),
        ):
            with pytest.raises(RealLocusUndeterminedError):
                lambda_infinity(worked_models)
