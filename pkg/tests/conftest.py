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

"""Global pytest fixtures for prym-parity tests."""

import json
import pytest
from prym_parity.algebra.poly import make_poly
from prym_parity.common.context import ParityContext
from prym_parity.common.overrides import OverrideFile
from prym_parity.curves.cover import CoverModels, classify_cover
from prym_parity.pipeline.models import CurveInput
from prym_parity.places import solubility


WORKED_F = ['-295', '-236', '60', '54', '48', '-12', '1']
WORKED_G = ['12', '8', '1']


@pytest.fixture(autouse=True)
def reset_context():
    """Reset the numeric budgets and the solubility caches around every test."""
    ParityContext.initialize()
    solubility.rational_point.cache_clear()
    solubility._certificate.cache_clear()
    yield
    ParityContext.initialize()
    solubility.rational_point.cache_clear()
    solubility._certificate.cache_clear()


@pytest.fixture
def worked_f():
    """f = x^6 - 12x^5 + 48x^4 + 54x^3 + 60x^2 - 236x - 295."""
    return make_poly(int(c) for c in WORKED_F)


@pytest.fixture
def worked_g():
    """g = x^2 + 8x + 12."""
    return make_poly(int(c) for c in WORKED_G)


@pytest.fixture
def worked_input():
    """Curve input of the worked example."""
    return CurveInput(f=WORKED_F, g=WORKED_G)


@pytest.fixture
def worked_datum(worked_f, worked_g):
    """Classified cover of the worked example."""
    return classify_cover(worked_f, worked_g)


@pytest.fixture
def worked_models(worked_datum):
    """Every curve attached to the worked example."""
    return CoverModels.build(worked_datum)


@pytest.fixture
def genus2_datum():
    """A case II cover: f = x^4 - 2, g = x^2 - 3."""
    return classify_cover(make_poly([-2, 0, 0, 0, 1]), make_poly([-3, 0, 1]))


@pytest.fixture
def empty_overrides():
    """An override file without entries."""
    return OverrideFile()


@pytest.fixture
def curve_file(tmp_path):
    """Write the worked example to a curve file and return its path."""
    path = tmp_path / 'curve.json'
    path.write_text(json.dumps({'f': WORKED_F, 'g': WORKED_G}))
    return path
