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

"""Input and report models of the parity pipeline."""

from ..algebra.poly import make_poly
from ..common.constants import GOOD_PRIME_POLICY
from ..common.overrides import Sign, place_key
from ..common.utils import parse_rational
from ..curves.cover import DoubleCoverDatum, classify_cover
from fractions import Fraction
from functools import reduce
from operator import mul
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import Poly
from typing import Any, Dict, List, Optional, Tuple


class CurveInput(BaseModel):
    """The input file of a run: f and g with coefficients listed lowest degree first."""

    model_config = ConfigDict(extra='forbid')

    f: List[str] = Field(description='Coefficients of f, lowest degree first, as decimal strings')
    g: List[str] = Field(description='Coefficients of g, lowest degree first, as decimal strings')
    override_path: Optional[str] = Field(None, description='Path of an override file')
    places: Optional[List[str]] = Field(
        None, description='Places to evaluate ("inf", "2" or odd primes); all when omitted'
    )

    @field_validator('f', 'g', mode='before')
    @classmethod
    def _stringify(cls, value: Any) -> Any:
        if isinstance(value, (list, tuple)):
            return [str(c) if isinstance(c, (int, Fraction)) else c for c in value]
        return value

    @field_validator('f', 'g')
    @classmethod
    def _rational_coefficients(cls, value: List[str]) -> List[str]:
        parsed = [parse_rational(c) for c in value]
        if not parsed or parsed[-1] == 0:
            raise ValueError('the leading (last) coefficient must be nonzero')
        return value

    @field_validator('places')
    @classmethod
    def _normalize_places(cls, value: Optional[List[str]]) -> Optional[List[str]]:
        if value is None or [p.strip().lower() for p in value] == ['all']:
            return None
        return [place_key(p) for p in value]

    def polynomials(self) -> Tuple[Poly, Poly]:
        """Return f and g as polynomials over QQ."""
        return (
            make_poly(parse_rational(c) for c in self.f),
            make_poly(parse_rational(c) for c in self.g),
        )

    def datum(self) -> DoubleCoverDatum:
        """Classify the cover defined by the input.

        Raises:
            InvalidInputError: If the degree pattern is unsupported
            NotSquarefreeError: If f g has a repeated factor
        """
        return classify_cover(*self.polynomials())


class LocalTermReport(BaseModel):
    """The local term at one place together with every factor that went into it."""

    model_config = ConfigDict(populate_by_name=True, frozen=True)

    place: str = Field(description='The place: "inf", "2" or an odd prime')
    lambda_: Sign = Field(alias='lambda', description='The local term')
    mu_c: Sign = Field(description='Deficiency sign of C')
    mu_d: Sign = Field(description='Deficiency sign of D')
    delta: Sign = Field(description='Deficiency sign of the Prym variety')
    exponent: int = Field(description='Exponent of -1 contributed by the kernel/cokernel ratio')
    methods: Dict[str, str] = Field(
        default_factory=dict, description='How each quantity was obtained, keyed by quantity'
    )
    details: Dict[str, Any] = Field(default_factory=dict, description='Place specific data')

    @model_validator(mode='after')
    def _consistent(self) -> 'LocalTermReport':
        expected = self.delta * self.mu_c * self.mu_d * (-1 if self.exponent % 2 else 1)
        if expected != self.lambda_:
            raise ValueError(f'local term at {self.place} does not match its factors')
        return self


class GlobalParityReport(BaseModel):
    """Local terms at every evaluated place and their product."""

    model_config = ConfigDict(populate_by_name=True)

    input: Dict[str, Any] = Field(description='The cover the report belongs to')
    case: str = Field(description='Case of the Prym variety')
    bad_primes: List[str] = Field(default_factory=list, description='Odd bad primes')
    places: List[LocalTermReport] = Field(default_factory=list, description='Local terms')
    global_product: Optional[Sign] = Field(
        None, description='Product of the local terms; absent for partial reports'
    )
    restricted: bool = Field(False, description='Whether only some places were evaluated')
    parity_statement: Optional[str] = Field(None, description='The parity the product predicts')
    good_prime_policy: str = Field(GOOD_PRIME_POLICY, description='Why good primes are skipped')
    spot_checks: List[LocalTermReport] = Field(
        default_factory=list, description='Local terms evaluated at good primes for checking'
    )
    kernel: Optional[Dict[str, Any]] = Field(
        None, description='Kernel combinatorics, always present for partial reports'
    )
    overrides_used: List[str] = Field(default_factory=list, description='Override entries used')
    combined_sign: Optional[Sign] = Field(
        None, description='Predicted (-1)^(rk2 Jac C) once the Prym parity is supplied'
    )

    @property
    def fully_native(self) -> bool:
        return not self.overrides_used

    @model_validator(mode='after')
    def _product_of_places(self) -> 'GlobalParityReport':
        if self.global_product is not None:
            product = reduce(mul, (term.lambda_ for term in self.places), 1)
            if product != self.global_product:
                raise ValueError('global product differs from the product of the local terms')
        return self

    def term(self, place) -> Optional[LocalTermReport]:
        """Return the local term at a place, if it was evaluated."""
        key = place_key(place)
        return next((t for t in self.places if t.place == key), None)

    def to_json(self) -> Dict[str, Any]:
        """Serialize the report with the ``lambda`` spelling and the native marker."""
        payload = self.model_dump(by_alias=True, exclude_none=True)
        payload['fully_native'] = self.fully_native
        return payload
