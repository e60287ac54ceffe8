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

"""Override file model.

The override file lets a user supply quantities that are not computed natively, for example
Tamagawa numbers at primes of non-semistable reduction::

    {"tamagawa": {"C@7": 2}, "mu": {"D@3": 1}, "lambda2": -1}
"""

from .constants import CURVE_ROLES, PLACE_INFINITY
from pathlib import Path
from pydantic import BaseModel, ConfigDict, Field, PositiveInt, PrivateAttr, field_validator
from sympy import isprime
from typing import Dict, List, Literal, Optional, Set, Tuple, Union


Sign = Literal[1, -1]


def place_key(place: Union[int, str]) -> str:
    """Normalize a place to its report spelling ("inf", "2", "1201", ...)."""
    if isinstance(place, str) and place.strip().lower() in (PLACE_INFINITY, 'infinity', 'oo'):
        return PLACE_INFINITY
    return str(int(place))


def parse_override_key(key: str) -> Tuple[str, str]:
    """Split and validate a ``<role>@<place>`` key.

    Args:
        key: Key as written in the override file

    Returns:
        The role and the normalized place

    Raises:
        ValueError: If the role is unknown or the place is neither "inf" nor a prime
    """
    role, sep, place = key.partition('@')
    if not sep:
        raise ValueError(f"Override key '{key}' must have the form <role>@<place>")
    if role not in CURVE_ROLES:
        raise ValueError(f"Unknown curve role '{role}' in '{key}'; expected one of {CURVE_ROLES}")
    try:
        normalized = place_key(place)
    except ValueError:
        raise ValueError(f"Invalid place '{place}' in override key '{key}'") from None
    if normalized != PLACE_INFINITY and not isprime(int(normalized)):
        raise ValueError(f"Place '{place}' in override key '{key}' is not a prime")
    return role, normalized


class OverrideFile(BaseModel):
    """User supplied values for quantities that are not computed natively."""

    model_config = ConfigDict(extra='forbid', frozen=True)

    tamagawa: Dict[str, PositiveInt] = Field(
        default_factory=dict,
        description='Tamagawa numbers keyed by "<role>@<prime>"',
    )
    mu: Dict[str, Sign] = Field(
        default_factory=dict,
        description='Deficiency signs keyed by "<role>@<place>"',
    )
    lambda2: Optional[Sign] = Field(
        None, description='The whole local term at 2, used when good ordinary reduction fails'
    )
    real_kernel_identity: Optional[PositiveInt] = Field(
        None, description='Kernel elements on the identity component at the real place'
    )

    _applied: Set[str] = PrivateAttr(default_factory=set)

    @field_validator('tamagawa', 'mu')
    @classmethod
    def _normalize_keys(cls, value: Dict[str, int]) -> Dict[str, int]:
        normalized = {}
        for key, entry in value.items():
            role, place = parse_override_key(key)
            normalized[f'{role}@{place}'] = entry
        return normalized

    @field_validator('real_kernel_identity')
    @classmethod
    def _power_of_two(cls, value: Optional[int]) -> Optional[int]:
        if value is not None and value & (value - 1):
            raise ValueError('real_kernel_identity must be a power of 2')
        return value

    def tamagawa_for(self, role: str, place: Union[int, str]) -> Optional[int]:
        """Look up a Tamagawa number override."""
        return self.tamagawa.get(f'{role}@{place_key(place)}')

    def mu_for(self, role: str, place: Union[int, str]) -> Optional[int]:
        """Look up a deficiency override."""
        return self.mu.get(f'{role}@{place_key(place)}')

    def record(self, key: str) -> None:
        """Remember that an entry replaced a computed quantity."""
        self._applied.add(key)

    @property
    def applied(self) -> List[str]:
        """Entries that were used so far, sorted."""
        return sorted(self._applied)

    @property
    def is_empty(self) -> bool:
        """Whether the file overrides nothing."""
        return (
            not self.tamagawa
            and not self.mu
            and self.lambda2 is None
            and self.real_kernel_identity is None
        )

    @classmethod
    def load(cls, path: Union[str, Path, None]) -> 'OverrideFile':
        """Read an override file, or return an empty one when no path is given."""
        if path is None:
            return cls()
        return cls.model_validate_json(Path(path).read_text())
