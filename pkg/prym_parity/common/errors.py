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

"""Exception hierarchy for prym-parity.

Every error carries the exit code the CLI should terminate with, the place it was raised for
(when there is one) and, where the user can unblock the run, a recipe for the override file.
"""

from .constants import (
    EXIT_INVALID_INPUT,
    EXIT_OVERRIDE_REQUIRED,
    EXIT_RESOURCE_EXHAUSTED,
    EXIT_UNSUPPORTED,
)
from typing import Any, Dict, Optional


class ParityError(Exception):
    """Base class for all prym-parity errors."""

    exit_code: int = EXIT_INVALID_INPUT

    def __init__(
        self,
        message: str,
        place: Optional[str] = None,
        override_recipe: Optional[str] = None,
    ):
        """Create the error.

        Args:
            message: Human readable description
            place: Place ("inf", "2" or an odd prime) the error belongs to
            override_recipe: How to unblock the run through the override file
        """
        super().__init__(message)
        self.message = message
        self.place = place
        self.override_recipe = override_recipe

    def to_dict(self) -> Dict[str, Any]:
        """Serialize the error for the CLI error payload."""
        payload: Dict[str, Any] = {'exit_code': self.exit_code}
        if self.place is not None:
            payload['place'] = self.place
        if self.override_recipe is not None:
            payload['override_recipe'] = self.override_recipe
        return payload


class InvalidInputError(ParityError):
    """The input polynomials do not describe a supported double cover."""


class NotSquarefreeError(InvalidInputError):
    """A polynomial that must be squarefree has a repeated factor."""


class OverrideRequiredError(ParityError):
    """A quantity cannot be computed natively and has no override entry."""

    exit_code = EXIT_OVERRIDE_REQUIRED


class TamagawaUnavailableError(OverrideRequiredError):
    """Tamagawa number needed at a prime where the curve is not semistable."""


class DeficiencyUndeterminedError(OverrideRequiredError):
    """No local point was found, so the deficiency is not decided natively."""


class TwoAdicOverrideRequiredError(OverrideRequiredError):
    """Good ordinary reduction at 2 could not be established."""


class RealLocusUndeterminedError(OverrideRequiredError):
    """The identity component cannot be read off ovals because a real locus is empty."""


class FrobeniusSignUncertifiedError(OverrideRequiredError):
    """The sign of Frobenius on a cycle of the special fibre could not be certified."""


class UnsupportedCaseError(ParityError):
    """The cover belongs to a case that is not evaluated end to end."""

    exit_code = EXIT_UNSUPPORTED

    def __init__(self, message: str, partial_report: Optional[Dict[str, Any]] = None, **kwargs):
        """Create the error with an optional partial report."""
        super().__init__(message, **kwargs)
        self.partial_report = partial_report

    def to_dict(self) -> Dict[str, Any]:
        """Serialize the error, including the partial report when present."""
        payload = super().to_dict()
        if self.partial_report is not None:
            payload['partial_report'] = self.partial_report
        return payload


class ResourceExhaustedError(ParityError):
    """A configured time or precision budget ran out."""

    exit_code = EXIT_RESOURCE_EXHAUSTED


class FactorizationTimeoutError(ResourceExhaustedError):
    """Integer factorization exceeded its time budget."""

    def __init__(self, cofactor: int, **kwargs):
        """Create the error for the cofactor that could not be split."""
        super().__init__(f'Factorization timed out on cofactor {cofactor}', **kwargs)
        self.cofactor = cofactor

    def to_dict(self) -> Dict[str, Any]:
        """Serialize the error, including the unfactored cofactor."""
        payload = super().to_dict()
        payload['cofactor'] = str(self.cofactor)
        return payload


class PrecisionExhaustedError(ResourceExhaustedError):
    """p-adic precision reached its cap before the roots could be separated."""


class ExtensionTooLargeError(ResourceExhaustedError):
    """A finite field extension beyond the configured maximum would be needed."""


class WildRamificationError(ParityError):
    """The splitting field is wildly ramified at the prime."""
