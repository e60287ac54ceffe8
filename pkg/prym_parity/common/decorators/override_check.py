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

"""Override lookup decorator for quantities the user may supply by hand."""

from ..errors import OverrideRequiredError
from ..overrides import OverrideFile
from functools import wraps
from inspect import signature
from loguru import logger
from typing import Any, Callable, Dict, Optional, Tuple


OverrideLookup = Callable[[OverrideFile, Dict[str, Any]], Optional[Tuple[str, int]]]


def override_check(
    lookup: OverrideLookup,
    build: Optional[Callable[[int, Dict[str, Any]], Any]] = None,
    fallback: bool = False,
) -> Callable:
    """Decorator to serve a computed quantity from the override file.

    The wrapped function must take an ``overrides`` argument. ``lookup`` receives the
    override file and the bound arguments of the call and returns the matching key and value,
    or None. Without ``fallback`` an entry replaces the computation outright; with
    ``fallback`` the computation runs first and the entry is only consulted when it raises
    ``OverrideRequiredError``.

    Args:
        lookup: Finds the override entry for a call
        build: Turns the override value into the function's return type
        fallback: Only use the entry when the computation asks for an override

    Returns:
        The decorator
    """

    def decorator(func: Callable) -> Callable:
        func_signature = signature(func)

        def from_override(arguments: Dict[str, Any]) -> Tuple[bool, Any]:
            overrides = arguments.get('overrides')
            if overrides is None:
                return False, None
            entry = lookup(overrides, arguments)
            if entry is None:
                return False, None
            key, value = entry
            logger.warning(f'Using override {key} = {value} in {func.__name__}')
            overrides.record(key)
            return True, value if build is None else build(value, arguments)

        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any):
            bound = func_signature.bind(*args, **kwargs)
            bound.apply_defaults()

            if not fallback:
                found, value = from_override(bound.arguments)
                if found:
                    return value
                return func(*args, **kwargs)

            try:
                return func(*args, **kwargs)
            except OverrideRequiredError:
                found, value = from_override(bound.arguments)
                if found:
                    return value
                raise

        return wrapper

    return decorator
