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

"""Exception handling for prym-parity commands."""

from ..constants import EXIT_INVALID_INPUT
from ..errors import ParityError
from functools import wraps
from inspect import iscoroutinefunction
from loguru import logger
from typing import Any, Callable, Dict, Optional


ERROR_PARITY = 'Evaluation stopped: {}'
ERROR_INPUT = 'Invalid input: {}. Please check the input and override files.'
ERROR_UNEXPECTED = 'Unexpected error: {}. Please run with --verbose and check the logs.'


def handle_exceptions(func: Callable) -> Callable:
    """Decorator to handle exceptions in CLI commands.

    Wraps the function in a try-catch block and returns any exception in a standardized
    error format carrying the exit code the CLI should use.

    Args:
        func: The function to wrap

    Returns:
        The wrapped function that handles exceptions
    """

    @wraps(func)
    async def wrapper(*args: Any, **kwargs: Any):
        try:
            if iscoroutinefunction(func):
                return await func(*args, **kwargs)
            return func(*args, **kwargs)
        except ParityError as error:
            where = f' at place {error.place}' if error.place else ''
            logger.error(f'Failed with {type(error).__name__}{where}: {error.message}')
            payload = _error_payload(func, error, ERROR_PARITY, error.message)
            payload.update(error.to_dict())
            return payload
        except (ValueError, OSError) as error:
            logger.error(f'Failed with invalid input: {error}')
            return _error_payload(func, error, ERROR_INPUT)
        except Exception as error:
            logger.exception(f'Failed with unexpected error: {error}')
            return _error_payload(func, error, ERROR_UNEXPECTED)

    return wrapper


def _error_payload(
    func: Callable, error: Exception, template: str, message: Optional[str] = None
) -> Dict[str, Any]:
    message = str(error) if message is None else message
    return {
        'error': template.format(message),
        'error_type': type(error).__name__,
        'error_message': message,
        'operation': func.__name__,
        'exit_code': EXIT_INVALID_INPUT,
    }
