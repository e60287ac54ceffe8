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

"""Constants for prym-parity."""

# Version
PRYM_PARITY_VERSION = '0.1.0'

# Environment variable prefix for configuration
ENV_PREFIX = 'PRYM_PARITY'

# Exit codes
EXIT_OK = 0
EXIT_INVALID_INPUT = 1
EXIT_OVERRIDE_REQUIRED = 2
EXIT_UNSUPPORTED = 3
EXIT_RESOURCE_EXHAUSTED = 4

# Defaults
DEFAULT_PADIC_PRECISION = 50
DEFAULT_PADIC_PRECISION_CAP = 400
DEFAULT_TWO_ADIC_MAX_EXTENSION = 6
DEFAULT_FACTOR_TIMEOUT = 120.0
DEFAULT_TRIAL_DIVISION_LIMIT = 10**6
DEFAULT_PRESCAN_INTEGER_BOUND = 10**4
DEFAULT_PRESCAN_FRACTION_BOUND = 60
DEFAULT_SOLUBILITY_SEARCH_LIMIT = 10**5
DEFAULT_SOLUBILITY_MAX_DEPTH = 40

# Places and curve roles
PLACE_INFINITY = 'inf'
ROLE_C = 'C'
ROLE_D = 'D'
ROLE_PRYM1 = 'Prym1'
ROLE_PRYM2 = 'Prym2'
CURVE_ROLES = (ROLE_C, ROLE_PRYM1, ROLE_PRYM2, ROLE_D)

# Method tags
METHOD_CLUSTER = 'cluster'
METHOD_OVERRIDE = 'override'
METHOD_NATIVE = 'native'

# Override recipes
RECIPE_TAMAGAWA = 'add {{"tamagawa": {{"{role}@{place}": <positive integer>}}}} to the override file'
RECIPE_MU = 'add {{"mu": {{"{role}@{place}": 1 | -1}}}} to the override file'
RECIPE_LAMBDA2 = 'add {"lambda2": 1 | -1} to the override file'
RECIPE_REAL_KERNEL = 'add {"real_kernel_identity": <power of 2>} to the override file'

# Report texts
GOOD_PRIME_POLICY = (
    'primes outside the bad set are not evaluated: C, D and the Prym have good reduction '
    'there and local points, so every Tamagawa number, deficiency and kernel term is trivial '
    'and the local term is +1'
)
