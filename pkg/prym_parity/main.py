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

"""prym-parity command line interface."""

import argparse
import asyncio
import json
import sys
from .common.constants import EXIT_OK, PRYM_PARITY_VERSION
from .common.context import ParityContext
from .common.decorators.handle_exceptions import handle_exceptions
from .common.overrides import OverrideFile
from .common.utils import convert_fractions_to_string
from .pipeline.models import CurveInput
from .pipeline.runner import describe_cover, run_pipeline
from loguru import logger
from pathlib import Path
from typing import Any, Dict, List, Optional


def _read_input(args: argparse.Namespace) -> CurveInput:
    payload = json.loads(Path(args.input).read_text())
    if args.override is not None:
        payload['override_path'] = args.override
    if args.places is not None:
        payload['places'] = [p.strip() for p in args.places.split(',') if p.strip()]
    return CurveInput.model_validate(payload)


@handle_exceptions
async def compute(args: argparse.Namespace) -> Dict[str, Any]:
    """Evaluate the local formula and return the report as JSON data."""
    curve = _read_input(args)
    overrides = OverrideFile.load(curve.override_path)
    report = await run_pipeline(
        curve,
        overrides=overrides,
        spot_check_good_primes=args.spot_check_good_primes,
        shift=args.shift,
        prym_sign=args.prym_sign,
    )
    return report.to_json()


@handle_exceptions
async def describe(args: argparse.Namespace) -> Dict[str, Any]:
    """Describe the cover without evaluating any local term."""
    return await asyncio.to_thread(describe_cover, _read_input(args).datum())


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='prym-parity',
        description='Local-formula parity of 2-infinity Selmer ranks for Prym double covers',
    )
    parser.add_argument('--version', action='version', version=PRYM_PARITY_VERSION)
    commands = parser.add_subparsers(dest='command', required=True)

    for name, text in (
        ('compute', 'Evaluate every local term and the global product'),
        ('describe', 'Print the case, Prym variety, cover model and kernel'),
    ):
        command = commands.add_parser(name, help=text)
        command.add_argument('--input', required=True, help='JSON file with f and g')
        command.add_argument('--override', default=None, help='JSON override file')
        command.add_argument('--places', default=None, help='all, or e.g. "inf,2,1201"')
        command.add_argument('--out', default=None, help='Write the JSON result here')
        command.add_argument('--verbose', action='store_true', help='Log at DEBUG level')

    compute_parser = commands.choices['compute']
    compute_parser.add_argument(
        '--spot-check-good-primes',
        type=int,
        default=0,
        help='Also evaluate this many good odd primes and check that each term is +1',
    )
    compute_parser.add_argument(
        '--prym-sign', type=int, choices=(1, -1), default=None, help='Known (-1)^(rk2 Prym)'
    )
    compute_parser.add_argument('--shift', default=None, help='Apply x -> x + shift first')
    compute_parser.add_argument('--factor-timeout', type=float, default=None)
    compute_parser.add_argument('--padic-precision', type=int, default=None)
    compute_parser.add_argument('--padic-precision-cap', type=int, default=None)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Run the command line interface and return the exit code."""
    args = _parser().parse_args(argv)

    logger.remove()
    logger.add(sys.stderr, level='DEBUG' if args.verbose else 'INFO')
    ParityContext.initialize(
        factor_timeout=getattr(args, 'factor_timeout', None),
        padic_precision=getattr(args, 'padic_precision', None),
        padic_precision_cap=getattr(args, 'padic_precision_cap', None),
    )
    logger.info(f'prym-parity v{PRYM_PARITY_VERSION}: {args.command}')

    command = compute if args.command == 'compute' else describe
    result = asyncio.run(command(args))
    text = json.dumps(convert_fractions_to_string(result), indent=2)
    if args.out is not None:
        Path(args.out).write_text(text + '\n')
        logger.info(f'Report written to {args.out}')
    else:
        print(text)
    return int(result.get('exit_code', EXIT_OK))


if __name__ == '__main__':
    sys.exit(main())
