"""
Command-line entry point: python -m cli.main <command> [options]

Exit codes: 0 every check within tolerance, 1 a check failed (the report is still written),
2 configuration error.
"""

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

from dataclasses_json import dataclass_json

from cli.reports import write_report, write_trajectory
from cli.suites import EXACT_COMMANDS, SUITES, VerificationSuite
from config.settings import RUN_SETTINGS, configure_logging
from model.errors import CMSError, ConfigError
from model.spec import ModelSpec

logger = logging.getLogger(__name__)

MODEL_FLAGS = {
    'kind': 'kind', 'N': 'N', 'g': 'g', 'm': 'm', 'beta': 'beta', 'a': 'a', 'omega1': 'omega1',
    'omega2_imag': 'omega2_imag', 'hbar': 'hbar', 'a_c': 'a_c', 'b_c': 'b_c',
}

PARAM_FLAGS = ('T', 'tol', 'relativistic', 'states', 'lam', 'k', 'degree', 'couplings', 'function', 'points',
               't_far')


@dataclass_json
@dataclass
class RunConfig:
    command: str
    model: Optional[ModelSpec] = None
    params: Dict[str, Any] = field(default_factory=dict)
    seed: int = RUN_SETTINGS['seed']
    output: Optional[str] = None


def _int_list(text: str) -> List[int]:
    try:
        return [int(v) for v in text.split(',') if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'expected comma-separated integers, got {text!r}')


def _text_list(text: str) -> List[str]:
    return [v.strip() for v in text.split(',') if v.strip()]


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--config', help='JSON run configuration or bare model specification')
    common.add_argument('--seed', type=int, help='random seed (default from CMSLAB_SEED)')
    common.add_argument('-o', '--output', help='report path (CSV trajectory path for simulate)')
    common.add_argument('--log-level', help='logging level, e.g. DEBUG')

    model = common.add_argument_group('model')
    model.add_argument('--kind', help='I, II, III, IV or rational/hyperbolic/trigonometric/elliptic')
    model.add_argument('--N', type=int)
    model.add_argument('--g', type=float)
    model.add_argument('--m', type=float)
    model.add_argument('--beta', type=float)
    model.add_argument('--a', type=float)
    model.add_argument('--omega1', type=float)
    model.add_argument('--omega2-imag', dest='omega2_imag', type=float)
    model.add_argument('--hbar', type=float)
    model.add_argument('--a-c', dest='a_c', type=float)
    model.add_argument('--b-c', dest='b_c', type=float)

    parser = argparse.ArgumentParser(prog='cmslab',
                                     description='Calogero-Moser-Sutherland / Ruijsenaars-Schneider laboratory')
    commands = parser.add_subparsers(dest='command', required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        return commands.add_parser(name, parents=[common], help=help_text)

    for name, help_text in (('simulate', 'integrate a trajectory and write it as CSV'),
                            ('audit', 'conservation, Lax equation and involutivity'),
                            ('project', 'projection method against integration'),
                            ('scatter', 'asymptotic momenta and S-matrix')):
        sub = add(name, help_text)
        sub.add_argument('--T', type=float)
        sub.add_argument('--tol', type=float)
        sub.add_argument('--t-far', dest='t_far', type=float)
        if name == 'simulate':
            sub.add_argument('--relativistic', action='store_true', default=None)

    sub = add('rs-audit', 'relativistic integrals, Lax matrix and Poincaré algebra')
    sub.add_argument('--states', type=int)
    sub.add_argument('--T', type=float)
    sub.add_argument('--tol', type=float)

    sub = add('duality', 'rational action-angle map and self-duality')
    sub.add_argument('--states', type=int)
    sub.add_argument('--couplings', type=_text_list)

    sub = add('dunkl-check', 'exact Dunkl operator identities')
    sub.add_argument('--degree', type=int)
    sub.add_argument('--couplings', type=_text_list)

    sub = add('jack', 'Jack polynomial as a type III eigenfunction')
    sub.add_argument('--lam', type=_int_list, help='partition, e.g. 2,1,0')
    sub.add_argument('--k', help='exact coupling, e.g. 1/2')

    # --m is read as the integer m of g = −m here, not as a mass
    add('ba', 'Baker-Akhiezer function at integer coupling g = -m')

    sub = add('adop-check', 'commutativity of the analytic difference operators')
    sub.add_argument('--r', type=int)
    sub.add_argument('--s', type=int)
    sub.add_argument('--function', help='plane-wave, trig-mix, polynomial or gaussian')
    sub.add_argument('--points', type=int)

    add('special', 'Weierstrass, Gamma and degeneration checks')
    return parser


def _read_config_file(path: str) -> dict:
    try:
        with open(path, encoding='utf-8') as f:
            data = json.load(f)
    except OSError as e:
        raise ConfigError(f'cannot read config {path}: {e}') from e
    except json.JSONDecodeError as e:
        raise ConfigError(f'config {path} is not valid JSON: {e}') from e
    if not isinstance(data, dict):
        raise ConfigError(f'config {path} must hold a JSON object')
    # a bare model specification is accepted as well
    if not {'model', 'params', 'command', 'seed', 'output'} & set(data):
        return {'model': data}
    unknown = set(data) - {'model', 'params', 'command', 'seed', 'output'}
    if unknown:
        raise ConfigError(f'unknown fields in run configuration: {sorted(unknown)}')
    return data


def build_run_config(args: argparse.Namespace) -> RunConfig:
    """Config file first, command-line flags on top."""
    file_data = _read_config_file(args.config) if args.config else {}
    if file_data.get('command') not in (None, args.command):
        raise ConfigError(f"config is for {file_data['command']!r}, command line asks for {args.command!r}")

    model_data = dict(file_data.get('model') or {})
    for flag, key in MODEL_FLAGS.items():
        value = getattr(args, flag, None)
        if value is not None:
            model_data[key] = value

    params = dict(file_data.get('params') or {})
    for flag in PARAM_FLAGS:
        value = getattr(args, flag, None)
        if value is not None:
            params[flag] = value
    if getattr(args, 'r', None) is not None or getattr(args, 's', None) is not None:
        if args.r is None or args.s is None:
            raise ConfigError('--r and --s go together')
        params['pairs'] = [[args.r, args.s]]

    if args.command in EXACT_COMMANDS:
        if args.command == 'ba' and 'm' in model_data:
            params.setdefault('m', model_data.pop('m'))
        for key in ('N', 'a'):
            if key in model_data:
                params.setdefault(key, model_data[key])
        model = ModelSpec.load(model_data) if {'kind', 'g'} <= set(model_data) else None
    else:
        model_data.setdefault('N', RUN_SETTINGS['N'])
        if 'kind' not in model_data or 'g' not in model_data:
            raise ConfigError(f'{args.command} needs a model: pass --config or at least --kind and --g')
        model = ModelSpec.load(model_data)

    seed = args.seed if args.seed is not None else file_data.get('seed', RUN_SETTINGS['seed'])
    if not isinstance(seed, int) or seed < 0:
        raise ConfigError(f'seed must be a nonnegative integer, got {seed!r}')
    return RunConfig(command=args.command, model=model, params=params, seed=seed,
                     output=args.output or file_data.get('output'))


def _report_path(config: RunConfig) -> str:
    if config.command == 'simulate':
        return os.path.splitext(_trajectory_path(config))[0] + '.json'
    return config.output or os.path.join(RUN_SETTINGS['output_dir'], f'{config.command}.json')


def _trajectory_path(config: RunConfig) -> str:
    return config.output or os.path.join(RUN_SETTINGS['output_dir'], 'trajectory.csv')


def run(argv: List[str] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code in (0, None) else 2

    verification_logger = configure_logging(args.log_level)
    try:
        config = build_run_config(args)
    except ConfigError as e:
        print(f'configuration error: {e}', file=sys.stderr)
        return 2
    logger.debug('run configuration: %s', config.to_json())

    suite = VerificationSuite(config.command, config.seed, verification_logger)
    logger.info('running %s (seed %d)', config.command, config.seed)
    try:
        SUITES[config.command](suite, config.model, config.params)
    except ConfigError as e:
        print(f'configuration error: {e}', file=sys.stderr)
        return 2
    except CMSError as e:
        logger.error('%s aborted: %s', config.command, e)
        suite.checks.append({'name': config.command, 'error': str(e), 'passed': False})

    if suite.trajectory is not None:
        write_trajectory(suite.trajectory, _trajectory_path(config))
    report = suite.report(config.model, config.params)
    path = write_report(report, _report_path(config))

    for line in suite.lines:
        print(line)
    failed = report['failed']
    print(f'{len(suite.checks) - failed}/{len(suite.checks)} checks passed, report: {path}', file=sys.stderr)
    for entry in suite.checks:
        if not entry['passed']:
            detail = entry.get('error') or f"value {entry['value']:.6e}"
            print(f"  failed: {entry['name']} ({detail})", file=sys.stderr)
    return 0 if suite.passed else 1


def main():
    sys.exit(run())


if __name__ == '__main__':
    main()
