"""
Command-line front end

Exit codes: 0 success, 1 failed verification, 2 usage error,
3 domain or numerical error.
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

import numpy as np
import pandas as pd
from pydantic import ValidationError

from config import settings
from src.generating.series import GeneratingSlice, generating_residual
from src.hierarchy.seeds import Seed
from src.hierarchy.tower import build_tower, cl_tower, eval_tower, sl_tower
from src.phase.paths import PathSpec
from src.phase.unwrap import unwrap_phase
from src.storage.exporters import TableExporter
from src.theta.jacobi import TauParameter, theta1_normalized
from src.utils.errors import ConfigError, HierarchyError
from src.utils.helpers import setup_logging
from src.utils.validators import SUITE_CHOICES, CliConfig
from src.verification.suites import SuiteConfig, run_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_DOMAIN = 3

DEFAULT_GRIDS = {
    'theta': (0.1, 0.9, 81),
    'tower': (0.1, 0.9, 9),
    'generating': (0.25, 0.75, 11),
    'phase': (0.1, 0.9, 2),
}


def _add_tau(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--tau-re', type=float, default=0.0, help='Re(tau)')
    parser.add_argument('--tau-im', type=float, default=1.0, help='Im(tau), at least TAU_MIN')


def _add_grid(parser: argparse.ArgumentParser, name: str) -> None:
    lo, hi, points = DEFAULT_GRIDS[name]
    parser.add_argument('--grid', nargs=3, metavar=('LO', 'HI', 'POINTS'), default=[lo, hi, points],
                        help=f'evaluation grid (default {lo} {hi} {points})')


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--format', dest='output_format', choices=['csv', 'json'], default='csv')
    parser.add_argument('--output', dest='output_path', default=None,
                        help='output file, relative to CLAUSEN_OUTPUT_DIR (default stdout)')


def _add_seed(parser: argparse.ArgumentParser) -> None:
    parser.add_argument('--seed', dest='seed_kind', choices=['polylog', 'circular', 'elliptic'], default='circular')
    parser.add_argument('--n', dest='order', type=int, default=2, help='highest order N')
    parser.add_argument('--interp-tol', type=float, default=None, help='relative interpolation tolerance')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='clausen-hierarchy',
        description='Theta functions, Clausen-type towers and their verification suites',
    )
    parser.add_argument('--log-level', default=None, help='logging level (default LOG_LEVEL)')
    subparsers = parser.add_subparsers(dest='subcommand', required=True)

    theta = subparsers.add_parser('theta', help='normalized theta function on a real grid')
    _add_tau(theta)
    _add_grid(theta, 'theta')
    _add_output(theta)

    tower = subparsers.add_parser('tower', help='tower levels F_n with CL/SL projections')
    _add_seed(tower)
    _add_tau(tower)
    _add_grid(tower, 'tower')
    _add_output(tower)

    verify = subparsers.add_parser('verify', help='run verification suites')
    verify.add_argument('--suite', dest='suites', nargs='+', default=['all'],
                        help=f"one or more of {', '.join(SUITE_CHOICES)}")
    verify.add_argument('--sample-seed', type=int, default=settings.SUITE_SEED)
    verify.add_argument('--output', dest='output_path', default=None)

    generating = subparsers.add_parser('generating', help='generating-series residual sweep')
    _add_seed(generating)
    _add_tau(generating)
    _add_grid(generating, 'generating')
    generating.add_argument('--lambda', dest='lam', type=float, default=0.5)
    generating.add_argument('--h', dest='fd_step', type=float, default=1e-4, help='central difference step')
    generating.add_argument('--uncorrected', '--paper-form', '--printed-form', dest='uncorrected',
                            action='store_true',
                            help='report the residual without the F1\' and truncation terms')
    _add_output(generating)

    phase = subparsers.add_parser('phase', help='unwrapped argument profile of the normalized theta function')
    _add_tau(phase)
    _add_grid(phase, 'phase')
    phase.add_argument('--path', dest='waypoints', nargs='+', default=None,
                       help='polyline waypoints such as 0.1 0.5+0.2j 0.9 (default: real grid segment)')
    _add_output(phase)
    return parser


def _config_from_args(args: argparse.Namespace) -> CliConfig:
    values = {key: value for key, value in vars(args).items() if value is not None and key != 'log_level'}
    grid = values.pop('grid', None)
    if grid is not None:
        values['grid_lo'], values['grid_hi'], values['grid_points'] = grid
    return CliConfig(**values)


def _seed(config: CliConfig) -> Seed:
    if config.seed_kind == 'elliptic':
        return Seed.elliptic(TauParameter(config.tau))
    return Seed(config.seed_kind)


def _tower(config: CliConfig, order: int):
    return build_tower(_seed(config), max(order, 2), interp_tol=config.interp_tol)


def _export(config: CliConfig, frame: pd.DataFrame) -> None:
    exporter = TableExporter(config.output_path)
    if config.output_format == 'json':
        exporter.write_json(json.dumps(frame.to_dict(orient='records'), indent=2))
    else:
        exporter.write_table(frame)


def cmd_theta(config: CliConfig) -> int:
    """θ̃₁ on the grid with the argument unwrapped along the real axis"""
    tau = TauParameter(config.tau)
    x = config.grid()
    values = np.asarray(theta1_normalized(x, tau))
    args = np.zeros_like(x)
    positive = x > 0.0
    if np.count_nonzero(positive) >= 2:
        start = x[positive][0]
        profile = unwrap_phase(tau, PathSpec.segment(start, x[-1]))
        args[positive] = profile.arg_at(x[positive] - start)
    elif np.any(positive):
        args[positive] = np.angle(values[positive])
    frame = pd.DataFrame({
        'x': x,
        're': values.real,
        'im': values.imag,
        'abs': np.abs(values),
        'arg_unwrapped': args,
    })
    _export(config, frame)
    return EXIT_OK


def cmd_tower(config: CliConfig) -> int:
    """Rows (x, n) in x-major order with F_n and its CL/SL projections"""
    tower = _tower(config, config.order)
    if config.output_format == 'json':
        TableExporter(config.output_path).write_json(tower.to_json())
        return EXIT_OK
    rows = []
    for x in config.grid():
        for n in range(1, config.order + 1):
            value = eval_tower(tower, n, x)
            rows.append({
                'x': x,
                'n': n,
                're_F': value.real,
                'im_F': value.imag,
                'A': cl_tower(tower, n, x),
                'B': sl_tower(tower, n, x),
            })
    _export(config, pd.DataFrame(rows, columns=['x', 'n', 're_F', 'im_F', 'A', 'B']))
    return EXIT_OK


def cmd_verify(config: CliConfig) -> int:
    """Run the selected suites; JSON report on stdout or to the output file"""
    suite_config = SuiteConfig(seed=config.sample_seed)
    reports = [run_suite(name, suite_config) for name in config.selected_suites()]
    for report in reports:
        print(report.summary(), file=sys.stderr)
        for check in report.failed:
            print(f"    ✗ {check.check_id}: {check.measured:.3e} (bound {check.relation} {check.bound:.3e})",
                  file=sys.stderr)
    if len(reports) == 1:
        text = reports[0].to_json()
    else:
        text = json.dumps([report.model_dump(by_alias=True) for report in reports], indent=2)
    TableExporter(config.output_path).write_json(text)
    return EXIT_OK if all(report.overall_pass for report in reports) else EXIT_VERIFY_FAILED


def cmd_generating(config: CliConfig) -> int:
    """Residual of the truncated generating equation over the w grid"""
    tower = _tower(config, config.order)
    slice_ = GeneratingSlice(tower, config.order, config.lam)
    rows = []
    for w in config.grid():
        residual = generating_residual(slice_, w, config.fd_step, uncorrected=config.uncorrected)
        rows.append({
            'w': w,
            'lambda': config.lam,
            'abs_residual': abs(residual),
            're_residual': residual.real,
            'im_residual': residual.imag,
        })
    _export(config, pd.DataFrame(rows, columns=['w', 'lambda', 'abs_residual', 're_residual', 'im_residual']))
    return EXIT_OK


def cmd_phase(config: CliConfig) -> int:
    """Samples of the unwrapped argument along a polyline"""
    tau = TauParameter(config.tau)
    points = config.path_points() or [config.grid_lo, config.grid_hi]
    profile = unwrap_phase(tau, PathSpec(tuple(points)))
    frame = pd.DataFrame({
        's': profile.parameters,
        're_z': profile.positions.real,
        'im_z': profile.positions.imag,
        'unwrapped_arg': profile.unwrapped_arg,
    })
    _export(config, frame)
    return EXIT_OK


COMMANDS = {
    'theta': cmd_theta,
    'tower': cmd_tower,
    'verify': cmd_verify,
    'generating': cmd_generating,
    'phase': cmd_phase,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, dispatch the subcommand and map errors to exit codes"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK

    setup_logging(args.log_level)
    try:
        settings.validate()
    except ValueError as e:
        print(f"✗ Configuration Error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        config = _config_from_args(args)
    except ValidationError as e:
        print(f"✗ Invalid arguments: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return COMMANDS[config.subcommand](config)
    except ConfigError as e:
        print(f"✗ {e}", file=sys.stderr)
        return EXIT_USAGE
    except HierarchyError as e:
        logger.debug("command failed", exc_info=True)
        print(f"✗ {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_DOMAIN


def run() -> None:
    """Console script entry point"""
    sys.exit(main())
