# -*- coding: utf-8 -*-

# Copyright 2026,  The neumirror developers
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
#

# Console entry point `neumirror`, installed by setuptools.  Every subcommand maps to
# a class in neumirror.management.commands.

import argparse
import logging
import sys

from neumirror.core.config import NeumirrorConfig
from neumirror.core.exceptions import NeumirrorError
from neumirror.core.log import LOG_LEVELS, setup_logging
from neumirror.management import commands
from neumirror.version import __version__

logger = logging.getLogger(__name__)


def _domain_args(parser, alpha=True):
    parser.add_argument('domain',
                        help='A domain JSON file or a preset name '
                             '(example1, example2, disk, rect-1x2, square).')
    if alpha:
        parser.add_argument('--alpha',
                            type=float,
                            default=None,
                            help='Override the angle alpha from the domain file.')


def _invariance_args(parser):
    parser.add_argument('--dt-ladder',
                        type=float,
                        nargs='+',
                        default=None,
                        help='Time steps to compare.  Default: 100, 10 and 1 times the '
                             'configured dt.')
    parser.add_argument('--t-max',
                        type=float,
                        default=None,
                        help='Horizon of every path.')
    parser.add_argument('--paths',
                        type=int,
                        default=None,
                        help='Paths per start pair.')
    parser.add_argument('--starts',
                        type=int,
                        default=20,
                        help='Number of start pairs taken from the Lyapunov set.')


def _spectral_args(parser):
    parser.add_argument('--h',
                        type=float,
                        default=None,
                        help='Coarsest mesh size.  Default: the configured fraction of '
                             'the diameter.')
    parser.add_argument('--levels',
                        type=int,
                        default=None,
                        help='Number of meshes in the ladder, each halving h.')
    parser.add_argument('--k',
                        type=int,
                        default=None,
                        help='Number of eigenpairs per mesh.')


def build_parser():
    parser = argparse.ArgumentParser(prog='neumirror')

    parser.add_argument('-v', '--version',
                        action='version',
                        version=__version__)
    parser.add_argument('--seed',
                        type=int,
                        default=0,
                        help='Root seed of every random stream.')
    parser.add_argument('--threads',
                        type=int,
                        default=None,
                        help='Worker threads.  Results do not depend on this.')
    parser.add_argument('--out-dir',
                        default='.',
                        help='Directory for artifacts and the run manifest.')
    parser.add_argument('--json',
                        default=False,
                        action='store_true',
                        help='Write the machine-readable summary to stdout.')
    parser.add_argument('--config',
                        default=None,
                        help='Configuration file to use instead of the search path.')
    parser.add_argument('--log-level',
                        default=None,
                        choices=sorted(LOG_LEVELS),
                        help='Console log level.  Default: log_level from the config.')

    subparsers = parser.add_subparsers(title='subcommands',
                                       description='available subcommands')

    validate_parser = subparsers.add_parser(
        'validate',
        help='check that a domain is closed and convex')
    _domain_args(validate_parser)
    validate_parser.set_defaults(command=commands.ValidateCommand)

    special_parser = subparsers.add_parser(
        'special-points',
        help='compute P1..Q6 and their primes')
    _domain_args(special_parser)
    special_parser.set_defaults(command=commands.SpecialPointsCommand)

    assumptions_parser = subparsers.add_parser(
        'check-assumptions',
        help='check Assumptions 1 to 5')
    _domain_args(assumptions_parser)
    assumptions_parser.add_argument('--scan-alpha',
                                    nargs=3,
                                    metavar=('START', 'STOP', 'N'),
                                    default=None,
                                    help='Also run every check on N alphas in [START, STOP].')
    assumptions_parser.set_defaults(command=commands.CheckAssumptionsCommand)

    lyapunov_parser = subparsers.add_parser(
        'lyapunov',
        help='build the Lyapunov set in the chart')
    _domain_args(lyapunov_parser)
    lyapunov_parser.set_defaults(command=commands.LyapunovCommand)

    simulate_parser = subparsers.add_parser(
        'simulate',
        help='simulate one mirror-coupled path')
    _domain_args(simulate_parser)
    simulate_parser.add_argument('--x', type=float, nargs=2, default=None,
                                 help='Start of the first process.')
    simulate_parser.add_argument('--y', type=float, nargs=2, default=None,
                                 help='Start of the second process.')
    simulate_parser.add_argument('--dt', type=float, default=None)
    simulate_parser.add_argument('--t-max', type=float, default=None)
    simulate_parser.add_argument('--stride', type=int, default=None,
                                 help='Record every STRIDE steps.')
    simulate_parser.add_argument('--stream', type=int, default=0,
                                 help='Random stream of the path.')
    simulate_parser.add_argument('--no-check',
                                 default=False,
                                 action='store_true',
                                 help='Do not require the start pair to lie in T.')
    simulate_parser.add_argument('--no-lyapunov',
                                 default=False,
                                 action='store_true',
                                 help='Skip the chart; only the two processes are tracked.')
    simulate_parser.set_defaults(command=commands.SimulateCommand)

    invariance_parser = subparsers.add_parser(
        'invariance',
        help='Monte Carlo exit statistics of the Lyapunov set')
    _domain_args(invariance_parser)
    _invariance_args(invariance_parser)
    invariance_parser.add_argument('--separation',
                                   default=False,
                                   action='store_true',
                                   help='Also estimate the separation constants at t=1.')
    invariance_parser.add_argument('--drift',
                                   default=False,
                                   action='store_true',
                                   help='Also measure the drift identity residual.')
    invariance_parser.set_defaults(command=commands.InvarianceCommand)

    eigen_parser = subparsers.add_parser(
        'eigen',
        help='Neumann eigenvalues on a mesh ladder')
    _domain_args(eigen_parser, alpha=False)
    _spectral_args(eigen_parser)
    eigen_parser.set_defaults(command=commands.EigenCommand)

    analyze_parser = subparsers.add_parser(
        'analyze',
        help='structure of the second eigenfunction')
    _domain_args(analyze_parser)
    _spectral_args(analyze_parser)
    analyze_parser.add_argument('--pairs', type=int, default=None,
                                help='Pairs sampled from T for the monotonicity check.')
    analyze_parser.add_argument('--force',
                                default=False,
                                action='store_true',
                                help='Analyze even when mu2 is not certified simple.')
    analyze_parser.add_argument('--no-lyapunov',
                                default=False,
                                action='store_true',
                                help='Only hot spots and the nodal line.')
    analyze_parser.set_defaults(command=commands.AnalyzeCommand)

    heat_parser = subparsers.add_parser(
        'heat-check',
        help='compare finite element heat flow with reflected path averages')
    _domain_args(heat_parser, alpha=False)
    heat_parser.add_argument('--bump', type=float, nargs=3, metavar=('CX', 'CY', 'R'),
                             default=None,
                             help='Initial bump.  Default: centred, half the inradius.')
    heat_parser.add_argument('--time', type=float, default=1.0)
    heat_parser.add_argument('--points', type=float, nargs='+', default=None,
                             help='Evaluation points as x1 y1 x2 y2 ...')
    heat_parser.add_argument('--paths', type=int, default=None)
    heat_parser.add_argument('--dt', type=float, default=None)
    heat_parser.add_argument('--h', type=float, default=None)
    heat_parser.set_defaults(command=commands.HeatCheckCommand)

    plot_parser = subparsers.add_parser(
        'plot',
        help='render an artifact as SVG')
    plot_parser.add_argument('artifact',
                             help='A JSON artifact or a coupling CSV.')
    plot_parser.add_argument('output',
                             help='SVG file to write.')
    plot_parser.add_argument('--overlay', default=None,
                             help='A lyapunov artifact under a coupling path, or the '
                                  'reverse.')
    plot_parser.set_defaults(command=commands.PlotCommand)

    pipeline_parser = subparsers.add_parser(
        'pipeline',
        help='run every stage and write the verdict table')
    _domain_args(pipeline_parser)
    _invariance_args(pipeline_parser)
    _spectral_args(pipeline_parser)
    pipeline_parser.add_argument('--pairs', type=int, default=None)
    pipeline_parser.add_argument('--skip-invariance',
                                 default=False,
                                 action='store_true',
                                 help='Leave out the Monte Carlo stage.')
    pipeline_parser.set_defaults(command=commands.PipelineCommand)

    config_parser = subparsers.add_parser(
        'config',
        help='dump the effective configuration')
    config_parser.set_defaults(command=commands.ConfigCommand)

    init_parser = subparsers.add_parser(
        'init',
        help='write the default configuration file',
        description='Writes the default configuration to ~/.neumirror/neumirror.yaml.')
    init_parser.add_argument('--force',
                             default=False,
                             action='store_true',
                             help='Overwrite an existing file.')
    init_parser.set_defaults(command=commands.InitCommand)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    if not getattr(args, 'command', None):
        parser.print_help()
        sys.exit(1)

    try:
        config = NeumirrorConfig(args.config)
        setup_logging(args.log_level or config.log_level, config.log_dir)
        exit_code = args.command(args, parser=parser, config=config)()
    except NeumirrorError as e:
        logger.debug('Command failed', exc_info=True)
        commands.report_error(e, as_json=args.json)
        exit_code = e.exit_code

    sys.exit(exit_code)


if __name__ == '__main__':
    main()
