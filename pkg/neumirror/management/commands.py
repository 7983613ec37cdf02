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

import logging
import os
import shutil
import sys
import textwrap

import numpy as np

from neumirror.assumptions.utils import run_all, scan_alpha
from neumirror.core.config import DEFAULT_CONFIG_LOCATION, NeumirrorConfig
from neumirror.core.constants import ExitCode, Multiplicity, Verdict
from neumirror.core.exceptions import AssumptionFailure, InputError, NeumirrorError
from neumirror.core.log import package_logger, setup_logfile_logger
from neumirror.core.utils import dumps_canonical
from neumirror.coupling.models import SimConfig
from neumirror.coupling.stepping import simulate
from neumirror.coupling.workflows import (
    chart_starts,
    drift_diagnostic,
    drift_ladder,
    estimate_separation,
    invariance_mc,
)
from neumirror.geometry.utils import domain_to_dict
from neumirror.hinges.special import compute_special_points
from neumirror.lyapunov.utils import assemble
from neumirror.management.models import RunManifest
from neumirror.management.plotting import render_artifact, write_svg
from neumirror.management.presets import resolve_domain, template_environment
from neumirror.management.utils import artifact_document, read_artifact, write_csv, write_json
from neumirror.spectral.analysis import analyze_eigenfunction, solve_ladder
from neumirror.spectral.heat import Bump, heat_cross_check

logger = logging.getLogger(__name__)

# Pass thresholds for the stage verdicts
EXIT_FRACTION_LIMIT = 0.02
MONOTONE_FRACTION = 0.999
SIGN_VIOLATION_FRACTION = 0.001
CONE_FRACTION = 0.99

# arguments that change where or how loudly a run reports, not what it computes
NON_INPUT_ARGS = ('command', 'config', 'json', 'log_level', 'out_dir', 'threads')


class Colors(object):
    ENDC = '\033[0m'
    BLACK = ''
    ERROR = '\033[1;31m'
    WARN = '\033[0;33m'
    INFO = '\033[0;36m'
    VALUE = '\033[0;34m'


def _write(fp, msg, color):
    if color and getattr(fp, 'isatty', lambda: False)():
        msg = color + msg + Colors.ENDC
    fp.write(msg)


def report_error(error, as_json=False):
    """
    Print a NeumirrorError the way the command line reports it.
    """
    if as_json:
        sys.stdout.write(dumps_canonical(error.to_dict()))
        return
    _write(sys.stderr, textwrap.fill(str(error), width=100, **BaseCommand.ERROR_INDENT),
           Colors.ERROR)
    sys.stderr.write('\n')


def verdict_of_multiplicity(multiplicity):
    return {
        Multiplicity.SIMPLE: Verdict.PASS,
        Multiplicity.DOUBLE: Verdict.FAIL,
        Multiplicity.UNRESOLVED: Verdict.SKIPPED,
    }[multiplicity]


def analysis_verdict(result):
    """
    pass when the extrema sit on the boundary and, where a Lyapunov set exists,
    monotonicity, the cap signs and the gradient cone all clear their thresholds.
    """
    checks = [result.hot_spots['holds']]
    if result.monotonicity is not None:
        checks.extend([
            result.monotonicity.fraction >= MONOTONE_FRACTION,
            result.sign['violation_fraction'] <= SIGN_VIOLATION_FRACTION,
            result.gradient_cone['fraction'] >= CONE_FRACTION,
        ])
    return Verdict.PASS if all(checks) else Verdict.FAIL


class BaseCommand(object):
    ERROR_INDENT = dict(initial_indent='ERROR: ',
                        subsequent_indent='       ')
    WARNING_INDENT = dict(initial_indent='WARNING: ',
                          subsequent_indent='         ')
    INFO_INDENT = dict(initial_indent='INFO: ',
                       subsequent_indent='      ')

    # name used for the manifest file
    name = None

    def __init__(self, args, parser=None, config=None):
        self.args = args
        self.parser = parser
        self.config = config if config is not None else NeumirrorConfig(args.config)
        self.env = template_environment()
        self.exit_code = ExitCode.OK
        self.summary = {}

    def __call__(self, *args, **kwargs):
        self.pre_run()
        self.run()
        self.post_run()
        return self.exit_code

    def pre_run(self):
        pass

    def run(self):
        pass

    def post_run(self):
        if self.args.json:
            sys.stdout.write(dumps_canonical(self.summary))
            return
        for key, value in sorted(self.summary.items()):
            self.out('{0}: {1}'.format(key, value), Colors.INFO, **self.INFO_INDENT)

    def out(self, msg='', color=Colors.BLACK, fp=None, wrap=True, nl=1, **kwargs):
        fp = fp or sys.stdout
        if wrap:
            msg = textwrap.fill(msg, width=kwargs.pop('width', 100), **kwargs)
        _write(fp, msg, color)
        for _ in range(nl):
            fp.write('\n')


class ArtifactCommand(BaseCommand):
    """
    A command that resolves a domain and writes JSON / CSV artifacts plus a manifest
    into --out-dir.
    """

    def __init__(self, *args, **kwargs):
        super(ArtifactCommand, self).__init__(*args, **kwargs)
        self.out_dir = self.args.out_dir
        self.tolerances = self.config.tolerance_options
        self.sampling = self.config.sampling_options
        self.threads = self.args.threads or self.config.simulation['threads']
        self.manifest = None
        self.log_handler = None
        self.curve = None
        self.alpha = None
        self.verdict = Verdict.PASS
        self._special = None
        self._lset = None

    def __call__(self, *args, **kwargs):
        try:
            return super(ArtifactCommand, self).__call__(*args, **kwargs)
        finally:
            if self.log_handler is not None:
                package_logger.removeHandler(self.log_handler)
                self.log_handler.close()

    def pre_run(self):
        if not os.path.isdir(self.out_dir):
            os.makedirs(self.out_dir)
        self.log_handler = setup_logfile_logger(os.path.join(self.out_dir, 'neumirror-run.log'),
                                                log_level='debug')
        arguments = {k: v for k, v in sorted(vars(self.args).items())
                     if k not in NON_INPUT_ARGS}
        config = {k: v for k, v in self.config.items() if k not in ('log_dir', 'log_level')}
        self.manifest = RunManifest(self.name, arguments, config, self.args.seed)

        self.curve, self.alpha = resolve_domain(
            self.args.domain, alpha=getattr(self.args, 'alpha', None),
            tolerances=self.tolerances, oracle_points=self.sampling.oracle_points)
        self.manifest.domain_hash = self.curve.domain_hash
        logger.info('%s on %r (alpha=%s), manifest %s', self.name, self.curve, self.alpha,
                    self.manifest.id)

    def post_run(self):
        self.manifest.finish()
        path = os.path.join(self.out_dir, '{0}.manifest.json'.format(self.name))
        write_json(path, self.manifest.to_dict())
        self.summary.update({
            'command': self.name,
            'manifest': self.manifest.id,
            'verdict': self.verdict,
            'exit_code': self.exit_code,
            'outputs': [o['path'] for o in self.manifest.outputs],
        })
        super(ArtifactCommand, self).post_run()

    ##
    # helpers
    ##
    def finish_with(self, verdict):
        self.verdict = verdict
        self.exit_code = ExitCode.from_verdict(verdict)

    def domain_payload(self):
        return {
            'domain': domain_to_dict(self.curve, self.alpha),
            'domain_hash': self.curve.domain_hash,
        }

    def write_artifact(self, kind, payload, filename=None):
        doc = artifact_document(kind, self.manifest.id, payload)
        path = os.path.join(self.out_dir, filename or '{0}.json'.format(kind))
        write_json(path, doc)
        self.manifest.add_output(path, kind)
        return doc

    def write_rows(self, kind, rows, filename):
        path = os.path.join(self.out_dir, filename)
        write_csv(path, rows, self.manifest.id)
        self.manifest.add_output(path, kind)
        return path

    def require_alpha(self):
        if self.alpha is None:
            raise InputError('This domain has no alpha; pass --alpha')
        return self.alpha

    @property
    def special(self):
        if self._special is None:
            self._special = compute_special_points(self.curve, self.require_alpha(),
                                                   self.sampling)
        return self._special

    @property
    def lset(self):
        if self._lset is None:
            self._lset = assemble(self.curve, self.special, self.sampling)
        return self._lset

    def sim_config(self, **overrides):
        return SimConfig.from_config(self.config.simulation, seed=self.args.seed, **overrides)

    def mesh_size(self):
        h = getattr(self.args, 'h', None)
        if h is None:
            h = self.config.spectral['h'] * self.curve.diameter
        return float(h)

    def dt_ladder(self):
        dts = getattr(self.args, 'dt_ladder', None)
        if not dts:
            dt = self.config.simulation['dt']
            dts = [100.0 * dt, 10.0 * dt, dt]
        t_max = getattr(self.args, 't_max', None)
        return [self.sim_config(dt=dt, t_max=t_max) for dt in dts]

    ##
    # stages shared with the pipeline
    ##
    def stage_special_points(self):
        special = self.special
        payload = self.domain_payload()
        payload['special'] = special.to_dict()
        return self.write_artifact('special-points', payload)

    def stage_assumptions(self):
        report = run_all(self.curve, self.require_alpha(), sampling=self.sampling,
                         threads=self.threads, special=self._special)
        payload = self.domain_payload()
        payload.update(report.to_dict())
        return self.write_artifact('assumptions', payload), report.verdict

    def stage_lyapunov(self):
        lset = self.lset
        payload = self.domain_payload()
        payload.update(lset.to_dict())
        payload['special'] = lset.special.to_dict()
        payload['loop_vertices'] = len(lset.loop)
        return self.write_artifact('lyapunov', payload)

    def stage_invariance(self):
        args = self.args
        starts = chart_starts(self.curve, self.special, self.lset, args.starts)
        ladder = self.dt_ladder()
        n_paths = args.paths or self.config.simulation['paths']
        report = invariance_mc(self.curve, self.special, self.lset, starts, ladder, n_paths,
                               threads=self.threads)
        payload = self.domain_payload()
        payload.update(report.to_dict())
        payload['starts'] = [[list(map(float, x)), list(map(float, y))] for x, y in starts]
        if getattr(args, 'separation', False):
            c1, p1 = estimate_separation(self.curve, self.special, self.lset, starts,
                                         ladder[-1], n_paths, threads=self.threads)
            payload['separation'] = {'c1': c1, 'p1': p1}
        if getattr(args, 'drift', False):
            x, y = starts[0]
            payload['drift'] = drift_ladder(self.curve, self.special, self.lset, x, y, ladder)
        ok = report.monotone and report.exit_fraction <= EXIT_FRACTION_LIMIT
        return self.write_artifact('invariance', payload), Verdict.PASS if ok else Verdict.FAIL

    def stage_eigen(self):
        spectral = self.config.spectral
        args = self.args
        report = solve_ladder(self.curve, self.mesh_size(),
                              levels=getattr(args, 'levels', None) or spectral['levels'],
                              k=getattr(args, 'k', None) or spectral['k'],
                              min_angle=spectral['min_angle'], smoothing=spectral['smoothing'],
                              threads=self.threads)
        payload = self.domain_payload()
        payload.update(report.to_dict())
        payload['field'] = {
            'vertices': report.mesh.vertices,
            'triangles': report.mesh.triangles,
            'n_boundary': report.mesh.n_boundary,
            'psi': report.eigenvector(2),
        }
        self.write_rows('eigen', report.to_rows(), 'eigenvector.csv')
        doc = self.write_artifact('eigen', payload)
        return doc, report, verdict_of_multiplicity(report.multiplicity)

    def stage_analyze(self, report, with_lyapunov=True):
        special = lset = None
        if with_lyapunov and self.alpha is not None:
            try:
                special, lset = self.special, self.lset
            except AssumptionFailure as e:
                logger.warning('No Lyapunov set, checking hot spots only: %s', e)
        result = analyze_eigenfunction(
            self.curve, special, lset, report,
            n_pairs=getattr(self.args, 'pairs', None) or self.config.spectral['mono_pairs'],
            seed=self.args.seed, force=getattr(self.args, 'force', False))
        verdict = analysis_verdict(result)
        payload = self.domain_payload()
        payload.update(result.to_dict())
        payload['multiplicity'] = report.multiplicity
        payload['verdict'] = verdict
        if special is not None:
            payload['special'] = special.to_dict()
        return self.write_artifact('analyze', payload), verdict


class ValidateCommand(ArtifactCommand):
    name = 'validate'

    def run(self):
        # resolve_domain has already built the curve, so closure and convexity hold
        curve = self.curve
        payload = self.domain_payload()
        payload['certificates'] = {
            'closed': True,
            'convex': True,
            'pieces': len(curve),
            'total_length': curve.total_length,
            'total_turning': curve.total_turning,
            'corners': list(curve.corner_s),
            'diameter': curve.diameter,
            'width': curve.width,
            'area': curve.area,
        }
        self.write_artifact('domain', payload)
        self.summary.update({'pieces': len(curve), 'domain_hash': curve.domain_hash})


class SpecialPointsCommand(ArtifactCommand):
    name = 'special-points'

    def run(self):
        doc = self.stage_special_points()
        self.summary['points'] = len(doc['special']['points'])


class CheckAssumptionsCommand(ArtifactCommand):
    name = 'check-assumptions'

    def run(self):
        doc, verdict = self.stage_assumptions()
        if self.args.scan_alpha:
            start, stop, n = self.args.scan_alpha
            alphas = np.linspace(float(start), float(stop), int(n))
            doc['alpha_scan'] = scan_alpha(self.curve, alphas, sampling=self.sampling,
                                           threads=self.threads)
            self.write_artifact('assumptions', doc)
        self.summary.update({name: r['verdict'] for name, r in doc['assumptions'].items()})
        self.finish_with(verdict)


class LyapunovCommand(ArtifactCommand):
    name = 'lyapunov'

    def run(self):
        doc = self.stage_lyapunov()
        self.summary.update({'loop_vertices': doc['loop_vertices'],
                             'closure_gap': doc['closure_gap']})


class SimulateCommand(ArtifactCommand):
    name = 'simulate'

    def run(self):
        args = self.args
        cfg = self.sim_config(dt=args.dt, t_max=args.t_max, record_stride=args.stride)
        special = lset = None
        if self.alpha is not None and not args.no_lyapunov:
            special, lset = self.special, self.lset
        if args.x is not None and args.y is not None:
            x, y = np.asarray(args.x), np.asarray(args.y)
        elif lset is not None:
            x, y = chart_starts(self.curve, special, lset, 1)[0]
        else:
            raise InputError('Pass --x and --y when the domain has no Lyapunov set')

        record = simulate(self.curve, special, lset, x, y, cfg, check=not args.no_check,
                          stream=args.stream)
        payload = self.domain_payload()
        payload.update(record.to_dict())
        payload['start'] = {'x': x, 'y': y}
        payload['chart_path'] = np.column_stack([record.column('u1'), record.column('u2')])
        payload['drift'] = drift_diagnostic(record)
        self.write_rows('coupling', record.to_rows(), 'coupling-path.csv')
        self.write_artifact('coupling', payload)
        self.summary.update({'zeta': record.zeta, 'exit_time_from_L': record.exit_time_from_L})


class InvarianceCommand(ArtifactCommand):
    name = 'invariance'

    def run(self):
        doc, verdict = self.stage_invariance()
        self.summary.update({'exit_fraction': doc['exit_fraction'],
                             'monotone': doc['monotone']})
        self.finish_with(verdict)


class EigenCommand(ArtifactCommand):
    name = 'eigen'

    def run(self):
        doc, _, verdict = self.stage_eigen()
        self.summary.update({'mu2': doc['richardson']['mu2'],
                             'gap_ratio': doc['gap_ratio'],
                             'multiplicity': doc['multiplicity']})
        self.finish_with(verdict)


class AnalyzeCommand(ArtifactCommand):
    name = 'analyze'

    def run(self):
        _, report, _ = self.stage_eigen()
        doc, verdict = self.stage_analyze(report, with_lyapunov=not self.args.no_lyapunov)
        self.summary['hot_spots'] = doc['hot_spots']['holds']
        if doc['monotonicity']:
            self.summary['monotone_fraction'] = doc['monotonicity']['fraction']
        self.finish_with(verdict)


class HeatCheckCommand(ArtifactCommand):
    name = 'heat-check'

    def default_bump(self):
        _, boundary = self.curve.sample(256)
        center = np.mean(boundary, axis=0)
        depth = float(self.curve.oracle.signed_distance([center])[0])
        return Bump(center, 0.5 * depth)

    def eval_points(self, bump):
        if self.args.points:
            return np.asarray(self.args.points, dtype=float).reshape(-1, 2)
        offsets = 0.5 * bump.radius * np.array([[0, 0], [1, 0], [-1, 0], [0, 1], [0, -1]])
        return bump.center + offsets

    def run(self):
        args = self.args
        bump = Bump(args.bump[:2], args.bump[2]) if args.bump else self.default_bump()
        cfg = self.sim_config(dt=args.dt)
        table = heat_cross_check(self.curve, bump, args.time, self.eval_points(bump),
                                 args.paths or self.config.simulation['paths'], cfg,
                                 h=self.mesh_size(), threads=self.threads)
        payload = self.domain_payload()
        payload.update(table)
        self.write_artifact('heat-check', payload)
        self.summary['max_difference'] = max(r['difference'] for r in table['rows'])
        self.finish_with(Verdict.PASS if table['ok'] else Verdict.FAIL)


class PipelineCommand(ArtifactCommand):
    """
    special points -> assumptions -> lyapunov -> invariance, then eigen -> analyze.

    A failed assumption stage skips the stages that need it; the spectral stages
    always run.  Input and numerical errors stop the run and name the stage.
    """
    name = 'pipeline'

    def run(self):
        self.stages = []
        geometric = False
        if self.alpha is None:
            self.record('special-points', Verdict.SKIPPED, detail='no alpha')
            self.record('assumptions', Verdict.SKIPPED, detail='no alpha')
        else:
            have_special = self.guarded('special-points', self.stage_special_points)
            verdict = self.guarded('assumptions', self.stage_assumptions)
            geometric = have_special and verdict == Verdict.PASS
        if geometric:
            geometric = self.guarded('lyapunov', self.stage_lyapunov)
        if geometric and not self.args.skip_invariance:
            self.guarded('invariance', self.stage_invariance)

        doc, report, verdict = self.run_stage('eigen', self.stage_eigen)
        self.record('eigen', verdict, multiplicity=doc['multiplicity'],
                    mu2=doc['richardson']['mu2'], gap_ratio=doc['gap_ratio'])
        if report.multiplicity == Multiplicity.SIMPLE:
            doc, verdict = self.run_stage('analyze', self.stage_analyze, report,
                                          with_lyapunov=geometric)
            self.record('analyze', verdict, hot_spots=doc['hot_spots']['holds'])
        else:
            self.record('analyze', Verdict.SKIPPED,
                        detail='multiplicity {0}'.format(report.multiplicity))

        table = {'stages': self.stages,
                 'verdict': Verdict.aggregate([s['verdict'] for s in self.stages])}
        self.write_artifact('pipeline', table)
        self.summary['stages'] = ', '.join('{0}={1}'.format(s['stage'], s['verdict'])
                                           for s in self.stages)
        self.finish_with(table['verdict'])

    def record(self, stage, verdict, **details):
        entry = {'stage': stage, 'verdict': verdict}
        entry.update(details)
        self.stages.append(entry)
        logger.info('Stage %s: %s', stage, verdict)

    def run_stage(self, stage, func, *args, **kwargs):
        try:
            return func(*args, **kwargs)
        except NeumirrorError as e:
            e.payload.setdefault('stage', stage)
            raise

    def guarded(self, stage, func):
        """
        Run a geometric stage; an assumption failure is recorded and returns False.
        """
        try:
            result = self.run_stage(stage, func)
        except AssumptionFailure as e:
            self.record(stage, Verdict.FAIL, error=e.to_dict())
            return False
        if isinstance(result, tuple):
            doc, verdict = result
            self.record(stage, verdict, artifact=doc['kind'])
            return verdict
        self.record(stage, Verdict.PASS, artifact=result['kind'])
        return True


class PlotCommand(BaseCommand):
    name = 'plot'

    def run(self):
        doc = read_artifact(self.args.artifact)
        overlay = read_artifact(self.args.overlay) if self.args.overlay else None
        svg = render_artifact(doc, overlay=overlay)
        write_svg(self.args.output, svg)
        self.summary.update({'kind': doc['kind'], 'output': self.args.output})


class ConfigCommand(BaseCommand):
    name = 'config'

    def post_run(self):
        sys.stdout.write(dumps_canonical(dict(self.config)))


class InitCommand(BaseCommand):
    name = 'init'

    CONFIG_FILE = NeumirrorConfig.DOT_DIR_CONFIG_LOCATION

    def run(self):
        target = self.CONFIG_FILE
        if os.path.isfile(target) and not self.args.force:
            self.out('{0} already exists; pass --force to overwrite it.'.format(target),
                     Colors.WARN, width=1024, **self.WARNING_INDENT)
            self.summary['written'] = None
            return
        directory = os.path.dirname(target)
        if not os.path.isdir(directory):
            os.makedirs(directory)
        shutil.copyfile(DEFAULT_CONFIG_LOCATION, target)
        self.summary['written'] = target
