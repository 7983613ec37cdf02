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
import math
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from scipy import stats

from neumirror.coupling.exceptions import InsufficientSurvivors, InvalidSimConfig
from neumirror.coupling.models import InvarianceReport
from neumirror.coupling.stepping import (
    check_start,
    mirror_increments,
    simulate,
    step_reflected_batch,
)
from neumirror.core.rng import IncrementSource
from neumirror.geometry.utils import reflect_point
from neumirror.hinges.exceptions import DegenerateChord, NotAdmissible
from neumirror.hinges.utils import phi_inv
from neumirror.lyapunov.utils import chart_points, pair_in_T

logger = logging.getLogger(__name__)

MIN_SURVIVORS = 100


##
# Start pairs
##

def start_from_chart(special, u, offset=0.025):
    """
    The pair mirrored across the chord phi_inv(u): x sits left of the chord midpoint
    at offset * chord length, y is its reflection.
    """
    chord = phi_inv(special, float(u[0]), float(u[1]))
    mid = 0.5 * (np.asarray(chord.P) + np.asarray(chord.Q))
    x = mid + offset * chord.length * np.asarray(chord.p.rotate90())
    y = np.asarray(reflect_point(x, chord.line))
    return x, y


def chart_starts(curve, special, lset, n, shrink=0.5, offset=0.025):
    """
    Up to n start pairs in T, taken from chart points between the centroid of the
    Lyapunov set and evenly spaced loop vertices.  The centroid pair comes first.
    """
    center = lset.centroid
    loop = lset.loop[:-1]
    picks = np.linspace(0, len(loop), max(int(n) - 1, 0), endpoint=False).astype(int)
    candidates = [center] + [center + shrink * (loop[i] - center) for i in picks]

    starts = []
    for u in candidates:
        if len(starts) >= n:
            break
        if not lset.contains(u):
            continue
        try:
            x, y = start_from_chart(special, u, offset=offset)
        except (NotAdmissible, DegenerateChord) as e:
            logger.debug('No start for u=%s: %s', u.tolist(), e.detail)
            continue
        if pair_in_T(curve, special, lset, x, y):
            starts.append((x, y))
    if not starts:
        raise InvalidSimConfig('No start pair in T could be built from the Lyapunov set')
    logger.info('%d start pairs from the chart', len(starts))
    return starts


def _chunks(streams, threads):
    threads = max(min(int(threads), len(streams)), 1)
    return [c for c in np.array_split(np.asarray(streams), threads) if len(c)]


def _run_chunks(fn, streams, threads):
    """
    Run fn over contiguous chunks of streams and concatenate in stream order.
    """
    chunks = _chunks(streams, threads)
    with ThreadPoolExecutor(max_workers=len(chunks)) as executor:
        parts = list(executor.map(fn, chunks))
    return {k: np.concatenate([p[k] for p in parts]) for k in parts[0]}


def _reflected_chunk(curve, x, cfg, streams):
    source = IncrementSource(cfg.seed, streams, cfg.dt)
    X = np.tile(np.asarray(x, dtype=float), (len(streams), 1))
    absL = np.zeros(len(streams))
    for _ in range(cfg.n_steps):
        X, dL, _ = step_reflected_batch(curve, X, source.next(), cfg.step_guard)
        absL += dL
    return {'X': X, 'absL': absL}


def reflected_bm(curve, x, cfg, n_paths, stream_offset=0, threads=1):
    """
    Endpoints at cfg.t_max of n_paths independent reflected Brownian motions from x.
    """
    streams = np.arange(stream_offset, stream_offset + n_paths)
    return _run_chunks(lambda c: _reflected_chunk(curve, x, cfg, c), streams, threads)


def _coupling_chunk(curve, special, lset, x, y, cfg, streams):
    n = len(streams)
    source = IncrementSource(cfg.seed, streams, cfg.dt)
    X = np.tile(np.asarray(x, dtype=float), (n, 1))
    Y = np.tile(np.asarray(y, dtype=float), (n, 1))
    d = Y - X
    V = np.linalg.norm(d, axis=1)
    m = d / V[:, None]
    coupled = np.zeros(n, dtype=bool)
    zeta = np.full(n, np.nan)
    exit_time = np.full(n, np.nan)
    order_ok = np.ones(n, dtype=bool)
    contacts = np.zeros(n)

    t = 0.0
    for _ in range(cfg.n_steps):
        t += cfg.dt
        dW = source.next()
        dZ = np.where(coupled[:, None], dW, mirror_increments(m, dW))
        X, dL, _ = step_reflected_batch(curve, X, dW, cfg.step_guard)
        Y, dM, _ = step_reflected_batch(curve, Y, dZ, cfg.step_guard)
        Y[coupled] = X[coupled]

        d = Y - X
        V = np.linalg.norm(d, axis=1)
        newly = ~coupled & (V < cfg.eps_couple)
        if np.any(newly):
            zeta[newly] = t
            coupled |= newly
            Y[newly] = X[newly]
            V[newly] = 0.0

        live = ~coupled
        order_ok &= ~live | (d[:, 0] > 0)
        moved = live & ((dL > 0) | (dM > 0))
        contacts += moved
        if not np.any(moved):
            continue
        m[moved] = d[moved] / V[moved, None]
        if special is None or lset is None:
            continue
        watch = moved & np.isnan(exit_time)
        if not np.any(watch):
            continue
        u, defined = chart_points(curve, special, X[watch], Y[watch])
        left = np.zeros(len(u), dtype=bool)
        if np.any(defined):
            left[defined] = ~lset.contains(u[defined])
        idx = np.nonzero(watch)[0][left]
        exit_time[idx] = t

    return {
        'X': X, 'Y': Y, 'V': V, 'coupled': coupled, 'zeta': zeta,
        'exit_time': exit_time, 'order_ok': order_ok, 'contacts': contacts,
    }


def simulate_ensemble(curve, special, lset, x, y, cfg, n_paths, stream_offset=0, threads=1,
                      check=True):
    """
    n_paths coupled paths from (x, y) stepped together; path i draws from stream
    stream_offset + i, so the result does not depend on `threads`.

    Returns arrays keyed X, Y, V, coupled, zeta, exit_time, order_ok and contacts,
    with NaN for a zeta or exit time that did not occur.
    """
    if check:
        check_start(curve, special, lset, x, y)
    streams = np.arange(stream_offset, stream_offset + n_paths)
    return _run_chunks(lambda c: _coupling_chunk(curve, special, lset, x, y, cfg, c),
                       streams, threads)


def _binomial_stderr(k, n):
    f = k / float(n)
    return math.sqrt(max(f * (1.0 - f), 1.0 / n) / n)


def invariance_mc(curve, special, lset, starts, ladder, n_paths, threads=1, check=True):
    """
    Exit statistics of the coupling for every dt in `ladder` and every start pair.

    The report is monotone when each finer dt exits no more often than the next
    coarser one, within two binomial standard errors.
    """
    if not starts:
        raise InvalidSimConfig('invariance_mc needs at least one start pair')
    if check:
        for x, y in starts:
            check_start(curve, special, lset, x, y)

    entries = []
    for cfg in sorted(ladder, key=lambda c: -c.dt):
        n_exited = 0
        n_ordered = 0
        zetas = []
        for k, (x, y) in enumerate(starts):
            result = simulate_ensemble(curve, special, lset, x, y, cfg, n_paths,
                                       stream_offset=k * n_paths, threads=threads, check=False)
            n_exited += int(np.sum(~np.isnan(result['exit_time'])))
            n_ordered += int(np.sum(result['order_ok']))
            zetas.extend(result['zeta'][~np.isnan(result['zeta'])].tolist())
        total = n_paths * len(starts)
        entry = {
            'dt': cfg.dt,
            'n_paths': total,
            'n_exited': n_exited,
            'exit_fraction': n_exited / float(total),
            'stderr': _binomial_stderr(n_exited, total),
            'mean_zeta': float(np.mean(zetas)) if zetas else None,
            'coupled_fraction': len(zetas) / float(total),
            'order_fraction': n_ordered / float(total),
        }
        logger.info('dt=%g: %d/%d paths left the Lyapunov set', cfg.dt, n_exited, total)
        entries.append(entry)

    monotone = True
    for coarse, fine in zip(entries, entries[1:]):
        slack = 2.0 * math.hypot(coarse['stderr'], fine['stderr'])
        if fine['exit_fraction'] > coarse['exit_fraction'] + slack:
            logger.warning('Exit fraction grew from %.4g (dt=%g) to %.4g (dt=%g)',
                           coarse['exit_fraction'], coarse['dt'], fine['exit_fraction'],
                           fine['dt'])
            monotone = False
    return InvarianceReport(entries, len(starts), monotone)


##
# Drift identity
##

def drift_diagnostic(record):
    """
    Normalized residuals of dU = F d|L| + G d|M| and of the angle identity over the
    boundary-contact steps of one path.
    """
    diag = record.diagnostics
    return {
        'dt': record.cfg.dt,
        'drift_residual': diag.get('drift_residual', 0.0),
        'theta_residual': diag.get('theta_residual', 0.0),
        'drift_steps': diag.get('drift_steps', 0),
        'contact_steps': diag.get('contact_steps', 0),
        'interior_max_du': diag.get('interior_max_du', 0.0),
        'interior_max_dm': diag.get('interior_max_dm', 0.0),
    }


def _weighted(summaries, key, weight):
    w = np.asarray([s[weight] for s in summaries], dtype=float)
    v = np.asarray([s[key] for s in summaries], dtype=float)
    return float(np.sum(w * v) / np.sum(w)) if np.sum(w) > 0 else 0.0


def drift_order(entries):
    """
    Fitted log-log slopes of the residuals against dt.  Entries with a zero
    residual are left out of the fit.
    """
    ret = {}
    for key in ('drift_residual', 'theta_residual'):
        pts = [(e['dt'], e[key]) for e in entries if e[key] > 0]
        if len(pts) < 2:
            ret[key.replace('residual', 'slope')] = None
            continue
        dts, res = np.log(np.asarray(pts)).T
        ret[key.replace('residual', 'slope')] = float(np.polyfit(dts, res, 1)[0])
    return ret


def drift_ladder(curve, special, lset, x, y, ladder, n_paths=4, check=True):
    """
    Run drift_diagnostic over n_paths single paths for every dt of the ladder.
    """
    entries = []
    for cfg in sorted(ladder, key=lambda c: -c.dt):
        summaries = [drift_diagnostic(simulate(curve, special, lset, x, y, cfg, check=check,
                                               stream=i))
                     for i in range(n_paths)]
        entries.append({
            'dt': cfg.dt,
            'drift_residual': _weighted(summaries, 'drift_residual', 'drift_steps'),
            'theta_residual': _weighted(summaries, 'theta_residual', 'contact_steps'),
            'drift_steps': sum(s['drift_steps'] for s in summaries),
        })
    return {'ladder': entries, 'slopes': drift_order(entries)}


##
# Marginal laws
##

def _ks(a, b):
    stats_, pvalues = [], []
    for j in range(2):
        result = stats.ks_2samp(a[:, j], b[:, j])
        stats_.append(float(result.statistic))
        pvalues.append(float(result.pvalue))
    return {'statistic': stats_, 'pvalue': pvalues}


def _default_partner(curve, x):
    _, pts = curve.sample(256)
    center = np.mean(pts, axis=0)
    y = np.array([2.0 * center[0] - x[0], x[1]])
    if np.linalg.norm(y - x) < 1e-3 * curve.diameter:
        y = x + np.array([0.25 * curve.width, 0.0])
    return y


def marginal_law_test(curve, x, cfg, n_paths, y=None, threads=1):
    """
    Two-sample Kolmogorov-Smirnov tests, per coordinate at t_max, of each marginal
    of the coupling against an independent reflected Brownian motion from the same
    start.
    """
    x = np.asarray(x, dtype=float)
    y = _default_partner(curve, x) if y is None else np.asarray(y, dtype=float)
    coupled = simulate_ensemble(curve, None, None, x, y, cfg, n_paths, threads=threads,
                                check=False)
    free_x = reflected_bm(curve, x, cfg, n_paths, stream_offset=n_paths, threads=threads)
    free_y = reflected_bm(curve, y, cfg, n_paths, stream_offset=2 * n_paths,
                          threads=threads)
    ret = {
        'n_paths': n_paths,
        't_max': cfg.t_max,
        'x': _ks(coupled['X'], free_x['X']),
        'y': _ks(coupled['Y'], free_y['X']),
        'samples': {'X': coupled['X'], 'Y': coupled['Y']},
    }
    ret['min_pvalue'] = min(ret['x']['pvalue'] + ret['y']['pvalue'])
    return ret


def uniform_disk_test(points, center=(0.0, 0.0), radius=1.0):
    """
    One-sample tests of uniformity on a disk: r^2 / R^2 and the polar angle are
    both uniform on [0, 1).
    """
    r = np.asarray(points, dtype=float) - np.asarray(center, dtype=float)
    radial = np.clip(np.einsum('ij,ij->i', r, r) / radius ** 2, 0.0, 1.0)
    angular = np.mod(np.arctan2(r[:, 1], r[:, 0]) / (2.0 * np.pi), 1.0)
    return {
        'radial_pvalue': float(stats.kstest(radial, 'uniform').pvalue),
        'angular_pvalue': float(stats.kstest(angular, 'uniform').pvalue),
    }


##
# Separation
##

def separation_sample(curve, special, lset, x, y, cfg, n_paths, stream_offset=0, threads=1):
    """
    ||X(1) - Y(1)|| over the paths that have not coupled by time 1.
    """
    result = simulate_ensemble(curve, special, lset, x, y, cfg.replace(t_max=1.0), n_paths,
                               stream_offset=stream_offset, threads=threads, check=False)
    return result['V'][~result['coupled']]


def estimate_separation(curve, special, lset, starts, cfg, n_paths, threads=1):
    """
    Empirical (c1, p1) for P(zeta > 1, ||X(1) - Y(1)|| >= c1) >= p1: c1 is the 10th
    percentile of the separation among survivors and p1 the fraction of survivors at
    or above it, each minimized over the starts.
    """
    c1, p1 = math.inf, math.inf
    for k, (x, y) in enumerate(starts):
        check_start(curve, special, lset, x, y)
        sep = separation_sample(curve, special, lset, x, y, cfg, n_paths,
                                stream_offset=k * n_paths, threads=threads)
        if len(sep) < MIN_SURVIVORS:
            raise InsufficientSurvivors(
                'Only {0} of {1} paths survived to t=1'.format(len(sep), n_paths),
                start=[list(map(float, x)), list(map(float, y))], survivors=len(sep))
        c1_k = float(np.percentile(sep, 10))
        p1_k = float(np.mean(sep >= c1_k))
        logger.info('Start %d: c1=%.4g p1=%.3g (%d survivors)', k, c1_k, p1_k, len(sep))
        c1, p1 = min(c1, c1_k), min(p1, p1_k)
    return c1, p1
