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
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from neumirror.core.constants import Family, Level, Side, Verdict
from neumirror.core.options import Sampling
from neumirror.assumptions.models import AssumptionReport, AssumptionResult
from neumirror.hinges.exceptions import ExtremalPointError, NotAdmissible, SpecialPointsError
from neumirror.hinges.models import Chord
from neumirror.hinges.special import compute_special_points, sampled_hinge_free
from neumirror.hinges.utils import (
    activity_slack,
    chord_through,
    extremal_points,
    hinge_intervals,
    hinge_summary,
    is_admissible,
    mirror_chord,
    normal_direction_angle,
    reflected_depth,
    sample_family,
)

logger = logging.getLogger(__name__)

# Candidate margins for the angle band below alpha, smallest first
NU_GRID = (0.001, 0.002, 0.005, 0.01, 0.02, 0.05)

ASSUMPTIONS = ('A1', 'A2', 'A3', 'A4', 'A5')


def _on_mirror(special, fn, *args, **kwargs):
    """
    Run a plain check on the mirrored domain, which is the primed check here.
    The witness chord is mapped back.
    """
    failure = fn(special.mirrored, *args, **kwargs)
    if failure is not None and 'chord' in failure:
        mirror = special.mirrored
        L = mirror.curve.total_length
        failure = dict(failure)
        failure['chord'] = mirror_chord(special.curve, _chord_from_dict(mirror, failure['chord'])
                                        ).to_dict()
        if 's' in failure:
            failure['s'] = (L - failure['s']) % L
        failure['primed'] = True
    return failure


def _chord_from_dict(special, data):
    return Chord(special.curve, data['s_P'], data['s_Q'])


##
# Assumption 1
##

def _a1_plain(special, sampling, counter):
    curve = special.curve
    buffer = curve.tolerances.buffer
    n = int(sampling.assumption_grid)
    n_bd = int(sampling.assumption_boundary)

    sides = (
        # P-side: angle >= angle(P), right boundary must be inactive
        ('P', 0.0, special.u_of('P3'), True),
        # Q-side: angle >= angle(-n(Q)), left boundary must be inactive
        ('Q', special.u_of('Q4'), special.ubar2, False),
    )
    for name, u_lo, u_hi, lower in sides:
        for i in range(n):
            u = u_lo + (i + 0.5) / n * (u_hi - u_lo)
            s = special.s_P_of(u) if lower else special.s_Q_of(u)
            lo = normal_direction_angle(curve, s, flip=not lower) + buffer
            hi = special.alpha_primed - buffer
            if hi <= lo:
                continue
            for j in range(n):
                angle = lo + (j + 0.5) / n * (hi - lo)
                try:
                    chord = chord_through(curve, s, angle, lower=lower)
                except NotAdmissible:
                    continue
                if not is_admissible(special, chord):
                    continue
                counter[0] += 1
                t_q = chord.right_length
                if lower:
                    offsets = t_q * (np.arange(n_bd) + 0.5) / n_bd
                else:
                    offsets = t_q + (curve.total_length - t_q) * (np.arange(n_bd) + 0.5) / n_bd
                s_bd = chord.s_P + offsets
                depth = reflected_depth(curve, chord, s_bd)
                slack = activity_slack(curve, chord, curve.point_at(s_bd))
                bad = np.nonzero(depth >= -slack)[0]
                if len(bad):
                    return {
                        'chord': chord.to_dict(),
                        's': float((chord.s_P + offsets[bad[0]]) % curve.total_length),
                        'side': name,
                    }
    return None


def check_a1(curve, special, sampling=None):
    """
    Steep chords near P1 have no active right point, steep chords near Q6 no
    active left point; the same for the primes.
    """
    sampling = sampling or Sampling()
    counter = [0]
    failure = _a1_plain(special, sampling, counter)
    if failure is None:
        failure = _on_mirror(special, _a1_plain, sampling, counter)
    if failure is not None:
        return AssumptionResult.failed('A1', failure, 'Active point on the forbidden side',
                                       checked=counter[0])
    return AssumptionResult.passed('A1', counter[0])


##
# Assumption 2
##

def _a2_plain(special, sampling, counter):
    """
    Largest margin on NU_GRID that passes, plus the witness that stopped the scan.
    """
    curve = special.curve
    n = int(sampling.assumption_grid)
    n_bd = int(sampling.assumption_boundary)
    u3, u4 = special.u_of('P3'), special.u_of('P4')
    positions = u3 + (np.arange(n) + 0.5) / n * (u4 - u3)

    nu_found = 0.0
    for nu in NU_GRID:
        angle = special.alpha - nu
        for u in positions:
            try:
                chord = chord_through(curve, special.s_P_of(u), angle, lower=True)
            except NotAdmissible:
                continue
            if special.u2_of(chord.s_Q) > special.ubar2:
                continue
            counter[0] += 1
            if not sampled_hinge_free(curve, chord, n_bd):
                return nu_found, {'chord': chord.to_dict(), 'nu': nu}
        nu_found = nu
    return nu_found, None


def check_a2(curve, special, sampling=None):
    """
    Returns (result, nu_found): the largest sampled margin below alpha where
    chords through the arc P3 P4 stay free of lower left and upper right hinges.
    """
    sampling = sampling or Sampling()
    counter = [0]
    nu_plain, failure = _a2_plain(special, sampling, counter)
    nu_primed, failure_primed = _a2_plain(special.mirrored, sampling, counter)
    if failure is None and failure_primed is not None:
        failure = dict(failure_primed)
        failure['chord'] = mirror_chord(special.curve, _chord_from_dict(
            special.mirrored, failure_primed['chord'])).to_dict()
        failure['primed'] = True
    nu_found = min(nu_plain, nu_primed)

    if nu_found < NU_GRID[0]:
        return AssumptionResult.failed('A2', failure, 'Forbidden hinge at the smallest margin',
                                       checked=counter[0], nu_found=nu_found), nu_found
    return AssumptionResult.passed('A2', counter[0], nu_found=nu_found,
                                   resolution_limited=failure is not None), nu_found


##
# Assumption 3
##

A3_RULES = {
    # family: (required, forbidden)
    Family.P1_P3: ((Side.LEFT, Level.LOWER), (Side.RIGHT, Level.UPPER)),
    Family.Q4_Q6: ((Side.RIGHT, Level.UPPER), (Side.LEFT, Level.LOWER)),
}


def _a3_plain(special, sampling, counter):
    curve = special.curve
    n = int(sampling.extremal_grid)
    for family, (required, forbidden) in sorted(A3_RULES.items()):
        for chord in sample_family(special, family, n, n):
            counter[0] += 1
            summary = hinge_summary(hinge_intervals(curve, chord,
                                                    n=sampling.assumption_boundary,
                                                    cluster=sampling.endpoint_cluster))
            if required not in summary or forbidden in summary:
                return {
                    'chord': chord.to_dict(),
                    'family': family,
                    'hinges': sorted('{0}-{1}'.format(lvl, side) for side, lvl in summary),
                }
    return None


def check_a3(curve, special, sampling=None):
    sampling = sampling or Sampling()
    counter = [0]
    failure = _a3_plain(special, sampling, counter)
    if failure is None:
        failure = _on_mirror(special, _a3_plain, sampling, counter)
    if failure is not None:
        return AssumptionResult.failed('A3', failure, 'Hinge types of a family chord are wrong',
                                       checked=counter[0])
    return AssumptionResult.passed('A3', counter[0])


##
# Assumption 4
##

def _a4_plain(special, sampling, counter):
    curve = special.curve
    n = int(sampling.extremal_grid)
    for family in (Family.P1_P3, Family.Q4_Q6):
        for chord in sample_family(special, family, n, n):
            counter[0] += 1
            try:
                extremal_points(curve, chord, family, n=sampling.hinge_scan)
            except ExtremalPointError as e:
                witness = e.to_dict()
                witness.update(witness.pop('payload', {}))
                witness['chord'] = chord.to_dict()
                witness['family'] = family
                return witness
    return None


def check_a4(curve, special, sampling=None):
    sampling = sampling or Sampling()
    counter = [0]
    failure = _a4_plain(special, sampling, counter)
    if failure is None:
        failure = _on_mirror(special, _a4_plain, sampling, counter)
    if failure is not None:
        return AssumptionResult.failed('A4', failure, failure.get('detail'), checked=counter[0])
    return AssumptionResult.passed('A4', counter[0])


##
# Assumption 5
##

def _line_intersections(a, b):
    """
    Pairwise intersections of the lines through chords a[i] and b[j]; NaN rows for
    parallel pairs.
    """
    pa = np.array([c.P for c in a])
    da = np.array([c.p for c in a])
    pb = np.array([c.P for c in b])
    db = np.array([c.p for c in b])
    denom = da[:, None, 0] * db[None, :, 1] - da[:, None, 1] * db[None, :, 0]
    r = pb[None, :, :] - pa[:, None, :]
    t = (r[..., 0] * db[None, :, 1] - r[..., 1] * db[None, :, 0])
    with np.errstate(divide='ignore', invalid='ignore'):
        t = np.where(np.abs(denom) > 1e-15, t / denom, np.nan)
    return pa[:, None, :] + t[..., None] * da[:, None, :]


def check_a5(curve, special, sampling=None):
    """
    Lines of chords from A(P1,P3) and A(Q4',Q6') meet inside the closed domain, and
    likewise for A(P1',P3') and A(Q4,Q6).
    """
    sampling = sampling or Sampling()
    n = int(sampling.a5_grid)
    n_ang = max(int(round(np.sqrt(n))), 1)
    n_pos = max(n // n_ang, 1)
    checked = 0
    for fam_a, fam_b in ((Family.P1_P3, Family.Q4_Q6_PRIMED),
                         (Family.P1_P3_PRIMED, Family.Q4_Q6)):
        a = sample_family(special, fam_a, n_pos, n_ang)
        b = sample_family(special, fam_b, n_pos, n_ang)
        if not a or not b:
            continue
        pts = _line_intersections(a, b)
        flat = pts.reshape(-1, 2)
        finite = np.all(np.isfinite(flat), axis=1)
        inside = np.zeros(len(flat), dtype=bool)
        if np.any(finite):
            inside[finite] = curve.oracle.contains(flat[finite], tol=curve.tol_boundary)
        checked += len(flat)
        bad = np.nonzero(~inside)[0]
        if len(bad):
            i, j = divmod(int(bad[0]), len(b))
            return AssumptionResult.failed('A5', {
                'families': [fam_a, fam_b],
                'chord': a[i].to_dict(),
                'other_chord': b[j].to_dict(),
                'intersection': flat[bad[0]].tolist() if finite[bad[0]] else None,
            }, 'Chord lines meet outside the domain', checked=checked)
    if not checked:
        return AssumptionResult.skipped('A5', 'Empty chord families')
    return AssumptionResult.passed('A5', checked)


##
# Reports
##

def _resolutions(sampling):
    return {
        'assumption_grid': sampling.assumption_grid,
        'assumption_boundary': sampling.assumption_boundary,
        'extremal_grid': sampling.extremal_grid,
        'a5_grid': sampling.a5_grid,
        'hinge_scan': sampling.hinge_scan,
        'nu_grid': list(NU_GRID),
    }


def run_all(curve, alpha, sampling=None, threads=1, special=None):
    """
    Check Assumptions 1 to 5.  When the special points cannot be built, every
    assumption fails with the construction error as witness.
    """
    sampling = sampling or Sampling()
    try:
        special = special or compute_special_points(curve, alpha, sampling)
    except SpecialPointsError as e:
        logger.warning('Special points unavailable: %s', e)
        witness = e.to_dict()
        results = [AssumptionResult.failed(name, witness, 'Special points unavailable')
                   for name in ASSUMPTIONS]
        return AssumptionReport(alpha, results, _resolutions(sampling),
                                domain_hash=curve.domain_hash)

    checks = (check_a1, check_a2, check_a3, check_a4, check_a5)
    with ThreadPoolExecutor(max_workers=max(int(threads), 1)) as executor:
        futures = [executor.submit(check, curve, special, sampling) for check in checks]
        outcomes = [f.result() for f in futures]

    results = []
    nu_found = None
    for outcome in outcomes:
        if isinstance(outcome, tuple):
            outcome, nu_found = outcome
        logger.info('%s: %s', outcome.name, outcome.verdict)
        results.append(outcome)

    return AssumptionReport(alpha, results, _resolutions(sampling), nu_found=nu_found,
                            domain_hash=curve.domain_hash)


def scan_alpha(curve, alphas, sampling=None, threads=1):
    """
    Run all checks for each alpha.  A convenience search with no guarantee.
    """
    ret = []
    for alpha in alphas:
        report = run_all(curve, alpha, sampling=sampling, threads=threads)
        ret.append({
            'alpha': float(alpha),
            'verdict': report.verdict,
            'failed': [name for name, r in report.results.items()
                       if r.verdict == Verdict.FAIL],
        })
    return ret
