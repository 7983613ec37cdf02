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

import numpy as np

from neumirror.geometry.utils import curve_from_dict
from neumirror.management.exceptions import UnknownArtifactKind
from neumirror.management.presets import template_environment
from neumirror.spectral.analysis import nodal_segments
from neumirror.spectral.models import TriMesh

logger = logging.getLogger(__name__)

BOUNDARY_SAMPLES = 720

# the two chords bounding the middle band
BAND_CHORDS = (('P3', "Q4'"), ("P3'", 'Q4'))


class Viewport(object):
    """
    Maps data coordinates into an SVG canvas of fixed width, y axis up.
    """

    def __init__(self, points, width=480, margin=24):
        pts = np.asarray(points, dtype=float).reshape(-1, 2)
        pts = pts[np.all(np.isfinite(pts), axis=1)]
        self.lo = pts.min(axis=0)
        span = np.maximum(pts.max(axis=0) - self.lo, 1e-12)
        self.margin = margin
        self.width = int(width)
        self.scale = (width - 2.0 * margin) / float(np.max(span))
        self.height = int(math.ceil(span[1] * self.scale + 2.0 * margin))

    def xy(self, pts):
        pts = np.asarray(pts, dtype=float).reshape(-1, 2)
        x = self.margin + (pts[:, 0] - self.lo[0]) * self.scale
        y = self.height - self.margin - (pts[:, 1] - self.lo[1]) * self.scale
        return np.column_stack([x, y])

    def points(self, pts):
        return ' '.join('{0:.2f},{1:.2f}'.format(x, y) for x, y in self.xy(pts))


def _render(template, **context):
    return template_environment().get_template(template).render(**context)


def _boundary(doc):
    curve, _ = curve_from_dict(doc['domain'])
    _, pts = curve.sample(BOUNDARY_SAMPLES)
    return pts


def _special_markers(view, special):
    points = []
    chords = []
    if not special:
        return points, chords
    named = {name: entry['xy'] for name, entry in special['points'].items()}
    for name, xy in sorted(named.items()):
        points.append({'label': name, 'xy': view.xy(xy)[0],
                       'color': 'darkgreen' if name.startswith('P') else 'purple'})
    for a, b in BAND_CHORDS:
        if a in named and b in named:
            chords.append({'a': view.xy(named[a])[0], 'b': view.xy(named[b])[0]})
    return points, chords


def plot_domain(doc):
    """
    Boundary with the named special points and the chords of the middle band.
    Also used for nodal lines of `analyze` artifacts.
    """
    boundary = _boundary(doc)
    view = Viewport(boundary)
    points, chords = _special_markers(view, doc.get('special'))
    segments = []
    if doc.get('nodal_segments'):
        segments = [view.xy(seg) for seg in doc['nodal_segments']]
    for key in ('argmax', 'argmin'):
        if doc.get('hot_spots'):
            points.append({'label': key, 'xy': view.xy(doc['hot_spots'][key])[0],
                           'color': 'firebrick'})
    return _render('svg/domain.svg', view=view, kind=doc['kind'], manifest=doc.get('manifest'),
                   title='Domain {0}'.format((doc.get('domain_hash') or '')[:12]),
                   boundary=view.points(boundary), cells=[], chords=chords,
                   segments=segments, points=points)


def _finite_paths(u):
    """
    Split a chart trajectory at undefined samples.
    """
    u = np.asarray(u, dtype=float)
    ok = np.all(np.isfinite(u), axis=1)
    paths = []
    start = None
    for i, flag in enumerate(np.append(ok, False)):
        if flag and start is None:
            start = i
        elif not flag and start is not None:
            if i - start >= 2:
                paths.append(u[start:i])
            start = None
    return paths


def plot_chart(lyapunov=None, coupling=None):
    """
    The Lyapunov loop in chart coordinates, the coupling's chart trajectory, or both.
    """
    if lyapunov is None and coupling is None:
        raise UnknownArtifactKind('Nothing to draw in the chart')
    loop = None
    paths = []
    ubar = None
    labels = []
    if lyapunov is not None:
        loop = np.concatenate([np.asarray(arc, dtype=float)
                               for arc in lyapunov['arcs'].values()])
        ubar = lyapunov['ubar']
        labels = sorted(lyapunov['corners'].items())
    if coupling is not None:
        if 'chart_path' in coupling:
            u = np.array(coupling['chart_path'], dtype=float)
        else:
            columns = list(coupling['columns'])
            rows = np.asarray(coupling['rows'], dtype=float)
            u = rows[:, [columns.index('u1'), columns.index('u2')]]
        paths = _finite_paths(u)

    pts = [p for p in ([loop] if loop is not None else []) + paths]
    if ubar is not None:
        pts.append(np.array([[0.0, 0.0], ubar]))
    view = Viewport(np.concatenate(pts) if pts else np.zeros((1, 2)))
    frame = [[0.0, 0.0], [ubar[0], 0.0], ubar, [0.0, ubar[1]], [0.0, 0.0]] if ubar else []

    source = coupling if coupling is not None else lyapunov
    return _render('svg/chart.svg', view=view, kind=source['kind'],
                   manifest=source.get('manifest'), title='Lyapunov set in the chart',
                   frame=view.points(frame) if frame else '',
                   loop=view.points(loop) if loop is not None else '',
                   paths=[view.points(p) for p in paths],
                   points=[{'label': name, 'xy': view.xy(u)[0]} for name, u in labels])


def plot_eigenfunction(doc):
    """
    Triangles shaded by the sign and size of the eigenfunction, with its nodal line.
    """
    field = doc['field']
    mesh = TriMesh(field['vertices'], field['triangles'], field['n_boundary'], doc['mesh']['h'])
    psi = np.asarray(field['psi'], dtype=float)
    psi = psi / np.max(np.abs(psi))
    view = Viewport(mesh.vertices)
    cells = []
    for tri, value in zip(mesh.triangles, np.mean(psi[mesh.triangles], axis=1)):
        cells.append({'points': view.points(mesh.vertices[tri]),
                      'fill': 'firebrick' if value >= 0 else 'steelblue',
                      'opacity': min(abs(float(value)), 1.0)})
    boundary = mesh.vertices[:mesh.n_boundary]
    segments = [view.xy(seg) for seg in nodal_segments(mesh, psi)]
    return _render('svg/domain.svg', view=view, kind=doc['kind'], manifest=doc.get('manifest'),
                   title='Second eigenfunction, mu2={0:.6g}'.format(doc['mu'][1]),
                   boundary=view.points(boundary), cells=cells, chords=[],
                   segments=segments, points=[])


def render_artifact(doc, overlay=None):
    """
    SVG text for an artifact.  `overlay` is a second artifact drawn underneath: a
    Lyapunov artifact for a coupling path, or the other way around.
    """
    kind = doc.get('kind')
    logger.info('Plotting %s artifact', kind)
    if kind in ('domain', 'special-points', 'analyze'):
        return plot_domain(doc)
    if kind in ('lyapunov', 'coupling'):
        docs = {kind: doc}
        if overlay is not None:
            docs[overlay.get('kind')] = overlay
        if set(docs) - {'lyapunov', 'coupling'}:
            raise UnknownArtifactKind('Cannot overlay {0} on {1}'.format(overlay.get('kind'),
                                                                         kind))
        return plot_chart(lyapunov=docs.get('lyapunov'), coupling=docs.get('coupling'))
    if kind == 'eigen':
        return plot_eigenfunction(doc)
    raise UnknownArtifactKind('No figure for `{0}` artifacts'.format(kind), kind=kind)


def write_svg(path, svg):
    with open(path, 'w') as f:
        f.write(svg)
    return path
