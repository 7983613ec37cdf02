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

import json
import logging
import math
import os

from jinja2 import Environment, PackageLoader, StrictUndefined

from neumirror.core.options import Tolerances
from neumirror.geometry.utils import curve_from_dict, load_domain
from neumirror.management.exceptions import UnknownDomain

logger = logging.getLogger(__name__)

# preset name -> (template, extra context)
PRESETS = {
    'example1': ('domains/example1.json', {}),
    'example2': ('domains/example2.json', {}),
    'disk': ('domains/disk.json', {}),
    'rect-1x2': ('domains/rectangle.json', {'width': 1.0, 'height': 2.0}),
    'square': ('domains/rectangle.json', {'width': 1.0, 'height': 1.0}),
}

TEMPLATE_FUNCTIONS = {
    'pi': math.pi,
    'sqrt': math.sqrt,
    'sin': math.sin,
    'cos': math.cos,
    'acos': math.acos,
    'atan2': math.atan2,
}


def template_environment():
    return Environment(loader=PackageLoader('neumirror.management', 'templates'),
                       undefined=StrictUndefined, keep_trailing_newline=True)


def render_preset(name, alpha=None):
    """
    The JSON text of a preset domain.
    """
    try:
        template, extra = PRESETS[name]
    except KeyError:
        raise UnknownDomain('`{0}` is neither a preset ({1}) nor a readable file'.format(
            name, ', '.join(sorted(PRESETS))))
    context = dict(TEMPLATE_FUNCTIONS)
    context.update(extra)
    if alpha is not None:
        context['alpha'] = float(alpha)
    return template_environment().get_template(template).render(context)


def preset_document(name, alpha=None):
    return json.loads(render_preset(name, alpha=alpha))


def load_preset(name, alpha=None, tolerances=None, oracle_points=8192):
    """
    Build (curve, alpha) for a preset.
    """
    return curve_from_dict(preset_document(name, alpha=alpha),
                           tolerances=tolerances or Tolerances(),
                           oracle_points=oracle_points)


def resolve_domain(source, alpha=None, tolerances=None, oracle_points=8192):
    """
    A domain given either as a JSON file path or as a preset name.  An explicit
    alpha overrides the one in the document.
    """
    if os.path.isfile(source):
        logger.debug('Loading domain file %s', source)
        curve, doc_alpha = load_domain(source, tolerances=tolerances,
                                       oracle_points=oracle_points)
    elif source in PRESETS:
        logger.debug('Using preset domain %s', source)
        curve, doc_alpha = load_preset(source, tolerances=tolerances,
                                       oracle_points=oracle_points)
    else:
        raise UnknownDomain('`{0}` is neither a preset ({1}) nor a readable file'.format(
            source, ', '.join(sorted(PRESETS))))
    return curve, (doc_alpha if alpha is None else float(alpha))
