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

import csv
import json
import logging
import os

import numpy as np

from neumirror.core.exceptions import InputError
from neumirror.core.utils import dumps_canonical
from neumirror.management.exceptions import UnknownArtifactKind

logger = logging.getLogger(__name__)

ARTIFACT_KINDS = (
    'domain',
    'special-points',
    'assumptions',
    'lyapunov',
    'coupling',
    'invariance',
    'eigen',
    'analyze',
    'heat-check',
    'pipeline',
)

# written as the first line of every CSV artifact
CSV_MANIFEST_PREFIX = '# manifest='


def jsonable(obj):
    """
    Plain python containers and scalars in place of numpy ones.  NaN and infinity
    become None.
    """
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return jsonable(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        obj = float(obj)
        return obj if np.isfinite(obj) else None
    return obj


def artifact_document(kind, manifest_id, payload):
    if kind not in ARTIFACT_KINDS:
        raise UnknownArtifactKind('`{0}` is not one of {1}'.format(kind, ', '.join(ARTIFACT_KINDS)))
    doc = jsonable(payload)
    doc['kind'] = kind
    doc['manifest'] = manifest_id
    return doc


def write_json(path, doc):
    with open(path, 'w') as f:
        f.write(dumps_canonical(doc))
    logger.debug('Wrote %s', path)
    return path


def write_csv(path, rows, manifest_id):
    with open(path, 'w', newline='') as f:
        f.write('{0}{1}\n'.format(CSV_MANIFEST_PREFIX, manifest_id))
        writer = csv.writer(f, lineterminator='\n')
        for row in rows:
            writer.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v
                             for v in row])
    logger.debug('Wrote %s', path)
    return path


def read_csv(path):
    """
    (manifest id, header, float rows) of a CSV artifact.
    """
    with open(path, newline='') as f:
        lines = f.read().splitlines()
    manifest_id = None
    if lines and lines[0].startswith(CSV_MANIFEST_PREFIX):
        manifest_id = lines.pop(0)[len(CSV_MANIFEST_PREFIX):]
    reader = csv.reader(lines)
    try:
        header = next(reader)
        rows = np.array([[float(v) for v in row] for row in reader if row], dtype=float)
    except (StopIteration, ValueError) as e:
        raise InputError('`{0}` is not a numeric CSV artifact: {1}'.format(path, e))
    return manifest_id, header, rows


def read_artifact(path):
    """
    Load a JSON artifact, or a coupling CSV as {'kind': 'coupling', 'columns', 'rows'}.
    """
    if not os.path.isfile(path):
        raise InputError('Artifact `{0}` does not exist'.format(path))
    if path.endswith('.csv'):
        manifest_id, header, rows = read_csv(path)
        if 'u1' not in header:
            raise UnknownArtifactKind('`{0}` is not a coupling path CSV'.format(path))
        return {'kind': 'coupling', 'manifest': manifest_id, 'columns': header,
                'rows': rows}
    try:
        with open(path) as f:
            doc = json.load(f)
    except ValueError as e:
        raise InputError('Artifact `{0}` is not valid JSON: {1}'.format(path, e))
    if not isinstance(doc, dict) or doc.get('kind') not in ARTIFACT_KINDS:
        raise UnknownArtifactKind('`{0}` has no known artifact kind'.format(path),
                                  kind=doc.get('kind') if isinstance(doc, dict) else None)
    return doc
