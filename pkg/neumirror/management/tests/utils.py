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

import io
import json
import logging

from mock import patch

from neumirror.core.config import DEFAULT_CONFIG_LOCATION
from neumirror.management import main

logger = logging.getLogger(__name__)

SQUARE_DOC = {
    'alpha': 0.7853981633974483,
    'pieces': [
        {'kind': 'segment', 'from': [0.0, 0.0], 'to': [1.0, 0.0]},
        {'kind': 'segment', 'from': [1.0, 0.0], 'to': [1.0, 1.0]},
        {'kind': 'segment', 'from': [1.0, 1.0], 'to': [0.0, 1.0]},
        {'kind': 'segment', 'from': [0.0, 1.0], 'to': [0.0, 0.0]},
    ],
}


def run_cli(*argv):
    """
    Run the console entry point against the packaged default config.  Returns the
    exit code and whatever went to stdout.
    """
    argv = ['--config', DEFAULT_CONFIG_LOCATION, '--log-level', 'warning'] + list(argv)
    with patch('sys.stdout', new_callable=io.StringIO) as stdout:
        try:
            main(argv)
        except SystemExit as e:
            code = e.code
        else:
            code = None
    return code, stdout.getvalue()


def run_json(*argv):
    code, out = run_cli('--json', *argv)
    return code, json.loads(out) if out else None


def write_doc(path, doc):
    with open(path, 'w') as f:
        json.dump(doc, f)
    return path
