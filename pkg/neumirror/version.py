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

import datetime
import os
import subprocess

VERSION = (0, 3, 0, 'dev', 0)


def get_version(version):
    """
    Returns a PEP 440-compliant version number from VERSION.

    major = X.Y[.Z]
    sub = .devN for development builds, {a|b|rc}N for pre-releases, .postN otherwise
    """
    if len(version) != 5:
        raise ValueError('Invalid version: {0}'.format(version))

    major = '.'.join(str(x) for x in version[:3])

    if version[3] == 'final':
        return major

    if version[3] == 'dev':
        stamp = get_git_changeset()
        return '{0}.dev{1}'.format(major, stamp or version[4])
    if version[3] == 'post':
        return '{0}.post{1}'.format(major, version[4])
    if version[3] in ('a', 'b', 'rc'):
        return '{0}{1}{2}'.format(major, version[3], version[4])

    raise ValueError('Invalid version: {0}'.format(version))


def get_git_changeset():
    """
    UTC timestamp (YYYYMMDDHHMMSS) of the latest commit of the source checkout,
    or None outside a git checkout.
    """
    repo_dir = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    try:
        out = subprocess.check_output(['git', 'log', '--pretty=format:%ct', '--quiet', '-1',
                                       'HEAD'], cwd=repo_dir, stderr=subprocess.DEVNULL,
                                      universal_newlines=True)
        stamp = datetime.datetime.utcfromtimestamp(int(out))
    except (OSError, ValueError, subprocess.CalledProcessError):
        return None
    return stamp.strftime('%Y%m%d%H%M%S')


__version__ = get_version(VERSION)
