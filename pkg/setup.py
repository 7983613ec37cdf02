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

import sys

from setuptools import setup, find_packages

if sys.version_info < (3, 6):
    err_msg = ('Your Python version {0}.{1}.{2} is not supported.\n'
               'neumirror requires Python 3.6 or newer.\n'.format(*sys.version_info[:3]))
    sys.stderr.write(err_msg)
    sys.exit(1)

# Grab the current version from our neumirror package
from neumirror import __version__
VERSION = __version__

# Short and long descriptions for our package
SHORT_DESCRIPTION = ('Mirror couplings of reflected Brownian motion and Neumann eigenvalue '
                     'checks for convex planar domains.')

# Grab README.rst and use its contents as the long description
with open('README.rst') as f:
    LONG_DESCRIPTION = f.read()

requirements = [
    # Heavily used, hold to a specific major version
    'numpy>=1.17,<3',
    'scipy>=1.4,<2',

    # Used, but still hold an upper bound on the version
    'Jinja2>=2.10,<4',

    # Light usage, no need to have an upper bound on the version
    'PyYAML>=3.10',
]

testing_requirements = [
    'coveralls',
    'mock',
    'pycodestyle',
    'pylint',
    'pytest',
    'pytest-cov',
]

# Call the setup method from setuptools that does all the heavy lifting
# of packaging neumirror
setup(
    name='neumirror',
    version=VERSION,
    url='https://github.com/neumirror/neumirror',
    author='The neumirror developers',
    description=SHORT_DESCRIPTION,
    long_description=LONG_DESCRIPTION,
    license='Apache 2.0',
    include_package_data=True,
    package_data={
        'neumirror.management': [
            'templates/*.yaml',
            'templates/domains/*.json',
            'templates/svg/*.svg',
        ],
    },
    packages=find_packages(exclude=('tests', 'dist', 'build', 'docs')),
    zip_safe=False,
    install_requires=requirements,
    extras_require={
        'development': testing_requirements + ['ipython>=2.0'],
        'testing': testing_requirements,
    },
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Operating System :: POSIX :: Linux',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    entry_points={
        'console_scripts': [
            'neumirror = neumirror.management:main',
        ],
    }
)
