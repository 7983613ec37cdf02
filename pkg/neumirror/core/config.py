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

import yaml
from jinja2 import Template

from neumirror.core.exceptions import InputError
from neumirror.core.options import Sampling, Tolerances
from neumirror.core.utils import recursive_update

logger = logging.getLogger(__name__)


# The package dir; the default config ships inside it.
PACKAGE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

DEFAULT_CONFIG_LOCATION = os.path.join(PACKAGE_DIR, 'management', 'templates', 'neumirror.yaml')


class NeumirrorConfigException(InputError):
    default_detail = 'Configuration error'


class NeumirrorConfig(dict):
    DOT_DIR_CONFIG_LOCATION = os.path.expanduser('~/.neumirror/neumirror.yaml')

    REQUIRED_FIELDS = {
        'tolerances': dict,
        'sampling': dict,
        'simulation': dict,
        'spectral': dict,
        'log_level': str,
    }

    SIMULATION_FIELDS = ('dt', 't_max', 'record_stride', 'paths', 'step_guard', 'eps_factor',
                         'threads')

    SPECTRAL_FIELDS = ('h', 'levels', 'k', 'min_angle', 'smoothing', 'mono_pairs')

    def __init__(self, cfg_file=None, overrides=None):
        super(NeumirrorConfig, self).__init__()
        self.cfg_file = cfg_file
        self._load_config(overrides or {})

    @classmethod
    def config_locations(cls):
        return (
            os.environ.get('NEUMIRROR_CONFIG_FILE', ''),
            cls.DOT_DIR_CONFIG_LOCATION,
            '/etc/neumirror/neumirror.yaml',
            DEFAULT_CONFIG_LOCATION,
        )

    @staticmethod
    def default_context():
        return {
            'user_home': os.path.expanduser('~'),
            'cwd': os.getcwd(),
        }

    def _find_config_file(self):
        if self.cfg_file:
            if not os.path.isfile(self.cfg_file):
                raise NeumirrorConfigException(
                    'Configuration file `{0}` does not exist'.format(self.cfg_file))
            return self.cfg_file

        for cfg_file in self.config_locations():
            if cfg_file and os.path.isfile(cfg_file):
                return cfg_file

        raise NeumirrorConfigException(
            'Missing neumirror configuration file. '
            'To create the file, you may use `neumirror init`'
        )

    def _load_config(self, overrides):
        self.cfg_file = self._find_config_file()

        logger.info('Loading configuration from %s', self.cfg_file)
        with open(self.cfg_file) as f:
            template = Template(f.read())
            try:
                config = yaml.safe_load(template.render(**self.default_context()))
            except yaml.YAMLError as e:
                raise NeumirrorConfigException(
                    'configuration file is not valid yaml: {0}'.format(e))

        if not config:
            raise NeumirrorConfigException(
                'neumirror configuration file appears to be empty or not valid yaml.'
            )

        recursive_update(config, overrides)

        errors = []
        for k, t in sorted(self.REQUIRED_FIELDS.items()):
            if k not in config:
                errors.append('Missing parameter `{0}`'.format(k))
                continue
            if not isinstance(config[k], t):
                errors.append('Config parameter `{0}` must be of type `{1}`, '
                              'got `{2}` instead'.format(k, t.__name__,
                                                         type(config[k]).__name__))

        for section, fields in (('simulation', self.SIMULATION_FIELDS),
                                ('spectral', self.SPECTRAL_FIELDS)):
            for field in fields:
                if isinstance(config.get(section), dict) and field not in config[section]:
                    errors.append('Missing parameter `{0}.{1}`'.format(section, field))

        # Option objects reject unknown names themselves
        for section, cls in (('tolerances', Tolerances), ('sampling', Sampling)):
            try:
                cls(config.get(section) or {})
            except InputError as e:
                errors.append(e.detail)

        if errors:
            msg = 'neumirror configuration errors:\n'
            for err in errors:
                msg += '  - {0}\n'.format(err)
            raise NeumirrorConfigException(msg)

        self.update(config)

        if self.log_dir and not os.path.isdir(self.log_dir):
            os.makedirs(self.log_dir)

    @property
    def tolerance_options(self):
        return Tolerances(self.tolerances)

    @property
    def sampling_options(self):
        return Sampling(self.sampling)

    def __getattr__(self, k):
        return self.get(k)

    def __setattr__(self, k, v):
        self[k] = v
