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
import logging.config
import os
from logging.handlers import WatchedFileHandler

logger = logging.getLogger(__name__)
package_logger = logging.getLogger('neumirror')

LOG_FORMAT = '%(asctime)s %(levelname)s [%(threadName)s] %(name)s - %(message)s'

LOG_LEVELS = {
    'debug': logging.DEBUG,
    'info': logging.INFO,
    'warning': logging.WARNING,
    'error': logging.ERROR,
    'critical': logging.CRITICAL,
}


def get_logging_config(log_level='info', log_dir=None):
    level = log_level.upper()

    config = {
        'version': 1,
        'disable_existing_loggers': False,
        'formatters': {
            'default': {
                'format': LOG_FORMAT,
            }
        },
        'handlers': {
            'console': {
                'level': level,
                'formatter': 'default',
                'class': 'logging.StreamHandler',
                'stream': 'ext://sys.stderr',
            },
        },
        'loggers': {
            'neumirror': {
                'handlers': ['console'],
                'level': level,
                'propagate': False,
            },
        },
    }

    if log_dir:
        config['handlers']['file'] = {
            'level': 'DEBUG',
            'formatter': 'default',
            'class': 'logging.handlers.RotatingFileHandler',
            'filename': os.path.join(log_dir, 'neumirror.log'),
            'maxBytes': 5242880,
            'backupCount': 5,
        }
        config['loggers']['neumirror']['handlers'].append('file')

    return config


def setup_logging(log_level='info', log_dir=None):
    if log_level.lower() not in LOG_LEVELS:
        raise ValueError('Invalid log level: {0}'.format(log_level))
    logging.config.dictConfig(get_logging_config(log_level, log_dir))


def setup_logfile_logger(log_path, log_level=None, log_format=None, date_format=None):
    """
    Copy the package's log records to a file as well, on top of whatever
    setup_logging configured.
    """
    handler = WatchedFileHandler(log_path, mode='a', encoding='utf-8', delay=False)

    if log_level:
        handler.setLevel(LOG_LEVELS.get(log_level.lower(), logging.ERROR))

    formatter = logging.Formatter(log_format or LOG_FORMAT,
                                  datefmt=date_format or '%Y-%m-%d %H:%M:%S')

    handler.setFormatter(formatter)
    package_logger.addHandler(handler)

    return handler
