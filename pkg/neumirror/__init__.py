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

from neumirror.version import __version__

__copyright__ = "Copyright 2026,  The neumirror developers"
__license__ = "Apache License Version 2.0, January 2004"
__maintainer__ = "https://github.com/neumirror/neumirror"
