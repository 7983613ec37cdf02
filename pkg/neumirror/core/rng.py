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

import numpy as np

logger = logging.getLogger(__name__)

SEED_MASK = (1 << 64) - 1


def path_generator(seed, stream):
    """
    Counter-based generator for path `stream` of run `seed`.

    Philox takes a 128-bit key; the high word is the run seed and the low word the
    stream index, so every (seed, stream) pair owns an independent sequence no matter
    which worker draws from it or in what order.
    """
    key = ((int(seed) & SEED_MASK) << 64) | (int(stream) & SEED_MASK)
    return np.random.Generator(np.random.Philox(key=key))


class IncrementSource(object):
    """
    Brownian increments for a batch of paths, drawn in chunks from per-path streams.
    """

    def __init__(self, seed, streams, dt, chunk=1024):
        self.generators = [path_generator(seed, s) for s in streams]
        self.scale = float(np.sqrt(dt))
        self.chunk = int(chunk)
        self._buffer = None
        self._pos = self.chunk

    def _refill(self):
        n = len(self.generators)
        buf = np.empty((self.chunk, n, 2))
        for i, gen in enumerate(self.generators):
            buf[:, i, :] = gen.standard_normal((self.chunk, 2))
        self._buffer = buf * self.scale
        self._pos = 0

    def next(self):
        if self._pos >= self.chunk:
            self._refill()
        ret = self._buffer[self._pos]
        self._pos += 1
        return ret
