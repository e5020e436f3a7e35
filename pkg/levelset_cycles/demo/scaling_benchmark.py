# Copyright 2021 The Levelset Cycles Authors. All Rights Reserved.
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
"""Times barcode and cycle computation on growing tori."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import collections
import time

from absl import app
from absl import flags
from absl import logging
import numpy as np

from levelset_cycles.core import fixtures
from levelset_cycles.core import levelset
from levelset_cycles.core import optcycles

FLAGS = flags.FLAGS

DEFAULT_SIZES = (8, 16, 24, 32)

Timing = collections.namedtuple('Timing',
                                ['n', 'num_simplices', 'seconds'])


def define_flags():
  flags.DEFINE_list('sizes', [str(n) for n in DEFAULT_SIZES],
                    'Torus resolutions n; each run uses make_torus(n, n).')


def time_torus(n):
  """Solves every interval of make_torus(n, n) and returns a `Timing`."""
  complex_, function = fixtures.make_torus(n, n)
  start = time.perf_counter()
  ctx = levelset.LevelsetContext(complex_, function, 1)
  optcycles.solve_intervals(ctx, ctx.barcode())
  seconds = time.perf_counter() - start
  logging.info('n=%d: %d simplices in %.3fs.', n, len(complex_), seconds)
  return Timing(n, len(complex_), seconds)


def log_log_slope(timings):
  """Slope of log(seconds) against log(simplex count)."""
  x = np.log([t.num_simplices for t in timings])
  y = np.log([max(t.seconds, 1e-9) for t in timings])
  slope, _ = np.polyfit(x, y, 1)
  return float(slope)


def run(sizes=DEFAULT_SIZES):
  """Runs the benchmark; returns the timings and the log-log slope."""
  timings = [time_torus(int(n)) for n in sizes]
  for timing in timings:
    print('n=%3d  simplices=%6d  seconds=%8.3f' % timing)
  slope = log_log_slope(timings)
  print('log-log slope: %.2f' % slope)
  return timings, slope


def main(_):
  logging.set_verbosity(logging.INFO)
  run(FLAGS.sizes)


if __name__ == '__main__':
  define_flags()
  app.run(main)
