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
"""Torus demo code of levelset cycles."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import os

from absl import app
from absl import flags
from absl import logging

from levelset_cycles.cli import cli
from levelset_cycles.core import configs
from levelset_cycles.core import file_util
from levelset_cycles.core import fixtures
from levelset_cycles.core import levelset
from levelset_cycles.core import optcycles
from levelset_cycles.core import wpc_format

FLAGS = flags.FLAGS


def define_flags():
  flags.DEFINE_integer('nu', 8, 'Vertices around the central axis.')
  flags.DEFINE_integer('nv', 8, 'Vertices around the tube.')
  flags.DEFINE_string('export_dir', None,
                      'Optional directory to save the complex and cycles.')
  flags.DEFINE_integer('jobs', configs.DEFAULT_JOBS,
                       'Intervals solved in parallel.')


def run(nu=8, nv=8, export_dir=None, jobs=configs.DEFAULT_JOBS):
  """Runs demo and returns the cycle sequences of the 1st barcode."""
  complex_, function = fixtures.make_torus(nu, nv)
  ctx = levelset.LevelsetContext(complex_, function, 1)
  print('Torus with %d vertices and %d triangles.' %
        (len(complex_.vertices), complex_.num_simplices(2)))

  intervals = ctx.barcode()
  for interval in intervals:
    print('Interval %s' % interval.describe())

  config = configs.SolverConfig.for_verification(jobs=jobs)
  sequences = optcycles.solve_intervals(ctx, intervals, config)
  for sequence in sequences:
    print('%s: %d cycles, total weight %g' %
          (sequence.interval.describe(), len(sequence.cycles),
           sequence.total_weight))

  if export_dir:
    if not os.path.exists(export_dir):
      os.makedirs(export_dir)
    wpc_format.write_wpc(
        os.path.join(export_dir, 'torus.wpc'), complex_, function)
    file_util.write_json_file(
        os.path.join(export_dir, 'cycles.json'),
        [cli.sequence_to_json(ctx, s) for s in sequences])
  return sequences


def main(_):
  logging.set_verbosity(logging.INFO)
  export_dir = FLAGS.export_dir
  if export_dir:
    export_dir = os.path.expanduser(export_dir)
  run(FLAGS.nu, FLAGS.nv, export_dir, FLAGS.jobs)


if __name__ == '__main__':
  define_flags()
  app.run(main)
