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

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import os

from absl.testing import absltest

from levelset_cycles.core import file_util
from levelset_cycles.core import wpc_format
from levelset_cycles.demo import torus_demo


class TorusDemoTest(absltest.TestCase):

  def test_torus_demo(self):
    export_dir = os.path.join(self.create_tempdir().full_path, 'out')
    sequences = torus_demo.run(nu=8, nv=4, export_dir=export_dir)

    self.assertEqual(
        sorted(s.interval.type.value for s in sequences), ['cc', 'oo'])
    document = wpc_format.load_wpc(os.path.join(export_dir, 'torus.wpc'))
    self.assertEqual(document.complex.num_simplices(2), 64)

    results = file_util.load_json_file(os.path.join(export_dir, 'cycles.json'))
    self.assertLen(results, 2)
    for result, sequence in zip(results, sequences):
      self.assertEqual(result['total_weight'], sequence.total_weight)
      self.assertLen(result['cycles'], len(sequence.cycles))

  def test_parallel_run_matches(self):
    self.assertEqual(
        torus_demo.run(nu=8, nv=4), torus_demo.run(nu=8, nv=4, jobs=2))


if __name__ == '__main__':
  absltest.main()
