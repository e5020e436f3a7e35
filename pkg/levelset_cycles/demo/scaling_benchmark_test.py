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

import math

from absl.testing import absltest

from levelset_cycles.demo import scaling_benchmark


class ScalingBenchmarkTest(absltest.TestCase):

  def test_run(self):
    timings, slope = scaling_benchmark.run(sizes=(4, 8))
    self.assertEqual([t.n for t in timings], [4, 8])
    self.assertEqual([t.num_simplices for t in timings], [96, 384])
    self.assertTrue(math.isfinite(slope))

  def test_log_log_slope(self):
    timings = [
        scaling_benchmark.Timing(n, size, 1e-3 * size**2)
        for n, size in ((8, 100), (16, 400), (24, 900))
    ]
    self.assertAlmostEqual(scaling_benchmark.log_log_slope(timings), 2.0)


if __name__ == '__main__':
  absltest.main()
