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

from absl.testing import absltest
from absl.testing import parameterized

from levelset_cycles.core import complex_core
from levelset_cycles.core import errors
from levelset_cycles.core import fixtures
from levelset_cycles.core import z2_algebra


def _xor_columns(columns, combination):
  vector = 0
  for j in complex_core.iter_bits(combination):
    vector ^= columns[j]
  return vector


class Z2ReducerTest(absltest.TestCase):

  def setUp(self):
    super(Z2ReducerTest, self).setUp()
    self.columns = [0b011, 0b110, 0b101]
    self.reducer = z2_algebra.Z2Reducer()
    for j, vector in enumerate(self.columns):
      self.reducer.add(1 << j, vector)

  def _assert_consistent(self):
    for low, (vector, combination) in self.reducer.image.items():
      self.assertEqual(vector.bit_length() - 1, low)
      self.assertEqual(_xor_columns(self.columns, combination), vector)
    for combination in self.reducer.kernel:
      self.assertEqual(_xor_columns(self.columns, combination), 0)

  def test_add(self):
    self.assertEqual(self.reducer.rank, 2)
    self.assertEqual(self.reducer.kernel, [0b111])
    self._assert_consistent()

  def test_reduce_and_canonical(self):
    residual, combination = self.reducer.reduce(0b110 ^ 0b011)
    self.assertEqual(residual, 0)
    self.assertEqual(_xor_columns(self.columns, combination), 0b101)
    self.assertEqual(self.reducer.canonical(0b1000), 0b1000)
    self.assertEqual(self.reducer.canonical(0b1011), 0b1000)
    self.assertEqual(self.reducer.canonical(0b001), 0b001)

  def test_remove_absorbed_by_kernel(self):
    self.assertTrue(self.reducer.remove(1 << 0))
    self.assertEqual(self.reducer.rank, 2)
    self.assertEqual(self.reducer.kernel, [])
    for _, combination in self.reducer.image.values():
      self.assertFalse(combination & 1)
    self._assert_consistent()

  def test_remove_drops_image_row(self):
    self.reducer.remove(1 << 0)
    self.assertFalse(self.reducer.remove(1 << 1))
    self.assertEqual(self.reducer.rank, 1)
    self._assert_consistent()
    with self.assertRaises(KeyError):
      self.reducer.remove(1 << 0)


class HomologyTest(parameterized.TestCase):

  @parameterized.named_parameters(
      ('octahedron', fixtures.make_octahedron, (1, 0, 1)),
      ('torus', fixtures.make_torus, (1, 2, 1)),
      ('pinched_sphere', fixtures.make_pinched_sphere, (1, 1, 1)),
      ('cup', fixtures.make_cup, (2, 0, 1)),
  )
  def test_homology_rank(self, make, betti):
    complex_, _ = make()
    self.assertEqual(
        tuple(z2_algebra.homology_rank(complex_, p) for p in range(3)), betti)

  def test_dense_rank_agrees(self):
    complex_, _ = fixtures.make_torus(8, 4)
    for q in (1, 2):
      self.assertEqual(
          z2_algebra.dense_rank(z2_algebra.boundary_matrix(complex_, q)),
          z2_algebra.boundary_rank(complex_, q))

  def test_boundary_matrix_shape(self):
    complex_ = complex_core.build_complex([(0, 1, 2)])
    matrix = z2_algebra.boundary_matrix(complex_, 2)
    self.assertEqual(matrix.shape, (3, 1))
    self.assertEqual(matrix.sum(), 3)
    self.assertEqual(z2_algebra.boundary_matrix(complex_, 0).shape, (0, 3))
    self.assertEqual(z2_algebra.dense_rank([[1, 1], [1, 1]]), 1)
    self.assertEqual(z2_algebra.dense_rank([]), 0)


class BoundaryQueryTest(absltest.TestCase):

  def setUp(self):
    super(BoundaryQueryTest, self).setUp()
    self.octahedron, _ = fixtures.make_octahedron()
    self.ring = complex_core.Chain([(1, 2), (2, 3), (3, 4), (1, 4)])

  def test_solve_boundary(self):
    witness = z2_algebra.solve_boundary(self.ring, self.octahedron)
    self.assertIsNotNone(witness)
    self.assertEqual(witness.boundary(), self.ring)
    self.assertEqual(witness.dim, 2)

  def test_not_null_homologous_without_caps(self):
    band = [s for s in self.octahedron if 0 not in s and 5 not in s]
    self.assertEqual(
        z2_algebra.is_null_homologous(self.ring, set(band)), (False, None))
    self.assertFalse(z2_algebra.bounds(self.ring, set(band)))

  def test_null_homologous_with_witness(self):
    null, witness = z2_algebra.is_null_homologous(self.ring, self.octahedron)
    self.assertTrue(null)
    self.assertEqual(witness.boundary(), self.ring)
    self.assertTrue(z2_algebra.bounds(self.ring, self.octahedron))

  def test_are_homologous(self):
    torus, _ = fixtures.make_torus(8, 4)
    # Vertex (i, j) has id 4 * i + j.
    tube_a = complex_core.Chain([(0, 1), (1, 2), (2, 3), (0, 3)])
    tube_b = complex_core.Chain([(4, 5), (5, 6), (6, 7), (4, 7)])
    around = complex_core.Chain(
        complex_core.make_simplex((4 * i, 4 * ((i + 1) % 8)))
        for i in range(8))
    self.assertTrue(z2_algebra.are_homologous(tube_a, tube_b, torus))
    self.assertFalse(z2_algebra.are_homologous(tube_a, around, torus))
    self.assertFalse(z2_algebra.bounds(around, torus))

  def test_empty_chain(self):
    witness = z2_algebra.solve_boundary(complex_core.Chain(dim=1),
                                        self.octahedron)
    self.assertFalse(witness)
    self.assertEqual(witness.dim, 2)

  def test_errors(self):
    with self.assertRaises(errors.NotACycle):
      z2_algebra.is_null_homologous(
          complex_core.Chain([(1, 2)]), self.octahedron)
    with self.assertRaises(errors.NotContained):
      z2_algebra.is_null_homologous(
          complex_core.Chain([(1, 3), (3, 5), (1, 5)]), self.octahedron)


if __name__ == '__main__':
  absltest.main()
