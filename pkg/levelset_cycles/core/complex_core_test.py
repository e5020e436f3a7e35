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

from levelset_cycles.core import complex_core
from levelset_cycles.core import errors
from levelset_cycles.core import fixtures


class SimplexTest(absltest.TestCase):

  def test_make_simplex_sorts(self):
    self.assertEqual(complex_core.make_simplex([3, 1, 2]), (1, 2, 3))

  def test_make_simplex_rejects_repeats(self):
    with self.assertRaises(errors.MalformedSimplex):
      complex_core.make_simplex([1, 2, 1])
    with self.assertRaises(errors.MalformedSimplex):
      complex_core.make_simplex([])

  def test_faces_are_lexicographic(self):
    self.assertEqual(
        complex_core.faces((0, 1, 2)), [(0, 1), (0, 2), (1, 2)])
    self.assertEqual(complex_core.faces((4,)), [])

  def test_iter_bits(self):
    self.assertEqual(list(complex_core.iter_bits(0b101001)), [0, 3, 5])


class ChainTest(absltest.TestCase):

  def test_sum_is_symmetric_difference(self):
    a = complex_core.Chain([(0, 1), (1, 2)])
    b = complex_core.Chain([(1, 2), (2, 3)])
    self.assertEqual(a + b, complex_core.Chain([(0, 1), (2, 3)]))
    self.assertEqual((a + a).dim, 1)
    self.assertFalse(a + a)

  def test_mixed_dimensions(self):
    with self.assertRaises(errors.MalformedSimplex):
      complex_core.Chain([(0, 1), (0, 1, 2)])
    with self.assertRaises(errors.MalformedSimplex):
      complex_core.Chain([(0, 1)]) + complex_core.Chain([(0, 1, 2)])

  def test_boundary_of_boundary_vanishes(self):
    chain = complex_core.Chain([(0, 1, 2), (1, 2, 3)])
    edges = chain.boundary()
    self.assertEqual(
        edges, complex_core.Chain([(0, 1), (0, 2), (1, 3), (2, 3)]))
    self.assertTrue(edges.is_cycle())
    self.assertFalse(chain.is_cycle())

  def test_boundary_outside_complex(self):
    complex_ = complex_core.build_complex([(0, 1)])
    with self.assertRaises(errors.NotContained):
      complex_core.boundary(complex_core.Chain([(1, 2)]), complex_)

  def test_weight(self):
    complex_ = complex_core.build_complex([(0, 1, 2)], {(0, 1): 2.5})
    chain = complex_core.Chain([(0, 1), (1, 2)])
    self.assertEqual(chain.weight(complex_), 3.5)


class SimplicialComplexTest(absltest.TestCase):

  def test_build_closes_faces(self):
    complex_ = complex_core.build_complex([(2, 1, 0)])
    self.assertLen(complex_, 7)
    self.assertEqual(complex_.dimension, 2)
    self.assertEqual(complex_.vertices, [0, 1, 2])
    self.assertEqual(complex_.simplices(1), [(0, 1), (0, 2), (1, 2)])
    self.assertEqual(complex_.index((1, 2)), 2)
    self.assertEqual(complex_.simplex_at(1, 1), (0, 2))
    self.assertEqual(complex_.cofaces((0, 1)), ((0, 1, 2),))

  def test_weights(self):
    complex_ = complex_core.build_complex([(0, 1, 2)], {(2, 0): 4})
    self.assertEqual(complex_.weight((0, 2)), 4.0)
    self.assertEqual(complex_.weight((0, 1)), 1.0)
    with self.assertRaises(errors.NegativeWeight):
      complex_core.build_complex([(0, 1)], {(0, 1): -1})
    with self.assertRaises(errors.NegativeWeight):
      complex_core.build_complex([(0, 1)], {(0, 1): float('inf')})
    with self.assertRaises(errors.MalformedSimplex):
      complex_core.build_complex([(0, 1)], {(1, 2): 1})

  def test_missing_face(self):
    with self.assertRaises(errors.MalformedSimplex):
      complex_core.SimplicialComplex([(0,), (0, 1)])

  def test_euler_characteristic(self):
    octahedron, _ = fixtures.make_octahedron()
    torus, _ = fixtures.make_torus()
    self.assertEqual(octahedron.euler_characteristic(), 2)
    self.assertEqual(torus.euler_characteristic(), 0)

  def test_lower_and_upper_star(self):
    octahedron, function = fixtures.make_octahedron()
    self.assertEqual(octahedron.star_order(function), [0, 1, 2, 3, 4, 5])
    self.assertEqual(octahedron.lower_star(0, function), [(0,)])
    self.assertLen(octahedron.upper_star(0, function), 9)
    self.assertLen(octahedron.lower_star(5, function), 9)
    # Ring vertex 2 sees ring neighbors 1 below and 3 above.
    self.assertCountEqual(
        octahedron.lower_star(2, function),
        [(2,), (0, 2), (1, 2), (0, 1, 2)])
    self.assertEqual(octahedron.star(42), [])

  def test_subcomplex_and_closure(self):
    complex_ = complex_core.build_complex([(0, 1, 2), (1, 2, 3)],
                                          {(1, 2): 7})
    closed = complex_core.closure([(1, 2, 3)], ambient=complex_)
    self.assertLen(closed, 7)
    self.assertEqual(closed.weight((1, 2)), 7.0)
    sub = complex_.subcomplex(closed.simplices())
    self.assertEqual(sub.simplices(2), [(1, 2, 3)])
    with self.assertRaises(errors.NotContained):
      complex_.subcomplex([(5,)])

  def test_check_weak_pseudomanifold(self):
    book = complex_core.build_complex([(0, 1, 2), (0, 1, 3), (0, 1, 4)])
    self.assertEqual(complex_core.check_weak_pseudomanifold(book, 1), [(0, 1)])
    torus, _ = fixtures.make_torus()
    self.assertEqual(complex_core.check_weak_pseudomanifold(torus, 1), [])
    with self.assertRaises(ValueError):
      complex_core.check_weak_pseudomanifold(torus, 0)


class QConnectedComponentsTest(absltest.TestCase):

  def test_shared_vertex_does_not_connect(self):
    complex_ = complex_core.build_complex([(0, 1, 2), (1, 2, 3), (3, 4, 5)])
    partition = complex_core.q_connected_components(complex_.simplices(2),
                                                    complex_, 2)
    self.assertLen(partition, 2)
    self.assertEqual(partition[0], frozenset([(0, 1, 2), (1, 2, 3)]))
    self.assertEqual(partition.component_of((3, 4, 5)), 1)
    self.assertIsNone(partition.component_of((0, 1, 3)))

  def test_allowed_faces(self):
    complex_ = complex_core.build_complex([(0, 1, 2), (1, 2, 3)])
    partition = complex_core.q_connected_components(
        complex_.simplices(2), complex_, 2, allowed_faces=set())
    self.assertLen(partition, 2)

  def test_wrong_dimension(self):
    with self.assertRaises(errors.MalformedSimplex):
      complex_core.q_connected_components([(0, 1)], None, 2)


if __name__ == '__main__':
  absltest.main()
