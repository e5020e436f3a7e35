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

from levelset_cycles.core import complex_core
from levelset_cycles.core import errors
from levelset_cycles.core import fixtures
from levelset_cycles.core import levelset
from levelset_cycles.core import test_util
from levelset_cycles.core import zigzag

MarkerKind = zigzag.MarkerKind
RangeSpec = levelset.RangeSpec


class PLFunctionTest(absltest.TestCase):

  def test_order_breaks_ties_by_id(self):
    function = levelset.PLFunction({3: 1.0, 1: 1.0, 2: 0.0})
    self.assertEqual(function.order, (2, 1, 3))
    self.assertEqual(function.key(3), 2)
    self.assertLen(function, 3)
    self.assertEqual(list(function), [2, 1, 3])

  def test_negated_reverses_order(self):
    function = levelset.PLFunction({3: 1.0, 1: 1.0, 2: 0.0})
    negated = function.negated()
    self.assertEqual(negated.order, (3, 1, 2))
    self.assertEqual(negated[2], -0.0)

  def test_rejects_non_finite_values(self):
    with self.assertRaises(ValueError):
      levelset.PLFunction({0: math.nan})
    with self.assertRaises(ValueError):
      levelset.PLFunction({0: math.inf})
    with self.assertRaises(ValueError):
      levelset.PLFunction({0: 0.0, 1: 1.0}, order=[0])


class RangeSpecTest(absltest.TestCase):

  def test_rank_bounds(self):
    critical = levelset.CriticalInfo([0.0, 1.0, 2.0], [0, 2],
                                     levelset.PLFunction({0: 0., 1: 1., 2: 2.}))
    self.assertEqual(critical.ranks, (-1, 0, 2, 3))
    self.assertEqual(critical.values, (-math.inf, 0.0, 2.0, math.inf))
    self.assertEqual(critical.vertices, (None, 0, 2, None))
    self.assertEqual(critical.m, 2)
    self.assertEqual(RangeSpec.open(1, 2).rank_bounds(critical), (1, 1))
    self.assertEqual(RangeSpec.closed_open(1, 2).rank_bounds(critical), (0, 1))
    self.assertEqual(RangeSpec.open_closed(1, 2).rank_bounds(critical), (1, 2))
    self.assertEqual(RangeSpec.open(0, 1).rank_bounds(critical), (0, -1))

  def test_empty_range(self):
    with self.assertRaises(ValueError):
      RangeSpec.open(2, 1)


class CriticalValuesTest(absltest.TestCase):

  def test_torus(self):
    complex_, function = fixtures.make_torus()
    critical = levelset.detect_p_critical(complex_, function, 1)
    self.assertEqual(critical.p_critical_vertices, (0, 4, 36, 32))
    self.assertEqual(critical.p_critical_values,
                     tuple(function[v] for v in (0, 4, 36, 32)))
    self.assertLen(critical.all_values, 64)

  def test_no_critical_values_in_other_dimensions(self):
    complex_, function = fixtures.make_torus(8, 4)
    self.assertEqual(
        levelset.detect_p_critical(complex_, function, 2).m, 0)

  def test_negated(self):
    ctx = test_util.make_context('monkey_saddle')
    negated = ctx.negated()
    self.assertEqual(negated.m, ctx.m)
    self.assertEqual(negated.critical.p_critical_vertices,
                     tuple(reversed(ctx.critical.p_critical_vertices)))
    self.assertEqual(negated.critical.p_critical_values,
                     tuple(-x for x in reversed(ctx.critical.p_critical_values)))
    self.assertIs(ctx.negated(), negated)


class CompatibilityTest(absltest.TestCase):

  def test_tetrahedron_is_incompatible(self):
    complex_, function = fixtures.make_tetrahedron()
    critical = levelset.detect_p_critical(complex_, function, 1)
    self.assertEqual(critical.p_critical_vertices, (0, 3))
    self.assertEqual(
        levelset.check_compatibility(complex_, function, critical, 1),
        [(0, 1, 3), (0, 2, 3)])
    with self.assertRaises(errors.IncompatibleComplex) as raised:
      levelset.build_simplexwise_filtration(complex_, function, critical, 1)
    self.assertEqual(raised.exception.simplices, ((0, 1, 3), (0, 2, 3)))

  def test_subdivision_is_compatible(self):
    complex_, function = fixtures.make_subdivided_tetrahedron()
    ctx = levelset.LevelsetContext(complex_, function, 1)
    self.assertEqual(ctx.compatibility_violations(), [])
    bars = ctx.barcode()
    self.assertLen(bars, 1)
    self.assertEqual(bars[0].type, zigzag.IntervalType.OPEN_OPEN)
    self.assertEqual((bars[0].birth_value, bars[0].death_value), (0.0, 3.0))

  def test_incompatible_barcode_only_mode(self):
    complex_, function = fixtures.make_tetrahedron()
    ctx = levelset.LevelsetContext(complex_, function, 1)
    with self.assertRaises(errors.IncompatibleComplex):
      ctx.filtration()
    self.assertEqual(ctx.barcode(strict=False), [])


class FiltrationTest(absltest.TestCase):

  def setUp(self):
    super(FiltrationTest, self).setUp()
    self.ctx = test_util.make_context('monkey_saddle')
    self.filtration = self.ctx.filtration()

  def test_starts_and_ends_empty(self):
    self.assertEqual(self.filtration.complex_at(0), frozenset())
    self.assertEqual(
        self.filtration.complex_at(len(self.filtration)), frozenset())
    added = [s.simplex for s in self.filtration.steps if s.added]
    self.assertCountEqual(added, self.ctx.complex.simplices())

  def test_every_prefix_is_a_complex(self):
    current = set()
    for step in self.filtration.steps:
      if step.added:
        for face in complex_core.faces(step.simplex):
          self.assertIn(face, current)
        current.add(step.simplex)
      else:
        self.assertFalse(
            any(c in current for c in self.ctx.complex.cofaces(step.simplex)))
        current.remove(step.simplex)

  def test_markers(self):
    ctx, filtration = self.ctx, self.filtration
    self.assertEqual(ctx.m, 5)
    for i in range(ctx.m + 1):
      self.assertEqual(
          filtration.complex_at(filtration.position(MarkerKind.REGULAR, i)),
          ctx.regular(i))
    for i in range(1, ctx.m + 1):
      self.assertEqual(
          filtration.complex_at(filtration.position(MarkerKind.CRITICAL, i)),
          ctx.range_simplices(RangeSpec.open(i - 1, i + 1)))
      self.assertEqual(
          filtration.complex_at(filtration.position(MarkerKind.UPTO, i)),
          ctx.range_simplices(RangeSpec.open_closed(i - 1, i)))
      self.assertEqual(
          filtration.complex_at(filtration.position(MarkerKind.FROM, i)),
          ctx.range_simplices(RangeSpec.closed_open(i, i + 1)))
    self.assertEqual(ctx.regular(0), frozenset())
    self.assertLen(filtration.levelset_markers(), 2 * ctx.m + 1)

  def test_negated_filtration_is_reversed(self):
    negated = self.ctx.negated().filtration()
    self.assertEqual(
        list(negated.steps),
        [zigzag.Step(not s.added, s.simplex)
         for s in reversed(self.filtration.steps)])

  def test_regular_and_slab_index(self):
    ctx = self.ctx
    self.assertEqual(ctx.critical.ranks, (-1, 0, 7, 17, 24, 28, 29))
    self.assertEqual(ctx.regular_index((1,)), 1)
    self.assertIsNone(ctx.regular_index((0,)))
    self.assertIsNone(ctx.regular_index((1, 7)))
    self.assertEqual(ctx.slab_index((1, 7)), 2)
    self.assertIsNone(ctx.slab_index((1,)))
    self.assertIn((1, 7), ctx.slab(2).simplices)
    self.assertEqual(
        ctx.slab(2),
        levelset.slab(ctx.complex, ctx.function, ctx.critical, 2))
    self.assertEqual(ctx.hull((1, 7)), (1, 7))

  def test_range_complex(self):
    ctx = self.ctx
    spec = RangeSpec.open(1, 3)
    self.assertEqual(
        ctx.range_complex(spec).simplices(),
        levelset.range_complex(ctx.complex, ctx.function, ctx.critical,
                               spec).simplices())

  def test_missing_values(self):
    complex_, _ = fixtures.make_octahedron()
    with self.assertRaises(ValueError):
      levelset.LevelsetContext(complex_, levelset.PLFunction({0: 1.0}), 1)


if __name__ == '__main__':
  absltest.main()
