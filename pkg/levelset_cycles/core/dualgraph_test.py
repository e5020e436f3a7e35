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
from levelset_cycles.core import dualgraph
from levelset_cycles.core import errors
from levelset_cycles.core import fixtures
from levelset_cycles.core import mincut

RIM = frozenset([(1, 2), (2, 3), (3, 4), (1, 4)])


def _fan():
  """A square disk: four triangles around vertex 0 with rim 1-2-3-4."""
  return complex_core.build_complex([(0, 1, 2), (0, 2, 3), (0, 3, 4),
                                     (0, 1, 4)])


class VertexNameTest(absltest.TestCase):

  def test_names(self):
    self.assertEqual(dualgraph.vertex_name(dualgraph.cofacet((1, 2, 3))),
                     'c:1-2-3')
    self.assertEqual(dualgraph.vertex_name(dualgraph.dummy(2)), 'phi:2')
    self.assertEqual(dualgraph.vertex_name(dualgraph.OUTER_VERTEX), 'phibar')
    self.assertEqual(dualgraph.vertex_name(dualgraph.boundary_vertex()), 'bbar')
    self.assertEqual(
        dualgraph.vertex_name(dualgraph.boundary_vertex('delta')),
        'bbar:delta')


class DualClosedTest(absltest.TestCase):

  def test_octahedron(self):
    octahedron, _ = fixtures.make_octahedron()
    graph = dualgraph.dual_closed(octahedron, 1)
    self.assertLen(graph.vertices, 8)
    self.assertEqual(graph.num_edges, 12)
    lower = [dualgraph.cofacet(t) for t in octahedron.simplices(2) if 0 in t]
    upper = [dualgraph.cofacet(t) for t in octahedron.simplices(2) if 5 in t]
    graph.set_terminals(lower, upper)
    cut = mincut.min_st_cut(graph)
    self.assertEqual(cut.weight, mincut.ExtendedWeight(0, 4.0))
    crossing = graph.crossing_simplices(cut)
    self.assertEqual(crossing, sorted(RIM))
    self.assertFalse(complex_core.Chain(crossing).boundary())

  def test_weight_domain(self):
    octahedron, _ = fixtures.make_octahedron()
    graph = dualgraph.dual_closed(
        octahedron, 1, weight_domain=lambda sigma: 5 not in sigma)
    for edge in graph.edges():
      self.assertEqual(edge.weight.is_infinite, 5 in edge.data.simplex)

  def test_rejects_boundary(self):
    with self.assertRaises(errors.NotClosedPseudomanifold):
      dualgraph.dual_closed(_fan(), 1)


class DualWithBoundaryTest(absltest.TestCase):

  def test_structure(self):
    graph = dualgraph.dual_with_boundary(_fan(), 1, [RIM], aug_weights=[10.0])
    self.assertLen(graph.vertices, 6)
    self.assertEqual(graph.num_edges, 9)
    rim_edge = graph.edge(graph.dual_edge((1, 2)))
    self.assertEqual(
        set([rim_edge.u, rim_edge.v]),
        set([dualgraph.cofacet((0, 1, 2)), dualgraph.dummy(0)]))

  def test_cheap_augmenting_edge(self):
    graph = dualgraph.dual_with_boundary(_fan(), 1, [RIM], aug_weights=[0.5])
    graph.set_terminals([dualgraph.cofacet((0, 1, 2))],
                        [dualgraph.OUTER_VERTEX])
    cut = mincut.min_st_cut(graph)
    self.assertEqual(cut.weight, mincut.ExtendedWeight(0, 0.5))
    self.assertEqual(graph.crossed_components(cut), [0])
    self.assertEqual(graph.crossing_simplices(cut), [])

  def test_expensive_augmenting_edge(self):
    graph = dualgraph.dual_with_boundary(_fan(), 1, [RIM], aug_weights=[10.0])
    graph.set_terminals([dualgraph.cofacet((0, 1, 2))],
                        [dualgraph.OUTER_VERTEX])
    cut = mincut.min_st_cut(graph)
    self.assertEqual(graph.crossing_simplices(cut), [(0, 1), (0, 2), (1, 2)])
    self.assertEqual(graph.crossed_components(cut), [])

  def test_unclaimed_free_edge_is_a_loop(self):
    host = complex_core.build_complex([(0, 1, 2), (0, 2, 3), (0, 3, 4),
                                       (0, 1, 4), (1, 5)])
    graph = dualgraph.dual_with_boundary(host, 1, [RIM])
    edge = graph.edge(graph.dual_edge((1, 5)))
    self.assertEqual((edge.u, edge.v),
                     (dualgraph.OUTER_VERTEX, dualgraph.OUTER_VERTEX))

  def test_errors(self):
    with self.assertRaises(errors.OverlappingBoundaries):
      dualgraph.dual_with_boundary(_fan(), 1, [RIM, RIM])
    with self.assertRaises(errors.NotContained):
      dualgraph.dual_with_boundary(_fan(), 1, [[(5, 6)]])


class DualComponentSharedTest(absltest.TestCase):

  def _build(self, boundary_side):
    fan = _fan()
    return dualgraph.dual_component_shared(
        [frozenset(fan.simplices(2))],
        1,
        fan,
        weight_domain=None,
        terminal_of=lambda tau: True if tau == (0, 1, 2) else None,
        boundary_side=boundary_side,
        boundary_terminals={'beta': False})

  def test_min_cut(self):
    graph = self._build(lambda sigma: 'beta' if sigma in RIM else None)
    self.assertEqual(graph.sinks, frozenset([dualgraph.boundary_vertex()]))
    cut = mincut.min_st_cut(graph)
    self.assertEqual(
        graph.crossing_simplices(cut, component=0), [(0, 1), (0, 2), (1, 2)])
    self.assertEqual(graph.crossing_simplices(cut, component=1), [])

  def test_free_face_outside_boundary(self):
    with self.assertRaises(errors.AssumptionViolated) as raised:
      self._build(lambda sigma: None)
    self.assertLen(raised.exception.simplices, 1)


class ToDotTest(absltest.TestCase):

  def test_dump(self):
    graph = dualgraph.dual_with_boundary(_fan(), 1, [RIM], aug_weights=[2.0])
    graph.set_terminals([dualgraph.dummy(0)], [dualgraph.OUTER_VERTEX])
    text = dualgraph.to_dot(graph)
    self.assertTrue(text.startswith('graph dual {\n'))
    self.assertIn('"phi:0" [shape=box];', text)
    self.assertIn('"phibar" [shape=diamond];', text)
    self.assertIn('"phi:0" -- "phibar" [label="aug:0 w=2"];', text)
    self.assertIn('"c:0-1-2" -- "c:0-1-4" [label="0-1 w=1"];', text)


if __name__ == '__main__':
  absltest.main()
