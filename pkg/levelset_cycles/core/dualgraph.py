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
"""Dual graphs of pseudomanifolds, with dummy and boundary vertices.

A vertex of a dual graph stands for a (p+1)-simplex and an edge for the
p-simplex its two ends share. Cutting the graph into a source side and a
sink side selects the crossing p-simplices, which always form a p-cycle.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import collections
import math

from absl import logging

from levelset_cycles.core import complex_core
from levelset_cycles.core import errors
from levelset_cycles.core import mincut

COFACET = 'cofacet'
DUMMY = 'dummy'
OUTER = 'outer'
BOUNDARY = 'boundary'

DUAL = 'dual'
AUGMENTING = 'augmenting'

DualVertex = collections.namedtuple('DualVertex', ['kind', 'key'])
DualEdge = collections.namedtuple('DualEdge', ['kind', 'simplex', 'component'])

OUTER_VERTEX = DualVertex(OUTER, None)


def cofacet(simplex):
  return DualVertex(COFACET, simplex)


def dummy(j):
  return DualVertex(DUMMY, j)


def boundary_vertex(side='beta'):
  return DualVertex(BOUNDARY, side)


def vertex_name(vertex):
  """Stable text name of a dual vertex."""
  if vertex.kind == COFACET:
    return 'c:' + '-'.join(str(v) for v in vertex.key)
  if vertex.kind == DUMMY:
    return 'phi:%d' % vertex.key
  if vertex.kind == OUTER:
    return 'phibar'
  if vertex.key == 'beta':
    return 'bbar'
  return 'bbar:%s' % vertex.key


class DualGraph(mincut.FlowGraph):
  """A `FlowGraph` whose edges remember the simplices they are dual to."""

  def __init__(self, p):
    super(DualGraph, self).__init__()
    self.p = p
    self._dual_edges = {}
    self._augmenting = {}

  def add_dual_edge(self, simplex, u, v, weight, component=None):
    index = self.add_edge(u, v, weight, DualEdge(DUAL, simplex, component))
    self._dual_edges[simplex] = index
    return index

  def add_augmenting_edge(self, j, weight):
    index = self.add_edge(
        dummy(j), OUTER_VERTEX, weight, DualEdge(AUGMENTING, None, j))
    self._augmenting[j] = index
    return index

  def dual_edge(self, simplex):
    """Index of the edge dual to `simplex`."""
    return self._dual_edges[simplex]

  @property
  def dual_simplices(self):
    return sorted(self._dual_edges)

  def crossing_simplices(self, cut, component=None):
    """p-simplices dual to the non-augmenting edges crossing `cut`.

    Args:
      cut: A `mincut.CutResult` of this graph.
      component: If given, only edges tagged with this component count.

    Returns:
      A sorted list of p-simplices.
    """
    simplices = []
    for index in cut.crossing_edges:
      data = self.edge_data(index)
      if data.kind != DUAL:
        continue
      if component is not None and data.component != component:
        continue
      simplices.append(data.simplex)
    return sorted(simplices)

  def crossed_components(self, cut):
    """Components whose augmenting edge crosses `cut`."""
    crossed = set(cut.crossing_edges)
    return sorted(j for j, index in self._augmenting.items() if index in crossed)


def _domain_weight(host, simplex, weight_domain):
  if weight_domain is None or weight_domain(simplex):
    return host.weight(simplex)
  return math.inf


def dual_closed(host, p, weight_domain=None):
  """Dual graph of a closed (p+1)-pseudomanifold.

  Args:
    host: A `SimplicialComplex` whose p-simplices each have two cofaces.
    p: Dimension of the cycles.
    weight_domain: Predicate on p-simplices; edges dual to simplices outside
      it get infinite weight. None means every edge is finite.

  Returns:
    A `DualGraph` without terminals.

  Raises:
    NotClosedPseudomanifold: If some p-simplex does not have two cofaces.
  """
  graph = DualGraph(p)
  for tau in host.simplices(p + 1):
    graph.add_vertex(cofacet(tau))
  for sigma in host.simplices(p):
    cofaces = host.cofaces(sigma)
    if len(cofaces) != 2:
      raise errors.NotClosedPseudomanifold(
          '%r has %d cofaces instead of two.' % (sigma, len(cofaces)))
    graph.add_dual_edge(sigma, cofacet(cofaces[0]), cofacet(cofaces[1]),
                        _domain_weight(host, sigma, weight_domain))
  logging.vlog(1, 'Closed dual graph: %d vertices, %d edges.',
               len(graph.vertices), graph.num_edges)
  return graph


def dual_with_boundary(host, p, boundaries, aug_weights=None):
  """Dual graph of `host` with a dummy vertex per component boundary.

  A p-simplex with two cofaces in `host` joins them. One with a single
  coface joins it to the dummy of the component whose boundary holds the
  simplex, or to the outer vertex. One without cofaces joins the dummies of
  the boundaries holding it, the outer vertex filling a missing end; with no
  boundary it becomes a self-loop at the outer vertex.

  Args:
    host: The `SimplicialComplex` the graph is dual to.
    p: Dimension of the cycles.
    boundaries: List of sets of p-simplices, the j-th being the boundary of
      component j.
    aug_weights: Optional list of augmenting edge weights, one per component.

  Returns:
    A `DualGraph` without terminals.

  Raises:
    OverlappingBoundaries: If a p-simplex has more than two incidences.
  """
  graph = DualGraph(p)
  graph.add_vertex(OUTER_VERTEX)
  claims = collections.defaultdict(list)
  for j, boundary in enumerate(boundaries):
    graph.add_vertex(dummy(j))
    for sigma in boundary:
      if sigma not in host:
        raise errors.NotContained('Boundary simplex %r of component %d is not '
                                  'in the host.' % (sigma, j))
      claims[sigma].append(j)
  for tau in host.simplices(p + 1):
    graph.add_vertex(cofacet(tau))
  for sigma in host.simplices(p):
    ends = [cofacet(tau) for tau in host.cofaces(sigma)]
    ends.extend(dummy(j) for j in claims.get(sigma, ()))
    if len(ends) > 2:
      raise errors.OverlappingBoundaries(
          '%r has %d incidences among cofaces and boundaries.' %
          (sigma, len(ends)))
    while len(ends) < 2:
      ends.append(OUTER_VERTEX)
    graph.add_dual_edge(sigma, ends[0], ends[1], host.weight(sigma))
  for j, weight in enumerate(aug_weights or ()):
    graph.add_augmenting_edge(j, weight)
  logging.vlog(1, 'Bounded dual graph: %d vertices, %d edges, %d dummies.',
               len(graph.vertices), graph.num_edges, len(boundaries))
  return graph


def dual_component_shared(components, p, ambient, weight_domain, terminal_of,
                          boundary_side, boundary_terminals):
  """One dual graph over several components sharing boundary vertices.

  Args:
    components: List of sets of (p+1)-simplices.
    p: Dimension of the cycles.
    ambient: `SimplicialComplex` providing the weights.
    weight_domain: Predicate on p-simplices with finite weight.
    terminal_of: Maps a (p+1)-simplex to True (source), False (sink) or None.
    boundary_side: Maps a p-simplex to the boundary side holding it (e.g.
      'beta' or 'delta'), or None.
    boundary_terminals: Maps each side to True (source) or False (sink).

  Returns:
    A `DualGraph` with its terminals set; edges are tagged with the index of
    their component.

  Raises:
    AssumptionViolated: If a component has a free p-face outside every
      boundary side.
  """
  graph = DualGraph(p)
  sources, sinks = set(), set()
  for side, is_source in sorted(boundary_terminals.items()):
    vertex = graph.add_vertex(boundary_vertex(side))
    (sources if is_source else sinks).add(vertex)
  for j, component in enumerate(components):
    incident = collections.defaultdict(list)
    for tau in sorted(component):
      vertex = graph.add_vertex(cofacet(tau))
      role = terminal_of(tau)
      if role is not None:
        (sources if role else sinks).add(vertex)
      for sigma in complex_core.faces(tau):
        incident[sigma].append(tau)
    for sigma in sorted(incident):
      cofaces = incident[sigma]
      weight = _domain_weight(ambient, sigma, weight_domain)
      if len(cofaces) == 2:
        graph.add_dual_edge(sigma, cofacet(cofaces[0]), cofacet(cofaces[1]),
                            weight, component=j)
        continue
      side = boundary_side(sigma) if len(cofaces) == 1 else None
      if side is None or side not in boundary_terminals:
        raise errors.AssumptionViolated(
            'Component %d has a p-face with %d cofaces outside the boundary.'
            % (j, len(cofaces)), [sigma])
      graph.add_dual_edge(sigma, cofacet(cofaces[0]), boundary_vertex(side),
                          weight, component=j)
  graph.set_terminals(sources, sinks)
  return graph


def to_dot(graph):
  """Renders a dual graph as DOT text."""
  lines = ['graph dual {']
  for vertex in graph.vertices:
    attributes = ''
    if vertex in graph.sources:
      attributes = ' [shape=box]'
    elif vertex in graph.sinks:
      attributes = ' [shape=diamond]'
    lines.append('  "%s"%s;' % (vertex_name(vertex), attributes))
  for edge in graph.edges():
    if edge.data is not None and edge.data.kind == AUGMENTING:
      label = 'aug:%d' % edge.data.component
    elif edge.data is not None:
      label = '-'.join(str(v) for v in edge.data.simplex)
    else:
      label = ''
    weight = 'inf' if edge.weight.is_infinite else '%g' % edge.weight.finite
    lines.append('  "%s" -- "%s" [label="%s w=%s"];' %
                 (vertex_name(edge.u), vertex_name(edge.v), label, weight))
  lines.append('}')
  return '\n'.join(lines) + '\n'
