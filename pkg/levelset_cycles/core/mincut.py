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
"""Minimum s-t cuts over extended weights.

Edge weights are non-negative reals or infinity. Infinite weights are encoded
as `ExtendedWeight(count, finite)` pairs ordered lexicographically and mapped
to exact capacities `count * M + finite` with M above the total finite
weight, so networkx's max-flow never mixes infinities with reals.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import collections
import fractions
import math

from absl import logging
import networkx as nx
from networkx.algorithms.flow import edmonds_karp
from networkx.utils import UnionFind

from levelset_cycles.core import errors

_SUPER_SOURCE = ('__super__', 'source')
_SUPER_SINK = ('__super__', 'sink')


class ExtendedWeight(
    collections.namedtuple('ExtendedWeight', ['infinite_count', 'finite'])):
  """A weight `infinite_count * inf + finite`, compared lexicographically."""

  __slots__ = ()

  @classmethod
  def of(cls, weight):
    """Converts a float (possibly `math.inf`) or an ExtendedWeight."""
    if isinstance(weight, ExtendedWeight):
      return weight
    if math.isinf(weight):
      if weight < 0:
        raise errors.NegativeWeight('Weight %r is negative.' % weight)
      return cls(1, 0.0)
    if weight < 0 or math.isnan(weight):
      raise errors.NegativeWeight('Weight %r is negative.' % weight)
    return cls(0, float(weight))

  def __add__(self, other):
    other = ExtendedWeight.of(other)
    return ExtendedWeight(self.infinite_count + other.infinite_count,
                          self.finite + other.finite)

  __radd__ = __add__

  @property
  def is_infinite(self):
    return self.infinite_count > 0

  def to_float(self):
    return math.inf if self.is_infinite else self.finite

  def __repr__(self):
    if self.is_infinite:
      return 'ExtendedWeight(%d*inf + %g)' % (self.infinite_count, self.finite)
    return 'ExtendedWeight(%g)' % self.finite


ZERO = ExtendedWeight(0, 0.0)
INFINITE = ExtendedWeight(1, 0.0)

_Edge = collections.namedtuple('_Edge', ['u', 'v', 'weight', 'data'])


class FlowGraph(object):
  """Undirected multigraph with extended weights and terminal sets."""

  def __init__(self):
    self._vertices = collections.OrderedDict()
    self._edges = []
    self.sources = frozenset()
    self.sinks = frozenset()

  def add_vertex(self, vertex):
    self._vertices.setdefault(vertex, None)
    return vertex

  def has_vertex(self, vertex):
    return vertex in self._vertices

  @property
  def vertices(self):
    return list(self._vertices)

  @property
  def num_edges(self):
    return len(self._edges)

  def add_edge(self, u, v, weight, data=None):
    """Adds an undirected edge and returns its index."""
    self.add_vertex(u)
    self.add_vertex(v)
    self._edges.append(_Edge(u, v, ExtendedWeight.of(weight), data))
    return len(self._edges) - 1

  def edge(self, index):
    return self._edges[index]

  def edge_data(self, index):
    return self._edges[index].data

  def edges(self):
    return list(self._edges)

  def set_terminals(self, sources, sinks):
    sources, sinks = frozenset(sources), frozenset(sinks)
    for vertex in sources | sinks:
      if vertex not in self._vertices:
        raise errors.BadTerminals('Terminal %r is not a vertex.' % (vertex,))
    self.sources, self.sinks = sources, sinks

  def crossing(self, source_side):
    """Indices of the non-loop edges with exactly one end in `source_side`."""
    return [
        i for i, e in enumerate(self._edges)
        if e.u != e.v and ((e.u in source_side) != (e.v in source_side))
    ]

  def cut_weight(self, source_side):
    total = ZERO
    for index in self.crossing(source_side):
      total = total + self._edges[index].weight
    return total


CutResult = collections.namedtuple(
    'CutResult',
    ['source_side', 'sink_side', 'weight', 'crossing_edges', 'flow_value'])


def _check_terminals(graph, allow_no_sinks=False):
  if not graph.sources:
    raise errors.BadTerminals('The graph has no source.')
  if not graph.sinks and not allow_no_sinks:
    raise errors.BadTerminals('The graph has no sink.')
  overlap = graph.sources & graph.sinks
  if overlap:
    raise errors.BadTerminals('%d vertices are both source and sink, e.g. %r.' %
                              (len(overlap), next(iter(overlap))))


def make_cut_result(graph, source_side, flow_value=None):
  source_side = frozenset(source_side)
  sink_side = frozenset(graph.vertices) - source_side
  crossing = graph.crossing(source_side)
  return CutResult(source_side, sink_side, graph.cut_weight(source_side),
                   tuple(crossing), flow_value)


def trivial_cut(graph):
  """Zero-weight cut for a graph without sinks: everything is the source."""
  _check_terminals(graph, allow_no_sinks=True)
  return make_cut_result(graph, graph.vertices, flow_value=0)


def min_st_cut(graph):
  """Minimum-weight cut separating every source from every sink.

  Args:
    graph: A `FlowGraph` with disjoint non-empty terminal sets.

  Returns:
    A `CutResult`. Its weight is recomputed from the crossing edges, so an
    infinite weight means no finite cut exists.

  Raises:
    BadTerminals: If the terminal sets are empty or overlap.
  """
  _check_terminals(graph)
  finite_total = sum(fractions.Fraction(e.weight.finite) for e in graph.edges())
  scale = finite_total + 1
  network = nx.DiGraph()
  network.add_nodes_from(graph.vertices)
  for edge in graph.edges():
    if edge.u == edge.v:
      continue
    capacity = (edge.weight.infinite_count * scale +
                fractions.Fraction(edge.weight.finite))
    for a, b in ((edge.u, edge.v), (edge.v, edge.u)):
      if network.has_edge(a, b):
        network[a][b]['capacity'] += capacity
      else:
        network.add_edge(a, b, capacity=capacity)
  # Arcs without a capacity attribute are infinite for networkx.
  for source in graph.sources:
    network.add_edge(_SUPER_SOURCE, source)
  for sink in graph.sinks:
    network.add_edge(sink, _SUPER_SINK)
  flow_value, (reachable, _) = nx.minimum_cut(
      network, _SUPER_SOURCE, _SUPER_SINK, flow_func=edmonds_karp)
  reachable = set(reachable)
  reachable.discard(_SUPER_SOURCE)
  result = make_cut_result(graph, reachable, flow_value=flow_value)
  logging.debug('Min cut over %d vertices and %d edges has weight %r.',
                len(graph.vertices), graph.num_edges, result.weight)
  return result


def random_finite_cut(graph, rng):
  """A random cut avoiding infinite edges whenever that is possible.

  Vertices joined by infinite edges are contracted first; each contracted
  group holding a source goes to the source side, one holding a sink to the
  sink side and the others are placed uniformly at random.

  Args:
    graph: A `FlowGraph` with terminals.
    rng: A `random.Random`-like object.

  Returns:
    A `CutResult`, or None if a group holds both a source and a sink.
  """
  _check_terminals(graph)
  groups = UnionFind(graph.vertices)
  for edge in graph.edges():
    if edge.weight.is_infinite:
      groups.union(edge.u, edge.v)
  source_side = set()
  for group in sorted(groups.to_sets(), key=lambda g: min(map(repr, g))):
    has_source = any(v in graph.sources for v in group)
    has_sink = any(v in graph.sinks for v in group)
    if has_source and has_sink:
      return None
    if has_source or (not has_sink and rng.random() < 0.5):
      source_side.update(group)
  return make_cut_result(graph, source_side)
