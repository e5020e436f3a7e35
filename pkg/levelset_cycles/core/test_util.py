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
"""Test util for levelset cycles."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import math
import os
import tempfile

from levelset_cycles.core import fixtures
from levelset_cycles.core import levelset
from levelset_cycles.core import mincut
from levelset_cycles.core import wpc_format

# Fixtures small enough for the exhaustive oracle, with their dimension. A
# `negated_` prefix takes -f, whose barcode holds the open-closed bars.
ORACLE_FIXTURES = (
    ('octahedron', 1),
    ('small_sphere', 1),
    ('torus_8x4', 1),
    ('monkey_saddle', 1),
    ('weighted_monkey_saddle', 1),
    ('pinched_monkey_saddle', 1),
    ('double_tube', 1),
    ('pinched_sphere', 1),
    ('cup', 1),
    ('collar', 1),
    ('negated_cup', 1),
    ('negated_monkey_saddle', 1),
    ('negated_pinched_monkey_saddle', 1),
    ('negated_collar', 1),
    ('three_sphere', 2),
)

_NEGATED_PREFIX = 'negated_'

_VARIANTS = {
    'torus_8x4': ('torus', dict(nu=8, nv=4)),
    'small_sphere': ('sphere', dict(rings=2, ring_size=3)),
    'weighted_monkey_saddle': ('monkey_saddle', dict(saddle_edge_weight=10.0)),
    'pinched_monkey_saddle': ('monkey_saddle', dict(pinched=True)),
}


def make_fixture(name):
  """Builds a fixture by name, including variants and negated functions."""
  if name.startswith(_NEGATED_PREFIX):
    complex_, function = make_fixture(name[len(_NEGATED_PREFIX):])
    return complex_, function.negated()
  base, kwargs = _VARIANTS.get(name, (name, {}))
  return fixtures.make_fixture(base, **kwargs)


def make_context(name, p=1):
  """A `LevelsetContext` over the named fixture."""
  complex_, function = make_fixture(name)
  return levelset.LevelsetContext(complex_, function, p)


def write_wpc_fixture(name, temp_dir=None, dim=None):
  """Writes the named fixture as a `.wpc` file and returns its path."""
  if temp_dir is None or not os.path.exists(temp_dir):
    temp_dir = tempfile.mkdtemp()
  path = os.path.join(temp_dir, name + '.wpc')
  complex_, function = make_fixture(name)
  wpc_format.write_wpc(path, complex_, function, dim)
  return path


def random_flow_graph(rng,
                      max_free=8,
                      max_edges=24,
                      max_weight=9,
                      infinite_rate=0.1):
  """A random multigraph with terminals for cut tests.

  Args:
    rng: A `random.Random`.
    max_free: Largest number of non-terminal vertices.
    max_edges: Largest number of edges.
    max_weight: Finite weights are drawn from 0..max_weight.
    infinite_rate: Probability that an edge is infinite.

  Returns:
    A `mincut.FlowGraph` with one to three sources and sinks. Parallel edges
    and loops may occur.
  """
  graph = mincut.FlowGraph()
  sources = ['s%d' % i for i in range(rng.randint(1, 3))]
  sinks = ['t%d' % i for i in range(rng.randint(1, 3))]
  free = ['v%d' % i for i in range(rng.randint(0, max_free))]
  vertices = sources + sinks + free
  for vertex in vertices:
    graph.add_vertex(vertex)
  for _ in range(rng.randint(0, max_edges)):
    u, v = rng.choice(vertices), rng.choice(vertices)
    if rng.random() < infinite_rate:
      weight = math.inf
    else:
      weight = float(rng.randint(0, max_weight))
    graph.add_edge(u, v, weight)
  graph.set_terminals(sources, sinks)
  return graph
