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
"""Small deterministic meshes with height functions.

Surfaces are stacked from vertex rings: a ring at an integer level, a critical
vertex at a half level. Every vertex value gets `JITTER * id` added, so no two
values tie and the vertex order follows creation order within a level.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import itertools
import math

from levelset_cycles.core import complex_core
from levelset_cycles.core import levelset

JITTER = 1e-3
DEFAULT_TORUS_TILT = (0.001, 0.0007)


class _SurfaceBuilder(object):
  """Collects vertices, triangles and edge weights of a stacked surface."""

  def __init__(self):
    self.values = {}
    self.triangles = []
    self.weights = {}

  def vertex(self, level):
    vid = len(self.values)
    self.values[vid] = level + JITTER * vid
    return vid

  def ring(self, level, size):
    return [self.vertex(level) for _ in range(size)]

  def add(self, *triangles):
    self.triangles.extend(triangles)

  def tube(self, lower, upper):
    size = len(lower)
    for k in range(size):
      nxt = (k + 1) % size
      self.add((lower[k], lower[nxt], upper[nxt]),
               (lower[k], upper[nxt], upper[k]))

  def cap(self, ring, apex):
    for k in range(len(ring)):
      self.add((ring[k], ring[(k + 1) % len(ring)], apex))

  def pants(self, outer, saddle, left, right):
    """Sphere with three holes around a simple saddle.

    `outer` has six vertices; `left` and `right` have three. The saddle's
    link alternates outer[0], left[0:2], outer[3], right[0:2].
    """
    r, l, q, s = outer, left, right, saddle
    self.add((s, r[0], l[0]), (s, l[0], l[1]), (s, l[1], r[3]),
             (s, r[3], q[0]), (s, q[0], q[1]), (s, q[1], r[0]))
    self.add((r[0], l[0], r[1]), (l[0], l[2], r[1]), (l[2], r[2], r[1]),
             (l[2], l[1], r[2]), (l[1], r[3], r[2]))
    self.add((r[3], q[0], r[4]), (q[0], q[2], r[4]), (q[2], r[5], r[4]),
             (q[2], q[1], r[5]), (q[1], r[0], r[5]))

  def ring_weight(self, ring, weight):
    for k in range(len(ring)):
      self.weights[(ring[k], ring[(k + 1) % len(ring)])] = weight

  def build(self):
    complex_ = complex_core.build_complex(self.triangles, self.weights)
    return complex_, levelset.PLFunction(self.values)


def make_torus(nu=8, nv=8, tilt=DEFAULT_TORUS_TILT):
  """An upright torus with a slightly tilted height function.

  Vertex (i, j) has id `i * nv + j`, i running around the torus from the
  bottom and j around the tube from the outer equator. With nu divisible by
  four and nv even, the bottom (0, 0), the saddles (0, nv/2) and
  (nu/2, nv/2) and the top (nu/2, 0) are the only critical vertices.

  Args:
    nu: Number of vertices around the central axis, at least 3.
    nv: Number of vertices around the tube, at least 3.
    tilt: Pair of small coefficients breaking the symmetry.

  Returns:
    `(complex, function)`.
  """
  if nu < 3 or nv < 3:
    raise ValueError('A torus needs nu, nv >= 3, got %d, %d.' % (nu, nv))
  a, b = tilt
  values = {}
  triangles = []
  for i in range(nu):
    theta = 2.0 * math.pi * i / nu - math.pi / 2.0
    for j in range(nv):
      phi = 2.0 * math.pi * j / nv
      rho = 2.0 + math.cos(phi)
      values[i * nv + j] = (
          rho * math.sin(theta) + a * rho * math.cos(theta) + b * math.sin(phi))
  for i, j in itertools.product(range(nu), range(nv)):
    v00 = i * nv + j
    v10 = ((i + 1) % nu) * nv + j
    v01 = i * nv + (j + 1) % nv
    v11 = ((i + 1) % nu) * nv + (j + 1) % nv
    triangles.append((v00, v10, v11))
    triangles.append((v00, v11, v01))
  return complex_core.build_complex(triangles), levelset.PLFunction(values)


def make_octahedron():
  """Octahedron standing on vertex 0; one open-open bar in dimension 1."""
  builder = _SurfaceBuilder()
  bottom = builder.vertex(0.0)
  ring = builder.ring(1.0, 4)
  top = builder.vertex(2.0)
  builder.cap(ring, bottom)
  builder.cap(ring, top)
  return builder.build()


def make_sphere(rings=3, ring_size=6):
  """Stacked sphere: a minimum, `rings` rings and a maximum."""
  builder = _SurfaceBuilder()
  bottom = builder.vertex(0.5)
  layers = [builder.ring(1.0 + k, ring_size) for k in range(rings)]
  top = builder.vertex(rings + 0.5)
  builder.cap(layers[0], bottom)
  for lower, upper in zip(layers, layers[1:]):
    builder.tube(lower, upper)
  builder.cap(layers[-1], top)
  return builder.build()


def _monkey_pants(builder, ring, saddle, holes):
  """Sphere with four holes around a monkey saddle.

  The saddle's link alternates ring[0], holes[0][0:2], ring[2], holes[1][0:2],
  ring[4], holes[2][0:2].
  """
  for k, hole in enumerate(holes):
    start, middle, end = ring[2 * k], ring[2 * k + 1], ring[(2 * k + 2) % 6]
    builder.add((saddle, start, hole[0]), (saddle, hole[0], hole[1]),
                (saddle, hole[1], end))
    builder.add((start, hole[0], middle), (hole[0], hole[2], middle),
                (hole[2], hole[1], middle), (hole[1], end, middle))


def make_monkey_saddle(saddle_edge_weight=None, pinched=False):
  """A sphere whose level circle splits in three at a monkey saddle.

  Below the saddle M (id 7) is a disk ending in the ring r0..r5 (ids 1-6).
  Three tubes leave M: tube A closes at 2.5, tube B at 3.5 and tube C at
  4.5. The lower edges of M are (1, 7), (3, 7) and (5, 7). Pinched, tubes B
  and C share a single top vertex at 3.5.

  Args:
    saddle_edge_weight: Optional weight of the edge (3, 7) between lobes A
      and B.
    pinched: Whether tubes B and C close at one shared vertex.

  Returns:
    `(complex, function)`.
  """
  builder = _SurfaceBuilder()
  bottom = builder.vertex(0.5)
  ring = builder.ring(1.0, 6)
  saddle = builder.vertex(1.5)
  holes = [builder.ring(2.0, 3) for _ in range(3)]
  upper_b = builder.ring(3.0, 3)
  upper_c = builder.ring(3.0, 3)
  builder.cap(ring, bottom)
  _monkey_pants(builder, ring, saddle, holes)
  builder.tube(holes[1], upper_b)
  builder.tube(holes[2], upper_c)
  if pinched:
    top_a = builder.vertex(2.5)
    top = builder.vertex(3.5)
    builder.cap(holes[0], top_a)
    builder.cap(upper_b, top)
    builder.cap(upper_c, top)
  else:
    upper_c2 = builder.ring(4.0, 3)
    top_a = builder.vertex(2.5)
    top_b = builder.vertex(3.5)
    top_c = builder.vertex(4.5)
    builder.tube(upper_c, upper_c2)
    builder.cap(holes[0], top_a)
    builder.cap(upper_b, top_b)
    builder.cap(upper_c2, top_c)
  if saddle_edge_weight is not None:
    builder.weights[(ring[2], saddle)] = saddle_edge_weight
  return builder.build()


def make_double_tube():
  """A torus built from two parallel tubes between two simple saddles.

  The saddles are S1 (id 7) at 1.5 and S2 (id 20) at 3.5; the lower edges
  of S1 are (1, 7) and (4, 7).
  """
  builder = _SurfaceBuilder()
  bottom = builder.vertex(0.5)
  ring = builder.ring(1.0, 6)
  lower_saddle = builder.vertex(1.5)
  left = builder.ring(2.0, 3)
  right = builder.ring(2.0, 3)
  left_up = builder.ring(3.0, 3)
  right_up = builder.ring(3.0, 3)
  upper_saddle = builder.vertex(3.5)
  upper = builder.ring(4.0, 6)
  top = builder.vertex(4.5)
  builder.cap(ring, bottom)
  builder.pants(ring, lower_saddle, left, right)
  builder.tube(left, left_up)
  builder.tube(right, right_up)
  builder.pants(upper, upper_saddle, left_up, right_up)
  builder.cap(upper, top)
  return builder.build()


def make_pinched_sphere():
  """A sphere whose middle ring passes twice through the vertex X (id 7).

  The level circle touches itself at X, which gives a closed-closed bar of
  length zero.
  """
  builder = _SurfaceBuilder()
  bottom = builder.vertex(0.5)
  ring = builder.ring(1.0, 6)
  pinch = builder.vertex(1.5)
  others = builder.ring(1.6, 4)
  middle = [pinch, others[0], others[1], pinch, others[2], others[3]]
  upper = builder.ring(2.0, 6)
  top = builder.vertex(2.5)
  builder.cap(ring, bottom)
  builder.tube(ring, middle)
  builder.tube(middle, upper)
  builder.cap(upper, top)
  return builder.build()


def make_cup():
  """An open cup next to a small closed bubble.

  The cup's rim (ids 0-5) is a boundary circle at level 0 and the cup closes
  at 3.5; its closed-open bar spans four regular complexes. The bubble
  gives an open-open bar between 1.5 and 2.5.
  """
  builder = _SurfaceBuilder()
  rings = [builder.ring(float(level), 6) for level in range(4)]
  apex = builder.vertex(3.5)
  bubble_bottom = builder.vertex(1.5)
  bubble_ring = builder.ring(2.0, 4)
  bubble_top = builder.vertex(2.5)
  for lower, upper in zip(rings, rings[1:]):
    builder.tube(lower, upper)
  builder.cap(rings[-1], apex)
  builder.cap(bubble_ring, bubble_bottom)
  builder.cap(bubble_ring, bubble_top)
  return builder.build()


def make_collar(latitude_weights=(5.0, 3.0), rung_weight=10.0):
  """An open cup with two latitude circles of different edge weights.

  Args:
    latitude_weights: Edge weights of the lower and the upper latitude.
    rung_weight: Weight of the edges between the two latitudes.

  Returns:
    `(complex, function)`.
  """
  builder = _SurfaceBuilder()
  rim = builder.ring(0.0, 4)
  lower = builder.ring(1.0, 4)
  upper = builder.ring(1.2, 4)
  apex = builder.vertex(2.5)
  builder.tube(rim, lower)
  builder.tube(lower, upper)
  builder.cap(upper, apex)
  for k in range(4):
    nxt = (k + 1) % 4
    builder.weights[(lower[k], upper[k])] = rung_weight
    builder.weights[(lower[k], upper[nxt])] = rung_weight
  builder.ring_weight(lower, latitude_weights[0])
  builder.ring_weight(upper, latitude_weights[1])
  return builder.build()


def make_tetrahedron():
  """Boundary of a tetrahedron with values 0, 1, 2, 3.

  Triangles (0, 1, 3) and (0, 2, 3) span both critical values.
  """
  triangles = list(itertools.combinations(range(4), 3))
  return (complex_core.build_complex(triangles),
          levelset.PLFunction({v: float(v) for v in range(4)}))


def make_subdivided_tetrahedron():
  """The tetrahedron with edge (0, 3) split by vertex 4 at 1.5."""
  triangles = [(0, 1, 4), (1, 3, 4), (0, 2, 4), (2, 3, 4), (0, 1, 2),
               (1, 2, 3)]
  values = {0: 0.0, 1: 1.0, 2: 2.0, 3: 3.0, 4: 1.5}
  return complex_core.build_complex(triangles), levelset.PLFunction(values)


def make_three_sphere():
  """Suspension of the octahedron: a 3-sphere with one 2-dimensional bar."""
  bottom, top = 0, 7
  ring = [1, 2, 3, 4]
  poles = [5, 6]
  faces = []
  for k in range(4):
    for pole in poles:
      faces.append((ring[k], ring[(k + 1) % 4], pole))
  tetrahedra = [face + (apex,) for face in faces for apex in (bottom, top)]
  values = {bottom: 0.0, top: 3.0}
  for vertex in ring + poles:
    values[vertex] = 1.0 + JITTER * vertex
  return complex_core.build_complex(tetrahedra), levelset.PLFunction(values)


FIXTURES = {
    'torus': make_torus,
    'octahedron': make_octahedron,
    'sphere': make_sphere,
    'monkey_saddle': make_monkey_saddle,
    'double_tube': make_double_tube,
    'pinched_sphere': make_pinched_sphere,
    'cup': make_cup,
    'collar': make_collar,
    'tetrahedron': make_tetrahedron,
    'subdivided_tetrahedron': make_subdivided_tetrahedron,
    'three_sphere': make_three_sphere,
}


def make_fixture(name, **kwargs):
  """Builds the fixture registered as `name`."""
  if name not in FIXTURES:
    raise ValueError('Unknown fixture %r; choose one of %s.' %
                     (name, ', '.join(sorted(FIXTURES))))
  return FIXTURES[name](**kwargs)
