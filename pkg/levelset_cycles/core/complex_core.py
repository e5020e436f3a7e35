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
"""Immutable simplicial complexes with Z2 chains, stars and q-connectivity.

Simplices are sorted vertex tuples. A `SimplicialComplex` stores them grouped
by dimension, numbers every simplex by its lexicographic position within its
dimension and keeps the face to coface incidence. Chains are sets of
simplices of one dimension; their sum is the symmetric difference.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import collections
import itertools
import math

from absl import logging
from networkx.utils import UnionFind

from levelset_cycles.core import configs
from levelset_cycles.core import errors


def make_simplex(vertices):
  """Returns the canonical (sorted) simplex spanned by `vertices`."""
  simplex = tuple(sorted(vertices))
  if not simplex:
    raise errors.MalformedSimplex('A simplex needs at least one vertex.')
  if len(set(simplex)) != len(simplex):
    raise errors.MalformedSimplex('Simplex %r repeats a vertex.' %
                                  (tuple(vertices),))
  return simplex


def dimension(simplex):
  return len(simplex) - 1


def simplex_key(simplex):
  """Sort key of the (dimension, lexicographic) order."""
  return len(simplex), simplex


def faces(simplex):
  """Returns the codimension-one faces of `simplex` in lexicographic order."""
  if len(simplex) == 1:
    return []
  return [simplex[:i] + simplex[i + 1:] for i in reversed(range(len(simplex)))]


def iter_bits(bits):
  """Yields the positions of the set bits of `bits` in increasing order."""
  while bits:
    low = bits & -bits
    yield low.bit_length() - 1
    bits ^= low


class Chain(object):
  """A Z2 chain, i.e. a finite set of simplices of one dimension."""

  __slots__ = ('_simplices', '_dim')

  def __init__(self, simplices=(), dim=None):
    simplices = frozenset(simplices)
    dims = set(len(s) - 1 for s in simplices)
    if len(dims) > 1:
      raise errors.MalformedSimplex('Chain mixes dimensions %s.' %
                                    sorted(dims))
    if dims:
      found = dims.pop()
      if dim is not None and dim != found:
        raise errors.MalformedSimplex(
            'Chain declared with dimension %d holds %d-simplices.' %
            (dim, found))
      dim = found
    self._simplices = simplices
    self._dim = dim

  @property
  def dim(self):
    return self._dim

  @property
  def simplices(self):
    return self._simplices

  def __add__(self, other):
    if (self._dim is not None and other.dim is not None and
        self._dim != other.dim):
      raise errors.MalformedSimplex('Cannot add a %d-chain and a %d-chain.' %
                                    (self._dim, other.dim))
    dim = self._dim if self._dim is not None else other.dim
    return Chain(self._simplices ^ other.simplices, dim)

  def __len__(self):
    return len(self._simplices)

  def __iter__(self):
    return iter(sorted(self._simplices))

  def __contains__(self, simplex):
    return simplex in self._simplices

  def __bool__(self):
    return bool(self._simplices)

  __nonzero__ = __bool__

  def __eq__(self, other):
    if not isinstance(other, Chain):
      return NotImplemented
    return self._simplices == other.simplices

  def __ne__(self, other):
    result = self.__eq__(other)
    return result if result is NotImplemented else not result

  def __hash__(self):
    return hash(self._simplices)

  def weight(self, complex_):
    """Total weight of the chain under the weights of `complex_`."""
    return math.fsum(complex_.weight(s) for s in sorted(self._simplices))

  def boundary(self, complex_=None):
    return boundary(self, complex_)

  def is_cycle(self):
    return not boundary(self)

  def __repr__(self):
    return 'Chain(dim=%r, %r)' % (self._dim, sorted(self._simplices))


def boundary(chain, complex_=None):
  """Returns the Z2 boundary of `chain`.

  Args:
    chain: A `Chain`.
    complex_: Optional container of simplices `chain` must lie in.

  Returns:
    The chain of codimension-one faces that have an odd number of cofaces in
    `chain`.

  Raises:
    NotContained: If `complex_` is given and does not contain `chain`.
  """
  if complex_ is not None:
    outside = [s for s in chain if s not in complex_]
    if outside:
      raise errors.NotContained('%d simplices of the chain, e.g. %r, are not '
                                'in the complex.' % (len(outside), outside[0]))
  odd = set()
  for simplex in chain.simplices:
    for face in faces(simplex):
      if face in odd:
        odd.remove(face)
      else:
        odd.add(face)
  dim = None if chain.dim is None else chain.dim - 1
  return Chain(odd, dim)


class SimplicialComplex(object):
  """An immutable face-closed set of simplices with incidences and weights.

  Use `build_complex` or `closure` to create one from raw input; the
  constructor expects an already face-closed collection of canonical
  simplices.
  """

  def __init__(self, simplices, weights=None):
    by_dim = collections.defaultdict(list)
    for simplex in set(simplices):
      by_dim[len(simplex) - 1].append(simplex)
    self._by_dim = {d: tuple(sorted(ss)) for d, ss in by_dim.items()}
    self._index = {}
    self._cofaces = collections.defaultdict(list)
    self._vertex_star = collections.defaultdict(list)
    for dim in sorted(self._by_dim):
      for i, simplex in enumerate(self._by_dim[dim]):
        self._index[simplex] = i
        for face in faces(simplex):
          self._cofaces[face].append(simplex)
        for vertex in simplex:
          self._vertex_star[vertex].append(simplex)
    for simplex, cofaces in self._cofaces.items():
      if simplex not in self._index:
        raise errors.MalformedSimplex('Face %r of %r is missing.' %
                                      (simplex, cofaces[0]))
    self._weights = dict(weights or {})
    self._boundary_bits = {}

  @property
  def dimension(self):
    return max(self._by_dim) if self._by_dim else -1

  @property
  def vertices(self):
    return [s[0] for s in self._by_dim.get(0, ())]

  @property
  def weights(self):
    return dict(self._weights)

  def simplices(self, dim=None):
    """Returns the `dim`-simplices in lexicographic order, or all simplices."""
    if dim is None:
      return [s for d in sorted(self._by_dim) for s in self._by_dim[d]]
    return list(self._by_dim.get(dim, ()))

  def num_simplices(self, dim):
    return len(self._by_dim.get(dim, ()))

  def __len__(self):
    return len(self._index)

  def __iter__(self):
    return iter(self.simplices())

  def __contains__(self, simplex):
    return simplex in self._index

  def index(self, simplex):
    """Position of `simplex` among the simplices of its dimension."""
    return self._index[simplex]

  def simplex_at(self, dim, index):
    return self._by_dim[dim][index]

  def cofaces(self, simplex):
    return tuple(self._cofaces.get(simplex, ()))

  def weight(self, simplex):
    return self._weights.get(simplex, configs.DEFAULT_WEIGHT)

  def star(self, vertex):
    """All simplices containing `vertex`."""
    return list(self._vertex_star.get(vertex, ()))

  def star_order(self, function):
    """Vertices sorted by the total order of `function`."""
    return sorted(self.vertices, key=function.key)

  def lower_star(self, vertex, function):
    """Simplices whose highest vertex under `function` is `vertex`."""
    key = function.key
    rank = key(vertex)
    return [s for s in self.star(vertex) if all(key(u) <= rank for u in s)]

  def upper_star(self, vertex, function):
    """Simplices whose lowest vertex under `function` is `vertex`."""
    key = function.key
    rank = key(vertex)
    return [s for s in self.star(vertex) if all(key(u) >= rank for u in s)]

  def boundary_bits(self, simplex):
    """Bitset of the faces of `simplex`, indexed within their dimension."""
    bits = self._boundary_bits.get(simplex)
    if bits is None:
      bits = 0
      for face in faces(simplex):
        bits |= 1 << self._index[face]
      self._boundary_bits[simplex] = bits
    return bits

  def chain_bits(self, simplices):
    bits = 0
    for simplex in simplices:
      bits |= 1 << self._index[simplex]
    return bits

  def bits_chain(self, bits, dim):
    cells = self._by_dim.get(dim, ())
    return Chain((cells[i] for i in iter_bits(bits)), dim)

  def subcomplex(self, simplices):
    """Returns the subcomplex on `simplices`, which must be face-closed."""
    simplices = frozenset(simplices)
    for simplex in simplices:
      if simplex not in self._index:
        raise errors.NotContained('%r is not in the complex.' % (simplex,))
    weights = {s: w for s, w in self._weights.items() if s in simplices}
    return SimplicialComplex(simplices, weights)

  def euler_characteristic(self):
    return sum((-1)**d * len(ss) for d, ss in self._by_dim.items())

  def __repr__(self):
    counts = ', '.join(
        '%d:%d' % (d, len(self._by_dim[d])) for d in sorted(self._by_dim))
    return 'SimplicialComplex(%s)' % counts


def _all_faces(simplex):
  for size in range(1, len(simplex) + 1):
    for face in itertools.combinations(simplex, size):
      yield face


def build_complex(simplex_list, weights=None):
  """Builds a face-closed complex from maximal (or any) simplices.

  Args:
    simplex_list: Iterable of vertex tuples in any order.
    weights: Optional map from vertex tuples to nonnegative finite weights.
      Simplices without an entry weigh `configs.DEFAULT_WEIGHT`.

  Returns:
    A `SimplicialComplex` that contains every listed simplex and its faces.

  Raises:
    MalformedSimplex: If a simplex repeats a vertex or a weighted simplex is
      not in the complex.
    NegativeWeight: If a weight is negative, infinite or NaN.
  """
  closed = set()
  for raw in simplex_list:
    simplex = make_simplex(raw)
    if simplex in closed:
      continue
    closed.update(_all_faces(simplex))
  canonical_weights = {}
  for raw, value in (weights or {}).items():
    simplex = make_simplex(raw)
    value = float(value)
    if not value >= 0.0 or math.isinf(value):
      raise errors.NegativeWeight('Weight %r of %r must be nonnegative and '
                                  'finite.' % (value, simplex))
    if simplex not in closed:
      raise errors.MalformedSimplex('Weighted simplex %r is not in the '
                                    'complex.' % (simplex,))
    canonical_weights[simplex] = value
  complex_ = SimplicialComplex(closed, canonical_weights)
  logging.vlog(1, 'Built %r.', complex_)
  return complex_


def closure(simplices, ambient=None):
  """Returns the complex of all faces of `simplices`.

  Args:
    simplices: Iterable of canonical simplices.
    ambient: Optional complex whose weights the closure inherits.
  """
  closed = set()
  for simplex in simplices:
    if simplex not in closed:
      closed.update(_all_faces(simplex))
  weights = None
  if ambient is not None:
    weights = {s: w for s, w in ambient.weights.items() if s in closed}
  return SimplicialComplex(closed, weights)


def check_weak_pseudomanifold(complex_, p):
  """Returns the p-simplices with more than two (p+1)-cofaces.

  An empty list means `complex_` is a weak (p+1)-pseudomanifold.
  """
  if p < 1:
    raise ValueError('p must be at least 1, got %d.' % p)
  return [s for s in complex_.simplices(p) if len(complex_.cofaces(s)) > 2]


class ComponentPartition(object):
  """Partition of a set of q-simplices into q-connected components."""

  def __init__(self, q, components):
    self.q = q
    self.components = tuple(components)
    self._owner = {}
    for j, component in enumerate(self.components):
      for simplex in component:
        self._owner[simplex] = j

  def component_of(self, simplex):
    """Index of the component holding `simplex`, or None."""
    return self._owner.get(simplex)

  def __len__(self):
    return len(self.components)

  def __iter__(self):
    return iter(self.components)

  def __getitem__(self, index):
    return self.components[index]


def q_connected_components(sigma_set, ambient, q, allowed_faces=None):
  """Splits q-simplices into classes joined by q-paths.

  Two q-simplices are adjacent when they share a (q-1)-face that lies in
  `ambient` and, if given, in `allowed_faces`.

  Args:
    sigma_set: Iterable of q-simplices.
    ambient: Container of simplices adjacency faces must belong to, or None.
    q: Dimension of the simplices, at least 1.
    allowed_faces: Optional container restricting the shared faces.

  Returns:
    A `ComponentPartition` whose components are sorted by their smallest
    simplex.
  """
  if q < 1:
    raise ValueError('q must be at least 1, got %d.' % q)
  members = sorted(set(sigma_set))
  for simplex in members:
    if len(simplex) != q + 1:
      raise errors.MalformedSimplex('%r is not a %d-simplex.' % (simplex, q))
  union_find = UnionFind(members)
  first_by_face = {}
  for simplex in members:
    for face in faces(simplex):
      if allowed_faces is not None and face not in allowed_faces:
        continue
      if ambient is not None and face not in ambient:
        continue
      other = first_by_face.setdefault(face, simplex)
      if other != simplex:
        union_find.union(other, simplex)
  groups = collections.OrderedDict()
  for simplex in members:
    groups.setdefault(union_find[simplex], []).append(simplex)
  components = sorted((frozenset(g) for g in groups.values()), key=min)
  return ComponentPartition(q, components)
