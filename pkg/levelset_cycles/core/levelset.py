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
"""PL functions, p-th critical values, range complexes and filtrations.

Vertex values are made generic by ordering vertices by `(value, id)`; every
comparison below uses the rank of a vertex in that order. With
`r_0 = -1 < r_1 < ... < r_m < r_{m+1} = n` the ranks of the p-th critical
vertices, the range complex K_(i,j) holds the simplices whose vertex ranks
all lie strictly between r_i and r_j.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import bisect
import collections
import math
import threading

from absl import logging

from levelset_cycles.core import complex_core
from levelset_cycles.core import errors
from levelset_cycles.core import extended
from levelset_cycles.core import zigzag

try:
  from collections import abc as collections_abc  # pylint: disable=g-import-not-at-top
except ImportError:
  collections_abc = collections


class PLFunction(collections_abc.Mapping):
  """Vertex values of a PL function with a total vertex order.

  `key(v)` is the rank of vertex v under the order, by default `(value, id)`.
  """

  def __init__(self, values, order=None):
    self._values = {}
    for vertex, value in values.items():
      value = float(value)
      if math.isnan(value) or math.isinf(value):
        raise ValueError('Vertex %r has non-finite value %r.' %
                         (vertex, value))
      self._values[vertex] = value
    if order is None:
      order = sorted(self._values, key=lambda v: (self._values[v], v))
    else:
      order = list(order)
      if sorted(order) != sorted(self._values):
        raise ValueError('The vertex order must list every vertex once.')
    self._order = tuple(order)
    self._rank = {v: i for i, v in enumerate(self._order)}

  def __getitem__(self, vertex):
    return self._values[vertex]

  def __iter__(self):
    return iter(self._order)

  def __len__(self):
    return len(self._order)

  @property
  def order(self):
    return self._order

  def key(self, vertex):
    return self._rank[vertex]

  def negated(self):
    """The function -f, whose vertex order is the reverse of this one."""
    return PLFunction({v: -x for v, x in self._values.items()},
                      order=reversed(self._order))


class CriticalInfo(object):
  """Candidate values and p-th critical values of a PL function.

  `values`, `vertices` and `ranks` are indexed from 0 to m+1, entries 0 and
  m+1 being the infinite sentinels.
  """

  def __init__(self, all_values, critical_vertices, function):
    self.all_values = tuple(all_values)
    critical_vertices = tuple(critical_vertices)
    self.vertices = (None,) + critical_vertices + (None,)
    self.values = ((-math.inf,) + tuple(function[v] for v in critical_vertices)
                   + (math.inf,))
    self.ranks = ((-1,) + tuple(function.key(v) for v in critical_vertices) +
                  (len(function),))

  @property
  def m(self):
    return len(self.vertices) - 2

  @property
  def p_critical_values(self):
    return self.values[1:-1]

  @property
  def p_critical_vertices(self):
    return self.vertices[1:-1]

  def negated(self, negated_function):
    """Critical info of -f, indexed in reverse."""
    return CriticalInfo(
        tuple(-x for x in reversed(self.all_values)),
        tuple(reversed(self.p_critical_vertices)), negated_function)


class RangeSpec(
    collections.namedtuple('RangeSpec',
                           ['lo', 'lo_closed', 'hi', 'hi_closed'])):
  """Interval of critical indices, e.g. (i, j) or [i, j)."""

  __slots__ = ()

  def __new__(cls, lo, lo_closed, hi, hi_closed):
    if lo > hi:
      raise ValueError('Empty range: lo %d is above hi %d.' % (lo, hi))
    return super(RangeSpec, cls).__new__(cls, lo, bool(lo_closed), hi,
                                         bool(hi_closed))

  @classmethod
  def open(cls, lo, hi):
    return cls(lo, False, hi, False)

  @classmethod
  def closed_open(cls, lo, hi):
    return cls(lo, True, hi, False)

  @classmethod
  def open_closed(cls, lo, hi):
    return cls(lo, False, hi, True)

  def rank_bounds(self, critical):
    """Inclusive bounds on vertex ranks of the simplices in the range."""
    low = critical.ranks[self.lo] + (0 if self.lo_closed else 1)
    high = critical.ranks[self.hi] - (0 if self.hi_closed else 1)
    return low, high


Slab = collections.namedtuple('Slab', ['i', 'simplices'])


def _rank_hulls(complex_, function):
  key = function.key
  hulls = {}
  for simplex in complex_:
    ranks = [key(v) for v in simplex]
    hulls[simplex] = (min(ranks), max(ranks))
  return hulls


def candidate_critical_values(complex_, function):
  """All vertex values of `complex_` in the generic order."""
  return [function[v] for v in complex_.star_order(function)]


def detect_p_critical(complex_, function, p):
  """Finds the p-th critical values of `function`.

  A value is p-th critical iff it is an endpoint of a dimension-p bar of the
  classical levelset barcode, i.e. iff one of the inclusions flanking it is
  not an isomorphism on p-th homology.
  """
  bars = extended.levelset_bars(complex_, function, p)
  critical = set()
  for bar in bars:
    critical.add(bar.lower)
    critical.add(bar.upper)
  vertices = sorted(critical, key=function.key)
  logging.info('Found %d %d-th critical values among %d vertices.',
               len(vertices), p, len(complex_.vertices))
  return CriticalInfo(
      candidate_critical_values(complex_, function), vertices, function)


def range_complex(complex_, function, critical, spec):
  """Full subcomplex on the vertices whose values lie in `spec`."""
  low, high = spec.rank_bounds(critical)
  key = function.key
  return complex_.subcomplex(
      s for s in complex_ if all(low <= key(v) <= high for v in s))


def slab(complex_, function, critical, i):
  """Simplices of K_(i-1,i+1) spanning the i-th critical value."""
  ranks = critical.ranks
  key = function.key
  members = []
  for simplex in complex_:
    vertex_ranks = [key(v) for v in simplex]
    lowest, highest = min(vertex_ranks), max(vertex_ranks)
    if ranks[i - 1] < lowest <= ranks[i] <= highest < ranks[i + 1]:
      members.append(simplex)
  return Slab(i, frozenset(members))


def check_compatibility(complex_, function, critical, p):
  """Simplices whose closed value hull holds more than one critical value.

  Only maximal violators are reported: a simplex is listed when none of its
  cofaces violates.

  Args:
    complex_: A `SimplicialComplex`.
    function: A `PLFunction`.
    critical: The `CriticalInfo` for dimension `p`.
    p: Homology dimension; kept for symmetry with the other checks.

  Returns:
    List of violating simplices in (dimension, lexicographic) order.
  """
  del p  # The critical values already encode the dimension.
  critical_ranks = sorted(critical.ranks[1:-1])
  if len(critical_ranks) < 2:
    return []
  hulls = _rank_hulls(complex_, function)
  violating = set()
  for simplex, (lowest, highest) in hulls.items():
    inside = (bisect.bisect_right(critical_ranks, highest) -
              bisect.bisect_left(critical_ranks, lowest))
    if inside > 1:
      violating.add(simplex)
  maximal = [
      s for s in violating
      if not any(c in violating for c in complex_.cofaces(s))
  ]
  return sorted(maximal, key=complex_core.simplex_key)


def build_simplexwise_filtration(complex_, function, critical, p, strict=True):
  """Expands the p-th levelset filtration into single-simplex steps.

  The filtration first builds K_(0,1), then for i = 0..m-1 adds the lower
  stars of the vertices ranked in [r_{i+1}, r_{i+2}) (reaching K_(i,i+2))
  and deletes the upper stars of those ranked in (r_i, r_{i+1}] (reaching
  K_(i+1,i+2)), and finally tears K_(m,m+1) down. Stars are visited in
  increasing rank and each is ordered by (dimension, lexicographic), in
  reverse for deletions, so every prefix is a complex. It therefore starts
  and ends at the empty complex, and the filtration of -f is exactly the
  reverse of the one of f.

  Args:
    complex_: A `SimplicialComplex`.
    function: A `PLFunction`.
    critical: The `CriticalInfo` for dimension `p`.
    p: Homology dimension.
    strict: Whether an incompatible complex is an error (cycle computation)
      or only a warning (barcode computation).

  Returns:
    A `zigzag.SimplexwiseFiltration` with REGULAR, CRITICAL, UPTO and FROM
    markers.

  Raises:
    IncompatibleComplex: If `strict` and some simplex spans two critical
      values.
  """
  violations = check_compatibility(complex_, function, critical, p)
  if violations:
    message = ('%d simplices span more than one %d-th critical value.' %
               (len(violations), p))
    if strict:
      raise errors.IncompatibleComplex(message, violations)
    logging.warning(message)
  if p >= 1:
    crowded = complex_core.check_weak_pseudomanifold(complex_, p)
    if crowded:
      logging.warning('%d %d-simplices have more than two cofaces.',
                      len(crowded), p)

  hulls = _rank_hulls(complex_, function)
  by_rank = function.order
  ranks = critical.ranks
  m = critical.m
  steps, markers = [], []

  def add_lower_star(rank, above):
    star = complex_.lower_star(by_rank[rank], function)
    for simplex in sorted(star, key=complex_core.simplex_key):
      if hulls[simplex][0] > above:
        steps.append(zigzag.Step(True, simplex))

  def delete_upper_star(rank, below):
    star = complex_.upper_star(by_rank[rank], function)
    for simplex in sorted(star, key=complex_core.simplex_key, reverse=True):
      if hulls[simplex][1] < below:
        steps.append(zigzag.Step(False, simplex))

  def mark(kind, index):
    markers.append(zigzag.Marker(len(steps), kind, index))

  for rank in range(0, ranks[1]):
    add_lower_star(rank, -1)
  mark(zigzag.MarkerKind.REGULAR, 0)
  for i in range(m):
    for rank in range(ranks[i + 1], ranks[i + 2]):
      add_lower_star(rank, ranks[i])
      if rank == ranks[i + 1]:
        mark(zigzag.MarkerKind.UPTO, i + 1)
    mark(zigzag.MarkerKind.CRITICAL, i + 1)
    for rank in range(ranks[i] + 1, ranks[i + 1] + 1):
      if rank == ranks[i + 1]:
        mark(zigzag.MarkerKind.FROM, i + 1)
      delete_upper_star(rank, ranks[i + 2])
    mark(zigzag.MarkerKind.REGULAR, i + 1)
  for rank in range(ranks[m] + 1, ranks[m + 1]):
    delete_upper_star(rank, ranks[m + 1])
  logging.info('Built a simplex-wise filtration with %d steps and %d markers.',
               len(steps), len(markers))
  return zigzag.SimplexwiseFiltration(
      complex_, steps, markers, critical_values=critical.values)


class LevelsetContext(object):
  """A complex, a PL function and its p-th critical values, with caches.

  Contexts are shared read-only by the solvers; the lazily built caches are
  guarded by a lock.
  """

  def __init__(self, complex_, function, p, critical=None):
    missing = [v for v in complex_.vertices if v not in function]
    if missing:
      raise ValueError('The function has no value on %d vertices, e.g. %r.' %
                       (len(missing), missing[0]))
    self.complex = complex_
    self.function = function
    self.p = p
    if critical is None:
      critical = detect_p_critical(complex_, function, p)
    self.critical = critical
    self._hulls = _rank_hulls(complex_, function)
    self._lock = threading.RLock()
    self._ranges = {}
    self._filtration = None
    self._barcode = None
    self._negated = None
    self._violations = None

  @property
  def m(self):
    return self.critical.m

  def rank(self, i):
    return self.critical.ranks[i]

  def value(self, i):
    return self.critical.values[i]

  def hull(self, simplex):
    """(lowest, highest) vertex rank of `simplex`."""
    return self._hulls[simplex]

  def regular_index(self, simplex):
    """The i with `simplex` in K_(i,i+1), or None if it spans a critical value."""
    lowest, highest = self._hulls[simplex]
    ranks = self.critical.ranks
    i = bisect.bisect_right(ranks, highest) - 1
    if i < 0 or ranks[i] >= lowest:
      return None
    return i

  def slab_index(self, simplex):
    """The i of the slab holding `simplex`, or None for a regular simplex."""
    lowest, highest = self._hulls[simplex]
    ranks = self.critical.ranks
    i = bisect.bisect_left(ranks, lowest)
    if 1 <= i <= self.m and ranks[i] <= highest < ranks[i + 1]:
      return i
    return None

  def range_simplices(self, spec):
    """Frozen set of the simplices of the range complex of `spec`."""
    with self._lock:
      cached = self._ranges.get(spec)
      if cached is None:
        low, high = spec.rank_bounds(self.critical)
        cached = frozenset(s for s, (lowest, highest) in self._hulls.items()
                           if low <= lowest and highest <= high)
        self._ranges[spec] = cached
      return cached

  def range_complex(self, spec):
    return self.complex.subcomplex(self.range_simplices(spec))

  def regular(self, i):
    """Simplices of the regular complex K_(i,i+1)."""
    return self.range_simplices(RangeSpec.open(i, i + 1))

  def slab(self, i):
    ranks = self.critical.ranks
    return Slab(
        i,
        frozenset(s for s, (lowest, highest) in self._hulls.items()
                  if ranks[i - 1] < lowest <= ranks[i] <= highest < ranks[i + 1]))

  def compatibility_violations(self):
    with self._lock:
      if self._violations is None:
        self._violations = check_compatibility(self.complex, self.function,
                                               self.critical, self.p)
      return self._violations

  def filtration(self, strict=True):
    """The simplex-wise filtration, built once.

    Raises:
      IncompatibleComplex: If `strict` and the complex is incompatible.
    """
    with self._lock:
      violations = self.compatibility_violations()
      if strict and violations:
        raise errors.IncompatibleComplex(
            '%d simplices span more than one %d-th critical value.' %
            (len(violations), self.p), violations)
      if self._filtration is None:
        self._filtration = build_simplexwise_filtration(
            self.complex, self.function, self.critical, self.p, strict=False)
      return self._filtration

  def barcode(self, strict=True):
    """Levelset intervals, sorted by (beta, delta)."""
    with self._lock:
      filtration = self.filtration(strict=strict)
      if self._barcode is None:
        self._barcode = zigzag.levelset_barcode(self, filtration)
      return self._barcode

  def prefix(self, position):
    """Simplices of the complex after `position` filtration steps."""
    return self.filtration(strict=False).complex_at(position)

  def negated(self):
    """Context of -f on the same complex, sharing the critical vertices."""
    with self._lock:
      if self._negated is None:
        function = self.function.negated()
        self._negated = LevelsetContext(
            self.complex, function, self.p,
            critical=self.critical.negated(function))
      return self._negated
