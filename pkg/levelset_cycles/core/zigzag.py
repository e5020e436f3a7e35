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
"""Zigzag persistence with representative cycles over simplex-wise steps.

The engine follows the classical representative-maintaining zigzag
algorithm: every step adds or deletes one simplex and, depending on whether
the induced map on p-th homology gains a kernel or cokernel, starts a new
interval or ends exactly one surviving interval. Representatives are kept as
piecewise-constant bitsets over the step indices.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import bisect
import collections
import enum

from absl import logging

from levelset_cycles.core import complex_core
from levelset_cycles.core import errors
from levelset_cycles.core import z2_algebra

# Snapshot spacing of `SimplexwiseFiltration.complex_at`.
SNAPSHOT_STRIDE = 64


@enum.unique
class IntervalType(enum.Enum):
  """The four interval types of a levelset barcode."""
  CLOSED_OPEN = 'co'
  OPEN_CLOSED = 'oc'
  CLOSED_CLOSED = 'cc'
  OPEN_OPEN = 'oo'

  @property
  def birth_closed(self):
    return self in (IntervalType.CLOSED_OPEN, IntervalType.CLOSED_CLOSED)

  @property
  def death_closed(self):
    return self in (IntervalType.OPEN_CLOSED, IntervalType.CLOSED_CLOSED)

  @classmethod
  def from_ends(cls, birth_closed, death_closed):
    return {
        (True, False): cls.CLOSED_OPEN,
        (False, True): cls.OPEN_CLOSED,
        (True, True): cls.CLOSED_CLOSED,
        (False, False): cls.OPEN_OPEN,
    }[(bool(birth_closed), bool(death_closed))]


@enum.unique
class MarkerKind(enum.Enum):
  """Complexes of the levelset filtration marked inside a filtration.

  With `i` the marker index: REGULAR is K_(i,i+1), CRITICAL is K_(i-1,i+1),
  UPTO is K_(i-1,i] and FROM is K_[i,i+1).
  """
  REGULAR = 'regular'
  CRITICAL = 'critical'
  UPTO = 'upto'
  FROM = 'from'


Step = collections.namedtuple('Step', ['added', 'simplex'])
Marker = collections.namedtuple('Marker', ['position', 'kind', 'index'])


class SimplexwiseFiltration(object):
  """A sequence of single-simplex additions and deletions.

  Position k refers to the complex K_k obtained after the first k steps, so
  step k transforms K_k into K_{k+1}.
  """

  def __init__(self,
               complex_,
               steps,
               markers=(),
               critical_values=None,
               initial=()):
    """Constructs a SimplexwiseFiltration.

    Args:
      complex_: The ambient `SimplicialComplex`.
      steps: Sequence of `Step`.
      markers: Sequence of `Marker`, sorted by position.
      critical_values: Optional p-th critical values including the infinite
        sentinels at both ends, used to put values on mapped intervals.
      initial: Simplices present before the first step.
    """
    self.complex = complex_
    self.steps = tuple(steps)
    self.markers = tuple(sorted(markers, key=lambda m: m.position))
    self.critical_values = (
        tuple(critical_values) if critical_values is not None else None)
    self.initial = frozenset(initial)
    self._positions = {(m.kind, m.index): m.position for m in self.markers}
    self._snapshots = None

  def __len__(self):
    return len(self.steps)

  def position(self, kind, index):
    """Position of the marked complex `(kind, index)`."""
    return self._positions[(kind, index)]

  def levelset_markers(self):
    """REGULAR and CRITICAL markers in filtration order."""
    return [
        m for m in self.markers
        if m.kind in (MarkerKind.REGULAR, MarkerKind.CRITICAL)
    ]

  def _build_snapshots(self):
    current = set(self.initial)
    snapshots = [frozenset(current)]
    for k, step in enumerate(self.steps, 1):
      if step.added:
        current.add(step.simplex)
      else:
        current.discard(step.simplex)
      if k % SNAPSHOT_STRIDE == 0:
        snapshots.append(frozenset(current))
    self._snapshots = snapshots

  def complex_at(self, position):
    """Frozen set of simplices of K_position."""
    if not 0 <= position <= len(self.steps):
      raise IndexError('Position %d outside [0, %d].' %
                       (position, len(self.steps)))
    if self._snapshots is None:
      self._build_snapshots()
    base = position // SNAPSHOT_STRIDE
    current = set(self._snapshots[base])
    for step in self.steps[base * SNAPSHOT_STRIDE:position]:
      if step.added:
        current.add(step.simplex)
      else:
        current.discard(step.simplex)
    return frozenset(current)


SimplexwiseInterval = collections.namedtuple(
    'SimplexwiseInterval',
    ['beta', 'delta', 'creator', 'destroyer', 'birth_added', 'death_added'])
SimplexwiseInterval.__doc__ = """Interval [beta, delta] of a zigzag barcode.

`creator` is the simplex of step beta - 1 and `destroyer` the simplex of step
delta (None when the interval survives the last step). `birth_added` and
`death_added` tell whether these steps were additions.
"""


class LevelsetInterval(
    collections.namedtuple('LevelsetInterval', [
        'type', 'b', 'd', 'beta', 'delta', 'creator', 'destroyer',
        'birth_value', 'death_value'
    ])):
  """A levelset barcode interval between p-th critical indices b and d."""

  __slots__ = ()

  def slots(self):
    """Indices of the cycles of a persistent cycle sequence."""
    first = self.b - 1 if self.type.birth_closed else self.b
    last = self.d if self.type.death_closed else self.d - 1
    return list(range(first, last + 1))

  @property
  def num_cycles(self):
    return len(self.slots())

  def describe(self):
    left = '[' if self.type.birth_closed else '('
    right = ']' if self.type.death_closed else ')'
    return '%s %s%g, %g%s' % (self.type.value, left, self.birth_value,
                              self.death_value, right)


class RepresentativeSet(object):
  """Representative p-cycles of the intervals of a zigzag barcode."""

  def __init__(self, complex_, p, intervals, segments):
    """Constructs a RepresentativeSet.

    Args:
      complex_: The ambient `SimplicialComplex`.
      p: Dimension of the cycles.
      intervals: List of `SimplexwiseInterval`.
      segments: One `(starts, bitsets)` pair per interval; the cycle at index
        k is the bitset of the last start not after k.
    """
    self.complex = complex_
    self.p = p
    self.intervals = list(intervals)
    self._segments = [(tuple(s), tuple(c)) for s, c in segments]

  def __len__(self):
    return len(self.intervals)

  def cycle_bits(self, interval_index, k):
    interval = self.intervals[interval_index]
    if not interval.beta <= k <= interval.delta:
      raise IndexError('Index %d outside interval [%d, %d].' %
                       (k, interval.beta, interval.delta))
    starts, cycles = self._segments[interval_index]
    return cycles[bisect.bisect_right(starts, k) - 1]

  def cycle_at(self, interval_index, k):
    """The representative `Chain` of an interval at index k."""
    return self.complex.bits_chain(self.cycle_bits(interval_index, k), self.p)

  def change_points(self, interval_index):
    """Indices where the representative of an interval changes."""
    return self._segments[interval_index][0]

  def with_cycle(self, interval_index, k, chain):
    """Returns a copy whose representative at index k is `chain`."""
    interval = self.intervals[interval_index]
    points = set(self.change_points(interval_index)) | {k}
    if k + 1 <= interval.delta:
      points.add(k + 1)
    starts, cycles = [], []
    for point in sorted(points):
      starts.append(point)
      if point == k:
        cycles.append(self.complex.chain_bits(chain))
      else:
        cycles.append(self.cycle_bits(interval_index, point))
    segments = list(self._segments)
    segments[interval_index] = (starts, cycles)
    return RepresentativeSet(self.complex, self.p, self.intervals, segments)


class _Bar(object):
  """Mutable state of one interval while the engine runs."""

  __slots__ = ('birth', 'creator', 'birth_added', 'starts', 'cycles', 'death',
               'destroyer', 'death_added')

  def __init__(self, birth, creator, birth_added, cycle):
    self.birth = birth
    self.creator = creator
    self.birth_added = birth_added
    self.starts = [birth]
    self.cycles = [cycle]
    self.death = None
    self.destroyer = None
    self.death_added = None

  @property
  def current(self):
    return self.cycles[-1]

  def cycle_at(self, k):
    if k < self.birth:
      return 0
    return self.cycles[bisect.bisect_right(self.starts, k) - 1]


def _piecewise_sum(bars, first, last):
  """Segments of the sum of the representatives of `bars` on [first, last].

  A bar contributes nothing before its birth.
  """
  points = {first}
  for bar in bars:
    points.update(s for s in bar.starts if first < s <= last)
  starts, cycles = [], []
  for k in sorted(points):
    value = 0
    for bar in bars:
      value ^= bar.cycle_at(k)
    if cycles and cycles[-1] == value:
      continue
    starts.append(k)
    cycles.append(value)
  return starts, cycles


class ZigzagEngine(object):
  """Runs zigzag persistence in one dimension over a filtration."""

  def __init__(self, complex_, p):
    self._complex = complex_
    self._p = p
    self._cycles = z2_algebra.Z2Reducer()
    self._boundaries = z2_algebra.Z2Reducer()
    self._bars = []
    self._alive = []

  def run(self, filtration):
    """Processes every step of `filtration`.

    Returns:
      `(intervals, segments)`: the `SimplexwiseInterval` list sorted by
      (beta, delta) and the matching representative segments.

    Raises:
      NonEmptyStart: If the initial complex has nonzero p-th homology.
    """
    if filtration.initial:
      self._load(filtration.initial)
    for i, step in enumerate(filtration.steps):
      self._step(i, step)
      expected = len(self._cycles.kernel) - self._boundaries.rank
      if len(self._alive) != expected:
        raise errors.LevelsetCyclesError(
            'Zigzag bookkeeping out of sync at step %d: %d surviving '
            'intervals, homology rank %d.' % (i, len(self._alive), expected))
    for bar in self._alive:
      bar.death = len(filtration.steps)
    self._alive = []
    bars = sorted(self._bars, key=lambda bar: (bar.birth, bar.death))
    intervals = [
        SimplexwiseInterval(bar.birth, bar.death, bar.creator, bar.destroyer,
                            bar.birth_added, bar.death_added) for bar in bars
    ]
    segments = [(bar.starts, bar.cycles) for bar in bars]
    logging.vlog(1, 'Zigzag over %d steps produced %d intervals.',
                 len(filtration.steps), len(intervals))
    return intervals, segments

  def _load(self, initial):
    if z2_algebra.homology_rank(initial, self._p):
      raise errors.NonEmptyStart(
          'The filtration starts from a complex with nonzero homology in '
          'dimension %d.' % self._p)
    for simplex in sorted(initial, key=complex_core.simplex_key):
      self._step(-1, Step(True, simplex))
    self._bars = []
    self._alive = []

  def _open(self, birth, creator, birth_added, cycle):
    bar = _Bar(birth, creator, birth_added, cycle)
    self._bars.append(bar)
    self._alive.append(bar)

  def _close(self, bar, i, destroyer, death_added):
    bar.death = i
    bar.destroyer = destroyer
    bar.death_added = death_added
    self._alive.remove(bar)

  def _step(self, i, step):
    simplex = step.simplex
    dim = len(simplex) - 1
    if dim == self._p:
      column = 1 << self._complex.index(simplex)
      if step.added:
        vector = self._complex.boundary_bits(simplex) if dim else 0
        residual, combination = self._cycles.add(column, vector)
        if not residual:
          self._open(i + 1, simplex, True, combination)
      else:
        self._delete_cycle_simplex(i, simplex, column)
    elif dim == self._p + 1:
      column = 1 << self._complex.index(simplex)
      vector = self._complex.boundary_bits(simplex)
      if step.added:
        residual, _ = self._boundaries.reduce(vector)
        if residual:
          self._kill_forward(i, simplex, vector)
        self._boundaries.add(column, vector)
      elif not self._boundaries.remove(column):
        self._open(i + 1, simplex, False, vector)

  def _kill_forward(self, i, simplex, vector):
    """Forward map with nontrivial kernel: the class of `vector` dies."""
    members = self._express(vector)
    if all(not bar.birth_added for bar in members):
      victim = members[0]
    else:
      victim = [bar for bar in members if bar.birth_added][-1]
    victim.starts, victim.cycles = _piecewise_sum(members, victim.birth, i)
    self._close(victim, i, simplex, True)

  def _delete_cycle_simplex(self, i, simplex, column):
    """Backward deletion of a p-simplex."""
    members = [bar for bar in self._alive if bar.current & column]
    in_kernel = any(c & column for c in self._cycles.kernel)
    if bool(members) != in_kernel:
      raise errors.LevelsetCyclesError(
          'Representatives disagree with the cycle space at step %d.' % i)
    if members:
      if all(bar.birth_added for bar in members):
        victim = members[0]
      else:
        victim = [bar for bar in members if not bar.birth_added][-1]
      for bar in members:
        if bar is not victim:
          bar.starts, bar.cycles = _piecewise_sum([bar, victim], bar.birth, i)
      self._close(victim, i, simplex, False)
    self._cycles.remove(column)

  def _express(self, vector):
    """Surviving intervals whose representatives sum to `vector` mod B_p."""
    boundaries = self._boundaries.image
    pivots = {}

    def reduce(value, flags):
      while value:
        low = value.bit_length() - 1
        row = pivots.get(low)
        if row is not None:
          value ^= row[0]
          flags ^= row[1]
          continue
        row = boundaries.get(low)
        if row is None:
          break
        value ^= row[0]
      return value, flags

    for position, bar in enumerate(self._alive):
      value, flags = reduce(bar.current, 1 << position)
      if not value:
        raise errors.LevelsetCyclesError(
            'Surviving representatives are dependent.')
      pivots[value.bit_length() - 1] = (value, flags)
    value, flags = reduce(vector, 0)
    if value:
      raise errors.LevelsetCyclesError(
          'A dying class is not spanned by the surviving representatives.')
    return [
        bar for position, bar in enumerate(self._alive)
        if flags >> position & 1
    ]


def zigzag_barcode(filtration, p):
  """Intervals of the p-th zigzag barcode of `filtration`.

  Args:
    filtration: A `SimplexwiseFiltration`.
    p: Homology dimension.

  Returns:
    List of `SimplexwiseInterval` sorted by (beta, delta).
  """
  intervals, _ = ZigzagEngine(filtration.complex, p).run(filtration)
  return intervals


def zigzag_representatives(filtration, p):
  """Like `zigzag_barcode`, also returning a `RepresentativeSet`."""
  intervals, segments = ZigzagEngine(filtration.complex, p).run(filtration)
  return intervals, RepresentativeSet(filtration.complex, p, intervals,
                                      segments)


def map_intervals(intervals, filtration):
  """Maps simplex-wise intervals to levelset intervals.

  The first levelset complex inside [beta, delta] decides the birth end, the
  last one the death end: a REGULAR marker K_(i,i+1) gives an open end at i
  (birth) or i+1 (death), a CRITICAL marker K_(c-1,c+1) a closed end at c.

  Args:
    intervals: List of `SimplexwiseInterval`.
    filtration: The `SimplexwiseFiltration` they were computed on.

  Returns:
    `(levelset_intervals, trivial_intervals)`, both in input order.
  """
  markers = filtration.levelset_markers()
  positions = [m.position for m in markers]
  values = filtration.critical_values
  levelset, trivial = [], []
  for interval in intervals:
    first = bisect.bisect_left(positions, interval.beta)
    last = bisect.bisect_right(positions, interval.delta) - 1
    if first > last:
      trivial.append(interval)
      continue
    start, end = markers[first], markers[last]
    birth_closed = start.kind == MarkerKind.CRITICAL
    death_closed = end.kind == MarkerKind.CRITICAL
    b = start.index
    d = end.index if death_closed else end.index + 1
    levelset.append(
        LevelsetInterval(
            type=IntervalType.from_ends(birth_closed, death_closed),
            b=b,
            d=d,
            beta=interval.beta,
            delta=interval.delta,
            creator=interval.creator,
            destroyer=interval.destroyer,
            birth_value=values[b] if values else None,
            death_value=values[d] if values else None))
  return levelset, trivial


Violation = collections.namedtuple('Violation',
                                   ['interval', 'index', 'condition'])


def validate_representatives(representatives, filtration, p):
  """Checks the representative-cycle conditions of every interval.

  The birth condition asks for the creator in the first cycle of an interval
  born by an addition, and otherwise for a cycle that bounds one step
  earlier. The death condition is the mirror image at the end. Consecutive
  cycles must be homologous in the larger of the two complexes, and every
  cycle must be non-bounding where it lives.

  Returns:
    List of `Violation`; empty when every condition holds.
  """
  violations = []
  steps = filtration.steps
  checks = collections.defaultdict(list)
  for a, interval in enumerate(representatives.intervals):
    checks[interval.beta].append((a, 'birth'))
    if interval.destroyer is not None:
      checks[interval.delta].append((a, 'death'))
    changes = set(representatives.change_points(a))
    for k in range(interval.beta, interval.delta + 1):
      if k + 1 in changes and k + 1 <= interval.delta:
        checks[k].append((a, 'consecutive'))
      checks[k].append((a, 'bounding'))
  current = set(filtration.initial)
  for k in range(len(steps) + 1):
    if k:
      step = steps[k - 1]
      if step.added:
        current.add(step.simplex)
      else:
        current.discard(step.simplex)
    for a, condition in checks.get(k, ()):
      if not _check_condition(representatives, steps, current, a, k,
                              condition, p):
        violations.append(Violation(a, k, condition))
  return violations


def _check_condition(representatives, steps, current, a, k, condition, p):
  """Checks one condition of interval `a` at index k against K_k."""
  interval = representatives.intervals[a]
  cycle = representatives.cycle_at(a, k)
  try:
    if condition == 'bounding':
      return bool(cycle) and not z2_algebra.bounds(cycle, current)
    if condition == 'consecutive':
      following = representatives.cycle_at(a, k + 1)
      step = steps[k]
      larger = current | {step.simplex} if step.added else current
      return z2_algebra.are_homologous(cycle, following, larger)
    if condition == 'birth':
      if interval.birth_added:
        return interval.creator in cycle
      before = current | {interval.creator}
      return (not z2_algebra.bounds(cycle, current) and
              z2_algebra.bounds(cycle, before))
    if condition == 'death':
      if not interval.death_added:
        return interval.destroyer in cycle
      after = current | {interval.destroyer}
      return (not z2_algebra.bounds(cycle, current) and
              z2_algebra.bounds(cycle, after))
  except (errors.NotACycle, errors.NotContained):
    return False
  raise ValueError('Unknown condition %r.' % condition)


def levelset_barcode(context, filtration=None):
  """Levelset intervals of a `levelset.LevelsetContext` in one call."""
  if filtration is None:
    filtration = context.filtration()
  intervals = zigzag_barcode(filtration, context.p)
  levelset, _ = map_intervals(intervals, filtration)
  return levelset
