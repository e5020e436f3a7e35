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
"""Optimal levelset persistent p-cycles by minimum cuts on dual graphs.

Each levelset interval type gets a reduction: a dual graph (or, for
closed-closed intervals, one graph per candidate component) whose finite
minimum cut pulls back to a minimum-weight sequence of persistent cycles.
Open-closed intervals are solved as closed-open intervals of -f.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import collections
from concurrent import futures
import math

from absl import logging

from levelset_cycles.core import complex_core
from levelset_cycles.core import configs
from levelset_cycles.core import dualgraph
from levelset_cycles.core import errors
from levelset_cycles.core import levelset
from levelset_cycles.core import mincut
from levelset_cycles.core import z2_algebra
from levelset_cycles.core import zigzag

IntervalType = zigzag.IntervalType
RangeSpec = levelset.RangeSpec

BETA = 'beta'
DELTA = 'delta'

Slot = collections.namedtuple('Slot', ['index', 'complex', 'required'])
SlotPlan = collections.namedtuple('SlotPlan',
                                  ['slots', 'transitions', 'start', 'end'])
Violation = collections.namedtuple('Violation',
                                   ['condition', 'slot', 'message'])


class CycleSequence(
    collections.namedtuple('CycleSequence',
                           ['interval', 'cycles', 'total_weight'])):
  """Persistent cycles `(slot, Chain)` of one interval, ordered by slot."""

  __slots__ = ()

  @property
  def slots(self):
    return [slot for slot, _ in self.cycles]

  def chain(self, slot):
    for index, chain in self.cycles:
      if index == slot:
        return chain
    raise KeyError('No cycle at slot %d.' % slot)


def make_sequence(interval, cycles, complex_):
  cycles = tuple((slot, chain) for slot, chain in cycles)
  total = math.fsum(chain.weight(complex_) for _, chain in cycles)
  return CycleSequence(interval, cycles, total)


class ComponentSet(object):
  """(p+1)-connected components and their boundaries.

  Attributes:
    components: Tuple of frozen sets of (p+1)-simplices.
    boundaries: Tuple of frozen sets of p-simplices, aligned with
      `components`.
  """

  def __init__(self, components, boundaries):
    self.components = tuple(components)
    self.boundaries = tuple(boundaries)

  def __len__(self):
    return len(self.components)

  def __iter__(self):
    return iter(zip(self.components, self.boundaries))

  def claiming(self, simplex):
    """Indices of the components whose boundary holds `simplex`."""
    return [j for j, boundary in enumerate(self.boundaries) if simplex in boundary]

  def reordered(self, order):
    return ComponentSet([self.components[j] for j in order],
                        [self.boundaries[j] for j in order])

  def closure(self, j, ambient):
    return complex_core.closure(self.components[j], ambient)


def find_components(ctx, region, excluded, base):
  """Components of `region` minus `excluded` whose boundary lies in `base`.

  Args:
    ctx: A `levelset.LevelsetContext`.
    region: Face-closed set of simplices.
    excluded: Set of simplices removed from `region`.
    base: Set of simplices the boundary of a kept component must lie in.

  Returns:
    A `ComponentSet` sorted by smallest simplex. Components without
    boundary are dropped.
  """
  p = ctx.p
  cells = [s for s in region if len(s) == p + 2 and s not in excluded]
  allowed = frozenset(
      s for s in region if len(s) == p + 1 and s not in excluded)
  partition = complex_core.q_connected_components(
      cells, None, p + 1, allowed_faces=allowed)
  components, boundaries = [], []
  for component in partition:
    boundary = complex_core.boundary(complex_core.Chain(component, p + 1))
    if not boundary or not all(s in base for s in boundary):
      continue
    components.append(component)
    boundaries.append(boundary.simplices)
  logging.vlog(1, 'Kept %d of %d components.', len(components), len(partition))
  return ComponentSet(components, boundaries)


def bar_complex(ctx, base):
  """`base` plus the (p+1)-simplices of K with all p-faces in `base`."""
  fills = [
      tau for tau in ctx.complex.simplices(ctx.p + 1)
      if all(face in base for face in complex_core.faces(tau))
  ]
  return frozenset(base).union(fills)


def slot_plan(ctx, interval):
  """Complexes and conditions a cycle sequence of `interval` must meet.

  Regular slots i must carry a cycle of K_(i,i+1); a closed birth adds slot
  b-1 in K_beta holding the creator and a closed death adds slot d in
  K_delta holding the destroyer. Consecutive cycles must be homologous in
  K_(i,i+2). An open birth requires the first cycle to be non-bounding in
  K_beta but bounding in K_{beta-1}; an open death asks the same of the last
  cycle with K_delta and K_{delta+1}.
  """
  b, d = interval.b, interval.d
  slots = []
  for i in interval.slots():
    if interval.type.birth_closed and i == b - 1:
      slots.append(Slot(i, ctx.prefix(interval.beta), interval.creator))
    elif interval.type.death_closed and i == d:
      slots.append(Slot(i, ctx.prefix(interval.delta), interval.destroyer))
    else:
      slots.append(Slot(i, ctx.regular(i), None))
  transitions = [
      ctx.range_simplices(RangeSpec.open(slot.index, slot.index + 2))
      for slot in slots[:-1]
  ]
  start = end = None
  if not interval.type.birth_closed:
    start = (ctx.prefix(interval.beta), ctx.prefix(interval.beta - 1))
  if not interval.type.death_closed:
    end = (ctx.prefix(interval.delta), ctx.prefix(interval.delta + 1))
  return SlotPlan(slots, transitions, start, end)


def verify_cycle_sequence(ctx, interval, sequence):
  """Checks `sequence` against the definition of persistent cycles.

  Args:
    ctx: A `levelset.LevelsetContext`.
    interval: The `zigzag.LevelsetInterval` the sequence is for.
    sequence: A `CycleSequence`.

  Returns:
    A list of `Violation`, empty iff the sequence is valid.
  """
  plan = slot_plan(ctx, interval)
  expected = [slot.index for slot in plan.slots]
  if sequence.slots != expected:
    return [
        Violation('slot-range', None,
                  'Expected slots %s, got %s.' % (expected, sequence.slots))
    ]
  p = ctx.p
  chains = [chain for _, chain in sequence.cycles]
  violations = []
  for slot, chain in zip(plan.slots, chains):
    if chain and chain.dim != p:
      violations.append(
          Violation('cycle', slot.index, 'Not a %d-chain.' % p))
      continue
    if not chain.is_cycle():
      violations.append(Violation('cycle', slot.index, 'Nonzero boundary.'))
    outside = [s for s in chain if s not in slot.complex]
    if outside:
      violations.append(
          Violation('containment', slot.index,
                    '%d simplices outside the slot complex, e.g. %r.' %
                    (len(outside), outside[0])))
    if slot.required is not None and slot.required not in chain:
      condition = 'creator' if slot.index == interval.b - 1 else 'destroyer'
      violations.append(
          Violation(condition, slot.index,
                    'Missing %r.' % (slot.required,)))
  if violations:
    return violations
  for k, transition in enumerate(plan.transitions):
    if not z2_algebra.are_homologous(chains[k], chains[k + 1], transition):
      violations.append(
          Violation('consecutive', plan.slots[k].index,
                    'Cycles %d and %d are not homologous.' %
                    (plan.slots[k].index, plan.slots[k + 1].index)))
  for condition, ends, chain, slot in (
      ('birth-class', plan.start, chains[0], plan.slots[0].index),
      ('death-class', plan.end, chains[-1], plan.slots[-1].index)):
    if ends is None:
      continue
    alive, gone = ends
    if (z2_algebra.bounds(chain, alive) or
        not z2_algebra.bounds(chain, gone)):
      violations.append(
          Violation(condition, slot, 'Not the class of the interval end.'))
  total = math.fsum(chain.weight(ctx.complex) for chain in chains)
  if not math.isclose(total, sequence.total_weight, rel_tol=1e-9,
                      abs_tol=1e-9):
    violations.append(
        Violation('weight', None, 'Total weight %r differs from %r.' %
                  (sequence.total_weight, total)))
  return violations


def _regular_domain(ctx, b, d):

  def in_domain(simplex):
    i = ctx.regular_index(simplex)
    return i is not None and b <= i < d

  return in_domain


def _split_regular(ctx, simplices, b, d):
  by_index = collections.defaultdict(list)
  for simplex in simplices:
    by_index[ctx.regular_index(simplex)].append(simplex)
  return [complex_core.Chain(by_index.get(i, ()), ctx.p) for i in range(b, d)]


def _require(condition, message, simplices=()):
  if not condition:
    raise errors.AssumptionViolated(message, simplices)


def component_cycles(ctx, interval, components, sides):
  """Minimum cycles of every component, from one shared cut.

  Args:
    ctx: A `levelset.LevelsetContext`.
    interval: A closed-open or closed-closed `zigzag.LevelsetInterval`.
    components: A `ComponentSet`.
    sides: Map from BETA (and DELTA) to the p-simplices of K_beta (K_delta).

  Returns:
    For each component, the list of its cycles in K_(i,i+1), b <= i < d.
    Empty cycles are kept.

  Raises:
    AssumptionViolated: If some component admits no finite cut.
  """
  b, d = interval.b, interval.d
  if d <= b or not len(components):
    return [[] for _ in range(len(components))]

  def terminal_of(tau):
    i = ctx.slab_index(tau)
    if i is None or not b <= i <= d:
      return None
    return (i - b) % 2 == 0

  def boundary_side(sigma):
    for side in (BETA, DELTA):
      if side in sides and sigma in sides[side]:
        return side
    return None

  boundary_terminals = {BETA: True}
  if DELTA in sides:
    boundary_terminals[DELTA] = (d - b) % 2 == 0
  graph = dualgraph.dual_component_shared(
      list(components.components), ctx.p, ctx.complex,
      _regular_domain(ctx, b, d), terminal_of, boundary_side,
      boundary_terminals)
  if graph.sinks:
    cut = mincut.min_st_cut(graph)
  else:
    cut = mincut.trivial_cut(graph)
  _require(not cut.weight.is_infinite,
           'A component of the interval %s has no finite cut.' %
           interval.describe())
  return [
      _split_regular(ctx, graph.crossing_simplices(cut, component=j), b, d)
      for j in range(len(components))
  ]


def _closed_sides(ctx, interval):
  sides = {}
  if interval.type.birth_closed:
    sides[BETA] = frozenset(
        s for s in ctx.prefix(interval.beta) if len(s) == ctx.p + 1)
  if interval.type.death_closed:
    sides[DELTA] = frozenset(
        s for s in ctx.prefix(interval.delta) if len(s) == ctx.p + 1)
  return sides


def component_min_cycles(ctx, interval, component):
  """Minimum cycles of one component of a closed-open or closed-closed interval.

  Args:
    ctx: A `levelset.LevelsetContext`.
    interval: A `zigzag.LevelsetInterval` with a closed birth.
    component: Set of (p+1)-simplices.

  Returns:
    The cycles in K_(i,i+1) for b <= i < d, possibly empty.
  """
  if interval.type not in (IntervalType.CLOSED_OPEN,
                           IntervalType.CLOSED_CLOSED):
    raise ValueError('Components are only defined for closed-open and '
                     'closed-closed intervals, not %s.' % interval.type.value)
  boundary = complex_core.boundary(complex_core.Chain(component, ctx.p + 1))
  components = ComponentSet([frozenset(component)], [boundary.simplices])
  return component_cycles(ctx, interval, components,
                          _closed_sides(ctx, interval))[0]


class Reduction(object):
  """A cut problem whose solutions pull back to cycle sequences.

  Attributes:
    graphs: One `dualgraph.DualGraph` with terminals per run.
  """

  def __init__(self, ctx, interval):
    self.ctx = ctx
    self.interval = interval
    self.graphs = []

  def sequence_from_cut(self, cut, run=0):
    raise NotImplementedError

  def solve(self):
    """Returns the best sequence over all runs."""
    best = None
    for run, graph in enumerate(self.graphs):
      cut = mincut.min_st_cut(graph)
      logging.vlog(1, 'Run %d of %s: cut weight %r.', run,
                   self.interval.describe(), cut.weight)
      if cut.weight.is_infinite:
        continue
      if best is None or cut.weight < best[0].weight:
        best = (cut, run)
    _require(best is not None,
             'No finite cut exists for %s.' % self.interval.describe())
    return self.sequence_from_cut(*best)


class OpenOpenReduction(Reduction):
  """Dual graph of the closed component holding the creator."""

  def __init__(self, ctx, interval):
    super(OpenOpenReduction, self).__init__(ctx, interval)
    p, b, d = ctx.p, interval.b, interval.d
    complex_ = ctx.complex
    _require(1 <= b < d <= ctx.m,
             'Open-open interval %s lies outside the critical values.' %
             interval.describe())
    for simplex in (interval.creator, interval.destroyer):
      _require(simplex is not None and len(simplex) == p + 2,
               'Open ends need (p+1)-simplices.', [simplex])
    partition = complex_core.q_connected_components(
        complex_.simplices(p + 1), complex_, p + 1)
    component = partition[partition.component_of(interval.creator)]
    _require(interval.destroyer in component,
             'The creator and destroyer lie in different components.',
             [interval.creator, interval.destroyer])
    self.component = component
    host = complex_core.closure(component, complex_)
    try:
      graph = dualgraph.dual_closed(host, p, _regular_domain(ctx, b, d))
    except errors.NotClosedPseudomanifold as e:
      raise errors.AssumptionViolated(str(e), [interval.creator])
    sources, sinks = [], []
    for tau in component:
      i = ctx.slab_index(tau)
      if i is not None and b <= i <= d:
        ((sources if (i - b) % 2 == 0 else sinks)
         .append(dualgraph.cofacet(tau)))
    graph.set_terminals(sources, sinks)
    self.graphs.append(graph)

  def sequence_from_cut(self, cut, run=0):
    b, d = self.interval.b, self.interval.d
    chains = _split_regular(self.ctx, self.graphs[run].crossing_simplices(cut),
                            b, d)
    return make_sequence(self.interval, zip(range(b, d), chains),
                         self.ctx.complex)


def _check_closed_end(ctx, position, spec, simplex, name):
  """Returns the p-simplices of K_position after checking the closed end."""
  complex_ = ctx.prefix(position)
  _require(simplex is not None and len(simplex) == ctx.p + 1,
           'The %s of a closed end must be a p-simplex.' % name, [simplex])
  outside = [s for s in complex_ if s not in ctx.range_simplices(spec)]
  _require(not outside,
           'The %s complex is not inside its half-open range.' % name,
           outside[:1])
  return complex_


class ClosedOpenReduction(Reduction):
  """Dual graph of the filled birth complex with one dummy per component."""

  def __init__(self, ctx, interval):
    super(ClosedOpenReduction, self).__init__(ctx, interval)
    p, b, d = ctx.p, interval.b, interval.d
    complex_ = ctx.complex
    _require(1 <= b < d <= ctx.m,
             'Closed-open interval %s lies outside the critical values.' %
             interval.describe())
    birth = _check_closed_end(ctx, interval.beta,
                              RangeSpec.open_closed(b - 1, b),
                              interval.creator, 'creator')
    filled = bar_complex(ctx, birth)
    _require(not any(c in filled for c in complex_.cofaces(interval.creator)),
             'The creator has a coface in the filled birth complex.',
             [interval.creator])
    region = (
        ctx.range_simplices(RangeSpec.open(b - 1, d))
        | ctx.prefix(interval.delta + 1))
    sides = _closed_sides(ctx, interval)
    found = find_components(ctx, region, filled, sides[BETA])
    first = found.claiming(interval.creator)
    _require(len(first) == 1,
             '%d components have the creator on their boundary.' % len(first),
             [interval.creator])
    order = first + [j for j in range(len(found)) if j != first[0]]
    self.components = found.reordered(order)
    self.cycles = component_cycles(ctx, interval, self.components, sides)
    weights = [
        math.fsum(chain.weight(complex_) for chain in chains)
        for chains in self.cycles
    ]
    graph = dualgraph.dual_with_boundary(
        complex_.subcomplex(filled), p, list(self.components.boundaries),
        weights)
    graph.set_terminals([dualgraph.dummy(0)], [dualgraph.OUTER_VERTEX])
    self.graphs.append(graph)

  def sequence_from_cut(self, cut, run=0):
    b, d = self.interval.b, self.interval.d
    graph = self.graphs[run]
    p = self.ctx.p
    cycles = [(b - 1, complex_core.Chain(graph.crossing_simplices(cut), p))]
    selected = graph.crossed_components(cut)
    for offset, i in enumerate(range(b, d)):
      chain = complex_core.Chain(dim=p)
      for j in selected:
        chain = chain + self.cycles[j][offset]
      cycles.append((i, chain))
    return make_sequence(self.interval, cycles, self.ctx.complex)


class ClosedClosedReduction(Reduction):
  """Two-sided filled complex; one run per candidate component."""

  def __init__(self, ctx, interval):
    super(ClosedClosedReduction, self).__init__(ctx, interval)
    p, b, d = ctx.p, interval.b, interval.d
    complex_ = ctx.complex
    _require(1 <= b <= d <= ctx.m,
             'Closed-closed interval %s lies outside the critical values.' %
             interval.describe())
    birth = _check_closed_end(ctx, interval.beta,
                              RangeSpec.open_closed(b - 1, b),
                              interval.creator, 'creator')
    death = _check_closed_end(ctx, interval.delta,
                              RangeSpec.closed_open(d, d + 1),
                              interval.destroyer, 'destroyer')
    filled = bar_complex(ctx, birth) | bar_complex(ctx, death)
    for simplex in (interval.creator, interval.destroyer):
      _require(not any(c in filled for c in complex_.cofaces(simplex)),
               'A closed end has a coface in the filled complexes.', [simplex])
    self.sides = _closed_sides(ctx, interval)
    region = ctx.range_simplices(RangeSpec.open(b - 1, d + 1))
    found = find_components(ctx, region, filled,
                            self.sides[BETA] | self.sides[DELTA])
    candidates = [
        j for j in range(len(found))
        if interval.creator in found.boundaries[j] and
        interval.destroyer in found.boundaries[j]
    ]
    _require(candidates, 'No component is bounded by both the creator and the '
             'destroyer.', [interval.creator, interval.destroyer])
    if len(candidates) > 2:
      logging.warning('%d candidate components for %s.', len(candidates),
                      interval.describe())
    order = candidates + [j for j in range(len(found)) if j not in candidates]
    self.components = found.reordered(order)
    self.num_candidates = len(candidates)
    self.cycles = component_cycles(ctx, interval, self.components, self.sides)
    weights = None
    if b < d:
      weights = [
          math.fsum(chain.weight(complex_) for chain in chains)
          for chains in self.cycles
      ]
    host = complex_.subcomplex(filled)
    ends = set(self.components.claiming(interval.creator) +
               self.components.claiming(interval.destroyer))
    for i in range(self.num_candidates):
      graph = dualgraph.dual_with_boundary(
          host, p, list(self.components.boundaries), weights)
      sinks = [dualgraph.OUTER_VERTEX]
      sinks.extend(
          dualgraph.dummy(j) for j in sorted(ends | set(range(
              self.num_candidates))) if j != i)
      graph.set_terminals([dualgraph.dummy(i)], sinks)
      self.graphs.append(graph)

  def sequence_from_cut(self, cut, run=0):
    b, d = self.interval.b, self.interval.d
    graph = self.graphs[run]
    p = self.ctx.p
    crossing = graph.crossing_simplices(cut)
    birth = [s for s in crossing if s in self.sides[BETA]]
    death = [s for s in crossing if s in self.sides[DELTA]]
    cycles = [(b - 1, complex_core.Chain(birth, p))]
    selected = graph.crossed_components(cut)
    for offset, i in enumerate(range(b, d)):
      chain = complex_core.Chain(dim=p)
      for j in selected:
        chain = chain + self.cycles[j][offset]
      cycles.append((i, chain))
    cycles.append((d, complex_core.Chain(death, p)))
    return make_sequence(self.interval, cycles, self.ctx.complex)


def mirrored_interval(ctx, interval):
  """The closed-open interval of -f matching an open-closed one of f."""
  m = ctx.m
  total = len(ctx.filtration())
  return zigzag.LevelsetInterval(
      type=IntervalType.CLOSED_OPEN,
      b=m + 1 - interval.d,
      d=m + 1 - interval.b,
      beta=total - interval.delta,
      delta=total - interval.beta,
      creator=interval.destroyer,
      destroyer=interval.creator,
      birth_value=-interval.death_value,
      death_value=-interval.birth_value)


class OpenClosedReduction(Reduction):
  """Closed-open reduction of -f with mirrored slots."""

  def __init__(self, ctx, interval):
    super(OpenClosedReduction, self).__init__(ctx, interval)
    self.mirror = ClosedOpenReduction(ctx.negated(),
                                      mirrored_interval(ctx, interval))
    self.graphs = self.mirror.graphs

  def sequence_from_cut(self, cut, run=0):
    mirrored = self.mirror.sequence_from_cut(cut, run)
    m = self.ctx.m
    cycles = [(m - slot, chain) for slot, chain in reversed(mirrored.cycles)]
    return make_sequence(self.interval, cycles, self.ctx.complex)


_REDUCTIONS = {
    IntervalType.OPEN_OPEN: OpenOpenReduction,
    IntervalType.CLOSED_OPEN: ClosedOpenReduction,
    IntervalType.OPEN_CLOSED: OpenClosedReduction,
    IntervalType.CLOSED_CLOSED: ClosedClosedReduction,
}


def build_reduction(ctx, interval):
  """The `Reduction` for the type of `interval`."""
  return _REDUCTIONS[interval.type](ctx, interval)


def cut_to_sequence(reduction, cut, run=0):
  return reduction.sequence_from_cut(cut, run)


def solve_open_open(ctx, interval):
  return OpenOpenReduction(ctx, interval).solve()


def solve_closed_open(ctx, interval):
  return ClosedOpenReduction(ctx, interval).solve()


def solve_open_closed(ctx, interval):
  return OpenClosedReduction(ctx, interval).solve()


def solve_closed_closed(ctx, interval):
  return ClosedClosedReduction(ctx, interval).solve()


def solve_interval(ctx, interval, config=None):
  """Minimum-weight persistent cycles of `interval`.

  Args:
    ctx: A `levelset.LevelsetContext`.
    interval: A `zigzag.LevelsetInterval` of `ctx.barcode()`.
    config: Optional `configs.SolverConfig`.

  Returns:
    A `CycleSequence`.

  Raises:
    AssumptionViolated: If the complex breaks an assumption of the reduction
      or, with `config.verify_output`, the result fails verification.
  """
  config = config or configs.SolverConfig.default()
  sequence = build_reduction(ctx, interval).solve()
  logging.info('Solved %s: %d cycles of total weight %g.', interval.describe(),
               len(sequence.cycles), sequence.total_weight)
  if config.verify_output:
    violations = verify_cycle_sequence(ctx, interval, sequence)
    if violations:
      raise errors.AssumptionViolated(
          'The cycles of %s fail verification: %s' %
          (interval.describe(), '; '.join(v.message for v in violations)))
  return sequence


def solve_intervals(ctx, intervals, config=None):
  """Solves several intervals, in a thread pool when `config.jobs` > 1."""
  config = config or configs.SolverConfig.default()
  intervals = list(intervals)
  ctx.filtration()
  if config.jobs <= 1 or len(intervals) <= 1:
    return [solve_interval(ctx, interval, config) for interval in intervals]
  with futures.ThreadPoolExecutor(max_workers=config.jobs) as pool:
    return list(
        pool.map(lambda interval: solve_interval(ctx, interval, config),
                 intervals))
