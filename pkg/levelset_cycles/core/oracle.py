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
"""Exhaustive certifiers for the cut and cycle solvers.

Everything here enumerates: cuts by flipping one free vertex at a time, and
cycles by walking Gray codes over boundary bases. Use only on small inputs.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import collections
import fractions
import itertools
import math

from absl import logging
from networkx.utils import UnionFind

from levelset_cycles.core import complex_core
from levelset_cycles.core import configs
from levelset_cycles.core import errors
from levelset_cycles.core import mincut
from levelset_cycles.core import optcycles
from levelset_cycles.core import z2_algebra
from levelset_cycles.core import zigzag

IntervalType = zigzag.IntervalType
RangeSpec = optcycles.RangeSpec

WitnessChains = collections.namedtuple('WitnessChains', ['interval', 'chains'])
WitnessChains.__doc__ = """(p+1)-chains `(k, A_k)` telescoping a cycle sequence.

Each boundary of A_k is the sum of the two cycles it joins, or a single
cycle at an open end.
"""


def _gray_flips(count):
  """Bit to flip at each step of a Gray code over `count` bits."""
  for step in range(1, 2**count):
    yield (step & -step).bit_length() - 1


def brute_min_cut(graph, config=None):
  """Minimum cut by trying every side assignment of the free vertices.

  Args:
    graph: A `mincut.FlowGraph` with terminals.
    config: Optional `configs.SolverConfig` with the free vertex bound.

  Returns:
    A `mincut.CutResult`; ties go to the first assignment in Gray order.

  Raises:
    BadTerminals: If the terminal sets are empty or overlap.
    TooLarge: If more than `config.oracle_cut_bound` vertices are free.
  """
  config = config or configs.SolverConfig.default()
  bound = config.oracle_cut_bound
  if not graph.sources or not graph.sinks:
    raise errors.BadTerminals('Both terminal sets must be nonempty.')
  if graph.sources & graph.sinks:
    raise errors.BadTerminals('The terminal sets overlap.')
  free = [
      v for v in graph.vertices
      if v not in graph.sources and v not in graph.sinks
  ]
  if len(free) > bound:
    raise errors.TooLarge('%d free vertices exceed the bound %d.' %
                          (len(free), bound))
  on_source = {v: v in graph.sources for v in graph.vertices}
  incident = collections.defaultdict(list)
  infinite, finite = 0, fractions.Fraction(0)
  for edge in graph.edges():
    if edge.u == edge.v:
      continue
    incident[edge.u].append(edge)
    incident[edge.v].append(edge)
    if on_source[edge.u] != on_source[edge.v]:
      infinite += edge.weight.infinite_count
      finite += fractions.Fraction(edge.weight.finite)
  best = (infinite, finite)
  best_side = {v for v, side in on_source.items() if side}
  for bit in _gray_flips(len(free)):
    vertex = free[bit]
    for edge in incident[vertex]:
      sign = -1 if on_source[edge.u] != on_source[edge.v] else 1
      infinite += sign * edge.weight.infinite_count
      finite += sign * fractions.Fraction(edge.weight.finite)
    on_source[vertex] = not on_source[vertex]
    if (infinite, finite) < best:
      best = (infinite, finite)
      best_side = {v for v, side in on_source.items() if side}
  return mincut.make_cut_result(graph, best_side)


def _vertex_pieces(simplices):
  """Splits a face-closed set into its vertex-connected pieces."""
  union_find = UnionFind()
  for simplex in simplices:
    union_find[simplex[0]]
    for vertex in simplex[1:]:
      union_find.union(simplex[0], vertex)
  pieces = collections.defaultdict(list)
  for simplex in simplices:
    pieces[union_find[simplex[0]]].append(simplex)
  return sorted(pieces.values(), key=min)


def _boundary_reducer(complex_, simplices, p):
  reducer = z2_algebra.Z2Reducer()
  for tau in sorted(s for s in simplices if len(s) == p + 2):
    reducer.add(0, complex_.boundary_bits(tau))
  return reducer


def _weight_of(bits, weights):
  return math.fsum(weights[i] for i in complex_core.iter_bits(bits))


def _piece_minima(complex_, piece, p, required, bound):
  """Lightest cycle of each homology class of one connected piece.

  Returns:
    A list indexed by class mask of `(weight, bits)` pairs, or None when the
    class has no cycle holding `required`.
  """
  p_cells = sorted(s for s in piece if len(s) == p + 1)
  cycles = z2_algebra.Z2Reducer()
  for sigma in p_cells:
    face_bits = 0
    if p > 0:
      for face in complex_core.faces(sigma):
        face_bits |= 1 << complex_.index(face)
    cycles.add(1 << complex_.index(sigma), face_bits)
  boundaries = _boundary_reducer(complex_, piece, p)
  spanned = z2_algebra.Z2Reducer()
  for vector, _ in boundaries.image.values():
    spanned.add(0, vector)
  harmonic = []
  for z in cycles.kernel:
    residual, _ = spanned.add(0, z)
    if residual:
      harmonic.append(z)
  rows = [vector for vector, _ in boundaries.image.values()]
  if len(harmonic) + len(rows) > bound:
    raise errors.TooLarge(
        'A piece with %d classes and boundary rank %d exceeds the bound %d.' %
        (len(harmonic), len(rows), bound))
  weights = {complex_.index(s): complex_.weight(s) for s in p_cells}
  required_bit = None
  if required is not None and required in piece:
    required_bit = 1 << complex_.index(required)
  minima = []
  for mask in range(2**len(harmonic)):
    vector = 0
    for j in complex_core.iter_bits(mask):
      vector ^= harmonic[j]
    best = None
    candidates = itertools.chain(
        [vector], _gray_walk(vector, rows))
    for candidate in candidates:
      if required_bit is not None and not candidate & required_bit:
        continue
      entry = (_weight_of(candidate, weights), candidate)
      if best is None or entry < best:
        best = entry
    minima.append(best)
  return minima


def _gray_walk(start, rows):
  vector = start
  for bit in _gray_flips(len(rows)):
    vector ^= rows[bit]
    yield vector


def _slot_classes(ctx, slot, bound):
  """Lightest cycle per homology class of a slot complex.

  Returns:
    A list of `(weight, bits)` pairs, one per feasible class.
  """
  complex_ = ctx.complex
  pieces = _vertex_pieces(sorted(slot.complex))
  tables = [
      _piece_minima(complex_, piece, ctx.p, slot.required, bound)
      for piece in pieces
  ]
  total_classes = sum(len(table).bit_length() - 1 for table in tables)
  if total_classes > bound:
    raise errors.TooLarge('Slot %d has 2**%d classes, above the bound %d.' %
                          (slot.index, total_classes, bound))
  if slot.required is not None and slot.required not in slot.complex:
    return []
  classes = []
  for choice in itertools.product(*[range(len(t)) for t in tables]):
    weight, bits = 0.0, 0
    feasible = True
    for table, mask in zip(tables, choice):
      entry = table[mask]
      if entry is None:
        feasible = False
        break
      weight += entry[0]
      bits |= entry[1]
    if feasible:
      classes.append((weight, bits))
  return classes


def brute_optimal_sequence(ctx, interval, config=None):
  """Lightest persistent cycle sequence by exhaustive class enumeration.

  Every slot complex is split into connected pieces; the lightest cycle of
  each homology class of each piece is found by enumerating the class. A
  dynamic program over the slots then joins classes that are homologous in
  the transition complexes, subject to the conditions at both ends.

  Args:
    ctx: A `levelset.LevelsetContext`.
    interval: A `zigzag.LevelsetInterval`.
    config: Optional `configs.SolverConfig` with the enumeration bound.

  Returns:
    An `optcycles.CycleSequence` of minimum total weight.

  Raises:
    TooLarge: If some enumeration exceeds `config.oracle_sequence_bound`.
    AssumptionViolated: If no valid sequence exists.
  """
  config = config or configs.SolverConfig.default()
  bound = config.oracle_sequence_bound
  complex_ = ctx.complex
  p = ctx.p
  plan = optcycles.slot_plan(ctx, interval)
  transitions = [
      _boundary_reducer(complex_, t, p) for t in plan.transitions
  ]
  layers = [_slot_classes(ctx, slot, bound) for slot in plan.slots]

  def end_check(ends):
    if ends is None:
      return lambda bits: True
    alive = _boundary_reducer(complex_, ends[0], p)
    gone = _boundary_reducer(complex_, ends[1], p)
    return lambda bits: alive.canonical(bits) != 0 and not gone.canonical(bits)

  starts_ok, ends_ok = end_check(plan.start), end_check(plan.end)

  first = [entry for entry in layers[0] if starts_ok(entry[1])]
  # Each state is (total weight, bits of the last cycle, previous state).
  states = [(weight, bits, None) for weight, bits in first]
  for k in range(1, len(layers)):
    reducer = transitions[k - 1]
    best_by_key = {}
    for state in states:
      key = reducer.canonical(state[1])
      current = best_by_key.get(key)
      if current is None or state[:2] < current[:2]:
        best_by_key[key] = state
    states = []
    for weight, bits in layers[k]:
      previous = best_by_key.get(reducer.canonical(bits))
      if previous is not None:
        states.append((previous[0] + weight, bits, previous))
  states = [s for s in states if ends_ok(s[1])]
  if not states:
    raise errors.AssumptionViolated('No valid sequence exists for %s.' %
                                    interval.describe())
  best = min(states, key=lambda s: s[:2])
  chains = []
  while best is not None:
    chains.append(complex_.bits_chain(best[1], p))
    best = best[2]
  chains.reverse()
  sequence = optcycles.make_sequence(
      interval, zip([slot.index for slot in plan.slots], chains), complex_)
  logging.info('Exhaustive optimum of %s: %g.', interval.describe(),
               sequence.total_weight)
  return sequence


def _solve(chain, simplices, k):
  try:
    witness = z2_algebra.solve_boundary(chain, simplices)
  except (errors.NotContained, errors.NotACycle) as e:
    raise errors.NoWitness('No witness for slot %d: %s' % (k, e))
  if witness is None:
    raise errors.NoWitness('Cycle sum at slot %d does not bound.' % k)
  return witness


def reconstruct_witness(ctx, interval, sequence):
  """(p+1)-chains whose boundaries telescope the cycles of `sequence`.

  A_k joins the cycles of slots k-1 and k inside K_(k-1,k+1). An open birth
  has A_b in K_{beta-1} bounding the first cycle alone; an open death has
  A_d in K_{delta+1} bounding the last cycle alone. Open-open witnesses stay
  in the closed component of the creator.

  Args:
    ctx: A `levelset.LevelsetContext`.
    interval: A `zigzag.LevelsetInterval`.
    sequence: A valid `optcycles.CycleSequence`.

  Returns:
    A `WitnessChains`.

  Raises:
    NoWitness: If some telescoping chain does not exist.
  """
  p = ctx.p
  b, d = interval.b, interval.d
  complex_ = ctx.complex
  cycles = dict(sequence.cycles)
  restrict = None
  if interval.type == IntervalType.OPEN_OPEN:
    partition = complex_core.q_connected_components(
        complex_.simplices(p + 1), complex_, p + 1)
    restrict = complex_core.closure(
        partition[partition.component_of(interval.creator)]).simplices()
    restrict = frozenset(restrict)
    cycles = {
        k: complex_core.Chain([s for s in z if s in restrict], p)
        for k, z in cycles.items()
    }

  def within(simplices):
    return simplices if restrict is None else simplices & restrict

  empty = complex_core.Chain(dim=p)
  chains = []
  last = d if interval.type.death_closed else d - 1
  for k in range(b, last + 2):
    before = cycles.get(k - 1, empty)
    after = cycles.get(k, empty)
    if k == b and not interval.type.birth_closed:
      host = ctx.prefix(interval.beta - 1)
    elif k == last + 1:
      if interval.type.death_closed:
        break
      host = ctx.prefix(interval.delta + 1)
    else:
      host = ctx.range_simplices(RangeSpec.open(k - 1, k + 1))
    chains.append((k, _solve(before + after, within(host), k)))
  return WitnessChains(interval, chains)
