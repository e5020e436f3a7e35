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
"""Classical levelset barcode of a PL function via extended persistence.

The complex is coned off: the lower stars are added in increasing function
order, then a cone vertex is joined to the upper stars in decreasing order.
Pairs of the resulting filtration translate into the four levelset interval
types, which is how the p-th critical values are read off.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import collections

from absl import logging

from levelset_cycles.core import complex_core
from levelset_cycles.core import zigzag

LevelsetBar = collections.namedtuple('LevelsetBar',
                                     ['type', 'dim', 'lower', 'upper'])
LevelsetBar.__doc__ = """One bar of the classical levelset barcode.

`lower` and `upper` are the vertices whose values are the endpoints.
"""


def _coned_filtration(complex_, function):
  """Returns the simplices of the coned filtration and the ascending size."""
  vertices = complex_.star_order(function)
  cone = min(vertices) - 1 if vertices else -1
  order = [(cone,)]
  for vertex in vertices:
    order.extend(
        sorted(complex_.lower_star(vertex, function),
               key=complex_core.simplex_key))
  num_ascending = len(order)
  for vertex in reversed(vertices):
    for simplex in sorted(complex_.upper_star(vertex, function),
                          key=complex_core.simplex_key):
      order.append((cone,) + simplex)
  return order, num_ascending


def persistence_pairs(order, dims):
  """Standard column reduction of a filtration restricted to `dims`.

  Args:
    order: Simplices in filtration order, every prefix face-closed.
    dims: Dimensions of the columns to reduce.

  Returns:
    List of `(birth_position, death_position)` pairs.
  """
  position = {s: i for i, s in enumerate(order)}
  pivots = {}
  pairs = []
  for j, simplex in enumerate(order):
    if len(simplex) - 1 not in dims:
      continue
    column = 0
    for face in complex_core.faces(simplex):
      column |= 1 << position[face]
    while column:
      low = column.bit_length() - 1
      other = pivots.get(low)
      if other is None:
        pivots[low] = column
        pairs.append((low, j))
        break
      column ^= other
  return pairs


def levelset_bars(complex_, function, p):
  """Dimension-`p` levelset bars of `function` on `complex_`.

  Args:
    complex_: A `SimplicialComplex`.
    function: A `levelset.PLFunction` on its vertices.
    p: Homology dimension.

  Returns:
    List of `LevelsetBar`, sorted by endpoint order.
  """
  key = function.key
  order, num_ascending = _coned_filtration(complex_, function)
  pairs = persistence_pairs(order, (p + 1, p + 2))
  bars = []
  for birth, death in pairs:
    born, killer = order[birth], order[death]
    q = len(born) - 1
    if death < num_ascending:
      if q != p:
        continue
      lower = max(born, key=key)
      upper = max(killer, key=key)
      if lower != upper:
        bars.append(LevelsetBar(zigzag.IntervalType.CLOSED_OPEN, p, lower,
                                upper))
    elif birth < num_ascending:
      entered = max(born, key=key)
      coned = min(killer[1:], key=key)
      if q == p and key(entered) <= key(coned):
        bars.append(LevelsetBar(zigzag.IntervalType.CLOSED_CLOSED, p, entered,
                                coned))
      elif q == p + 1 and key(entered) > key(coned):
        bars.append(LevelsetBar(zigzag.IntervalType.OPEN_OPEN, p, coned,
                                entered))
    else:
      if q != p + 1:
        continue
      upper = min(born[1:], key=key)
      lower = min(killer[1:], key=key)
      if lower != upper:
        bars.append(LevelsetBar(zigzag.IntervalType.OPEN_CLOSED, p, lower,
                                upper))
  bars.sort(key=lambda bar: (key(bar.lower), key(bar.upper), bar.type.value))
  logging.vlog(1, 'Extended persistence found %d bars in dimension %d.',
               len(bars), p)
  return bars
