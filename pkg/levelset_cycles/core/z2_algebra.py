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
"""Gaussian elimination over Z2 and homology queries on subcomplexes.

Vectors are Python ints used as bitsets. Queries against a subcomplex
re-index its simplices locally in lexicographic order, so witnesses are
reproducible.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import numpy as np

from levelset_cycles.core import complex_core
from levelset_cycles.core import errors


class Z2Reducer(object):
  """Incremental column reduction over Z2 that tracks column combinations.

  Attributes:
    image: Map from the pivot (highest set bit) of every reduced nonzero
      column to its `(vector, combination)` pair. `vector` is the reduced
      column and `combination` the bitset of input columns summing to it.
    kernel: Combinations of input columns whose vectors sum to zero.
  """

  def __init__(self):
    self.image = {}
    self.kernel = []

  @property
  def rank(self):
    return len(self.image)

  def reduce(self, vector):
    """Reduces `vector` until its pivot is free.

    Returns:
      `(residual, combination)`: `residual` is zero iff `vector` lies in the
      span of the image, and `vector == residual + sum of the image rows
      selected by combination`.
    """
    combination = 0
    image = self.image
    while vector:
      row = image.get(vector.bit_length() - 1)
      if row is None:
        break
      vector ^= row[0]
      combination ^= row[1]
    return vector, combination

  def canonical(self, vector):
    """Unique representative of `vector` modulo the image span."""
    image = self.image
    result = 0
    while vector:
      low = vector.bit_length() - 1
      row = image.get(low)
      if row is None:
        result |= 1 << low
        vector ^= 1 << low
      else:
        vector ^= row[0]
    return result

  def add(self, column, vector):
    """Adds input column `column` (a single bit) with value `vector`.

    Returns:
      `(residual, combination)` as in `reduce`, with `column` included in
      `combination`. A zero residual means the column closed a cycle and
      `combination` was appended to `kernel`.
    """
    residual, combination = self.reduce(vector)
    combination ^= column
    if residual:
      self.image[residual.bit_length() - 1] = (residual, combination)
    else:
      self.kernel.append(combination)
    return residual, combination

  def remove(self, column):
    """Removes input column `column` while keeping the reduction valid.

    Returns:
      True if the column was absorbed by a kernel combination, False if an
      image row had to be dropped.
    """
    for position, combination in enumerate(self.kernel):
      if combination & column:
        del self.kernel[position]
        self._eliminate(column, combination, 0)
        return True
    rows = [low for low, row in self.image.items() if row[1] & column]
    if not rows:
      raise KeyError('Column %d is not part of the reduction.' %
                     (column.bit_length() - 1))
    low = min(rows)
    vector, combination = self.image.pop(low)
    self._eliminate(column, combination, vector)
    return False

  def _eliminate(self, column, combination, vector):
    for position, other in enumerate(self.kernel):
      if other & column:
        self.kernel[position] = other ^ combination
    for low, (other_vector, other_combination) in list(self.image.items()):
      if other_combination & column:
        self.image[low] = (other_vector ^ vector,
                           other_combination ^ combination)


def _cells(complex_, dim):
  if isinstance(complex_, complex_core.SimplicialComplex):
    return complex_.simplices(dim)
  return sorted(s for s in complex_ if len(s) == dim + 1)


def _local_bits(simplices, index):
  bits = 0
  for simplex in simplices:
    bits |= 1 << index[simplex]
  return bits


def boundary_matrix(complex_, q):
  """Dense boundary matrix of `complex_` in degree `q`.

  Rows are the (q-1)-simplices and columns the q-simplices, both in
  lexicographic order; entry (r, c) is 1 iff row r is a face of column c.
  """
  rows = _cells(complex_, q - 1) if q > 0 else []
  columns = _cells(complex_, q)
  index = {s: i for i, s in enumerate(rows)}
  matrix = np.zeros((len(rows), len(columns)), dtype=np.uint8)
  if rows:
    for c, simplex in enumerate(columns):
      for face in complex_core.faces(simplex):
        matrix[index[face], c] = 1
  return matrix


def dense_rank(matrix):
  """Rank over Z2 of a 0/1 matrix by row reduction with numpy."""
  work = np.array(matrix, dtype=np.uint8) % 2
  if work.ndim != 2 or work.size == 0:
    return 0
  num_rows, num_columns = work.shape
  rank = 0
  for c in range(num_columns):
    candidates = np.nonzero(work[rank:, c])[0]
    if candidates.size == 0:
      continue
    pivot = rank + candidates[0]
    if pivot != rank:
      work[[rank, pivot]] = work[[pivot, rank]]
    mask = work[:, c].astype(bool)
    mask[rank] = False
    work[mask] ^= work[rank]
    rank += 1
    if rank == num_rows:
      break
  return rank


def boundary_rank(complex_, q):
  """Rank of the degree-`q` boundary map of `complex_`."""
  if q <= 0:
    return 0
  index = {s: i for i, s in enumerate(_cells(complex_, q - 1))}
  reducer = Z2Reducer()
  for j, simplex in enumerate(_cells(complex_, q)):
    reducer.add(1 << j, _local_bits(complex_core.faces(simplex), index))
  return reducer.rank


def homology_rank(complex_, p):
  """Dimension of the p-th Z2 homology of `complex_`."""
  num_cells = len(_cells(complex_, p))
  return num_cells - boundary_rank(complex_, p) - boundary_rank(
      complex_, p + 1)


def _check_cycle(chain, complex_):
  outside = [s for s in chain if s not in complex_]
  if outside:
    raise errors.NotContained('%d simplices of the chain, e.g. %r, are not in '
                              'the complex.' % (len(outside), outside[0]))
  if complex_core.boundary(chain):
    raise errors.NotACycle('The chain has a nonempty boundary.')


def solve_boundary(chain, complex_):
  """Finds a (p+1)-chain of `complex_` whose boundary is `chain`.

  Args:
    chain: A p-cycle contained in `complex_`.
    complex_: A `SimplicialComplex` or a face-closed set of simplices.

  Returns:
    The witness `Chain`, or None when `chain` is not a boundary.

  Raises:
    NotACycle: If `chain` has a nonempty boundary.
    NotContained: If `chain` is not contained in `complex_`.
  """
  _check_cycle(chain, complex_)
  if not chain:
    return complex_core.Chain(
        dim=None if chain.dim is None else chain.dim + 1)
  p = chain.dim
  index = {s: i for i, s in enumerate(_cells(complex_, p))}
  columns = _cells(complex_, p + 1)
  target = _local_bits(chain, index)
  reducer = Z2Reducer()
  for j, simplex in enumerate(columns):
    reducer.add(1 << j, _local_bits(complex_core.faces(simplex), index))
  residual, combination = reducer.reduce(target)
  if residual:
    return None
  return complex_core.Chain(
      (columns[j] for j in complex_core.iter_bits(combination)), p + 1)


def is_null_homologous(chain, complex_):
  """Whether the p-cycle `chain` bounds in `complex_`, with a witness.

  Returns:
    `(True, A)` with a (p+1)-chain A of `complex_` whose boundary is `chain`,
    or `(False, None)`.
  """
  witness = solve_boundary(chain, complex_)
  return witness is not None, witness


def bounds(chain, complex_):
  """`is_null_homologous` without the witness."""
  return is_null_homologous(chain, complex_)[0]


def are_homologous(first, second, complex_):
  """Whether two p-cycles of `complex_` differ by a boundary."""
  _check_cycle(first, complex_)
  _check_cycle(second, complex_)
  return bounds(first + second, complex_)
