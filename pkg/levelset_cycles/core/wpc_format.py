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
"""Reads and writes the line-oriented `.wpc` complex format.

A file lists the complex dimension, the vertex values and the simplices:

    # comment
    dim 2
    vertex 0 0.5
    vertex 1 1.25
    simplex 0 1 2
    simplex 0 1 w=3.5

Faces of listed simplices are implied. A `w=` weight is only legal on
p-simplices when the homology dimension p is known.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import collections
import math

from absl import logging

from levelset_cycles.core import complex_core
from levelset_cycles.core import configs
from levelset_cycles.core import errors
from levelset_cycles.core import file_util
from levelset_cycles.core import levelset

WEIGHT_PREFIX = 'w='

WpcDocument = collections.namedtuple('WpcDocument',
                                     ['complex', 'function', 'dim'])


def _parse_int(token, line_number):
  try:
    return int(token)
  except ValueError:
    raise errors.WpcParseError('expected an integer, got %r' % token,
                               line_number)


def _parse_float(token, line_number, what):
  try:
    value = float(token)
  except ValueError:
    raise errors.WpcParseError('expected a decimal %s, got %r' % (what, token),
                               line_number)
  if math.isnan(value) or math.isinf(value):
    raise errors.WpcParseError('%s must be finite, got %r' % (what, token),
                               line_number)
  return value


def parse_wpc(text, p=None):
  """Parses `.wpc` text.

  Args:
    text: File content.
    p: Optional homology dimension; weights are then only accepted on
      p-simplices.

  Returns:
    A `WpcDocument` with the face-closed complex, the PL function and the
    declared dimension.

  Raises:
    WpcParseError: On any malformed line, with its 1-based number.
  """
  dim = None
  values = {}
  simplices = []
  weights = {}
  for line_number, raw in enumerate(text.splitlines(), 1):
    line = raw.split('#', 1)[0].strip()
    if not line:
      continue
    tokens = line.split()
    keyword, args = tokens[0], tokens[1:]
    if keyword == 'dim':
      if dim is not None:
        raise errors.WpcParseError('duplicate dim line', line_number)
      if len(args) != 1:
        raise errors.WpcParseError('dim takes one integer', line_number)
      dim = _parse_int(args[0], line_number)
      if dim < 0:
        raise errors.WpcParseError('dim must be nonnegative', line_number)
    elif keyword == 'vertex':
      if len(args) != 2:
        raise errors.WpcParseError('vertex takes an id and a value',
                                   line_number)
      vertex = _parse_int(args[0], line_number)
      if vertex in values:
        raise errors.WpcParseError('vertex %d defined twice' % vertex,
                                   line_number)
      values[vertex] = _parse_float(args[1], line_number, 'value')
    elif keyword == 'simplex':
      weight = None
      if args and args[-1].startswith(WEIGHT_PREFIX):
        weight = _parse_float(args[-1][len(WEIGHT_PREFIX):], line_number,
                              'weight')
        if weight < 0:
          raise errors.WpcParseError('weight must be nonnegative', line_number)
        args = args[:-1]
      if not args:
        raise errors.WpcParseError('simplex needs at least one vertex',
                                   line_number)
      vertices = [_parse_int(token, line_number) for token in args]
      for vertex in vertices:
        if vertex not in values:
          raise errors.WpcParseError('undefined vertex %d' % vertex,
                                     line_number)
      try:
        simplex = complex_core.make_simplex(vertices)
      except errors.MalformedSimplex as e:
        raise errors.WpcParseError(str(e), line_number)
      if dim is not None and len(simplex) - 1 > dim:
        raise errors.WpcParseError(
            'simplex of dimension %d exceeds dim %d' % (len(simplex) - 1, dim),
            line_number)
      if weight is not None:
        if p is not None and len(simplex) - 1 != p:
          raise errors.WpcParseError(
              'weights are only allowed on %d-simplices' % p, line_number)
        weights[simplex] = weight
      simplices.append(simplex)
    else:
      raise errors.WpcParseError('unknown keyword %r' % keyword, line_number)
  if dim is None:
    raise errors.WpcParseError('missing dim line', 1)
  simplices.extend((v,) for v in values)
  complex_ = complex_core.build_complex(simplices, weights)
  logging.info('Parsed %r with %d vertices.', complex_, len(values))
  return WpcDocument(complex_, levelset.PLFunction(values), dim)


def serialize_wpc(complex_, function, dim=None):
  """Writes a complex and a PL function in canonical `.wpc` form.

  Maximal simplices are listed, plus every other simplex with a
  non-default weight. Vertex and simplex lines are sorted.
  """
  if dim is None:
    dim = max(complex_.dimension, 0)
  lines = ['dim %d' % dim]
  for vertex in sorted(function):
    lines.append('vertex %d %r' % (vertex, function[vertex]))
  weights = complex_.weights
  listed = [
      s for s in complex_.simplices()
      if len(s) > 1 and (not complex_.cofaces(s) or
                         weights.get(s, configs.DEFAULT_WEIGHT) !=
                         configs.DEFAULT_WEIGHT)
  ]
  for simplex in sorted(listed, key=complex_core.simplex_key):
    line = 'simplex ' + ' '.join(str(v) for v in simplex)
    weight = weights.get(simplex, configs.DEFAULT_WEIGHT)
    if weight != configs.DEFAULT_WEIGHT:
      line += ' %s%r' % (WEIGHT_PREFIX, weight)
    lines.append(line)
  return '\n'.join(lines) + '\n'


def load_wpc(path, p=None):
  """Reads and parses a `.wpc` file."""
  return parse_wpc(file_util.read_text_file(path), p)


def write_wpc(path, complex_, function, dim=None):
  """Serializes a complex and a PL function to `path`."""
  file_util.write_text_file(path, serialize_wpc(complex_, function, dim))
