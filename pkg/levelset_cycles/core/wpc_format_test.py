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

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import os

from absl.testing import absltest
from absl.testing import parameterized

from levelset_cycles.core import errors
from levelset_cycles.core import file_util
from levelset_cycles.core import test_util
from levelset_cycles.core import wpc_format

_TRIANGLE = """\
# a weighted triangle
dim 2
vertex 0 0.5
vertex 1 1.25
vertex 2 -2
simplex 2 0 1
simplex 0 1 w=3.5
"""


class ParseTest(parameterized.TestCase):

  def test_triangle(self):
    document = wpc_format.parse_wpc(_TRIANGLE)
    self.assertEqual(document.dim, 2)
    self.assertLen(document.complex, 7)
    self.assertIn((0, 1, 2), document.complex)
    self.assertEqual(document.complex.weight((0, 1)), 3.5)
    self.assertEqual(document.complex.weight((1, 2)), 1.0)
    self.assertEqual(document.function[2], -2.0)

  def test_isolated_vertex(self):
    document = wpc_format.parse_wpc('dim 0\nvertex 4 1.0\n')
    self.assertEqual(document.complex.vertices, [4])

  def test_weight_on_p_simplex(self):
    document = wpc_format.parse_wpc(_TRIANGLE, p=1)
    self.assertEqual(document.complex.weight((0, 1)), 3.5)

  @parameterized.named_parameters(
      ('weight_on_wrong_dimension', _TRIANGLE, 2, 7,
       'only allowed on 2-simplices'),
      ('duplicate_dim', 'dim 1\ndim 1\n', None, 2, 'duplicate dim'),
      ('dim_arguments', 'dim\n', None, 1, 'dim takes one integer'),
      ('negative_dim', 'dim -1\n', None, 1, 'nonnegative'),
      ('bad_integer', 'dim x\n', None, 1, 'expected an integer'),
      ('vertex_arguments', 'dim 1\nvertex 0\n', None, 2, 'id and a value'),
      ('duplicate_vertex', 'dim 1\nvertex 0 1\nvertex 0 2\n', None, 3,
       'defined twice'),
      ('bad_value', 'dim 1\nvertex 0 high\n', None, 2, 'decimal value'),
      ('infinite_value', 'dim 1\nvertex 0 inf\n', None, 2, 'finite'),
      ('undefined_vertex', 'dim 1\nvertex 0 1\nsimplex 0 1\n', None, 3,
       'undefined vertex 1'),
      ('repeated_vertex', 'dim 1\nvertex 0 1\nsimplex 0 0\n', None, 3,
       'repeats'),
      ('too_high', 'dim 1\nvertex 0 1\nvertex 1 1\nvertex 2 1\n'
       'simplex 0 1 2\n', None, 5, 'exceeds dim 1'),
      ('negative_weight', 'dim 1\nvertex 0 1\nvertex 1 1\n'
       'simplex 0 1 w=-1\n', None, 4, 'nonnegative'),
      ('empty_simplex', 'dim 1\nsimplex w=1\n', None, 2, 'at least one'),
      ('unknown_keyword', 'dim 1\n\n# note\nface 0 1\n', None, 4,
       'unknown keyword'),
      ('missing_dim', 'vertex 0 1\n', None, 1, 'missing dim'),
  )
  def test_errors(self, text, p, line_number, message):
    with self.assertRaisesRegex(errors.WpcParseError, message) as raised:
      wpc_format.parse_wpc(text, p)
    self.assertEqual(raised.exception.line_number, line_number)
    self.assertStartsWith(str(raised.exception), 'line %d: ' % line_number)


class SerializeTest(parameterized.TestCase):

  def test_canonical_form(self):
    document = wpc_format.parse_wpc(_TRIANGLE)
    self.assertEqual(
        wpc_format.serialize_wpc(document.complex, document.function),
        'dim 2\n'
        'vertex 0 0.5\n'
        'vertex 1 1.25\n'
        'vertex 2 -2.0\n'
        'simplex 0 1 w=3.5\n'
        'simplex 0 1 2\n')

  @parameterized.parameters('monkey_saddle', 'collar', 'three_sphere')
  def test_fixture_files(self, name):
    path = test_util.write_wpc_fixture(name, self.create_tempdir().full_path)
    complex_, function = test_util.make_fixture(name)
    document = wpc_format.load_wpc(path)
    self.assertEqual(document.dim, complex_.dimension)
    self.assertEqual(document.complex.simplices(), complex_.simplices())
    self.assertEqual(document.complex.weights, complex_.weights)
    self.assertEqual([document.function[v] for v in document.function],
                     [function[v] for v in function])
    self.assertEqual(
        file_util.read_text_file(path),
        wpc_format.serialize_wpc(document.complex, document.function))

  def test_json_helpers(self):
    path = os.path.join(self.create_tempdir().full_path, 'out.json')
    file_util.write_json_file(path, {'b': [1, 2], 'a': 'x'})
    self.assertEqual(file_util.load_json_file(path), {'a': 'x', 'b': [1, 2]})
    self.assertTrue(file_util.read_text_file(path).startswith('{\n  "a"'))


if __name__ == '__main__':
  absltest.main()
