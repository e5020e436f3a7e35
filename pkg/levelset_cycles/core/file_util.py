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
"""File related util for levelset cycles."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import io
import json


def read_text_file(path):
  """Reads a UTF-8 text file."""
  with io.open(path, 'r', encoding='utf-8') as reader:
    return reader.read()


def write_text_file(path, text):
  """Writes `text` into a UTF-8 file."""
  with io.open(path, 'w', encoding='utf-8') as writer:
    writer.write(text)


def load_json_file(json_file):
  """Loads json data from file."""
  with io.open(json_file, 'r', encoding='utf-8') as reader:
    return json.load(reader)


def write_json_file(json_file, data):
  """Writes json data into file."""
  with io.open(json_file, 'w', encoding='utf-8') as f:
    json.dump(data, f, indent=2, sort_keys=True)
