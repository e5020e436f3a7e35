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
"""Setup for levelset cycles.

To build package:
  python setup.py sdist bdist_wheel

To install directly:
  pip install -e .
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import os
import pathlib

from setuptools import find_packages
from setuptools import setup

project_name = 'levelset-cycles'
version = '0.1.0'

# Path to the repository root.
BASE_DIR = pathlib.Path(os.path.abspath(__file__)).parent
LEVELSET_CYCLES_CONSOLE = 'levelset_cycles=levelset_cycles.cli.cli:main'

DESCRIPTION = ('Levelset zigzag barcodes and minimum-weight levelset '
               'persistent cycles via minimum cuts.')
with BASE_DIR.joinpath('README.md').open() as readme_file:
  LONG_DESCRIPTION = readme_file.read()


def _read_required_packages(fpath):
  with fpath.open() as f:
    required_pkgs = [l.strip() for l in f.read().splitlines()]
    required_pkgs = list(
        filter(lambda line: line and not line.startswith('#'), required_pkgs))
  return required_pkgs


def get_required_packages():
  """Gets packages inside requirements.txt."""
  return _read_required_packages(
      BASE_DIR.joinpath('levelset_cycles', 'requirements.txt'))


setup(
    name=project_name,
    version=version,
    description=DESCRIPTION,
    long_description=LONG_DESCRIPTION,
    long_description_content_type='text/markdown',
    license='Apache 2.0',
    packages=find_packages(include=['levelset_cycles', 'levelset_cycles.*']),
    package_data={'levelset_cycles': ['requirements.txt']},
    scripts=[],
    install_requires=get_required_packages(),
    entry_points={
        'console_scripts': [LEVELSET_CYCLES_CONSOLE,],
    },
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: Apache Software License',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    keywords=['topology', 'persistent homology', 'zigzag', 'minimum cut'],
)
