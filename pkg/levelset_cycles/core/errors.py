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
"""Exceptions raised by the levelset cycles library.

Every error derives from `LevelsetCyclesError`, itself a `ValueError`, so
callers that only guard against bad values keep working.
"""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function


class LevelsetCyclesError(ValueError):
  """Base class of all errors of this package."""


class NegativeWeight(LevelsetCyclesError):
  """A simplex weight is negative or not finite."""


class MalformedSimplex(LevelsetCyclesError):
  """A simplex lists a vertex twice or does not belong to the complex."""


class NotACycle(LevelsetCyclesError):
  """A chain queried for its homology class has a nonempty boundary."""


class NotContained(LevelsetCyclesError):
  """A chain is not contained in the complex it is queried against."""


class NonEmptyStart(LevelsetCyclesError):
  """The zigzag filtration starts from a complex with nontrivial homology."""


class BadTerminals(LevelsetCyclesError):
  """Sources or sinks of a cut problem are empty or overlap."""


class NotClosedPseudomanifold(LevelsetCyclesError):
  """Some p-simplex does not have exactly two cofaces."""


class OverlappingBoundaries(LevelsetCyclesError):
  """A p-simplex is claimed by more than two component boundaries."""


class TooLarge(LevelsetCyclesError):
  """An exhaustive search exceeds its configured bound."""


class NoWitness(LevelsetCyclesError):
  """A telescoping witness chain does not exist."""


class _SimplexReport(LevelsetCyclesError):
  """Error carrying the simplices responsible for it."""

  def __init__(self, message, simplices=()):
    super(_SimplexReport, self).__init__(message)
    self.simplices = tuple(simplices)


class IncompatibleComplex(_SimplexReport):
  """Some simplex spans more than one p-th critical value."""


class AssumptionViolated(_SimplexReport):
  """A structural property the cycle solvers rely on does not hold.

  Attributes:
    simplices: The offending simplices, reported by the command line.
  """


class WpcParseError(LevelsetCyclesError):
  """A `.wpc` file could not be parsed.

  Attributes:
    line_number: 1-based line of the offending input.
  """

  def __init__(self, message, line_number):
    super(WpcParseError, self).__init__('line %d: %s' % (line_number, message))
    self.line_number = line_number
