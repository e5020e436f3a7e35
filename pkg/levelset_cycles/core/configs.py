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
"""Configurations."""

from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

DEFAULT_WEIGHT = 1.0
DEFAULT_ORACLE_CUT_BOUND = 20
DEFAULT_ORACLE_SEQUENCE_BOUND = 16
DEFAULT_JOBS = 1


class SolverConfig(object):
  """Configuration shared by the cycle solvers, the oracle and the CLI."""

  def __init__(self,
               verify_output=False,
               oracle_cut_bound=DEFAULT_ORACLE_CUT_BOUND,
               oracle_sequence_bound=DEFAULT_ORACLE_SEQUENCE_BOUND,
               jobs=DEFAULT_JOBS):
    """Constructs SolverConfig.

    Args:
      verify_output: Whether every solved sequence is checked against the
        persistent cycle definition before it is returned. A failed check
        raises `AssumptionViolated`.
      oracle_cut_bound: Largest number of free vertices the exhaustive cut
        enumeration accepts.
      oracle_sequence_bound: Largest exponent the exhaustive sequence search
        accepts: one connected piece of a slot complex may have at most
        2**bound cycles and one slot at most 2**bound homology classes.
      jobs: Number of intervals solved concurrently by the CLI.
    """
    if oracle_cut_bound < 0 or oracle_sequence_bound < 0:
      raise ValueError('Oracle bounds must be nonnegative.')
    if jobs < 1:
      raise ValueError('jobs must be at least 1, got %d.' % jobs)
    self.verify_output = verify_output
    self.oracle_cut_bound = oracle_cut_bound
    self.oracle_sequence_bound = oracle_sequence_bound
    self.jobs = jobs

  @classmethod
  def default(cls):
    return cls()

  @classmethod
  def for_verification(cls, jobs=DEFAULT_JOBS):
    """Creates a config that double checks every solved sequence."""
    return cls(verify_output=True, jobs=jobs)

  @classmethod
  def for_oracle(cls,
                 cut_bound=DEFAULT_ORACLE_CUT_BOUND,
                 sequence_bound=DEFAULT_ORACLE_SEQUENCE_BOUND):
    """Creates a config with custom exhaustive search bounds."""
    return cls(
        verify_output=True,
        oracle_cut_bound=cut_bound,
        oracle_sequence_bound=sequence_bound)

  def __repr__(self):
    return ('SolverConfig(verify_output=%r, oracle_cut_bound=%d, '
            'oracle_sequence_bound=%d, jobs=%d)' %
            (self.verify_output, self.oracle_cut_bound,
             self.oracle_sequence_bound, self.jobs))
