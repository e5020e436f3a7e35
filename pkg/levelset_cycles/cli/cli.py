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
"""CLI tool for levelset cycles."""
from __future__ import absolute_import
from __future__ import division
from __future__ import print_function

import functools
import json
import math
import sys

from absl import logging
import fire

from levelset_cycles.core import complex_core
from levelset_cycles.core import configs
from levelset_cycles.core import dualgraph
from levelset_cycles.core import errors
from levelset_cycles.core import file_util
from levelset_cycles.core import fixtures
from levelset_cycles.core import levelset
from levelset_cycles.core import optcycles
from levelset_cycles.core import oracle as oracle_lib
from levelset_cycles.core import wpc_format
from levelset_cycles.core import zigzag

EXIT_VALIDATION = 2
EXIT_ASSUMPTION = 3

_FIXTURES = sorted(fixtures.FIXTURES)
_TYPES = [t.value for t in zigzag.IntervalType]


class FormatDoc(object):
  """Decorator to format function doc with given parameters."""

  def __init__(self, *format_args, **format_kwargs):
    self.args = format_args
    self.kwargs = format_kwargs

  def __call__(self, fn):
    fn.__doc__ = fn.__doc__.format(*self.args, **self.kwargs)
    return fn


def _exit_on_error(fn):
  """Turns library errors into messages on stderr and exit codes."""

  @functools.wraps(fn)
  def wrapper(*args, **kwargs):
    try:
      return fn(*args, **kwargs)
    except (errors.AssumptionViolated, errors.IncompatibleComplex) as e:
      print('error: %s' % e, file=sys.stderr)
      for simplex in e.simplices:
        print('  %s' % _format_simplex(simplex), file=sys.stderr)
      sys.exit(EXIT_ASSUMPTION)
    except (ValueError, IOError) as e:
      print('error: %s' % e, file=sys.stderr)
      sys.exit(EXIT_VALIDATION)

  return wrapper


def _format_simplex(simplex):
  return '-'.join(str(v) for v in simplex)


def _format_chain(chain):
  return ' '.join(
      _format_simplex(s) for s in sorted(chain, key=complex_core.simplex_key))


def _sorted_simplices(chain):
  return [list(s) for s in sorted(chain, key=complex_core.simplex_key)]


def interval_to_json(interval):
  return {
      'type': interval.type.value,
      'b': interval.b,
      'd': interval.d,
      'birth_value': interval.birth_value,
      'death_value': interval.death_value,
      'beta': interval.beta,
      'delta': interval.delta,
  }


def sequence_to_json(ctx, sequence):
  """The JSON object of one interval and its cycle sequence."""
  return {
      'intervals': [interval_to_json(sequence.interval)],
      'cycles': [{
          'slot': slot,
          'simplices': _sorted_simplices(chain),
          'weight': chain.weight(ctx.complex),
      } for slot, chain in sequence.cycles],
      'total_weight': sequence.total_weight,
  }


def _dump(data):
  print(json.dumps(data, indent=2, sort_keys=True))


def _check_format(format_):
  if format_ not in ('text', 'json'):
    raise errors.LevelsetCyclesError(
        'Unknown format %r; use text or json.' % (format_,))


def _load_context(path, dim):
  document = wpc_format.load_wpc(str(path), dim)
  return levelset.LevelsetContext(document.complex, document.function, dim)


def select_intervals(barcode, interval=None, type_=None, birth=None,
                     death=None):
  """Intervals picked by barcode index, or by type and endpoint values.

  Args:
    barcode: The sorted levelset intervals.
    interval: Optional index into `barcode`.
    type_: Optional type name, one of oo, co, oc, cc.
    birth: Optional birth value.
    death: Optional death value.

  Returns:
    List of `(index, LevelsetInterval)`.

  Raises:
    LevelsetCyclesError: If the selection is malformed or empty.
  """
  indexed = list(enumerate(barcode))
  if interval is not None:
    if not 0 <= interval < len(barcode):
      raise errors.LevelsetCyclesError(
          'Interval %d is out of range; the barcode has %d intervals.' %
          (interval, len(barcode)))
    return [indexed[interval]]
  if type_ is not None:
    if type_ not in _TYPES:
      raise errors.LevelsetCyclesError('Unknown interval type %r; use one of '
                                       '%s.' % (type_, ', '.join(_TYPES)))
    indexed = [(i, x) for i, x in indexed if x.type.value == type_]
  if birth is not None:
    indexed = [(i, x) for i, x in indexed
               if math.isclose(x.birth_value, float(birth), abs_tol=1e-9)]
  if death is not None:
    indexed = [(i, x) for i, x in indexed
               if math.isclose(x.death_value, float(death), abs_tol=1e-9)]
  if not indexed:
    raise errors.LevelsetCyclesError('No interval matches the selection.')
  return indexed


class LevelsetCyclesCLI(object):
  """Levelset Cycles Command Line Interface.

  Input files use the `.wpc` format: a `dim D` line, `vertex <id> <value>`
  lines and `simplex <v0> <v1> ... [w=<weight>]` lines.
  """

  @_exit_on_error
  def validate(self, path, dim=1):
    """Checks that the complex suits the cycle solvers.

    Args:
      path: str, input `.wpc` file. (required)
      dim: int, homology dimension p, default: 1.
    """
    ctx = _load_context(path, dim)
    failed = False
    print('complex: %d vertices, %d simplices, dimension %d' %
          (len(ctx.complex.vertices), len(ctx.complex),
           ctx.complex.dimension))
    if ctx.complex.dimension > dim + 1:
      print('dimension: simplices above %d' % (dim + 1))
      failed = True
    branching = complex_core.check_weak_pseudomanifold(ctx.complex, dim)
    if branching:
      failed = True
      print('weak pseudomanifold: %d %d-simplices with more than two cofaces' %
            (len(branching), dim))
      for simplex in branching:
        print('  %s' % _format_simplex(simplex))
    else:
      print('weak pseudomanifold: ok')
    violations = ctx.compatibility_violations()
    if violations:
      failed = True
      print('compatibility: %d simplices span more than one critical value' %
            len(violations))
      for simplex in violations:
        print('  %s' % _format_simplex(simplex))
    else:
      print('compatibility: ok')
    values = [ctx.function[v] for v in ctx.function]
    ties = len(values) - len(set(values))
    if ties:
      print('genericity: %d tied values, broken by vertex id' % ties)
    else:
      print('genericity: ok')
    print('critical values: %s' %
          ' '.join('%g' % v for v in ctx.critical.p_critical_values))
    if failed:
      sys.exit(EXIT_VALIDATION)

  @_exit_on_error
  def barcode(self, path, dim=1, format='text'):  # pylint: disable=redefined-builtin
    """Prints the levelset barcode.

    Args:
      path: str, input `.wpc` file. (required)
      dim: int, homology dimension p, default: 1.
      format: str, output format. Valid: text, json, default: text.
    """
    _check_format(format)
    ctx = _load_context(path, dim)
    violations = ctx.compatibility_violations()
    if violations:
      logging.warning('%d simplices span more than one critical value.',
                      len(violations))
    intervals = ctx.barcode(strict=False)
    if format == 'json':
      _dump({'intervals': [interval_to_json(x) for x in intervals]})
      return
    for index, interval in enumerate(intervals):
      print('%d %s' % (index, interval.describe()))

  @FormatDoc(TYPES=', '.join(_TYPES))
  @_exit_on_error
  def cycles(self,
             path,
             dim=1,
             interval=None,
             type=None,  # pylint: disable=redefined-builtin
             birth=None,
             death=None,
             oracle=False,
             witness=False,
             jobs=configs.DEFAULT_JOBS,
             format='text'):  # pylint: disable=redefined-builtin
    """Computes optimal persistent cycles.

    Args:
      path: str, input `.wpc` file. (required)
      dim: int, homology dimension p, default: 1.
      interval: int, barcode index of the interval, default: all intervals.
      type: str, select intervals by type. Valid: {TYPES}.
      birth: float, select intervals by birth value.
      death: float, select intervals by death value.
      oracle: bool, cross-check against exhaustive search when small enough.
      witness: bool, also print the chains telescoping the cycles.
      jobs: int, number of intervals solved in parallel, default: 1.
      format: str, output format. Valid: text, json, default: text.
    """
    _check_format(format)
    ctx = _load_context(path, dim)
    selected = select_intervals(ctx.barcode(), interval, type, birth, death)
    config = configs.SolverConfig.for_verification(jobs=int(jobs))
    sequences = optcycles.solve_intervals(ctx, [x for _, x in selected],
                                          config)
    results = []
    mismatch = False
    for (index, chosen), sequence in zip(selected, sequences):
      result = sequence_to_json(ctx, sequence)
      lines = ['interval %d %s' % (index, chosen.describe())]
      for slot, chain in sequence.cycles:
        lines.append('slot %d weight %g: %s' %
                     (slot, chain.weight(ctx.complex), _format_chain(chain)))
      lines.append('total_weight=%g' % sequence.total_weight)
      if oracle:
        try:
          expected = oracle_lib.brute_optimal_sequence(ctx, chosen, config)
        except errors.TooLarge as e:
          result['oracle'] = 'skipped'
          lines.append('oracle=skipped (%s)' % e)
        else:
          if math.isclose(expected.total_weight, sequence.total_weight,
                          rel_tol=1e-9, abs_tol=1e-9):
            result['oracle'] = 'equal'
            lines.append('optimal=oracle')
          else:
            mismatch = True
            result['oracle'] = expected.total_weight
            lines.append('optimal!=oracle (oracle total %g)' %
                         expected.total_weight)
      if witness:
        chains = oracle_lib.reconstruct_witness(ctx, chosen, sequence).chains
        result['witness'] = [{
            'index': k,
            'simplices': _sorted_simplices(chain)
        } for k, chain in chains]
        for k, chain in chains:
          lines.append('witness %d: %s' % (k, _format_chain(chain)))
      results.append(result)
      if format == 'text':
        print('\n'.join(lines))
    if format == 'json':
      _dump(results[0] if len(results) == 1 else results)
    if mismatch:
      print('error: the solver and the oracle disagree', file=sys.stderr)
      sys.exit(EXIT_ASSUMPTION)

  @FormatDoc(FIXTURES=', '.join(_FIXTURES))
  @_exit_on_error
  def export(self,
             output,
             fixture=None,
             path=None,
             dim=None,
             dual=None,
             interval=0):
    """Writes a fixture or a canonical copy of a `.wpc` file.

    Args:
      output: str, output `.wpc` file. (required)
      fixture: str, fixture to export. Valid: {FIXTURES}.
      path: str, `.wpc` file to re-serialize instead of a fixture.
      dim: int, homology dimension p; with --dual it defaults to 1.
      dual: str, optional DOT file for the dual graphs of an interval.
      interval: int, barcode index of the interval for --dual, default: 0.
    """
    if (fixture is None) == (path is None):
      raise errors.LevelsetCyclesError('Pass exactly one of --fixture and '
                                       '--path.')
    if fixture is not None:
      try:
        complex_, function = fixtures.make_fixture(str(fixture))
      except ValueError as e:
        raise errors.LevelsetCyclesError(str(e))
      file_dim = None
    else:
      document = wpc_format.load_wpc(str(path), dim)
      complex_, function, file_dim = document
    wpc_format.write_wpc(str(output), complex_, function, file_dim)
    print('wrote %s' % output)
    if dual is None:
      return
    ctx = levelset.LevelsetContext(complex_, function, dim or 1)
    (_, chosen), = select_intervals(ctx.barcode(), interval)
    reduction = optcycles.build_reduction(ctx, chosen)
    file_util.write_text_file(
        str(dual), ''.join(dualgraph.to_dot(g) for g in reduction.graphs))
    print('wrote %s (%d graphs for %s)' %
          (dual, len(reduction.graphs), chosen.describe()))


def main():
  fire.Fire(LevelsetCyclesCLI)


if __name__ == '__main__':
  main()
