'''
selftest.py

The acceptance suite run by `tanakalab selftest`: every check recomputes its
numbers from scratch in exact arithmetic and reports pass or fail
'''

import json
import time
from fractions import Fraction
import exactla as la
import liecore
import flags
import dist
import abnormal
import labutils as utils

log = utils.log

FLAT_CASES = [(2, 0), (2, 1), (2, 2), (3, 0), (3, 1)]


def _so43():
  dims = flags.symmetry_algebra_dims(2, 0)
  expected = {-2: 1, -1: 6, 0: 7, 1: 6, 2: 1}
  return dims['total'] == 21 and dims['per_degree'] == expected, \
      {'total': dims['total'], 'per_degree': {str(d): n for d, n in dims['per_degree'].items()}}


def _rectangular():
  details = {}
  ok = True
  for k in (3, 4):
    model = flags.build_model(k, 0)
    first = liecore.modified_prolongation(flags.build_symbol_rect(k), model.sigma).dim
    total = flags.symmetry_algebra_dims(k, 0)['total']
    details[str(k)] = {'first_modified_prolongation': first, 'total': total}
    ok &= first == 0 and total == 4 * k + 6
  return ok, details


def _nonrect_symbols():
  details = {}
  ok = True
  for k, l in ((2, 1), (2, 2), (3, 1)):
    symbol = flags.build_symbol_nonrect(k, l)
    stab = flags.flat_curve_symmetries(k, l)
    details['%d,%d' % (k, l)] = {'dim': symbol.dim, 'stabilizer_dim': stab.dim, 'equal': symbol == stab}
    ok &= symbol.dim == 5 + flags.p_dimension(l) and symbol == stab
  return ok, details


def _poisson_cross_check():
  details = {}
  ok = True
  for k, l in ((2, 1), (2, 2)):
    tanaka = flags.symmetry_algebra_dims(k, l)['total']
    model = flags.build_poisson_G(k, l)['total']
    details['%d,%d' % (k, l)] = {'tanaka': tanaka, 'poisson': model}
    ok &= tanaka == model
  return ok, details


def _modified_vs_tanaka():
  details = {}
  ok = True
  for (k, l), depth in (((2, 0), 3), ((2, 1), 4)):
    model = flags.build_model(k, l)
    res = liecore.prolongations_agree(flags.build_symbol(k, l), model.sigma, depth)
    details['%d,%d' % (k, l)] = [d['tanaka'] for d in res['degrees']]
    ok &= res['agree']
  # dim V = 2: the modified condition is empty while the Tanaka equation is not
  omega = liecore.standard_form(2)
  W = liecore.LinMapSpace(2, 2, [la.MatQ.fromrows([[1, 0], [0, 0]]), la.MatQ.fromrows([[0, 0], [0, 1]])])
  modified = liecore.modified_prolongation(W, omega).dim
  tan = liecore.tanaka_prolongation(liecore.heisenberg_extend(omega), W, 1)['dims'][1]
  try:
    liecore.prolongations_agree(W, omega, 1)
    refused = False
  except utils.InvalidParamsError:
    refused = True
  details['dimV2'] = {'modified': modified, 'tanaka': tan, 'refused': refused}
  ok &= modified == 4 and tan < modified and refused
  return ok, details


def _finite_type():
  details = {}
  ok = True
  for k, l in FLAT_CASES:
    dims = flags.symmetry_algebra_dims(k, l)
    details['%d,%d' % (k, l)] = dims['first_zero']
    ok &= dims['first_zero'] is not None and dims['first_zero'] <= dims['r']
  return ok, details


def _bsuite():
  reports = utils.fanout(lambda kl: flags.bmatrix_suite(*kl), [(k, l) for k in range(2, 6) for l in range(5)])
  failed = ['%d,%d' % (r['k'], r['l']) for r in reports if not r['ok']]
  return not failed, {'cases': len(reports), 'failed': failed}


def _diagrams(seed):
  details = {}
  ok = True
  for k, l in FLAT_CASES:
    d = dist.realize_flat(k, l)
    outcome, report = abnormal.classify(d, [0] * d.ambient_dim, seed=seed)
    young = report.get('young')
    details['%d,%d' % (k, l)] = {'young': young, 'maximal_class': report.get('maximal_class')}
    ok &= outcome == utils.Outcome.CLASSIFIED and young == {'k': k, 'l': l} and report['maximal_class']
  for (k, l), expected in (((2, 0), [3, 6]), ((2, 1), [3, 6, 7])):
    d = dist.realize_flat(k, l)
    growth = dist.growth_vector(d, [0] * d.ambient_dim)
    details['growth %d,%d' % (k, l)] = growth
    ok &= growth == expected
  return ok, details


def _structural(seed):
  details = {}
  ok = True
  for k, l in ((2, 0), (2, 1)):
    d = dist.realize_flat(k, l)
    # raises on tangency or duality failures
    abnormal.characteristic_field(d)
    lam = abnormal.sample_covectors(d, [0] * d.ambient_dim, 1, seed)[0]
    base = abnormal.flag_at(d, lam)
    scaled = [abnormal.flag_at(d, lam.scaled(Fraction(c))) for c in (2, Fraction(-1, 3))]
    homogeneous = all(s.dims_hat == base.dims_hat for s in scaled)
    bounded = all(0 <= j <= 2 for j in base.jumps)
    details['%d,%d' % (k, l)] = {'dims_J': {str(i): n for i, n in sorted(base.dims_J.items())},
                                 'homogeneous': homogeneous, 'jumps_bounded': bounded}
    ok &= homogeneous and bounded
  for k, l in ((2, 1), (2, 2)):
    status = flags.rank_filter(flags.quadric_piece(k, l), 2)['status']
    details['rank<=2 %d,%d' % (k, l)] = status
    ok &= status == 'empty'
  return ok, details


def _determinism(seed, first):
  '''Recomputes the seeded checks sequentially and on a thread pool and compares their serialized
  details with the ones already produced by this run'''
  reference = json.dumps(first)
  saved = utils.threads
  runs = {}
  try:
    for n in (1, max(2, saved)):
      utils.threads = n
      runs[n] = json.dumps([_diagrams(seed)[1], _structural(seed)[1]])
  finally:
    utils.threads = saved
  return all(r == reference for r in runs.values()), {'threads': sorted(runs), 'bytes': len(reference)}


def criteria(seed, table):
  '''The acceptance checks as (name, callable) pairs; the last one reads the seeded details
  already collected in table'''
  return [
    ('dimension of the (2,0) symmetry algebra is 21', _so43),
    ('rectangular symbols have trivial first modified prolongation', _rectangular),
    ('non-rectangular symbols equal the flat-curve stabilizer', _nonrect_symbols),
    ('Tanaka and Poisson models agree in dimension', _poisson_cross_check),
    ('modified and Tanaka prolongations coincide', _modified_vs_tanaka),
    ('symbols are of finite type', _finite_type),
    ('B-matrix determinants and recursions', _bsuite),
    ('Young diagrams of the flat models', lambda: _diagrams(seed)),
    ('structural invariants of the flag', lambda: _structural(seed)),
    ('deterministic seeded reports', lambda: _determinism(seed, [table[7]['details'], table[8]['details']])),
  ]


def run_suite(seed=0):
  '''Runs every acceptance check, never raising: failures are reported in the table'''
  table = []
  for n, (name, check) in enumerate(criteria(seed, table), 1):
    tstart = time.time()
    try:
      passed, details = check()
    except utils.LabError as e:
      passed, details = False, e.asdict()
    log.info('msg="Acceptance check done" id="%d" passed="%s" elapsedTimems="%.1f"' %
             (n, passed, (time.time() - tstart) * 1000))
    table.append({'id': n, 'name': name, 'passed': bool(passed), 'details': details})
  return table


def init(_config, inlog):
  '''Initializes the module logger'''
  global log     # pylint: disable=global-statement
  log = inlog
