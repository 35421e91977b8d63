'''
test_abnormal.py

Unit testing of the symplectification: quasi-impulses, the characteristic
field, flags at covectors and the classification by Young diagrams.
'''

import unittest
import logging
import configparser
import sys
import os
from fractions import Fraction
sys.path.append('../src')  # for tests out of the git repo
sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir, 'src'))
import exactla as la     # pylint: disable=wrong-import-position
import poly              # pylint: disable=wrong-import-position
import dist              # pylint: disable=wrong-import-position
import abnormal          # pylint: disable=wrong-import-position
import labutils as utils  # pylint: disable=wrong-import-position


def field(n, comps):
  '''A vector field on R^n from a dict index -> polynomial or constant'''
  return dist.PolyVectorField([c if isinstance(c, poly.MPoly) else poly.MPoly.const(n, 0, c)
                               for c in (comps.get(i, 0) for i in range(n))])


class TestAbnormal(unittest.TestCase):
  '''Tests for flags of the lifted distribution and Young types'''

  def __init__(self, *args, **kwargs):
    '''One-off initialization of the test environment: create mock logging and read the defaults'''
    super(TestAbnormal, self).__init__(*args, **kwargs)
    log = utils.JsonLogger(logging.getLogger('tanakalab.test'))
    log.setLevel(logging.DEBUG)
    self.config = configparser.ConfigParser()
    with open(os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir, 'tanakalab.defaults.conf')) as fd:
      self.config.read_file(fd)
    for module in (utils, poly, dist, abnormal):
      module.init(self.config, log)

  def test_young_type(self):
    '''Young types read from the jumps of the flag'''
    self.assertEqual(abnormal.YoungType.fromjumps([2], 6), abnormal.YoungType(2, 0))
    self.assertEqual(abnormal.YoungType.fromjumps([2, 1], 7), abnormal.YoungType(2, 1))
    self.assertEqual(abnormal.YoungType.fromjumps([2, 2, 2, 1, 1], 12), abnormal.YoungType(4, 2))
    self.assertIsNone(abnormal.YoungType.fromjumps([2, 2, 1, 1], 12))
    self.assertEqual(abnormal.YoungType.fromjumps([2, 2, 1, 1], 10), abnormal.YoungType(3, 2))
    self.assertIsNone(abnormal.YoungType.fromjumps([1, 1], 6))
    self.assertIsNone(abnormal.YoungType.fromjumps([2, 3], 10))
    self.assertIsNone(abnormal.YoungType.fromjumps([2], 7))
    self.assertEqual(abnormal.YoungType(3, 2).boxes, 6)

  def test_characteristic_field(self):
    '''The characteristic field exists and is tangent to the quasi-impulse levels'''
    d = dist.realize_flat(2, 0)
    u = abnormal.quasi_impulses(d)
    self.assertEqual(sorted(u), ['u1', 'u12', 'u13', 'u2', 'u23', 'u3'])
    H = abnormal.characteristic_field(d, u)
    for name in ('u1', 'u2', 'u3'):
      self.assertFalse(H.apply(u[name]))

  def test_abelian_impulses(self):
    '''For d/dx1, d/dx2, d/dx3 the quasi-impulses are the momenta and the characteristic field vanishes'''
    d = dist.DistributionSpec(3, [field(3, {i: 1}) for i in range(3)])
    u = abnormal.quasi_impulses(d)
    for i in range(3):
      self.assertEqual(u['u%d' % (i + 1)], poly.MPoly.pvar(3, 3, i))
    for name in ('u12', 'u13', 'u23'):
      self.assertFalse(u[name])
    self.assertTrue(abnormal.characteristic_field(d, u).is_zero())

  def test_impulses_linear_in_p(self):
    '''Every quasi-impulse of the (2,0) model is linear in the momenta, and the brackets do not all vanish'''
    u = abnormal.quasi_impulses(dist.realize_flat(2, 0))
    for f in u.values():
      if f:
        self.assertEqual(f.pdegree(), 1)
        self.assertTrue(all(sum(e[6:]) == 1 for e in f.terms))
    self.assertTrue(any(u[name] for name in ('u12', 'u13', 'u23')))

  def test_characteristic_projection(self):
    '''At an admissible covector the characteristic field is nonzero and projects into D(q)'''
    d = dist.realize_flat(2, 0)
    H = abnormal.characteristic_field(d)
    span = la.Subspace(6, d.frame_at([0] * 6))
    for lam in abnormal.sample_covectors(d, [0] * 6, 2, 1):
      value = H.evaluate(lam.coords)
      self.assertTrue(any(value))
      self.assertTrue(span.contains(value[:6]))

  def test_classify_flat(self):
    '''Flat models are classified by their own Young type, in the maximal class'''
    for k, l in ((2, 0), (2, 1), (3, 0)):
      d = dist.realize_flat(k, l)
      outcome, report = abnormal.classify(d, [0] * d.ambient_dim, seed=0)
      self.assertEqual(outcome, utils.Outcome.CLASSIFIED)
      self.assertEqual(report['verdict'], 'classified')
      self.assertEqual(report['young'], {'k': k, 'l': l})
      self.assertTrue(report['maximal_class'])
      self.assertEqual(len(report['samples']), 3)

  def test_flag_shape(self):
    '''The flag of the (2,1) model at a sampled covector: jumps, self-duality, homogeneity'''
    d = dist.realize_flat(2, 1)
    lams = abnormal.sample_covectors(d, [0] * 7, 3, 0)
    regular = [(lam, abnormal.flag_at(d, lam)) for lam in lams]
    regular = [(lam, r) for lam, r in regular if r.regular]
    self.assertTrue(regular)
    for lam, report in regular:
      self.assertEqual(report.jumps, [2, 1])
      self.assertEqual(report.young, abnormal.YoungType(2, 1))
      self.assertEqual(abnormal.flag_at(d, lam.scaled(Fraction(-2, 3))).dims_hat, report.dims_hat)
      dims = sorted(report.dims_J.items())
      self.assertTrue(all(b >= a for (_, a), (_, b) in zip(dims, dims[1:])))

  def test_kernel_directions(self):
    '''The Euler field and the characteristic direction lie in every space of the flag'''
    d = dist.realize_flat(2, 1)
    H = abnormal.characteristic_field(d)
    for lam in abnormal.sample_covectors(d, [0] * 7, 2, 0):
      report = abnormal.flag_at(d, lam)
      euler = [0] * 7 + lam.p
      self.assertEqual(sorted(report.spaces), sorted(report.dims_hat))
      for space in report.spaces.values():
        self.assertTrue(space.contains(euler))
        self.assertTrue(space.contains(H.evaluate(lam.coords)))
      self.assertEqual(report.maximal_class, report.regular and report.young is not None and
                       all(a >= b for a, b in zip(report.jumps, report.jumps[1:])))

  def test_flag_20(self):
    '''The flag of the (2,0) model has dimensions 0, 2, 4, 6'''
    d = dist.realize_flat(2, 0)
    reports = [abnormal.flag_at(d, lam) for lam in abnormal.sample_covectors(d, [0] * 6, 3, 0)]
    regular = [r for r in reports if r.regular]
    self.assertTrue(regular)
    for report in regular:
      self.assertEqual(sorted(report.dims_J.values()), [0, 2, 4, 6])
      self.assertEqual(report.jumps, [2])

  def test_not_admissible(self):
    '''Covectors not annihilating D, or annihilating D^2, are refused'''
    d = dist.realize_flat(2, 0)
    with self.assertRaises(utils.NotAdmissibleError):
      abnormal.flag_at(d, abnormal.CotangentPoint([0] * 6, [1, 0, 0, 0, 0, 0]))
    with self.assertRaises(utils.NotAdmissibleError):
      abnormal.flag_at(d, abnormal.CotangentPoint([0] * 6, [0] * 6))
    with self.assertRaises(utils.InvalidParamsError):
      abnormal.CotangentPoint([0] * 6, [0] * 5)

  def test_reduced_case(self):
    '''Heisenberg times a line: D^2 has dimension 4 and the characteristic sub-distribution is d/dw'''
    x = poly.MPoly.xvar(4, 0, 0)
    d = dist.DistributionSpec(4, [field(4, {0: 1}), field(4, {1: 1, 2: x}), field(4, {3: 1})])
    outcome, report = abnormal.classify(d, [0] * 4)
    self.assertEqual(outcome, utils.Outcome.REDUCED)
    self.assertEqual(report['verdict'], 'reduced-case')
    self.assertEqual((report['dim_D'], report['dim_D2']), (3, 4))
    self.assertEqual(report['characteristic_subdistribution'], {'dim': 1, 'basis': [['0', '0', '0', '1']]})

  def test_degenerate(self):
    '''An integrable distribution is degenerate'''
    d = dist.DistributionSpec(3, [field(3, {i: 1}) for i in range(3)])
    outcome, report = abnormal.classify(d, [0] * 3)
    self.assertEqual(outcome, utils.Outcome.REDUCED)
    self.assertEqual(report['verdict'], 'degenerate')

  def test_rank_check(self):
    '''Only rank-3 distributions are accepted'''
    d = dist.DistributionSpec(3, [field(3, {0: 1}), field(3, {1: 1})])
    with self.assertRaises(utils.InvalidParamsError):
      abnormal.classify(d, [0] * 3)

  def test_sampling_budget(self):
    '''An empty sampling budget is reported as exhausted'''
    d = dist.realize_flat(2, 0)
    try:
      abnormal.maxattempts = 0
      with self.assertRaises(utils.SamplingExhaustedError):
        abnormal.classify(d, [0] * 6)
    finally:
      abnormal.init(self.config, abnormal.log)

  def test_determinism(self):
    '''The same seed gives the same report'''
    d = dist.realize_flat(2, 1)
    first = abnormal.classify(d, [0] * 7, seed=3)[1]
    second = abnormal.classify(d, [0] * 7, seed=3)[1]
    self.assertEqual(first, second)


if __name__ == '__main__':
  unittest.main()
