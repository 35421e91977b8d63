'''
test_flags.py

Unit testing of the symplectic model, the quasisymplectic frame checks, the
symbol algebras and their prolongations, the Poisson model and the binomial
determinant suite.
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
import liecore           # pylint: disable=wrong-import-position
import flags             # pylint: disable=wrong-import-position
import labutils as utils  # pylint: disable=wrong-import-position


class TestFlags(unittest.TestCase):
  '''Tests for the flat curve of flags and the algebras built on it'''

  def __init__(self, *args, **kwargs):
    '''One-off initialization of the test environment: create mock logging and read the defaults'''
    super(TestFlags, self).__init__(*args, **kwargs)
    log = utils.JsonLogger(logging.getLogger('tanakalab.test'))
    log.setLevel(logging.DEBUG)
    config = configparser.ConfigParser()
    with open(os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir, 'tanakalab.defaults.conf')) as fd:
      config.read_file(fd)
    for module in (poly, liecore, flags):
      module.init(config, log)

  def test_model(self):
    '''The (2,0) model: dimension, filtration and shift operator'''
    model = flags.build_model(2, 0)
    self.assertEqual((model.r, model.dim), (3, 6))
    self.assertEqual(model.labels[0], 'e1')
    self.assertEqual(model.labels[3], 'f1')
    self.assertEqual(model.filtration_dims(), [0, 2, 4, 6])
    self.assertEqual(model.sigma.bilinear(model.basis_frame()[model.e(1)], model.basis_frame()[model.f(3)]), -1)
    with self.assertRaises(utils.InvalidParamsError):
      flags.build_model(1, 0)

  def test_exp_shift(self):
    '''exp(tX) is a one-parameter group'''
    model = flags.build_model(2, 1)
    t, s = Fraction(1, 2), Fraction(-3)
    self.assertEqual(model.exp_shift(t) * model.exp_shift(s), model.exp_shift(t + s))
    self.assertEqual(model.exp_shift(0), la.MatQ.identity(model.dim))

  def test_basis_is_quasisymplectic(self):
    '''The standard basis is quasisymplectic for the rescaled form'''
    for k, l in ((2, 0), (2, 1), (3, 2)):
      model = flags.build_model(k, l)
      res = flags.is_quasisymplectic(model.basis_frame(), k, l, model.quasi_sigma)
      self.assertTrue(res['quasisymplectic'], res['first_violation'])
      self.assertEqual(res['violations'], [])

  def test_nonrect_filtration(self):
    '''The (2,1) filtration has single jumps where l adds columns'''
    model = flags.build_model(2, 1)
    self.assertEqual(model.dim, 8)
    self.assertEqual(model.filtration_dims(), [0, 1, 3, 5, 7, 8])

  def test_shifted_frames(self):
    '''Frames moved by exp(tX) stay quasisymplectic'''
    model = flags.build_model(2, 1)
    for t in (1, Fraction(1, 2), -2):
      frame = model.exp_shift(t).transpose().tolist()
      self.assertTrue(flags.is_quasisymplectic(frame, 2, 1, model.quasi_sigma)['quasisymplectic'])

  def test_swapped_frame(self):
    '''Swapping e1 and f1 breaks the frame, first at the isotropy conditions'''
    model = flags.build_model(2, 0)
    frame = model.basis_frame()
    frame[model.e(1)], frame[model.f(1)] = frame[model.f(1)], frame[model.e(1)]
    res = flags.is_quasisymplectic(frame, 2, 0, model.quasi_sigma)
    self.assertFalse(res['quasisymplectic'])
    self.assertEqual(res['first_violation']['condition'], 1)
    self.assertIn(2, {v['condition'] for v in res['violations']})
    frame[0] = frame[1]
    with self.assertRaises(utils.InvalidParamsError):
      flags.is_quasisymplectic(frame, 2, 0, model.quasi_sigma)

  def test_sl2_triple(self):
    '''X, H, Y satisfy the sl(2) relations'''
    X, H, Y = flags.sl2_triple(5)
    self.assertEqual(H.commutator(X), X * 2)
    self.assertEqual(H.commutator(Y), Y * -2)
    self.assertEqual(X.commutator(Y), H)

  def test_p_dimension(self):
    '''Dimensions of the quadric part, and the computed piece matches'''
    self.assertEqual([flags.p_dimension(l) for l in range(5)], [1, 3, 6, 10, 15])
    self.assertEqual(flags.quadric_piece(2, 1).dim, 3)
    self.assertEqual(flags.quadric_piece(2, 2).dim, 6)

  def test_symbols(self):
    '''Symbol dimensions and their agreement with the symmetries of the flat curve'''
    rect = flags.build_symbol(2, 0)
    self.assertEqual(rect.dim, 7)
    self.assertEqual(rect, flags.flat_curve_symmetries(2, 0))
    nonrect = flags.build_symbol(2, 1)
    self.assertEqual(nonrect.dim, 8)
    self.assertEqual(nonrect, flags.flat_curve_symmetries(2, 1))
    self.assertEqual(flags.flat_curve_symmetries(3, 0).dim, 7)
    self.assertEqual(flags.build_symbol(2, 2).dim, 11)
    self.assertEqual(flags.build_symbol(3, 1).dim, 8)
    self.assertTrue(liecore.is_closed(nonrect))
    with self.assertRaises(utils.InvalidParamsError):
      flags.build_symbol_nonrect(2, 0)

  def test_quadric_maps(self):
    '''The quadric maps are nilpotent of order two'''
    for A in flags.quadric_maps(2, 1).matrices():
      self.assertTrue((A * A).is_zero())

  def test_so43(self):
    '''The (2,0) symmetry algebra has dimension 21 with symmetric grading'''
    dims = flags.symmetry_algebra_dims(2, 0)
    self.assertEqual(dims['total'], 21)
    self.assertEqual(dims['per_degree'], {-2: 1, -1: 6, 0: 7, 1: 6, 2: 1})
    self.assertEqual(dims['first_zero'], 3)

  def test_rectangular_dims(self):
    '''Rectangular symbols for k >= 3 have no prolongation: dimension 4k+6'''
    self.assertEqual(flags.symmetry_algebra_dims(3, 0)['total'], 18)
    self.assertEqual(flags.symmetry_algebra_dims(4, 0)['total'], 22)
    model = flags.build_model(3, 0)
    self.assertEqual(liecore.modified_prolongation(flags.build_symbol_rect(3), model.sigma).dim, 0)

  def test_poisson_model(self):
    '''The Poisson model of (2,1) has the dimension of the Tanaka prolongation'''
    pois = flags.build_poisson_G(2, 1)
    self.assertEqual(pois['total'], 17)
    self.assertEqual(pois['total'], flags.symmetry_algebra_dims(2, 1)['total'])
    self.assertEqual(pois['ideal_dims'][0], 1)
    self.assertEqual(pois['ideal_dims'][1], 4)
    self.assertEqual(pois['ideal_dims'][2], 3)
    self.assertTrue(flags.degree0_descriptions_agree(2, 1)['equal'])
    with self.assertRaises(utils.InvalidParamsError):
      flags.build_poisson_G(2, 0)

  def test_poisson_model_22(self):
    '''The Poisson model of (2,2) has the dimension of the Tanaka prolongation, 23'''
    self.assertEqual(flags.build_poisson_G(2, 2)['total'], 23)
    self.assertEqual(flags.symmetry_algebra_dims(2, 2)['total'], 23)

  def test_prolongations(self):
    '''Modified prolongations of the symbol match the Tanaka ones and the standard prolongations of p'''
    model = flags.build_model(2, 1)
    res = liecore.prolongations_agree(flags.build_symbol(2, 1), model.sigma, model.r)
    self.assertTrue(res['agree'])
    self.assertTrue(flags.quadric_prolongations_agree(2, 1)['agree'])

  def test_quadric_prolongations_22(self):
    '''For (2,2) the first prolongations are one-dimensional and equal as subspaces, the second ones vanish'''
    res = flags.quadric_prolongations_agree(2, 2)
    self.assertTrue(res['agree'], res)
    self.assertEqual([(d['modified'], d['standard']) for d in res['degrees']], [(1, 1), (0, 0)])
    self.assertTrue(all(d['equal'] for d in res['degrees']))

  def test_rank_filter(self):
    '''No quadric of rank <= 2 in the (2,1) and (2,2) pieces; a square is found by the witness search'''
    for l in (1, 2):
      res = flags.rank_filter(flags.quadric_piece(2, l), 2)
      self.assertEqual(res['status'], 'empty')
      self.assertEqual(res['certificate'], 'groebner-zero-dimensional')
    x = [poly.MPoly.xvar(4, 4, i) for i in range(4)]
    piece = poly.GradedPiece(2, [x[0] * x[0], x[1] * x[2]], 4)
    res = flags.rank_filter(piece, 1)
    self.assertEqual(res['status'], 'nonempty')
    self.assertEqual(res['certificate'], 'witness')
    self.assertEqual(flags.rank_filter(piece, 4)['certificate'], 'trivial-rank')

  def test_quadric_matrix(self):
    '''The symmetric matrix of a quadric'''
    x = [poly.MPoly.xvar(2, 2, i) for i in range(2)]
    m = flags.quadric_matrix(x[0] * x[0] + (x[0] * x[1]).scale(2), 2)
    self.assertEqual(m.tolist(), [[1, 1], [1, 0]])
    with self.assertRaises(utils.InvalidParamsError):
      flags.quadric_matrix(x[0], 2)

  def test_combinatorics(self):
    '''Double factorials and binomials at the edges'''
    self.assertEqual(flags.double_factorial(-1), 1)
    self.assertEqual(flags.double_factorial(0), 1)
    self.assertEqual(flags.double_factorial(7), 105)
    self.assertEqual(flags.binom(3, 5), 0)
    self.assertEqual(flags.binom(5, -1), 0)
    self.assertEqual(flags.binom(5, 2), 10)

  def test_bmatrix(self):
    '''Small B matrices by hand'''
    for k in range(2, 6):
      self.assertEqual(flags.bmatrix(k, 0).tolist(), [[2 * k - 1]])
    self.assertEqual(flags.bmatrix(2, 1).tolist(), [[2, 3], [4, 1]])
    self.assertEqual(la.det(flags.bmatrix(2, 1)), -10)

  def test_bsuite(self):
    '''All the determinant identities hold on a grid of (k,l)'''
    for k in range(2, 5):
      for l in range(5):
        report = flags.bmatrix_suite(k, l)
        self.assertTrue(report['ok'], report)
        self.assertTrue(report['nonzero'])
    with self.assertRaises(utils.InvalidParamsError):
      flags.bmatrix_suite(1, 0)


if __name__ == '__main__':
  unittest.main()
