'''
test_poly.py

Unit testing of the polynomial layer: Poisson bracket, quadratic Hamiltonians
and vanishing ideals of rational normal curves and their relatives.
'''

import unittest
import logging
import random
import sys
import os
from fractions import Fraction
sys.path.append('../src')  # for tests out of the git repo
sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir, 'src'))
import exactla as la     # pylint: disable=wrong-import-position
import poly              # pylint: disable=wrong-import-position
import labutils as utils  # pylint: disable=wrong-import-position


class TestPoly(unittest.TestCase):
  '''Tests for MPoly, the Poisson bracket and the ideal pieces'''

  def __init__(self, *args, **kwargs):
    '''One-off initialization of the test environment: create mock logging'''
    super(TestPoly, self).__init__(*args, **kwargs)
    log = logging.getLogger('tanakalab.test')
    log.setLevel(logging.DEBUG)
    poly.init(None, utils.JsonLogger(log))
    self.rng = random.Random(7)

  def _randpoly(self, r, maxdeg=2, nterms=4):
    terms = {}
    for _ in range(nterms):
      e = [0] * (2 * r)
      for _ in range(self.rng.randint(0, maxdeg)):
        e[self.rng.randrange(2 * r)] += 1
      terms[tuple(e)] = Fraction(self.rng.randint(-3, 3), self.rng.randint(1, 2))
    return poly.MPoly(r, r, terms)

  def test_canonical_pairs(self):
    '''{x_i, p_(r+1-i)} alternates in sign and other pairs vanish'''
    r = 4
    for i in range(r):
      b = poly.poisson(poly.MPoly.xvar(r, r, i), poly.MPoly.pvar(r, r, r - 1 - i))
      self.assertEqual(b, poly.MPoly.const(r, r, (-1) ** i))
    self.assertFalse(poly.poisson(poly.MPoly.xvar(r, r, 0), poly.MPoly.pvar(r, r, 0)))
    self.assertFalse(poly.poisson(poly.MPoly.xvar(r, r, 0), poly.MPoly.xvar(r, r, 1)))

  def test_grading_element(self):
    '''Z = x_1 p_r - x_2 p_(r-1) + .. scales every x_j by the same constant'''
    r = 4
    Z = poly.MPoly(r, r)
    for i in range(r):
      Z = Z + (poly.MPoly.xvar(r, r, i) * poly.MPoly.pvar(r, r, r - 1 - i)).scale((-1) ** i)
    x = [poly.MPoly.xvar(r, r, j) for j in range(r)]
    c = poly.poisson(Z, x[0]).coefficient((1,) + (0,) * (2 * r - 1))
    self.assertTrue(c)
    for j in range(r):
      self.assertEqual(poly.poisson(Z, x[j]), x[j].scale(c))

  def test_bracket_is_lie(self):
    '''The bracket is antisymmetric and satisfies the Jacobi identity'''
    r = 2
    for _ in range(3):
      f, g, h = (self._randpoly(r) for _ in range(3))
      self.assertEqual(poly.poisson(f, g), -poly.poisson(g, f))
      jac = poly.poisson(f, poly.poisson(g, h)) + poly.poisson(g, poly.poisson(h, f)) + \
          poly.poisson(h, poly.poisson(f, g))
      self.assertFalse(jac)

  def test_ring_mismatch(self):
    '''Brackets need a ring with as many p as x variables'''
    with self.assertRaises(utils.InvalidParamsError):
      poly.poisson(poly.MPoly.xvar(2, 1, 0), poly.MPoly.xvar(2, 1, 1))

  def test_hamiltonian_roundtrip(self):
    '''hamiltonian_of inverts ad_matrix on quadratic polynomials'''
    r = 2
    F = poly.MPoly(r, r)
    for e in poly.monomials(2 * r, 2):
      F = F + poly.MPoly(r, r, {e: self.rng.randint(-2, 2)})
    self.assertEqual(poly.hamiltonian_of(poly.ad_matrix(F)), F)
    with self.assertRaises(utils.InvalidParamsError):
      poly.hamiltonian_of(la.MatQ.identity(2 * r))

  def test_shift_and_evaluate(self):
    '''shift moves the origin: f(v + a) at v = 0 is f(a)'''
    f = self._randpoly(2, maxdeg=3)
    point = [1, Fraction(-1, 2), 2, 3]
    self.assertEqual(f.shift(point).evaluate([0] * 4), f.evaluate(point))

  def test_diff(self):
    '''Partial derivatives of a monomial'''
    f = poly.MPoly(1, 1, {(3, 1): 2})
    self.assertEqual(f.diff(0), poly.MPoly(1, 1, {(2, 1): 6}))
    self.assertEqual(f.diff(1), poly.MPoly(1, 1, {(3, 0): 2}))

  def test_monomials(self):
    '''Monomials of degree d in n variables'''
    self.assertEqual(len(poly.monomials(4, 2)), 10)
    self.assertEqual(poly.monomials(2, 2), [(2, 0), (1, 1), (0, 2)])

  def test_twisted_cubic(self):
    '''Quadrics through the rational normal curve in P^3 are the 2x2 minors of its Hankel matrix'''
    piece = poly.vanishing_ideal_piece(4, (1, 0), 2)
    self.assertEqual(piece.dim, 3)
    self.assertEqual(piece, poly.hankel_minors(4, 1, 2))

  def test_tangential_developable(self):
    '''The tangent developable of the twisted cubic is a quartic surface'''
    self.assertEqual(poly.vanishing_ideal_piece(4, (1, 1), 2).dim, 0)
    self.assertEqual(poly.vanishing_ideal_piece(4, (1, 1), 3).dim, 0)
    self.assertEqual(poly.vanishing_ideal_piece(4, (1, 1), 4).dim, 1)

  def test_secant_of_quartic(self):
    '''The secant variety of the rational normal quartic is the catalecticant cubic'''
    piece = poly.vanishing_ideal_piece(5, poly.parse_variety('secant:2,0'), 3)
    self.assertEqual(piece.dim, 1)
    self.assertEqual(piece, poly.hankel_minors(5, 2, 3))
    self.assertEqual(poly.vanishing_ideal_piece(5, (1, 0), 2).dim, 6)

  def test_tangential_quadrics(self):
    '''Quadrics through the tangent developable in P^5, multiplied by linear forms, stay in the ideal'''
    piece = poly.vanishing_ideal_piece(6, (1, 1), 2)
    self.assertEqual(piece.dim, 3)
    cubics = poly.vanishing_ideal_piece(6, (1, 1), 3)
    self.assertTrue(cubics.space.contains(piece.times_linear().space))
    # a larger variety has a smaller ideal
    self.assertTrue(cubics.space.contains(poly.vanishing_ideal_piece(6, (2, 1), 3).space))

  def test_hankel_entries(self):
    '''1x1 Hankel minors are the variables'''
    self.assertEqual(poly.hankel_minors(5, 2, 1).dim, 5)
    with self.assertRaises(utils.InvalidParamsError):
      poly.hankel_minors(5, 3, 2)

  def test_veronese_jet(self):
    '''The first-order jet of the curve in R^4'''
    jets = poly.veronese_jet(4, 1)
    t, l0, l1 = (poly.MPoly.gen(3, 0, i) for i in range(3))
    self.assertEqual(jets[0], l0)
    self.assertEqual(jets[3], t * t * t * l0 + (t * t * l1).scale(3))
    with self.assertRaises(utils.InvalidParamsError):
      poly.veronese_jet(4, 4)

  def test_parse_variety(self):
    '''Variety names parse to (points, order) and garbage is refused'''
    self.assertEqual(poly.parse_variety('curve'), (1, 0))
    self.assertEqual(poly.parse_variety('tangential:2'), (1, 2))
    self.assertEqual(poly.parse_variety('secant:3,1'), (3, 1))
    for bad in ('plane', 'secant:3', 'tangential:x'):
      with self.assertRaises(utils.InvalidParamsError):
        poly.parse_variety(bad)

  def test_polydet(self):
    '''Leibniz determinant of a polynomial matrix'''
    x = [poly.MPoly.xvar(4, 0, i) for i in range(4)]
    d = poly.polydet([[x[0], x[1]], [x[2], x[3]]])
    self.assertEqual(d, x[0] * x[3] - x[1] * x[2])

  def test_graded_piece_membership(self):
    '''GradedPiece.contains accepts span members and rejects other degrees'''
    piece = poly.hankel_minors(4, 1, 2)
    x = [poly.MPoly.xvar(4, 4, i) for i in range(4)]
    self.assertTrue(piece.contains(x[0] * x[2] - x[1] * x[1]))
    self.assertFalse(piece.contains(x[0] * x[1]))
    self.assertFalse(piece.contains(x[0]))

  def test_json_roundtrip(self):
    '''Polynomials survive their JSON form, malformed input is refused'''
    f = self._randpoly(2)
    self.assertEqual(poly.MPoly.fromjson(2, 2, f.tojson()), f)
    with self.assertRaises(utils.InvalidParamsError):
      poly.MPoly.fromjson(2, 2, [{'exp': [1, 0, 0, 0]}])


if __name__ == '__main__':
  unittest.main()
