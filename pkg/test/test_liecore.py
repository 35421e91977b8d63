'''
test_liecore.py

Unit testing of Lie algebras by structure constants and of the standard,
modified and Tanaka prolongations.
'''

import unittest
import logging
import configparser
import sys
import os
sys.path.append('../src')  # for tests out of the git repo
sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir, 'src'))
import exactla as la     # pylint: disable=wrong-import-position
import liecore           # pylint: disable=wrong-import-position
import labutils as utils  # pylint: disable=wrong-import-position


def _unit(n, i, j):
  '''The elementary n x n matrix E_ij'''
  return la.MatQ.fromrows([[1 if (a, b) == (i, j) else 0 for b in range(n)] for a in range(n)])


class TestLieCore(unittest.TestCase):
  '''Tests for LieAlg, LinMapSpace and the prolongation machinery'''

  def __init__(self, *args, **kwargs):
    '''One-off initialization of the test environment: create mock logging and read the defaults'''
    super(TestLieCore, self).__init__(*args, **kwargs)
    log = logging.getLogger('tanakalab.test')
    log.setLevel(logging.DEBUG)
    config = configparser.ConfigParser()
    with open(os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir, 'tanakalab.defaults.conf')) as fd:
      config.read_file(fd)
    liecore.init(config, utils.JsonLogger(log))

  def _so3(self):
    return liecore.LinMapSpace(3, 3, [_unit(3, i, j) - _unit(3, j, i) for i, j in ((0, 1), (0, 2), (1, 2))])

  def test_flat_algebra(self):
    '''The flat (2,0) and (2,1) algebras: dimensions, grading and generation depth'''
    g = liecore.build_flat_algebra(2, 0)
    self.assertEqual(g.dim, 6)
    self.assertEqual(g.degrees, [-1, -1, -2, -1, -2, -2])
    gens = [[1 if c == i else 0 for c in range(g.dim)] for i in liecore.flat_generators(2, 0)]
    self.assertEqual(g.alg.generation_depth(gens), 2)
    self.assertEqual(g.alg.lower_central_series(), [6, 3, 0])
    g = liecore.build_flat_algebra(2, 1)
    gens = [[1 if c == i else 0 for c in range(g.dim)] for i in liecore.flat_generators(2, 1)]
    self.assertEqual(g.alg.generation_depth(gens), 3)
    with self.assertRaises(utils.InvalidParamsError):
      liecore.build_flat_algebra(1, 0)

  def test_jacobi_violation(self):
    '''Structure constants violating the Jacobi identity are refused'''
    with self.assertRaises(utils.ValidationError):
      liecore.LieAlg(3, brackets={(0, 1): {2: 1}, (1, 2): {0: 1}, (0, 2): {0: 1}})

  def test_grading_violation(self):
    '''Degrees not additive under the bracket are refused'''
    alg = liecore.LieAlg(3, brackets={(0, 1): {2: 1}})
    liecore.GradedLieAlg(alg, [-1, -1, -2])
    with self.assertRaises(utils.ValidationError):
      liecore.GradedLieAlg(alg, [-1, -1, -1])

  def test_json_roundtrip(self):
    '''A Lie algebra survives its JSON form'''
    alg = liecore.build_flat_algebra(2, 1).alg
    back = liecore.LieAlg.fromjson(alg.tojson())
    self.assertEqual(back.c, alg.c)
    self.assertEqual(back.labels, alg.labels)
    with self.assertRaises(utils.InvalidParamsError):
      liecore.LieAlg.fromjson({'dim': 2})

  def test_from_matrices(self):
    '''so(3) from matrices has the expected center and closure'''
    so3 = self._so3()
    self.assertTrue(liecore.is_closed(so3))
    alg = liecore.LieAlg.from_matrices(so3.matrices())
    self.assertEqual(alg.centralizer().dim, 0)
    self.assertFalse(liecore.is_closed(liecore.LinMapSpace(2, 2, [_unit(2, 0, 1), _unit(2, 1, 0)])))

  def test_standard_prolongation(self):
    '''gl(2) prolongs to S^2 V* x V, so(3) has no prolongation'''
    gl2 = liecore.LinMapSpace(2, 2, [_unit(2, i, j) for i in range(2) for j in range(2)])
    self.assertEqual(liecore.standard_prolongation(gl2).dim, 6)
    self.assertEqual(liecore.standard_prolongation(self._so3()).dim, 0)

  def test_expand_chain(self):
    '''The second prolongation of gl(2), expanded to trilinear maps, is the space of symmetric ones'''
    gl2 = liecore.LinMapSpace(2, 2, [_unit(2, i, j) for i in range(2) for j in range(2)])
    first = liecore.standard_prolongation(gl2)
    second = liecore.standard_prolongation(first)
    self.assertEqual(second.dim, 8)
    full, amb = liecore.expand_chain([gl2, first, second])
    self.assertEqual((len(full), amb), (8, 16))
    # phi(e_a)(e_b)(e_c) has component d at index 8a + 4b + 2c + d
    idx = lambda a, b, c, d: 8 * a + 4 * b + 2 * c + d
    for v in full:
      for a in range(2):
        for b in range(2):
          for c in range(2):
            for d in range(2):
              x = v.get(idx(a, b, c, d), 0)
              self.assertEqual(x, v.get(idx(b, a, c, d), 0))
              self.assertEqual(x, v.get(idx(a, c, b, d), 0))
    self.assertTrue(liecore.same_span(full, list(reversed(full)), amb))
    self.assertFalse(liecore.same_span(full, full[:-1], amb))
    with self.assertRaises(utils.InvalidParamsError):
      liecore.expand_chain([gl2, second])

  def test_standard_form_and_csp(self):
    '''csp(4) has dimension 11, the identity has conformal factor 2'''
    omega = liecore.standard_form(4)
    self.assertTrue(omega.is_skew())
    self.assertEqual(la.det(omega), 1)
    self.assertEqual(liecore.csp_algebra(omega).dim, 11)
    self.assertEqual(liecore.conformal_factor(la.MatQ.identity(4), omega), 2)
    self.assertIsNone(liecore.conformal_factor(_unit(4, 0, 1), omega))
    with self.assertRaises(utils.InvalidParamsError):
      liecore.standard_form(3)

  def test_heisenberg_extend(self):
    '''The Heisenberg algebra of a form, degenerate forms only on request'''
    h = liecore.heisenberg_extend(liecore.standard_form(2))
    self.assertEqual(h.dim, 3)
    self.assertEqual(h.alg.bracket_basis(0, 1), {2: 1})
    with self.assertRaises(utils.InvalidParamsError):
      liecore.heisenberg_extend(la.MatQ.zeros(2, 2))
    liecore.heisenberg_extend(la.MatQ.zeros(2, 2), allow_degenerate=True)

  def test_contact_prolongation(self):
    '''The Tanaka prolongation of csp(4) is the contact algebra: g_1 has dimension 24, and the
    modified prolongation agrees as a subspace'''
    omega = liecore.standard_form(4)
    W = liecore.csp_algebra(omega)
    res = liecore.tanaka_prolongation(liecore.heisenberg_extend(omega), W, 1)
    self.assertEqual(res['dims'][1], 24)
    cmp = liecore.prolongations_agree(W, omega, 1)
    self.assertTrue(cmp['agree'])
    self.assertEqual(cmp['degrees'][0]['modified'], 24)

  def test_dimension_two(self):
    '''On a plane the modified prolongation of the diagonal maps is 4-dimensional, the Tanaka one smaller,
    and the comparison is refused'''
    omega = liecore.standard_form(2)
    W = liecore.LinMapSpace(2, 2, [_unit(2, 0, 0), _unit(2, 1, 1)])
    self.assertEqual(liecore.modified_prolongation(W, omega).dim, 4)
    self.assertEqual(liecore.tanaka_prolongation(liecore.heisenberg_extend(omega), W, 1)['dims'][1], 2)
    with self.assertRaises(utils.InvalidParamsError):
      liecore.prolongations_agree(W, omega, 1)

  def test_anchor_validation(self):
    '''An isotropic anchor pair is refused'''
    omega = liecore.standard_form(4)
    W = liecore.csp_algebra(omega)
    with self.assertRaises(utils.InvalidParamsError):
      liecore.modified_prolongation(W, omega, anchor=([1, 0, 0, 0], [0, 1, 0, 0]))
    liecore.modified_prolongation(W, omega, anchor=([1, 0, 0, 0], [0, 0, 1, 0]))

  def test_maps_into(self):
    '''Maps written in W-coordinates land inside Hom(V, W)'''
    so3 = self._so3()
    P = liecore.LinMapSpace(3, 3, [_unit(3, 0, 0)])
    out = liecore.maps_into(P, so3)
    self.assertEqual((out.source_dim, out.target_dim, out.dim), (3, 9, 1))
    self.assertEqual(out.value(0, 0), so3.space.rows[0])
    with self.assertRaises(utils.InvalidParamsError):
      liecore.maps_into(liecore.LinMapSpace(3, 2), so3)


if __name__ == '__main__':
  unittest.main()
