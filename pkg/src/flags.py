'''
flags.py

The flat curve of symplectic flags, quasisymplectic frames, the explicit
symbol algebras, the Poisson model of the full symmetry algebra and the
binomial determinant suite
'''

import time
from fractions import Fraction
from itertools import combinations
from math import comb, factorial
import sympy
import exactla as la
import poly
import liecore
import labutils as utils

log = utils.log

# coefficient range of the combinations tried before falling back to a Groebner certificate
witnessrange = 2

ZERO = Fraction(0)
ONE = Fraction(1)


class SymplecticModel:
  '''The space V with basis e_1..e_r, f_1..f_r (r = 2k+l-1), its form, filtration and shift operator'''

  def __init__(self, k, l):
    if k < 2 or l < 0:
      raise utils.InvalidParamsError('Symplectic models need k >= 2 and l >= 0, got (%d,%d)' % (k, l))
    self.k = k
    self.l = l
    self.r = r = 2 * k + l - 1
    self.dim = 2 * r
    self.labels = ['e%d' % i for i in range(1, r + 1)] + ['f%d' % i for i in range(1, r + 1)]
    rows = [[ZERO] * self.dim for _ in range(self.dim)]
    for i in range(1, r + 1):
      sign = ONE if i % 2 == 0 else -ONE
      rows[self.e(i)][self.f(r + 1 - i)] = sign
      rows[self.f(r + 1 - i)][self.e(i)] = -sign
    self.sigma = la.MatQ.fromrows(rows)
    self.quasi_sigma = self.sigma * (ONE if (k + l + 1) % 2 == 0 else -ONE)
    self.filtration = {}
    for i in range(-k - l, k + l):
      if i <= -k:
        idx = [self.e(j) for j in range(1, i + k + l + 1)]
      else:
        idx = [self.e(j) for j in range(1, min(i + k + l, r) + 1)] + [self.f(j) for j in range(1, i + k + 1)]
      self.filtration[i] = la.Subspace.coordinate(self.dim, idx)
    shift = [[ZERO] * self.dim for _ in range(self.dim)]
    for i in range(1, r):
      shift[self.e(i + 1)][self.e(i)] = ONE
      shift[self.f(i + 1)][self.f(i)] = ONE
    self.X = la.MatQ.fromrows(shift)

  def e(self, i):
    '''Index of e_i (1-based) in the basis'''
    return i - 1

  def f(self, i):
    '''Index of f_i (1-based) in the basis'''
    return self.r + i - 1

  def validate(self):
    '''Checks nondegeneracy, isotropy of the negative filtration, duality and the shift property'''
    if la.det(self.sigma) == 0:
      raise utils.ValidationError('The model form is degenerate')
    lo, hi = -self.k - self.l, self.k + self.l - 1
    for i, Vi in self.filtration.items():
      if i < 0 and any(self.sigma.bilinear(v, w) for v in Vi.rows for w in Vi.rows):
        raise utils.ValidationError('V(%d) is not isotropic' % i)
      if lo <= -i - 1 <= hi and Vi.skew_complement(self.sigma) != self.filtration[-i - 1]:
        raise utils.ValidationError('V(%d) is not the skew complement of V(%d)' % (-i - 1, i))
      if i < hi and not self.filtration[i + 1].contains(Vi.image(self.X)):
        raise utils.ValidationError('X does not shift V(%d) into V(%d)' % (i, i + 1))

  def filtration_dims(self):
    return [self.filtration[i].dim for i in sorted(self.filtration)]

  def exp_shift(self, t):
    '''exp(tX), a finite sum since X is nilpotent'''
    t = la.Q(t)
    out = la.MatQ.identity(self.dim)
    term = la.MatQ.identity(self.dim)
    for n in range(1, self.r):
      term = term * self.X * (t / n)
      if term.is_zero():
        break
      out = out + term
    return out

  def basis_frame(self):
    return la.MatQ.identity(self.dim).tolist()


def build_model(k, l):
  '''The symplectic model space with its distinguished filtration and shift operator'''
  model = SymplecticModel(k, l)
  model.validate()
  return model


def _quasi_conditions(k, l, r):
  '''The (condition, left, right, expected) checks of a (k,l)-quasisymplectic frame, in order'''
  checks = []
  for i in range(1, r + 1):
    for j in range(i + 1, r + 1):
      if i + j <= 2 * k + 2 * l:
        checks.append((1, ('e', i), ('e', j), 0))
  for i in range(1, r + 1):
    for j in range(1, r + 1):
      if i + j <= 2 * k + l - 1:
        checks.append((1, ('e', i), ('f', j), 0))
  for i in range(1, r + 1):
    for j in range(i + 1, r + 1):
      if i + j <= 2 * k:
        checks.append((1, ('f', i), ('f', j), 0))
  for i in range(1, r + 1):
    checks.append((2, ('f', i), ('e', 2 * k + l - i), ONE if (i - k) % 2 == 0 else -ONE))
  for i in range(2, r + 1):
    checks.append((3, ('f', i), ('e', 2 * k + l + 1 - i), 0))
  for i in range(0, l + 1):
    checks.append((4, ('f', k + i), ('f', k + i + 1), 0))
  return checks


def is_quasisymplectic(frame, k, l, sigma):
  '''Checks the four conditions of a (k,l)-quasisymplectic frame e_1..e_r, f_1..f_r for the form sigma.
  Reports every violation, ordered by condition, and the first one'''
  r = 2 * k + l - 1
  if len(frame) != 2 * r:
    raise utils.InvalidParamsError('Expected %d frame vectors, got %d' % (2 * r, len(frame)))
  if la.rank(la.MatQ.fromrows(frame)) != 2 * r:
    raise utils.InvalidParamsError('The frame vectors are linearly dependent')
  vec = lambda kind, i: frame[i - 1] if kind == 'e' else frame[r + i - 1]
  violations = []
  for cond, (ka, ia), (kb, ib), expected in _quasi_conditions(k, l, r):
    value = sigma.bilinear(vec(ka, ia), vec(kb, ib))
    if value != expected:
      violations.append({'condition': cond, 'pair': ['%s%d' % (ka, ia), '%s%d' % (kb, ib)],
                         'value': utils.ratstr(value), 'expected': utils.ratstr(expected)})
  return {
    'quasisymplectic': not violations,
    'first_violation': violations[0] if violations else None,
    'violations': violations,
  }


def sl2_triple(r):
  '''X, H, Y acting identically on V_e and V_f, with [H,X]=2X, [H,Y]=-2Y, [X,Y]=H'''
  n = 2 * r
  X = [[ZERO] * n for _ in range(n)]
  H = [[ZERO] * n for _ in range(n)]
  Y = [[ZERO] * n for _ in range(n)]
  for off in (0, r):
    for i in range(1, r + 1):
      H[off + i - 1][off + i - 1] = Fraction(2 * i - r - 1)
      if i < r:
        X[off + i][off + i - 1] = ONE
      if i > 1:
        Y[off + i - 2][off + i - 1] = Fraction((i - 1) * (r + 1 - i))
  return la.MatQ.fromrows(X), la.MatQ.fromrows(H), la.MatQ.fromrows(Y)


def _blockmap(r, src, dst, scale=ONE):
  '''The map sending the src block (0: e, 1: f) identically to the dst block'''
  n = 2 * r
  rows = [[ZERO] * n for _ in range(n)]
  for i in range(r):
    rows[dst * r + i][src * r + i] = scale
  return la.MatQ.fromrows(rows)


def _validate_symbol(model, space, name):
  for A in space.matrices():
    if liecore.conformal_factor(A, model.sigma) is None:
      raise utils.ValidationError('%s contains a map outside csp(V)' % name)
  liecore.LieAlg.from_matrices(space.matrices())


def build_symbol_rect(k):
  '''The 7-dimensional symbol of the rectangular case: sl(2) acting on both halves plus gl(2)
  mixing the e and f columns'''
  model = build_model(k, 0)
  r = model.r
  X, H, Y = sl2_triple(r)
  gl2 = [_blockmap(r, 0, 0), _blockmap(r, 1, 0), _blockmap(r, 0, 1), _blockmap(r, 1, 1)]
  space = liecore.LinMapSpace(model.dim, model.dim, [X, H, Y] + gl2)
  _validate_symbol(model, space, 'The rectangular symbol')
  return space


def p_dimension(l):
  '''dim of the quadric part of the symbol: sum over s <= l/2 of 2l - 4s + 1'''
  return sum(2 * l - 4 * s + 1 for s in range(l // 2 + 1))


def quadric_piece(k, l):
  '''Quadrics in x_1..x_r vanishing on the (k-2)-th tangential developable of the shift-invariant curve'''
  r = 2 * k + l - 1
  veronese = poly.vanishing_ideal_piece(r, (1, k - 2), 2)
  return poly.GradedPiece(2, [poly.shift_transport(F, r) for F in veronese.basis], r)


def quadric_maps(k, l):
  '''The Hamiltonian maps of the quadric piece, killing V_e and sending V_f into V_e'''
  model = build_model(k, l)
  piece = quadric_piece(k, l)
  pmaps = [poly.ad_matrix(F) for F in piece.basis]
  if len(pmaps) != p_dimension(l):
    raise utils.ValidationError('The quadric piece has dimension %d, expected %d' % (len(pmaps), p_dimension(l)))
  Ve = la.Subspace.coordinate(model.dim, range(model.r))
  for A in pmaps:
    if Ve.image(A).dim or not Ve.contains(la.Subspace.full(model.dim).image(A)):
      raise utils.ValidationError('A quadric map does not kill V_e or leaves V_e')
  return liecore.LinMapSpace(model.dim, model.dim, pmaps)


def build_symbol_nonrect(k, l):
  '''The symbol a + p: a spanned by X, H, Y, Z1 (e -> e, f -> -f) and the identity,
  p the Hamiltonian maps of the quadric piece'''
  if k < 2 or l < 1:
    raise utils.InvalidParamsError('The non-rectangular symbol needs k >= 2 and l >= 1, got (%d,%d)' % (k, l))
  model = build_model(k, l)
  r = model.r
  X, H, Y = sl2_triple(r)
  Z1 = _blockmap(r, 0, 0) + _blockmap(r, 1, 1, -ONE)
  Z2 = la.MatQ.identity(model.dim)
  pmaps = quadric_maps(k, l).matrices()
  space = liecore.LinMapSpace(model.dim, model.dim, [X, H, Y, Z1, Z2] + pmaps)
  if space.dim != 5 + len(pmaps):
    raise utils.ValidationError('The symbol has dimension %d, expected %d' % (space.dim, 5 + len(pmaps)))
  _validate_symbol(model, space, 'The symbol')
  return space


def build_symbol(k, l):
  return build_symbol_rect(k) if l == 0 else build_symbol_nonrect(k, l)


def symmetry_algebra_dims(k, l, max_degree=None):
  '''Per-degree and total dimensions of the Tanaka prolongation of R.eta + V + s(k,l)'''
  model = build_model(k, l)
  symbol = build_symbol(k, l)
  tstart = time.time()
  tan = liecore.tanaka_prolongation(liecore.heisenberg_extend(model.sigma), symbol, max_degree)
  per_degree = {d: n for d, n in tan['dims'].items() if n}
  log.info('msg="Symmetry algebra dimension computed" k="%d" l="%d" total="%d" elapsedTimems="%.1f"' %
           (k, l, tan['total'], (time.time() - tstart) * 1000))
  return {'total': tan['total'], 'per_degree': per_degree, 'first_zero': tan['first_zero'], 'r': model.r}


def quadric_matrix(F, r):
  '''The symmetric matrix S with F = x^T S x'''
  rows = [[ZERO] * r for _ in range(r)]
  for e, c in F.terms.items():
    idx = [i for i in range(r) for _ in range(e[i])]
    if len(idx) != 2:
      raise utils.InvalidParamsError('%s is not a quadric' % F)
    i, j = idx
    if i == j:
      rows[i][i] += c
    else:
      rows[i][j] += c / 2
      rows[j][i] += c / 2
  return la.MatQ.fromrows(rows)


def rank_filter(piece, max_rank):
  '''Decides whether the space of quadrics holds nonzero elements of rank <= max_rank: first by a search
  over small combinations of basis elements, then by a Groebner certificate that the minors of size
  max_rank+1 of the generic element only vanish at the origin'''
  r = piece.r
  basis = piece.basis
  if not basis:
    return {'status': 'empty', 'witnesses': [], 'certificate': 'zero-space'}
  if max_rank >= r:
    return {'status': 'nonempty', 'witnesses': [basis[0].tojson()], 'certificate': 'trivial-rank'}
  mats = [quadric_matrix(F, r) for F in basis]
  candidates = [((i, ONE),) for i in range(len(basis))]
  coefs = [Fraction(c) for c in range(-witnessrange, witnessrange + 1) if c]
  for i, j in combinations(range(len(basis)), 2):
    candidates.extend(((i, ONE), (j, c)) for c in coefs)
  witnesses = []
  for combo in candidates:
    M = la.MatQ.zeros(r, r)
    F = poly.MPoly(piece.r, piece.num_p)
    for idx, c in combo:
      M = M + mats[idx] * c
      F = F + basis[idx].scale(c)
    if 0 < la.rank(M) <= max_rank:
      witnesses.append(F.tojson())
  if witnesses:
    return {'status': 'nonempty', 'witnesses': witnesses, 'certificate': 'witness'}
  tstart = time.time()
  a = sympy.symbols('a0:%d' % len(basis))
  generic = sympy.zeros(r, r)
  for ai, M in zip(a, mats):
    generic += ai * sympy.Matrix(r, r, [sympy.Rational(x.numerator, x.denominator) for row in M.tolist() for x in row])
  size = max_rank + 1
  minors = [sympy.expand(generic.extract(list(rows), list(cols)).det())
            for rows in combinations(range(r), size) for cols in combinations(range(r), size)]
  minors = [m for m in dict.fromkeys(minors) if m != 0]
  decided = bool(minors) and sympy.groebner(minors, *a, order='grevlex').is_zero_dimensional
  log.info('msg="Rank filter certificate computed" r="%d" dim="%d" maxrank="%d" decided="%s" elapsedTimems="%.1f"' %
           (r, len(basis), max_rank, decided, (time.time() - tstart) * 1000))
  if decided:
    return {'status': 'empty', 'witnesses': [], 'certificate': 'groebner-zero-dimensional'}
  return {'status': 'undecided', 'witnesses': [], 'certificate': None}


def _graded_basis(k, l):
  '''The homogeneous polynomials spanning the Poisson model, with labels'''
  model = build_model(k, l)
  r = model.r
  X, H, Y = sl2_triple(r)
  elems = [('X', poly.hamiltonian_of(X)), ('Y', poly.hamiltonian_of(Y)), ('H', poly.hamiltonian_of(H))]
  Z = poly.MPoly(r, r)
  for i in range(1, r + 1):
    Z = Z + (poly.MPoly.xvar(r, r, i - 1) * poly.MPoly.pvar(r, r, r - i)).scale(1 if i % 2 else -1)
  elems.append(('Z', Z))
  elems += [('p%d' % (i + 1), poly.MPoly.pvar(r, r, i)) for i in range(r)]
  elems.append(('1', poly.MPoly.const(r, r, 1)))
  elems += [('x%d' % (i + 1), poly.MPoly.xvar(r, r, i)) for i in range(r)]
  pieces = {0: 1, 1: r}
  s = 2
  while True:
    piece = poly.vanishing_ideal_piece(r, (s - 1, k - 2), s)
    if piece.dim == 0:
      break
    pieces[s] = piece.dim
    elems += [('I%d_%d' % (s, n + 1), poly.shift_transport(F, r)) for n, F in enumerate(piece.basis)]
    s += 1
  return model, elems, pieces


def build_poisson_G(k, l):
  '''The Poisson-algebra model: quadratic Hamiltonians of X, Y, H, Z, the linear p's and the ideal
  pieces I_0 = <1>, I_1 = <x>, I_s (degree-s forms vanishing on the secant variety through s-1 points
  of the (k-2)-th tangential developable), extended by Z' with [Z', f] = (deg f - 2) f'''
  if k < 2 or l < 1:
    raise utils.InvalidParamsError('The Poisson model needs k >= 2 and l >= 1, got (%d,%d)' % (k, l))
  tstart = time.time()
  model, elems, pieces = _graded_basis(k, l)
  labels = [name for name, _ in elems]
  polys = [f for _, f in elems]
  monoindex = {}
  for f in polys:
    for e in f.terms:
      monoindex.setdefault(e, len(monoindex))

  def coords(f):
    v = [ZERO] * len(monoindex)
    for e, c in f.terms.items():
      if e not in monoindex:
        return None
      v[monoindex[e]] = c
    return v

  solver = la.SpanSolver([coords(f) for f in polys])
  brackets = {}
  for i in range(len(polys)):
    for j in range(i + 1, len(polys)):
      b = poly.poisson(polys[i], polys[j])
      if not b:
        continue
      v = coords(b)
      c = solver.solve(v) if v is not None else None
      if c is None:
        raise utils.ValidationError('The Poisson model is not closed: {%s,%s} falls outside' % (labels[i], labels[j]))
      brackets[(i, j)] = {m: x for m, x in enumerate(c) if x}
  zprime = len(polys)
  for i, f in enumerate(polys):
    w = f.degree() - 2
    if w:
      brackets[(i, zprime)] = {i: Fraction(-w)}
  degrees = [f.degree() - 2 for f in polys] + [0]
  alg = liecore.LieAlg(len(polys) + 1, labels + ["Z'"], brackets)
  graded = liecore.GradedLieAlg(alg, degrees)
  per_degree = {}
  for d in degrees:
    per_degree[d] = per_degree.get(d, 0) + 1
  log.info('msg="Poisson model assembled" k="%d" l="%d" dim="%d" elapsedTimems="%.1f"' %
           (k, l, alg.dim, (time.time() - tstart) * 1000))
  return {
    'alg': graded,
    'total': alg.dim,
    'per_degree': {d: per_degree[d] for d in sorted(per_degree)},
    'ideal_dims': pieces,
    'model': model,
  }


def degree0_descriptions_agree(k, l):
  '''Checks that <X, Y, H, Z, Id> plus the quadric piece, read through the Poisson bracket, spans the
  same subspace of gl(V) as the explicit a + p'''
  model, elems, _ = _graded_basis(k, l)
  quads = [f for name, f in elems if name in ('X', 'Y', 'H', 'Z') or name.startswith('I2_')]
  mats = [poly.ad_matrix(f) for f in quads] + [la.MatQ.identity(model.dim)]
  poisson_side = liecore.LinMapSpace(model.dim, model.dim, mats)
  explicit = build_symbol_nonrect(k, l)
  return {'poisson_dim': poisson_side.dim, 'explicit_dim': explicit.dim, 'equal': poisson_side == explicit}


def quadric_prolongations_agree(k, l, depth=None):
  '''Compares the iterated modified prolongations of the symbol with the standard prolongations
  of its quadric part, degree by degree as subspaces of the fully expanded tensor spaces'''
  model = build_model(k, l)
  symbol = build_symbol(k, l)
  quads = quadric_maps(k, l) if l else liecore.LinMapSpace(model.dim, model.dim)
  depth = depth or model.r
  Mchain, Pchain = [symbol], [quads]
  degrees = []
  for i in range(1, depth + 1):
    Mi = liecore.modified_prolongation(Mchain[-1], model.sigma, check=False)
    Pi = liecore.standard_prolongation(Pchain[-1])
    Mchain.append(Mi)
    Pchain.append(Pi)
    entry = {'degree': i, 'modified': Mi.dim, 'standard': Pi.dim, 'equal': Mi.dim == Pi.dim}
    if entry['equal'] and Mi.dim:
      mfull, amb = liecore.expand_chain(Mchain)
      pfull, _ = liecore.expand_chain(Pchain)
      entry['equal'] = liecore.same_span(mfull, pfull, amb)
    degrees.append(entry)
    if Mi.dim == 0 and Pi.dim == 0:
      break
  return {'degrees': degrees, 'agree': all(d['equal'] for d in degrees)}


def _stabilizer_rows(model):
  '''Rows on (A, c) for A in csp(V) with A V(i) inside V(i)'''
  n = model.dim
  rows = liecore.csp_rows(model.sigma)
  for Vi in model.filtration.values():
    for nu in Vi.annihilator().rows:
      for b in Vi.rows:
        row = {a * n + j: nu[j] * b[a] for a in range(n) for j in range(n) if nu[j] and b[a]}
        if row:
          rows.append(row)
  return rows


def flat_curve_symmetries(k, l):
  '''The infinitesimal symmetries of the flat curve: h_0 = stabilizer of the flag in csp(V),
  h_(m+1) = {A in h_m : [X, A] in h_m + RX}, and returns h + RX'''
  model = build_model(k, l)
  n = model.dim
  h = la.nullspace(_stabilizer_rows(model), n * n + 1).restrict(range(n * n))
  Xflat = model.X.flatten()
  for _ in range(n * n + 1):
    mats = [la.MatQ.fromflat(v, n, n) for v in h.rows]
    target = la.Subspace(n * n, list(h.rows) + [Xflat])
    rows = []
    brackets = [model.X.commutator(B).flatten() for B in mats]
    for psi in target.annihilator().rows:
      row = {}
      for beta, br in enumerate(brackets):
        x = sum((p * y for p, y in zip(psi, br) if p and y), ZERO)
        if x:
          row[beta] = x
      if row:
        rows.append(row)
    sol = la.nullspace(rows, len(mats))
    nxt = la.Subspace(n * n, [h.combine(c) for c in sol.rows])
    if nxt == h:
      sym = liecore.LinMapSpace.fromspace(n, n, h.sum(la.Subspace(n * n, [Xflat])))
      log.debug('msg="Flat curve symmetries computed" k="%d" l="%d" dim="%d"' % (k, l, sym.dim))
      return sym
    h = nxt
  raise utils.ValidationError('The iterated stabilizer did not stabilize')


def double_factorial(n):
  '''n!! with (-1)!! = 0!! = 1'''
  out = 1
  while n > 1:
    out *= n
    n -= 2
  return out


def binom(n, m):
  '''Binomial coefficient, zero when m is out of range'''
  if m < 0 or n < 0 or m > n:
    return 0
  return comb(n, m)


def _prod(values):
  out = Fraction(1)
  for v in values:
    out *= v
  return out


def bmatrix(k, l):
  '''B with B_(j+1,i) = C(k+j-1, 2j+i-l) + C(k+j, 2j+i-l), 0 <= j <= l, 1 <= i <= l+1'''
  return la.MatQ.fromrows([[binom(k + j - 1, 2 * j + i - l) + binom(k + j, 2 * j + i - l)
                            for i in range(1, l + 2)] for j in range(l + 1)])


def mmatrix(k, l):
  '''M with M_(j+1,i) = C(k+j, 2j+i-l)'''
  return la.MatQ.fromrows([[binom(k + j, 2 * j + i - l) for i in range(1, l + 2)] for j in range(l + 1)])


def submatrix(m, l, p):
  '''Erases the last 2p columns, the first p rows and the last p rows'''
  return la.MatQ.fromrows([m.row(j)[:l + 1 - 2 * p] for j in range(p, l + 1 - p)], l + 1 - 2 * p)


def cfactor(k, l):
  '''c(k,l) = (-1)^l l! / ((2l-1)!! (2l+1)!) prod_(1..l) (2k+2r-1) prod_(0..l) (k+r)'''
  sign = 1 if l % 2 == 0 else -1
  return Fraction(sign * factorial(l), double_factorial(2 * l - 1) * factorial(2 * l + 1)) * \
      _prod(2 * k + 2 * r - 1 for r in range(1, l + 1)) * _prod(k + r for r in range(l + 1))


def dfactor(k, s, j):
  '''d(k,s,j) = (-1)^s / ((2s-1)!! (2j-1)!) prod_(1..s) (j-r)(2k+2r-1) prod_(1..2j-s-1) (k-j+s+r), j >= 1'''
  sign = 1 if s % 2 == 0 else -1
  return Fraction(sign, double_factorial(2 * s - 1) * factorial(2 * j - 1)) * \
      _prod((j - r) * (2 * k + 2 * r - 1) for r in range(1, s + 1)) * \
      _prod(k - j + s + r for r in range(1, 2 * j - s))


def mdet_formula(k, l):
  '''det M^(k,l) as the product of c(k+r, l-2r), with the sign (-1)^(l+1) of every cofactor step'''
  steps = (l + 1) // 2
  sign = -1 if ((l + 1) * steps) % 2 else 1
  return sign * _prod(cfactor(k + r, l - 2 * r) for r in range(l // 2 + 1))


def bmatrix_suite(k, l):
  '''Determinants of the B_p and the identities behind their nonvanishing, all in exact arithmetic'''
  if k < 2 or l < 0:
    raise utils.InvalidParamsError('The binomial suite needs k >= 2 and l >= 0, got (%d,%d)' % (k, l))
  B = bmatrix(k, l)
  M = mmatrix(k, l)
  dets = {}
  product_ok = True
  submatrix_ok = True
  for p in range(l // 2 + 1):
    Bp = submatrix(B, l, p)
    Mp = submatrix(M, l, p)
    dets[p] = la.det(Bp)
    submatrix_ok &= Mp == mmatrix(k + p, l - 2 * p)
    scale = _prod(2 * k - i + l for i in range(1, l + 2 - 2 * p)) / _prod(k + j for j in range(p, l - p + 1))
    product_ok &= dets[p] == la.det(Mp) * scale
  trans_ok = all(B[j, i - 1] == Fraction(2 * k - i + l, k + j) * binom(k + j, 2 * j + i - l)
                 for j in range(l + 1) for i in range(1, l + 2))
  formula_ok = la.det(M) == mdet_formula(k, l)
  # 1-based column entries M_(j,i) = C(k+j-1, 2j+i-l-2)
  mentry = lambda j, i: binom(k + j - 1, 2 * j + i - l - 2)
  base_ok = l < 1 or all(mentry(j, l + 1) - k * mentry(j, l) == dfactor(k, 1, j) for j in range(1, l + 2))
  recursion_ok = True
  multiplier_ok = True
  for s0 in range(1, l):
    coef = Fraction((2 * k + 1) * k, 2 * (4 * s0 * s0 - 1))
    multiplier_ok &= -dfactor(k, s0, s0 + 1) / dfactor(k + 1, s0 - 1, s0) == coef
    for j in range(2, l + 2):
      recursion_ok &= dfactor(k, s0, j) + coef * dfactor(k + 1, s0 - 1, j - 1) == dfactor(k, s0 + 1, j)
  vanishing_ok = all(dfactor(k, s, j) == 0 for s in range(1, l + 1) for j in range(1, s + 1))
  corner_ok = dfactor(k, l, l + 1) == cfactor(k, l)
  report = {
    'k': k,
    'l': l,
    'B': utils.matjson(B),
    'det': {str(p): utils.ratstr(d) for p, d in dets.items()},
    'nonzero': all(dets.values()),
    'entry_factorization': trans_ok,
    'submatrix_shift': submatrix_ok,
    'det_scaling': product_ok,
    'det_product_formula': formula_ok,
    'column_base_case': base_ok,
    'recursion': recursion_ok,
    'recursion_multiplier': multiplier_ok,
    'low_vanishing': vanishing_ok,
    'corner_entry': corner_ok,
  }
  report['ok'] = all(v for key, v in report.items() if isinstance(v, bool))
  return report


def init(config, inlog):
  '''Initializes the module from the configuration'''
  global log            # pylint: disable=global-statement
  global witnessrange   # pylint: disable=global-statement
  log = inlog
  witnessrange = config.getint('rankfilter', 'witnessrange', fallback=2)
