'''
poly.py

Multivariate polynomials over the rationals in variables x_1..x_r, p_1..p_r,
the Poisson bracket of the fixed symplectic form, and vanishing ideals of
rational normal curves, their tangential developables and secant varieties
'''

import time
from fractions import Fraction
from itertools import combinations, permutations
from math import factorial
import exactla as la
import labutils as utils

log = utils.log

ZERO = Fraction(0)
ONE = Fraction(1)


def _addexp(e1, e2):
  return tuple(a + b for a, b in zip(e1, e2))


class MPoly:
  '''A polynomial with rational coefficients over num_x x-variables followed by num_p p-variables.
  Terms map exponent tuples to nonzero Fractions'''
  __slots__ = ('num_x', 'num_p', 'terms', '_hash')

  def __init__(self, num_x, num_p, terms=None):
    self.num_x = num_x
    self.num_p = num_p
    self.terms = {}
    self._hash = None
    for e, c in (terms or {}).items():
      c = la.Q(c)
      if c:
        if len(e) != num_x + num_p:
          raise utils.InvalidParamsError('Exponent %s does not fit %d+%d variables' % (e, num_x, num_p))
        self.terms[tuple(e)] = c

  @property
  def nvars(self):
    return self.num_x + self.num_p

  @classmethod
  def zero(cls, num_x, num_p=0):
    return cls(num_x, num_p)

  @classmethod
  def const(cls, num_x, num_p, c):
    return cls(num_x, num_p, {(0,) * (num_x + num_p): c})

  @classmethod
  def gen(cls, num_x, num_p, i):
    '''The i-th variable, counting the x-variables first (0-based)'''
    e = [0] * (num_x + num_p)
    e[i] = 1
    return cls(num_x, num_p, {tuple(e): ONE})

  @classmethod
  def xvar(cls, num_x, num_p, i):
    return cls.gen(num_x, num_p, i)

  @classmethod
  def pvar(cls, num_x, num_p, i):
    return cls.gen(num_x, num_p, num_x + i)

  @classmethod
  def linear(cls, num_x, num_p, coeffs):
    '''The linear form sum coeffs[i]*var_i'''
    n = num_x + num_p
    terms = {}
    for i, c in enumerate(coeffs):
      if c:
        e = [0] * n
        e[i] = 1
        terms[tuple(e)] = c
    return cls(num_x, num_p, terms)

  def _ring(self, other):
    if (self.num_x, self.num_p) != (other.num_x, other.num_p):
      raise utils.InvalidParamsError('Variable set mismatch: (%d,%d) vs (%d,%d)' %
                                     (self.num_x, self.num_p, other.num_x, other.num_p))

  def _new(self, terms):
    p = MPoly(self.num_x, self.num_p)
    p.terms = terms
    return p

  def _coerce(self, other):
    if isinstance(other, MPoly):
      self._ring(other)
      return other
    return MPoly.const(self.num_x, self.num_p, other)

  def __add__(self, other):
    other = self._coerce(other)
    terms = dict(self.terms)
    for e, c in other.terms.items():
      s = terms.get(e, ZERO) + c
      if s:
        terms[e] = s
      else:
        terms.pop(e, None)
    return self._new(terms)

  __radd__ = __add__

  def __neg__(self):
    return self._new({e: -c for e, c in self.terms.items()})

  def __sub__(self, other):
    return self + (-self._coerce(other))

  def __rsub__(self, other):
    return self._coerce(other) - self

  def scale(self, c):
    c = la.Q(c)
    if not c:
      return MPoly(self.num_x, self.num_p)
    return self._new({e: c * x for e, x in self.terms.items()})

  def mul(self, other, maxdeg=None):
    '''Product, dropping the terms of total degree above maxdeg when given'''
    if not isinstance(other, MPoly):
      return self.scale(other)
    self._ring(other)
    terms = {}
    for e1, c1 in self.terms.items():
      d1 = sum(e1)
      for e2, c2 in other.terms.items():
        if maxdeg is not None and d1 + sum(e2) > maxdeg:
          continue
        e = _addexp(e1, e2)
        s = terms.get(e, ZERO) + c1 * c2
        if s:
          terms[e] = s
        else:
          del terms[e]
    return self._new(terms)

  def __mul__(self, other):
    return self.mul(other)

  def __rmul__(self, other):
    return self.scale(other)

  def __pow__(self, n):
    out = MPoly.const(self.num_x, self.num_p, 1)
    for _ in range(n):
      out = out * self
    return out

  def __bool__(self):
    return bool(self.terms)

  def __eq__(self, other):
    if isinstance(other, MPoly):
      return (self.num_x, self.num_p, self.terms) == (other.num_x, other.num_p, other.terms)
    if not self.terms:
      return other == 0
    return False

  def __hash__(self):
    if self._hash is None:
      self._hash = hash((self.num_x, self.num_p, frozenset(self.terms.items())))
    return self._hash

  def sorted_terms(self):
    '''Terms in graded lexicographic order, highest first'''
    return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

  def __repr__(self):
    if not self.terms:
      return '0'
    names = ['x%d' % (i + 1) for i in range(self.num_x)] + ['p%d' % (i + 1) for i in range(self.num_p)]
    out = []
    for e, c in self.sorted_terms():
      mono = '*'.join(n if k == 1 else '%s^%d' % (n, k) for n, k in zip(names, e) if k)
      out.append('%s%s' % (utils.ratstr(c), '*' + mono if mono else ''))
    return ' + '.join(out)

  def coefficient(self, e):
    return self.terms.get(tuple(e), ZERO)

  def degree(self):
    '''Total degree, -1 for the zero polynomial'''
    return max((sum(e) for e in self.terms), default=-1)

  def pdegree(self):
    '''Degree in the p-variables alone'''
    return max((sum(e[self.num_x:]) for e in self.terms), default=-1)

  def is_homogeneous(self, d=None):
    degs = {sum(e) for e in self.terms}
    if d is not None:
      return degs <= {d}
    return len(degs) <= 1

  def homogeneous_part(self, d):
    return self._new({e: c for e, c in self.terms.items() if sum(e) == d})

  def truncate(self, maxdeg):
    return self._new({e: c for e, c in self.terms.items() if sum(e) <= maxdeg})

  def diff(self, i):
    '''Partial derivative with respect to the i-th variable'''
    terms = {}
    for e, c in self.terms.items():
      if e[i]:
        ne = list(e)
        ne[i] -= 1
        terms[tuple(ne)] = c * e[i]
    return self._new(terms)

  def evaluate(self, values):
    '''Value at a rational point given for all variables'''
    values = [la.Q(v) for v in values]
    total = ZERO
    for e, c in self.terms.items():
      t = c
      for v, k in zip(values, e):
        if k:
          t *= v ** k
          if not t:
            break
      total += t
    return total

  def substitute(self, polys, maxdeg=None):
    '''Replaces every variable by the given polynomial (all in one common target ring)'''
    if len(polys) != self.nvars:
      raise utils.InvalidParamsError('Expected %d substitutions, got %d' % (self.nvars, len(polys)))
    target = polys[0] if polys else None
    out = MPoly(target.num_x, target.num_p) if target is not None else MPoly(0, 0)
    powers = [[MPoly.const(p.num_x, p.num_p, 1)] for p in polys]
    for e, c in self.terms.items():
      t = MPoly.const(out.num_x, out.num_p, c)
      for i, k in enumerate(e):
        if k:
          while len(powers[i]) <= k:
            powers[i].append(powers[i][-1].mul(polys[i], maxdeg))
          t = t.mul(powers[i][k], maxdeg)
      out = out + t
    return out

  def shift(self, point):
    '''Translates the origin: returns f(v + point)'''
    gens = [MPoly.gen(self.num_x, self.num_p, i) + la.Q(a) for i, a in enumerate(point)]
    return self.substitute(gens)

  def embed(self, num_x, num_p, xoffset=0, poffset=0):
    '''Places the polynomial into a larger ring, shifting x and p variables by the given offsets'''
    terms = {}
    for e, c in self.terms.items():
      ne = [0] * (num_x + num_p)
      for i in range(self.num_x):
        ne[xoffset + i] = e[i]
      for i in range(self.num_p):
        ne[num_x + poffset + i] = e[self.num_x + i]
      terms[tuple(ne)] = c
    p = MPoly(num_x, num_p)
    p.terms = terms
    return p

  def tojson(self):
    return [{'exp': list(e), 'coef': utils.ratstr(c)} for e, c in self.sorted_terms()]

  @classmethod
  def fromjson(cls, num_x, num_p, items):
    try:
      return cls(num_x, num_p, {tuple(int(k) for k in t['exp']): utils.ratparse(t['coef']) for t in items})
    except (KeyError, TypeError) as e:
      raise utils.InvalidParamsError('Malformed polynomial term list: %s' % e)


def monomials(n, d):
  '''Exponent tuples of total degree d in n variables, in graded lexicographic order (highest first)'''
  if n == 0:
    return [()] if d == 0 else []
  if n == 1:
    return [(d,)]
  return [(a,) + rest for a in range(d, -1, -1) for rest in monomials(n - 1, d - a)]


def poisson(f, g):
  '''Poisson bracket of the form dx_1^dp_r - dx_2^dp_{r-1} + ...:
  {f,g} = sum_i (-1)^(i+1) (df/dx_i dg/dp_{r+1-i} - df/dp_{r+1-i} dg/dx_i)'''
  f._ring(g)
  r = f.num_x
  if f.num_p != r:
    raise utils.InvalidParamsError('The Poisson bracket needs as many p as x variables, got (%d,%d)' %
                                   (f.num_x, f.num_p))
  out = MPoly(r, r)
  for i in range(r):
    pi = r + (r - 1 - i)
    term = f.diff(i) * g.diff(pi) - f.diff(pi) * g.diff(i)
    out = out + (term if i % 2 == 0 else -term)
  return out


def linear_form(r, vec):
  '''The linear polynomial of a vector of V: e_i <-> x_i, f_i <-> p_i'''
  return MPoly.linear(r, r, vec)


def linear_vector(r, f):
  '''Inverse of linear_form for a homogeneous linear polynomial'''
  if not f.is_homogeneous(1) and f:
    raise utils.ValidationError('Expected a linear polynomial, got %s' % f)
  out = [ZERO] * (2 * r)
  for e, c in f.terms.items():
    out[e.index(1)] = c
  return out


def ad_matrix(F):
  '''The matrix of g -> {F, g} on linear polynomials, for a quadratic F'''
  r = F.num_x
  cols = [linear_vector(r, poisson(F, MPoly.gen(r, r, b))) for b in range(2 * r)]
  return la.MatQ.fromcolumns(cols, 2 * r)


_hamcache = {}


def _hamsolver(r):
  if r not in _hamcache:
    quads = [MPoly(r, r, {e: ONE}) for e in monomials(2 * r, 2)]
    _hamcache[r] = (quads, la.SpanSolver([ad_matrix(q).flatten() for q in quads]))
  return _hamcache[r]


def hamiltonian_of(A):
  '''The quadratic F with {F, l} = A.l on linear forms, for A symplectic w.r.t. the Poisson pairing'''
  if A.rows != A.cols or A.rows % 2:
    raise utils.InvalidParamsError('Expected an even square matrix, got %dx%d' % (A.rows, A.cols))
  r = A.rows // 2
  quads, solver = _hamsolver(r)
  coords = solver.solve(A.flatten())
  if coords is None:
    raise utils.InvalidParamsError('The matrix does not preserve the symplectic form')
  out = MPoly(r, r)
  for q, c in zip(quads, coords):
    if c:
      out = out + q.scale(c)
  return out


def shift_transport(f, r):
  '''Moves a polynomial from the coordinates of the curve (1, t, .., t^(r-1)) to those of the
  curve a_i(t) = t^(r-i)/(r-i)!, whose ideal is stable under x_i -> x_(i+1): y_j = (j-1)! x_(r+1-j)'''
  subs = [MPoly.xvar(r, f.num_p, r - j).scale(factorial(j - 1)) for j in range(1, r + 1)]
  subs += [MPoly.pvar(r, f.num_p, i) for i in range(f.num_p)]
  return f.substitute(subs)


class GradedPiece:
  '''A space of homogeneous polynomials of one degree in the x-variables of an (r, num_p) ring'''

  def __init__(self, degree, polys, r, num_p=None):
    self.degree = degree
    self.r = r
    self.num_p = r if num_p is None else num_p
    self.monomials = monomials(r, degree)
    self._index = {m: i for i, m in enumerate(self.monomials)}
    self.space = la.Subspace(len(self.monomials), [self._vector(f) for f in polys])

  @classmethod
  def fromspace(cls, degree, r, space, num_p=None):
    piece = cls(degree, [], r, num_p)
    piece.space = space
    return piece

  def _vector(self, f):
    if f.num_x != self.r or f.num_p != self.num_p:
      raise utils.InvalidParamsError('Polynomial ring (%d,%d) does not match (%d,%d)' %
                                     (f.num_x, f.num_p, self.r, self.num_p))
    v = [ZERO] * len(self.monomials)
    for e, c in f.terms.items():
      idx = self._index.get(e[:self.r]) if not any(e[self.r:]) else None
      if idx is None:
        raise utils.InvalidParamsError('%s is not homogeneous of degree %d in x' % (f, self.degree))
      v[idx] = c
    return v

  def _poly(self, vec):
    pad = (0,) * self.num_p
    return MPoly(self.r, self.num_p, {m + pad: c for m, c in zip(self.monomials, vec) if c})

  @property
  def dim(self):
    return self.space.dim

  @property
  def basis(self):
    '''The canonical basis polynomials'''
    return [self._poly(row) for row in self.space.rows]

  @property
  def coord(self):
    '''The basis expressed in the monomial basis, one column per basis element'''
    return self.space.basis

  def contains(self, f):
    if not f:
      return True
    if not f.is_homogeneous(self.degree):
      return False
    try:
      return self.space.contains(self._vector(f))
    except utils.InvalidParamsError:
      return False

  def times_linear(self):
    '''The span of x_i * F over all x_i and all F in the piece'''
    out = []
    for F in self.basis:
      for i in range(self.r):
        out.append(F * MPoly.xvar(self.r, self.num_p, i))
    return GradedPiece(self.degree + 1, out, self.r, self.num_p)

  def __eq__(self, other):
    return isinstance(other, GradedPiece) and (self.degree, self.r, self.num_p, self.space) == \
        (other.degree, other.r, other.num_p, other.space)

  def __hash__(self):
    return hash((self.degree, self.r, self.space))

  def __repr__(self):
    return 'GradedPiece(degree=%d, r=%d, dim=%d)' % (self.degree, self.r, self.dim)

  def tojson(self):
    return {'degree': self.degree, 'r': self.r, 'dim': self.dim, 'basis': [f.tojson() for f in self.basis]}


def veronese_jet(r, b):
  '''The family sum_{j<=b} lambda_j c^(j)(t) along the curve c(t) = (1, t, .., t^(r-1)).
  Returns r polynomials in the parameters (t, lambda_0, .., lambda_b)'''
  if r < 1 or b < 0 or b > r - 1:
    raise utils.InvalidParamsError('Jet order %d out of range for r=%d' % (b, r))
  nparams = b + 2
  out = []
  for i in range(r):
    terms = {}
    for j in range(min(i, b) + 1):
      e = [0] * nparams
      e[0] = i - j
      e[1 + j] = 1
      terms[tuple(e)] = Fraction(factorial(i), factorial(i - j))
    out.append(MPoly(nparams, 0, terms))
  return out


def parse_variety(text):
  '''Parses "tangential:B", "secant:S,B" or "curve" into a (points, order) pair'''
  try:
    kind, _, args = text.partition(':')
    if kind == 'curve':
      return (1, 0)
    if kind == 'tangential':
      return (1, int(args))
    if kind == 'secant':
      s, b = args.split(',')
      return (int(s), int(b))
  except ValueError:
    pass
  raise utils.InvalidParamsError('Invalid variety %r, expected tangential:B or secant:S,B' % text)


def vanishing_ideal_piece(r, variety, d, num_p=None):
  '''Degree-d forms in x_1..x_r vanishing on the variety, given as (s, b): the secant variety through
  s points of the b-th tangential developable of the rational normal curve (s=1: the developable itself)'''
  s, b = variety
  if r < 2 or s < 1 or d < 0:
    raise utils.InvalidParamsError('Invalid ideal request r=%d variety=%s degree=%d' % (r, variety, d))
  jets = veronese_jet(r, b)
  tstart = time.time()
  nparams = s * (b + 2)
  comps = [MPoly(nparams, 0)] * r
  for f in range(s):
    comps = [c + j.embed(nparams, 0, xoffset=f * (b + 2)) for c, j in zip(comps, jets)]
  cache = {(0,) * r: MPoly.const(nparams, 0, 1)}

  def image(e):
    if e not in cache:
      i = max(k for k, a in enumerate(e) if a)
      prev = list(e)
      prev[i] -= 1
      cache[e] = image(tuple(prev)) * comps[i]
    return cache[e]

  monos = monomials(r, d)
  rows = {}
  for col, m in enumerate(monos):
    for pe, c in image(m).terms.items():
      rows.setdefault(pe, {})[col] = c
  space = la.nullspace(rows.values(), len(monos))
  log.debug('msg="Vanishing ideal piece computed" r="%d" secant="%d" order="%d" degree="%d" dim="%d" '
            'elapsedTimems="%.1f"' % (r, s, b, d, space.dim, (time.time() - tstart) * 1000))
  return GradedPiece.fromspace(d, r, space, num_p)


def _permsign(perm):
  inversions = sum(1 for i, j in combinations(range(len(perm)), 2) if perm[i] > perm[j])
  return -1 if inversions % 2 else 1


def polydet(matrix):
  '''Leibniz determinant of a square matrix of polynomials'''
  n = len(matrix)
  out = None
  for perm in permutations(range(n)):
    t = matrix[0][perm[0]]
    for i in range(1, n):
      t = t * matrix[i][perm[i]]
    t = t.scale(_permsign(perm))
    out = t if out is None else out + t
  return out


def hankel_minors(r, alpha, size, num_p=None):
  '''The span of all size x size minors of the (alpha+1) x (r-alpha) Hankel matrix of x_1..x_r'''
  if alpha < 1 or 2 * alpha > r or size < 1 or size > min(alpha + 1, r - alpha):
    raise utils.InvalidParamsError('Invalid Hankel request r=%d alpha=%d size=%d' % (r, alpha, size))
  num_p = r if num_p is None else num_p
  H = [[MPoly.xvar(r, num_p, i + j) for j in range(r - alpha)] for i in range(alpha + 1)]
  minors = []
  for rows in combinations(range(alpha + 1), size):
    for cols in combinations(range(r - alpha), size):
      minors.append(polydet([[H[i][j] for j in cols] for i in rows]))
  return GradedPiece(size, minors, r, num_p)


def init(_config, inlog):
  '''Initializes the module logger'''
  global log     # pylint: disable=global-statement
  log = inlog
