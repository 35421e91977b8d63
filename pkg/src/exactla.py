'''
exactla.py

Exact linear algebra over the rationals: dense matrices, reduced row-echelon
forms, kernels and a canonical subspace calculus
'''

from fractions import Fraction
import labutils as utils

ZERO = Fraction(0)
ONE = Fraction(1)


def Q(x):
  '''Coerces an integer, string or Fraction to an exact rational. Floats are refused'''
  if isinstance(x, Fraction):
    return x
  if isinstance(x, float):
    raise utils.InvalidParamsError('Floating point value %r refused, use an exact rational' % x)
  return utils.ratparse(x)


class MatQ:
  '''An immutable dense matrix of rationals, stored row-major'''
  __slots__ = ('rows', 'cols', '_e', '_hash')

  def __init__(self, rows, cols, entries):
    entries = tuple(Q(x) for x in entries)
    if len(entries) != rows * cols:
      raise utils.InvalidParamsError('Expected %d entries for a %dx%d matrix, got %d' %
                                     (rows * cols, rows, cols, len(entries)))
    self.rows = rows
    self.cols = cols
    self._e = entries
    self._hash = None

  @classmethod
  def fromrows(cls, rows, cols=None):
    '''Builds a matrix from a list of rows'''
    rows = [list(r) for r in rows]
    if cols is None:
      cols = len(rows[0]) if rows else 0
    for r in rows:
      if len(r) != cols:
        raise utils.InvalidParamsError('Ragged rows: expected %d columns, got %d' % (cols, len(r)))
    return cls(len(rows), cols, [x for r in rows for x in r])

  @classmethod
  def fromcolumns(cls, columns, rows=None):
    '''Builds a matrix whose columns are the given vectors'''
    columns = [list(c) for c in columns]
    if rows is None:
      rows = len(columns[0]) if columns else 0
    return cls.fromrows([[c[i] for c in columns] for i in range(rows)], len(columns))

  @classmethod
  def identity(cls, n):
    return cls(n, n, [ONE if i == j else ZERO for i in range(n) for j in range(n)])

  @classmethod
  def zeros(cls, rows, cols):
    return cls(rows, cols, [ZERO] * (rows * cols))

  @classmethod
  def fromflat(cls, flat, source_dim, target_dim):
    '''Inverse of flatten: entry (j, a) of a target_dim x source_dim map sits at a*target_dim + j'''
    return cls.fromrows([[flat[a * target_dim + j] for a in range(source_dim)] for j in range(target_dim)],
                        source_dim)

  def __getitem__(self, ij):
    i, j = ij
    return self._e[i * self.cols + j]

  def row(self, i):
    return list(self._e[i * self.cols:(i + 1) * self.cols])

  def column(self, j):
    return [self._e[i * self.cols + j] for i in range(self.rows)]

  def tolist(self):
    return [self.row(i) for i in range(self.rows)]

  def flatten(self):
    '''Flattens a linear map source-major: entry (j, a) goes to a*rows + j'''
    return [self._e[j * self.cols + a] for a in range(self.cols) for j in range(self.rows)]

  def transpose(self):
    return MatQ.fromrows([self.column(j) for j in range(self.cols)], self.rows)

  def _samesize(self, other):
    if not isinstance(other, MatQ) or (self.rows, self.cols) != (other.rows, other.cols):
      raise utils.InvalidParamsError('Matrix size mismatch')

  def __add__(self, other):
    self._samesize(other)
    return MatQ(self.rows, self.cols, [a + b for a, b in zip(self._e, other._e)])

  def __sub__(self, other):
    self._samesize(other)
    return MatQ(self.rows, self.cols, [a - b for a, b in zip(self._e, other._e)])

  def __neg__(self):
    return MatQ(self.rows, self.cols, [-a for a in self._e])

  def __mul__(self, other):
    if isinstance(other, MatQ):
      if self.cols != other.rows:
        raise utils.InvalidParamsError('Cannot multiply %dx%d by %dx%d' %
                                       (self.rows, self.cols, other.rows, other.cols))
      ocols = [other.column(j) for j in range(other.cols)]
      out = []
      for i in range(self.rows):
        r = self._e[i * self.cols:(i + 1) * self.cols]
        out.extend(sum((a * b for a, b in zip(r, c) if a and b), ZERO) for c in ocols)
      return MatQ(self.rows, other.cols, out)
    c = Q(other)
    return MatQ(self.rows, self.cols, [c * a for a in self._e])

  def __rmul__(self, other):
    return self.__mul__(other)

  def apply(self, vec):
    '''Returns the matrix-vector product'''
    if len(vec) != self.cols:
      raise utils.InvalidParamsError('Vector of length %d does not match %d columns' % (len(vec), self.cols))
    vec = [Q(v) for v in vec]
    return [sum((a * b for a, b in zip(self._e[i * self.cols:(i + 1) * self.cols], vec) if a and b), ZERO)
            for i in range(self.rows)]

  def bilinear(self, v, w):
    '''Returns v^T M w'''
    return sum((a * b for a, b in zip(v, self.apply(w)) if a and b), ZERO)

  def commutator(self, other):
    return self * other - other * self

  def is_zero(self):
    return not any(self._e)

  def is_skew(self):
    return self.rows == self.cols and \
        all(self[i, j] == -self[j, i] for i in range(self.rows) for j in range(i, self.cols))

  def __eq__(self, other):
    return isinstance(other, MatQ) and (self.rows, self.cols, self._e) == (other.rows, other.cols, other._e)

  def __hash__(self):
    if self._hash is None:
      self._hash = hash((self.rows, self.cols, self._e))
    return self._hash

  def __repr__(self):
    return 'MatQ(%d, %d, %s)' % (self.rows, self.cols, utils.matjson(self))


class Echelon:
  '''Incremental sparse reduced row-echelon form. Rows are dicts column -> nonzero Fraction,
  each pivot row normalized to 1 at its pivot (its smallest column) and zero at every other pivot'''

  def __init__(self, ncols):
    self.ncols = ncols
    self.pivots = {}

  def reduce(self, vec):
    '''Returns the remainder of a sparse vector modulo the current rows'''
    v = {c: x for c, x in vec.items() if x}
    for p in [c for c in v if c in self.pivots]:
      x = v.get(p)
      if not x:
        continue
      for c, y in self.pivots[p].items():
        z = v.get(c, ZERO) - x * y
        if z:
          v[c] = z
        else:
          v.pop(c, None)
    return v

  def add(self, vec):
    '''Inserts a sparse vector, returns True when it increased the rank'''
    v = self.reduce(vec)
    if not v:
      return False
    p = min(v)
    inv = ONE / v[p]
    v = {c: x * inv for c, x in v.items()}
    for row in self.pivots.values():
      x = row.get(p)
      if x:
        for c, y in v.items():
          z = row.get(c, ZERO) - x * y
          if z:
            row[c] = z
          else:
            del row[c]
    self.pivots[p] = v
    return True

  @property
  def rank(self):
    return len(self.pivots)

  def rows(self):
    '''Returns the pivot rows as sparse dicts, ordered by pivot column'''
    return [self.pivots[p] for p in sorted(self.pivots)]

  def denserows(self):
    return [tuple(r.get(c, ZERO) for c in range(self.ncols)) for r in self.rows()]

  def nullbasis(self):
    '''Returns a basis of the solution space of the homogeneous system, one vector per free column'''
    free = [c for c in range(self.ncols) if c not in self.pivots]
    basis = []
    for f in free:
      v = [ZERO] * self.ncols
      v[f] = ONE
      for p, row in self.pivots.items():
        x = row.get(f)
        if x:
          v[p] = -x
      basis.append(v)
    return basis


def _sparse(vec):
  return {c: Q(x) for c, x in enumerate(vec) if x}


def rref(m):
  '''Returns the reduced row-echelon form of m, the pivot columns in increasing order and the rank'''
  ech = Echelon(m.cols)
  for i in range(m.rows):
    ech.add(_sparse(m.row(i)))
  rows = ech.denserows()
  rows += [[ZERO] * m.cols] * (m.rows - len(rows))
  return MatQ.fromrows(rows, m.cols) if m.rows else MatQ(0, m.cols, []), sorted(ech.pivots), ech.rank


def rank(m):
  return rref(m)[2]


def det(m):
  '''Exact determinant by fraction-exact Gaussian elimination'''
  if m.rows != m.cols:
    raise utils.InvalidParamsError('Determinant of a non-square %dx%d matrix' % (m.rows, m.cols))
  a = m.tolist()
  n = m.rows
  d = ONE
  for c in range(n):
    p = next((r for r in range(c, n) if a[r][c]), None)
    if p is None:
      return ZERO
    if p != c:
      a[c], a[p] = a[p], a[c]
      d = -d
    d *= a[c][c]
    for r in range(c + 1, n):
      if a[r][c]:
        f = a[r][c] / a[c][c]
        a[r] = [x - f * y for x, y in zip(a[r], a[c])]
  return d


def nullspace(rows, ncols):
  '''Solution space of a sparse homogeneous system given as dicts column -> coefficient'''
  ech = Echelon(ncols)
  for r in rows:
    ech.add(r)
  return Subspace(ncols, ech.nullbasis())


def kernel(m):
  '''Returns the null space of m as a Subspace'''
  return nullspace((_sparse(m.row(i)) for i in range(m.rows)), m.cols)


class Subspace:
  '''A linear subspace of Q^n, kept as the nonzero rows of its reduced row-echelon form.
  Equal subspaces have identical representations'''
  __slots__ = ('ambient_dim', 'rows', '_pivots')

  def __init__(self, ambient_dim, vectors=()):
    ech = Echelon(ambient_dim)
    for v in vectors:
      v = list(v)
      if len(v) != ambient_dim:
        raise utils.InvalidParamsError('Vector of length %d in a subspace of Q^%d' % (len(v), ambient_dim))
      ech.add(_sparse(v))
    self.ambient_dim = ambient_dim
    self.rows = tuple(ech.denserows())
    self._pivots = tuple(sorted(ech.pivots))

  @classmethod
  def zero(cls, n):
    return cls(n)

  @classmethod
  def full(cls, n):
    return cls(n, MatQ.identity(n).tolist())

  @classmethod
  def coordinate(cls, n, indices):
    '''The span of the given standard basis vectors'''
    return cls(n, [[ONE if c == i else ZERO for c in range(n)] for i in indices])

  @property
  def dim(self):
    return len(self.rows)

  @property
  def pivots(self):
    return list(self._pivots)

  @property
  def basis(self):
    '''The canonical basis vectors as columns of a matrix'''
    return MatQ.fromcolumns(self.rows, self.ambient_dim) if self.rows else MatQ(self.ambient_dim, 0, [])

  def vectors(self):
    return [list(r) for r in self.rows]

  def __eq__(self, other):
    return isinstance(other, Subspace) and self.ambient_dim == other.ambient_dim and self.rows == other.rows

  def __hash__(self):
    return hash((self.ambient_dim, self.rows))

  def __repr__(self):
    return 'Subspace(%d, dim=%d)' % (self.ambient_dim, self.dim)

  def _check(self, other):
    if self.ambient_dim != other.ambient_dim:
      raise utils.InvalidParamsError('Ambient dimension mismatch: %d vs %d' % (self.ambient_dim, other.ambient_dim))

  def _remainder(self, v):
    '''Reduces v by the canonical rows, returns the remainder as a dense list'''
    v = [Q(x) for x in v]
    for p, row in zip(self._pivots, self.rows):
      x = v[p]
      if x:
        v = [a - x * b for a, b in zip(v, row)]
    return v

  def contains(self, v):
    '''True when the vector (or every vector of the given Subspace) lies in this subspace'''
    if isinstance(v, Subspace):
      self._check(v)
      return v.dim <= self.dim and all(self.contains(r) for r in v.rows)
    if len(v) != self.ambient_dim:
      raise utils.InvalidParamsError('Vector of length %d in Q^%d' % (len(v), self.ambient_dim))
    return not any(self._remainder(v))

  def coordinates(self, v):
    '''Coordinates of v in the canonical basis, or None when v is not in the subspace'''
    if not self.contains(v):
      return None
    return [Q(v[p]) for p in self._pivots]

  def combine(self, coords):
    '''The vector with the given coordinates in the canonical basis'''
    out = [ZERO] * self.ambient_dim
    for c, row in zip(coords, self.rows):
      if c:
        out = [a + c * b for a, b in zip(out, row)]
    return out

  def sum(self, other):
    self._check(other)
    return Subspace(self.ambient_dim, self.rows + other.rows)

  def annihilator(self):
    '''The orthogonal complement for the standard pairing'''
    return nullspace([_sparse(r) for r in self.rows], self.ambient_dim)

  def intersection(self, other):
    self._check(other)
    return self.annihilator().sum(other.annihilator()).annihilator()

  def skew_complement(self, form):
    '''{v : form(v, w) = 0 for all w in the subspace}; the form must be skew-symmetric'''
    if form.rows != self.ambient_dim or not form.is_skew():
      raise utils.InvalidParamsError('The form is not a skew-symmetric %dx%d matrix' %
                                     (self.ambient_dim, self.ambient_dim))
    return nullspace([_sparse(form.apply(w)) for w in self.rows], self.ambient_dim)

  def restrict(self, indices):
    '''Projection onto the given coordinates'''
    indices = list(indices)
    return Subspace(len(indices), [[r[i] for i in indices] for r in self.rows])

  def image(self, m):
    '''Image of the subspace under the matrix m'''
    if m.cols != self.ambient_dim:
      raise utils.InvalidParamsError('Map with %d columns applied to Q^%d' % (m.cols, self.ambient_dim))
    return Subspace(m.rows, [m.apply(r) for r in self.rows])


class SpanSolver:
  '''Coordinates with respect to a fixed, non-canonical, independent list of vectors'''

  def __init__(self, vectors):
    self.vectors = [[Q(x) for x in v] for v in vectors]
    self.size = len(self.vectors)
    self.dim = len(self.vectors[0]) if self.vectors else 0
    self._ech = Echelon(self.dim + self.size)
    for i, v in enumerate(self.vectors):
      tagged = _sparse(v)
      tagged[self.dim + i] = ONE
      self._ech.add(tagged)
    if any(min(r) >= self.dim for r in self._ech.rows()):
      raise utils.ValidationError('The spanning list of %d vectors is linearly dependent' % self.size)

  def solve(self, w):
    '''Returns c with w = sum c_i v_i, or None when w is outside the span'''
    rem = self._ech.reduce(_sparse(w))
    if any(c < self.dim for c in rem):
      return None
    return [-rem.get(self.dim + i, ZERO) for i in range(self.size)]


def subspace_ops(a, b, form=None):
  '''Sum, intersection and containment (b inside a) of two subspaces, and the skew complement
  of a when a form is given'''
  a._check(b)
  return {
    'sum': a.sum(b),
    'intersection': a.intersection(b),
    'contains': a.contains(b),
    'skew_complement': a.skew_complement(form) if form is not None else None,
  }
