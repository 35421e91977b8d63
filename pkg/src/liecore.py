'''
liecore.py

Finite-dimensional Lie algebras by structure constants, graded nilpotent
algebras, Heisenberg extensions, and the standard, modified and Tanaka
prolongations of subalgebras of gl(V)
'''

import time
from fractions import Fraction
import exactla as la
import labutils as utils

log = utils.log

# the hard cap on prolongation degrees, as a multiple of dim V / 2
hardcapfactor = 2

ZERO = Fraction(0)
ONE = Fraction(1)


class LieAlg:
  '''A Lie algebra given by its structure constants c_ij^k, stored for i < j only'''

  def __init__(self, dim, labels=None, brackets=None, validate=True):
    self.dim = dim
    self.labels = list(labels) if labels else ['e%d' % (i + 1) for i in range(dim)]
    if len(self.labels) != dim:
      raise utils.InvalidParamsError('Got %d labels for a %d-dimensional algebra' % (len(self.labels), dim))
    self.c = {}
    for (i, j), coeffs in (brackets or {}).items():
      if i == j:
        if any(coeffs.values()):
          raise utils.ValidationError('Nonzero bracket [%s,%s]' % (self.labels[i], self.labels[i]))
        continue
      sign = ONE if i < j else -ONE
      key = (min(i, j), max(i, j))
      out = self.c.setdefault(key, {})
      for k, x in coeffs.items():
        x = sign * la.Q(x)
        s = out.get(k, ZERO) + x
        if s:
          out[k] = s
        else:
          out.pop(k, None)
      if not out:
        del self.c[key]
    if validate:
      self.validate_jacobi()

  def bracket_basis(self, i, j):
    '''[e_i, e_j] as a sparse dict'''
    if i == j:
      return {}
    if i < j:
      return self.c.get((i, j), {})
    return {k: -x for k, x in self.c.get((j, i), {}).items()}

  def bracket(self, u, v):
    '''The bracket of two coordinate vectors'''
    out = [ZERO] * self.dim
    nu = [(i, x) for i, x in enumerate(u) if x]
    nv = [(j, y) for j, y in enumerate(v) if y]
    for i, x in nu:
      for j, y in nv:
        for k, z in self.bracket_basis(i, j).items():
          out[k] += x * y * z
    return out

  def _sparsebracket(self, u, v):
    out = {}
    for i, x in u.items():
      for j, y in v.items():
        for k, z in self.bracket_basis(i, j).items():
          s = out.get(k, ZERO) + x * y * z
          if s:
            out[k] = s
          else:
            out.pop(k, None)
    return out

  def validate_jacobi(self):
    '''Checks the Jacobi identity exactly on all basis triples'''
    for i in range(self.dim):
      for j in range(i + 1, self.dim):
        for k in range(j + 1, self.dim):
          total = {}
          for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for m, x in self._sparsebracket(self.bracket_basis(a, b), {c: ONE}).items():
              total[m] = total.get(m, ZERO) + x
          if any(total.values()):
            raise utils.ValidationError('Jacobi identity fails on (%s,%s,%s)' %
                                        (self.labels[i], self.labels[j], self.labels[k]))

  @classmethod
  def from_matrices(cls, mats, labels=None):
    '''The structure constants of a matrix Lie algebra with the given basis; fails when not closed'''
    mats = list(mats)
    solver = la.SpanSolver([m.flatten() for m in mats])
    brackets = {}
    for i in range(len(mats)):
      for j in range(i + 1, len(mats)):
        coords = solver.solve(mats[i].commutator(mats[j]).flatten())
        if coords is None:
          raise utils.ValidationError('The matrix space is not closed under commutator at (%d,%d)' % (i, j))
        brackets[(i, j)] = {k: x for k, x in enumerate(coords) if x}
    return cls(len(mats), labels, brackets)

  def structure_matrix(self, u):
    '''The matrix of ad_u'''
    return la.MatQ.fromcolumns([self.bracket(u, [ONE if k == j else ZERO for k in range(self.dim)])
                                for j in range(self.dim)], self.dim)

  def centralizer(self, subset=None):
    '''{x : [x, y] = 0 for all y in subset}, by default the center'''
    if subset is None:
      subset = la.Subspace.full(self.dim).vectors()
    rows = []
    for y in subset:
      # [x, y] = sum_i x_i [e_i, y]
      images = [self.bracket([ONE if k == i else ZERO for k in range(self.dim)], y) for i in range(self.dim)]
      for m in range(self.dim):
        row = {i: images[i][m] for i in range(self.dim) if images[i][m]}
        if row:
          rows.append(row)
    return la.nullspace(rows, self.dim)

  def bracket_spaces(self, a, b):
    '''The span of [a, b] for two subspaces'''
    return la.Subspace(self.dim, [self.bracket(u, v) for u in a.rows for v in b.rows])

  def lower_central_series(self):
    '''Dimensions of g, [g,g], [g,[g,g]], ... down to stabilization'''
    full = la.Subspace.full(self.dim)
    series = [full]
    while True:
      nxt = self.bracket_spaces(full, series[-1])
      if nxt == series[-1]:
        break
      series.append(nxt)
      if nxt.dim == 0:
        break
    return [s.dim for s in series]

  def generation_depth(self, vectors):
    '''Number of bracket steps needed for the given vectors to span the algebra, None if they never do'''
    gens = la.Subspace(self.dim, vectors)
    current = gens
    layer = gens
    depth = 1
    while current.dim < self.dim:
      layer = self.bracket_spaces(gens, layer)
      nxt = current.sum(layer)
      if nxt == current:
        return None
      current = nxt
      depth += 1
    return depth

  def tojson(self, degrees=None):
    out = {'dim': self.dim, 'labels': self.labels, 'brackets': []}
    for (i, j) in sorted(self.c):
      out['brackets'].append({'i': i, 'j': j,
                              'coeffs': {str(k): utils.ratstr(x) for k, x in sorted(self.c[(i, j)].items())}})
    if degrees is not None:
      out['degrees'] = list(degrees)
    return out

  @classmethod
  def fromjson(cls, obj):
    try:
      brackets = {(int(b['i']), int(b['j'])): {int(k): utils.ratparse(x) for k, x in b['coeffs'].items()}
                  for b in obj['brackets']}
      return cls(int(obj['dim']), obj.get('labels'), brackets)
    except (KeyError, TypeError, ValueError) as e:
      raise utils.InvalidParamsError('Malformed Lie algebra description: %s' % e)


class GradedLieAlg:
  '''A Lie algebra with an integer degree per basis element, compatible with the bracket'''

  def __init__(self, alg, degrees):
    if len(degrees) != alg.dim:
      raise utils.InvalidParamsError('Got %d degrees for a %d-dimensional algebra' % (len(degrees), alg.dim))
    self.alg = alg
    self.degrees = list(degrees)
    for (i, j), coeffs in alg.c.items():
      for k in coeffs:
        if self.degrees[k] != self.degrees[i] + self.degrees[j]:
          raise utils.ValidationError('Bracket [%s,%s] leaves degree %d' %
                                      (alg.labels[i], alg.labels[j], self.degrees[i] + self.degrees[j]))

  @property
  def dim(self):
    return self.alg.dim

  def piece(self, d):
    '''Basis indices of the degree-d piece'''
    return [i for i, x in enumerate(self.degrees) if x == d]

  def tojson(self):
    return self.alg.tojson(self.degrees)


class LinMapSpace:
  '''A subspace of Hom(Q^source_dim, Q^target_dim), canonical after flattening source-major'''

  def __init__(self, source_dim, target_dim, basis=()):
    self.source_dim = source_dim
    self.target_dim = target_dim
    vectors = []
    for b in basis:
      if isinstance(b, la.MatQ):
        if (b.rows, b.cols) != (target_dim, source_dim):
          raise utils.InvalidParamsError('Map of size %dx%d in Hom(Q^%d,Q^%d)' %
                                         (b.rows, b.cols, source_dim, target_dim))
        b = b.flatten()
      vectors.append(b)
    self.space = la.Subspace(source_dim * target_dim, vectors)

  @classmethod
  def fromspace(cls, source_dim, target_dim, space):
    out = cls(source_dim, target_dim)
    out.space = space
    return out

  @property
  def dim(self):
    return self.space.dim

  def matrices(self):
    '''The canonical basis as target_dim x source_dim matrices'''
    return [la.MatQ.fromflat(r, self.source_dim, self.target_dim) for r in self.space.rows]

  def value(self, j, a):
    '''The image of the a-th source basis vector under the j-th canonical basis map'''
    row = self.space.rows[j]
    return row[a * self.target_dim:(a + 1) * self.target_dim]

  def contains(self, m):
    return self.space.contains(m.flatten() if isinstance(m, la.MatQ) else m)

  def sum(self, other):
    return LinMapSpace.fromspace(self.source_dim, self.target_dim, self.space.sum(other.space))

  def __eq__(self, other):
    return isinstance(other, LinMapSpace) and (self.source_dim, self.target_dim, self.space) == \
        (other.source_dim, other.target_dim, other.space)

  def __hash__(self):
    return hash((self.source_dim, self.target_dim, self.space))

  def __repr__(self):
    return 'LinMapSpace(%d -> %d, dim=%d)' % (self.source_dim, self.target_dim, self.dim)


def build_flat_algebra(k, l):
  '''The graded nilpotent algebra with basis X, Y_1..Y_k, Z_1..Z_(k+l), eta and nonzero brackets
  [X,Y_i] = Y_(i+1), [X,Z_j] = Z_(j+1), [Y_1,Z_1] = eta'''
  if k < 2 or l < 0:
    raise utils.InvalidParamsError('Flat models need k >= 2 and l >= 0, got (%d,%d)' % (k, l))
  labels = ['X'] + ['Y%d' % i for i in range(1, k + 1)] + ['Z%d' % j for j in range(1, k + l + 1)] + ['eta']
  Y = lambda i: i
  Z = lambda j: k + j
  eta = 2 * k + l + 1
  brackets = {}
  for i in range(1, k):
    brackets[(0, Y(i))] = {Y(i + 1): ONE}
  for j in range(1, k + l):
    brackets[(0, Z(j))] = {Z(j + 1): ONE}
  brackets[(Y(1), Z(1))] = {eta: ONE}
  degrees = [-1] + [-i for i in range(1, k + 1)] + [-j for j in range(1, k + l + 1)] + [-2]
  return GradedLieAlg(LieAlg(len(labels), labels, brackets), degrees)


def flat_generators(k, l):
  '''Basis indices of X, Y_1, Z_1 in the flat algebra'''
  return [0, 1, k + 1]


def standard_form(n):
  '''The form with omega(e_i, e_(n/2+i)) = 1 on Q^n, n even'''
  if n < 2 or n % 2:
    raise utils.InvalidParamsError('A symplectic form needs an even positive dimension, got %d' % n)
  h = n // 2
  rows = [[ZERO] * n for _ in range(n)]
  for i in range(h):
    rows[i][h + i] = ONE
    rows[h + i][i] = -ONE
  return la.MatQ.fromrows(rows)


def heisenberg_extend(omega, allow_degenerate=False, subspace=None):
  '''The algebra V + R.eta with [v1, v2] = omega(v1, v2) eta, graded in degrees -1 and -2.
  A degenerate omega is accepted only with allow_degenerate, and then the optional subspace
  must meet the kernel of omega trivially'''
  n = omega.rows
  if not omega.is_skew():
    raise utils.InvalidParamsError('The form is not skew-symmetric')
  if n == 0 or la.det(omega) == 0:
    if not allow_degenerate:
      raise utils.InvalidParamsError('The form is degenerate')
    if subspace is not None and la.kernel(omega).intersection(subspace).dim:
      raise utils.InvalidParamsError('The subspace meets the kernel of the form')
  brackets = {}
  for a in range(n):
    for b in range(a + 1, n):
      if omega[a, b]:
        brackets[(a, b)] = {n: omega[a, b]}
  labels = ['e%d' % (a + 1) for a in range(n)] + ['eta']
  return GradedLieAlg(LieAlg(n + 1, labels, brackets), [-1] * n + [-2])


def conformal_factor(A, omega):
  '''The c with A^T omega + omega A = c omega, or None when A is not conformally symplectic'''
  S = A.transpose() * omega + omega * A
  n = omega.rows
  c = None
  for u in range(n):
    for v in range(n):
      if omega[u, v]:
        c = S[u, v] / omega[u, v]
        break
    if c is not None:
      break
  if c is None:
    return None
  return c if S == omega * c else None


def csp_rows(omega):
  '''Sparse rows of A^T omega + omega A = c omega, with A_{ju} at u*n + j and c at n*n'''
  n = omega.rows
  rows = []
  for u in range(n):
    for v in range(n):
      row = {}
      for j in range(n):
        if omega[j, v]:
          row[u * n + j] = row.get(u * n + j, ZERO) + omega[j, v]
        if omega[u, j]:
          row[v * n + j] = row.get(v * n + j, ZERO) + omega[u, j]
      if omega[u, v]:
        row[n * n] = -omega[u, v]
      row = {c: x for c, x in row.items() if x}
      if row:
        rows.append(row)
  return rows


def csp_algebra(omega):
  '''The conformal symplectic algebra of omega as a LinMapSpace in gl(V)'''
  n = omega.rows
  sol = la.nullspace(csp_rows(omega), n * n + 1)
  return LinMapSpace.fromspace(n, n, sol.restrict(range(n * n)))


def heisenberg_derivations(W, omega):
  '''Pairs (A, c_A) extending each canonical basis map of W to a degree-0 derivation of the
  Heisenberg algebra of omega'''
  out = []
  for A in W.matrices():
    c = conformal_factor(A, omega)
    if c is None:
      raise utils.InvalidParamsError('The degree-0 part is not made of derivations: a map does not preserve '
                                     'the form up to a scalar')
    out.append((A, c))
  return out


def _anchors(omega):
  n = omega.rows
  return [(a, b) for a in range(n) for b in range(a + 1, n) if omega[a, b]]


def _unitvec(n, a):
  return [ONE if i == a else ZERO for i in range(n)]


def _spencer_rows(W):
  '''S(phi)(e_a, e_b)_m as sparse rows in the unknowns c[a,j] = a*dim W + j'''
  n, T, m = W.source_dim, W.target_dim, W.dim
  values = [[W.value(j, b) for b in range(n)] for j in range(m)]
  S = {}
  for a in range(n):
    for b in range(n):
      if a == b:
        continue
      comps = []
      for mm in range(T):
        row = {}
        for j in range(m):
          x = values[j][b][mm]
          if x:
            row[a * m + j] = row.get(a * m + j, ZERO) + x
          y = values[j][a][mm]
          if y:
            row[b * m + j] = row.get(b * m + j, ZERO) - y
        comps.append({c: x for c, x in row.items() if x})
      S[(a, b)] = comps
  return S


def _combine(rows, scale, into):
  for c, x in rows.items():
    s = into.get(c, ZERO) + scale * x
    if s:
      into[c] = s
    else:
      into.pop(c, None)


def standard_prolongation(W):
  '''{phi in Hom(V, W) : phi(v1)(v2) = phi(v2)(v1)}, in coordinates of the canonical basis of W'''
  n, m = W.source_dim, W.dim
  S = _spencer_rows(W)
  rows = [r for a in range(n) for b in range(a + 1, n) for r in S[(a, b)] if r]
  return LinMapSpace.fromspace(n, m, la.nullspace(rows, n * m))


def _anchored_kernel(W, omega, S, v1, v2):
  '''Kernel of S(phi) - omega/omega(v1,v2) S(phi)(v1,v2)'''
  n, T, m = W.source_dim, W.target_dim, W.dim
  wbar = omega.bilinear(v1, v2)
  anchored = [dict() for _ in range(T)]
  for a in range(n):
    for b in range(n):
      if a != b and v1[a] and v2[b]:
        for mm in range(T):
          _combine(S[(a, b)][mm], v1[a] * v2[b], anchored[mm])
  rows = []
  for a in range(n):
    for b in range(a + 1, n):
      for mm in range(T):
        row = dict(S[(a, b)][mm])
        if omega[a, b]:
          _combine(anchored[mm], -omega[a, b] / wbar, row)
        if row:
          rows.append(row)
  return la.nullspace(rows, n * m)


def modified_prolongation(W, omega, anchor=None, check=True):
  '''{phi in Hom(V, W) : exists t with S(phi)(v1, v2) = omega(v1, v2) t}, where W is a subspace of
  Hom(V, T) and S is the Spencer alternation. With check, the kernel of the modified Spencer operator
  for the given anchor pair and for a second admissible pair are recomputed and compared'''
  n, T, m = W.source_dim, W.target_dim, W.dim
  if omega.rows != n or not omega.is_skew():
    raise utils.InvalidParamsError('Expected a skew-symmetric form on Q^%d' % n)
  anchors = [(_unitvec(n, a), _unitvec(n, b)) for a, b in _anchors(omega)]
  if anchor is not None:
    anchor = ([la.Q(x) for x in anchor[0]], [la.Q(x) for x in anchor[1]])
    if not omega.bilinear(anchor[0], anchor[1]):
      raise utils.InvalidParamsError('The anchor pair is isotropic for the form')
    anchors = [anchor] + [a for a in anchors if a != anchor]
  if not anchors:
    raise utils.InvalidParamsError('The form vanishes identically')
  tstart = time.time()
  S = _spencer_rows(W)
  rows = []
  for a in range(n):
    for b in range(a + 1, n):
      for mm in range(T):
        row = dict(S[(a, b)][mm])
        if omega[a, b]:
          row[n * m + mm] = -omega[a, b]
        if row:
          rows.append(row)
  sol = la.nullspace(rows, n * m + T).restrict(range(n * m))
  if check and m:
    for v1, v2 in anchors[:2]:
      if _anchored_kernel(W, omega, S, v1, v2) != sol:
        raise utils.ValidationError('The modified prolongation depends on the anchor pair')
  log.debug('msg="Modified prolongation computed" source="%d" target="%d" dimW="%d" dim="%d" '
            'elapsedTimems="%.1f"' % (n, T, m, sol.dim, (time.time() - tstart) * 1000))
  return LinMapSpace.fromspace(n, m, sol)


class TanakaProlongation:
  '''Degreewise solution of phi([x,y]) = [phi(x),y] + [x,phi(y)] over a depth-2 negative part'''

  def __init__(self, g_minus, g0):
    self.gm = g_minus
    if set(g_minus.degrees) - {-1, -2}:
      raise utils.InvalidParamsError('The negative part must live in degrees -1 and -2')
    self.ind = {-1: g_minus.piece(-1), -2: g_minus.piece(-2)}
    self.loc = {}
    for d, idx in self.ind.items():
      for pos, i in enumerate(idx):
        self.loc[i] = pos
    # generators of degree -1 first, so the leading block of every solution is its restriction to g_-1
    self.order = self.ind[-1] + self.ind[-2]
    n1, n2 = len(self.ind[-1]), len(self.ind[-2])
    if g0.source_dim != n1 or g0.target_dim != n1:
      raise utils.InvalidParamsError('The degree-0 part must act on the %d-dimensional degree -1 piece' % n1)
    self.g0 = g0
    self.dims = {-2: n2, -1: n1, 0: g0.dim}
    self.D0 = [(A, self._extend(A)) for A in g0.matrices()]
    self.spaces = {}

  def _bracket(self, i, j, d):
    '''[e_i, e_j] restricted to local coordinates of the degree-d piece'''
    out = [ZERO] * self.dims.get(d, 0)
    for k, x in self.gm.alg.bracket_basis(i, j).items():
      out[self.loc[k]] = x
    return out

  def _extend(self, A):
    '''The action on g_-2 forced by the derivation rule, or an error when A is not a derivation'''
    n1, n2 = len(self.ind[-1]), len(self.ind[-2])
    g1 = self.ind[-1]
    # unknowns: entry (m, z) of the action on g_-2 at z*n2 + m, then a homogenizing tau
    rows = []
    for a in range(n1):
      for b in range(a + 1, n1):
        br = self._bracket(g1[a], g1[b], -2)
        lhs = [ZERO] * n2
        Aa = A.column(a)
        Ab = A.column(b)
        for c in range(n1):
          if Aa[c]:
            lhs = [x + Aa[c] * y for x, y in zip(lhs, self._bracket(g1[c], g1[b], -2))]
          if Ab[c]:
            lhs = [x + Ab[c] * y for x, y in zip(lhs, self._bracket(g1[a], g1[c], -2))]
        for mm in range(n2):
          row = {z * n2 + mm: br[z] for z in range(n2) if br[z]}
          if lhs[mm]:
            row[n2 * n2] = -lhs[mm]
          if row:
            rows.append(row)
    sol = la.nullspace(rows, n2 * n2 + 1)
    withtau = [v for v in sol.rows if v[n2 * n2]]
    if len(withtau) != 1 or sol.dim != 1:
      if not withtau:
        raise utils.InvalidParamsError('The degree-0 part is not made of derivations of the negative part')
      raise utils.InvalidParamsError('The degree -2 piece is not generated by the degree -1 piece')
    v = withtau[0]
    return la.MatQ.fromflat([x / v[n2 * n2] for x in v[:n2 * n2]], n2, n2)

  def _act(self, q, j, y):
    '''[b_j, e_y] for the j-th basis element b_j of g_q, in local coordinates of g_(q + deg y)'''
    dy = self.gm.degrees[y]
    target = q + dy
    if target < -2 or q < -2:
      return []
    if q < 0:
      return self._bracket(self.ind[q][j], y, target)
    if q == 0:
      A, D2 = self.D0[j]
      return A.column(self.loc[y]) if dy == -1 else D2.column(self.loc[y])
    return self._block(q, self.spaces[q].rows[j], y)

  def _offsets(self, p):
    offsets = {}
    pos = 0
    for y in self.order:
      offsets[y] = pos
      pos += self.dims[p + self.gm.degrees[y]]
    return offsets, pos

  def _block(self, p, vec, y):
    offsets, _ = self._offsets(p)
    return vec[offsets[y]:offsets[y] + self.dims[p + self.gm.degrees[y]]]

  def solve(self, p):
    '''Computes g_p from g_0 .. g_(p-1)'''
    tstart = time.time()
    offsets, nunk = self._offsets(p)
    rows = []
    order = self.order
    for xi in range(len(order)):
      for yi in range(xi + 1, len(order)):
        x, y = order[xi], order[yi]
        dx, dy = self.gm.degrees[x], self.gm.degrees[y]
        target = p + dx + dy
        if target < -2:
          continue
        tdim = self.dims[target]
        eqs = [dict() for _ in range(tdim)]
        # phi([x, y])
        for z, cz in self.gm.alg.bracket_basis(x, y).items():
          for mm in range(tdim):
            _combine({offsets[z] + mm: ONE}, cz, eqs[mm])
        # - [phi(x), y] + [phi(y), x]
        for src, other, sign in ((x, y, -ONE), (y, x, ONE)):
          q = p + self.gm.degrees[src]
          for j in range(self.dims[q]):
            img = self._act(q, j, other)
            for mm, val in enumerate(img):
              if val:
                _combine({offsets[src] + j: ONE}, sign * val, eqs[mm])
        rows.extend(e for e in eqs if e)
    space = la.nullspace(rows, nunk)
    self.spaces[p] = space
    self.dims[p] = space.dim
    log.debug('msg="Tanaka prolongation degree solved" degree="%d" unknowns="%d" dim="%d" elapsedTimems="%.1f"' %
              (p, nunk, space.dim, (time.time() - tstart) * 1000))
    return space

  def restriction(self, p):
    '''The solutions of degree p restricted to g_-1, as maps g_-1 -> g_(p-1)'''
    n1 = len(self.ind[-1])
    return self.spaces[p].restrict(range(n1 * self.dims[p - 1]))


def tanaka_prolongation(g_minus, g0, max_degree=None):
  '''Returns the per-degree solution spaces g_1, g_2, .. up to max_degree (default: dim g_-1 / 2),
  stopping at the first zero space'''
  tan = TanakaProlongation(g_minus, g0)
  r = max(1, len(tan.ind[-1]) // 2)
  cap = hardcapfactor * r
  if max_degree is None:
    max_degree = r
  if max_degree > cap:
    log.warning('msg="Prolongation degree capped" requested="%d" cap="%d"' % (max_degree, cap))
    max_degree = cap
  first_zero = None
  for p in range(1, max_degree + 1):
    if tan.solve(p).dim == 0:
      first_zero = p
      break
  dims = {d: tan.dims[d] for d in sorted(tan.dims)}
  return {
    'dims': dims,
    'spaces': dict(tan.spaces),
    'first_zero': first_zero,
    'total': sum(dims.values()),
    'solver': tan,
  }


def maps_into(P, W):
  '''A space of maps V -> W written in coordinates of the canonical basis of W, as maps into
  the ambient Hom space of W'''
  n, m = P.source_dim, P.target_dim
  if m != W.dim:
    raise utils.InvalidParamsError('Maps with %d coordinates into a %d-dimensional space' % (m, W.dim))
  L = W.source_dim * W.target_dim
  vectors = []
  for row in P.space.rows:
    v = []
    for a in range(n):
      img = [ZERO] * L
      for j, wrow in enumerate(W.space.rows):
        c = row[a * m + j]
        if c:
          img = [x + c * y for x, y in zip(img, wrow)]
      v.extend(img)
    vectors.append(v)
  return LinMapSpace(n, L, vectors)


def expand_chain(chain):
  '''For a chain W, P_1, P_2, .. where each P_i maps V into the canonical coordinates of P_(i-1),
  returns the canonical basis of the last space with every coordinate expanded down to the ambient
  Hom space of W, as sparse vectors, together with the size of the expanded ambient space'''
  W = chain[0]
  amb = W.source_dim * W.target_dim
  full = [{c: x for c, x in enumerate(row) if x} for row in W.space.rows]
  for P in chain[1:]:
    n, m = P.source_dim, P.target_dim
    if m != len(full):
      raise utils.InvalidParamsError('Maps with %d coordinates into a %d-dimensional space' % (m, len(full)))
    expanded = []
    for row in P.space.rows:
      v = {}
      for a in range(n):
        for t in range(m):
          c = row[a * m + t]
          if c:
            for col, x in full[t].items():
              key = a * amb + col
              v[key] = v.get(key, ZERO) + c * x
      expanded.append({col: x for col, x in v.items() if x})
    full, amb = expanded, n * amb
  return full, amb


def same_span(A, B, ncols):
  '''True when two lists of sparse vectors span the same subspace of Q^ncols'''
  ech = la.Echelon(ncols)
  for v in A:
    ech.add(v)
  other = la.Echelon(ncols)
  for v in B:
    other.add(v)
  return ech.rank == other.rank and all(not ech.reduce(v) for v in B)


def is_closed(W):
  '''True when the space of endomorphisms is closed under commutator'''
  mats = W.matrices()
  return all(W.contains(a.commutator(b)) for i, a in enumerate(mats) for b in mats[i + 1:])


def prolongations_agree(W, omega, depth):
  '''Compares the iterated modified prolongations of W with the Tanaka prolongation of the Heisenberg
  algebra of omega extended by W, degree by degree and as subspaces'''
  n = W.source_dim
  if n < 4:
    raise utils.InvalidParamsError('Modified and Tanaka prolongations are only comparable for dim V >= 4')
  if not is_closed(W):
    raise utils.InvalidParamsError('The space is not closed under commutator')
  heisenberg_derivations(W, omega)
  tan = TanakaProlongation(heisenberg_extend(omega), W)
  current = W
  degrees = []
  for p in range(1, depth + 1):
    modp = modified_prolongation(current, omega)
    tan.solve(p)
    tanp = tan.restriction(p)
    degrees.append({'degree': p, 'modified': modp.dim, 'tanaka': tan.dims[p],
                    'equal': modp.space == tanp})
    current = modp
    if modp.dim == 0 and tan.dims[p] == 0:
      break
  log.info('msg="Prolongations compared" dimV="%d" dimW="%d" dims="%s"' %
           (n, W.dim, ','.join(str(d['tanaka']) for d in degrees)))
  return {'degrees': degrees, 'agree': all(d['equal'] for d in degrees)}


def init(config, inlog):
  '''Initializes the module from the configuration'''
  global log             # pylint: disable=global-statement
  global hardcapfactor   # pylint: disable=global-statement
  log = inlog
  hardcapfactor = config.getint('prolongation', 'hardcapfactor', fallback=2)
