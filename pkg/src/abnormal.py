'''
abnormal.py

Symplectification of rank-3 distributions: quasi-impulses, the characteristic
line field on the annihilator, the flag of the lifted distribution at a
covector and its Young-diagram type
'''

import time
import random
from collections import Counter
from fractions import Fraction
import exactla as la
import poly
import dist
import labutils as utils

log = utils.log

# sampling budget of the fiber of the annihilator, see the [abnormal] configuration section
samples = 3
maxattempts = 50
coefheight = 3
maxdenominator = 1

ZERO = Fraction(0)
ONE = Fraction(1)

PAIRS = (('u23', 1, 2), ('u13', 0, 2), ('u12', 0, 1))


class CotangentPoint:
  '''A covector p at the base point q'''

  def __init__(self, q, p):
    self.q = [la.Q(x) for x in q]
    self.p = [la.Q(x) for x in p]
    if len(self.q) != len(self.p):
      raise utils.InvalidParamsError('Base point and covector have different sizes (%d, %d)' %
                                     (len(self.q), len(self.p)))

  @property
  def coords(self):
    '''Coordinates on the cotangent bundle, base point first'''
    return self.q + self.p

  def scaled(self, c):
    return CotangentPoint(self.q, [c * x for x in self.p])

  def tojson(self):
    return {'q': [utils.ratstr(x) for x in self.q], 'p': [utils.ratstr(x) for x in self.p]}


class YoungType:
  '''A Young diagram with k-1 columns of two boxes and l columns of one box'''

  def __init__(self, k, l):
    self.k = k
    self.l = l

  @classmethod
  def fromjumps(cls, jumps, N):
    '''Reads the type from the jumps of the positive part of the flag; None when inconsistent'''
    if any(j not in (1, 2) for j in jumps):
      return None
    k = 1 + jumps.count(2)
    l = jumps.count(1)
    if k < 2 or 2 * k + l + 2 != N:
      return None
    return cls(k, l)

  @property
  def boxes(self):
    return 2 * (self.k - 1) + self.l

  def __eq__(self, other):
    return isinstance(other, YoungType) and (self.k, self.l) == (other.k, other.l)

  def __hash__(self):
    return hash((self.k, self.l))

  def __repr__(self):
    return 'YoungType(%d,%d)' % (self.k, self.l)

  def tojson(self):
    return {'k': self.k, 'l': self.l}


class FlagReport:
  '''Dimensions of the flag of the lifted distribution at one covector'''

  def __init__(self, point, dims_hat, delta_hat_dim, young, regular, nonincreasing, reason=None, spaces=None):
    self.point = point
    self.dims_hat = dims_hat
    self.dims_J = {i: d - 2 for i, d in dims_hat.items()}
    self.delta_hat_dim = delta_hat_dim
    idx = sorted(dims_hat)
    self.jumps = [self.dims_J[i] - self.dims_J[i - 1] for i in idx if i >= 1 and i - 1 in self.dims_J]
    self.young = young
    self.regular = regular
    self.nonincreasing = nonincreasing
    self.reason = reason
    self.spaces = spaces or {}

  @property
  def maximal_class(self):
    '''A regular covector of a Young type whose jumps do not increase. Constancy of the dimensions
    along the abnormal extremal is not tested'''
    return self.regular and self.young is not None and self.nonincreasing

  def tojson(self):
    return {
      'point': self.point.tojson(),
      'delta_hat_dim': self.delta_hat_dim,
      'dims_hat': {str(i): d for i, d in sorted(self.dims_hat.items())},
      'dims_J': {str(i): d for i, d in sorted(self.dims_J.items())},
      'jumps': self.jumps,
      'regular': self.regular,
      'jumps_nonincreasing': self.nonincreasing,
      'young': self.young.tojson() if self.young else None,
      'reason': self.reason,
    }


def _checkrank3(d):
  if d.rank != 3:
    raise utils.InvalidParamsError('Expected a rank-3 distribution, got rank %d' % d.rank)


def quasi_impulses(d):
  '''u_i = p.X_i(q) and u_ij = p.[X_i,X_j](q) as polynomials on T*R^N, variables q then p'''
  _checkrank3(d)
  N = d.ambient_dim
  ps = [poly.MPoly.pvar(N, N, a) for a in range(N)]

  def impulse(field):
    out = poly.MPoly(N, N)
    for a, c in enumerate(field.components):
      if c:
        out = out + c.embed(N, N) * ps[a]
    return out

  X = d.generators
  out = {'u%d' % (i + 1): impulse(X[i]) for i in range(3)}
  for name, i, j in PAIRS:
    out[name] = impulse(dist.lie_bracket(X[i], X[j]))
  return out


def hamiltonian_field(u):
  '''The field with i_v sigma = -du for sigma = sum dp_a ^ dq_a: dq_a = du/dp_a, dp_a = -du/dq_a'''
  N = u.num_x
  return dist.PolyVectorField([u.diff(N + a) for a in range(N)] + [-u.diff(a) for a in range(N)])


def characteristic_field(d, u=None):
  '''H = u23 u1-> - u13 u2-> + u12 u3->, tangent to the annihilator of d'''
  u = u or quasi_impulses(d)
  H = dist.PolyVectorField.zero(d.ambient_dim, d.ambient_dim)
  for (name, _, _), i, sign in zip(PAIRS, range(3), (ONE, -ONE, ONE)):
    H = H + hamiltonian_field(u['u%d' % (i + 1)]).scale(u[name].scale(sign))
  for i in range(3):
    if H.apply(u['u%d' % (i + 1)]):
      raise utils.ValidationError('The characteristic field is not tangent to the annihilator')
  return H


def _cofactors(G, S):
  '''det and adjugate of the 3x3 polynomial submatrix of G on the columns S'''
  M = [[G[i][s] for s in S] for i in range(3)]
  delta = poly.polydet(M)
  adj = [[None] * 3 for _ in range(3)]
  for i in range(3):
    for j in range(3):
      minor = [[M[a][b] for b in range(3) if b != i] for a in range(3) if a != j]
      adj[i][j] = poly.polydet(minor).scale(1 if (i + j) % 2 == 0 else -1)
  return delta, adj


def lifted_family(d, u, q):
  '''Fields on T*R^N whose values at any point of the annihilator over q span the vectors
  tangent to the annihilator projecting into D(q): the vertical fields and corrected lifts of X_i'''
  N = d.ambient_dim
  values = d.frame_at(q)
  _, pivots, _ = la.rref(la.MatQ.fromrows(values, N))
  S = list(pivots)
  G = [[c.embed(N, N) for c in g.components] for g in d.generators]
  delta, adj = _cofactors(G, S)
  zero = poly.MPoly(N, N)
  family = []
  for col in range(N):
    if col in S:
      continue
    comps = [zero] * (2 * N)
    comps[N + col] = delta
    for a, s in enumerate(S):
      # w_S = -adj(G_S) G[:, col]
      w = zero
      for i in range(3):
        w = w - adj[a][i] * G[i][col]
      comps[N + s] = w
    family.append(dist.PolyVectorField(comps))
  for i in range(3):
    ui = hamiltonian_field(u['u%d' % (i + 1)])
    b = [ui.apply(u['u%d' % (j + 1)]) for j in range(3)]
    lift = ui.scale(delta)
    for a, s in enumerate(S):
      c = zero
      for j in range(3):
        c = c - adj[a][j] * b[j]
      lift.components[N + s] = lift.components[N + s] + c
    family.append(lift)
  return family


def _sigma_hat(N):
  '''sigma(v, w) = sum v_pa w_qa - v_qa w_pa on T*R^N, coordinates q then p'''
  rows = [[ZERO] * (2 * N) for _ in range(2 * N)]
  for a in range(N):
    rows[N + a][a] = ONE
    rows[a][N + a] = -ONE
  return la.MatQ.fromrows(rows)


def _delta_hat(u, lam, N):
  '''ker du_1 ^ ker du_2 ^ ker du_3 ^ ker of the Liouville form at the covector'''
  rows = []
  for i in range(3):
    du = [u['u%d' % (i + 1)].diff(a).evaluate(lam.coords) for a in range(2 * N)]
    rows.append({a: x for a, x in enumerate(du) if x})
  rows.append({a: x for a, x in enumerate(lam.p) if x})
  return la.nullspace(rows, 2 * N)


def check_admissible(d, u, lam):
  '''Raises unless the covector annihilates D(q) and does not annihilate D^2(q)'''
  if len(lam.q) != d.ambient_dim:
    raise utils.InvalidParamsError('Expected a covector over R^%d' % d.ambient_dim)
  d.frame_at(lam.q)
  if any(u['u%d' % (i + 1)].evaluate(lam.coords) for i in range(3)):
    raise utils.NotAdmissibleError('The covector does not annihilate the distribution')
  if not any(u[name].evaluate(lam.coords) for name, _, _ in PAIRS):
    raise utils.NotAdmissibleError('The covector annihilates the derived distribution')


def flag_at(d, lam, max_i=None):
  '''Builds the flag of the lifted distribution at the covector: positive part by iterated brackets
  with the characteristic field, negative part by skew complements inside Delta-hat'''
  _checkrank3(d)
  N = d.ambient_dim
  u = quasi_impulses(d)
  check_admissible(d, u, lam)
  if max_i is None:
    max_i = max(1, N - 4)
  tstart = time.time()
  H = characteristic_field(d, u)
  family = lifted_family(d, u, lam.q)
  # move the covector to the origin and keep the jets that survive max_i brackets
  origin = lam.coords
  H = H.shift(origin).truncate(max_i)
  family = [f.shift(origin).truncate(max_i) for f in family]
  zero = [ZERO] * (2 * N)
  Hval = H.evaluate(zero)
  if Hval == zero:
    raise utils.ValidationError('The characteristic field vanishes at an admissible covector')
  form = _sigma_hat(N)
  delta_hat = _delta_hat(u, lam, N)
  spaces = {0: la.Subspace(2 * N, [f.evaluate(zero) for f in family])}
  if not delta_hat.contains(spaces[0]):
    raise utils.ValidationError('The lifted distribution leaves Delta-hat')
  regular = spaces[0] == delta_hat
  current = family
  for i in range(1, max_i + 1):
    if regular:
      break
    current = [dist.lie_bracket(H, f, max_i - i) for f in current]
    spaces[i] = spaces[i - 1].sum(la.Subspace(2 * N, [f.evaluate(zero) for f in current]))
    if spaces[i] == delta_hat:
      regular = True
    elif spaces[i] == spaces[i - 1]:
      del spaces[i]
      break
  top = max(spaces)
  for i in range(0, top + 1):
    neg = delta_hat.intersection(spaces[i].skew_complement(form))
    # the complement taken back inside Delta-hat must return the positive space
    if delta_hat.intersection(neg.skew_complement(form)) != spaces[i]:
      raise utils.ValidationError('The flag at the covector is not self-dual')
    spaces[-1 - i] = neg
  euler = [ZERO] * N + list(lam.p)
  for i, s in spaces.items():
    if not (s.contains(euler) and s.contains(Hval)):
      raise utils.ValidationError('The Euler field or the characteristic direction leaves the flag space %d' % i)
  dims_hat = {i: s.dim for i, s in sorted(spaces.items())}
  report_jumps = [dims_hat[i] - dims_hat[i - 1] for i in sorted(dims_hat) if i - 1 in dims_hat]
  if any(j < 0 or j > 2 for j in report_jumps):
    raise utils.ValidationError('Flag jump outside [0, 2]: %s' % report_jumps)
  positive = [dims_hat[i] - dims_hat[i - 1] for i in range(1, top + 1)]
  young = YoungType.fromjumps(positive, N) if regular else None
  nonincreasing = regular and young is not None and all(a >= b for a, b in zip(positive, positive[1:]))
  reason = None
  if not regular:
    reason = 'the flag stops short of Delta-hat'
  elif young is None:
    reason = 'the jumps do not match a Young type with 2k+l+2 = %d' % N
  log.debug('msg="Flag computed" N="%d" dims="%s" regular="%s" elapsedTimems="%.1f"' %
            (N, ','.join(str(dims_hat[i]) for i in sorted(dims_hat)), regular, (time.time() - tstart) * 1000))
  return FlagReport(lam, dims_hat, delta_hat.dim, young, regular, nonincreasing, reason, spaces)


def derived_dims(d, q):
  '''dim D(q) and dim D^2(q)'''
  growth = dist.growth_vector(d, q, 2)
  return growth[0], growth[-1]


def reduced_case(d, q):
  '''The characteristic sub-distribution span{u23 X1 - u13 X2 + u12 X3 at (q,p) : p in D-perp(q)}'''
  _checkrank3(d)
  N = d.ambient_dim
  q = d.checkpoint(q)
  u = quasi_impulses(d)
  values = d.frame_at(q)
  vectors = []
  for p in la.Subspace(N, values).annihilator().rows:
    coords = q + list(p)
    c = [u[name].evaluate(coords) for name, _, _ in PAIRS]
    v = [c[0] * a - c[1] * b + c[2] * e for a, b, e in zip(*values)]
    vectors.append(v)
  sub = la.Subspace(N, vectors)
  return {'dim': sub.dim, 'basis': [[utils.ratstr(x) for x in r] for r in sub.rows]}


def sample_covectors(d, q, count, seed):
  '''Seeded small-height rational covectors in the fiber of the annihilator over q, admissible only'''
  N = d.ambient_dim
  u = quasi_impulses(d)
  fiber = la.Subspace(N, d.frame_at(q)).annihilator().rows
  rng = random.Random(seed)
  found = []
  for _ in range(maxattempts):
    coefs = [Fraction(rng.randint(-coefheight, coefheight), rng.randint(1, maxdenominator)) for _ in fiber]
    p = [sum((c * row[a] for c, row in zip(coefs, fiber)), ZERO) for a in range(N)]
    lam = CotangentPoint(q, p)
    try:
      check_admissible(d, u, lam)
    except utils.NotAdmissibleError:
      continue
    found.append(lam)
    if len(found) == count:
      return found
  raise utils.SamplingExhaustedError('Found %d admissible covectors out of %d within %d attempts' %
                                     (len(found), count, maxattempts))


def classify(d, q, nsamples=None, seed=0):
  '''Young type of a rank-3 distribution at q, from the flags at sampled covectors.
  Returns the outcome and the report'''
  _checkrank3(d)
  q = d.checkpoint(q)
  nsamples = nsamples or samples
  dimD, dimD2 = derived_dims(d, q)
  report = {'dim_D': dimD, 'dim_D2': dimD2}
  if dimD2 < 4:
    report['verdict'] = 'degenerate'
    return utils.Outcome.REDUCED, report
  if dimD2 < 6:
    report['verdict'] = 'reduced-case'
    report['characteristic_subdistribution'] = reduced_case(d, q)
    return utils.Outcome.REDUCED, report
  tstart = time.time()
  lams = sample_covectors(d, q, nsamples, seed)
  flags = utils.fanout(lambda lam: flag_at(d, lam), lams)
  votes = Counter(f.young for f in flags if f.young is not None)
  if not votes:
    raise utils.SamplingExhaustedError('No regular covector among %d samples' % len(flags))
  top = max(votes.values())
  young = min((y for y, c in votes.items() if c == top), key=lambda y: (y.k, y.l))
  report['verdict'] = 'classified'
  report['young'] = young.tojson()
  report['maximal_class'] = any(f.maximal_class and f.young == young for f in flags)
  report['samples'] = [f.tojson() for f in flags]
  log.info('msg="Distribution classified" N="%d" young="%s" samples="%d" elapsedTimems="%.1f"' %
           (d.ambient_dim, young, len(flags), (time.time() - tstart) * 1000))
  return utils.Outcome.CLASSIFIED, report


def init(config, inlog):
  '''Initializes the module from the configuration'''
  global log             # pylint: disable=global-statement
  global samples         # pylint: disable=global-statement
  global maxattempts     # pylint: disable=global-statement
  global coefheight      # pylint: disable=global-statement
  global maxdenominator  # pylint: disable=global-statement
  log = inlog
  samples = config.getint('abnormal', 'samples', fallback=3)
  maxattempts = config.getint('abnormal', 'maxattempts', fallback=50)
  coefheight = config.getint('abnormal', 'coefheight', fallback=3)
  maxdenominator = config.getint('abnormal', 'maxdenominator', fallback=1)
