'''
dist.py

Polynomial vector fields, Lie brackets, derived flags and growth vectors of
distributions, and the flat models realized as left-invariant distributions
'''

import json
import time
from fractions import Fraction
from math import comb, factorial
import exactla as la
import poly
import liecore
import labutils as utils

log = utils.log

ZERO = Fraction(0)
ONE = Fraction(1)


class PolyVectorField:
  '''A vector field whose components are polynomials over the same ring, one per variable'''

  def __init__(self, components):
    self.components = list(components)
    if not self.components:
      raise utils.InvalidParamsError('A vector field needs at least one component')
    ring = (self.components[0].num_x, self.components[0].num_p)
    for c in self.components:
      if (c.num_x, c.num_p) != ring:
        raise utils.InvalidParamsError('Vector field components live in different rings')
    if len(self.components) != sum(ring):
      raise utils.InvalidParamsError('Got %d components for %d variables' % (len(self.components), sum(ring)))

  @property
  def ambient_dim(self):
    return len(self.components)

  @property
  def ring(self):
    return self.components[0].num_x, self.components[0].num_p

  @classmethod
  def coordinate(cls, num_x, num_p, i):
    '''The constant field d/dv_i'''
    n = num_x + num_p
    return cls([poly.MPoly.const(num_x, num_p, 1 if j == i else 0) for j in range(n)])

  @classmethod
  def zero(cls, num_x, num_p=0):
    return cls([poly.MPoly(num_x, num_p) for _ in range(num_x + num_p)])

  def apply(self, f):
    '''The derivative of the function f along the field'''
    out = poly.MPoly(*self.ring)
    for i, c in enumerate(self.components):
      if c:
        d = f.diff(i)
        if d:
          out = out + c * d
    return out

  def __add__(self, other):
    return PolyVectorField([a + b for a, b in zip(self.components, other.components)])

  def __sub__(self, other):
    return PolyVectorField([a - b for a, b in zip(self.components, other.components)])

  def __neg__(self):
    return PolyVectorField([-a for a in self.components])

  def scale(self, c):
    '''Multiplies by a rational number or by a polynomial function'''
    if isinstance(c, poly.MPoly):
      return PolyVectorField([c * a for a in self.components])
    return PolyVectorField([a.scale(c) for a in self.components])

  def evaluate(self, point):
    return [c.evaluate(point) for c in self.components]

  def shift(self, point):
    '''The same field written in coordinates centered at point'''
    return PolyVectorField([c.shift(point) for c in self.components])

  def truncate(self, maxdeg):
    return PolyVectorField([c.truncate(maxdeg) for c in self.components])

  def embed(self, num_x, num_p):
    '''Puts a field on the x-variables into the larger ring, with zero components on the new variables'''
    comps = [c.embed(num_x, num_p) for c in self.components]
    comps += [poly.MPoly(num_x, num_p) for _ in range(num_x + num_p - len(comps))]
    return PolyVectorField(comps)

  def is_zero(self):
    return not any(self.components)

  def __eq__(self, other):
    return isinstance(other, PolyVectorField) and self.components == other.components

  def __hash__(self):
    return hash(tuple(self.components))

  def __repr__(self):
    return 'PolyVectorField(%s)' % ', '.join(repr(c) for c in self.components)

  def tojson(self):
    return [c.tojson() for c in self.components]

  @classmethod
  def fromjson(cls, num_x, items, num_p=0):
    if not isinstance(items, list):
      raise utils.InvalidParamsError('A vector field is a list of component polynomials')
    return cls([poly.MPoly.fromjson(num_x, num_p, c) for c in items])


def lie_bracket(a, b, maxdeg=None):
  '''[a,b]^m = sum_n a^n d_n b^m - b^n d_n a^m, optionally truncated by total degree'''
  if a.ring != b.ring:
    raise utils.InvalidParamsError('Cannot bracket fields on different spaces')
  comps = []
  for m in range(a.ambient_dim):
    c = a.apply(b.components[m]) - b.apply(a.components[m])
    comps.append(c.truncate(maxdeg) if maxdeg is not None else c)
  return PolyVectorField(comps)


class DistributionSpec:
  '''A distribution on R^N given by polynomial generator fields'''

  def __init__(self, ambient_dim, generators, labels=None):
    self.ambient_dim = ambient_dim
    self.generators = list(generators)
    for g in self.generators:
      if g.ring != (ambient_dim, 0):
        raise utils.InvalidParamsError('Generator fields must live on R^%d' % ambient_dim)
    self.labels = list(labels) if labels else ['X%d' % (i + 1) for i in range(len(self.generators))]

  @property
  def rank(self):
    return len(self.generators)

  def frame_at(self, point):
    '''The generator values at a point, checked for independence'''
    point = self.checkpoint(point)
    values = [g.evaluate(point) for g in self.generators]
    if la.rank(la.MatQ.fromrows(values, self.ambient_dim)) != len(values):
      raise utils.NotAdmissibleError('The generators are linearly dependent at the point')
    return values

  def checkpoint(self, point):
    point = [la.Q(x) for x in point]
    if len(point) != self.ambient_dim:
      raise utils.InvalidParamsError('Expected a point of R^%d, got %d coordinates' % (self.ambient_dim, len(point)))
    return point

  def tojson(self):
    return {'ambient_dim': self.ambient_dim, 'labels': self.labels,
            'generators': [g.tojson() for g in self.generators]}

  @classmethod
  def fromjson(cls, obj):
    try:
      n = int(obj['ambient_dim'])
      gens = [PolyVectorField.fromjson(n, g) for g in obj['generators']]
      return cls(n, gens, obj.get('labels'))
    except (KeyError, TypeError, ValueError) as e:
      raise utils.InvalidParamsError('Malformed distribution description: %s' % e)

  @classmethod
  def load(cls, path):
    '''Reads a distribution from a JSON file'''
    try:
      with open(path) as f:
        return cls.fromjson(json.load(f))
    except (OSError, json.JSONDecodeError) as e:
      raise utils.InvalidParamsError('Unable to read distribution from %s: %s' % (path, e))


def _independent(fields, candidate, ech, index):
  '''Adds the field to the echelon of its (component, monomial) coordinates when it is new'''
  vec = {}
  for m, c in enumerate(candidate.components):
    for e, x in c.terms.items():
      vec[index.setdefault((m, e), len(index))] = x
  if not ech.add(vec):
    return False
  fields.append(candidate)
  return True


def bracket_layers(d, max_step):
  '''Right-normed brackets [X_a1, [X_a2, .. X_aj]] of the generators, layer by layer,
  keeping only fields independent over Q from all the previous ones'''
  # columns are allocated as new monomials show up
  ech = la.Echelon(0)
  index = {}
  kept = []
  layer = []
  for g in d.generators:
    if _independent(kept, g, ech, index):
      layer.append(g)
  layers = [layer]
  for _ in range(1, max_step):
    nxt = []
    for g in d.generators:
      for f in layers[-1]:
        b = lie_bracket(g, f)
        if not b.is_zero() and _independent(kept, b, ech, index):
          nxt.append(b)
    if not nxt:
      break
    layers.append(nxt)
  return layers


def growth_vector(d, point, max_step=None):
  '''(dim D(q), dim D^2(q), ..) until the dimension stalls or max_step is reached'''
  point = d.checkpoint(point)
  d.frame_at(point)
  if max_step is None:
    max_step = d.ambient_dim
  tstart = time.time()
  layers = bracket_layers(d, max_step)
  dims = []
  values = []
  for layer in layers:
    values.extend(f.evaluate(point) for f in layer)
    dim = la.Subspace(d.ambient_dim, values).dim
    if dims and dim == dims[-1]:
      break
    dims.append(dim)
  log.debug('msg="Growth vector computed" N="%d" growth="%s" elapsedTimems="%.1f"' %
            (d.ambient_dim, ','.join(map(str, dims)), (time.time() - tstart) * 1000))
  return dims


def bernoulli_plus(n):
  '''B_0..B_n with the convention B_1 = +1/2'''
  b = [ONE]
  for m in range(1, n + 1):
    b.append(-sum((comb(m + 1, j) * b[j] for j in range(m)), ZERO) / (m + 1))
  if n >= 1:
    b[1] = -b[1]
  return b


def left_invariant_fields(galg):
  '''Left-invariant fields of the simply connected group of a nilpotent algebra, in exponential
  coordinates: V_i(x) = sum_n B_n/n! ad_x^n (e_i)'''
  alg = galg.alg if isinstance(galg, liecore.GradedLieAlg) else galg
  N = alg.dim
  xs = [poly.MPoly.xvar(N, 0, j) for j in range(N)]

  def ad_x(vec):
    out = [poly.MPoly(N, 0) for _ in range(N)]
    for j in range(N):
      for m, c in enumerate(vec):
        if not c:
          continue
        for t, z in alg.bracket_basis(j, m).items():
          out[t] = out[t] + (xs[j] * c).scale(z)
    return out

  bern = bernoulli_plus(N)
  fields = []
  for i in range(N):
    term = [poly.MPoly.const(N, 0, 1 if m == i else 0) for m in range(N)]
    total = list(term)
    for n in range(1, N + 1):
      term = ad_x(term)
      if not any(term):
        break
      coef = bern[n] / factorial(n)
      if coef:
        total = [a + b.scale(coef) for a, b in zip(total, term)]
    fields.append(PolyVectorField(total))
  return fields


def verify_structure(alg, fields):
  '''Checks [V_i, V_j] = sum_m c_ij^m V_m as polynomial identities'''
  for i in range(alg.dim):
    for j in range(i + 1, alg.dim):
      lhs = lie_bracket(fields[i], fields[j])
      rhs = PolyVectorField.zero(alg.dim)
      for m, c in alg.bracket_basis(i, j).items():
        rhs = rhs + fields[m].scale(c)
      if lhs != rhs:
        raise utils.ValidationError('Left-invariant fields violate the bracket [%s,%s]' %
                                    (alg.labels[i], alg.labels[j]))


def realize_flat(k, l):
  '''The flat (k,l) model as the left-invariant distribution generated by X, Y_1, Z_1 on R^(2k+l+2)'''
  tstart = time.time()
  galg = liecore.build_flat_algebra(k, l)
  fields = left_invariant_fields(galg)
  verify_structure(galg.alg, fields)
  gens = liecore.flat_generators(k, l)
  log.info('msg="Flat model realized" k="%d" l="%d" N="%d" elapsedTimems="%.1f"' %
           (k, l, galg.dim, (time.time() - tstart) * 1000))
  return DistributionSpec(galg.dim, [fields[g] for g in gens], [galg.alg.labels[g] for g in gens])


def flat_structure(k, l):
  '''Lower central series and generation depth of <X, Y_1, Z_1> in the flat algebra'''
  galg = liecore.build_flat_algebra(k, l)
  basis = la.MatQ.identity(galg.dim).tolist()
  return {
    'lower_central_series': galg.alg.lower_central_series(),
    'generation_depth': galg.alg.generation_depth([basis[g] for g in liecore.flat_generators(k, l)]),
  }


def init(_config, inlog):
  '''Initializes the module logger'''
  global log     # pylint: disable=global-statement
  log = inlog
