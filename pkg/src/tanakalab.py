#!/usr/bin/env python3
'''
tanakalab.py

Command line front end: symbols, prolongations and symmetry algebras of flat
rank-3 distributions, and Young diagrams of their abnormal flags
'''

import sys
import os
import json
import getopt
import socket
import configparser
import logging
import labutils as utils
import poly
import liecore
import flags
import dist
import abnormal
import selftest

# the following constant is replaced on the fly when packaging
TANAKALABVERSION = 'git'

DEFAULTSCONF = os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir, 'tanakalab.defaults.conf')
SITECONF = '/etc/tanakalab/tanakalab.conf'

# the mathematical statement each command instantiates
ANCHORS = {
  'flat-model': 'left-invariant realization of the flat (k,l) model on its nilpotent group',
  'growth': 'small growth vector of the derived flag D^(j+1) = D^j + [D, D^j]',
  'diagram': 'Young diagram of the flag of the lifted distribution along abnormal extremals',
  'symbol': 's(k,l) as the algebra of infinitesimal symmetries of the flat curve of flags',
  'prolong': 'coincidence of modified and Tanaka prolongations for dim V >= 4',
  'gdim': 'dimension of the Tanaka prolongation of R.eta + V + s(k,l)',
  'ideal': 'forms vanishing on secant varieties of tangential developables of the rational normal curve',
  'bsuite': 'nonvanishing of det B_p and the d(k,s,j) recursion',
  'selftest': 'acceptance suite',
}

# long options: the global ones first, then the per-command parameters
GLOBALOPTS = ['help', 'config=', 'output=', 'format=', 'seed=']
PARAMOPTS = {
  'k': int, 'l': int, 'emit': str, 'model': str, 'fields': str, 'point': str, 'max-step': int,
  'samples': int, 'covector': str, 'depth': int, 'csp': int, 'r': int, 'variety': str, 'degree': int,
  'rank-filter': int, 'kmax': int, 'lmax': int, 'check-prolongation': None, 'cross-check-poisson': None,
}
ALLOWED = {
  'flat-model': {'k', 'l', 'emit'},
  'growth': {'model', 'fields', 'point', 'max-step'},
  'diagram': {'model', 'fields', 'point', 'samples', 'covector'},
  'symbol': {'k', 'l', 'check-prolongation', 'cross-check-poisson'},
  'prolong': {'k', 'l', 'csp', 'depth'},
  'gdim': {'k', 'l'},
  'ideal': {'r', 'variety', 'degree', 'rank-filter'},
  'bsuite': {'k', 'l', 'kmax', 'lmax'},
  'selftest': set(),
}
REQUIRED = {
  'flat-model': {'k', 'l'},
  'symbol': {'k', 'l'},
  'gdim': {'k', 'l'},
  'ideal': {'r', 'variety', 'degree'},
}


def usage(exitcode):
  '''Prints usage'''
  print('Usage : ' + sys.argv[0] + ' [-h|--help] [--config PATH] [--output PATH] [--format json|text] [--seed N] '
        '<command> [options]\n'
        '  flat-model --k K --l L [--emit fields|growth|structure]\n'
        '  growth     --model flat:K,L | --fields FILE [--point Q] [--max-step S]\n'
        '  diagram    --model flat:K,L | --fields FILE [--point Q] [--samples S] [--covector P]\n'
        '  symbol     --k K --l L [--check-prolongation] [--cross-check-poisson]\n'
        '  prolong    --k K --l L | --csp N [--depth D]\n'
        '  gdim       --k K --l L\n'
        '  ideal      --r R --variety curve|tangential:B|secant:S,B --degree D [--rank-filter M]\n'
        '  bsuite     [--k K --l L] [--kmax K --lmax L]\n'
        '  selftest', file=sys.stderr)
  sys.exit(exitcode)


class RunConfig:
  '''A parsed invocation: command, its parameters and the global options'''

  def __init__(self, command, params=None, seed=None, output=None, fmt=None, configpath=None):
    self.command = command
    self.params = params or {}
    self.seed = seed
    self.output = output
    self.format = fmt
    self.configpath = configpath

  def applydefaults(self, config):
    '''Fills the global options left unset from the configuration'''
    if self.seed is None:
      self.seed = config.getint('general', 'seed', fallback=0)
    if self.format is None:
      self.format = config.get('general', 'format', fallback='json')
    if self.format not in ('json', 'text'):
      raise utils.InvalidParamsError('Unknown output format %s' % self.format)


def _intopt(name, value):
  try:
    return int(value)
  except ValueError:
    raise utils.InvalidParamsError('Option --%s expects an integer, got %s' % (name, value))


def parse_args(argv):
  '''Parses the command line into a RunConfig, validating the parameters of the command'''
  try:
    options, args = getopt.gnu_getopt(argv, 'hc:o:f:s:', GLOBALOPTS +
                                      [o if t is None else o + '=' for o, t in PARAMOPTS.items()])
  except getopt.GetoptError as e:
    raise utils.InvalidParamsError(str(e))
  rc = RunConfig(None)
  for f, v in options:
    if f in ('-h', '--help'):
      usage(0)
    elif f in ('-c', '--config'):
      rc.configpath = v
    elif f in ('-o', '--output'):
      rc.output = v
    elif f in ('-f', '--format'):
      rc.format = v
    elif f in ('-s', '--seed'):
      rc.seed = _intopt('seed', v)
    else:
      name = f[2:]
      kind = PARAMOPTS[name]
      rc.params[name] = True if kind is None else (_intopt(name, v) if kind is int else v)
  if len(args) != 1:
    raise utils.InvalidParamsError('Expected exactly one command, got %d' % len(args))
  rc.command = args[0]
  if rc.command not in ALLOWED:
    raise utils.InvalidParamsError('Unknown command %s' % rc.command)
  extra = set(rc.params) - ALLOWED[rc.command]
  if extra:
    raise utils.InvalidParamsError('Options not valid for %s: %s' % (rc.command, ', '.join(sorted(extra))))
  missing = REQUIRED.get(rc.command, set()) - set(rc.params)
  if missing:
    raise utils.InvalidParamsError('Missing options for %s: %s' % (rc.command, ', '.join(sorted(missing))))
  return rc


def _distribution(params):
  '''The distribution named by --model flat:K,L or read from --fields, and the evaluation point'''
  if ('model' in params) == ('fields' in params):
    raise utils.InvalidParamsError('Give exactly one of --model and --fields')
  if 'model' in params:
    kind, _, args = params['model'].partition(':')
    try:
      k, l = (int(x) for x in args.split(','))
    except ValueError:
      kind = None
    if kind != 'flat':
      raise utils.InvalidParamsError('Invalid model %s, expected flat:K,L' % params['model'])
    d = dist.realize_flat(k, l)
  else:
    d = dist.DistributionSpec.load(params['fields'])
  point = utils.parsevector(params['point']) if 'point' in params else [0] * d.ambient_dim
  return d, d.checkpoint(point)


def _ratlist(v):
  return [utils.ratstr(x) for x in v]


def cmd_flatmodel(params, _seed):
  k, l = params['k'], params['l']
  emit = params.get('emit', 'growth')
  d = dist.realize_flat(k, l)
  out = {'k': k, 'l': l, 'ambient_dim': d.ambient_dim, 'labels': d.labels}
  if emit == 'fields':
    out['distribution'] = d.tojson()
  elif emit == 'growth':
    out['growth'] = dist.growth_vector(d, [0] * d.ambient_dim)
  elif emit == 'structure':
    out.update(dist.flat_structure(k, l))
  else:
    raise utils.InvalidParamsError('Unknown --emit value %s' % emit)
  return utils.Outcome.CLASSIFIED, out


def cmd_growth(params, _seed):
  d, point = _distribution(params)
  return utils.Outcome.CLASSIFIED, {'point': _ratlist(point),
                                    'growth': dist.growth_vector(d, point, params.get('max-step'))}


def cmd_diagram(params, seed):
  d, point = _distribution(params)
  if 'covector' in params:
    report = abnormal.flag_at(d, abnormal.CotangentPoint(point, utils.parsevector(params['covector'])))
    verdict = 'classified' if report.maximal_class else 'not-maximal-class'
    return utils.Outcome.CLASSIFIED, {'verdict': verdict, 'maximal_class': report.maximal_class,
                                      'flag': report.tojson()}
  outcome, report = abnormal.classify(d, point, params.get('samples'), seed)
  report['point'] = _ratlist(point)
  return outcome, report


def cmd_symbol(params, _seed):
  k, l = params['k'], params['l']
  symbol = flags.build_symbol(k, l)
  model = flags.build_model(k, l)
  out = {
    'k': k,
    'l': l,
    'dim_V': model.dim,
    'dim': symbol.dim,
    'expected_dim': 7 if l == 0 else 5 + flags.p_dimension(l),
    'equals_flat_curve_symmetries': symbol == flags.flat_curve_symmetries(k, l),
    'first_modified_prolongation': liecore.modified_prolongation(symbol, model.sigma).dim,
  }
  if params.get('check-prolongation'):
    out['prolongations'] = liecore.prolongations_agree(symbol, model.sigma, model.r)
    out['quadric_prolongations'] = flags.quadric_prolongations_agree(k, l)
  if params.get('cross-check-poisson'):
    if l == 0:
      raise utils.InvalidParamsError('The Poisson model is built for l >= 1')
    tanaka = flags.symmetry_algebra_dims(k, l)
    pois = flags.build_poisson_G(k, l)
    out['poisson'] = {
      'total': pois['total'],
      'per_degree': {str(d): n for d, n in pois['per_degree'].items()},
      'tanaka_total': tanaka['total'],
      'agree': pois['total'] == tanaka['total'],
      'degree0_descriptions_agree': flags.degree0_descriptions_agree(k, l)['equal'],
    }
  return utils.Outcome.CLASSIFIED, out


def cmd_prolong(params, _seed):
  if 'csp' in params:
    if 'k' in params or 'l' in params:
      raise utils.InvalidParamsError('Give either --csp or --k/--l')
    omega = liecore.standard_form(params['csp'])
    W = liecore.csp_algebra(omega)
    depth = params.get('depth', params['csp'])
    out = {'csp': params['csp']}
  else:
    if 'k' not in params or 'l' not in params:
      raise utils.InvalidParamsError('Missing options for prolong: --k and --l, or --csp')
    model = flags.build_model(params['k'], params['l'])
    omega, W = model.sigma, flags.build_symbol(params['k'], params['l'])
    depth = params.get('depth', model.r)
    out = {'k': params['k'], 'l': params['l']}
  out.update(liecore.prolongations_agree(W, omega, depth))
  return utils.Outcome.CLASSIFIED, out


def cmd_gdim(params, _seed):
  dims = flags.symmetry_algebra_dims(params['k'], params['l'])
  return utils.Outcome.CLASSIFIED, {
    'k': params['k'],
    'l': params['l'],
    'total': dims['total'],
    'per_degree': {str(d): n for d, n in dims['per_degree'].items()},
    'first_zero_degree': dims['first_zero'],
  }


def cmd_ideal(params, _seed):
  variety = poly.parse_variety(params['variety'])
  piece = poly.vanishing_ideal_piece(params['r'], variety, params['degree'])
  out = {'r': params['r'], 'variety': params['variety'], 'piece': piece.tojson()}
  if 'rank-filter' in params:
    if params['degree'] != 2:
      raise utils.InvalidParamsError('The rank filter applies to quadrics only')
    out['rank_filter'] = flags.rank_filter(piece, params['rank-filter'])
  return utils.Outcome.CLASSIFIED, out


def cmd_bsuite(params, _seed):
  if 'k' in params or 'l' in params:
    if 'k' not in params or 'l' not in params:
      raise utils.InvalidParamsError('Give both --k and --l, or a sweep with --kmax/--lmax')
    cases = [(params['k'], params['l'])]
  else:
    cases = [(k, l) for k in range(2, params.get('kmax', 5) + 1) for l in range(params.get('lmax', 4) + 1)]
  reports = utils.fanout(lambda kl: flags.bmatrix_suite(*kl), cases)
  ok = all(r['ok'] for r in reports)
  return (utils.Outcome.CLASSIFIED if ok else utils.Outcome.INTERNAL), {'ok': ok, 'reports': reports}


def cmd_selftest(_params, seed):
  table = selftest.run_suite(seed)
  passed = all(c['passed'] for c in table)
  return (utils.Outcome.CLASSIFIED if passed else utils.Outcome.INTERNAL), {'passed': passed, 'criteria': table}


COMMANDS = {
  'flat-model': cmd_flatmodel,
  'growth': cmd_growth,
  'diagram': cmd_diagram,
  'symbol': cmd_symbol,
  'prolong': cmd_prolong,
  'gdim': cmd_gdim,
  'ideal': cmd_ideal,
  'bsuite': cmd_bsuite,
  'selftest': cmd_selftest,
}


def run(rc):
  '''Executes the command, returns the outcome and the report. LabErrors are turned into error reports'''
  seed = rc.seed or 0
  report = {'command': rc.command, 'seed': seed, 'anchor': ANCHORS[rc.command]}
  Lab.log.setcontext(command=rc.command, seed=seed)
  try:
    outcome, out = COMMANDS[rc.command](rc.params, seed)
  except utils.LabError as e:
    Lab.log.error('msg="Command failed" code="%s" error="%s"' % (e.code, e))
    outcome, out = e.outcome, e.asdict()
  report.update(out)
  return outcome, report


def render(report, fmt):
  '''The report as JSON, or as a flat human summary'''
  if fmt == 'text':
    return '\n'.join('%s: %s' % (k, v if isinstance(v, (str, int, bool)) else json.dumps(v))
                     for k, v in report.items()) + '\n'
  return json.dumps(report, indent=2) + '\n'


class Lab:
  '''A singleton container for the configuration and logging of the command line'''
  loglevels = {"Critical": logging.CRITICAL,  # 50
               "Error":    logging.ERROR,     # 40
               "Warning":  logging.WARNING,   # 30
               "Info":     logging.INFO,      # 20
               "Debug":    logging.DEBUG      # 10
              }
  log = utils.JsonLogger(logging.getLogger('tanakalab'))
  config = None

  @classmethod
  def init(cls, configpath=None):
    '''Reads the configuration and sets up logging, bails out in case of failures'''
    try:
      hostname = os.environ.get('HOST_HOSTNAME')
      if not hostname:
        hostname = socket.gethostname()
      cls.config = configparser.ConfigParser()
      with open(DEFAULTSCONF) as fdef:
        cls.config.read_file(fdef)
      if configpath:
        with open(configpath) as fconf:
          cls.config.read_file(fconf)
      else:
        cls.config.read(SITECONF)
      # logs never go to stdout, which carries the report
      logfile = cls.config.get('general', 'logfile', fallback='')
      loghandler = logging.FileHandler(logfile) if logfile else logging.StreamHandler(sys.stderr)
      loghandler.setFormatter(logging.Formatter(
          fmt='{"time": "%(asctime)s", "host": "' + hostname + \
              '", "process": "%(name)s", "level": "%(levelname)s", %(message)s}',
          datefmt='%Y-%m-%dT%H:%M:%S'))
      cls.log.logger.handlers = [loghandler]
      cls.log.logger.propagate = False
      cls.log.setLevel(cls.loglevels[cls.config.get('general', 'loglevel')])
      for module in (utils, poly, liecore, flags, dist, abnormal, selftest):
        module.init(cls.config, cls.log)
    except (configparser.Error, OSError, KeyError, ValueError) as e:
      # any error we get here with the configuration is fatal
      cls.log.fatal('msg="Failed to initialize the lab, aborting" error="%s"' % e)
      sys.exit(-22)


def main(argv=None):
  '''Entry point, returns the exit status'''
  try:
    rc = parse_args(sys.argv[1:] if argv is None else argv)
  except utils.InvalidParamsError as e:
    print(json.dumps(e.asdict()), file=sys.stderr)
    usage(utils.Outcome.INVALID.value)
  Lab.init(rc.configpath)
  Lab.log.info('msg="Running command" command="%s" version="%s"' % (rc.command, TANAKALABVERSION))
  try:
    rc.applydefaults(Lab.config)
    outcome, report = run(rc)
  except utils.InvalidParamsError as e:
    outcome, report = e.outcome, e.asdict()
  except Exception as e:    # pylint: disable=broad-except
    outcome = utils.logGeneralException(e)
    report = {'error': {'code': 'EINTERNAL', 'message': str(e)}}
  text = render(report, rc.format or 'json')
  if rc.output:
    with open(rc.output, 'w') as f:
      f.write(text)
  else:
    sys.stdout.write(text)
  return outcome.value


if __name__ == '__main__':
  sys.exit(main())
