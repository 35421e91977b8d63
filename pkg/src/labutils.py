'''
labutils.py

General low-level functions to support the tanakalab engine: logging facade,
error taxonomy, rational codecs and the fan-out helper
'''

import sys
import os
import json
import re
import traceback
import logging
from enum import Enum
from fractions import Fraction
from concurrent.futures import ThreadPoolExecutor

# environment variable capping the parallelism of fan-out computations
THREADSENV = 'TANAKA_LAB_THREADS'

# convenience references to global entities
threads = 1


class Outcome(Enum):
  '''Process exit status of a command'''
  # a report was produced (for diagrams: a Young type was found)
  CLASSIFIED = 0
  # invalid parameters or inadmissible input
  INVALID = 1
  # dim D^2 < 6: reduced or degenerate case
  REDUCED = 2
  # no admissible covector found within the sampling budget
  EXHAUSTED = 3
  # internal validation failure
  INTERNAL = 4


class JsonLogger:
  '''A facade in front of a logger that turns the `key="value" ...` messages of the engine into
  JSON members, prefixed by the context of the running command (command name and seed)'''
  levels = ('debug', 'info', 'warning', 'error', 'critical', 'fatal', 'exception')
  kvpattern = re.compile(r'(\w+)="((?:[^"\\]|\\.)*)"')

  def __init__(self, logger):
    self.logger = logger
    self.context = {}

  def setcontext(self, **fields):
    '''Sets the fields attached to every following record, None clears them'''
    self.context = {k: str(v) for k, v in fields.items() if v is not None}

  def tojson(self, msg):
    '''The JSON members for a message, or None if the message is not in key="value" form'''
    fields = self.kvpattern.findall(msg)
    if not fields or self.kvpattern.sub('', msg).strip():
      return None
    return json.dumps({**self.context, **dict(fields)})[1:-1]

  def __getattr__(self, name):
    if name not in self.levels:
      return getattr(self.logger, name)

    def emit(msg, *args, **kwargs):
      members = self.tojson(msg)
      if members is None:
        members = json.dumps({**self.context, 'msg': msg % args if args else msg})[1:-1]
      return getattr(self.logger, name)(members, **kwargs)
    return emit


class LabError(Exception):
  '''Base class for all errors raised by the engine, carrying a machine-readable code'''
  code = 'EINTERNAL'
  outcome = Outcome.INTERNAL

  def __init__(self, message, code=None):
    super().__init__(message)
    if code:
      self.code = code

  def asdict(self):
    '''Returns the JSON form emitted by the command line'''
    return {'error': {'code': self.code, 'message': str(self)}}


class InvalidParamsError(LabError):
  '''A precondition on the input parameters is violated'''
  code = 'EINVAL'
  outcome = Outcome.INVALID


class NotAdmissibleError(LabError):
  '''A covector or base point is not admissible for the requested computation'''
  code = 'ENOTADMISSIBLE'
  outcome = Outcome.INVALID


class ValidationError(LabError):
  '''A construction contract failed: this is a bug and never expected'''
  code = 'EVALIDATION'
  outcome = Outcome.INTERNAL


class SamplingExhaustedError(LabError):
  '''No admissible sample was found within the configured budget'''
  code = 'EEXHAUSTED'
  outcome = Outcome.EXHAUSTED


def logGeneralException(ex):
  '''Convenience function to log a stack trace and return the internal error outcome'''
  ex_type, ex_value, ex_traceback = sys.exc_info()
  log.error('msg="Unexpected exception caught" exception="%s" type="%s" traceback="%s"' %
            (ex, ex_type, traceback.format_exception(ex_type, ex_value, ex_traceback)))
  return Outcome.INTERNAL


def ratstr(q):
  '''Serializes a rational as "num/den", omitting the denominator when 1'''
  q = Fraction(q)
  if q.denominator == 1:
    return str(q.numerator)
  return '%d/%d' % (q.numerator, q.denominator)


def ratparse(s):
  '''Parses a rational from its string or integer form'''
  try:
    return Fraction(s)
  except (ValueError, TypeError, ZeroDivisionError) as e:
    raise InvalidParamsError('Invalid rational value %r: %s' % (s, e))


def parsevector(text):
  '''Parses a comma-separated list or a JSON array of rationals'''
  text = text.strip()
  if text.startswith('['):
    try:
      items = json.loads(text)
    except json.JSONDecodeError as e:
      raise InvalidParamsError('Invalid vector %s: %s' % (text, e))
  else:
    items = [t for t in text.split(',') if t.strip()]
  return [ratparse(str(i).strip()) for i in items]


def matjson(m):
  '''Serializes a MatQ-like object as a list of rows of rational strings'''
  return [[ratstr(x) for x in row] for row in m.tolist()]


def fanout(func, items):
  '''Maps func over items preserving the input order, in parallel up to the configured threads'''
  items = list(items)
  if threads <= 1 or len(items) <= 1:
    return [func(i) for i in items]
  with ThreadPoolExecutor(max_workers=min(threads, len(items))) as pool:
    return list(pool.map(func, items))


def getthreads(config=None):
  '''Returns the parallelism cap, from the environment or else from the configuration'''
  envthreads = os.environ.get(THREADSENV)
  if envthreads:
    try:
      return max(1, int(envthreads))
    except ValueError:
      raise InvalidParamsError('Invalid %s value: %s' % (THREADSENV, envthreads))
  if config is not None:
    return max(1, config.getint('general', 'threads', fallback=1))
  return 1


def init(inconfig, inlog):
  '''Initializes the module, to be called after the configuration is read'''
  global log         # pylint: disable=global-statement
  global threads     # pylint: disable=global-statement
  log = inlog
  threads = getthreads(inconfig)


# a default logger that stays silent until the command line configures handlers
log = JsonLogger(logging.getLogger('tanakalab'))
log.logger.addHandler(logging.NullHandler())
