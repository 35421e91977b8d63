#!/usr/bin/python3
'''
Print the dimensions of the symmetry algebras of the flat (k,l) models
as a table, one row per k and one column per l
'''

import sys, os, getopt, logging

sys.path.append(os.path.join(os.path.dirname(os.path.abspath(__file__)), os.pardir, 'src'))
import labutils as utils     # pylint: disable=wrong-import-position
import flags                 # pylint: disable=wrong-import-position

# usage function
def usage(exitcode):
  '''Prints usage'''
  print('Usage : ' + sys.argv[0] + ' [-h|--help] [-v|--verbose] [-k|--kmax K] [-l|--lmax L]')
  sys.exit(exitcode)

# first parse the options
try:
  options, args = getopt.getopt(sys.argv[1:], 'hvk:l:', ['help', 'verbose', 'kmax=', 'lmax='])
except getopt.GetoptError as e:
  print(e)
  usage(1)
verbose = False
kmax, lmax = 4, 3
try:
  for f, v in options:
    if f == '-h' or f == '--help':
      usage(0)
    elif f == '-v' or f == '--verbose':
      verbose = True
    elif f == '-k' or f == '--kmax':
      kmax = int(v)
    elif f == '-l' or f == '--lmax':
      lmax = int(v)
    else:
      print("unknown option : " + f)
      usage(1)
except ValueError as e:
  print('Invalid value: %s' % e)
  usage(1)
if args:
  print('Too many arguments')
  usage(1)
if kmax < 2 or lmax < 0:
  print('Expected kmax >= 2 and lmax >= 0')
  usage(1)

if verbose:
  handler = logging.StreamHandler(sys.stderr)
  utils.log.logger.addHandler(handler)
  utils.log.setLevel(logging.DEBUG)

print('k\\l ' + ''.join('%12d' % l for l in range(lmax + 1)))
for k in range(2, kmax + 1):
  cells = []
  for l in range(lmax + 1):
    try:
      dims = flags.symmetry_algebra_dims(k, l)
      cells.append('%12s' % ('%d (%d)' % (dims['total'], dims['first_zero'])))
    except utils.LabError as e:
      if verbose:
        print('k=%d l=%d: %s' % (k, l, e), file=sys.stderr)
      cells.append('%12s' % 'n/a')
  print('%-4d' % k + ''.join(cells))
print('\nEach cell reads: dim of the symmetry algebra (first vanishing degree)')
