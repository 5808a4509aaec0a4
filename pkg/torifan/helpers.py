import json
import argparse

import sympy

from torifan.errors import BadParameters, ParseError
from torifan.fan import (
    Fan,
    bundle_over_P1,
    bundle_over_P2,
    flipped_bundle_over_P1,
    projective_space,
    weighted_projective,
)

FAMILIES = ('p3', 'wps', 'bundle', 'flipped-bundle', 'bundle-p2')
CHECK_GROUPS = (
    'volumes',
    'wps',
    'bundle',
    'flip',
    'singularities',
    'audit',
    'properties',
    'tworay',
    'bounds',
    'supplements',
)


def _fan_source():
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        'fan_file',
        nargs='?',
        help='JSON fan file {"rays": [...], "max_cones": [...], "names": [...]}.',
    )
    parent.add_argument(
        '--family',
        '-F',
        dest='family',
        choices=FAMILIES,
        help='Use a built-in fan instead of a fan file.',
    )
    parent.add_argument(
        '--alpha',
        '-a',
        dest='alpha',
        type=int,
        help='alpha of P(O + O(alpha) + O(beta)) over P^1.',
        default=6,
    )
    parent.add_argument(
        '--beta',
        '-b',
        dest='beta',
        type=int,
        help='beta of P(O + O(alpha) + O(beta)) over P^1.',
        default=5,
    )
    parent.add_argument(
        '--twist',
        dest='twist',
        type=int,
        help='a of P(O + O(a)) over P^2.',
        default=3,
    )
    parent.add_argument(
        '--weights',
        '-w',
        dest='weights',
        help='Weights of P(w0,w1,w2,w3) [1,1,1,3].',
        default='1,1,1,3',
    )
    return parent


def _common():
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument(
        '--json',
        dest='json',
        action='store_true',
        help='Print a machine-readable report.',
    )
    parent.add_argument(
        '--verbose',
        '-v',
        dest='verbose',
        action='store_true',
        help='Log at DEBUG level.',
    )
    return parent


def build_parser():
    parser = argparse.ArgumentParser(description='Exact toric threefold engine.')
    subparsers = parser.add_subparsers(dest='command', metavar='command')
    subparsers.required = True

    common, source = _common(), _fan_source()
    on_fan = [common, source]

    subparsers.add_parser('info', parents=on_fan, help='Rays, cones and invariants of a fan.')

    flip = subparsers.add_parser('flip', parents=on_fan, help='Flip a wall.')
    flip.add_argument(
        '--wall',
        dest='wall',
        required=True,
        help='The two rays of the wall, by name or index [D1,D2].',
    )

    subparsers.add_parser('mori', parents=on_fan, help='Extremal rays of the Mori cone.')
    subparsers.add_parser('nef', parents=on_fan, help='Generators of the nef cone.')
    subparsers.add_parser('terminal', parents=on_fan, help='Terminality verdict.')
    subparsers.add_parser('canonical', parents=on_fan, help='Canonicity verdict.')

    discrepancy = subparsers.add_parser(
        'discrepancy', parents=on_fan, help='Discrepancy of the divisor E_w.'
    )
    discrepancy.add_argument(
        '--point',
        '-p',
        dest='point',
        required=True,
        help='Primitive lattice point w [0,1,1].',
    )

    volume = subparsers.add_parser('volume', parents=on_fan, help='Anticanonical volume or D^3.')
    volume.add_argument(
        '--divisor',
        '-d',
        dest='divisor',
        help='Coefficients of D, one per ray [1,0,0,0,0]; defaults to -K.',
        default=None,
    )

    subparsers.add_parser('tworay', parents=on_fan, help='Two-ray game of a Picard rank 2 fan.')
    subparsers.add_parser('export', parents=on_fan, help='Write a fan as a JSON fan file.')

    verify = subparsers.add_parser(
        'verify-paper', parents=[common], help='Recompute the golden checklist.'
    )
    verify.add_argument(
        '--only',
        dest='only',
        choices=CHECK_GROUPS,
        action='append',
        help='Run only this group of checks (repeatable).',
        default=None,
    )
    verify.add_argument(
        '--threads',
        '-t',
        dest='n_threads',
        type=int,
        help='Number of worker processes.',
        default=1,
    )

    subparsers.add_parser(
        'bundle-params', parents=[common], help='Bundle parameters with a = 9 and their invariants.'
    )
    return parser


def parse_args(argv=None):
    return build_parser().parse_args(argv)


def parse_integer(raw):
    if isinstance(raw, bool):
        raise ParseError(f'{raw!r} is not an integer')
    if isinstance(raw, int):
        return raw
    if isinstance(raw, str):
        try:
            return int(raw.strip())
        except ValueError:
            pass
    raise ParseError(f'{raw!r} is not an integer')


def parse_rational(raw):
    '''
    "p/q", "p" or a JSON integer.
    '''
    if isinstance(raw, (int, str)) and not isinstance(raw, bool):
        try:
            return sympy.Rational(str(raw).strip())
        except (TypeError, ValueError, sympy.SympifyError):
            pass
    raise ParseError(f'{raw!r} is not a rational number')


def parse_vector(raw, length=None):
    parts = [p for p in raw.split(',') if p.strip()]
    if length is not None and len(parts) != length:
        raise ParseError(f'expected {length} comma separated entries, got {raw!r}')
    return tuple(parse_rational(p) for p in parts)


def parse_integers(raw, length=None):
    parts = [p for p in raw.split(',') if p.strip()]
    if length is not None and len(parts) != length:
        raise ParseError(f'expected {length} comma separated integers, got {raw!r}')
    return tuple(parse_integer(p) for p in parts)


def parse_point(raw):
    return parse_integers(raw, 3)


def parse_fan_data(data):
    if not isinstance(data, dict) or 'rays' not in data or 'max_cones' not in data:
        raise ParseError('a fan file needs "rays" and "max_cones"')
    try:
        rays = [tuple(parse_integer(x) for x in u) for u in data['rays']]
        cones = [tuple(parse_integer(i) for i in c) for c in data['max_cones']]
    except TypeError:
        raise ParseError('"rays" and "max_cones" must be lists of lists')
    names = data.get('names')
    if names is not None and not isinstance(names, list):
        raise ParseError('"names" must be a list')
    return Fan(rays, cones, names)


def parse_fan_file(path):
    try:
        with open(path) as f:
            data = json.load(f)
    except OSError as e:
        raise ParseError(f'cannot read {path}: {e.strerror}')
    except json.JSONDecodeError as e:
        raise ParseError(f'{path} is not valid JSON: {e}')
    return parse_fan_data(data)


def built_in_fan(args):
    if args.family == 'p3':
        return projective_space()
    if args.family == 'wps':
        return weighted_projective(*parse_integers(args.weights))
    if args.family == 'bundle':
        return bundle_over_P1(args.alpha, args.beta)
    if args.family == 'flipped-bundle':
        return flipped_bundle_over_P1(args.alpha, args.beta)
    return bundle_over_P2(args.twist)


def load_fan(args):
    if args.fan_file and args.family:
        raise BadParameters('give either a fan file or --family, not both')
    if args.fan_file:
        return parse_fan_file(args.fan_file)
    if args.family:
        return built_in_fan(args)
    raise BadParameters('no fan given; pass a fan file or --family')


def parse_wall(f, raw):
    '''
    Ray indices of a wall given as "D1,D2" or "1,2".
    '''
    parts = [p.strip() for p in raw.split(',')]
    if len(parts) != 2:
        raise ParseError(f'a wall is given by two rays, got {raw!r}')
    names = [f.name(i) for i in range(f.n_rays)]
    indices = []
    for p in parts:
        if p in names:
            indices.append(names.index(p))
        else:
            indices.append(parse_integer(p))
    return tuple(indices)


def format_rational(x):
    x = sympy.Rational(x)
    if x.q == 1:
        return str(x.p)
    return f'{x.p}/{x.q}'


def format_vector(v):
    return '(' + ','.join(format_rational(x) for x in v) + ')'
