'''
Extremal contractions and two-ray games on toric threefolds.

The kind of an extremal ray is read off the circuit of any wall on it: with
n- negative and n+ positive coefficients, n- = 0 is a fiber type contraction
onto a base of dimension 4 - n+, n- = 1 contracts the divisor of the negative
ray onto a locus of dimension 3 - n+, and n- = 2 is small.
'''

import os
from dataclasses import dataclass

import sympy

import torifan.log as log
from torifan import lattice
from torifan.divisor import canonical_divisor, class_group_rank
from torifan.errors import (
    BadParameters,
    ConsistencyError,
    IterationCapExceeded,
    NotExtremal,
    NotRankTwo,
)
from torifan.fan import flip
from torifan.intersection import dot, lift_class, mori_cone, nef_cone
from torifan.singularity import is_terminal
from torifan.volume import anticanonical_volume, cube

logger = log.createCustomLogger('mmp')

DEFAULT_MAX_FLIPS = 64
MAX_FLIPS_ENV = 'TORIFAN_MAX_FLIPS'

SIGN_SUFFIX = {'negative': '-', 'zero': '0', 'positive': '+'}


@dataclass(frozen=True)
class RayClassification:
    ray: object
    kind: str
    k_sign: str
    type_label: str
    base_dim: object = None
    contracted_ray: object = None
    image_dim: object = None


@dataclass(frozen=True)
class GameStep:
    fan: object
    flipped_walls: tuple
    flip_k_sign: object
    volume: object
    terminal: bool


@dataclass(frozen=True)
class GameSide:
    steps: tuple
    end: RayClassification


@dataclass(frozen=True)
class TwoRayGameReport:
    start: object
    sides: tuple

    @property
    def left_end(self):
        return self.sides[0].end

    @property
    def right_end(self):
        return self.sides[1].end


def max_flips_from_env(environ=None):
    environ = os.environ if environ is None else environ
    raw = environ.get(MAX_FLIPS_ENV)
    if raw is None or raw == '':
        return DEFAULT_MAX_FLIPS
    try:
        value = int(raw)
    except ValueError:
        raise BadParameters(f'{MAX_FLIPS_ENV}={raw!r} is not an integer')
    if value < 0:
        raise BadParameters(f'{MAX_FLIPS_ENV} must be non-negative, got {value}')
    return value


def _wall_kind(wall):
    negative, positive = wall.sign_counts()
    if negative == 0:
        return ('fiber', 4 - positive)
    if negative == 1:
        contracted = next(i for i, c in enumerate(wall.relation) if c < 0)
        return ('divisorial', contracted, 3 - positive)
    return ('small',)


def _k_sign(value):
    if value < 0:
        return 'negative'
    if value > 0:
        return 'positive'
    return 'zero'


def classify_ray(f, R):
    if R.direction not in [r.direction for r in mori_cone(f)]:
        raise NotExtremal(f'{R.direction} is not an extremal ray of this fan')

    kinds = {_wall_kind(w) for w in R.walls}
    if len(kinds) != 1:
        raise ConsistencyError(f'walls on one extremal ray classify differently: {sorted(kinds)}')
    kind = kinds.pop()

    k_sign = _k_sign(dot(canonical_divisor(f), R.curve))
    suffix = SIGN_SUFFIX[k_sign]
    if kind[0] == 'fiber':
        return RayClassification(R, 'fiber', k_sign, f'(3,{kind[1]})^{suffix}', base_dim=kind[1])
    if kind[0] == 'divisorial':
        return RayClassification(
            R, 'divisorial', k_sign, f'(2,{kind[2]})^{suffix}',
            contracted_ray=kind[1], image_dim=kind[2],
        )
    return RayClassification(R, 'small', k_sign, '')


def contraction_target_dim(classification):
    if classification.kind == 'fiber':
        return classification.base_dim
    return 3


def supporting_class_is_big(f, R):
    '''
    Whether the nef classes vanishing on R have positive cube; False exactly
    for fiber type rays.
    '''
    supporting = [n for n in nef_cone(f) if lattice.dot(n, R.direction) == 0]
    if not supporting:
        return False
    total = supporting[0]
    for n in supporting[1:]:
        total = lattice.add(total, n)
    return cube(f, lift_class(f, total)) > 0


def _step(fan, flipped, k_sign):
    return GameStep(fan, flipped, k_sign, anticanonical_volume(fan), is_terminal(fan).holds)


def _play(f, R, max_flips):
    steps = [_step(f, (), None)]
    current, ray = f, R
    flips = 0
    while True:
        classification = classify_ray(current, ray)
        if classification.kind != 'small':
            return GameSide(tuple(steps), classification)
        if flips >= max_flips:
            raise IterationCapExceeded(f'two-ray game did not stop after {max_flips} flips')

        flipped, created = [], []
        for w in ray.walls:
            w = current.wall(*w.rays)
            current = flip(current, w)
            flipped.append(w.rays)
            created.append(tuple(sorted((w.off_a, w.off_b))))
        flips += 1
        logger.debug(f'Flipped {flipped} ({classification.k_sign} side).')
        steps.append(_step(current, tuple(flipped), classification.k_sign))

        candidates = [
            r for r in mori_cone(current) if not any(w.rays in created for w in r.walls)
        ]
        if len(candidates) != 1:
            raise ConsistencyError(f'expected one new extremal ray after the flip, got {len(candidates)}')
        ray = candidates[0]


def two_ray_game(f, max_flips=None):
    '''
    Run the game from both extremal rays of a Picard rank two fan.
    '''
    if class_group_rank(f) != 2:
        raise NotRankTwo(f'two-ray games need Picard rank 2, got {class_group_rank(f)}')
    if max_flips is None:
        max_flips = max_flips_from_env()
    sides = tuple(_play(f, R, max_flips) for R in mori_cone(f))
    return TwoRayGameReport(f, sides)


def volume_bound_table(b_max, kf2, ratio):
    '''
    a * K^2 bound with a <= ratio * b_max.
    '''
    b_max, kf2, ratio = (sympy.Rational(x) for x in (b_max, kf2, ratio))
    if min(b_max, kf2, ratio) <= 0:
        raise BadParameters('bound table inputs must be positive')
    return ratio * b_max * kf2


def volume_case_table():
    '''
    Bounds keyed by (dim Z_l, dim of the image of E): fibrations over a curve
    have K_F^2 <= 9 and b <= 3, over a surface K^2.H <= 12 and b <= 2; a <= 2b
    when E maps onto a curve and a <= 3b when it maps to a point.
    '''
    table = {}
    for base_dim, b_max, kf2 in ((1, 3, 9), (2, 2, 12)):
        for image_dim, ratio in ((1, 2), (0, 3)):
            table[(base_dim, image_dim)] = volume_bound_table(b_max, kf2, ratio)
    return table


def case_bound(report):
    '''
    Volume bound for a game with one fiber type end and one divisorial end,
    looked up by (dim of the base, dim of the image of the divisor).
    '''
    ends = {side.end.kind: side.end for side in report.sides}
    if set(ends) != {'fiber', 'divisorial'}:
        return None
    key = (contraction_target_dim(ends['fiber']), ends['divisorial'].image_dim)
    return volume_case_table().get(key)
