'''
Numerical bookkeeping for projectivized split bundles X_l = P(O + O(alpha) + O(beta))
over P^1 when -K_{X_l} = a F + 3 E_l with E_l restricting to O(1) on the fibers.
'''

from collections import namedtuple

import sympy

import torifan.log as log
from torifan.divisor import anticanonical_divisor, named_divisor, prime_divisor
from torifan.errors import BadParameters
from torifan.fan import bundle_over_P1
from torifan.intersection import dot, mori_cone

logger = log.createCustomLogger('bundles')

FiberLineCheck = namedtuple('FiberLineCheck', ['anticanonical_degree', 'tautological_degree'])


def fiber_coefficient(alpha, beta):
    '''
    a in -K = O(3) + (2 - alpha - beta) F = 3 O(1) + (a - 3 alpha) F, i.e. a = 2 + 2 alpha - beta.
    '''
    return 2 + 2 * int(alpha) - int(beta)


def candidate_bundle_parameters():
    '''
    All (alpha, beta) with a = 9 and alpha > beta >= 0, i.e. 0 <= 2 alpha - 7 = beta < alpha.
    '''
    found = []
    # beta < alpha bounds alpha by 6
    for alpha in range(7, -1, -1):
        beta = 2 * alpha - 7
        if 0 <= beta < alpha:
            found.append((alpha, beta))
    logger.debug(f'Bundle candidates: {found}')
    return found


def identity_model_volume(a, e_cubed):
    '''
    (a F + 3 E)^3 = 27 a + 27 E^3 when F^2 = 0 and E^2 . F = 1.
    '''
    return 27 * sympy.Rational(a) + 27 * sympy.Rational(e_cubed)


def del_pezzo_fiber_bound(kf2, b):
    '''
    The bound a K_F^2 with a <= 3b <= 9, split by whether b <= 2.
    '''
    kf2, b = sympy.Rational(kf2), sympy.Rational(b)
    if not 0 < kf2 <= 9 or not 0 < b <= 3:
        raise BadParameters(f'need 0 < K_F^2 <= 9 and 0 < b <= 3, got {kf2}, {b}')
    if b <= 2:
        return 3 * b * kf2
    return 9 * kf2


def fiber_line_degrees(alpha, beta):
    '''
    -K . C_l and O(1) . C_l for a line C_l in a fiber of X_l; expected 3 and 1.
    '''
    f = bundle_over_P1(alpha, beta)
    fiber_ray = next(
        r for r in mori_cone(f) if dot(prime_divisor(f, 0), r.curve) == 0
    )
    tautological = named_divisor(f, {'D0': 1})
    return FiberLineCheck(
        dot(anticanonical_divisor(f), fiber_ray.curve),
        dot(tautological, fiber_ray.curve),
    )
