'''
Torus-invariant Weil divisors and their Q-Cartier data.

Sign convention: D = sum a_r D_r has local data m_sigma with
<m_sigma, u_r> = -a_r for every ray r of sigma, so for K (all a_r = -1)
the data satisfies <m_sigma, u_r> = 1.
'''

from collections import namedtuple
from dataclasses import dataclass
from functools import reduce

import sympy

import torifan.log as log
from torifan.errors import DegenerateCone, DimensionMismatch
from torifan.lattice import dot, int_matrix, rank, rational_vector, solve_rational

logger = log.createCustomLogger('divisor')

Equivalence = namedtuple('Equivalence', ['equivalent', 'witness'])


@dataclass(frozen=True)
class TorusDivisor:
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, 'coeffs', rational_vector(self.coeffs))

    def __len__(self):
        return len(self.coeffs)

    def _check(self, other):
        if len(self) != len(other):
            raise DimensionMismatch(f'divisors on {len(self)} and {len(other)} rays')

    def __add__(self, other):
        self._check(other)
        return TorusDivisor(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return TorusDivisor(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return TorusDivisor(tuple(-a for a in self.coeffs))

    def __mul__(self, s):
        s = sympy.Rational(s)
        return TorusDivisor(tuple(s * a for a in self.coeffs))

    __rmul__ = __mul__


@dataclass(frozen=True)
class CartierData:
    cones: tuple
    data: tuple

    def on(self, cone_rays):
        return self.data[self.cones.index(tuple(sorted(cone_rays)))]


def divisor(f, coeffs):
    coeffs = tuple(coeffs)
    if len(coeffs) != f.n_rays:
        raise DimensionMismatch(f'expected {f.n_rays} coefficients, got {len(coeffs)}')
    return TorusDivisor(coeffs)


def zero_divisor(f):
    return TorusDivisor((0,) * f.n_rays)


def prime_divisor(f, i):
    return TorusDivisor(tuple(int(j == i) for j in range(f.n_rays)))


def named_divisor(f, terms):
    '''
    Divisor from a {ray name: coefficient} mapping, e.g. {'D0': 3, 'E1': -4}.
    '''
    coeffs = [0] * f.n_rays
    for name, c in terms.items():
        coeffs[[f.name(i) for i in range(f.n_rays)].index(name)] += sympy.Rational(c)
    return TorusDivisor(tuple(coeffs))


def canonical_divisor(f):
    return TorusDivisor((-1,) * f.n_rays)


def anticanonical_divisor(f):
    return -canonical_divisor(f)


def principal_divisor(f, m):
    '''
    div(chi^m) = sum <m, u_r> D_r.
    '''
    m = rational_vector(m)
    return TorusDivisor(tuple(dot(m, u) for u in f.rays))


def linearly_equivalent(f, D1, D2):
    '''
    Whether D1 - D2 = div(chi^m) for a rational m, with the witness m.
    '''
    diff = divisor(f, D1.coeffs) - divisor(f, D2.coeffs)
    system = int_matrix(f.rays)
    try:
        solution, params = system.gauss_jordan_solve(sympy.Matrix(diff.coeffs))
    except ValueError:
        return Equivalence(False, None)
    solution = solution.subs({p: 0 for p in params})
    return Equivalence(True, rational_vector(solution))


def class_group_rank(f):
    rho = f.n_rays - rank(f.rays)
    logger.debug(f'Class group rank {rho}.')
    return rho


def q_cartier_data(f, D):
    '''
    Per maximal cone, the unique m_sigma with <m_sigma, u_r> = -a_r on its rays.
    '''
    D = divisor(f, D.coeffs)
    cones, data = [], []
    for cone in f.max_cones:
        rows = [f.rays[i] for i in cone.rays]
        rhs = [-D.coeffs[i] for i in cone.rays]
        try:
            data.append(solve_rational(int_matrix(rows), rhs))
        except ValueError as e:
            raise DegenerateCone(f'cone {cone.rays}: {e}')
        cones.append(cone.rays)
    return CartierData(tuple(cones), tuple(data))


def cartier_index(f, D):
    data = q_cartier_data(f, D)
    return reduce(sympy.ilcm, (x.q for m in data.data for x in m), 1)
