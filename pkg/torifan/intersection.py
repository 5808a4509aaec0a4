'''
Curve classes of walls, intersection numbers with torus-invariant divisors,
and the Mori and nef cones of a complete simplicial fan.

The numerical class space N_1 is the kernel of the ray map Q^rays -> N_Q; its
basis is the canonical integral kernel basis from torifan.lattice, so
reduced coordinates are reproducible. A divisor class is reduced to its
pairings with that basis.
'''

import itertools
from dataclasses import dataclass

import sympy

import torifan.log as log
from torifan.divisor import TorusDivisor, divisor
from torifan.errors import DimensionMismatch, NotComplete, NotProjective, PicardRankTooLarge
from torifan import lattice
from torifan.lattice import clear_denominators, integral_kernel, rank, sublattice_index

logger = log.createCustomLogger('intersection')

MAX_DUAL_RANK = 4


@dataclass(frozen=True)
class CurveClass:
    wall: object
    profile: tuple
    reduced: tuple


@dataclass(frozen=True)
class ExtremalRay:
    direction: tuple
    walls: tuple
    curve: CurveClass


def _memo(f, key, compute):
    memo = f.__dict__.setdefault('_memo', {})
    if key not in memo:
        memo[key] = compute()
    return memo[key]


def curve_basis(f):
    '''
    Canonical integral basis of N_1(X) inside Q^rays, with pivot positions.
    '''
    def compute():
        rows = [[u[k] for u in f.rays] for k in range(3)]
        basis = integral_kernel(rows, f.n_rays)
        pivots = [next(i for i, x in enumerate(b) if x != 0) for b in basis]
        return tuple(basis), tuple(pivots)
    return _memo(f, 'curve_basis', compute)


def reduce_profile(f, profile):
    basis, pivots = curve_basis(f)
    return tuple(sympy.Rational(profile[p], b[p]) for b, p in zip(basis, pivots))


def reduced_divisor_class(f, D):
    basis, _ = curve_basis(f)
    D = divisor(f, D.coeffs)
    return tuple(lattice.dot(D.coeffs, b) for b in basis)


def curve_class(f, w):
    '''
    Intersection profile of V(tau) for the wall tau.

    D_u . V(tau) = mult(tau) / mult(tau + u) for the two off-wall rays; the
    whole profile is the wall relation scaled to match, which makes it
    annihilate every principal divisor.
    '''
    if not f.complete:
        raise NotComplete('curve classes need a complete fan')
    mult_tau = sublattice_index([f.rays[i] for i in w.rays])
    mult_a = f.max_cones[w.side_a].multiplicity
    factor = sympy.Rational(mult_tau, mult_a) / w.relation[w.off_a]
    profile = tuple(factor * c for c in w.relation)
    return CurveClass(w, profile, reduce_profile(f, profile))


def wall_classes(f):
    return _memo(f, 'wall_classes', lambda: tuple(curve_class(f, w) for w in f.walls()))


def dot(D, C):
    '''
    D . C for a torus-invariant divisor and a curve class on the same fan.
    '''
    if len(D.coeffs) != len(C.profile):
        raise DimensionMismatch(f'divisor on {len(D.coeffs)} rays, curve on {len(C.profile)}')
    return lattice.dot(D.coeffs, C.profile)


def _direction(v):
    return clear_denominators(v)


def _facet_normals(directions, rho):
    if rho > MAX_DUAL_RANK:
        raise PicardRankTooLarge(f'dual cones are computed for Picard rank <= {MAX_DUAL_RANK}, got {rho}')
    if rank(list(directions)) < rho:
        raise NotProjective('curve classes do not span N_1')

    normals = []
    if rho == 1:
        candidates = [(1,), (-1,)]
    else:
        candidates = []
        for subset in itertools.combinations(directions, rho - 1):
            kernel = integral_kernel([list(d) for d in subset], rho)
            if len(kernel) == 1:
                candidates.extend([kernel[0], tuple(-x for x in kernel[0])])
    for n in candidates:
        if n not in normals and all(lattice.dot(n, d) >= 0 for d in directions):
            normals.append(n)
    if not normals:
        raise NotProjective('the Mori cone contains a line')
    return sorted(normals)


def _cone_data(f):
    def compute():
        classes = wall_classes(f)
        rho = len(curve_basis(f)[0])
        directions = sorted({_direction(c.reduced) for c in classes if any(c.reduced)})
        normals = _facet_normals(directions, rho)
        extremal = [
            d for d in directions
            if rank([n for n in normals if lattice.dot(n, d) == 0] or [[0] * rho]) == rho - 1
        ]
        if rho == 1:
            extremal = directions
        return classes, tuple(extremal), tuple(normals)
    return _memo(f, 'cone_data', compute)


def mori_cone(f):
    '''
    Extremal rays of the cone spanned by the wall classes.
    '''
    classes, extremal, _ = _cone_data(f)
    rays = []
    for d in extremal:
        on_ray = [c for c in classes if any(c.reduced) and _direction(c.reduced) == d]
        rays.append(ExtremalRay(d, tuple(c.wall for c in on_ray), on_ray[0]))
    logger.debug(f'Mori cone with {len(rays)} extremal rays.')
    return rays


def nef_cone(f):
    '''
    Generators of the nef cone in reduced divisor coordinates (dual of the Mori cone).
    '''
    return list(_cone_data(f)[2])


def lift_class(f, reduced):
    '''
    A torus-invariant divisor whose reduced class is `reduced`.
    '''
    basis, _ = curve_basis(f)
    system = sympy.Matrix([list(b) for b in basis])
    solution, params = system.gauss_jordan_solve(sympy.Matrix(list(reduced)))
    solution = solution.subs({p: 0 for p in params})
    return TorusDivisor(tuple(solution))


def is_nef(f, D):
    D = divisor(f, D.coeffs)
    return all(dot(D, c) >= 0 for c in wall_classes(f))


def same_ray(u, v):
    '''
    Whether two nonzero reduced vectors are positive multiples of each other.
    '''
    return _direction(u) == _direction(v)
