'''
Triple intersection numbers and anticanonical volumes.

For a nef divisor N on a complete fan, N^3 = 6 vol(P_N). Mixed products of nef
classes follow by polarization of that cubic form, and arbitrary classes by
trilinearity against a basis of nef generators.
'''

import itertools
from dataclasses import dataclass
from functools import cmp_to_key, reduce

import sympy

import torifan.log as log
from torifan import lattice
from torifan.divisor import anticanonical_divisor, divisor, q_cartier_data
from torifan.errors import BadParameters, ConsistencyError, NotNef, NotProjective, Unbounded
from torifan.intersection import is_nef, lift_class, nef_cone, reduced_divisor_class

logger = log.createCustomLogger('volume')


@dataclass(frozen=True)
class Polytope3:
    vertices: tuple
    halfspaces: tuple


def divisor_polytope(f, D, check_nef=True):
    '''
    P_D = {m : <m, u_r> >= -a_r for every ray r}.
    '''
    D = divisor(f, D.coeffs)
    if not f.complete:
        raise Unbounded('divisor polytopes are bounded only on complete fans')
    if check_nef and not is_nef(f, D):
        raise NotNef('divisor polytope requested for a divisor that is not nef')

    halfspaces = tuple((u, -a) for u, a in zip(f.rays, D.coeffs))
    vertices = set()
    for triple in itertools.combinations(range(f.n_rays), 3):
        rows = [f.rays[i] for i in triple]
        if lattice.determinant(rows) == 0:
            continue
        m = lattice.solve_rational(rows, [-D.coeffs[i] for i in triple])
        if all(lattice.dot(m, u) >= b for u, b in halfspaces):
            vertices.add(m)

    cartier = set(q_cartier_data(f, D).data)
    if vertices != cartier:
        raise ConsistencyError('polytope vertices differ from the Cartier data of a nef divisor')
    return Polytope3(tuple(sorted(vertices)), halfspaces)


def _full_dimensional(vertices):
    if len(vertices) < 4:
        return False
    v0 = vertices[0]
    return lattice.rank([lattice.sub(v, v0) for v in vertices[1:]]) == 3


def _ordered_facet(tight, normal):
    '''
    Vertices of a planar convex polygon in cyclic order.
    '''
    drop = max(range(3), key=lambda k: abs(normal[k]))
    keep = [k for k in range(3) if k != drop]
    flat = [(v[keep[0]], v[keep[1]]) for v in tight]
    cx = sum(p[0] for p in flat) / len(flat)
    cy = sum(p[1] for p in flat) / len(flat)

    def half(p):
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if dy > 0 or (dy == 0 and dx > 0) else 1

    def compare(i, j):
        p, q = flat[i], flat[j]
        if half(p) != half(q):
            return half(p) - half(q)
        turn = (p[0] - cx) * (q[1] - cy) - (p[1] - cy) * (q[0] - cx)
        return -1 if turn > 0 else (1 if turn < 0 else 0)

    order = sorted(range(len(tight)), key=cmp_to_key(compare))
    return [tight[i] for i in order]


def _facet_triangles(P):
    for u, b in P.halfspaces:
        tight = [v for v in P.vertices if lattice.dot(v, u) == b]
        if len(tight) < 3 or not lattice.rank(
            [lattice.sub(v, tight[0]) for v in tight[1:]]
        ) == 2:
            continue
        polygon = _ordered_facet(tight, u)
        for k in range(1, len(polygon) - 1):
            yield polygon[0], polygon[k], polygon[k + 1]


def _pyramid_sum(P, apex):
    total = sympy.Integer(0)
    for a, b, c in _facet_triangles(P):
        rows = [lattice.sub(a, apex), lattice.sub(b, apex), lattice.sub(c, apex)]
        total += abs(lattice.determinant(rows))
    return total / 6


def polytope_volume(P):
    '''
    Euclidean volume by pyramids over the facets from the vertex centroid.
    '''
    if not _full_dimensional(P.vertices):
        return sympy.Integer(0)
    n = len(P.vertices)
    centroid = tuple(sum(v[k] for v in P.vertices) / n for k in range(3))
    return _pyramid_sum(P, centroid)


def polytope_volume_from_vertex(P):
    if not _full_dimensional(P.vertices):
        return sympy.Integer(0)
    return _pyramid_sum(P, P.vertices[0])


def cube(f, N):
    '''
    N^3 = 6 vol(P_N) for a nef divisor N.
    '''
    return 6 * polytope_volume(divisor_polytope(f, N, check_nef=False))


def _nef_basis(f):
    normals = nef_cone(f)
    rho = len(normals[0])
    basis = []
    for n in normals:
        if lattice.rank(basis + [n]) > len(basis):
            basis.append(n)
    if len(basis) < rho:
        raise NotProjective('nef cone is not full-dimensional')
    return basis


def triple(f, D1, D2, D3):
    '''
    D1 . D2 . D3 by trilinear expansion over nef generators and polarization.
    '''
    divisors = [divisor(f, D.coeffs) for D in (D1, D2, D3)]
    basis = _nef_basis(f)
    generators = [lift_class(f, n) for n in basis]
    columns = lattice.int_matrix(basis).T
    coefficients = [
        lattice.solve_rational(columns, reduced_divisor_class(f, D)) for D in divisors
    ]

    cubes = {}

    def cubic(indices):
        key = tuple(sorted(indices))
        if key not in cubes:
            total = reduce(lambda x, y: x + y, (generators[i] for i in key))
            cubes[key] = cube(f, total)
        return cubes[key]

    def mixed(j, k, l):
        value = sympy.Integer(0)
        for size in (1, 2, 3):
            for subset in itertools.combinations((j, k, l), size):
                value += (-1) ** (3 - size) * cubic(subset)
        return value / 6

    products = {}
    result = sympy.Integer(0)
    for j, k, l in itertools.product(range(len(basis)), repeat=3):
        c = coefficients[0][j] * coefficients[1][k] * coefficients[2][l]
        if c == 0:
            continue
        key = tuple(sorted((j, k, l)))
        if key not in products:
            products[key] = mixed(*key)
        result += c * products[key]
    return result


def anticanonical_volume(f):
    minus_k = anticanonical_divisor(f)
    value = triple(f, minus_k, minus_k, minus_k)
    if is_nef(f, minus_k):
        direct = cube(f, minus_k)
        if direct != value:
            raise ConsistencyError(f'polarization gives {value}, polytope gives {direct}')
    logger.debug(f'-K^3 = {value}')
    return value


def wps_hypersurface_volume(d, weights):
    '''
    -K^3 = d (sum w - d)^3 / prod w for a quasi-smooth well-formed X_d in P(w0..w4).
    '''
    weights = tuple(int(w) for w in weights)
    d = int(d)
    if len(weights) != 5 or any(w <= 0 for w in weights) or d <= 0:
        raise BadParameters(f'need a positive degree and five positive weights, got {d}, {weights}')
    if sum(weights) <= d:
        raise BadParameters(f'degree {d} is not below the weight sum {sum(weights)}')
    return sympy.Rational(d * (sum(weights) - d) ** 3, reduce(lambda x, y: x * y, weights))
