'''
Exact integer and rational linear algebra in the rank-3 lattice N = Z^3.

Lattice points are tuples of Python ints, rational vectors are tuples of
sympy Rationals and matrices are sympy Matrices. Nothing here touches
floating point.
'''

import itertools
from functools import reduce
from math import gcd

import sympy

from torifan.errors import (
    DependentGenerators,
    DimensionMismatch,
    SingularMatrix,
    ZeroVector,
)

RANK = 3


def point(coords):
    coords = tuple(coords)
    if len(coords) != RANK:
        raise DimensionMismatch(f'expected {RANK} coordinates, got {len(coords)}')
    pt = []
    for c in coords:
        value = sympy.Rational(c)
        if not value.is_integer:
            raise DimensionMismatch(f'lattice coordinate {c} is not an integer')
        pt.append(int(value))
    return tuple(pt)


def rational_vector(coords):
    return tuple(sympy.Rational(c) for c in coords)


def int_matrix(rows):
    matrix = sympy.Matrix([[sympy.Integer(x) for x in row] for row in rows])
    return matrix


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(v, s):
    return tuple(s * a for a in v)


def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), sympy.Integer(0))


def cross(u, v):
    return (
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    )


def determinant(rows):
    a, b, c = rows
    return dot(a, cross(b, c))


def content(v):
    return reduce(gcd, (abs(int(x)) for x in v), 0)


def primitive(v):
    '''
    Divide a lattice point by the gcd of its coordinates.
    '''
    v = point(v)
    g = content(v)
    if g == 0:
        raise ZeroVector('the zero vector has no primitive generator')
    return tuple(x // g for x in v)


def is_primitive(v):
    return content(v) == 1


def sublattice_index(gens, d=None):
    '''
    Index of the subgroup generated by `gens` in its saturation.

    Computed as the d-th determinantal divisor of the d x 3 generator matrix,
    i.e. the gcd of all its d x d minors. For d = 3 this is |det|.
    '''
    gens = [point(g) for g in gens]
    if d is None:
        d = len(gens)
    if d != len(gens) or not 1 <= d <= RANK:
        raise DependentGenerators(f'need between 1 and {RANK} generators, got {len(gens)}')

    matrix = int_matrix(gens)
    minors = [
        abs(int(matrix.extract(list(range(d)), list(cols)).det()))
        for cols in itertools.combinations(range(RANK), d)
    ]
    index = reduce(gcd, minors, 0)
    if index == 0:
        raise DependentGenerators(f'generators {gens} have rank below {d}')
    return index


def solve_rational(A, b):
    '''
    Exact solution x of A x = b for a square invertible A.
    '''
    if not isinstance(A, sympy.MatrixBase):
        A = int_matrix(A)
    if A.rows != A.cols:
        raise SingularMatrix(f'{A.rows}x{A.cols} system is not square')
    if A.det() == 0:
        raise SingularMatrix('matrix is singular over the rationals')
    rhs = sympy.Matrix([sympy.Rational(x) for x in b])
    return rational_vector(A.LUsolve(rhs))


def clear_denominators(v):
    '''
    Smallest positive multiple of a rational vector that is integral and has content 1.
    '''
    v = rational_vector(v)
    lcm = reduce(sympy.ilcm, (x.q for x in v), 1)
    ints = [int(x * lcm) for x in v]
    g = reduce(gcd, (abs(x) for x in ints), 0)
    if g == 0:
        raise ZeroVector('cannot normalise the zero vector')
    return tuple(x // g for x in ints)


def integral_kernel(rows, ncols):
    '''
    Canonical integral basis of the rational kernel of a matrix.

    The kernel basis is brought to reduced row echelon form (fixed pivot order)
    and each row is scaled to a primitive integer vector with positive pivot.
    '''
    matrix = sympy.Matrix(rows) if rows else sympy.zeros(0, ncols)
    basis = matrix.nullspace() if matrix.rows else [sympy.eye(ncols).col(i) for i in range(ncols)]
    if not basis:
        return []
    echelon, pivots = sympy.Matrix.hstack(*basis).T.rref()
    kernel = []
    for i, _ in enumerate(pivots):
        kernel.append(clear_denominators(echelon.row(i)))
    return kernel


def rank(rows):
    if not rows:
        return 0
    return sympy.Matrix(rows).rank()
