'''
Discrepancies of toric exceptional divisors and the terminal / canonical tests.

For a primitive w in a maximal cone sigma, the divisor E_w obtained by star
subdivision has discrepancy a(E_w) = <m_sigma(K), w> - 1.
'''

import itertools
from collections import namedtuple
from dataclasses import dataclass

import numpy as np
import sympy

import torifan.log as log
from torifan import lattice
from torifan.divisor import canonical_divisor, cartier_index, q_cartier_data
from torifan.errors import ConsistencyError, NotComplete, NotPrimitive, OutsideSupport
from torifan.fan import star_subdivision
from torifan.intersection import curve_class

logger = log.createCustomLogger('singularity')

Verdict = namedtuple('Verdict', ['holds', 'witness', 'cone', 'value'])


@dataclass(frozen=True)
class DiscrepancyReport:
    cone: tuple
    face: tuple
    point: tuple
    value: object


def discrepancy(f, w):
    w = lattice.point(w)
    if not lattice.is_primitive(w):
        raise NotPrimitive(f'{w} is not primitive')
    hits = f.containing_cones(w)
    if not hits:
        raise OutsideSupport(f'{w} is outside the support of the fan')

    data = q_cartier_data(f, canonical_divisor(f))
    values = {lattice.dot(data.data[pos], w) - 1 for pos, _ in hits}
    if len(values) != 1:
        raise ConsistencyError(f'cones through {w} disagree on the discrepancy: {sorted(values)}')

    pos, lam = hits[0]
    cone = f.max_cones[pos].rays
    face = tuple(r for r, l in zip(cone, lam) if l > 0)
    return DiscrepancyReport(cone, face, w, values.pop())


def discrepancy_via_subdivision(f, w):
    '''
    a(E_w) recomputed on the star subdivision.

    The pullback of K has coefficient x on the new ray, fixed by requiring
    the pullback to be trivial on every curve contracted to a point.
    '''
    w = lattice.point(w)
    if not lattice.is_primitive(w):
        raise NotPrimitive(f'{w} is not primitive')
    if w in f.rays:
        return sympy.Integer(0)
    if not f.containing_cones(w):
        raise OutsideSupport(f'{w} is outside the support of the fan')

    g = star_subdivision(f, w)
    new = len(f.rays)
    solutions = set()
    for wall in g.walls():
        if new not in wall.rays:
            continue
        other = wall.rays[0] if wall.rays[1] == new else wall.rays[1]
        middle = lattice.add(w, g.rays[other])
        if not any(all(l > 0 for l in lam) for _, lam in f.containing_cones(middle)):
            continue
        profile = curve_class(g, wall).profile
        old = sum(profile[i] for i in range(new))
        solutions.add(old / profile[new])
    if len(solutions) != 1:
        raise ConsistencyError(f'contracted curves over {w} give pullback coefficients {solutions}')
    return -1 - solutions.pop()


def simplex_points(f, pos):
    '''
    Lattice points of conv(0, u1, u2, u3) for the pos-th maximal cone, with
    their depth sum(lambda) = <m_sigma(K), x>.
    '''
    generators = [f.rays[i] for i in f.max_cones[pos].rays]
    columns = lattice.int_matrix(generators).T
    det = int(columns.det())
    sign = 1 if det > 0 else -1
    adjugate = np.array(columns.adjugate().tolist(), dtype=object) * sign

    corners = generators + [(0, 0, 0)]
    ranges = [range(min(c[k] for c in corners), max(c[k] for c in corners) + 1) for k in range(3)]
    grid = np.array(list(itertools.product(*ranges)), dtype=object)
    scaled = grid.dot(adjugate.T)
    depth = scaled.sum(axis=1)
    inside = ((scaled >= 0).all(axis=1) & (depth <= abs(det))).astype(bool)
    return [
        (tuple(int(c) for c in x), sympy.Rational(int(s), abs(det)))
        for x, s in zip(grid[inside], depth[inside])
    ]


def _violations(f, strict):
    if not f.complete:
        raise NotComplete('singularity tests need a complete fan')
    found = []
    for pos, cone in enumerate(f.max_cones):
        vertices = {f.rays[i] for i in cone.rays} | {(0, 0, 0)}
        for x, depth in simplex_points(f, pos):
            if x in vertices or not lattice.is_primitive(x):
                continue
            bad = depth <= 1 if strict else depth < 1
            if bad:
                found.append((x, cone.rays, depth - 1))
    # most negative discrepancy first, ties broken by the point
    return sorted(found, key=lambda v: (v[2], v[0]))


def _verdict(found):
    if not found:
        return Verdict(True, None, None, None)
    x, cone, value = found[0]
    return Verdict(False, x, cone, value)


def is_terminal(f):
    '''
    Terminal iff no lattice point other than 0 and the generators lies in any
    simplex conv(0, u1, u2, u3); the witness is a point of least discrepancy.
    '''
    verdict = _verdict(_violations(f, strict=True))
    logger.debug(f'Terminal: {verdict.holds}.')
    return verdict


def is_canonical(f):
    verdict = _verdict(_violations(f, strict=False))
    logger.debug(f'Canonical: {verdict.holds}.')
    return verdict


def gorenstein_index(f):
    return cartier_index(f, canonical_divisor(f))
