'''
Complete and non-complete simplicial fans in N = Z^3.

A Fan is validated once, at construction, and never mutated afterwards; flips
and star subdivisions return new fans.
'''

import itertools
from dataclasses import dataclass
from functools import cached_property
from math import gcd

import sympy

import torifan.log as log
from torifan.errors import (
    BadParameters,
    BadWeights,
    DegenerateCone,
    FlipNotDefined,
    NotComplete,
    NotPrimitive,
    NotPure,
    OutsideSupport,
    OverlappingCones,
)
from torifan.lattice import (
    clear_denominators,
    cross,
    determinant,
    dot,
    int_matrix,
    is_primitive,
    point,
    primitive,
    scale,
    sublattice_index,
)

logger = log.createCustomLogger('fan')


@dataclass(frozen=True)
class Cone:
    rays: tuple
    multiplicity: int

    @property
    def dim(self):
        return len(self.rays)


@dataclass(frozen=True)
class Wall:
    '''
    Two-dimensional cone shared by the maximal cones side_a and side_b.

    `relation` has one integer entry per ray of the fan, is supported on the
    four rays of side_a and side_b, has content 1, and is positive on the two
    off-wall rays off_a and off_b.
    '''
    rays: tuple
    side_a: int
    side_b: int
    off_a: int
    off_b: int
    relation: tuple

    def sign_counts(self):
        negative = sum(1 for c in self.relation if c < 0)
        positive = sum(1 for c in self.relation if c > 0)
        return negative, positive


class Fan:

    def __init__(self, rays, max_cones, names=None):
        normalized = []
        for u in rays:
            u = point(u)
            p = primitive(u)
            if p != u:
                logger.warning(f'Ray {u} is not primitive, replaced by {p}.')
            normalized.append(p)
        if len(set(normalized)) != len(normalized):
            raise BadParameters(f'duplicate rays in {normalized}')
        self.rays = tuple(normalized)

        if names is not None:
            names = tuple(str(n) for n in names)
            if len(names) != len(self.rays):
                raise BadParameters('one name per ray is required')
        self.names = names

        cones = []
        for raw in max_cones:
            idx = tuple(sorted(set(int(i) for i in raw)))
            if any(i < 0 or i >= len(self.rays) for i in idx):
                raise BadParameters(f'cone {raw} refers to a missing ray')
            if len(idx) < 3:
                raise NotPure(f'maximal cone {raw} has dimension below 3')
            if len(idx) > 3:
                raise DegenerateCone(f'cone {raw} is not simplicial')
            if determinant([self.rays[i] for i in idx]) == 0:
                raise DegenerateCone(f'cone {raw} has dependent generators')
            cones.append(Cone(idx, sublattice_index([self.rays[i] for i in idx])))
        if len(set(c.rays for c in cones)) != len(cones):
            raise OverlappingCones('a maximal cone is listed twice')
        self.max_cones = tuple(cones)

        self._faces = self._collect_faces()
        self.complete = all(len(sides) == 2 for sides in self._faces.values())
        self._check_overlaps()
        logger.debug(
            f'Fan with {len(self.rays)} rays and {len(self.max_cones)} cones, complete={self.complete}.'
        )

    # ------------------------------------------------------------
    # Validation
    # ------------------------------------------------------------
    def _collect_faces(self):
        faces = {}
        for pos, cone in enumerate(self.max_cones):
            for pair in itertools.combinations(cone.rays, 2):
                faces.setdefault(pair, []).append(pos)

        for pair, sides in faces.items():
            if len(sides) > 2:
                raise OverlappingCones(f'face {pair} lies on {len(sides)} maximal cones')
            if len(sides) == 2:
                normal = cross(self.rays[pair[0]], self.rays[pair[1]])
                s_a = dot(normal, self.rays[self._opposite(sides[0], pair)])
                s_b = dot(normal, self.rays[self._opposite(sides[1], pair)])
                if s_a * s_b >= 0:
                    raise OverlappingCones(f'cones on both sides of face {pair} overlap')
        return faces

    def _opposite(self, pos, pair):
        return next(i for i in self.max_cones[pos].rays if i not in pair)

    def _check_overlaps(self):
        # two maximal cones may only meet along the cone spanned by their common rays
        normals = [[tuple(inv.row(k)) for k in range(3)] for inv in self._inverses]
        for a, b in itertools.combinations(range(len(self.max_cones)), 2):
            shared = set(self.max_cones[a].rays) & set(self.max_cones[b].rays)
            for r in self._extreme_rays(normals[a] + normals[b]):
                lam = self.barycentric(a, r)
                if any(v != 0 for i, v in zip(self.max_cones[a].rays, lam) if i not in shared):
                    raise OverlappingCones(
                        f'cones {self.max_cones[a].rays} and {self.max_cones[b].rays} meet '
                        f'outside their common face'
                    )

        used = {i for c in self.max_cones for i in c.rays}
        for i, u in enumerate(self.rays):
            if i not in used and self.containing_cones(u):
                raise OverlappingCones(f'ray {u} lies in a maximal cone without being one of its generators')

    @staticmethod
    def _extreme_rays(normals):
        '''
        Extreme rays of the pointed cone {x : <h, x> >= 0 for h in normals}.
        '''
        found = []
        for h, g in itertools.combinations(normals, 2):
            c = cross(h, g)
            if not any(c):
                continue
            for r in (c, scale(c, -1)):
                if all(dot(n, r) >= 0 for n in normals):
                    found.append(r)
        return found

    # ------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, Fan):
            return NotImplemented
        return self.rays == other.rays and set(c.rays for c in self.max_cones) == set(
            c.rays for c in other.max_cones
        )

    def __hash__(self):
        return hash((self.rays, frozenset(c.rays for c in self.max_cones)))

    def __repr__(self):
        return f'Fan(rays={list(self.rays)}, max_cones={[c.rays for c in self.max_cones]})'

    @property
    def n_rays(self):
        return len(self.rays)

    def name(self, i):
        if self.names is not None:
            return self.names[i]
        return f'u{i}'

    def cone_name(self, rays):
        return '<' + ','.join(self.name(i) for i in rays) + '>'

    def is_smooth(self):
        return all(c.multiplicity == 1 for c in self.max_cones)

    @cached_property
    def _inverses(self):
        return [int_matrix([self.rays[i] for i in c.rays]).T.inv() for c in self.max_cones]

    def barycentric(self, pos, x):
        '''
        Coordinates of x against the generators of the pos-th maximal cone.
        '''
        lam = self._inverses[pos] * sympy.Matrix(x)
        return tuple(lam)

    def containing_cones(self, x):
        '''
        Maximal cones containing x (closed cones), with barycentric coordinates.
        '''
        found = []
        for pos in range(len(self.max_cones)):
            lam = self.barycentric(pos, x)
            if all(v >= 0 for v in lam):
                found.append((pos, lam))
        return found

    @cached_property
    def _walls(self):
        found = []
        for pair in sorted(self._faces):
            sides = self._faces[pair]
            if len(sides) != 2:
                continue
            side_a, side_b = sorted(sides)
            off_a = self._opposite(side_a, pair)
            off_b = self._opposite(side_b, pair)
            found.append(self._make_wall(pair, side_a, side_b, off_a, off_b))
        return tuple(found)

    def _make_wall(self, pair, side_a, side_b, off_a, off_b):
        support = (off_a, off_b, pair[0], pair[1])
        columns = int_matrix([self.rays[i] for i in support]).T
        kernel = columns.nullspace()
        circuit = clear_denominators(kernel[0])
        if circuit[0] < 0:
            circuit = tuple(-c for c in circuit)
        relation = [0] * len(self.rays)
        for i, c in zip(support, circuit):
            relation[i] = c
        return Wall(pair, side_a, side_b, off_a, off_b, tuple(relation))

    def walls(self):
        if not self.complete:
            raise NotComplete('walls are only enumerated on complete fans')
        return list(self._walls)

    def wall(self, i, j):
        pair = tuple(sorted((i, j)))
        for w in self.walls():
            if w.rays == pair:
                return w
        raise BadParameters(f'{self.cone_name(pair)} is not a wall')

    def wall_name(self, w):
        return 'tau' + self.cone_name(w.rays)

    def to_dict(self):
        data = {
            'rays': [list(u) for u in self.rays],
            'max_cones': [list(c.rays) for c in self.max_cones],
        }
        if self.names is not None:
            data['names'] = list(self.names)
        return data


def make_fan(rays, max_cones, names=None):
    return Fan(rays, max_cones, names)


def walls(f):
    return f.walls()


def flip(f, w):
    '''
    Bistellar exchange across the wall w.

    The circuit must have two positive coefficients (the off-wall rays) and
    two negative ones (the wall rays); the two cones through w are replaced by
    the two cones through the wall spanned by the positive pair.
    '''
    if not f.complete:
        raise NotComplete('flips are only defined on complete fans')
    if isinstance(w, tuple):
        w = f.wall(*w)
    negative, positive = w.sign_counts()
    if (negative, positive) != (2, 2):
        raise FlipNotDefined(
            f'circuit of {f.wall_name(w)} has sign pattern ({positive},{negative}), not (2,2)'
        )

    i, j = w.rays
    cones = [c.rays for c in f.max_cones]
    cones[w.side_a] = (w.off_a, w.off_b, i)
    cones[w.side_b] = (w.off_a, w.off_b, j)
    logger.debug(f'Flipping {f.wall_name(w)}.')
    return Fan(f.rays, cones, f.names)


def star_subdivision(f, w, name=None):
    '''
    Insert the ray through w, subdividing every maximal cone containing it.
    '''
    w = point(w)
    if not is_primitive(w):
        raise NotPrimitive(f'{w} is not primitive')
    if w in f.rays:
        return f

    hits = f.containing_cones(w)
    if not hits:
        raise OutsideSupport(f'{w} is outside the support of the fan')

    new = len(f.rays)
    touched = {pos for pos, _ in hits}
    cones = [c.rays for pos, c in enumerate(f.max_cones) if pos not in touched]
    for pos, lam in hits:
        generators = f.max_cones[pos].rays
        face = [r for r, l in zip(generators, lam) if l > 0]
        for r in face:
            cones.append(tuple(g for g in generators if g != r) + (new,))

    names = None
    if f.names is not None:
        names = f.names + (name or 'Ew',)
    return Fan(f.rays + (w,), cones, names)


# ------------------------------------------------------------
# Constructors
# ------------------------------------------------------------
def projective_space():
    rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (-1, -1, -1)]
    return Fan(rays, itertools.combinations(range(4), 3), ['H1', 'H2', 'H3', 'H0'])


def bundle_over_P1(alpha, beta):
    '''
    Fan of P_{P^1}(O + O(alpha) + O(beta)).

    Rays in order u1=v1, e1, e2, e0, v0 with v0 = -u1 + alpha e1 + beta e2;
    the divisors are named E1, D1, D2, D0, E0.
    '''
    alpha, beta = int(alpha), int(beta)
    if beta < 0 or alpha < beta:
        raise BadParameters(f'need alpha >= beta >= 0, got ({alpha},{beta})')
    rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, -1, -1), (-1, alpha, beta)]
    v1, e1, e2, e0, v0 = range(5)
    cones = [
        (v1, e1, e2), (v1, e0, e2), (v1, e0, e1),
        (v0, e1, e2), (v0, e0, e2), (v0, e0, e1),
    ]
    return Fan(rays, cones, ['E1', 'D1', 'D2', 'D0', 'E0'])


def flipped_bundle_over_P1(alpha, beta):
    '''
    The fan X_l^- obtained from bundle_over_P1 by flipping the wall tau(e1,e2).
    '''
    return flip(bundle_over_P1(alpha, beta), (1, 2))


def bundle_over_P2(a):
    '''
    Fan of P_{P^2}(O + O(a)): base rays lifted with twist a, fiber rays +-(0,0,1).
    '''
    a = int(a)
    if a < 0:
        raise BadParameters(f'need a >= 0, got {a}')
    rays = [(1, 0, 0), (0, 1, 0), (-1, -1, a), (0, 0, 1), (0, 0, -1)]
    cones = [pair + (fiber,) for pair in itertools.combinations(range(3), 2) for fiber in (3, 4)]
    return Fan(rays, cones, ['B1', 'B2', 'B0', 'S+', 'S-'])


def _unimodular_completion(weights):
    '''
    Integer matrix U with det +-1 and U w = (1, 0, ..., 0), by Euclid on rows.
    '''
    n = len(weights)
    x = list(weights)
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    while sum(1 for v in x if v != 0) > 1:
        k = min((i for i in range(n) if x[i] != 0), key=lambda i: abs(x[i]))
        for j in range(n):
            if j != k and x[j] != 0:
                q = x[j] // x[k]
                x[j] -= q * x[k]
                U[j] = [a - q * b for a, b in zip(U[j], U[k])]
    k = next(i for i in range(n) if x[i] != 0)
    x[0], x[k] = x[k], x[0]
    U[0], U[k] = U[k], U[0]
    if x[0] < 0:
        x[0] = -x[0]
        U[0] = [-a for a in U[0]]
    return U, x[0]


def weighted_projective(*weights):
    '''
    Fan of P(w0,w1,w2,w3): four rays with sum w_i v_i = 0 generating Z^3.
    '''
    if len(weights) == 1:
        weights = tuple(weights[0])
    weights = tuple(int(w) for w in weights)
    if len(weights) != 4 or any(w <= 0 for w in weights):
        raise BadWeights(f'need four positive weights, got {weights}')
    if gcd(*weights) != 1:
        raise BadWeights(f'weights {weights} are not reduced')

    U, g = _unimodular_completion(weights)
    rays = [tuple(U[r][i] for r in (1, 2, 3)) for i in range(4)]
    if not all(is_primitive(u) for u in rays):
        raise BadWeights(f'weights {weights} are not well formed')
    return Fan(rays, itertools.combinations(range(4), 3), [f'V{i}' for i in range(4)])
