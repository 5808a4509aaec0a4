import random
import unittest

import sympy
from parameterized import parameterized

from torifan.divisor import TorusDivisor, anticanonical_divisor, named_divisor, principal_divisor
from torifan.errors import DimensionMismatch, NotComplete
from torifan.fan import (
    bundle_over_P1,
    bundle_over_P2,
    flipped_bundle_over_P1,
    make_fan,
    projective_space,
    weighted_projective,
)
from torifan.intersection import (
    curve_basis,
    curve_class,
    dot,
    is_nef,
    lift_class,
    mori_cone,
    nef_cone,
    reduced_divisor_class,
    same_ray,
    wall_classes,
)
from torifan.lattice import clear_denominators

BUNDLES = [((6, 5),), ((5, 3),), ((4, 1),)]


class TestCurveClasses(unittest.TestCase):

    def test_line_in_P3(self):
        f = projective_space()
        for c in wall_classes(f):
            self.assertEqual(c.profile, (1, 1, 1, 1))

    @parameterized.expand(BUNDLES)
    def test_flipped_curve(self, params):
        alpha, beta = params
        f = flipped_bundle_over_P1(alpha, beta)
        c = curve_class(f, f.wall(0, 4))
        ab = sympy.Rational(1, alpha * beta)
        self.assertEqual(c.profile, (-ab, sympy.Rational(1, beta), sympy.Rational(1, alpha), 0, -ab))
        self.assertEqual(dot(anticanonical_divisor(f), c), sympy.Rational(alpha + beta - 2, alpha * beta))

    def test_flipped_curve_with_common_factor(self):
        f = flipped_bundle_over_P1(4, 2)
        c = curve_class(f, f.wall(0, 4))
        self.assertEqual(dot(named_divisor(f, {'D1': 1}), c), 1)
        self.assertEqual(dot(named_divisor(f, {'D2': 1}), c), sympy.Rational(1, 2))
        self.assertEqual(dot(named_divisor(f, {'E0': 1}), c), sympy.Rational(-1, 4))
        self.assertEqual(dot(named_divisor(f, {'E1': 1}), c), sympy.Rational(-1, 4))

    @parameterized.expand(BUNDLES)
    def test_bundle_table(self, params):
        alpha, beta = params
        f = bundle_over_P1(alpha, beta)
        D0, F = named_divisor(f, {'D0': 1}), named_divisor(f, {'E1': 1})
        # C''0 = V(e1 e2), C''1 = V(e0 e2), C''2 = V(e0 e1)
        for wall, d0, fiber in (((1, 2), 0, 1), ((2, 3), alpha, 1), ((1, 3), beta, 1)):
            c = curve_class(f, f.wall(*wall))
            self.assertEqual(dot(D0, c), d0)
            self.assertEqual(dot(F, c), fiber)
        c0 = curve_class(f, f.wall(1, 2))
        self.assertEqual(dot(anticanonical_divisor(f), c0), 2 - alpha - beta)

    @parameterized.expand([
        ('P3', projective_space()),
        ('P(1,1,4,6)', weighted_projective(1, 1, 4, 6)),
        ('X_l', bundle_over_P1(5, 3)),
        ('X_l^-', flipped_bundle_over_P1(4, 1)),
        ('P_P2(O+O(3))', bundle_over_P2(3)),
    ])
    def test_principal_divisors_are_trivial(self, _, f):
        rng = random.Random(7)
        for c in wall_classes(f):
            for _ in range(20):
                m = tuple(rng.randint(-9, 9) for _ in range(3))
                self.assertEqual(dot(principal_divisor(f, m), c), 0)

    def test_basis_is_reproducible(self):
        f = bundle_over_P1(6, 5)
        basis, pivots = curve_basis(f)
        self.assertEqual(len(basis), 2)
        self.assertEqual((basis, pivots), curve_basis(bundle_over_P1(6, 5)))

    def test_dimension_mismatch(self):
        f = bundle_over_P1(6, 5)
        with self.assertRaises(DimensionMismatch):
            dot(TorusDivisor((1, 0, 0, 0)), wall_classes(f)[0])

    def test_incomplete_fan(self):
        f = make_fan([(1, 0, 0), (0, 1, 0), (0, 0, 1)], [(0, 1, 2)])
        with self.assertRaises(NotComplete):
            wall_classes(f)


class TestCones(unittest.TestCase):

    @parameterized.expand(BUNDLES)
    def test_mori_cone_of_bundle(self, params):
        f = bundle_over_P1(*params)
        rays = mori_cone(f)
        self.assertEqual(len(rays), 2)
        groups = sorted(sorted(w.rays for w in r.walls) for r in rays)
        fiber = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]
        self.assertEqual(groups, sorted([[(1, 2)], fiber]))

    @parameterized.expand(BUNDLES)
    def test_nef_cone_of_bundle(self, params):
        f = bundle_over_P1(*params)
        expected = {
            clear_denominators(reduced_divisor_class(f, named_divisor(f, {name: 1})))
            for name in ('D0', 'E1')
        }
        self.assertEqual(set(nef_cone(f)), expected)

    def test_interior_curves(self):
        f = bundle_over_P1(6, 5)
        directions = [r.direction for r in mori_cone(f)]
        for wall in ((2, 3), (1, 3)):
            reduced = curve_class(f, f.wall(*wall)).reduced
            self.assertFalse(any(same_ray(reduced, d) for d in directions))

    def test_picard_rank_one(self):
        f = weighted_projective(1, 1, 1, 2)
        self.assertEqual(len(mori_cone(f)), 1)
        self.assertEqual(nef_cone(f), [(1,)])

    @parameterized.expand([
        ('P3', projective_space(), True),
        ('P_P2(O+O(3))', bundle_over_P2(3), True),
        ('X_l', bundle_over_P1(6, 5), False),
    ])
    def test_anticanonical_nef(self, _, f, expected):
        self.assertEqual(is_nef(f, anticanonical_divisor(f)), expected)

    @parameterized.expand([
        ('X_l', bundle_over_P1(6, 5)),
        ('X_l^-', flipped_bundle_over_P1(6, 5)),
        ('P_P2(O+O(1))', bundle_over_P2(1)),
    ])
    def test_nef_generators_lift(self, _, f):
        for n in nef_cone(f):
            D = lift_class(f, n)
            self.assertEqual(reduced_divisor_class(f, D), n)
            self.assertTrue(is_nef(f, D))

    def test_same_ray(self):
        self.assertTrue(same_ray((1, 2), (sympy.Rational(1, 2), 1)))
        self.assertFalse(same_ray((1, 2), (-1, -2)))


if __name__ == '__main__':
    unittest.main()
