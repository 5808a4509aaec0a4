import unittest

import sympy
from parameterized import parameterized

from torifan.errors import NotComplete, NotPrimitive, OutsideSupport
from torifan.fan import (
    bundle_over_P1,
    bundle_over_P2,
    flipped_bundle_over_P1,
    make_fan,
    projective_space,
    weighted_projective,
)
from torifan.singularity import (
    discrepancy,
    discrepancy_via_subdivision,
    gorenstein_index,
    is_canonical,
    is_terminal,
    simplex_points,
)

W = (0, 1, 1)


class TestDiscrepancy(unittest.TestCase):

    @parameterized.expand([
        ((6, 5), sympy.Rational(-1, 2)),
        ((5, 3), sympy.Rational(-1, 5)),
        ((4, 1), sympy.Rational(1, 4)),
    ])
    def test_flipped_bundle(self, params, expected):
        f = flipped_bundle_over_P1(*params)
        report = discrepancy(f, W)
        self.assertEqual(report.value, expected)
        self.assertEqual(report.cone, (0, 2, 4))
        self.assertEqual(report.face, (0, 2, 4))
        self.assertEqual(discrepancy_via_subdivision(f, W), expected)

    def test_point_blow_up(self):
        f = projective_space()
        self.assertEqual(discrepancy(f, (1, 1, 1)).value, 2)
        self.assertEqual(discrepancy_via_subdivision(f, (1, 1, 1)), 2)

    def test_on_a_wall(self):
        f = projective_space()
        report = discrepancy(f, (1, 1, 0))
        self.assertEqual(report.value, 1)
        self.assertEqual(report.face, (0, 1))
        self.assertEqual(discrepancy_via_subdivision(f, (1, 1, 0)), 1)

    def test_existing_ray(self):
        f = bundle_over_P1(6, 5)
        self.assertEqual(discrepancy(f, (1, 0, 0)).value, 0)
        self.assertEqual(discrepancy_via_subdivision(f, (1, 0, 0)), 0)

    def test_errors(self):
        with self.assertRaises(NotPrimitive):
            discrepancy(projective_space(), (2, 0, 0))
        half = make_fan([(1, 0, 0), (0, 1, 0), (0, 0, 1)], [(0, 1, 2)])
        with self.assertRaises(OutsideSupport):
            discrepancy(half, (-1, 0, 0))


class TestTerminality(unittest.TestCase):

    @parameterized.expand([
        ('P3', projective_space(), True),
        ('X_l', bundle_over_P1(6, 5), True),
        ('P_P2(O+O(3))', bundle_over_P2(3), True),
        ('P(1,1,1,2)', weighted_projective(1, 1, 1, 2), True),
        ('P(1,1,1,3)', weighted_projective(1, 1, 1, 3), False),
    ])
    def test_terminal(self, _, f, expected):
        self.assertEqual(is_terminal(f).holds, expected)

    @parameterized.expand([
        ('P3', projective_space()),
        ('X_l(4,1)', bundle_over_P1(4, 1)),
        ('X_l^-(6,5)', flipped_bundle_over_P1(6, 5)),
        ('X_l^-(4,1)', flipped_bundle_over_P1(4, 1)),
        ('P_P2(O+O(1))', bundle_over_P2(1)),
        ('P(1,1,1,3)', weighted_projective(1, 1, 1, 3)),
        ('P(1,1,2,3)', weighted_projective(1, 1, 2, 3)),
        ('P(1,1,4,6)', weighted_projective(1, 1, 4, 6)),
    ])
    def test_terminal_implies_canonical(self, _, f):
        terminal, canonical = is_terminal(f), is_canonical(f)
        self.assertTrue(canonical.holds or not terminal.holds)
        if terminal.holds:
            self.assertIsNone(canonical.witness)

    @parameterized.expand([((6, 5),), ((5, 3),)])
    def test_flipped_bundle_witness(self, params):
        verdict = is_terminal(flipped_bundle_over_P1(*params))
        self.assertFalse(verdict.holds)
        self.assertLess(verdict.value, 0)
        self.assertFalse(is_canonical(flipped_bundle_over_P1(*params)).holds)

    def test_canonical_gorenstein(self):
        f = weighted_projective(1, 1, 1, 3)
        verdict = is_terminal(f)
        self.assertEqual(verdict.value, 0)
        self.assertTrue(is_canonical(f).holds)
        self.assertEqual(gorenstein_index(f), 1)

    def test_index(self):
        self.assertEqual(gorenstein_index(weighted_projective(1, 1, 1, 2)), 2)

    def test_simplex_points(self):
        f = weighted_projective(1, 1, 1, 3)
        pos = next(i for i, c in enumerate(f.max_cones) if c.rays == (0, 1, 2))
        points = dict(simplex_points(f, pos))
        self.assertEqual(points[(0, 0, 0)], 0)
        for i in (0, 1, 2):
            self.assertEqual(points[f.rays[i]], 1)
        self.assertEqual(len(points), 5)

    def test_incomplete(self):
        half = make_fan([(1, 0, 0), (0, 1, 0), (0, 0, 1)], [(0, 1, 2)])
        with self.assertRaises(NotComplete):
            is_terminal(half)


if __name__ == '__main__':
    unittest.main()
