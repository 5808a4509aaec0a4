import unittest

from parameterized import parameterized

from torifan.errors import BadParameters, IterationCapExceeded, NotExtremal, NotRankTwo
from torifan.fan import (
    bundle_over_P1,
    bundle_over_P2,
    flip,
    flipped_bundle_over_P1,
    projective_space,
    star_subdivision,
)
from torifan.intersection import ExtremalRay, mori_cone
from torifan.mmp import (
    DEFAULT_MAX_FLIPS,
    MAX_FLIPS_ENV,
    case_bound,
    classify_ray,
    contraction_target_dim,
    max_flips_from_env,
    supporting_class_is_big,
    two_ray_game,
    volume_bound_table,
    volume_case_table,
)


def classifications(f):
    return {c.type_label or c.kind: c for c in (classify_ray(f, r) for r in mori_cone(f))}


class TestClassifyRay(unittest.TestCase):

    def test_bundle(self):
        found = classifications(bundle_over_P1(6, 5))
        self.assertEqual(sorted(found), ['(3,1)^-', 'small'])
        self.assertEqual(found['(3,1)^-'].base_dim, 1)
        self.assertEqual(found['small'].k_sign, 'positive')

    def test_point_blow_up(self):
        found = classifications(star_subdivision(projective_space(), (1, 1, 1)))
        self.assertEqual(sorted(found), ['(2,0)^-', '(3,2)^-'])
        exceptional = found['(2,0)^-']
        self.assertEqual(exceptional.kind, 'divisorial')
        self.assertEqual(exceptional.contracted_ray, 4)
        self.assertEqual(exceptional.image_dim, 0)
        self.assertEqual(contraction_target_dim(exceptional), 3)
        self.assertEqual(contraction_target_dim(found['(3,2)^-']), 2)

    def test_bundle_over_P2(self):
        found = classifications(bundle_over_P2(3))
        self.assertEqual(sorted(found), ['(2,0)^0', '(3,2)^-'])
        self.assertEqual(found['(2,0)^0'].k_sign, 'zero')

    def test_product(self):
        found = classifications(bundle_over_P2(0))
        self.assertEqual(sorted(found), ['(3,1)^-', '(3,2)^-'])

    def test_flipped_bundle(self):
        found = classifications(flipped_bundle_over_P1(6, 5))
        self.assertIn('small', found)
        self.assertEqual(found['small'].k_sign, 'negative')
        divisorial = [c for c in found.values() if c.kind == 'divisorial']
        self.assertEqual(len(divisorial), 1)

    def test_supporting_class(self):
        f = star_subdivision(projective_space(), (1, 1, 1))
        for r in mori_cone(f):
            kind = classify_ray(f, r).kind
            self.assertEqual(supporting_class_is_big(f, r), kind != 'fiber')

    def test_not_extremal(self):
        f = bundle_over_P1(6, 5)
        with self.assertRaises(NotExtremal):
            classify_ray(f, ExtremalRay((5, 7), (), None))


class TestTwoRayGame(unittest.TestCase):

    def test_flipped_bundle_flips_back(self):
        report = two_ray_game(flipped_bundle_over_P1(6, 5), max_flips=4)
        flipped = [side for side in report.sides if len(side.steps) > 1]
        self.assertEqual(len(flipped), 1)
        side = flipped[0]
        self.assertEqual(len(side.steps), 2)
        self.assertEqual(side.steps[1].fan, bundle_over_P1(6, 5))
        self.assertEqual(side.steps[1].flip_k_sign, 'negative')
        self.assertEqual(side.steps[1].volume, 54)
        self.assertTrue(side.steps[1].terminal)
        self.assertFalse(side.steps[0].terminal)
        self.assertEqual(side.end.type_label, '(3,1)^-')

    def test_anti_flip_side_of_bundle(self):
        f = bundle_over_P1(6, 5)
        report = two_ray_game(f, max_flips=4)
        side = next(s for s in report.sides if len(s.steps) > 1)
        self.assertEqual(side.steps[1].fan, flip(f, (1, 2)))
        self.assertEqual(side.steps[1].flip_k_sign, 'positive')
        self.assertEqual(side.end.kind, 'divisorial')

    @parameterized.expand([
        ('P_P2(O+O(3))', bundle_over_P2(3), ['(2,0)^0', '(3,2)^-']),
        ('P2xP1', bundle_over_P2(0), ['(3,1)^-', '(3,2)^-']),
    ])
    def test_immediate_ends(self, _, f, labels):
        report = two_ray_game(f)
        self.assertEqual(sorted(s.end.type_label for s in report.sides), labels)
        self.assertTrue(all(len(s.steps) == 1 for s in report.sides))
        self.assertEqual(report.left_end, report.sides[0].end)

    def test_rank_one(self):
        with self.assertRaises(NotRankTwo):
            two_ray_game(projective_space())

    def test_cap(self):
        with self.assertRaises(IterationCapExceeded):
            two_ray_game(bundle_over_P1(6, 5), max_flips=0)


class TestConfiguration(unittest.TestCase):

    def test_default(self):
        self.assertEqual(max_flips_from_env({}), DEFAULT_MAX_FLIPS)
        self.assertEqual(DEFAULT_MAX_FLIPS, 64)

    def test_override(self):
        self.assertEqual(max_flips_from_env({MAX_FLIPS_ENV: '3'}), 3)

    @parameterized.expand([('text', 'many'), ('negative', '-1')])
    def test_invalid(self, _, raw):
        with self.assertRaises(BadParameters):
            max_flips_from_env({MAX_FLIPS_ENV: raw})


class TestBounds(unittest.TestCase):

    @parameterized.expand([
        ((3, 9, 2), 54),
        ((3, 9, 3), 81),
        ((2, 12, 2), 48),
        ((2, 12, 3), 72),
        ((1, 1, 1), 1),
    ])
    def test_bound(self, args, expected):
        self.assertEqual(volume_bound_table(*args), expected)

    def test_case_table(self):
        self.assertEqual(volume_case_table(), {(1, 1): 54, (1, 0): 81, (2, 1): 48, (2, 0): 72})

    @parameterized.expand([
        ('X_l', bundle_over_P1(6, 5), 81),
        ('P_P2(O+O(3))', bundle_over_P2(3), 72),
        ('P2xP1', bundle_over_P2(0), None),
    ])
    def test_case_bound(self, _, f, expected):
        self.assertEqual(case_bound(two_ray_game(f, max_flips=4)), expected)

    def test_non_positive(self):
        with self.assertRaises(BadParameters):
            volume_bound_table(0, 9, 2)


if __name__ == '__main__':
    unittest.main()
