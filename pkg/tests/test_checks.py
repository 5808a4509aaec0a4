import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stdout

import sympy
from parameterized import parameterized

from torifan.checks import (
    AUDIT,
    FAIL,
    PASS,
    bundle_curve_names,
    check,
    failed,
    grouping,
    run_checks,
    show,
)
from torifan.fan import projective_space, star_subdivision
from torifan.torifan import EXIT_FAILED, EXIT_INPUT, EXIT_OK, main


class TestCheckHelpers(unittest.TestCase):

    @parameterized.expand([
        ('string', 'fiber', 'fiber'),
        ('bool', True, 'true'),
        ('sympy_bool', sympy.false, 'false'),
        ('vector', (1, sympy.Rational(2, 3)), '(1,2/3)'),
        ('rational', sympy.Rational(-1, 2), '-1/2'),
    ])
    def test_show(self, _, value, expected):
        self.assertEqual(show(value), expected)

    def test_check(self):
        self.assertEqual(check('x', 54, sympy.Integer(54), '').status, PASS)
        result = check('x', 54, sympy.Rational(125, 2), '')
        self.assertEqual(result.status, FAIL)
        self.assertEqual(result.computed, '125/2')
        self.assertTrue(failed([result]))

    def test_curve_names(self):
        names = bundle_curve_names()
        self.assertEqual(len(names), 9)
        self.assertEqual(names[(1, 2)], "C''0")
        self.assertEqual(names[(2, 3)], "C''1")
        self.assertEqual(names[(1, 3)], "C''2")
        self.assertEqual(names[(0, 3)], 'C0')
        self.assertEqual(names[(3, 4)], "C'0")

    def test_grouping(self):
        self.assertEqual(grouping([['b', 'a'], ['c']]), '{a,b} | {c}')


class TestGroups(unittest.TestCase):

    def test_bounds(self):
        results = run_checks(['bounds'])
        self.assertEqual(len(results), 5)
        self.assertTrue(all(r.status == PASS for r in results))

    def test_audit(self):
        results = run_checks(['audit'])
        self.assertEqual([r.status for r in results], [AUDIT, AUDIT])
        self.assertIn('1/4', results[1].computed)

    def test_flip(self):
        results = run_checks(['flip'])
        self.assertFalse(failed(results))
        self.assertIn('flip(6,5).-K.C-', [r.check_id for r in results])

    def test_fixed_order(self):
        results = run_checks(['bounds', 'flip'])
        ids = [r.check_id for r in results]
        self.assertTrue(ids[0].startswith('flip'))
        self.assertTrue(ids[-1].startswith('bounds'))


class TestMain(unittest.TestCase):

    def run_main(self, argv):
        out = io.StringIO()
        with redirect_stdout(out), self.assertRaises(SystemExit) as cm:
            main(argv)
        return cm.exception.code, out.getvalue()

    def test_discrepancy(self):
        code, out = self.run_main(
            ['discrepancy', '-F', 'flipped-bundle', '-p', '0,1,1', '--json']
        )
        self.assertEqual(code, EXIT_OK)
        report = json.loads(out)
        self.assertEqual(report['discrepancy'], '-1/2')
        self.assertEqual(report['via_subdivision'], '-1/2')

    def test_volume(self):
        code, out = self.run_main(['volume', '-F', 'wps', '-w', '1,1,1,2', '--json'])
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)['volume'], '125/2')

    def test_verify_subset(self):
        code, out = self.run_main(['verify-paper', '--only', 'bounds'])
        self.assertEqual(code, EXIT_OK)
        self.assertIn('bounds.(1, 1)', out)

    def test_malformed_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'fan.json')
            with open(path, 'w') as f:
                f.write('{"rays": [[1, 0, 0]]}')
            code, _ = self.run_main(['info', path])
        self.assertEqual(code, EXIT_INPUT)

    def test_info_without_dual_cones(self):
        f = projective_space()
        for k, w in enumerate([(1, 1, 1), (0, 0, -1), (0, -1, 0), (-1, 0, 0)]):
            f = star_subdivision(f, w, name=f'P{k}')
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'fan.json')
            with open(path, 'w') as handle:
                json.dump(f.to_dict(), handle)
            with self.assertLogs('torifan', level='WARNING'):
                code, out = self.run_main(['info', path, '--json'])
        self.assertEqual(code, EXIT_OK)
        report = json.loads(out)
        self.assertEqual(report['rho'], 5)
        self.assertEqual(len(report['rays']), 8)
        self.assertTrue(report['smooth'])
        self.assertTrue(report['terminal'])
        self.assertNotIn('volume', report)

    def test_tworay_report(self):
        code, out = self.run_main(['tworay', '-F', 'bundle-p2', '--json'])
        self.assertEqual(code, EXIT_OK)
        report = json.loads(out)
        self.assertEqual(report['volume_bound'], '72')
        self.assertEqual(sorted(s['end']['label'] for s in report['sides']), ['(2,0)^0', '(3,2)^-'])

    def test_rank_one_game(self):
        code, _ = self.run_main(['tworay', '-F', 'p3'])
        self.assertEqual(code, EXIT_INPUT)

    def test_exit_codes_differ(self):
        self.assertEqual(len({EXIT_OK, EXIT_FAILED, EXIT_INPUT}), 3)


if __name__ == '__main__':
    unittest.main()
