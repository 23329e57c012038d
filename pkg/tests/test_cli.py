#!/usr/bin/env python
# encoding: utf-8
"""
test-cli.py

"""
# Copyright (c) 2024-26 wdlab developers.
#
# This program is free software: you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation, either version 3 of the License, or
# any later version (see <http://www.gnu.org/licenses/>).
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.

import contextlib
import io
import json
import os
import tempfile
import unittest
import warnings
from wdlab import *

class test_main(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.out = os.path.join(self.tmp.name, 'out')

    def tearDown(self):
        self.tmp.cleanup()

    def main(self, *argv, **config):
        " run main quietly; config keys use double underscores for dots "
        argv = list(argv) + ['--out', self.out]
        if config:
            path = os.path.join(self.tmp.name, 'run.cfg')
            with open(path, 'w', encoding='utf-8') as ofile:
                for k, v in config.items():
                    ofile.write('{} = {}\n'.format(k.replace('__', '.'), v))
            argv += ['--config', path]
        stdout, stderr = io.StringIO(), io.StringIO()
        with warnings.catch_warnings():
            warnings.simplefilter('ignore')
            with contextlib.redirect_stdout(stdout), contextlib.redirect_stderr(stderr):
                status = main(argv)
        self.stdout, self.stderr = stdout.getvalue(), stderr.getvalue()
        return status

    def load(self, name):
        with open(os.path.join(self.out, name), encoding='utf-8') as ifile:
            return json.load(ifile)

    def test_escape(self):
        self.assertEqual(self.main('escape'), 0)
        rep = self.load('escape.json')
        self.assertEqual(rep['run'], 'escape')
        self.assertNotIn(False, [c['pass'] for c in rep['checks']])
        self.assertIn('membership criterion', self.stdout)

    def test_validate_minimal(self):
        # spacing rules alone do not carry the escape ladder
        self.assertEqual(self.main('validate', strips__bundle='minimal'), 1)
        self.assertIn(False, [c['pass'] for c in self.load('validate.json')['checks']])

    def test_classify(self):
        self.assertEqual(self.main('classify'), 0)
        for family in ('identity', 'constant', 'alternating'):
            self.assertTrue(os.path.exists(os.path.join(self.out, 'classify_orbit_{}.csv'.format(family))))

    def test_order(self):
        self.assertEqual(self.main('order', order__baseline='exp'), 0)
        self.assertEqual(self.load('order.json')['construction'], 'strips')

    def test_solve(self):
        self.assertEqual(self.main('solve'), 0)
        self.assertTrue(os.path.exists(os.path.join(self.out, 'solve_f.csv')))
        checks = {c['anchor']: c for c in self.load('solve.json')['checks']}
        self.assertIs(checks['dbar f = 0 on transition sets']['pass'], True)
        self.assertIs(checks['f(S^-eps_1 + i tau_1) in S^-eps_2 + i tau_2']['pass'], True)

    def test_dump_field(self):
        status = self.main('dump-field', dump__n=21, dump__window='-1, 1, 1, 5')
        self.assertEqual(status, 0)
        with open(os.path.join(self.out, 'dump_field_chi.csv'), encoding='utf-8') as ifile:
            lines = ifile.read().splitlines()
        self.assertEqual(lines[0], 're,im,value_re,value_im')
        self.assertEqual(len(lines), 1 + 21 * 41)

    def test_errors(self):
        self.assertEqual(self.main('classify', '--construction', 'order'), 2)
        self.assertIn('wdlab: classify needs construction = strips', self.stderr)
        self.assertEqual(self.main('escape', strips__K=0), 2)
        self.assertEqual(self.main('escape', '--config', os.path.join(self.tmp.name, 'missing.cfg')), 2)
        with self.assertRaises(SystemExit):
            self.main('escape', '--scale', 'truncated')
        with self.assertRaises(SystemExit):
            self.main('fit')


if __name__ == '__main__':
    unittest.main()
