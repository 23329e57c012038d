#!/usr/bin/env python
# encoding: utf-8
"""
test-config.py

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

import os
import tempfile
import unittest
from wdlab import *

class test_run_config(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, text):
        path = os.path.join(self.tmp.name, 'run.cfg')
        with open(path, 'w', encoding='utf-8') as ofile:
            ofile.write(text)
        return path

    def test_defaults(self):
        cfg = RunConfig()
        self.assertEqual(cfg['construction'], 'strips')
        self.assertEqual(cfg['strips.K'], 3)
        self.assertEqual(cfg['solve.X'], 1e5)
        self.assertIs(cfg['solve.hormander'], True)
        self.assertEqual(cfg['classify.families'], ['identity', 'constant', 'alternating'])
        self.assertIsNone(cfg.get('nothing'))
        with self.assertRaises(ValueError):
            cfg['nothing']
        # defaults are not shared between instances
        cfg['order.radii'].append(640.)
        self.assertEqual(len(RunConfig()['order.radii']), 6)

    def test_set(self):
        cfg = RunConfig(dict(scale='faithful'))
        self.assertEqual(cfg['scale'], 'faithful')
        cfg['strips.K'] = '5'
        self.assertEqual(cfg['strips.K'], 5)
        cfg['strips.nb'] = '2, 0.5'
        self.assertEqual(cfg['strips.nb'], [2., 0.5])
        cfg['solve.hormander'] = 'no'
        self.assertIs(cfg['solve.hormander'], False)
        for key, value in [
                ('scale', 'exact'), ('strips.K', 0), ('grid.n', '-3'), ('seed', 'x'),
                ('solve.hormander', 'maybe'), ('unknown', 1),
                ]:
            with self.assertRaises(ValueError):
                cfg[key] = value

    def test_section_update(self):
        cfg = RunConfig().update(order__z1=40., strips__K=None, seed=7)
        self.assertEqual(cfg['order.z1'], 40.)
        self.assertEqual(cfg['strips.K'], 3)
        self.assertEqual(cfg['seed'], 7)
        quad = cfg.section('quad')
        self.assertEqual(sorted(quad), ['method', 'near_nr', 'near_ntheta', 'nodes'])
        self.assertEqual(quad['nodes'], 16)

    def test_from_file(self):
        path = self.write(
            '# order run\n'
            'construction = order\n'
            '\n'
            'order.bundle = puddle   # small z_1\n'
            'order.radii = 10, 100, 1000, 10000\n'
            'dump.window = -1, 1, 0, 2\n'
            )
        cfg = RunConfig.from_file(path)
        self.assertEqual(cfg['construction'], 'order')
        self.assertEqual(cfg['order.bundle'], 'puddle')
        self.assertEqual(cfg['order.radii'], [10., 100., 1000., 10000.])
        self.assertEqual(cfg['dump.window'], [-1., 1., 0., 2.])

    def test_round_trip(self):
        cfg = RunConfig(dict(seed=3, out='elsewhere'))
        cfg['classify.families'] = ['zero']
        again = RunConfig.from_file(self.write(cfg.format()))
        self.assertEqual(str(again), str(cfg))

    def test_file_errors(self):
        with self.assertRaisesRegex(ValueError, ':2: unknown key'):
            RunConfig.from_file(self.write('seed = 1\nstrips.k = 3\n'))
        with self.assertRaisesRegex(ValueError, ':1: expected key = value'):
            RunConfig.from_file(self.write('seed 1\n'))
        with self.assertRaises(ValueError):
            RunConfig.from_file(self.write('quad.method = simpson\n'))
        with self.assertRaises(OSError):
            RunConfig.from_file(os.path.join(self.tmp.name, 'missing.cfg'))


if __name__ == '__main__':
    unittest.main()
