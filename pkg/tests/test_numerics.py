#!/usr/bin/env python
# encoding: utf-8
"""
test-numerics.py

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

import csv
import os
import tempfile
import unittest
import numpy as np
import gvar as gv
import mpmath as mp
from wdlab import *

mp.mp.dps = 50

class ArrayTests(object):
    def __init__(self):
        pass

    def assert_gvclose(self,x,y,rtol=1e-5,atol=1e-5):
        """ asserts that the means and sdevs of all x and y are close """
        self.assertSequenceEqual(np.shape(x),np.shape(y))
        x = np.asarray(x).flat
        y = np.asarray(y).flat
        for xi,yi in zip(x,y):
            self.assertGreater(atol+rtol*abs(yi.mean),abs(xi.mean-yi.mean))
            self.assertGreater(10*(atol+rtol*abs(yi.sdev)),abs(xi.sdev-yi.sdev))

    def assert_arraysclose(self,x,y,rtol=1e-5):
        self.assertSequenceEqual(np.shape(x),np.shape(y))
        x = np.array(x).flatten()
        y = np.array(y).flatten()
        max_val = max(np.abs(list(x)+list(y)))
        max_rdiff = max(np.abs(x-y))/max_val
        self.assertAlmostEqual(max_rdiff,0.0,delta=rtol)


class test_tower(unittest.TestCase, ArrayTests):
    def test_canonical(self):
        " small values stay at level 0; big ones climb "
        x = TowerReal(1.5)
        self.assertEqual(x.level, 0)
        self.assertEqual(x.mantissa, 1.5)
        x = TowerReal(-2.)
        self.assertEqual(x.sign, -1)
        self.assertEqual(TowerReal(0.).sign, 0)
        x = TowerReal(5., level=2)
        self.assertEqual(x.level, 2)
        self.assertAlmostEqual(float(x) / float(mp.exp(mp.exp(5))), 1., delta=1e-13)
        x = TowerReal(5., level=1).minimal()
        self.assertEqual(x.level, 0)
        self.assertAlmostEqual(x.mantissa / np.exp(5.), 1., delta=1e-15)
        with self.assertRaises(ValueError):
            TowerReal(np.inf)
        with self.assertRaises(ValueError):
            TowerReal(2., level=-1)

    def test_compare(self):
        big = TowerReal(7., level=2)
        self.assertTrue(big > 1e299)
        self.assertTrue(TowerReal(5., level=2) < 1e299)
        self.assertTrue(TowerReal(5., level=1) == np.exp(5.))
        self.assertTrue(-big < TowerReal(-1.))
        self.assertTrue(TowerReal(3., level=4) > TowerReal(700., level=2))
        self.assertEqual(float(TowerReal(800., level=1)), np.inf)

    def test_exp_ln(self):
        " directed exp and ln bracket the exact values "
        for v in [0.5, 3., 20., 300.]:
            hi = tower_exp(TowerReal(v), direction=1)
            lo = tower_exp(TowerReal(v), direction=-1)
            self.assertEqual(hi.level, 0)
            self.assertGreaterEqual(mp.mpf(hi.mantissa), mp.exp(v))
            self.assertLessEqual(mp.mpf(lo.mantissa), mp.exp(v))
        x = tower_exp(TowerReal(5., level=3))
        self.assertEqual(x.level, 4)
        self.assertEqual(x.mantissa, 5.)
        self.assertEqual(tower_ln(x).level, 3)
        with self.assertRaises(ValueError):
            tower_exp(TowerReal(-1.))
        with self.assertRaises(ValueError):
            tower_ln(TowerReal(0.))
        self.assertAlmostEqual(float(TowerReal.from_log(2.)), np.exp(2.), delta=1e-13)

    def test_level_cap(self):
        x = TowerReal(2., level=TowerReal.DEFAULTS['level_cap'])
        with self.assertRaises(OverflowError):
            tower_exp(x)
        old = TowerReal.set(level_cap=200)
        try:
            self.assertEqual(tower_exp(x).level, x.level + 1)
        finally:
            TowerReal.set(**old)
        self.assertEqual(TowerReal.DEFAULTS['level_cap'], 128)
        with self.assertRaises(ValueError):
            TowerReal.set(depth=3)

    def test_mul_beyond_float(self):
        " 1e200 * 1e200 bracketed at level 2 "
        exact = mp.log(mp.log(mp.mpf(1e200) ** 2))
        hi = tower_mul(TowerReal(1e200), TowerReal(1e200), direction=1)
        lo = tower_mul(TowerReal(1e200), TowerReal(1e200), direction=-1)
        self.assertEqual(hi.level, 2)
        self.assertEqual(lo.level, 2)
        self.assertGreaterEqual(mp.mpf(hi.mantissa), exact)
        self.assertLessEqual(mp.mpf(lo.mantissa), exact)
        self.assertLess(hi.mantissa - lo.mantissa, 1e-13)

    def test_add_beyond_float(self):
        " exp(800) + exp(800) = exp(800 + ln 2) "
        x = TowerReal(800., level=1)
        exact = mp.log(800 + mp.log(2))
        hi = tower_add(x, x, direction=1)
        lo = tower_add(x, x, direction=-1)
        self.assertEqual(hi.level, 2)
        self.assertGreaterEqual(mp.mpf(hi.mantissa), exact)
        self.assertLessEqual(mp.mpf(lo.mantissa), exact)
        # small summand is swamped
        self.assertTrue(tower_add(x, 1., direction=-1) == x)
        self.assertTrue(tower_add(x, 1., direction=1) > x)
        with self.assertRaises(ValueError):
            tower_add(x, TowerReal(-1.))

    def test_combine(self):
        x = tower_combine(TowerReal(0.1), 0.2, 'add', direction=1)
        self.assertGreaterEqual(mp.mpf(x.mantissa), mp.mpf(0.1) + mp.mpf(0.2))
        x = tower_combine(TowerReal(0.1), 0.2, 'add', direction=-1)
        self.assertLessEqual(mp.mpf(x.mantissa), mp.mpf(0.1) + mp.mpf(0.2))
        # exact sums are not bumped
        self.assertEqual(tower_combine(TowerReal(1.), 2., 'add', 1).mantissa, 3.)
        x = tower_combine(TowerReal(10., level=2), 2., 'pow', direction=1)
        # (exp^2(10))**2 = exp(2 exp(10))
        self.assertEqual(x.level, 2)
        self.assertGreaterEqual(mp.mpf(x.mantissa), mp.log(2 * mp.exp(10)))
        with self.assertRaises(ValueError):
            tower_combine(TowerReal(2.), -1., 'mul')
        with self.assertRaises(ValueError):
            tower_combine(TowerReal(2.), 1., 'div')
        with self.assertRaises(ValueError):
            tower_combine(TowerReal(800., level=1), 1e290, 'add')

    def test_format(self):
        self.assertEqual(str(TowerReal(1.5)), '1.5')
        self.assertEqual(TowerReal(4.25, level=3).format(), 'exp^3(4.25)')
        self.assertEqual(str(-TowerReal(4.25, level=3)), '-exp^3(4.25)')


class test_fields(unittest.TestCase, ArrayTests):
    def test_wirtinger(self):
        z = np.array([1 + 1j, -0.5 + 2j])
        dz, dzbar = wirtinger_fd(lambda z: z ** 2, z)
        self.assert_arraysclose(dz, 2 * z, rtol=1e-7)
        self.assertLess(np.max(np.abs(dzbar)), 1e-7)
        dz, dzbar = wirtinger_fd(np.conj, 0.3 + 0.1j)
        self.assertIsInstance(dz, complex)
        self.assertAlmostEqual(abs(dz), 0., delta=1e-7)
        self.assertAlmostEqual(abs(dzbar - 1.), 0., delta=1e-7)
        dz, dzbar = wirtinger_fd(lambda z: np.abs(z) ** 2, 0.3 + 0.1j)
        self.assertAlmostEqual(abs(dz - (0.3 - 0.1j)), 0., delta=1e-7)
        self.assertAlmostEqual(abs(dzbar - (0.3 + 0.1j)), 0., delta=1e-7)
        with self.assertRaises(ValueError):
            wirtinger_fd(lambda z: np.full(np.shape(z), np.nan), 0j)
        with self.assertRaises(ValueError):
            wirtinger_fd(np.conj, 0j, h=0.)

    def test_sampled_field(self):
        f = SampledField.from_function(lambda z: z.real + 2 * z.imag, 1j, 0.5, (3, 4))
        self.assertEqual(f.shape, (3, 4))
        self.assertFalse(f.iscomplex)
        self.assertEqual(f.points()[2, 1], 0.5 + 2j)
        self.assertEqual(f.values[2, 1], 4.5)
        with self.assertRaises(ValueError):
            SampledField(0j, 1., (1, 4), np.zeros((1, 4)))
        with self.assertRaises(ValueError):
            SampledField(0j, -1., (2, 2), np.zeros((2, 2)))
        mask = np.ones((3, 4), dtype=bool)
        mask[0, 0] = False
        g = SampledField.from_function(lambda z: z, 0j, 1., (3, 4), mask=mask)
        self.assertTrue(g.iscomplex)
        self.assertTrue(np.isnan(g.values[0, 0]))
        with tempfile.TemporaryDirectory() as tmpdir:
            path = os.path.join(tmpdir, 'field.csv')
            g.to_csv(path)
            with open(path, 'r', newline='', encoding='utf-8') as ifile:
                rows = list(csv.reader(ifile))
        self.assertEqual(rows[0], ['re', 'im', 'value_re', 'value_im'])
        self.assertEqual(len(rows), 1 + 11)
        self.assertEqual(float(rows[1][0]), float(rows[1][2]))

    def test_quad_disk(self):
        ans = quad_region(lambda z: np.ones(np.shape(z)), Disk(0, 1.))
        self.assertAlmostEqual(ans.value, np.pi, delta=1e-12)
        ans = quad_region(lambda z: np.abs(z) ** 2, Disk(1j, 2.), nodes=8)
        # int |z|**2 over B(i, 2) = pi r**4 / 2 + pi r**2 |c|**2
        self.assertAlmostEqual(ans.value, 8 * np.pi + 4 * np.pi, delta=1e-10)
        self.assertLess(ans.error, 1e-10)
        self.assertEqual(ans.method, 'gauss')
        self.assertGreater(ans.neval, 0)
        g = ans.gvar
        self.assertAlmostEqual(g.mean, 12 * np.pi, delta=1e-10)

    def test_quad_bands(self):
        ans = quad_region(lambda z: np.ones(np.shape(z)), unit_strip(), window=(-1, 1, -2, 2))
        self.assertAlmostEqual(ans.value, 2., delta=1e-12)
        ans = quad_region(
            lambda z: z.real ** 2, HalfPlaneBand(0, 1), window=(0, 1, 0, 1),
            method='midpoint', nodes=4,
            )
        self.assertAlmostEqual(ans.value, 1 / 3., delta=1e-12)
        ans = quad_region(
            lambda z: np.ones(np.shape(z)), Union(Disk(0, 1), Disk(5, 1)),
            max_cell=0.5,
            )
        self.assertAlmostEqual(ans.value, 2 * np.pi, delta=1e-10)
        ans = quad_region(lambda z: 1j * np.ones(np.shape(z)), Disk(0, 1.))
        self.assertAlmostEqual(abs(ans.value - 1j * np.pi), 0., delta=1e-12)
        self.assertEqual(np.shape(ans.gvar), (2,))
        with self.assertRaises(ValueError):
            quad_region(np.abs, unit_strip())
        with self.assertRaises(ValueError):
            quad_region(np.abs, Disk(0, 1), method='simpson')

    def test_quad_vegas(self):
        ans = quad_region(
            lambda z: np.ones(np.shape(z)), Disk(0, 1.), method='vegas', seed=1
            )
        self.assertLess(abs(ans.value - np.pi), 5 * ans.error + 1e-3)
        self.assertEqual(ans.method, 'vegas')

    def test_set(self):
        old = quad_region.set(nodes=8)
        try:
            self.assertEqual(quad_region.DEFAULTS['nodes'], 8)
            self.assertEqual(wirtinger_fd.set()['nodes'], 8)
        finally:
            quad_region.set(**old)
        self.assertEqual(quad_region.DEFAULTS['nodes'], 32)
        with self.assertRaises(ValueError):
            quad_region.set(nodes_per_cell=4)
        with self.assertRaises(ValueError):
            quad_region.set(method='simpson')


if __name__ == '__main__':
    unittest.main()
