#!/usr/bin/env python
# encoding: utf-8
"""
test-weights.py

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

import unittest
import warnings
import numpy as np
from wdlab import *

class test_strip_weight(unittest.TestCase):
    def test_v_strip(self):
        self.assertEqual(v_strip(0.2, 0j), 1.)
        self.assertEqual(v_strip(0.2, 0.15j), 0.)
        self.assertAlmostEqual(v_strip(0.2, 0.1 + 0j), np.cosh(np.pi / 2))
        z = np.array([0.3 + 0.05j, -1.2 - 0.02j, 40. + 0.01j])
        np.testing.assert_allclose(v_strip_log(0.2, z[:2]), np.log(v_strip(0.2, z[:2])), rtol=1e-12)
        # no overflow in log form
        self.assertTrue(np.isfinite(v_strip_log(0.2, z[2])))
        self.assertEqual(v_strip_log(0.2, 0.2j), -np.inf)
        with self.assertRaises(ValueError):
            v_strip(1., 0j)

    def test_values(self):
        w = StripWeight(surrogate_strip_params())
        self.assertEqual(w.kmax, 2)
        self.assertEqual(w.ymax, 5.5)
        self.assertEqual(w(0.5j), 0.)
        z = 0.3 + 3j
        self.assertFalse(w.in_support(z))
        self.assertAlmostEqual(w(z), -8 * np.log(abs(z)))
        self.assertEqual(u_strip_eval(w, z), w(z))
        # edge band of strip 1
        zb = 3j + 1j * (0.5 - 0.1)
        self.assertTrue(w.in_support(zb))
        self.assertGreater(w(zb), -8 * np.log(abs(zb)))
        self.assertEqual(np.shape(w(np.array([z, zb]))), (2,))
        with self.assertRaises(ValueError):
            w(6j)

    def test_verify(self):
        w = StripWeight(surrogate_strip_params())
        rep = verify_strip_weight(w, n=60, nsamples=200, scale='surrogate')
        self.assertTrue(rep.find('u = -8 log|z| off the supports')[0].passed)
        self.assertTrue(rep.find('exp(x)/2 < cosh(x)')[0].passed)
        self.assertTrue(rep.find('cosh(x) <= 2 exp(x)')[0].passed)
        self.assertEqual(len(rep.find('u <= 2 a_')), 3)


class test_poisson(unittest.TestCase):
    def test_function(self):
        w = np.array([0., 0.5, 0.3 + 0.4j, 0.99j])
        ans = poisson_disk(lambda zeta: (zeta ** 2).real, w)
        np.testing.assert_allclose(ans, (w ** 2).real, atol=1e-7)
        self.assertAlmostEqual(poisson_disk(lambda zeta: np.ones(np.shape(zeta)), 0.5j), 1.)

    def test_samples(self):
        M = 256
        theta = 2 * np.pi * np.arange(M) / M
        w = np.array([0.2, -0.5j, 0.1 + 0.6j])
        ans = poisson_disk(np.cos(2 * theta), w)
        np.testing.assert_allclose(ans, (w ** 2).real, atol=1e-10)
        with self.assertRaises(ValueError):
            poisson_disk(np.array([1., np.nan]), w)

    def test_errors_defaults(self):
        with self.assertRaises(ValueError):
            poisson_disk(lambda zeta: zeta.real, 1.)
        old = poisson_disk.set(poisson_nodes=512)
        try:
            self.assertEqual(poisson_disk.DEFAULTS['poisson_nodes'], 512)
            self.assertAlmostEqual(poisson_disk(lambda zeta: zeta.real, 0.25), 0.25)
        finally:
            poisson_disk.set(**old)
        self.assertEqual(poisson_disk.DEFAULTS['poisson_nodes'], 2048)
        with self.assertRaises(ValueError):
            poisson_disk.set(nodes=10)


class test_power_weight(unittest.TestCase):
    def setUp(self):
        self.p = dynamics_order_params()
        self.w = PowerWeight(self.p)

    def test_v(self):
        self.assertAlmostEqual(v_power(self.p, 4.), 4.)
        self.assertAlmostEqual(v_power(self.p, 4j), 4 * np.cos(self.p.beta * np.pi / 2))
        with self.assertRaises(ValueError):
            v_power(self.p, 0.)

    def test_values(self):
        w = self.w
        self.assertAlmostEqual(w(10.), 10.)
        self.assertEqual(u_power_eval(w, 10.), w(10.))
        self.assertEqual(w(30.), w.floor(1))
        self.assertEqual(w.floor(1), -1e9 * 30.)
        self.assertAlmostEqual(w(31.), w.puddle(1, 31.))
        # continuous across the puddle boundary
        z = 30. + 0.999 * w.rn[0] * np.exp(0.7j)
        self.assertLess(abs(w(z) - w.v(z)), 0.05)
        # the log term pulls the center down
        self.assertLess(w(30.5), w.v(30.5))
        self.assertTrue(w.in_puddles(31.))
        self.assertFalse(w.in_puddles(10.))
        self.assertTrue(w.seam_mask(30.05, 0.1))
        with self.assertRaises(ValueError):
            w.puddle(1, 40.)
        with self.assertRaises(ValueError):
            w(0.)

    def test_gluing(self):
        margin = gluing_margin(self.w, 1, nodes=1024)
        self.assertEqual(margin.shape, (1024,))
        self.assertTrue(np.all(np.isfinite(margin)))
        c = estimate_c(self.w, 1, nodes=1024)
        self.assertAlmostEqual(
            c * self.p.eps * (self.w.zn[0] - self.w.rn[0]) ** self.p.alpha,
            (margin + self.w.An[0]).min(),
            )

    def test_verify(self):
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', AccuracyWarning)
            rep = verify_power_weight(self.w, nr=12, ntheta=19, nodes=1024)
        self.assertEqual(rep.rows[0].anchor, 'pi/(2 beta) = pi - eps/2')
        self.assertTrue(rep.rows[0].passed)
        self.assertTrue(rep.find('u <= |z|^alpha off puddles')[0].passed)
        self.assertTrue(rep.find('u <= |z|^alpha in puddles')[0].passed)
        self.assertEqual(len(rep.find('A_')), 2)

    def test_verify_large_puddle(self):
        " Poisson excess over |z|^alpha near dB_n stays inside the subharmonic bound "
        w = PowerWeight(puddle_order_params())
        # the floor scales with the puddle depth
        self.assertEqual(w.floor(1), -1e9 * w.zn[0])
        self.assertLess(w.floor(1), -w.p.c * w.zn[0] ** w.p.alpha)
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', AccuracyWarning)
            rep = verify_power_weight(w)
        row = rep.find('u <= |z|^alpha in puddles')[0]
        self.assertTrue(row.passed)
        # (r/z)^2 / (4 (1 - r/z)^2) with r = z/9 and alpha = 1
        self.assertLessEqual(row.rhs, 1. / 256 + 1e-6)


class test_submean(unittest.TestCase):
    def field(self, f):
        return SampledField.from_function(f, -1 - 1j, 0.1, (21, 21))

    def test_subharmonic(self):
        rep = submean_check(self.field(lambda z: np.abs(z) ** 2))
        self.assertEqual(len(rep.rows), 3)
        self.assertTrue(rep.passed)
        self.assertEqual(rep.rows[0].anchor, 'sub-mean at r = 2h')

    def test_circle_mean(self):
        " the stencil mean of |z|^2 is the circle mean |z|^2 + r^2 "
        rep = submean_check(self.field(lambda z: np.abs(z) ** 2), radii=[0.2, 0.4])
        self.assertAlmostEqual(rep.rows[0].lhs, -0.04, places=6)
        self.assertAlmostEqual(rep.rows[1].lhs, -0.16, places=6)
        rep = submean_check(self.field(lambda z: (z ** 3).real))
        self.assertTrue(rep.passed)

    def test_superharmonic(self):
        rep = submean_check(self.field(lambda z: -np.abs(z) ** 2), construction='order')
        self.assertFalse(rep.passed)
        self.assertEqual(len(rep.failures), 3)

    def test_seam_mask(self):
        f = self.field(lambda z: -np.abs(z) ** 2)
        rep = submean_check(f, radii=[0.2], seam_mask=np.ones(f.shape, dtype=bool))
        self.assertIsNone(rep.rows[0].passed)

    def test_errors(self):
        with self.assertRaises(ValueError):
            submean_check(self.field(lambda z: np.abs(z)), radii=[0.15])
        with self.assertRaises(ValueError):
            submean_check(self.field(lambda z: z))
        with self.assertRaises(ValueError):
            submean_check(self.field(lambda z: np.abs(z)), radii=[2.])


if __name__ == '__main__':
    unittest.main()
