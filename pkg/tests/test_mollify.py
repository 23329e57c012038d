#!/usr/bin/env python
# encoding: utf-8
"""
test-mollify.py

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
import numpy as np
import scipy.special
from wdlab import *

class test_bump(unittest.TestCase):
    def test_constant(self):
        exact = 1. / (np.pi * (np.exp(-1.) - scipy.special.exp1(1.)))
        self.assertAlmostEqual(bump_constant(), exact, places=7)

    def test_bump(self):
        self.assertEqual(bump(0.5, 0.5), 0.)
        self.assertAlmostEqual(bump(0j), bump_constant() * np.exp(-1.))
        self.assertAlmostEqual(bump(0j, 0.5), 4 * bump(0j))
        ans = quad_region(lambda z: bump(z, 0.5), Disk(0, 0.5), nodes=32)
        self.assertAlmostEqual(ans.value, 1., places=4)
        with self.assertRaises(ValueError):
            bump(0j, 0.)

    def test_convolve(self):
        z = np.array([0j, 1 + 2j, -3.5j])
        one = convolve_bump(lambda w: np.ones(np.shape(w)), z, 0.3)
        np.testing.assert_allclose(one, 1., rtol=1e-12)
        x = convolve_bump(lambda w: w.real, z, 0.3)
        np.testing.assert_allclose(x, z.real, atol=1e-12)
        self.assertEqual(np.shape(convolve_bump(lambda w: w.real, 0.5, 0.3)), ())

    def test_defaults(self):
        old = convolve_bump.set(bump_nr=8)
        try:
            self.assertAlmostEqual(convolve_bump(lambda w: w.imag, 2j, 0.1), 2.)
        finally:
            convolve_bump.set(**old)
        with self.assertRaises(ValueError):
            chi_eval.set(nodes=3)


class test_strip_cutoff(unittest.TestCase):
    def setUp(self):
        self.c = StripCutoff(surrogate_strip_params())

    def test_profile(self):
        c = self.c
        eps = c.eps[0]
        d = c.d[0]
        self.assertEqual(c.kmax, 2)
        self.assertEqual(c.profile(0, 0.), 1.)
        self.assertEqual(c.profile(0, (d[1] + d[2]) / 2), 0.)
        self.assertEqual(c.profile(0, -(d[1] + d[2]) / 2), 0.)
        self.assertAlmostEqual(c.beta(0, (d[0] + d[1]) / 2), 0.5)
        # slope is -16/eps across the middle of the falling ramp
        self.assertAlmostEqual(c.dprofile(0, d[0] + eps / 32) / (-16. / eps), 1., places=6)
        self.assertAlmostEqual(c.dprofile(0, -(d[0] + eps / 32)) / (16. / eps), 1., places=6)
        self.assertEqual(c.dprofile(0, 0.1), 0.)

    def test_values(self):
        c = self.c
        tau = c.tau
        self.assertEqual(c(1j * tau[0]), 1.)
        self.assertEqual(chi_eval(c, 2.2j), 1.)
        self.assertEqual(c(0.7 + 1j * (tau[1] + 0.5 - c.eps[1] / 2)), 0.)
        self.assertTrue(c.plateau(1j * tau[1]))
        self.assertFalse(c.plateau(1j * (tau[1] + 0.5 - 0.3 * c.eps[1])))
        g, dzb = grad_chi(c, 1j * tau[1])
        self.assertEqual(g, 0.)
        z = 1j * (tau[0] + c.d[0][0] + c.rho[0])
        g, dzb = grad_chi(c, z)
        self.assertAlmostEqual(g / (16. / c.eps[0]), 1., places=3)
        self.assertTrue(c.transition(1).contains(1j * (tau[1] + 0.5 - 0.3 * c.eps[1])))
        q = c.quad_value(z)
        self.assertAlmostEqual(q.value, c.profile(0, c.d[0][0] + c.rho[0]), delta=1e-3)

    def test_verify(self):
        rep = verify_cutoff(self.c, npts=200, nquad=4)
        for k in range(3):
            for anchor in (
                    'chi = 1 off transition', 'chi = 0 on inner band',
                    'sup |grad chi| <= 16/eps_', 'grad chi = 0 on plateaus',
                    ):
                rows = [r for r in rep.rows if r.anchor.startswith(anchor) and r.anchor.endswith(str(k))]
                self.assertEqual(len(rows), 1)
                self.assertTrue(rows[0].passed, str(rows[0]))
        sup, where = sweep_grad_chi(self.c, 1, npts=200)
        self.assertLessEqual(sup, 1.01 * 16. / self.c.eps[1])


class test_order_cutoff(unittest.TestCase):
    def setUp(self):
        self.p = dynamics_order_params()
        self.c = OrderCutoff(self.p)

    def test_values(self):
        c = self.c
        self.assertEqual(c(30.), 1.)
        self.assertEqual(c(10j), 0.)
        self.assertEqual(c(-5.), 1.)
        self.assertTrue(c.plateau(30.))
        self.assertFalse(c.plateau(30. + 2.5 * c.rn[0]))
        chi = c(30. + 2.5 * c.rn[0])
        self.assertGreater(chi, 0.)
        self.assertLess(chi, 1.)
        self.assertEqual(c.scale(0), 0.25)
        self.assertTrue(c.transition(1).contains(30. + 2.5 * c.rn[0]))

    def test_errors(self):
        with self.assertRaises(ValueError):
            OrderCutoff(OrderParams(0.5, 10., N=1, surrogate=True))

    def test_verify(self):
        rep = verify_cutoff(self.c, npts=50)
        self.assertTrue(rep.find('chi = 0 off 3B_n and padded sector')[0].passed)
        self.assertTrue(rep.find('chi = 1 on 2B_1')[0].passed)
        self.assertIsNone(rep.find('C~ estimate 0')[0].passed)


class test_inner_maps(unittest.TestCase):
    def test_variants(self):
        eps = surrogate_strip_params().eps
        f = InnerMapFamily('constant', eps)
        self.assertAlmostEqual(f(1, 5. + 0.1j), 1j * (0.5 - 3 * 0.16))
        f = InnerMapFamily('alternating', eps)
        self.assertAlmostEqual(f(1, 0j), 1j * (0.5 - 3 * 0.2))
        self.assertEqual(f(2, 0j), 0j)
        self.assertEqual(InnerMapFamily('zero', eps)(1, 3j), 0j)
        self.assertEqual(InnerMapFamily('identity', eps)(2, 0.3 + 0.1j), 0.3 + 0.1j)
        f = InnerMapFamily('custom', eps, coefficients=[0, 0.5], nb=[(1, 0.)] * 3)
        self.assertEqual(f(1, 2.), 1.)
        self.assertEqual(f.bound(1), (1, 0.))
        self.assertEqual(InnerMapFamily('constant', eps).bound(1), (0, 1))
        self.assertEqual(str(f), 'InnerMapFamily(custom)')
        with self.assertRaises(ValueError):
            f(0, 1.)
        with self.assertRaises(ValueError):
            InnerMapFamily('custom', eps)
        with self.assertRaises(ValueError):
            InnerMapFamily('custom', eps, coefficients=[1.])
        with self.assertRaises(ValueError):
            InnerMapFamily('shift', eps)

    def test_check_family(self):
        eps = make_eps_geometric(4)
        for variant in ('identity', 'constant', 'zero'):
            rep = check_family(InnerMapFamily(variant, eps), 2)
            self.assertEqual(len(rep.rows), 4)
            self.assertTrue(rep.passed, variant)
        # slope 2 leaves the narrower strip
        f = InnerMapFamily('custom', eps, coefficients=[0, 2.], nb=[(1, 0.)] * 4)
        self.assertFalse(check_family(f, 1).passed)


class test_models(unittest.TestCase):
    def test_strip_model(self):
        p = surrogate_strip_params()
        m = StripModel(p)
        self.assertEqual(m.kmax, 2)
        self.assertAlmostEqual(m.h(1.5j), 1.5j)
        self.assertAlmostEqual(m.h(0.3 + 3j), 0.3 + 4.5j)
        self.assertAlmostEqual(model_h_strip(p, m.family, 0.3 + 3j), 0.3 + 4.5j)
        self.assertEqual(m.g(0.3 + 3j), 0j)
        self.assertEqual(g_eval(m, 2.2j), 0j)
        zt = 0.2 + 1j * (3. + 0.5 - 0.7 * p.eps[1])
        self.assertNotEqual(m.g(zt), 0j)
        self.assertEqual(len(m.components()), 6)
        self.assertIn('identity', m.format())
        with self.assertRaises(ValueError):
            m.h(6j)
        rep = verify_model(m, nsamples=50, ng=2000)
        self.assertTrue(rep.find('g = 0 off its support')[0].passed)
        self.assertTrue(rep.find('h = i tau_0 on S^-eps_0 + i tau_0')[0].passed)

    def test_order_model(self):
        p = dynamics_order_params()
        m = OrderModel(p)
        self.assertAlmostEqual(m.h(30.) / np.exp(5.), 1.)
        self.assertEqual(m.h_raw(10j), 0j)
        self.assertEqual(model_h_order(p, -40.), 30.)
        self.assertEqual(m.h(10j), 0j)
        self.assertEqual(len(m.components()), 3)
        self.assertEqual(m.components()[0][1], 'collar')
        rep = verify_model(m, nsamples=50, ng=500)
        self.assertTrue(rep.find('h = z_2 on 3B_1')[0].passed)
        self.assertTrue(rep.find('h = z_1 on padded sector')[0].passed)


if __name__ == '__main__':
    unittest.main()
