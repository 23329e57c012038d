#!/usr/bin/env python
# encoding: utf-8
"""
test-params.py

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

class test_strip_params(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', TruncationWarning)
            cls.fast = fast_strip_params(K=3)
            cls.minimal = minimal_strip_params(K=3)

    def test_eps(self):
        eps = make_eps_geometric(3)
        np.testing.assert_allclose(eps, [0.2, 1 / 8., 1 / 64., 1 / 512.])
        self.assertAlmostEqual(make_eps_geometric(2, eps0=0.1)[0], 0.1)
        with self.assertRaises(ValueError):
            make_eps_geometric(0)

    def test_delta(self):
        self.assertAlmostEqual(derive_delta(0.2, 10.), 0.15, places=12)
        self.assertGreaterEqual(derive_delta(0.2, 10.), 0.15)
        self.assertAlmostEqual(float(derive_log_delta(0.2, 10.)), -np.log(0.15), places=9)
        self.assertLessEqual(float(derive_log_delta(0.2, 10.)), -np.log(0.15))
        # beyond float range the bound floors at the smallest positive float
        self.assertEqual(derive_delta(0.2, TowerReal(1e200)), 5e-324)
        tiny = derive_delta(0.2, 1e160)
        self.assertGreater(tiny, 0.)
        self.assertLess(tiny, 1e-300)
        with self.assertRaises(ValueError):
            derive_delta(0., 10.)
        with self.assertRaises(ValueError):
            derive_log_delta(0.2, -1.)

    def test_growth_bound(self):
        self.assertAlmostEqual(float(fast_growth_bound(1., 0.5, 0.)) / (4 * np.e), 1., places=12)
        up = float(fast_growth_bound(0.5, 0.25, 0.1, 1))
        lo = float(fast_growth_bound(0.5, 0.25, 0.1, -1))
        exact = 4 * np.exp(0.5 * np.exp(np.pi / 0.25 * 0.1))
        self.assertLessEqual(lo, exact)
        self.assertGreaterEqual(up, exact)
        with self.assertRaises(ValueError):
            fast_growth_bound(1., 0.5, -1.)

    def test_construction_errors(self):
        with self.assertRaises(ValueError):
            StripParams([0.2, 0.1], [1.5, 3.], [20.])
        with self.assertRaises(ValueError):
            StripParams([0.2, 0.1, 0.05], [1.5, 3.], [20., 40.])
        with self.assertRaises(ValueError):
            StripParams([0.2, 0.1, 0.05], [1.5, 3., 5.], [20.])
        with self.assertRaises(ValueError):
            StripParams([0.2, 0.1, 0.05], [1.5, 3., 5.], [20., 40.], family='custom')

    def test_surrogate(self):
        p = surrogate_strip_params()
        self.assertEqual(p.K, 2)
        self.assertFalse(p.fast_mode)
        self.assertEqual(p.nb, [(1, 1.)] * 3)
        self.assertEqual(p.with_family('constant').nb, [(0, 1.)] * 3)
        self.assertEqual(p.tau_float(3), 6.)
        rep = validate_strip_params(p, scale='surrogate')
        self.assertFalse(rep.passed)
        failed = [r.anchor for r in rep.failures]
        self.assertIn('delta below next eps 0', failed)
        self.assertNotIn('tau spacing 0', failed)
        self.assertTrue(rep.find('a_0 >= 10 tau_0')[0].passed)
        self.assertIsNone(rep.find('inner-map bound 0')[0].passed)
        self.assertIn('StripParams(K=2', str(p))

    def test_fast(self):
        p = self.fast
        self.assertTrue(p.fast_mode)
        np.testing.assert_allclose(p.eps[:4], [0.2, 1 / 8., 1 / 64., 1 / 512.])
        self.assertAlmostEqual(p.tau_float(0), 1.01 * np.sqrt(120.), places=6)
        self.assertAlmostEqual(p.tau_float(1), 1.01 * np.sqrt(1536.), places=6)
        self.assertGreater(p.tau[2], 1e300)
        self.assertGreaterEqual(p.a[0], 10 * p.tau_float(0))
        rep = validate_strip_params(p)
        self.assertTrue(rep.passed, str(rep.failures))
        self.assertGreater(len(rep.find('fast growth')), 0)
        ladder = ladder_induction_strip(p)
        self.assertTrue(ladder.passed, str(ladder.failures))
        self.assertEqual(ladder.rows[0].anchor, 'R_1 = tau_2 - 3/2')

    def test_minimal(self):
        p = self.minimal
        self.assertFalse(p.fast_mode)
        self.assertTrue(validate_strip_params(p).passed)
        ladder = ladder_induction_strip(p)
        self.assertFalse(ladder.passed)
        self.assertEqual(ladder.failures[0].anchor, 'R_2 <= tau_3 - 3/2')
        # ladder halts at the first failure
        self.assertEqual(ladder.rows[-1].anchor, 'R_2 <= tau_3 - 3/2')

    def test_choose_a(self):
        p = self.fast
        draft = StripDraft(p.eps, p.tau[:2], [])
        growth_ok, integral, target = check_a(0, draft, p.nb[0], p.a[0])
        self.assertTrue(growth_ok)
        self.assertLess(integral, target)
        self.assertAlmostEqual(target, 0.1)
        with self.assertRaises(ValueError):
            choose_a(1, draft, p.nb[1])


class test_order_params(unittest.TestCase):
    def test_constant(self):
        self.assertEqual(order_constant(), 19200.)
        self.assertEqual(order_constant(0.5, 5., 9.), 800. * 16.)

    def test_dynamics_bundle(self):
        p = dynamics_order_params()
        self.assertTrue(p.surrogate)
        self.assertEqual(p.N, 2)
        self.assertEqual(p.alpha, 1.)
        self.assertEqual(p.zf(1), 30.)
        self.assertAlmostEqual(p.zf(2) / np.exp(5.), 1., places=12)
        self.assertAlmostEqual(p.rf(1), 30. / 9.)
        self.assertAlmostEqual(p.Af(1), 0.1 * 0.5 * 30. * 8. / 9.)
        self.assertAlmostEqual(p.beta, 0.5 + 0.5 / (4 * np.pi - 1.))
        self.assertLessEqual(p.z_lo[1], p.z[1])
        self.assertGreaterEqual(p.z_hi[1], p.z[1])
        rep = validate_order_params(p)
        self.assertTrue(rep.passed, str(rep.failures))
        self.assertIsNone(rep.find('z_1 > exp(C/eps)')[0].passed)
        self.assertEqual(rep.find('z_1 > exp(C/eps)')[0].scale, 'surrogate')
        self.assertIn('OrderParams(eps=0.5, N=2', str(p))

    def test_surrogate_warning(self):
        with self.assertWarns(SurrogateWarning):
            p = OrderParams(0.5, 30., N=1)
        self.assertTrue(p.surrogate)

    def test_errors(self):
        with self.assertRaises(ValueError):
            OrderParams(0.6, 30.)
        with self.assertRaises(ValueError):
            derive_z_sequence(0.5, 30., 0)
        with self.assertRaises(ValueError):
            derive_z_sequence(0.5, -1., 1)

    def test_puddle_bundle(self):
        p = puddle_order_params()
        self.assertEqual(p.N, 1)
        rep = validate_order_params(p)
        self.assertTrue(rep.find('depth window 1')[0].passed)

    def test_faithful(self):
        p = faithful_order_params()
        self.assertFalse(p.surrogate)
        self.assertEqual(p.C, 19200.)
        self.assertGreater(p.z1, TowerReal.from_log(38400.))
        rep = validate_order_params(p)
        self.assertTrue(rep.passed, str(rep.failures))
        self.assertTrue(rep.find('z_1 > exp(C/eps)')[0].passed)
        ladder = ladder_induction_order(p)
        self.assertTrue(ladder.passed, str(ladder.failures))
        step = ladder.find('R_1 <= z_')[0]
        self.assertEqual((step.lhs, step.relation), ('R_1', '<='))
        self.assertTrue(step.rhs.endswith('/100'))
        growth = ladder.find('growth condition at k = ')
        self.assertEqual(len(growth), 3)
        for row in growth:
            self.assertTrue(row.passed)
            self.assertLess(row.lhs, row.rhs)
        self.assertTrue(ball_inclusion_check(p).passed)


if __name__ == '__main__':
    unittest.main()
