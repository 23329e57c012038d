#!/usr/bin/env python
# encoding: utf-8
"""
test-dynamics.py

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
import json
import tempfile
import unittest
import warnings
import numpy as np
import gvar as gv
from wdlab import *

def fast_params(family='identity'):
    with warnings.catch_warnings():
        warnings.simplefilter('ignore', TruncationWarning)
        p = fast_strip_params(K=3)
        return p if family == 'identity' else p.with_family(family)

class test_model_orbit(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.p = fast_params()

    def test_iterate(self):
        p = self.p
        orbit = iterate_model(p)
        self.assertEqual(orbit.mode, 'model')
        self.assertEqual(orbit.family, 'identity')
        self.assertEqual(len(orbit), 4)
        self.assertEqual(orbit.steps[0].z, 0j)
        self.assertAlmostEqual(orbit.position(0), 1j * p.tau_float(1))
        # heights beyond float range come back as moduli
        self.assertIsInstance(orbit.position(2), TowerReal)
        self.assertEqual(orbit.steps[3].region, 4)
        self.assertAlmostEqual(orbit.steps[1].budget, p.delta[1])
        self.assertAlmostEqual(orbit.steps[2].budget, p.delta[1] + p.delta[2])
        self.assertTrue(orbit.consistent)
        self.assertIn('mode=model', str(orbit))
        json.dumps(orbit.to_dict())

    def test_to_csv(self):
        orbit = iterate_model(self.p, nmax=2)
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'orbit.csv')
            orbit.to_csv(path)
            with open(path) as ifile:
                lines = ifile.read().splitlines()
        self.assertEqual(lines[0].split(',')[:3], ['n', 're', 'im'])
        self.assertEqual(len(lines), 4)

    def test_errors(self):
        p = self.p
        with self.assertRaises(ValueError):
            iterate_model(p, nmax=0)
        with self.assertRaises(ValueError):
            iterate_model(p, nmax=4)
        with self.assertRaises(ValueError):
            iterate_model(p, z0=1j * (p.tau_float(1) + 0.49))
        orbit = iterate_model(p, z0=1j * p.tau_float(1) + 2.)
        self.assertAlmostEqual(orbit.steps[3].z, 2.)


class test_classify(unittest.TestCase):
    def check_case(self, family, case):
        p = fast_params(family)
        rep = classify(iterate_model(p), p)
        self.assertEqual(rep.case, case, str(rep))
        check = rep.report(family)
        self.assertTrue(check.find('case')[-1].passed)
        self.assertEqual(check.rows[-1].anchor, 'case')
        self.assertIn('case=' + case, rep.format())
        return rep

    def test_identity(self):
        rep = self.check_case('identity', 'a')
        self.assertGreaterEqual(rep.evidence['min_lower'], 0.2)
        check = rep.report('identity')
        self.assertEqual(len(check.find('1/2 - eps_')), 3)

    def test_constant(self):
        rep = self.check_case('constant', 'c')
        self.assertLessEqual(rep.evidence['max_upper_ratio'], 5.)

    def test_alternating(self):
        rep = self.check_case('alternating', 'b')
        self.assertEqual(rep.evidence['away'], [2])
        self.assertEqual(rep.evidence['toward'], [1, 3])

    def test_unknown_family(self):
        p = fast_params('constant')
        rep = classify(iterate_model(p), p).report()
        self.assertIsNone(rep.rows[-1].passed)

    def test_numeric_orbit(self):
        orbit = iterate_numeric(lambda z: z + 1, 0j, 3, (-1., 10., -1., 1.))
        with self.assertRaises(ValueError):
            classify(orbit, fast_params())


class test_hyperbolic(unittest.TestCase):
    def test_density(self):
        S = unit_strip()
        self.assertAlmostEqual(hyperbolic_density_strip(S, 0j), np.pi)
        y = np.array([0.1, -0.3])
        np.testing.assert_allclose(
            hyperbolic_density_strip(S, 5. + 1j * y), np.pi / np.cos(np.pi * y)
            )
        with self.assertRaises(ValueError):
            hyperbolic_density_strip(S, 0.5j)

    def test_dist(self):
        S = unit_strip()
        for x in [0.1, 1., 3.]:
            self.assertAlmostEqual(hyperbolic_dist_strip(S, 0j, x), np.pi * x)
        z, w = 0.3 + 0.2j, -1.1 - 0.4j
        self.assertAlmostEqual(hyperbolic_dist_strip(S, z, w), hyperbolic_dist_strip(S, w, z))
        self.assertAlmostEqual(hyperbolic_dist_strip(S, z, z), 0.)
        # translation invariant, no overflow far out
        self.assertAlmostEqual(
            hyperbolic_dist_strip(S, 1e4 + z, 1e4 + w), hyperbolic_dist_strip(S, z, w)
            )
        T = strip_at(10., 0.1)
        self.assertAlmostEqual(hyperbolic_dist_strip(T, 10j, 10j + 0.8), np.pi * 1.)

    def test_errors(self):
        with self.assertRaises(ValueError):
            hyperbolic_dist_strip(unit_strip(), 0j, 0.6j)
        with self.assertRaises(ValueError):
            hyperbolic_dist_strip(HalfPlaneBand(0., None), 1j, 2j)
        with self.assertRaises(ValueError):
            hyperbolic_density_strip(Disk(0, 1.), 0j)


class test_contraction(unittest.TestCase):
    def test_constant(self):
        p = fast_params('constant')
        rep = contraction_check(p)
        self.assertTrue(rep.passed, str(rep.failures))
        self.assertEqual(len(rep.find('model distance')), 3)
        self.assertEqual(rep.rows[-1].anchor, 'bound < 1e-3 by step 3')
        self.assertEqual(len(rep.find('bound decreasing')), 2)

    def test_errors(self):
        with self.assertRaises(ValueError):
            contraction_check(fast_params())


class test_fast_escape(unittest.TestCase):
    def test_strips(self):
        rep = fast_escape_check(fast_params())
        self.assertTrue(rep.passed, str(rep.failures))
        self.assertEqual(rep.rows[-1].anchor, 'A(f) membership criterion through level 3')
        self.assertGreater(len(rep.find('|f^1(z0)| > R_1')), 0)
        with self.assertRaises(ValueError):
            fast_escape_check(fast_params(), z0=0j)

    def test_order(self):
        rep = fast_escape_check(faithful_order_params())
        self.assertTrue(rep.passed, str(rep.failures))
        self.assertGreater(len(rep.find('|f^1(z0)| > z_2 - 1/4 > z_2/100')), 0)

    def test_type(self):
        with self.assertRaises(ValueError):
            fast_escape_check(StripModel(surrogate_strip_params()))


class test_numeric_orbit(unittest.TestCase):
    def test_escaped(self):
        orbit = iterate_numeric(lambda z: z + 1, 0j, 10, (-1., 5., -1., 1.))
        self.assertEqual(orbit.mode, 'numeric')
        self.assertEqual(orbit.status, 'escaped')
        self.assertEqual(len(orbit), 7)
        self.assertEqual(orbit.position(6), 6.)

    def test_complete(self):
        orbit = iterate_numeric(lambda z: z / 2, 1. + 0j, 5, (-1., 5., -1., 1.))
        self.assertEqual(orbit.status, 'complete')
        self.assertEqual(len(orbit), 6)
        self.assertAlmostEqual(orbit.position(5), 1. / 32)

    def test_nonfinite(self):
        orbit = iterate_numeric(lambda z: np.nan, 0j, 5, (-1., 5., -1., 1.))
        self.assertEqual(orbit.status, 'nonfinite')
        self.assertEqual(len(orbit), 1)
        with self.assertRaises(ValueError):
            iterate_numeric(lambda z: z, 10j, 5, (-1., 5., -1., 1.))

    def test_model_deviation(self):
        model = StripModel(surrogate_strip_params())
        orbit = iterate_numeric(model.h, 0.3 + 1.5j, 2, (-5., 5., 0., 10.), model=model)
        self.assertEqual(orbit.steps[1].deviation, 0.)
        self.assertEqual(orbit.steps[1].region, 0)


class test_growth(unittest.TestCase):
    def test_max_modulus(self):
        self.assertAlmostEqual(max_modulus(np.exp, 3.) / np.exp(3.), 1., places=9)
        self.assertAlmostEqual(max_modulus(lambda z: z ** 2, 2.), 4.)
        with self.assertRaises(ValueError):
            max_modulus(np.exp, 0.)
        old = max_modulus.set(samples=64)
        try:
            self.assertEqual(max_modulus.DEFAULTS['samples'], 64)
        finally:
            max_modulus.set(**old)

    def test_ratios(self):
        np.testing.assert_allclose(order_ratios(np.exp, [10., 100.]), 1., rtol=1e-9)

    def test_order_exp(self):
        est = order_estimate(np.exp, [10., 20., 40., 80., 160.])
        self.assertIsInstance(est.slope, gv.GVar)
        self.assertLess(abs(est.slope.mean - 1.), 0.02)
        self.assertLess(est.residual, 1e-6)
        self.assertEqual(len(est.excluded), 0)
        self.assertIn('OrderEstimate', str(est))

    def test_order_cossqrt(self):
        est = order_estimate(lambda z: np.cos(np.sqrt(z)), [1e2, 1e3, 1e4, 1e5])
        self.assertLess(abs(est.slope.mean - 0.5), 0.05)

    def test_order_errors(self):
        with self.assertRaises(ValueError):
            order_estimate(np.exp, [20., 10., 40., 80.])
        with self.assertRaises(ValueError):
            order_estimate(np.exp, [0.5, 10., 40., 80.])
        with self.assertWarns(AccuracyWarning):
            est = order_estimate(lambda z: z ** 2, [1.2, 1.4, 100., 200., 300., 400.])
        np.testing.assert_allclose(est.excluded, [1.2, 1.4])
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', AccuracyWarning)
            with self.assertRaises(ValueError):
                order_estimate(lambda z: z ** 2, [1.2, 1.4, 100., 200.])


class test_extent(unittest.TestCase):
    def test_constant_map(self):
        p = dynamics_order_params()
        z2 = p.zf(2)
        rep = explore_extent(lambda z: np.full(np.shape(z), z2), p, nrays=8, npts=20)
        self.assertEqual(len(rep.rows), 9)
        last = rep.rows[-1]
        self.assertEqual(last.anchor, 'extent around z_1')
        self.assertIsNone(last.passed)
        self.assertAlmostEqual(last.lhs, 3 * p.rf(1))

    def test_shift(self):
        p = dynamics_order_params()
        # image leaves B(z_2, 1/4) once |z - z_1| >= 1/4
        f = lambda z: p.zf(2) + (z - p.zf(1))
        rep = explore_extent(f, p, nrays=4, tmax=1., npts=30)
        self.assertAlmostEqual(rep.rows[-1].lhs, 7. / 30)
        self.assertAlmostEqual(rep.rows[-1].rhs, 7. / 30)


if __name__ == '__main__':
    unittest.main()
