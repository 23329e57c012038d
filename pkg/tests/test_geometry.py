#!/usr/bin/env python
# encoding: utf-8
"""
test-geometry.py

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
from wdlab import *

class test_regions(unittest.TestCase):
    def test_strip(self):
        S = unit_strip()
        self.assertAlmostEqual(float(S.sd(0j)), 0.5)
        self.assertFalse(S.contains(0.6j))
        self.assertTrue(S.contains(100 - 0.4j))
        self.assertAlmostEqual(S.boundary_distance(0.2j), 0.3)
        with self.assertRaises(ValueError):
            S.boundary_distance(1j)
        d = S.boundary_distance(np.array([0j, 0.25j]))
        np.testing.assert_allclose(d, [0.5, 0.25])
        with self.assertRaises(ValueError):
            HorizontalStrip(0.)

    def test_shifted_strips(self):
        s = strip_at(10., 0.1)
        self.assertAlmostEqual(float(s.sd(10j)), 0.4)
        self.assertFalse(s.contains(10.45j))
        s = strip_at(10., -0.1)
        self.assertTrue(s.contains(10.55j))
        self.assertFalse(s.contains(10.65j))
        with self.assertRaises(ValueError):
            unit_strip().shrink(-1.)
        g = gap_band(0., 10., 0.1, 0.2)
        self.assertAlmostEqual(g.lower, 0.6)
        self.assertAlmostEqual(g.upper, 9.3)
        with self.assertRaises(ValueError):
            gap_band(0., 1., 0.1, 0.2)

    def test_transition_set(self):
        t = transition_set(5., 0.1, 1, 2)
        self.assertTrue(t.contains(5.35j))
        self.assertTrue(t.contains(3 + 4.65j))
        self.assertFalse(t.contains(5.2j))
        self.assertFalse(t.contains(5.45j))
        with self.assertRaises(ValueError):
            transition_set(5., 0.1, 2, 1)
        with self.assertRaises(ValueError):
            transition_set(5., 0.3, 1, 2)

    def test_disk_annulus(self):
        D = Disk(1, 2.)
        self.assertAlmostEqual(float(D.sd(1)), 2.)
        self.assertAlmostEqual(D.dilate(2).radius, 4.)
        self.assertTrue(D.translate(10j).contains(1 + 11j))
        self.assertEqual(D.bbox(), (-1., 3., -2., 2.))
        self.assertEqual(D.pad(1.).bbox(), (-2., 4., -3., 3.))
        A = Annulus(0, 1., 2.)
        self.assertAlmostEqual(float(A.sd(1.25)), 0.25)
        self.assertFalse(A.contains(0.5))
        with self.assertRaises(ValueError):
            Annulus(0, 2., 1.)
        with self.assertRaises(ValueError):
            unit_strip().dilate(2)
        with self.assertRaises(ValueError):
            unit_strip().bbox()

    def test_sector(self):
        s = Sector(0.3)
        self.assertTrue(s.contains(-5))
        self.assertFalse(s.contains(5))
        self.assertFalse(s.contains(0))
        self.assertTrue(s.pad(0.1).contains(0))
        self.assertTrue(sector_set(0.3, pad=0.1).contains(0.05))
        # distance from -r to the boundary rays is r sin(aperture)
        self.assertAlmostEqual(float(s.sd(-4.)), 4 * np.sin(0.3))
        self.assertFalse(Sector(0.3, rmin=2.).contains(-1))
        with self.assertRaises(ValueError):
            Sector(2.)
        collar = SectorCollar(0.3, 0.5)
        up = 4 * np.exp(1j * (np.pi - 0.3))
        outward = -1j * np.exp(1j * (np.pi - 0.3))
        self.assertTrue(collar.contains(up + 0.25 * outward))
        self.assertFalse(collar.contains(up + 0.75 * outward))
        self.assertFalse(collar.contains(-4.))

    def test_union(self):
        u = Union(Disk(0, 1), Disk(5, 1))
        self.assertTrue(u.contains(5.5))
        self.assertFalse(u.contains(2.5))
        self.assertTrue(u.bounded)
        self.assertEqual(u.bbox(), (-1., 6., -1., 1.))
        self.assertFalse(Union(Disk(0, 1), unit_strip()).bounded)
        with self.assertRaises(ValueError):
            Union()

    def test_cells_sample(self):
        with self.assertRaises(ValueError):
            unit_strip().cells()
        cells = unit_strip().cells(window=(-2, 2, -1, 1), max_size=1.)
        self.assertEqual(len(cells), 4)
        self.assertTrue(all(c[0] == 'affine' for c in cells))
        z = Disk(0, 1).sample(10., (-1, 1, -1, 1))
        self.assertTrue(np.all(np.abs(z) < 1))
        self.assertLess(abs(len(z) - 100 * np.pi), 20)
        self.assertEqual(len(Disk(0, 1).sample(10., (3, 4, 3, 4))), 0)
        with self.assertRaises(ValueError):
            Disk(0, 1).sample(0., (-1, 1, -1, 1))

    def test_collar_area(self):
        " window-clipped collar area stays below the band plus cap "
        collar = SectorCollar(0.3, 0.5)
        ans = quad_region(lambda z: np.ones(np.shape(z)), collar, window=(-10, 0, 0, 10), nodes=16)
        # band of width 1/2 along the upper ray plus part of the apex cap
        self.assertGreater(ans.value, 0.)
        self.assertLess(ans.value, 0.5 * 10 / np.cos(0.3) + np.pi)

    def test_format(self):
        self.assertIn('HorizontalStrip', str(unit_strip()))
        self.assertIn('shrunk 0.1', strip_at(2., 0.1).format())
        self.assertIn('padded', Disk(0, 1).pad(0.5).format())


if __name__ == '__main__':
    unittest.main()
