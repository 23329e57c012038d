""" part of wdlab module: regions (strips, disks, sectors) with exact distances """

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

import copy

import numpy

class Region(object):
    """ Base class for closed-form planar regions.

    Every region has a signed distance ``sd(z)``: positive inside
    (distance to the complement) and negative outside (minus the
    distance to the region). Shrinking by ``delta`` subtracts
    ``delta`` from ``sd``, padding adds it, and translation
    shifts the argument. Regions are open: ``z`` is inside iff
    ``sd(z) > 0``.

    Subclasses implement ``_sd(z)``, ``_cells(window)`` and
    ``_bbox()``. All methods accept scalar or array ``z``.
    """
    bounded = False

    def __init__(self):
        self.shift = 0j
        self.offset = 0.0

    def _replace(self, **kargs):
        ans = copy.copy(self)
        for k in kargs:
            setattr(ans, k, kargs[k])
        return ans

    def sd(self, z):
        """ Signed distance (positive inside). """
        z = numpy.asarray(z, dtype=complex)
        return self._sd(z - self.shift) + self.offset

    def contains(self, z):
        """ ``True`` where ``z`` lies in the (open) region. """
        return self.sd(z) > 0

    def boundary_distance(self, z):
        """ Euclidean distance from ``z`` (inside the region) to the boundary.

        Raises:
            ValueError: If any ``z`` lies outside the region.
        """
        d = self.sd(z)
        if numpy.any(d < 0):
            raise ValueError('point outside region: ' + str(z))
        return d if numpy.ndim(d) > 0 else float(d)

    def translate(self, w):
        """ Region shifted by complex ``w``. """
        return self._replace(shift=self.shift + complex(w))

    def shrink(self, delta):
        """ ``{z : dist(z, complement) > delta}``. """
        if delta < 0:
            raise ValueError('negative shrink: ' + str(delta))
        return self._replace(offset=self.offset - float(delta))

    def pad(self, delta):
        """ ``{z : dist(z, region) < delta}``. """
        if delta < 0:
            raise ValueError('negative pad: ' + str(delta))
        return self._replace(offset=self.offset + float(delta))

    def dilate(self, n):
        raise ValueError('dilate only defined for disks')

    def bbox(self):
        """ Bounding box ``(xmin, xmax, ymin, ymax)`` of a bounded region. """
        if not self.bounded:
            raise ValueError('unbounded region has no bounding box')
        xmin, xmax, ymin, ymax = self._bbox()
        pad = max(self.offset, 0.0)
        return (
            xmin + self.shift.real - pad, xmax + self.shift.real + pad,
            ymin + self.shift.imag - pad, ymax + self.shift.imag + pad,
            )

    def cells(self, window=None, max_size=None):
        """ Tile ``region & window`` into quadrature cells.

        Cells are tuples ``('affine', origin, e1, e2, srange, trange, clip)``
        (points ``origin + s * e1 + t * e2``) or
        ``('polar', center, rrange, thetarange, clip)``. ``clip`` is
        ``None`` or a vectorized predicate selecting the nodes that
        belong to the region.

        Args:
            window (tuple or None): ``(xmin, xmax, ymin, ymax)``; required
                for unbounded regions.
            max_size (float or None): Largest cell extent.
        """
        if window is None:
            if not self.bounded:
                raise ValueError('unbounded region needs a window')
            window = self.bbox()
        cells = self._cells(window)
        if max_size is not None:
            cells = [c for cell in cells for c in _subdivide(cell, max_size)]
        return cells

    def _cells(self, window):
        # generic fallback: the window with a membership clip
        return [_window_cell(window, self.contains)]

    def sample(self, density, window):
        """ Cell-centered lattice of spacing ``1/density`` inside ``region & window``.

        Returns:
            1-d :mod:`numpy` array of complex points (possibly empty).
        """
        if not density > 0:
            raise ValueError('density must be positive: ' + str(density))
        xmin, xmax, ymin, ymax = window
        h = 1. / density
        nx = int(numpy.floor((xmax - xmin) * density + 1e-9))
        ny = int(numpy.floor((ymax - ymin) * density + 1e-9))
        if nx <= 0 or ny <= 0:
            return numpy.zeros(0, dtype=complex)
        x = xmin + h * (numpy.arange(nx) + 0.5)
        y = ymin + h * (numpy.arange(ny) + 0.5)
        z = (x[None, :] + 1j * y[:, None]).ravel()
        return z[self.contains(z)]

    def _describe(self):
        return self.__class__.__name__

    def format(self):
        ans = self._describe()
        if self.offset != 0:
            ans += ' {} {:g}'.format('padded' if self.offset > 0 else 'shrunk', abs(self.offset))
        if self.shift != 0:
            ans += ' + ({:g})'.format(self.shift)
        return ans

    def __str__(self):
        return self.format()


def _window_cell(window, clip=None):
    xmin, xmax, ymin, ymax = window
    return ('affine', complex(xmin, ymin), 1 + 0j, 1j, (0., xmax - xmin), (0., ymax - ymin), clip)

def _window_clip(window):
    xmin, xmax, ymin, ymax = window
    def clip(z):
        return (z.real >= xmin) & (z.real <= xmax) & (z.imag >= ymin) & (z.imag <= ymax)
    return clip

def _and(clip1, clip2):
    if clip1 is None:
        return clip2
    if clip2 is None:
        return clip1
    return lambda z: clip1(z) & clip2(z)

def _subdivide(cell, max_size):
    if cell[0] == 'affine':
        origin, e1, e2, srange, trange, clip = cell[1:]
        ns = max(1, int(numpy.ceil((srange[1] - srange[0]) * abs(e1) / max_size)))
        nt = max(1, int(numpy.ceil((trange[1] - trange[0]) * abs(e2) / max_size)))
        s = numpy.linspace(srange[0], srange[1], ns + 1)
        t = numpy.linspace(trange[0], trange[1], nt + 1)
        return [
            ('affine', origin, e1, e2, (s[i], s[i + 1]), (t[j], t[j + 1]), clip)
            for j in range(nt) for i in range(ns)
            ]
    center, rrange, trange, clip = cell[1:]
    nr = max(1, int(numpy.ceil((rrange[1] - rrange[0]) / max_size)))
    r = numpy.linspace(rrange[0], rrange[1], nr + 1)
    ans = []
    for i in range(nr):
        nth = max(1, int(numpy.ceil((trange[1] - trange[0]) * r[i + 1] / max_size)))
        if nth == 1:
            ans.append(('polar', center, (r[i], r[i + 1]), trange, clip))
            continue
        th = numpy.linspace(trange[0], trange[1], nth + 1)
        for j in range(nth):
            ans.append(('polar', center, (r[i], r[i + 1]), (th[j], th[j + 1]), clip))
    return ans


class HalfPlaneBand(Region):
    """ Horizontal band ``{lower < Im(z) < upper}``.

    Either bound may be ``None`` (half-plane).
    """
    def __init__(self, lower=None, upper=None):
        super(HalfPlaneBand, self).__init__()
        if lower is not None and upper is not None and not lower < upper:
            raise ValueError('empty band: lower={} upper={}'.format(lower, upper))
        self.lower = None if lower is None else float(lower)
        self.upper = None if upper is None else float(upper)

    def _sd(self, z):
        y = z.imag
        d = numpy.full(numpy.shape(y), numpy.inf)
        if self.lower is not None:
            d = numpy.minimum(d, y - self.lower)
        if self.upper is not None:
            d = numpy.minimum(d, self.upper - y)
        return d

    def _limits(self):
        lo = -numpy.inf if self.lower is None else self.lower - self.offset
        hi = numpy.inf if self.upper is None else self.upper + self.offset
        return lo + self.shift.imag, hi + self.shift.imag

    def _cells(self, window):
        lo, hi = self._limits()
        xmin, xmax, ymin, ymax = window
        lo, hi = max(lo, ymin), min(hi, ymax)
        if not hi > lo or not xmax > xmin:
            return []
        return [_window_cell((xmin, xmax, lo, hi))]

    def _describe(self):
        return 'HalfPlaneBand({}, {})'.format(self.lower, self.upper)


class HorizontalStrip(HalfPlaneBand):
    """ Strip ``{|Im(z) - center| < halfwidth}``; ``HorizontalStrip(0.5)`` is ``S``. """
    def __init__(self, halfwidth=0.5, center=0.0):
        if not halfwidth > 0:
            raise ValueError('halfwidth must be positive: ' + str(halfwidth))
        super(HorizontalStrip, self).__init__(center - halfwidth, center + halfwidth)
        self.halfwidth = float(halfwidth)
        self.center = float(center)

    def _describe(self):
        return 'HorizontalStrip({:g}, center={:g})'.format(self.halfwidth, self.center)


class Disk(Region):
    """ Open disk ``B(center, radius)``. """
    bounded = True

    def __init__(self, center, radius):
        super(Disk, self).__init__()
        if not radius > 0:
            raise ValueError('radius must be positive: ' + str(radius))
        self.center = complex(center)
        self.radius = float(radius)

    def _sd(self, z):
        return self.radius - numpy.abs(z - self.center)

    def dilate(self, n):
        """ Concentric disk of radius ``n * radius``. """
        if not n > 0:
            raise ValueError('dilation factor must be positive: ' + str(n))
        return self._replace(radius=self.radius * n)

    def _bbox(self):
        c, r = self.center, self.radius
        return (c.real - r, c.real + r, c.imag - r, c.imag + r)

    def _cells(self, window):
        rad = self.radius + self.offset
        if not rad > 0:
            return []
        c = self.center + self.shift
        clip = None
        xmin, xmax, ymin, ymax = window
        if c.real - rad < xmin or c.real + rad > xmax or c.imag - rad < ymin or c.imag + rad > ymax:
            clip = _window_clip(window)
        return [('polar', c, (0., rad), (-numpy.pi, numpy.pi), clip)]

    def _describe(self):
        return 'Disk({:g}, {:g})'.format(self.center, self.radius)


class Annulus(Region):
    """ Open annulus ``{rin < |z - center| < rout}``. """
    bounded = True

    def __init__(self, center, rin, rout):
        super(Annulus, self).__init__()
        if not 0 <= rin < rout:
            raise ValueError('need 0 <= rin < rout: {} {}'.format(rin, rout))
        self.center = complex(center)
        self.rin = float(rin)
        self.rout = float(rout)

    def _sd(self, z):
        r = numpy.abs(z - self.center)
        return numpy.minimum(r - self.rin, self.rout - r)

    def _bbox(self):
        c, r = self.center, self.rout
        return (c.real - r, c.real + r, c.imag - r, c.imag + r)

    def _cells(self, window):
        rin = max(self.rin - self.offset, 0.0)
        rout = self.rout + self.offset
        if not rout > rin:
            return []
        c = self.center + self.shift
        xmin, xmax, ymin, ymax = window
        clip = None
        if c.real - rout < xmin or c.real + rout > xmax or c.imag - rout < ymin or c.imag + rout > ymax:
            clip = _window_clip(window)
        return [('polar', c, (rin, rout), (-numpy.pi, numpy.pi), clip)]

    def _describe(self):
        return 'Annulus({:g}, {:g}, {:g})'.format(self.center, self.rin, self.rout)


def _sector_sd(z, aperture):
    r = numpy.abs(z)
    phi = numpy.pi - numpy.abs(numpy.angle(z))
    inside = aperture - phi
    return numpy.where(
        inside >= 0,
        r * numpy.sin(inside),
        -r * numpy.sin(numpy.minimum(-inside, numpy.pi / 2)),
        )

class Sector(Region):
    """ Sector ``{|Arg(z)| > pi - aperture}`` about the negative real axis.

    ``Arg`` takes values in ``(-pi, pi]``; the apex belongs only to a
    padded sector. With ``rmin > 0`` the sector is cut to ``|z| > rmin``.
    """
    def __init__(self, aperture, rmin=0.0):
        super(Sector, self).__init__()
        if not 0 < aperture < numpy.pi / 2:
            raise ValueError('aperture must be in (0, pi/2): ' + str(aperture))
        self.aperture = float(aperture)
        self.rmin = float(rmin)

    def _sd(self, z):
        d = _sector_sd(z, self.aperture)
        if self.rmin > 0:
            d = numpy.minimum(d, numpy.abs(z) - self.rmin)
        return d

    def contains(self, z):
        z = numpy.asarray(z, dtype=complex)
        if self.offset > 0:
            return self.sd(z) > 0
        return (self.sd(z) > 0) & (z != self.shift)

    def _cells(self, window):
        clip = _window_clip(window)
        xmin, xmax, ymin, ymax = window
        c = self.shift
        corners = numpy.array([xmin + 1j * ymin, xmin + 1j * ymax, xmax + 1j * ymin, xmax + 1j * ymax])
        rmax = float(numpy.max(numpy.abs(corners - c)))
        if self.offset != 0:
            return [_window_cell(window, self.contains)]
        rmin = self.rmin
        if not rmax > rmin:
            return []
        a = self.aperture
        return [
            ('polar', c, (rmin, rmax), (numpy.pi - a, numpy.pi), clip),
            ('polar', c, (rmin, rmax), (-numpy.pi, -numpy.pi + a), clip),
            ]

    def _describe(self):
        return 'Sector({:g}, rmin={:g})'.format(self.aperture, self.rmin)


class SectorCollar(Region):
    """ Points outside ``Sector(aperture)`` within distance ``width`` of it. """
    def __init__(self, aperture, width):
        super(SectorCollar, self).__init__()
        if not 0 < aperture < numpy.pi / 2:
            raise ValueError('aperture must be in (0, pi/2): ' + str(aperture))
        if not width > 0:
            raise ValueError('width must be positive: ' + str(width))
        self.aperture = float(aperture)
        self.width = float(width)

    def _sd(self, z):
        s = _sector_sd(z, self.aperture)
        return numpy.minimum(-s, self.width + s)

    def _cells(self, window):
        if self.offset != 0:
            return [_window_cell(window, self.contains)]
        xmin, xmax, ymin, ymax = window
        c = self.shift
        corners = numpy.array([xmin + 1j * ymin, xmin + 1j * ymax, xmax + 1j * ymin, xmax + 1j * ymax])
        rmax = float(numpy.max(numpy.abs(corners - c)))
        clip = _window_clip(window)
        a, w = self.aperture, self.width
        up = numpy.exp(1j * (numpy.pi - a))
        down = numpy.conj(up)
        cap = numpy.pi / 2 - a
        return [
            # ray bands: foot of the perpendicular on the boundary ray
            ('affine', c, up, -1j * up, (0., rmax), (0., w), clip),
            ('affine', c, down, 1j * down, (0., rmax), (0., w), clip),
            ('polar', c, (0., w), (-cap, cap), clip),
            ]

    def _describe(self):
        return 'SectorCollar({:g}, {:g})'.format(self.aperture, self.width)


class Union(Region):
    """ Finite union of regions; ``sd`` is the maximum over the parts.

    Inside the union ``sd`` is a lower bound for the distance to the
    boundary (exact when the parts are far apart).
    """
    def __init__(self, *regions):
        super(Union, self).__init__()
        if len(regions) == 0:
            raise ValueError('empty union')
        self.regions = tuple(regions)
        self.bounded = all(r.bounded for r in regions)

    def _sd(self, z):
        d = self.regions[0].sd(z)
        for r in self.regions[1:]:
            d = numpy.maximum(d, r.sd(z))
        return d

    def _bbox(self):
        boxes = numpy.array([r.bbox() for r in self.regions])
        return (
            boxes[:, 0].min(), boxes[:, 1].max(),
            boxes[:, 2].min(), boxes[:, 3].max(),
            )

    def _cells(self, window):
        if self.offset != 0 or self.shift != 0:
            return [_window_cell(window, self.contains)]
        ans = []
        for i, r in enumerate(self.regions):
            earlier = self.regions[:i]
            if earlier:
                def fresh(z, earlier=earlier):
                    keep = numpy.ones(numpy.shape(z), dtype=bool)
                    for e in earlier:
                        keep &= ~e.contains(z)
                    return keep
            else:
                fresh = None
            for cell in r.cells(window=window):
                ans.append(cell[:-1] + (_and(cell[-1], fresh),))
        return ans

    def _describe(self):
        return 'Union(' + ', '.join(r.format() for r in self.regions) + ')'


def unit_strip():
    """ The strip ``S = {|Im(z)| < 1/2}``. """
    return HorizontalStrip(0.5)

def strip_at(tau, delta=0.0):
    """ ``S + i*tau`` shrunk (``delta > 0``) or padded (``delta < 0``) by ``|delta|``. """
    s = unit_strip().translate(1j * float(tau))
    if delta > 0:
        return s.shrink(delta)
    if delta < 0:
        return s.pad(-delta)
    return s

def gap_band(tau_k, tau_k1, eps_k, eps_k1):
    """ Gap ``{tau_k + 1/2 + eps_k < Im(z) < tau_{k+1} - 1/2 - eps_{k+1}}``. """
    return HalfPlaneBand(tau_k + 0.5 + eps_k, tau_k1 - 0.5 - eps_k1)

def transition_set(tau, eps, outer, inner):
    """ ``(S^{-outer*eps} minus S^{-inner*eps}) + i*tau`` for ``outer < inner``.

    Returns the union of the two horizontal bands
    ``1/2 - inner*eps < |Im(z) - tau| < 1/2 - outer*eps``.
    """
    if not 0 <= outer < inner:
        raise ValueError('need 0 <= outer < inner: {} {}'.format(outer, inner))
    lo = 0.5 - inner * eps
    hi = 0.5 - outer * eps
    if not lo > 0:
        raise ValueError('transition set reaches the strip center')
    return Union(
        HalfPlaneBand(tau + lo, tau + hi),
        HalfPlaneBand(tau - hi, tau - lo),
        )

def sector_set(eps, pad=0.0):
    """ ``{|Arg(z)| > pi - eps}`` padded by ``pad``. """
    s = Sector(eps)
    return s.pad(pad) if pad > 0 else s
