""" part of wdlab module: bump, cutoffs, inner maps, model maps and dbar data """

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

import functools

import numpy
import numpy.polynomial.polynomial as _poly
from scipy.integrate import cumulative_simpson
from scipy.interpolate import CubicHermiteSpline
from scipy.special import roots_legendre

from ._numerics import wirtinger_fd, quad_region
from ._geometry import Disk, Annulus, Sector, SectorCollar, transition_set
from ._report import CheckReport

_ORIGINAL_DEFAULTS = dict(
    profile_nodes=4096, bump_nr=16, bump_ntheta=32, fd_step=1e-4,
    )
DEFAULTS = dict(_ORIGINAL_DEFAULTS)

def _set_defaults(clear=False, **defaults):
    """ Set defaults for the cutoffs.

    Recognized keys: ``profile_nodes`` (lattice of the memoized bump
    marginal, 4096), ``bump_nr`` and ``bump_ntheta`` (polar rule over the
    bump support used for 2D convolutions, 16 x 32) and ``fd_step``
    (finite-difference step in units of the mollifier radius, 1e-4).

    Returns:
        A dictionary containing the old defaults.
    """
    old_defaults = dict(DEFAULTS)
    if clear:
        DEFAULTS.clear()
        DEFAULTS.update(_ORIGINAL_DEFAULTS)
    for k in defaults:
        if k not in _ORIGINAL_DEFAULTS:
            raise ValueError('unknown default: ' + str(k))
        DEFAULTS[k] = defaults[k]
    return old_defaults

def _out(x):
    x = numpy.asarray(x)
    return x[()] if x.ndim == 0 else x


@functools.lru_cache(maxsize=None)
def bump_constant(nodes=256):
    """ Normalization ``A`` of the bump, by radial Gauss-Legendre quadrature.

    ``1/A = 2 pi int_0^1 exp(-1/(1 - r**2)) r dr``.
    """
    t, w = roots_legendre(nodes)
    r = (t + 1) / 2.
    w = w / 2.
    with numpy.errstate(divide='ignore', over='ignore'):
        f = numpy.exp(-1. / (1. - r ** 2)) * r
    return float(1. / (2 * numpy.pi * numpy.sum(w * f)))

def bump(z, radius=1.):
    """ Scaled bump ``radius**-2 b(z/radius)`` with ``b(z) = A exp(-1/(1 - |z|**2))``.

    Zero for ``|z| >= radius``; integrates to 1.
    """
    if not radius > 0:
        raise ValueError('bump radius must be positive: ' + str(radius))
    s2 = numpy.abs(numpy.asarray(z, dtype=complex) / radius) ** 2
    inside = s2 < 1
    with numpy.errstate(divide='ignore', over='ignore'):
        b = numpy.where(inside, numpy.exp(-1. / numpy.where(inside, 1. - s2, 1.)), 0.)
    return _out(bump_constant() * b / radius ** 2)

@functools.lru_cache(maxsize=None)
def _bump_rule(nr, ntheta):
    " offsets and weights of a polar rule for the unit bump, weights summing to 1 "
    t, wr = roots_legendre(nr)
    r = (t + 1) / 2.
    wr = wr / 2.
    th = 2 * numpy.pi * (numpy.arange(ntheta) + 0.5) / ntheta
    offsets = (r[None, :] * numpy.exp(1j * th[:, None])).ravel()
    w = (numpy.asarray(bump(r)) * r * wr)[None, :] * numpy.full((ntheta, 1), 2 * numpy.pi / ntheta)
    w = w.ravel()
    return offsets, w / numpy.sum(w)

def convolve_bump(f, z, radius, nr=None, ntheta=None):
    """ ``(f * bump_radius)(z)`` by a fixed polar rule over the bump support.

    Args:
        f: Real function vectorized over complex arrays.
        z (complex or array): Evaluation points.
        radius (float): Bump radius.
        nr, ntheta (int): Radial and angular nodes (defaults 16, 32).
    """
    nr = DEFAULTS['bump_nr'] if nr is None else int(nr)
    ntheta = DEFAULTS['bump_ntheta'] if ntheta is None else int(ntheta)
    offsets, w = _bump_rule(nr, ntheta)
    z = numpy.asarray(z, dtype=complex)
    zz = z.reshape(-1)
    fz = numpy.asarray(f(zz[:, None] - radius * offsets[None, :]), dtype=float)
    return _out((fz @ w).reshape(z.shape))


@functools.lru_cache(maxsize=None)
def _marginal(nodes):
    """ Splines of the bump marginal integrals ``M1`` (CDF) and ``M2`` on ``[-1, 1]``.

    ``m(t) = int b(t + i s) ds``, ``M1' = m`` and ``M2' = M1``.
    """
    t = numpy.linspace(-1., 1., nodes)
    q = 1. - t ** 2
    sig, ws = roots_legendre(64)
    with numpy.errstate(divide='ignore', over='ignore', invalid='ignore'):
        e = numpy.exp(-1. / (q[:, None] * (1. - sig[None, :] ** 2)))
    e[q <= 0] = 0.
    m = bump_constant() * numpy.sqrt(numpy.maximum(q, 0.)) * (e @ ws)
    M1 = cumulative_simpson(m, x=t, initial=0.)
    m = m / M1[-1]
    M1 = M1 / M1[-1]
    M2 = cumulative_simpson(M1, x=t, initial=0.)
    return CubicHermiteSpline(t, M1, m), CubicHermiteSpline(t, M2, M1)

def _ramp1(s, rho, nodes):
    " the step 1_{s > 0} convolved with the marginal of bump_rho "
    M1 = _marginal(nodes)[0]
    s = numpy.asarray(s, dtype=float)
    t = s / rho
    ans = numpy.where(t >= 1, 1., 0.)
    return numpy.where(numpy.abs(t) < 1, M1(numpy.clip(t, -1., 1.)), ans)

def _ramp2(s, rho, nodes):
    " the ramp max(s, 0) convolved with the marginal of bump_rho "
    M2 = _marginal(nodes)[1]
    s = numpy.asarray(s, dtype=float)
    t = s / rho
    ans = numpy.where(t >= 1, s, 0.)
    return numpy.where(numpy.abs(t) < 1, rho * M2(numpy.clip(t, -1., 1.)), ans)

# ramp signs at the breakpoints d1 < d2 < d3 < d4
_SIGNS = (1., -1., -1., 1.)


class StripCutoff(object):
    """ Cutoff ``chi`` of the strip construction.

    In strip ``k`` with local height ``y = Im(z) - tau_k`` the profile is
    ``beta_k(y) = 1`` for ``|y| <= d1``, falls linearly (slope
    ``16/eps_k``) to 0 at ``d2``, stays 0 up to ``d3`` and returns to 1
    at ``d4``, where ``(d1, d2, d3, d4) = 1/2 - (23, 21, 11, 9) eps_k/32``.
    ``chi`` is ``beta_k`` convolved with the bump of radius ``eps_k/32``;
    since ``beta_k`` depends on ``y`` only, the convolution reduces to
    the memoized marginal of the bump. Outside the realized strips
    ``chi = 1``.

    Exact values: ``chi = 1`` off ``(S^{-eps_k/4} minus S^{-3eps_k/4}) + i tau_k``
    and ``chi = 0`` on ``(S^{-3eps_k/8} minus S^{-5eps_k/8}) + i tau_k``.

    Args:
        p (StripParams): Parameters.
        nodes (int): Marginal lattice size (default 4096).

    Attributes:
        kmax (int): Last realized strip (``tau_k`` and ``tau_{k+1}`` finite).
        ymax (float): ``tau_{kmax+1} - 1/2``.
        rho (array): Mollifier radii ``eps_k/32``.
        d (array): Breakpoints, shape ``(K + 2, 4)``.
    """
    kind = 'strip'

    def __init__(self, p, nodes=None):
        self.p = p
        self.nodes = DEFAULTS['profile_nodes'] if nodes is None else int(nodes)
        self.eps = numpy.asarray(p.eps, dtype=float)
        self.tau = numpy.array([float(t) for t in p.tau])
        kmax = -1
        for k in range(p.K + 1):
            if numpy.isfinite(self.tau[k]) and numpy.isfinite(self.tau[k + 1]):
                kmax = k
            else:
                break
        if kmax < 0:
            raise ValueError('tau_0 and tau_1 must be finite floats')
        self.kmax = kmax
        self.ymax = self.tau[kmax + 1] - 0.5
        self.rho = self.eps / 32.
        self.w = self.eps / 16.
        self.d = 0.5 - numpy.outer(self.eps, [23., 21., 11., 9.]) / 32.
        _marginal(self.nodes)

    def beta(self, k, y):
        """ Piecewise-linear profile of strip ``k`` at local height ``y``. """
        s = numpy.abs(numpy.asarray(y, dtype=float))
        acc = 0.
        for sign, dk in zip(_SIGNS, self.d[k]):
            acc = acc + sign * numpy.maximum(s - dk, 0.)
        return _out(numpy.clip(1. - acc / self.w[k], 0., 1.))

    def profile(self, k, y):
        """ ``chi`` of strip ``k`` at local height ``y`` (exact on plateaus). """
        s = numpy.abs(numpy.asarray(y, dtype=float))
        rho, d = self.rho[k], self.d[k]
        acc = 0.
        for sign, dk in zip(_SIGNS, d):
            acc = acc + sign * _ramp2(s - dk, rho, self.nodes)
        chi = numpy.clip(1. - acc / self.w[k], 0., 1.)
        chi = numpy.where((s <= d[0] - rho) | (s >= d[3] + rho), 1., chi)
        chi = numpy.where((s >= d[1] + rho) & (s <= d[2] - rho), 0., chi)
        return _out(chi)

    def dprofile(self, k, y):
        """ ``d chi / dy`` of strip ``k`` in closed form (cross-check). """
        y = numpy.asarray(y, dtype=float)
        s = numpy.abs(y)
        acc = 0.
        for sign, dk in zip(_SIGNS, self.d[k]):
            acc = acc + sign * _ramp1(s - dk, self.rho[k], self.nodes)
        return _out(-numpy.sign(y) * acc / self.w[k])

    def _local(self, z):
        " strip index (-1 outside realized strips) and local height "
        y = numpy.asarray(z, dtype=complex).imag
        idx = numpy.full(y.shape, -1, dtype=int)
        yl = numpy.zeros(y.shape)
        for k in range(self.kmax + 1):
            yk = y - self.tau[k]
            band = numpy.abs(yk) < 0.5
            idx = numpy.where(band, k, idx)
            yl = numpy.where(band, yk, yl)
        return idx, yl

    def __call__(self, z):
        idx, yl = self._local(z)
        chi = numpy.ones(yl.shape)
        for k in range(self.kmax + 1):
            here = idx == k
            if numpy.any(here):
                chi = numpy.where(here, self.profile(k, yl), chi)
        return _out(chi)

    def dzbar(self, z):
        """ ``dbar chi`` by central differences of the profile in local coordinates. """
        z = numpy.asarray(z, dtype=complex)
        idx, yl = self._local(z.reshape(-1))
        ans = numpy.zeros(yl.shape, dtype=complex)
        for k in range(self.kmax + 1):
            here = idx == k
            if numpy.any(here):
                _, dzb = wirtinger_fd(
                    lambda w, k=k: self.profile(k, w.imag), 1j * yl[here],
                    h=DEFAULTS['fd_step'] * self.rho[k],
                    )
                ans[here] = dzb
        return _out(ans.reshape(z.shape))

    def plateau(self, z):
        """ ``True`` where ``chi`` is exactly 1 or 0 by construction. """
        idx, yl = self._local(z)
        s = numpy.abs(yl)
        ans = numpy.ones(yl.shape, dtype=bool)
        for k in range(self.kmax + 1):
            rho, d = self.rho[k], self.d[k]
            flat = (s <= d[0] - rho) | (s >= d[3] + rho) | ((s >= d[1] + rho) & (s <= d[2] - rho))
            ans = numpy.where(idx == k, flat, ans)
        return _out(ans)

    def transition(self, k):
        """ Support of ``grad chi`` in strip ``k``. """
        return transition_set(self.tau[k], self.eps[k], 0.25, 0.75)

    def quad_value(self, z, nodes=16):
        """ ``chi(z)`` by 2D quadrature of ``beta_k * bump`` (single point).

        Returns:
            :class:`wdlab.QuadResult`.
        """
        z = complex(z)
        idx, yl = self._local(z)
        k = int(idx)
        if k < 0:
            # chi = 1 outside the realized strips
            return quad_region(lambda w: bump(w - z), Disk(z, 1.), nodes=nodes)
        rho = self.rho[k]
        zl = z.real + 1j * float(yl)
        return quad_region(
            lambda w: bump(w - zl, rho) * self.beta(k, w.imag),
            Disk(zl, rho), nodes=nodes,
            )

    def scale(self, k):
        return self.rho[k]


class OrderCutoff(object):
    """ Cutoff ``chi = t_0 + sum_n t_n`` of the finite-order construction.

    ``t_n`` (``n >= 1``) convolves the unit bump with the radial profile
    equal to 1 on ``B(z_n, 2 r_n + 1)``, to 0 off ``B(z_n, 3 r_n - 1)``
    and to ``(3 r_n - 1 - |z - z_n|)/(r_n - 2)`` in between. ``t_0``
    convolves the bump of radius 1/4 with the profile of the distance
    ``d`` to the sector ``{|Arg(z)| > pi - eps}``, equal to 1 for
    ``d <= 1/4``, to 0 for ``d >= 3/4`` and linear in between.

    Exact values: ``chi = 1`` on ``2B_n`` and on the sector, ``chi = 0``
    off ``3B_n`` and off the sector padded by 1.

    Args:
        p (OrderParams): Parameters with finite float centers and ``r_n > 2``.
        nr, ntheta (int): Polar rule over the bump support.
    """
    kind = 'order'

    def __init__(self, p, nr=None, ntheta=None):
        self.p = p
        self.eps = p.eps
        self.N = p.N
        zn = numpy.array([p.zf(n) for n in range(1, p.N + 2)])
        rn = numpy.array([p.rf(n) for n in range(1, p.N + 1)])
        if not (numpy.all(numpy.isfinite(zn)) and numpy.all(numpy.isfinite(rn))):
            raise ValueError('disk centers must be finite floats; use a surrogate bundle')
        if numpy.any(rn <= 2):
            raise ValueError('disk profile needs r_n > 2: ' + str(rn))
        self.zn = zn[:p.N]
        self.znext = zn[1:]
        self.rn = rn
        self.sector = Sector(self.eps)
        self.rho_disk = 1.
        self.rho_sector = 0.25
        self.nr = nr
        self.ntheta = ntheta

    def beta_disk(self, n, z):
        r = numpy.abs(numpy.asarray(z, dtype=complex) - self.zn[n - 1])
        rn = self.rn[n - 1]
        return _out(numpy.clip((3 * rn - 1 - r) / (rn - 2), 0., 1.))

    def beta_sector(self, z):
        sd = self.sector.sd(z)
        return _out(numpy.clip((0.75 + sd) / 0.5, 0., 1.))

    def _t(self, z, inner, outer, beta, radius):
        z = numpy.asarray(z, dtype=complex)
        ans = numpy.where(inner, 1., 0.).reshape(-1)
        trans = (~inner & ~outer).reshape(-1)
        if numpy.any(trans):
            ans[trans] = convolve_bump(beta, z.reshape(-1)[trans], radius, self.nr, self.ntheta)
        return ans.reshape(z.shape)

    def t_disk(self, n, z):
        """ ``t_n(z)`` for ``n = 1..N``. """
        z = numpy.asarray(z, dtype=complex)
        r = numpy.abs(z - self.zn[n - 1])
        rn = self.rn[n - 1]
        ans = self._t(
            z, r <= 2 * rn, r >= 3 * rn,
            lambda w: self.beta_disk(n, w), self.rho_disk,
            )
        return _out(ans)

    def t_sector(self, z):
        """ ``t_0(z)``. """
        z = numpy.asarray(z, dtype=complex)
        sd = self.sector.sd(z)
        return _out(self._t(z, sd >= 0, sd <= -1, self.beta_sector, self.rho_sector))

    def __call__(self, z):
        z = numpy.asarray(z, dtype=complex)
        chi = numpy.asarray(self.t_sector(z), dtype=float)
        for n in range(1, self.N + 1):
            chi = chi + self.t_disk(n, z)
        return _out(chi)

    def dzbar(self, z):
        """ ``dbar chi`` by :func:`wdlab.wirtinger_fd`. """
        return wirtinger_fd(self, z, h=DEFAULTS['fd_step'] * self.rho_sector)[1]

    def plateau(self, z):
        """ ``True`` where ``chi`` is exactly 1 or 0 by construction. """
        z = numpy.asarray(z, dtype=complex)
        sd = self.sector.sd(z)
        ans = (sd >= 0) | (sd <= -1)
        for n in range(1, self.N + 1):
            r = numpy.abs(z - self.zn[n - 1])
            rn = self.rn[n - 1]
            ans &= (r <= 2 * rn) | (r >= 3 * rn)
        return _out(ans)

    def transition(self, n):
        """ ``3B_n minus 2B_n`` for ``n >= 1``; the sector collar ``T`` for ``n = 0``. """
        if n == 0:
            return SectorCollar(self.eps, 1.)
        return Annulus(self.zn[n - 1], 2 * self.rn[n - 1], 3 * self.rn[n - 1])

    def scale(self, n):
        return self.rho_sector if n == 0 else self.rho_disk


def chi_eval(c, z):
    """ Evaluate the cutoff ``c`` at ``z``. """
    return c(z)

def grad_chi(c, z):
    """ ``(|grad chi|, dbar chi)`` at ``z``; ``|grad chi| = 2 |dbar chi|`` for real ``chi``. """
    dzb = numpy.asarray(c.dzbar(z))
    return _out(2 * numpy.abs(dzb)), _out(dzb)

def _transition_samples(c, which, npts, rng, xmax=2., rmax=None):
    if c.kind == 'strip':
        k = which
        eps, tau = c.eps[k], c.tau[k]
        s = rng.uniform(0.5 - 0.75 * eps, 0.5 - 0.25 * eps, npts)
        s = s * rng.choice([-1., 1.], npts)
        return rng.uniform(-xmax, xmax, npts) + 1j * (tau + s)
    if which == 0:
        rmax = 4 * c.rn[0] if rmax is None else rmax
        side = rng.choice([-1., 1.], npts)
        u = numpy.exp(1j * side * (numpy.pi - c.eps))
        # foot on a boundary ray plus an outward normal offset below 1
        return rng.uniform(0., rmax, npts) * u + rng.uniform(0., 1., npts) * u * numpy.exp(-1j * side * numpy.pi / 2)
    zn, rn = c.zn[which - 1], c.rn[which - 1]
    r = rng.uniform(2 * rn, 3 * rn, npts)
    th = rng.uniform(-numpy.pi, numpy.pi, npts)
    return zn + r * numpy.exp(1j * th)

def sweep_grad_chi(c, which, npts=2000, seed=0):
    """ Measured ``sup |grad chi|`` over samples of one transition set.

    Args:
        c: :class:`StripCutoff` (``which = k``) or :class:`OrderCutoff`
            (``which = n``, ``0`` for the sector collar).

    Returns:
        Tuple ``(sup, argsup)``.
    """
    rng = numpy.random.default_rng(seed)
    z = _transition_samples(c, which, npts, rng)
    g = numpy.asarray(grad_chi(c, z)[0])
    i = int(numpy.argmax(g))
    return float(g[i]), complex(z[i])

def measure_ctilde(c, npts=2000, seed=0):
    """ ``max(sup_T |grad chi|, max_n z_n sup_{3B_n minus 2B_n} |grad chi|)``. """
    ans = sweep_grad_chi(c, 0, npts, seed)[0]
    for n in range(1, c.N + 1):
        ans = max(ans, c.zn[n - 1] * sweep_grad_chi(c, n, npts, seed)[0])
    return ans

def _smoothness_rows(rep, label, f, y0, y1, h, lip, curv):
    y = numpy.arange(y0, y1, h)
    v = numpy.asarray(f(y))
    jump = float(numpy.max(numpy.abs(numpy.diff(v))))
    d2 = float(numpy.max(numpy.abs(numpy.diff(v, 2))))
    rep.add('chi jumps {}'.format(label), jump, h * lip, '<=', jump <= h * lip, note='spacing {:.3g}'.format(h))
    rep.add('chi second differences {}'.format(label), d2, h ** 2 * curv, '<=', d2 <= h ** 2 * curv)

def verify_cutoff(c, npts=400, nquad=12, seed=0, scale='surrogate'):
    """ Sampled checks of a cutoff: range, exact plateaus, gradient bounds, smoothness.

    Strip cutoffs also compare the marginal reduction with a direct 2D
    quadrature of ``beta_k * bump`` at ``nquad`` transition points.
    Order cutoffs report the measured ``C~``.

    Returns:
        :class:`wdlab.CheckReport`.
    """
    rng = numpy.random.default_rng(seed)
    rep = CheckReport('verify-chi', 'strips' if c.kind == 'strip' else 'order', scale)
    if c.kind == 'strip':
        for k in range(c.kmax + 1):
            eps, tau, rho, d = c.eps[k], c.tau[k], c.rho[k], c.d[k]
            z = _transition_samples(c, k, npts, rng)
            chi = numpy.asarray(c(z))
            rep.add('0 <= chi <= 1 ({})'.format(k), float(chi.min()), float(chi.max()), 'in [0, 1]',
                    chi.min() >= 0 and chi.max() <= 1)
            # plateau values re-derived by quadrature
            s1 = numpy.concatenate([rng.uniform(0, d[0] - rho, npts), rng.uniform(d[3] + rho, 0.5, npts)])
            s0 = rng.uniform(d[1] + rho, d[2] - rho, npts)
            beta = lambda w, k=k: c.beta(k, w.imag)
            e1 = float(numpy.max(numpy.abs(convolve_bump(beta, 1j * s1, rho) - 1.)))
            e0 = float(numpy.max(numpy.abs(convolve_bump(beta, -1j * s0, rho))))
            rep.add('chi = 1 off transition {}'.format(k), e1, 1e-12, '<=', e1 <= 1e-12, note='|convolution - 1|')
            rep.add('chi = 0 on inner band {}'.format(k), e0, 1e-12, '<=', e0 <= 1e-12, note='|convolution|')
            s = rng.uniform(d[0] - rho, d[3] + rho, nquad)
            err = max(
                abs(float(c.quad_value(1j * (tau + si)).value) - float(c.profile(k, si)))
                for si in s
                )
            rep.add('marginal vs 2D convolution {}'.format(k), err, 1e-3, '<=', err <= 1e-3)
            sup = sweep_grad_chi(c, k, npts, seed)[0]
            bound = 16. / eps * 1.01
            rep.add('sup |grad chi| <= 16/eps_{}'.format(k), sup, bound, '<=', sup <= bound, note='1% slack')
            zp = rng.uniform(-2., 2., npts) + 1j * (tau + rng.uniform(-0.5, 0.5, npts))
            zp = zp[numpy.asarray(c.plateau(zp))]
            g = float(numpy.max(numpy.asarray(grad_chi(c, zp)[0]))) if len(zp) else 0.
            rep.add('grad chi = 0 on plateaus {}'.format(k), g, 0., '==', g == 0.)
            curv = float(numpy.max(_marginal(c.nodes)[0](numpy.linspace(-1, 1, 257), 1))) / (rho * c.w[k])
            _smoothness_rows(
                rep, str(k), lambda y: c.profile(k, y), d[0] - 2 * rho, d[3] + 2 * rho,
                rho / 4., 16. / eps * 1.01, curv * 1.05,
                )
        return rep
    zs = _transition_samples(c, 0, npts, rng)
    for n in range(1, c.N + 1):
        zs = numpy.concatenate([zs, _transition_samples(c, n, npts, rng)])
    chi = numpy.asarray(c(zs))
    rep.add('0 <= chi <= 1', float(chi.min()), float(chi.max()), 'in [0, 1]', chi.min() >= 0 and chi.max() <= 1)
    for n in range(1, c.N + 1):
        zn, rn = c.zn[n - 1], c.rn[n - 1]
        zi = zn + rng.uniform(0, 2 * rn, npts) * numpy.exp(1j * rng.uniform(-numpy.pi, numpy.pi, npts))
        e1 = float(numpy.max(numpy.abs(convolve_bump(lambda w: c.beta_disk(n, w), zi, c.rho_disk) - 1.)))
        rep.add('chi = 1 on 2B_{}'.format(n), e1, 1e-12, '<=', e1 <= 1e-12, note='|convolution - 1|')
        sup = sweep_grad_chi(c, n, npts, seed)[0]
        bound = 1.01 / (rn - 2)
        rep.add('sup |grad chi| <= 1/(r_{} - 2)'.format(n), sup, bound, '<=', sup <= bound, note='1% slack')
        rep.add('C~ estimate {}'.format(n), sup * zn, '', '', None, note='z_n sup |grad chi| on 3B_n minus 2B_n')
        _smoothness_rows(
            rep, 'B_' + str(n), lambda x: c(zn + x), 2 * rn - 1, 3 * rn + 1, 0.05,
            1.01 / (rn - 2), 4. / (rn - 2),
            )
    sup = sweep_grad_chi(c, 0, npts, seed)[0]
    rep.add('sup |grad chi| <= 2 on T', sup, 2.02, '<=', sup <= 2.02, note='1% slack')
    rep.add('C~ estimate 0', sup, '', '', None, note='sup |grad chi| on the sector collar')
    R = 4 * c.zn[-1]
    zo = rng.uniform(-R, R, 4 * npts) + 1j * rng.uniform(-R, R, 4 * npts)
    keep = numpy.asarray(c.sector.sd(zo)) <= -1
    for n in range(1, c.N + 1):
        keep &= numpy.abs(zo - c.zn[n - 1]) >= 3 * c.rn[n - 1]
    zo = zo[keep]
    v = float(numpy.max(numpy.abs(numpy.asarray(c(zo))))) if len(zo) else 0.
    rep.add('chi = 0 off 3B_n and padded sector', v, 0., '==', v == 0.)
    return rep


class InnerMapFamily(object):
    """ Inner maps ``h_k`` (``k >= 1``) of the strip construction.

    Variants:

        ``'identity'``: ``h_k(z) = z``.

        ``'constant'``: ``h_k(z) = i (1/2 - 3 eps_{k+1})``.

        ``'alternating'``: ``i (1/2 - 3 eps_k)`` for odd ``k``, 0 for even ``k``.

        ``'zero'``: ``h_k(z) = 0``.

        ``'custom'``: polynomial with ``coefficients`` (lowest order
        first; one array for all ``k`` or a list indexed by ``k``).

    ``h_0`` is not part of the family: the model map fixes it to
    ``i (tau_0 - tau_1)``.

    Args:
        variant (str): Variant name.
        eps (array): Widths ``eps_0 .. eps_{K+1}``.
        coefficients: Custom polynomial coefficients.
        nb (list or None): Bounds ``(n_k, b_k)``.
    """
    VARIANTS = ('identity', 'constant', 'alternating', 'zero', 'custom')

    def __init__(self, variant, eps, coefficients=None, nb=None):
        if variant not in self.VARIANTS:
            raise ValueError('unknown inner-map family: ' + str(variant))
        if variant == 'custom':
            if coefficients is None:
                raise ValueError('custom family needs coefficients')
            if nb is None:
                raise ValueError('custom family needs explicit (n_k, b_k)')
        self.variant = variant
        self.eps = numpy.asarray(eps, dtype=float)
        self.coefficients = coefficients
        self.nb = nb

    def _coef(self, k):
        c = self.coefficients
        if len(c) > 0 and numpy.ndim(c[0]) > 0:
            return numpy.asarray(c[k], dtype=complex)
        return numpy.asarray(c, dtype=complex)

    def __call__(self, k, z):
        if k < 1:
            raise ValueError('h_0 is fixed by the heights; need k >= 1')
        z = numpy.asarray(z, dtype=complex)
        if self.variant == 'identity':
            return _out(z.copy())
        if self.variant == 'custom':
            return _out(_poly.polyval(z, self._coef(k)))
        if self.variant == 'constant':
            c = 1j * (0.5 - 3 * self.eps[k + 1])
        elif self.variant == 'alternating':
            c = 1j * (0.5 - 3 * self.eps[k]) if k % 2 == 1 else 0j
        else:
            c = 0j
        return _out(numpy.full(z.shape, c, dtype=complex))

    def bound(self, k):
        """ ``(n_k, b_k)`` with ``|h_k(z)| <= |z|**n_k + b_k``. """
        if self.nb is not None:
            return self.nb[k]
        from ._params import FAMILY_BOUNDS
        return FAMILY_BOUNDS[self.variant]

    def format(self):
        return 'InnerMapFamily({})'.format(self.variant)

    def __str__(self):
        return self.format()

def inner_map_family(p, coefficients=None):
    """ :class:`InnerMapFamily` named by ``p.family``. """
    return InnerMapFamily(p.family, p.eps, coefficients=coefficients, nb=p.nb)

def check_family(family, kmax, nsamples=100, xmax=2., seed=0, scale='faithful'):
    """ Sampled inclusion ``h_k(S^{-eps_k}) in S^{-2 eps_{k+1}}`` and growth bound, ``k = 1..kmax``. """
    rng = numpy.random.default_rng(seed)
    rep = CheckReport('inner-maps', 'strips', scale)
    eps = family.eps
    for k in range(1, kmax + 1):
        z = rng.uniform(-xmax, xmax, nsamples) + 1j * rng.uniform(-0.5 + eps[k], 0.5 - eps[k], nsamples)
        im = numpy.abs(numpy.asarray(family(k, z)).imag)
        lim = 0.5 - 2 * eps[k + 1]
        rep.add(
            'h_{0}(S^-eps_{0}) in S^-2eps_{1}'.format(k, k + 1), float(im.max()), lim, '<',
            im.max() < lim, note='max |Im h_{}| over {} samples'.format(k, nsamples),
            )
        n, b = family.bound(k)
        zs = rng.uniform(-10 * xmax, 10 * xmax, nsamples) + 1j * rng.uniform(-0.5, 0.5, nsamples)
        excess = float(numpy.max(numpy.abs(family(k, zs)) - (numpy.abs(zs) ** n + b)))
        rep.add(
            '|h_{}(z)| <= |z|^n + b'.format(k), excess, 0., '<=', excess <= 0,
            note='(n, b) = ({}, {:g}); max excess on S'.format(n, b),
            )
    return rep


class StripModel(object):
    """ Model map ``h`` and dbar data ``g`` of the strip construction.

    ``H_k(z) = h_k(z - i tau_k) + i tau_{k+1}`` with ``H_0 = i tau_0``,
    and

        ``h = chi H_k`` on ``S^{-5 eps_k/8} + i tau_k``;

        ``h = 0`` where ``chi = 0``;

        ``h = chi i tau_0`` otherwise.

    ``g = dbar h = (dbar chi) H_k`` on the lower transition sets and
    ``(dbar chi) i tau_0`` on the upper ones.

    Args:
        p (StripParams): Parameters.
        family (InnerMapFamily or None): Default from ``p.family``.
        coefficients: Custom-family coefficients.
    """
    kind = 'strip'

    def __init__(self, p, family=None, coefficients=None, nodes=None):
        self.p = p
        self.family = inner_map_family(p, coefficients) if family is None else family
        self.cutoff = StripCutoff(p, nodes=nodes)
        self.eps = self.cutoff.eps
        self.tau = self.cutoff.tau
        self.kmax = self.cutoff.kmax
        self.ymax = self.cutoff.ymax

    def local_map(self, k, z):
        """ ``H_k(z)``. """
        z = numpy.asarray(z, dtype=complex)
        if k == 0:
            # h_0(z - i tau_0) + i tau_1 with h_0 = i (tau_0 - tau_1)
            return _out(numpy.full(z.shape, 1j * self.tau[0]))
        return _out(numpy.asarray(self.family(k, z - 1j * self.tau[k])) + 1j * self.tau[k + 1])

    def _factor(self, z):
        " H_k on the inner part of strip k, i tau_0 elsewhere "
        z = numpy.asarray(z, dtype=complex)
        if numpy.any(z.imag > self.ymax):
            raise ValueError('model needs Im(z) <= tau_{kmax+1} - 1/2 = ' + str(self.ymax))
        ans = numpy.full(z.shape, 1j * self.tau[0])
        for k in range(self.kmax + 1):
            inner = numpy.abs(z.imag - self.tau[k]) < 0.5 - 5 * self.eps[k] / 8.
            if numpy.any(inner):
                ans = numpy.where(inner, self.local_map(k, z), ans)
        return ans

    def h(self, z):
        """ Model map ``h(z)`` (three-branch form). """
        chi = numpy.asarray(self.cutoff(z))
        ans = chi * self._factor(z)
        return _out(numpy.where(chi == 0, 0j, ans))

    def g(self, z):
        """ ``g(z) = dbar h(z)``; exactly 0 on cutoff plateaus. """
        z = numpy.asarray(z, dtype=complex)
        ans = numpy.asarray(self.cutoff.dzbar(z)) * self._factor(z)
        return _out(numpy.where(self.cutoff.plateau(z), 0j, ans))

    def components(self):
        """ Support components of ``g``: ``(k, label, region)`` per realized strip. """
        ans = []
        for k in range(self.kmax + 1):
            tau, eps = self.tau[k], self.eps[k]
            ans.append((k, 'lower', transition_set(tau, eps, 5. / 8., 3. / 4.)))
            ans.append((k, 'upper', transition_set(tau, eps, 1. / 4., 3. / 8.)))
        return ans

    def format(self):
        return 'StripModel(kmax={}, family={})'.format(self.kmax, self.family.variant)


def model_h_order(p, z):
    """ ``h(z) = z_{n+1}`` on ``3B_n``, ``z_1`` on the sector padded by 1, else 0.

    Raises:
        RuntimeError: If a point lies in two branch domains.
    """
    z = numpy.asarray(z, dtype=complex)
    ans = numpy.zeros(z.shape, dtype=complex)
    count = numpy.zeros(z.shape, dtype=int)
    sector = Sector(p.eps).pad(1.)
    where = numpy.asarray(sector.contains(z))
    ans = numpy.where(where, p.zf(1), ans)
    count += where
    for n in range(1, p.N + 1):
        where = numpy.abs(z - p.zf(n)) < 3 * p.rf(n)
        ans = numpy.where(where, p.zf(n + 1), ans)
        count += where
    if numpy.any(count > 1):
        bad = z[count > 1].ravel()[0]
        raise RuntimeError('branch domains of h overlap at ' + str(bad))
    return _out(ans)

def model_h_strip(p, family, z):
    """ Strip model map for parameters ``p`` and inner-map ``family``. """
    return StripModel(p, family=family).h(z)


class OrderModel(object):
    """ Model ``chi h`` and dbar data ``g = (dbar chi) h`` of the finite-order construction.

    Args:
        p (OrderParams): Parameters (finite float centers).
    """
    kind = 'order'

    def __init__(self, p, nr=None, ntheta=None):
        self.p = p
        self.cutoff = OrderCutoff(p, nr=nr, ntheta=ntheta)
        self.N = p.N

    def h_raw(self, z):
        return model_h_order(self.p, z)

    def h(self, z):
        """ ``chi(z) h(z)``. """
        return _out(numpy.asarray(self.cutoff(z)) * numpy.asarray(self.h_raw(z)))

    def g(self, z):
        z = numpy.asarray(z, dtype=complex)
        ans = numpy.asarray(self.cutoff.dzbar(z)) * numpy.asarray(self.h_raw(z))
        return _out(numpy.where(self.cutoff.plateau(z), 0j, ans))

    def components(self):
        """ Support components ``(n, label, region)``; the collar ``T`` is unbounded. """
        ans = [(0, 'collar', self.cutoff.transition(0))]
        for n in range(1, self.N + 1):
            ans.append((n, 'annulus', self.cutoff.transition(n)))
        return ans

    def format(self):
        return 'OrderModel(N={})'.format(self.N)


def g_eval(model, z):
    """ ``g(z)`` for a :class:`StripModel` or :class:`OrderModel`. """
    return model.g(z)

def verify_model(model, nsamples=100, ng=10000, xmax=2., seed=0, scale='surrogate'):
    """ Sampled checks of the model map and of the support of ``g``.

    Strip models: ``h`` maps ``S^{-eps_k} + i tau_k`` into
    ``S^{-2 eps_{k+1}} + i tau_{k+1}``, the family inclusion holds, and
    ``|g| <= (16/eps_k) (sup |H_k|)`` near strip ``k``. Both models: ``g``
    vanishes off its quoted support at ``ng`` samples.

    Returns:
        :class:`wdlab.CheckReport`.
    """
    rng = numpy.random.default_rng(seed)
    if model.kind == 'strip':
        rep = CheckReport('verify-model', 'strips', scale)
        rep.extend(check_family(model.family, model.kmax, nsamples, xmax, seed, scale))
        eps, tau = model.eps, model.tau
        for k in range(model.kmax + 1):
            z = rng.uniform(-xmax, xmax, nsamples) + 1j * (tau[k] + rng.uniform(-0.5 + eps[k], 0.5 - eps[k], nsamples))
            hz = numpy.asarray(model.h(z))
            if k == 0:
                dev = float(numpy.max(numpy.abs(hz - 1j * tau[0])))
                rep.add('h = i tau_0 on S^-eps_0 + i tau_0', dev, 0., '==', dev == 0.)
            else:
                lim = 0.5 - 2 * eps[k + 1]
                dev = float(numpy.max(numpy.abs(hz.imag - tau[k + 1])))
                rep.add(
                    'h(S^-eps_{0} + i tau_{0}) in S^-2eps_{1} + i tau_{1}'.format(k, k + 1),
                    dev, lim, '<', dev < lim,
                    )
            zt = rng.uniform(-xmax, xmax, nsamples) + 1j * (tau[k] + rng.uniform(0.5 - 0.75 * eps[k], 0.5 - 0.25 * eps[k], nsamples))
            gz = numpy.abs(numpy.asarray(model.g(zt)))
            Hs = numpy.max(numpy.abs(numpy.concatenate([
                numpy.atleast_1d(model.local_map(k, zt)), [1j * tau[0]]
                ])))
            bound = 16. / eps[k] * 1.01 / 2. * Hs
            rep.add(
                '|g| <= (16/eps_{0}) sup|H_{0}| upper edge'.format(k), float(gz.max()), bound, '<=',
                gz.max() <= bound, note='|dbar chi| = |grad chi|/2',
                )
        zs = rng.uniform(-xmax, xmax, ng) + 1j * rng.uniform(tau[0] - 1., model.ymax, ng)
        inside = numpy.zeros(ng, dtype=bool)
        for _, _, region in model.components():
            inside |= numpy.asarray(region.contains(zs))
        off = zs[~inside]
        gmax = float(numpy.max(numpy.abs(numpy.asarray(model.g(off))))) if len(off) else 0.
        rep.add('g = 0 off its support', gmax, 0., '==', gmax == 0., note='{} samples'.format(len(off)))
        return rep
    rep = CheckReport('verify-model', 'order', scale)
    p = model.p
    for n in range(1, model.N + 1):
        zn = p.zf(n)
        z = zn + 3 * p.rf(n) * numpy.sqrt(rng.uniform(0, 1, nsamples)) * numpy.exp(1j * rng.uniform(-numpy.pi, numpy.pi, nsamples))
        dev = float(numpy.max(numpy.abs(numpy.asarray(model.h_raw(z)) - p.zf(n + 1))))
        rep.add('h = z_{} on 3B_{}'.format(n + 1, n), dev, 0., '==', dev == 0.)
    z = -p.zf(1) * rng.uniform(1., 3., nsamples)
    dev = float(numpy.max(numpy.abs(numpy.asarray(model.h_raw(z)) - p.zf(1))))
    rep.add('h = z_1 on padded sector', dev, 0., '==', dev == 0.)
    R = 4 * p.zf(model.N)
    zs = (rng.uniform(-R, R, ng) + 1j * rng.uniform(-R, R, ng))
    inside = numpy.zeros(ng, dtype=bool)
    for _, _, region in model.components():
        inside |= numpy.asarray(region.contains(zs))
    off = zs[~inside]
    gmax = float(numpy.max(numpy.abs(numpy.asarray(model.g(off))))) if len(off) else 0.
    rep.add('g = 0 off its support', gmax, 0., '==', gmax == 0., note='{} samples'.format(len(off)))
    return rep

convolve_bump.set = _set_defaults
chi_eval.set = _set_defaults
