""" part of wdlab module: subharmonic weights and sub-mean-value checks """

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

import warnings

import numpy
import scipy.fft

from ._numerics import AccuracyWarning
from ._report import CheckReport

_ORIGINAL_DEFAULTS = dict(
    poisson_nodes=2048, poisson_tol=1e-8, poisson_maxnodes=2 ** 16,
    floor=-1e9, kappa=10., submean_floor=1e-9,
    )
DEFAULTS = dict(_ORIGINAL_DEFAULTS)

def _set_defaults(clear=False, **defaults):
    """ Set defaults for :func:`poisson_disk`, :class:`PowerWeight` and :func:`submean_check`.

    Recognized keys: ``poisson_nodes`` (initial boundary nodes, 2048),
    ``poisson_tol`` (agreement between successive doublings, 1e-8),
    ``poisson_maxnodes`` (cap, ``2**16``), ``floor`` (clamp for the
    logarithmic singularity at puddle centers, scaled by
    ``max(1, |z_n|**alpha)``), ``kappa`` (sub-mean tolerance factor, 10)
    and ``submean_floor`` (absolute sub-mean tolerance, 1e-9).

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

def _fmtz(z):
    return '{:.6g}{:+.6g}j'.format(z.real, z.imag)

def _out(x):
    x = numpy.asarray(x)
    return float(x) if x.ndim == 0 else x

def v_strip(eps, z):
    """ ``cosh(pi x/eps) cos(pi y/eps)`` for ``|y| < eps/2``, else 0.

    Overflow in ``cosh`` gives ``+inf``; :func:`v_strip_log` returns the
    logarithm without overflow.
    """
    if not 0 < eps < 1:
        raise ValueError('eps must be in (0, 1): ' + str(eps))
    z = numpy.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    inside = numpy.abs(y) < eps / 2.
    with numpy.errstate(over='ignore', invalid='ignore'):
        v = numpy.cosh(numpy.pi / eps * x) * numpy.cos(numpy.pi / eps * y)
    return _out(numpy.where(inside, numpy.maximum(v, 0.), 0.))

def v_strip_log(eps, z):
    """ ``ln(v_strip(eps, z))``; ``-inf`` where it vanishes. """
    z = numpy.asarray(z, dtype=complex)
    x, y = z.real, z.imag
    t = numpy.abs(numpy.pi / eps * x)
    lcosh = t + numpy.log1p(numpy.exp(-2 * t)) - numpy.log(2.)
    c = numpy.cos(numpy.pi / eps * y)
    inside = (numpy.abs(y) < eps / 2.) & (c > 0)
    with numpy.errstate(divide='ignore', invalid='ignore'):
        ans = numpy.where(inside, lcosh + numpy.log(numpy.where(inside, c, 1.)), -numpy.inf)
    return _out(ans)


class StripWeight(object):
    """ Subharmonic weight ``u = u~_0 + sum_{k>=1} a_k u_k`` of the strip construction.

    With ``omega_k = (1 - eps_k)/2``,
    ``u_k(z) = v_{eps_k}(z - i(tau_k - omega_k)) + v_{eps_k}(z - i(tau_k + omega_k))``
    lives on the two edge bands of ``S + i tau_k`` of width ``eps_k``, and

        ``u~_0 = 0`` for ``Im(z) <= tau_0 - 1/2``;

        ``u~_0 = max(0, a_0 u_0 - 8 log|z|)`` for ``0 < Im(z) - tau_0 + 1/2 < eps_0/4``;

        ``u~_0 = a_0 u_0 - 8 log|z|`` otherwise.

    Only strips whose height and weight are finite floats are realized.

    Args:
        p (StripParams): Parameters.

    Attributes:
        kmax (int): Last strip realized.
        ymax (float): Largest admissible ``Im(z)``, ``tau_{K+1} - 1/2``.
    """
    def __init__(self, p):
        self.p = p
        self.K = p.K
        self.eps = numpy.asarray(p.eps, dtype=float)
        self.tau = numpy.array([float(t) for t in p.tau])
        self.a = numpy.array([float(a) for a in p.a])
        self.omega = (1. - self.eps) / 2.
        kmax = -1
        for k in range(self.K + 1):
            if numpy.isfinite(self.tau[k]) and numpy.isfinite(self.a[k]):
                kmax = k
            else:
                break
        if kmax < 0:
            raise ValueError('tau_0 and a_0 must be finite floats')
        self.kmax = kmax
        self.ymax = self.tau[self.K + 1] - 0.5

    def uk(self, k, z):
        """ ``u_k(z)``. """
        eps = self.eps[k]
        z = numpy.asarray(z, dtype=complex)
        lo = v_strip(eps, z - 1j * (self.tau[k] - self.omega[k]))
        hi = v_strip(eps, z - 1j * (self.tau[k] + self.omega[k]))
        return _out(numpy.asarray(lo) + numpy.asarray(hi))

    def __call__(self, z):
        z = numpy.asarray(z, dtype=complex)
        y = z.imag
        if numpy.any(y > self.ymax):
            raise ValueError('weight needs Im(z) <= tau_{K+1} - 1/2 = ' + str(self.ymax))
        with numpy.errstate(over='ignore', divide='ignore', invalid='ignore'):
            lz = -8. * numpy.log(numpy.abs(z))
            t0 = self.a[0] * numpy.asarray(self.uk(0, z)) + lz
            s = y - self.tau[0] + 0.5
            u = numpy.where(
                s <= 0, 0.,
                numpy.where(s < self.eps[0] / 4., numpy.maximum(0., t0), t0),
                )
            for k in range(1, self.kmax + 1):
                band = numpy.abs(y - self.tau[k]) < 0.5
                if numpy.any(band):
                    u = u + numpy.where(band, self.a[k] * numpy.asarray(self.uk(k, z)), 0.)
        return _out(u)

    def in_support(self, z):
        """ ``True`` where ``z`` lies in some ``(S minus S^{-eps_k}) + i tau_k``. """
        y = numpy.asarray(z, dtype=complex).imag
        ans = numpy.zeros(y.shape, dtype=bool)
        for k in range(self.kmax + 1):
            d = numpy.abs(y - self.tau[k])
            ans |= (d < 0.5) & (d >= 0.5 - self.eps[k])
        return ans

def u_strip_eval(w, z):
    """ Evaluate the strip weight ``w`` at ``z``. """
    return w(z)

def verify_strip_weight(w, n=200, nsamples=500, xmax=2., seed=0, scale='faithful'):
    """ Sampled check of the three strip-weight properties.

    (1) ``u(z) <= 2 a_k exp(pi/eps_k |Re z|)`` for ``Im(z) <= tau_{k+1} - 1/2``,
    on an ``n x n`` grid over ``[-xmax, xmax] x [0, tau_{k+1} - 1/2]``
    (compared as logarithms where ``u > 0``).

    (2i) ``u(z) >= a_k/3 exp(pi/eps_k |Re z|) - 8 log|z|`` on ``nsamples``
    random points of ``(S^{-eps_k/4} minus S^{-3 eps_k/4}) + i tau_k`` with
    ``Im(z) > tau_0 - 1/2 + eps_0/4``.

    (2ii) ``u(z) = -8 log|z|`` (to ``1e-12``) off the supports of all ``u_k``,
    above ``tau_0 - 1/2 + eps_0/4``.

    Also checks ``exp(x)/2 < cosh(x) <= 2 exp(x)`` on ``(0, 100]`` in log form.

    Returns:
        :class:`wdlab.CheckReport`.
    """
    rep = CheckReport('verify-weights', 'strips', scale)
    rng = numpy.random.default_rng(seed)
    eps, tau, a = w.eps, w.tau, w.a
    for k in range(w.kmax + 1):
        ytop = tau[k + 1] - 0.5
        if not numpy.isfinite(ytop):
            break
        x = numpy.linspace(-xmax, xmax, n)
        y = numpy.linspace(0., ytop, n)
        z = x[None, :] + 1j * y[:, None]
        u = numpy.asarray(w(z))
        with numpy.errstate(divide='ignore', invalid='ignore'):
            lu = numpy.log(numpy.where(u > 0, u, 1.))
        rhs = numpy.log(2 * a[k]) + numpy.pi / eps[k] * numpy.abs(z.real)
        excess = numpy.where(u > 0, lu - rhs, -numpy.inf)
        i = numpy.unravel_index(numpy.argmax(excess), excess.shape)
        worst = excess[i]
        rep.add(
            'u <= 2 a_{0} exp(pi/eps_{0} |Re z|) below tau_{1} - 1/2'.format(k, k + 1),
            worst if numpy.isfinite(worst) else 'u <= 0', 0., '<=', worst <= 0,
            note='log margin on {}x{} grid; worst at z = {}'.format(n, n, _fmtz(z[i])),
            )
    ylo = tau[0] - 0.5 + eps[0] / 4.
    for k in range(w.kmax + 1):
        s = rng.uniform(eps[k] / 4., 3. * eps[k] / 4., nsamples)
        side = rng.integers(0, 2, nsamples)
        x = rng.uniform(-xmax, xmax, nsamples)
        y = numpy.where(side == 1, tau[k] + 0.5 - s, tau[k] - 0.5 + s)
        keep = (y > ylo) & (y <= w.ymax)
        z = x[keep] + 1j * y[keep]
        if len(z) == 0:
            continue
        u = numpy.asarray(w(z))
        rhs = a[k] / 3. * numpy.exp(numpy.pi / eps[k] * numpy.abs(z.real)) - 8 * numpy.log(numpy.abs(z))
        margin = u - rhs
        i = int(numpy.argmin(margin))
        rep.add(
            'u >= a_{0}/3 exp(pi/eps_{0} |Re z|) - 8 log|z| on transition bands {0}'.format(k),
            margin[i], 0., '>=', margin[i] >= 0,
            note='{} samples; worst at z = {}'.format(len(z), _fmtz(z[i])),
            )
    if numpy.isfinite(w.ymax) and w.ymax > ylo:
        x = rng.uniform(-xmax, xmax, 4 * nsamples)
        y = rng.uniform(ylo, w.ymax, 4 * nsamples)
        z = x + 1j * y
        z = z[(y > ylo) & ~w.in_support(z)][:nsamples]
        u = numpy.asarray(w(z))
        target = -8. * numpy.log(numpy.abs(z))
        err = numpy.abs(u - target) / numpy.maximum(1., numpy.abs(target))
        i = int(numpy.argmax(err))
        rep.add(
            'u = -8 log|z| off the supports', err[i], 1e-12, '<=', err[i] <= 1e-12,
            note='{} samples; worst at z = {}'.format(len(z), _fmtz(z[i])),
            )
    x = numpy.linspace(0., 100., 1001)[1:]
    gap = numpy.log1p(numpy.exp(-2 * x))
    rep.add('exp(x)/2 < cosh(x)', gap.min(), 0., '>', numpy.all(gap > 0), note='ln cosh(x) - (x - ln 2) on (0, 100]')
    upper = 2 * numpy.log(2.) - gap
    rep.add('cosh(x) <= 2 exp(x)', upper.min(), 0., '>=', numpy.all(upper >= 0), note='ln(2 e^x) - ln cosh(x) on (0, 100]')
    return rep


def v_power(p, z):
    """ ``|z|**alpha cos(beta Arg(z))`` with ``alpha = 1/2 + eps``, ``beta = 1/2 + eps/(4 pi - 2 eps)``. """
    z = numpy.asarray(z, dtype=complex)
    if numpy.any(z == 0):
        raise ValueError('v_power is not defined at z = 0')
    return _out(numpy.abs(z) ** p.alpha * numpy.cos(p.beta * numpy.angle(z)))

def _poisson_sum(g, w, M):
    " trapezoid Poisson integral with the nearest boundary value subtracted "
    zeta = numpy.exp(2j * numpy.pi * numpy.arange(M) / M)
    gz = numpy.asarray(g(zeta), dtype=float)
    rho = numpy.abs(w)
    unit = numpy.where(rho > 0, w / numpy.where(rho > 0, rho, 1.), 1.)
    g0 = numpy.asarray(g(unit), dtype=float) * numpy.ones(w.shape)
    ans = numpy.empty(w.shape, dtype=float)
    chunk = max(1, 2 ** 22 // M)
    for i in range(0, len(w), chunk):
        wi = w[i:i + chunk, None]
        P = (1. - numpy.abs(wi) ** 2) / numpy.abs(zeta[None, :] - wi) ** 2
        ans[i:i + chunk] = g0[i:i + chunk] + numpy.mean(P * (gz[None, :] - g0[i:i + chunk, None]), axis=1)
    return ans

def poisson_disk(g, w, nodes=None):
    """ Poisson integral of boundary data ``g`` at points ``w`` of the unit disk.

    ``g`` is either a vectorized function on the unit circle or an array of
    samples at ``exp(2 pi i j/M)``. For a function the number of boundary
    nodes starts at ``nodes`` (default 2048) and doubles until two successive
    values agree to ``1e-8`` (relative to ``max(1, |value|)``), up to ``2**16``
    nodes; an :class:`wdlab.AccuracyWarning` is issued at the cap. The
    boundary value nearest ``w`` is subtracted before summing, which keeps
    the trapezoid rule accurate close to the circle.

    Raises:
        ValueError: If some ``|w| >= 1``.
    """
    w = numpy.asarray(w, dtype=complex)
    shape = w.shape
    w = w.reshape(-1)
    if numpy.any(numpy.abs(w) >= 1.):
        raise ValueError('poisson_disk needs |w| < 1')
    if not callable(g):
        samples = numpy.asarray(g, dtype=float)
        M = len(samples)
        if M < 1 or not numpy.all(numpy.isfinite(samples)):
            raise ValueError('boundary samples must be finite')

        def g(zeta):
            j = numpy.round(numpy.angle(zeta) / (2 * numpy.pi) * M).astype(int) % M
            return samples[j]
        return _out(_poisson_sum(g, w, M).reshape(shape))
    M = DEFAULTS['poisson_nodes'] if nodes is None else int(nodes)
    maxM = DEFAULTS['poisson_maxnodes']
    tol = DEFAULTS['poisson_tol']
    ans = _poisson_sum(g, w, M)
    todo = numpy.arange(len(w))
    while len(todo) > 0:
        if 2 * M > maxM:
            warnings.warn(
                'Poisson integral unconverged at {} nodes for {} points'.format(M, len(todo)),
                AccuracyWarning,
                )
            break
        M *= 2
        new = _poisson_sum(g, w[todo], M)
        done = numpy.abs(new - ans[todo]) <= tol * numpy.maximum(1., numpy.abs(new))
        ans[todo] = new
        todo = todo[~done]
    return _out(ans.reshape(shape))

poisson_disk.DEFAULTS = DEFAULTS
poisson_disk.set = _set_defaults


class PowerWeight(object):
    """ Subharmonic weight of the finite-order construction.

    ``u = v`` off the disks ``B_n = B(z_n, r_n)`` and, inside ``B_n``,
    ``u(z) = P_D(v_n)((z - z_n)/r_n) + A_n log(|z - z_n|/r_n)`` where
    ``v_n(w) = v(r_n w + z_n)`` and ``P_D`` is :func:`poisson_disk`.
    Values below ``DEFAULTS['floor'] * max(1, |z_n|**alpha)`` are clamped
    there (``u(z_n) = -inf``).

    Needs surrogate-scale parameters: ``z_n``, ``r_n`` and ``A_n`` must be
    finite floats for every realized ``n``.
    """
    def __init__(self, p, nodes=None):
        self.p = p
        self.N = p.N
        self.nodes = nodes
        self.zn = numpy.array([p.zf(n) for n in range(1, p.N + 1)])
        self.rn = numpy.array([p.rf(n) for n in range(1, p.N + 1)])
        self.An = numpy.array([p.Af(n) for n in range(1, p.N + 1)])
        if not (numpy.all(numpy.isfinite(self.zn)) and numpy.all(numpy.isfinite(self.An))):
            raise ValueError('PowerWeight needs surrogate-scale params (finite z_n, A_n)')

    def v(self, z):
        return v_power(self.p, z)

    def floor(self, n):
        """ Clamp value for puddle ``n`` (1-based). """
        return DEFAULTS['floor'] * max(1., self.zn[n - 1] ** self.p.alpha)

    def puddle(self, n, z):
        """ Puddle branch for ``B_n`` at ``z`` in the closed disk (``v`` on the circle). """
        zn, rn, An = self.zn[n - 1], self.rn[n - 1], self.An[n - 1]
        z = numpy.asarray(z, dtype=complex)
        shape = z.shape
        z = z.reshape(-1)
        w = (z - zn) / rn
        rho = numpy.abs(w)
        if numpy.any(rho > 1.):
            raise ValueError('puddle branch needs z in the closed disk B_{}'.format(n))
        val = numpy.array(self.v(z), dtype=float).reshape(-1)
        inside = rho < 1.
        if numpy.any(inside):
            def boundary(zeta):
                return v_power(self.p, rn * zeta + zn)
            val[inside] = numpy.asarray(poisson_disk(boundary, w[inside], nodes=self.nodes)).reshape(-1)
        with numpy.errstate(divide='ignore'):
            val = val + An * numpy.log(rho)
        return _out(numpy.maximum(val, self.floor(n)).reshape(shape))

    def __call__(self, z):
        z = numpy.asarray(z, dtype=complex)
        shape = z.shape
        z = z.reshape(-1)
        if numpy.any(z == 0):
            raise ValueError('power weight is not defined at z = 0')
        u = numpy.array(self.v(z), dtype=float).reshape(-1)
        for n in range(1, self.N + 1):
            inside = numpy.abs(z - self.zn[n - 1]) < self.rn[n - 1]
            if numpy.any(inside):
                u[inside] = numpy.asarray(self.puddle(n, z[inside])).reshape(-1)
        return _out(u.reshape(shape))

    def in_puddles(self, z):
        z = numpy.asarray(z, dtype=complex)
        ans = numpy.zeros(z.shape, dtype=bool)
        for n in range(self.N):
            ans |= numpy.abs(z - self.zn[n]) < self.rn[n]
        return ans

    def seam_mask(self, z, spacing, nspacing=2):
        """ ``True`` within ``nspacing`` grid spacings of a puddle center. """
        z = numpy.asarray(z, dtype=complex)
        ans = numpy.zeros(z.shape, dtype=bool)
        for zn in self.zn:
            ans |= numpy.abs(z - zn) <= nspacing * spacing
        return ans

def u_power_eval(w, z):
    """ Evaluate the power weight ``w`` at ``z``. """
    return w(z)

def gluing_margin(w, n=1, nodes=4096):
    """ ``dG/dr - A_n`` around the circle ``dB_n`` (``nodes`` equispaced points).

    ``dG/dr(xi) = r_n dv/dn(z_n + r_n xi) - DtN[v_n](xi)``, where the
    Dirichlet-to-Neumann map of the disk multiplies the ``m``-th Fourier
    coefficient of the boundary data by ``|m|`` (computed with
    :mod:`scipy.fft`). The weight is subharmonic across ``dB_n`` where the
    margin is nonnegative.
    """
    p = w.p
    zn, rn, An = w.zn[n - 1], w.rn[n - 1], w.An[n - 1]
    theta = 2 * numpy.pi * numpy.arange(nodes) / nodes
    xi = numpy.exp(1j * theta)
    zb = zn + rn * xi
    g = numpy.asarray(v_power(p, zb))
    m = numpy.abs(scipy.fft.fftfreq(nodes, 1. / nodes))
    dtn = scipy.fft.ifft(m * scipy.fft.fft(g)).real
    th = numpy.angle(zb)
    G = numpy.abs(zb) ** (p.alpha - 1) * numpy.exp(1j * th) * (
        p.alpha * numpy.cos(p.beta * th) - 1j * p.beta * numpy.sin(p.beta * th)
        )
    dv = rn * numpy.real(numpy.conj(G) * xi)
    return dv - dtn - An

def estimate_c(w, n=1, nodes=4096):
    """ Largest ``c`` with ``c eps (z_n - r_n)**alpha <= min dG/dr`` on ``dB_n``. """
    p = w.p
    dG = gluing_margin(w, n, nodes) + w.An[n - 1]
    return float(dG.min() / (p.eps * (w.zn[n - 1] - w.rn[n - 1]) ** p.alpha))

def _disk_samples(center, radius, nr=16, ntheta=32):
    rho = radius * numpy.arange(1, nr + 1) / nr
    th = 2 * numpy.pi * numpy.arange(ntheta) / ntheta
    return numpy.concatenate([[center], (center + rho[:, None] * numpy.exp(1j * th[None, :])).reshape(-1)])

def _rays(angles, radii):
    return (radii[:, None] * numpy.exp(1j * angles[None, :])).reshape(-1)

def verify_power_weight(w, nr=48, ntheta=73, nodes=4096):
    """ Sampled check of the power-weight properties.

    Rows: (1) ``u <= |z|**alpha`` off the puddles and, inside them, up to
    the excess ``P_D[|z|**alpha] - |z|**alpha`` allowed by subharmonicity;
    (2) ``u <= 0`` on ``B(z_n, 1)`` and ``u <= -c |z_n|**alpha`` on
    ``B(z_n, 1/2)``; (3) ``u <= 0`` on ``|Arg z| > pi - eps/2`` and
    ``u <= -eps/8 |z|**alpha`` on ``|Arg z| > pi - eps/4``; (4)
    ``u >= eps/4 |z|**alpha`` on ``pi/2 < |Arg z| < pi - eps`` and
    ``u >= |z|**alpha / 2`` on ``|Arg z| < pi/3`` off the puddles; the
    identity ``pi/(2 beta) = pi - eps/2``; and the gluing condition
    ``A_n <= min dG/dr`` with the implied estimate of ``c``.
    """
    p = w.p
    scale = 'surrogate' if p.surrogate else 'faithful'
    rep = CheckReport('verify-weights', 'order', scale)
    alpha, eps = p.alpha, p.eps
    err = abs(numpy.pi / (2 * p.beta) - (numpy.pi - eps / 2))
    rep.add('pi/(2 beta) = pi - eps/2', err, 1e-12, '<=', err <= 1e-12)
    R = 3. * w.zn.max()
    radii = numpy.logspace(-2, numpy.log10(R), nr)
    th = numpy.linspace(-numpy.pi, numpy.pi, ntheta)
    z = _rays(th, radii)
    for n in range(1, w.N + 1):
        z = numpy.concatenate([z, _disk_samples(w.zn[n - 1], w.rn[n - 1])[1:]])
    z = z[z != 0]
    u = numpy.asarray(w(z))
    za = numpy.abs(z) ** alpha
    off = ~w.in_puddles(z)
    excess = u - za
    i = int(numpy.argmax(numpy.where(off, excess, -numpy.inf)))
    rep.add(
        'u <= |z|^alpha off puddles', excess[i], 0., '<=', excess[i] <= 0,
        note='worst at z = {}; equality on the positive axis'.format(_fmtz(z[i])),
        )
    if numpy.any(~off):
        # P_D[|z|^alpha] - |z|^alpha <= r^2 (1 - rho^2)/4 sup_B Laplacian(|z|^alpha)
        tol = numpy.full(len(z), numpy.inf)
        for n in range(1, w.N + 1):
            zn, rn = w.zn[n - 1], w.rn[n - 1]
            d = numpy.abs(z - zn)
            inside = d < rn
            # in units of zn**alpha, scale-free
            lap = alpha ** 2 * (rn / zn) ** 2 * max((1 - rn / zn) ** (alpha - 2), (1 + rn / zn) ** (alpha - 2))
            ratio = (zn / numpy.abs(z)) ** alpha
            tol = numpy.where(inside, (1 - (d / rn) ** 2) / 4. * lap * ratio + 1e-6, tol)
        rel = numpy.where(~off, excess / za, -numpy.inf)
        i = int(numpy.argmax(numpy.where(~off, rel - tol, -numpy.inf)))
        rep.add(
            'u <= |z|^alpha in puddles', rel[i], tol[i], '<=', rel[i] <= tol[i],
            note='relative excess at z = {}; tolerance from the subharmonicity of |z|^alpha'.format(_fmtz(z[i])),
            )
    c2 = numpy.inf
    for n in range(1, w.N + 1):
        zn = w.zn[n - 1]
        s1 = _disk_samples(zn, 1.)
        u1 = numpy.asarray(w(s1))
        i = int(numpy.argmax(u1))
        rep.add('u <= 0 on B(z_{}, 1)'.format(n), u1[i], 0., '<=', u1[i] <= 0, note='worst at z = ' + _fmtz(s1[i]))
        s2 = _disk_samples(zn, 0.5)
        u2 = numpy.asarray(w(s2))
        bound = -p.c * zn ** alpha
        i = int(numpy.argmax(u2))
        rep.add(
            'u <= -c |z_{0}|^alpha on B(z_{0}, 1/2)'.format(n), u2[i], bound, '<=', u2[i] <= bound,
            note='worst at z = ' + _fmtz(s2[i]),
            )
        c2 = min(c2, float(numpy.min(-u2) / zn ** alpha))
    if w.N > 0:
        rep.add('c implied by u on B(z_n, 1/2)', c2, p.c, '>=', None, note='largest c for the puddle bound')
    for frac, anchor, factor in ((0.5, 'u <= 0 on |Arg z| > pi - eps/2', 0.), (0.25, 'u <= -eps/8 |z|^alpha on |Arg z| > pi - eps/4', -eps / 8.)):
        t = numpy.linspace(numpy.pi - frac * eps, numpy.pi, 21)[1:]
        zz = _rays(numpy.concatenate([t, -t]), radii)
        uu = numpy.asarray(w(zz))
        bound = factor * numpy.abs(zz) ** alpha
        ex = uu - bound
        i = int(numpy.argmax(ex))
        rep.add(anchor, ex[i], 0., '<=', ex[i] <= 0, note='u minus bound; worst at z = ' + _fmtz(zz[i]))
    t = numpy.linspace(numpy.pi / 2, numpy.pi - eps, 22)[1:-1]
    zz = _rays(numpy.concatenate([t, -t]), radii)
    uu = numpy.asarray(w(zz))
    ex = uu - eps / 4. * numpy.abs(zz) ** alpha
    i = int(numpy.argmin(ex))
    rep.add('u >= eps/4 |z|^alpha on pi/2 < |Arg z| < pi - eps', ex[i], 0., '>=', ex[i] >= 0, note='worst at z = ' + _fmtz(zz[i]))
    t = numpy.linspace(-numpy.pi / 3, numpy.pi / 3, 41)[1:-1]
    zz = _rays(t, radii)
    zz = zz[~w.in_puddles(zz)]
    uu = numpy.asarray(w(zz))
    ex = uu - 0.5 * numpy.abs(zz) ** alpha
    i = int(numpy.argmin(ex))
    rep.add('u >= |z|^alpha/2 on |Arg z| < pi/3 off puddles', ex[i], 0., '>=', ex[i] >= 0, note='worst at z = ' + _fmtz(zz[i]))
    for n in range(1, w.N + 1):
        margin = gluing_margin(w, n, nodes)
        An = w.An[n - 1]
        rep.add(
            'A_{0} <= dG/dr on dB_{0}'.format(n), An, An + margin.min(), '<=', margin.min() >= 0,
            note='Dirichlet-to-Neumann margin, {} nodes'.format(nodes),
            )
        cest = estimate_c(w, n, nodes)
        rep.add('estimated c >= c (n = {})'.format(n), cest, p.c, '>=', cest >= p.c)
    return rep


def submean_check(field, radii=None, seam_mask=None, kappa=None, run='submean', construction='', scale='surrogate'):
    """ Discrete sub-mean-value test of a sampled real field.

    At every interior node ``z`` and each radius ``r`` (a multiple ``m``
    of the spacing ``h``; default ``2h, 4h, 8h``) checks

        ``value(z) <= avg_r(z) + tol(r)``

    where ``avg_r`` is the mean over ``z +- r``, ``z +- i r`` (the four-point
    trapezoid rule for the circle mean: exact on harmonic polynomials of
    degree below 4 and on ``|z|**2``, error ``O(r**4)`` otherwise) and
    ``tol(r) = max(1e-9, kappa m**2 D4 + 64 eps_mach max|stencil|)``.
    ``D4`` is the largest fourth difference (step ``h``, both axes) at the
    node and its four stencil points, ``kappa`` defaults to 10. Masked,
    non-finite or ``seam_mask`` nodes poison every stencil touching them,
    and nodes too close to the grid edge are skipped.

    Returns:
        :class:`wdlab.CheckReport` with one row per radius.
    """
    if field.iscomplex:
        raise ValueError('submean_check needs a real field')
    h = field.spacing
    if radii is None:
        radii = [2 * h, 4 * h, 8 * h]
    kappa = DEFAULTS['kappa'] if kappa is None else float(kappa)
    f = numpy.array(field.values, dtype=float)
    if seam_mask is not None:
        f[numpy.asarray(seam_mask, dtype=bool)] = numpy.nan
    ny, nx = f.shape
    d4x = numpy.full(f.shape, numpy.nan)
    d4y = numpy.full(f.shape, numpy.nan)
    with numpy.errstate(invalid='ignore'):
        d4x[:, 2:-2] = f[:, 4:] - 4 * f[:, 3:-1] + 6 * f[:, 2:-2] - 4 * f[:, 1:-3] + f[:, :-4]
        d4y[2:-2, :] = f[4:, :] - 4 * f[3:-1, :] + 6 * f[2:-2, :] - 4 * f[1:-3, :] + f[:-4, :]
    D4 = numpy.maximum(numpy.abs(d4x), numpy.abs(d4y))
    pts = field.points()
    rep = CheckReport(run, construction, scale)
    for r in radii:
        m = int(round(r / h))
        if m < 1 or abs(m * h - r) > 1e-9 * h:
            raise ValueError('radius must be a positive multiple of the spacing: ' + str(r))
        pad = m + 2
        if ny - 2 * pad < 1 or nx - 2 * pad < 1:
            raise ValueError('grid too small for radius ' + str(r))

        def sl(dy, dx, a):
            return a[pad + dy:ny - pad + dy, pad + dx:nx - pad + dx]
        c = sl(0, 0, f)
        st = [sl(0, m, f), sl(0, -m, f), sl(m, 0, f), sl(-m, 0, f)]
        D = numpy.maximum.reduce([sl(0, 0, D4), sl(0, m, D4), sl(0, -m, D4), sl(m, 0, D4), sl(-m, 0, D4)])
        with numpy.errstate(invalid='ignore'):
            avg = (st[0] + st[1] + st[2] + st[3]) / 4.
            smax = numpy.maximum.reduce([numpy.abs(c)] + [numpy.abs(s) for s in st])
            tol = numpy.maximum(
                DEFAULTS['submean_floor'],
                kappa * m * m * D + 64 * numpy.finfo(float).eps * smax,
                )
            excess = c - avg - tol
        ok = numpy.isfinite(excess)
        nchecked = int(ok.sum())
        bad = ok & (excess > 0)
        nbad = int(bad.sum())
        if nchecked == 0:
            rep.add('sub-mean at r = {}h'.format(m), 'no nodes', 0., '<=', None, note='nothing to check')
            continue
        ex = numpy.where(ok, excess, -numpy.inf)
        i = numpy.unravel_index(numpy.argmax(ex), ex.shape)
        zi = sl(0, 0, pts)[i]
        rep.add(
            'sub-mean at r = {}h'.format(m), ex[i], 0., '<=', nbad == 0,
            note='{} of {} nodes violate; worst at z = {}'.format(nbad, nchecked, _fmtz(zi)),
            )
    return rep

submean_check.DEFAULTS = DEFAULTS
submean_check.set = _set_defaults
