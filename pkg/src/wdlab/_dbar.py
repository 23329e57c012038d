""" part of wdlab module: dbar solver, assembled approximant, Hormander integrals """

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

import numpy
from scipy.special import roots_legendre

import gvar as _gvar

from ._numerics import TowerReal, wirtinger_fd, quad_region, _cell_nodes
from ._geometry import Disk, HalfPlaneBand, Region
from ._weights import StripWeight, PowerWeight
from ._mollify import measure_ctilde
from ._report import CheckReport
from ._dynamics import iterate_numeric

_ORIGINAL_DEFAULTS = dict(
    nodes=16, near_nr=16, near_ntheta=32, near_factor=1.0, max_cell=2.0,
    strip_x=1e5, strip_ynodes=64, strip_window=8., chunk=2 ** 22,
    hormander_nodes=12, hormander_margin=60.,
    norm_degree=80, norm_x=0.1, norm_levels=1, norm_nodes=48,
    )
DEFAULTS = dict(_ORIGINAL_DEFAULTS)

def _set_defaults(clear=False, **defaults):
    """ Set defaults for :func:`cauchy_transform` and :class:`DbarSolution`.

    Recognized keys:

        ``nodes``: Gauss-Legendre nodes per direction in regular cells (16).

        ``near_nr``, ``near_ntheta``: radial and angular nodes of the
        desingularized rule on cells close to the evaluation point (16, 32).

        ``near_factor``: a cell is close when its distance to the point is
        below ``near_factor`` times its diameter (1).

        ``max_cell``: largest cell for tiled supports (2).

        ``strip_x``: truncation ``|Re(w)| <= strip_x`` of strip supports (1e5).

        ``strip_ynodes``: Gauss nodes per band piece for strip supports (64).

        ``strip_window``: ``|Re(w)|`` window for tiled strip supports (8).

        ``chunk``: largest point-times-node block (``2**22``).

        ``hormander_nodes``, ``hormander_margin``: quadrature nodes and the
        weight rise (in units of ``u``) that fixes truncation windows of
        :func:`hormander_integral` (12, 60).

        ``norm_degree``: degree of the polynomial that normalizes strip
        solutions (80).

        ``norm_x``: half-width ``|Re z| <= norm_x`` of the normalized
        pieces (0.1).

        ``norm_levels``: highest normalized strip (1).

        ``norm_nodes``: fit nodes per side of each piece (48).

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

def _gl01(n):
    t, w = roots_legendre(n)
    return (t + 1) / 2., w / 2.


class _CellGeometry(object):
    " parameter rectangle of a quadrature cell with its map to the plane "
    def __init__(self, cell):
        self.kind = cell[0]
        self.clip = cell[-1]
        if self.kind == 'affine':
            self.origin, self.e1, self.e2, srange, trange = cell[1:6]
            self.det = (numpy.conj(self.e1) * self.e2).imag
            self.diam = (srange[1] - srange[0]) * abs(self.e1) + (trange[1] - trange[0]) * abs(self.e2)
        elif self.kind == 'polar':
            self.center, srange, trange = cell[1:4]
            dth = trange[1] - trange[0]
            self.periodic = abs(dth - 2 * numpy.pi) < 1e-14
            self.diam = (srange[1] - srange[0]) + min(2 * numpy.pi, dth) * srange[1]
            self.diam = min(self.diam, 2 * srange[1])
        else:
            raise ValueError('unknown cell kind: ' + str(self.kind))
        self.srange = tuple(float(s) for s in srange)
        self.trange = tuple(float(t) for t in trange)

    def map(self, s, t):
        if self.kind == 'affine':
            return self.origin + s * self.e1 + t * self.e2, numpy.full(numpy.shape(s), abs(self.det))
        return self.center + s * numpy.exp(1j * t), s

    def nearest(self, z):
        " clamped parameter point closest to z (and a parameter range centered on it) "
        s0, s1 = self.srange
        t0, t1 = self.trange
        if self.kind == 'affine':
            d = z - self.origin
            s = (numpy.conj(d) * self.e2).imag / self.det
            t = (numpy.conj(self.e1) * d).imag / self.det
            return numpy.clip(s, s0, s1), numpy.clip(t, t0, t1), (t0, t1)
        d = z - self.center
        s = numpy.clip(numpy.abs(d), s0, s1)
        th = numpy.angle(d)
        if self.periodic:
            # the seam is moved opposite the point
            return s, th, (th - numpy.pi, th + numpy.pi)
        th = t0 + numpy.mod(th - t0, 2 * numpy.pi)
        snap = numpy.where(th - t1 < t0 + 2 * numpy.pi - th, t1, t0)
        th = numpy.where(th > t1, snap, th)
        return s, th, (t0, t1)

    def distance(self, z):
        z = numpy.asarray(z, dtype=complex)
        s, t, _ = self.nearest(z)
        return numpy.abs(z - self.map(s, t)[0])

    def duffy(self, z, nr, ntheta):
        """ Nodes and weights of four Duffy triangles with apex at the point nearest ``z``.

        The factor ``u`` of each triangle cancels the ``1/|z - w|``
        singularity, so the rule stays accurate for ``z`` in or near the cell.
        """
        sp, tp, (t0, t1) = self.nearest(z)
        s0, s1 = self.srange
        corners = [(s0, t0), (s1, t0), (s1, t1), (s0, t1)]
        u, wu = _gl01(nr)
        v, wv = _gl01(ntheta)
        area = (s1 - s0) * (t1 - t0)
        pts, wts = [], []
        for i in range(4):
            A, B = corners[i], corners[(i + 1) % 4]
            a = (A[0] - sp, A[1] - tp)
            e = (B[0] - A[0], B[1] - A[1])
            cross = a[0] * e[1] - a[1] * e[0]
            if abs(cross) <= 1e-13 * area:
                continue
            s = sp + u[:, None] * (a[0] + v[None, :] * e[0])
            t = tp + u[:, None] * (a[1] + v[None, :] * e[1])
            w, jac = self.map(s, t)
            pts.append(w.ravel())
            wts.append((wu[:, None] * wv[None, :] * u[:, None] * abs(cross) * jac).ravel())
        if not pts:
            return numpy.zeros(0, dtype=complex), numpy.zeros(0)
        w = numpy.concatenate(pts)
        wt = numpy.concatenate(wts)
        if self.clip is not None:
            keep = numpy.asarray(self.clip(w), dtype=bool)
            w, wt = w[keep], wt[keep]
        return w, wt


class _CauchyRule(object):
    """ ``(1/pi) sum_j w_j g(w_j) / (z - w_j)`` over a tiled support.

    Regular cells use tensor Gauss rules; cells within ``near_factor``
    diameters of ``z`` are replaced by Duffy triangles about ``z``.
    """
    def __init__(self, g, cells, nodes=None, near_nodes=None, near_factor=None):
        nodes = DEFAULTS['nodes'] if nodes is None else int(nodes)
        if near_nodes is None:
            near_nodes = (DEFAULTS['near_nr'], DEFAULTS['near_ntheta'])
        self.near_nodes = tuple(int(n) for n in near_nodes)
        self.near_factor = DEFAULTS['near_factor'] if near_factor is None else float(near_factor)
        self.g = g
        self.geometry = [_CellGeometry(cell) for cell in cells]
        nz, nw, owner = [], [], []
        for i, cell in enumerate(cells):
            z, w, clip = _cell_nodes(cell, nodes, 'gauss')
            if clip is not None:
                keep = numpy.asarray(clip(z), dtype=bool)
                z, w = z[keep], w[keep]
            nz.append(z)
            nw.append(w)
            owner.append(numpy.full(len(z), i))
        if nz:
            self.nodes = numpy.concatenate(nz)
            weights = numpy.concatenate(nw)
            self.owner = numpy.concatenate(owner)
        else:
            self.nodes = numpy.zeros(0, dtype=complex)
            weights = numpy.zeros(0)
            self.owner = numpy.zeros(0, dtype=int)
        gz = numpy.asarray(g(self.nodes), dtype=complex) if len(self.nodes) else numpy.zeros(0, dtype=complex)
        if not numpy.all(numpy.isfinite(gz)):
            raise ValueError('integrand not finite on quadrature nodes')
        self.gw = gz * weights
        self.neval = len(self.nodes)

    def near(self, z):
        " boolean (npoints, ncells) "
        ans = numpy.zeros((len(z), len(self.geometry)), dtype=bool)
        for c, geo in enumerate(self.geometry):
            ans[:, c] = geo.distance(z) <= self.near_factor * geo.diam
        return ans

    def __call__(self, z, where=None):
        z = numpy.asarray(z, dtype=complex)
        shape = z.shape
        z = z.reshape(-1)
        ans = numpy.zeros(len(z), dtype=complex)
        if len(self.nodes) == 0 or len(z) == 0:
            return _out(ans.reshape(shape))
        gw = self.gw if where is None else numpy.where(where(self.nodes), self.gw, 0.)
        near = self.near(z)
        step = max(1, DEFAULTS['chunk'] // len(self.nodes))
        for i in range(0, len(z), step):
            zi = z[i:i + step]
            far = ~near[i:i + step][:, self.owner]
            with numpy.errstate(divide='ignore', invalid='ignore'):
                terms = gw[None, :] / (zi[:, None] - self.nodes[None, :])
            ans[i:i + step] = numpy.sum(numpy.where(far, terms, 0.), axis=1)
        nr, ntheta = self.near_nodes
        for i, c in zip(*numpy.nonzero(near)):
            w, wt = self.geometry[c].duffy(z[i], nr, ntheta)
            if len(w) == 0:
                continue
            if where is not None:
                wt = numpy.where(where(w), wt, 0.)
            gz = numpy.asarray(self.g(w), dtype=complex)
            if not numpy.all(numpy.isfinite(gz)):
                raise ValueError('integrand not finite near ' + str(z[i]))
            ans[i] += numpy.sum(wt * gz / (z[i] - w))
        return _out((ans / numpy.pi).reshape(shape))


def _support_cells(support, window, max_cell):
    if isinstance(support, Region):
        support = [support]
    return [c for r in support for c in r.cells(window=window, max_size=max_cell)]

def cauchy_transform(g, support, z, nodes=None, near_nodes=None, window=None, max_cell=None):
    """ Cauchy transform ``(1/pi) int_support g(w)/(z - w) dm(w)``.

    The support (a :class:`wdlab.Region` or list of them, intersected
    with ``window``) is tiled into cells. Cells far from ``z`` use
    tensor Gauss-Legendre rules with ``nodes`` points per direction; the
    cells containing or touching ``z`` use a desingularized polar rule
    (Duffy triangles about ``z``, ``near_nodes = (nr, ntheta)``, default
    16 x 32) whose Jacobian cancels the kernel singularity. The result
    ``alpha`` satisfies ``dbar alpha = g`` inside the support.

    Raises:
        ValueError: If ``g`` is not finite on the quadrature nodes.
    """
    rule = _CauchyRule(g, _support_cells(support, window, max_cell), nodes, near_nodes)
    return rule(z)

cauchy_transform.DEFAULTS = DEFAULTS
cauchy_transform.set = _set_defaults


# families whose inner maps are affine in z
_AFFINE_FAMILIES = ('identity', 'constant', 'alternating', 'zero')

class _StripCauchy(object):
    """ Cauchy transform of strip data truncated at ``|Re(w)| <= X``.

    On each transition band ``g(w) = dbar chi(Im w) (c0 + c1 w)``; the
    ``Re(w)`` integral is done in closed form,
    ``int_{-X}^{X} (c0 + c1 w)/(z - w) dx = F(z) L(z, y) - 2 c1 X`` with
    ``L = Log(z - iy + X) - Log(z - iy - X)``, and the ``Im(w)`` integral
    by Gauss-Legendre split at ``Im(z)``, where ``L`` jumps by ``2 pi i``.
    The ``-2 c1 X int dbar chi dy`` part does not depend on ``z``; it is
    summed once per band on the unsplit rule, so it only adds a constant.
    """
    def __init__(self, model, X, ynodes):
        self.model = model
        self.X = float(X)
        self.t, self.w = roots_legendre(int(ynodes))
        self.bands = []
        cut = model.cutoff
        for k in range(model.kmax + 1):
            tau, eps = model.tau[k], model.eps[k]
            c1 = 1. if (model.family.variant == 'identity' and k > 0) else 0.
            for lo, hi, kind in (
                (0.5 - 0.75 * eps, 0.5 - 0.625 * eps, 'lower'),
                (0.5 - 0.375 * eps, 0.5 - 0.25 * eps, 'upper'),
                ):
                for a, b in ((tau + lo, tau + hi), (tau - hi, tau - lo)):
                    if kind == 'lower':
                        half = (b - a) / 2.
                        d = numpy.asarray(cut.dzbar(1j * (a + half * (self.t + 1))))
                        shift = -2 * c1 * self.X * half * numpy.sum(self.w * d)
                        self.bands.append((a, b, k, c1, shift))
                    else:
                        self.bands.append((a, b, -1, 0., 0j))

    def _F(self, k, z):
        if k < 0:
            return numpy.full(z.shape, 1j * self.model.tau[0])
        return numpy.asarray(self.model.local_map(k, z), dtype=complex)

    def __call__(self, z):
        z = numpy.asarray(z, dtype=complex)
        shape = z.shape
        z = z.reshape(-1)
        ans = numpy.zeros(len(z), dtype=complex)
        X = self.X
        cut = self.model.cutoff
        for a, b, k, c1, shift in self.bands:
            F = self._F(k, z)
            c = numpy.clip(z.imag, a, b)
            for lo, hi in ((numpy.full(len(z), a), c), (c, numpy.full(len(z), b))):
                half = (hi - lo)[:, None] / 2.
                y = lo[:, None] + half * (self.t[None, :] + 1)
                wy = half * self.w[None, :]
                d = numpy.asarray(cut.dzbar(1j * y))
                zp = z[:, None] - 1j * y
                L = numpy.log(zp + X) - numpy.log(zp - X)
                ans += numpy.sum(wy * d * F[:, None] * L, axis=1)
            ans += shift
        return _out((ans / numpy.pi).reshape(shape))


def _plateau_pieces(model, xw, levels):
    " inner strips S^-eps_k + i tau_k and gaps W_k for k <= levels, cut at |x| <= xw "
    tau, eps = model.tau, model.eps
    ans = []
    for k in range(levels + 1):
        ans.append((-xw, xw, tau[k] - 0.5 + eps[k], tau[k] + 0.5 - eps[k]))
        if k < levels:
            lo, hi = tau[k] + 0.5 + eps[k], tau[k + 1] - 0.5 - eps[k + 1]
            if hi > lo:
                ans.append((-xw, xw, lo, hi))
    return ans

def _boundary_nodes(pieces, n):
    " Chebyshev points on every side of each rectangle, plus its corners "
    t = numpy.cos(numpy.pi * (2 * numpy.arange(n) + 1) / (2. * n))
    ans = []
    for xmin, xmax, ymin, ymax in pieces:
        xs = (xmin + xmax) / 2. + (xmax - xmin) / 2. * t
        ys = (ymin + ymax) / 2. + (ymax - ymin) / 2. * t
        ans += [xs + 1j * ymin, xs + 1j * ymax, xmin + 1j * ys, xmax + 1j * ys]
        ans.append(numpy.array([xmin + 1j * ymin, xmin + 1j * ymax, xmax + 1j * ymin, xmax + 1j * ymax]))
    return numpy.concatenate(ans)


class _PlateauFit(object):
    """ Least-squares polynomial ``P`` of degree ``n`` matching ``alpha`` on plateau pieces.

    The basis is orthonormal on the fit nodes (Vandermonde with Arnoldi);
    evaluation reruns the same recurrence. ``alpha - P`` is again a
    solution of ``dbar alpha = g``, and it is small on the pieces. By the
    maximum principle the fit error on a piece is bounded by its error on
    the piece boundary, so only boundaries are sampled.
    """
    def __init__(self, alpha, pieces, degree, nodes):
        z = _boundary_nodes(pieces, nodes)
        self.pieces = pieces
        self.degree = int(degree)
        self.center = complex(numpy.mean(z))
        self.radius = float(numpy.max(numpy.abs(z - self.center)))
        s = (z - self.center) / self.radius
        m = len(s)
        Q = numpy.zeros((m, self.degree + 1), dtype=complex)
        H = numpy.zeros((self.degree + 1, self.degree), dtype=complex)
        Q[:, 0] = 1.
        for k in range(self.degree):
            q = s * Q[:, k]
            for j in range(k + 1):
                H[j, k] = numpy.vdot(Q[:, j], q) / m
                q = q - H[j, k] * Q[:, j]
            H[k + 1, k] = numpy.linalg.norm(q) / numpy.sqrt(m)
            Q[:, k + 1] = q / H[k + 1, k]
        self.H = H
        values = numpy.asarray(alpha(z), dtype=complex)
        self.coef = numpy.linalg.lstsq(Q, values, rcond=None)[0]
        self.error = float(numpy.max(numpy.abs(Q.dot(self.coef) - values)))

    def __call__(self, z):
        z = numpy.asarray(z, dtype=complex)
        s = ((z - self.center) / self.radius).reshape(-1)
        W = numpy.zeros((len(s), self.degree + 1), dtype=complex)
        W[:, 0] = 1.
        for k in range(self.degree):
            w = s * W[:, k] - W[:, :k + 1].dot(self.H[:k + 1, k])
            W[:, k + 1] = w / self.H[k + 1, k]
        return _out(W.dot(self.coef).reshape(z.shape))


class DbarSolution(object):
    """ Particular solution ``alpha`` of ``dbar alpha = g`` and the approximant ``f``.

    ``alpha`` is the Cauchy transform of the truncated data ``g`` of a
    :class:`wdlab.StripModel` or :class:`wdlab.OrderModel`, and
    ``f = h - alpha`` (strips) or ``f = chi h - alpha`` (order), which is
    what ``model.h`` returns in either case.

    Strip models with affine inner maps use the closed-form ``Re(w)``
    integral over ``|Re(w)| <= X``; other models tile the support
    components inside ``window`` (default ``|Re(w)| <= 8`` for strips
    and the square of half-side ``2 (z_N + 3 r_N)`` for order models).

    The Cauchy transform reproduces ``h - i tau_0`` on the strip
    plateaus, so its ``f`` is nearly constant. For strip models ``f`` is
    therefore normalized: a polynomial ``P`` fitted to ``alpha`` on the
    plateau pieces ``S^-eps_k + i tau_k`` and ``W_k`` (``k <= levels``,
    ``|Re z| <= norm_x``) is subtracted from ``alpha``, and
    ``f = h - alpha + P``. ``P`` is entire, so ``dbar f`` is unchanged;
    ``f`` is represented on the rectangle ``band`` spanned by the pieces.

    Args:
        model: :class:`wdlab.StripModel` or :class:`wdlab.OrderModel`.
        nodes (int): Regular-cell nodes per direction.
        near_nodes (tuple): Desingularized rule ``(nr, ntheta)``.
        window (tuple or None): Truncation window for tiled supports.
        max_cell (float or None): Largest cell.
        X (float or None): Strip truncation (default 1e5).
        normalize (bool or None): Fit ``P`` (default: strip models only).
        levels (int or None): Highest normalized strip (default 1).

    Attributes:
        method (str): ``'strip-log'`` or ``'cells'``.
        scale (float): Length scale for finite differences of ``f``.
        correction: The fitted ``P`` or ``None``.
        band (tuple or None): ``(xmin, xmax, ymin, ymax)`` of the pieces.
    """
    def __init__(
            self, model, nodes=None, near_nodes=None, window=None, max_cell=None, X=None, ynodes=None,
            normalize=None, levels=None,
            ):
        if normalize and model.kind != 'strip':
            raise ValueError('normalization needs a strip model')
        self.model = model
        self.kind = model.kind
        self.nodes = nodes
        self.near_nodes = near_nodes
        self.max_cell = DEFAULTS['max_cell'] if max_cell is None else max_cell
        if model.kind == 'strip' and model.family.variant in _AFFINE_FAMILIES:
            self.method = 'strip-log'
            self.X = DEFAULTS['strip_x'] if X is None else float(X)
            self.ynodes = DEFAULTS['strip_ynodes'] if ynodes is None else int(ynodes)
            self.window = None
            self._alpha = _StripCauchy(model, self.X, self.ynodes)
            self.scale = 0.01
        else:
            self.method = 'cells'
            self.X = None
            if window is None:
                if model.kind == 'strip':
                    Xg = DEFAULTS['strip_window']
                    window = (-Xg, Xg, model.tau[0] - 1., model.ymax)
                else:
                    p = model.p
                    R = 2 * (p.zf(p.N) + 3 * p.rf(p.N))
                    window = (-R, R, -R, R)
            self.window = tuple(float(x) for x in window)
            regions = [r for _, _, r in model.components()]
            cells = _support_cells(regions, self.window, self.max_cell)
            self._alpha = _CauchyRule(model.g, cells, nodes, near_nodes)
            self.scale = 0.01 if model.kind == 'strip' else 1.
        self.correction = None
        self.band = None
        self.levels = None
        if normalize is None:
            normalize = model.kind == 'strip'
        if not normalize:
            return
        levels = min(DEFAULTS['norm_levels'], model.kmax) if levels is None else int(levels)
        if not 0 <= levels <= model.kmax:
            raise ValueError('levels must lie in [0, {}]: {}'.format(model.kmax, levels))
        pieces = _plateau_pieces(model, DEFAULTS['norm_x'], levels)
        self.correction = _PlateauFit(self._alpha, pieces, DEFAULTS['norm_degree'], DEFAULTS['norm_nodes'])
        self.levels = levels
        self.band = (
            -DEFAULTS['norm_x'], DEFAULTS['norm_x'],
            min(r[2] for r in pieces), max(r[3] for r in pieces),
            )

    def alpha(self, z):
        """ ``alpha(z)``; the Cauchy transform, before normalization. """
        return self._alpha(z)

    def _cauchy_part(self, z):
        return numpy.asarray(self.model.h(z)) - numpy.asarray(self.alpha(z))

    def __call__(self, z):
        z = numpy.asarray(z, dtype=complex)
        ans = self._cauchy_part(z)
        if self.correction is not None:
            ans = ans + numpy.asarray(self.correction(z))
        return _out(ans)

    def residual(self, z):
        """ ``|dbar f(z)|`` by :func:`wdlab.wirtinger_fd`.

        The polynomial correction is entire and stays off the stencil.
        """
        return _out(numpy.abs(wirtinger_fd(self._cauchy_part, z, scale=self.scale)[1]))

    def tail_sensitivity(self, z):
        """ Size of the truncation effect at ``z``.

        Strip supports: ``|alpha_X - alpha_2X|``. Tiled supports: the
        contribution of support nodes beyond half the window.
        """
        z = numpy.asarray(z, dtype=complex)
        if self.method == 'strip-log':
            other = _StripCauchy(self.model, 2 * self.X, self.ynodes)
            return _out(numpy.abs(numpy.asarray(self.alpha(z)) - numpy.asarray(other(z))))
        xmin, xmax, ymin, ymax = self.window
        cx, cy = (xmin + xmax) / 2., (ymin + ymax) / 2.
        hx, hy = (xmax - xmin) / 4., (ymax - ymin) / 4.

        def outer(w):
            return (numpy.abs(w.real - cx) > hx) | (numpy.abs(w.imag - cy) > hy)
        return _out(numpy.abs(numpy.asarray(self._alpha(z, where=outer))))

    def format(self):
        ans = 'DbarSolution({}, method={}'.format(self.model.format(), self.method)
        if self.correction is not None:
            ans += ', degree={}, levels={}'.format(self.correction.degree, self.levels)
        return ans + ')'

    def __str__(self):
        return self.format()

DbarSolution.DEFAULTS = DEFAULTS
DbarSolution.set = staticmethod(_set_defaults)

def assemble_f(sol, z):
    """ ``f(z)`` for a :class:`DbarSolution`. """
    return sol(z)


class HormanderIntegral(object):
    """ Result of :func:`hormander_integral`.

    Attributes:
        parts (list): ``(label, QuadResult, window)`` per support component.
        total (gvar.GVar): Sum of the parts with quadrature errors.
        value (TowerReal): Upper bound of ``total`` (mean plus error).
        target (float): Bound the integral should stay below.
        passed (bool): ``value < target``.
    """
    def __init__(self, construction, parts, target, note=''):
        self.construction = construction
        self.parts = parts
        self.total = _gvar.gvar(0., 0.)
        for _, q, _ in parts:
            self.total = self.total + _gvar.gvar(float(numpy.real(q.value)), q.error)
        self.value = TowerReal.asTowerReal(max(0., self.total.mean + self.total.sdev))
        self.target = float(target)
        self.passed = bool(self.value < TowerReal.asTowerReal(self.target))
        self.note = note

    def report(self, rep):
        """ Append component rows and the bound row to a :class:`wdlab.CheckReport`. """
        for label, q, window in self.parts:
            rep.add(
                'int |g|^2 e^-u on ' + label, q.value, q.error, '+-', None,
                note='window ({:.4g}, {:.4g}, {:.4g}, {:.4g})'.format(*window),
                )
        rep.add(
            'int |g|^2 e^-u < target', self.value, self.target, '<', self.passed,
            note=self.note, scale='truncated',
            )
        return rep

    def format(self):
        return 'HormanderIntegral({} = {} vs {:.6g}: {})'.format(
            self.construction, self.total, self.target, 'pass' if self.passed else 'FAIL'
            )

    def __str__(self):
        return self.format()


def _strip_halfwidth(weight, ys, margin):
    " |x| beyond which u exceeds its value at x = 0 by margin on heights ys "
    with numpy.errstate(over='ignore'):
        u0 = float(numpy.min(weight(1j * ys)))
    x = 1e-3
    while x < 1e4:
        with numpy.errstate(over='ignore', invalid='ignore'):
            u = numpy.concatenate([numpy.asarray(weight(x + 1j * ys)), numpy.asarray(weight(-x + 1j * ys))])
        if numpy.min(u) >= u0 + margin:
            return x
        x *= 1.25
    return x

def _collar_radius(weight, eps, margin):
    " radius beyond which u on the sector collar exceeds its minimum by margin "
    r = numpy.geomspace(0.5, 1e7, 400)
    umin = None
    for side in (-1., 1.):
        u = numpy.exp(1j * side * (numpy.pi - eps))
        normal = u * numpy.exp(-1j * side * numpy.pi / 2)
        pts = r[:, None] * u + numpy.array([0.1, 0.5, 0.9])[None, :] * normal
        val = numpy.min(numpy.asarray(weight(pts)), axis=1)
        umin = val if umin is None else numpy.minimum(umin, val)
    lowest = numpy.minimum.accumulate(umin)
    ok = umin >= lowest + margin
    # first radius after which the rise persists
    for i in range(len(r)):
        if numpy.all(ok[i:]):
            return float(r[i])
    return float(r[-1])

def hormander_integral(model, weight=None, nodes=None, margin=None):
    """ ``int |g|^2 e^{-u} dm`` over the support of ``g``, per component.

    Each component is truncated where the weight has risen by
    ``margin`` (default 60) above its minimum, which bounds the omitted
    part by ``exp(-margin)`` times the integrand peak. The target is
    ``1/2`` for strips and ``(10 C~ z_1/eps)**2`` for the order
    construction with ``C~`` measured by :func:`wdlab.measure_ctilde`.

    Returns:
        :class:`HormanderIntegral`.
    """
    nodes = DEFAULTS['hormander_nodes'] if nodes is None else int(nodes)
    margin = DEFAULTS['hormander_margin'] if margin is None else float(margin)
    parts = []
    if model.kind == 'strip':
        weight = StripWeight(model.p) if weight is None else weight
        kmax = min(model.kmax, weight.kmax)
        for k, label, region in model.components():
            if k > kmax:
                continue
            tau, eps = model.tau[k], model.eps[k]
            ys = numpy.concatenate([
                tau + s * numpy.linspace(0.5 - 0.75 * eps, 0.5 - 0.25 * eps, 9) for s in (-1., 1.)
                ])
            X = _strip_halfwidth(weight, ys, margin)
            window = (-X, X, tau - 0.5, tau + 0.5)

            def integrand(z):
                with numpy.errstate(over='ignore'):
                    return numpy.abs(numpy.asarray(model.g(z))) ** 2 * numpy.exp(-numpy.asarray(weight(z)))
            q = quad_region(integrand, region, nodes=nodes, window=window, max_cell=max(X / 16., eps / 8.))
            parts.append(('{} transition {}'.format(label, k), q, window))
        return HormanderIntegral('strips', parts, 0.5, note='truncated at k <= {}'.format(kmax))
    weight = PowerWeight(model.p) if weight is None else weight
    p = model.p
    for n, label, region in model.components():
        if n == 0:
            R = _collar_radius(weight, p.eps, margin)
            window = (-R, R, -R, R)
            cell = 8.
        else:
            window = region.bbox()
            cell = max(p.rf(n) / 2., 1.)

        def integrand(z):
            with numpy.errstate(over='ignore'):
                return numpy.abs(numpy.asarray(model.g(z))) ** 2 * numpy.exp(-numpy.asarray(weight(z)))
        q = quad_region(integrand, region, nodes=nodes, window=window, max_cell=cell)
        parts.append(('{} {}'.format(label, n), q, window))
    ctilde = measure_ctilde(model.cutoff)
    target = (10 * ctilde * p.zf(1) / p.eps) ** 2
    return HormanderIntegral(
        'order', parts, target,
        note='measured C~ = {:.4g}; truncated at n <= {}'.format(ctilde, p.N),
        )

hormander_integral.DEFAULTS = DEFAULTS
hormander_integral.set = _set_defaults

def hormander_ratio(sol, hormander, nodes=8):
    """ ``int |alpha|^2 e^{-u}/(1 + |z|^2)^2`` over a window, divided by ``(1/2) int |g|^2 e^{-u}``.

    Strips: the window ``|Re z| <= 2``, ``tau_0 - 1 <= Im z <= ymax``.
    Order: the disk ``|z| < z_1 - r_1``, which avoids the puddles where
    ``e^{-u}`` is not integrable.

    Returns:
        Tuple ``(ratio, lhs)`` of :class:`gvar.GVar`.
    """
    model = sol.model
    if model.kind == 'strip':
        weight = StripWeight(model.p)
        region = HalfPlaneBand(model.tau[0] - 1., model.ymax)
        window = (-2., 2., model.tau[0] - 1., model.ymax)
    else:
        weight = PowerWeight(model.p)
        region = Disk(0., model.p.zf(1) - model.p.rf(1))
        window = None

    def integrand(z):
        a = numpy.abs(numpy.asarray(sol.alpha(z))) ** 2
        with numpy.errstate(over='ignore'):
            return a * numpy.exp(-numpy.asarray(weight(z))) / (1 + numpy.abs(z) ** 2) ** 2
    q = quad_region(integrand, region, nodes=nodes, window=window, max_cell=1. if model.kind == 'strip' else None)
    lhs = q.gvar
    rhs = hormander.total / 2.
    return lhs / rhs, lhs


def _residual_rows(rep, sol, zp, zt):
    if len(zp):
        r = float(numpy.max(sol.residual(zp)))
        rep.add('dbar f = 0 on plateaus', r, 1e-5, '<', r < 1e-5, note='{} points'.format(len(zp)), scale='surrogate')
    if len(zt):
        r = float(numpy.max(sol.residual(zt)))
        rep.add('dbar f = 0 on transition sets', r, 1e-3, '<', r < 1e-3, note='{} points'.format(len(zt)), scale='surrogate')

_CAUCHY_NOTE = 'Cauchy-transform solution; differs from the weighted solution by an entire function'

def approx_error_report(sol, nsamples=50, xmax=2., seed=0, scale='truncated'):
    """ Sampled approximation errors of the assembled ``f`` against the model.

    Every quoted approximation inequality is measured against its
    reference line (``delta_k`` for strips, the bound
    ``C z_1 |z|**2/eps exp(-eps/C |z|**(1/2 + eps))`` for the order
    construction). For a normalized strip solution the rows inside
    ``sol.band`` (strips ``k <= sol.levels``, the gaps below them, the
    point ``i tau_0`` and its orbit) pass or fail, and ``f`` is sampled
    at ``|Re z| <= min(xmax, norm_x)``; the remaining rows, and all rows
    of unnormalized solutions, are findings (``passed=None``). Growth
    bounds and the solver contracts (``dbar f = 0`` off and on the
    transition sets) are pass/fail rows.

    Returns:
        :class:`wdlab.CheckReport`.
    """
    rng = numpy.random.default_rng(seed)
    model = sol.model
    if model.kind == 'strip':
        return _strip_report(sol, rng, nsamples, xmax, scale)
    return _order_report(sol, rng, nsamples, scale)

def _strip_report(sol, rng, nsamples, xmax, scale):
    model = sol.model
    p = model.p
    eps, tau, kmax = model.eps, model.tau, model.kmax
    rep = CheckReport('solve', 'strips', scale)
    cut = model.cutoff
    z = rng.uniform(-xmax, xmax, 8 * nsamples) + 1j * rng.uniform(tau[0] - 1., model.ymax - 0.05, 8 * nsamples)
    zp = z[numpy.asarray(cut.plateau(z))]
    # keep finite-difference stencils inside the plateaus
    h = 1e-4 * sol.scale
    for dz in (h, -h, 1j * h, -1j * h):
        zp = zp[numpy.asarray(cut.plateau(zp + dz))]
    zp = zp[:nsamples]
    zt = numpy.concatenate([
        rng.uniform(-xmax, xmax, nsamples // 2) + 1j * (tau[k] + rng.uniform(0.5 - 0.75 * eps[k], 0.5 - 0.25 * eps[k], nsamples // 2))
        for k in range(kmax + 1)
        ])
    _residual_rows(rep, sol, zp, zt)
    band = sol.band
    if band is None:
        x0, x1, y0, y1 = -xmax, xmax, tau[0] - 1., model.ymax
    else:
        x0, x1, y0, y1 = max(-xmax, band[0]), min(xmax, band[1]), band[2], band[3]

    def xs(n):
        return rng.uniform(x0, x1, n)

    def checked(k):
        return band is not None and k <= sol.levels

    def note(k):
        if band is None:
            return _CAUCHY_NOTE
        return '|Re z| <= {:g}'.format(x1) if checked(k) else 'outside the normalized band'
    for k in range(1, kmax + 1):
        z = xs(nsamples) + 1j * (tau[k] + rng.uniform(-0.5 + eps[k], 0.5 - eps[k], nsamples))
        fz = numpy.asarray(sol(z))
        err = float(numpy.max(numpy.abs(fz - numpy.asarray(model.local_map(k, z)))))
        rep.add(
            '|f - (h_{0}(z - i tau_{0}) + i tau_{1})| < delta_{0}'.format(k, k + 1), err, p.delta[k], '<',
            err < p.delta[k] if checked(k) else None, note=note(k),
            )
        inside = int(numpy.sum(numpy.abs(fz.imag - tau[k + 1]) < 0.5 - eps[k + 1]))
        rep.add(
            'f(S^-eps_{0} + i tau_{0}) in S^-eps_{1} + i tau_{1}'.format(k, k + 1),
            inside, nsamples, '==', inside == nsamples if checked(k) else None, note=note(k),
            )
    for k in range(kmax + 1):
        lo, hi = tau[k] + 0.5 + eps[k], tau[k + 1] - 0.5 - eps[k + 1]
        hi = min(hi, model.ymax)
        if hi > lo:
            z = xs(nsamples) + 1j * rng.uniform(lo, hi, nsamples)
            err = float(numpy.max(numpy.abs(numpy.asarray(sol(z)) - 1j * tau[0])))
            rep.add(
                '|f - i tau_0| < delta_{} on W_{}'.format(k, k), err, p.delta[k], '<',
                err < p.delta[k] if checked(k + 1) else None, note=note(k + 1),
                )
    err = abs(complex(sol(1j * tau[0])) - 1j * tau[0])
    rep.add('|f(i tau_0) - i tau_0| < delta_0', err, p.delta[0], '<', err < p.delta[0] if checked(0) else None, note=note(0))
    if band is not None:
        orbit = iterate_numeric(sol, 1j * tau[0], 3, band, model=model)
        devs = [s.deviation for s in orbit.steps[1:]]
        dev = max(devs) if devs else float('nan')
        rep.add(
            'orbit of i tau_0 within delta_0 of h', dev, p.delta[0], '<',
            orbit.status == 'complete' and dev < p.delta[0],
            note='{} steps, {}'.format(len(orbit) - 1, orbit.status),
            )
        rep.add(
            'plateau fit error', sol.correction.error, '', '', None,
            note='degree {} on {} pieces'.format(sol.correction.degree, len(sol.correction.pieces)),
            )
    for k in range(kmax + 1):
        a = float(p.a[k])
        top = min(tau[k + 1] - 1.5, y1)
        if not numpy.isfinite(a) or not top > y0:
            continue
        z = xs(nsamples) + 1j * rng.uniform(y0, top, nsamples)
        lhs = numpy.log(numpy.abs(numpy.asarray(sol(z))))
        rhs = numpy.log(4.) + a * numpy.exp(numpy.pi / eps[k] * numpy.abs(z.real))
        excess = float(numpy.max(lhs - rhs))
        rep.add(
            'log|f| <= log 4 + a_{0} exp(pi |Re z|/eps_{0})'.format(k), excess, 0., '<=', excess <= 0,
            note='max excess for Im z <= tau_{} - 3/2'.format(k + 1),
            )
    zs = 1j * tau[1:kmax + 1]
    if len(zs):
        t = float(numpy.max(sol.tail_sensitivity(zs)))
        rep.add('truncation sensitivity', t, '', '', None, note='|alpha_X - alpha_2X| at i tau_k')
    return rep

def _order_report(sol, rng, nsamples, scale):
    model = sol.model
    p = model.p
    cut = model.cutoff
    rep = CheckReport('solve', 'order', scale)
    C, z1, alpha, eps = p.C, p.zf(1), p.alpha, p.eps
    zp = []
    for n in range(1, p.N + 1):
        zn, rn = p.zf(n), p.rf(n)
        zp.append(zn + 1.5 * rn * numpy.sqrt(rng.uniform(0, 1, nsamples)) * numpy.exp(1j * rng.uniform(-numpy.pi, numpy.pi, nsamples)))
    zp = numpy.concatenate(zp)
    keep = numpy.ones(len(zp), dtype=bool)
    for n in range(1, p.N + 1):
        # puddle branch of the weight is not needed here; avoid z_n itself
        keep &= numpy.abs(zp - p.zf(n)) > 1e-3
    zp = zp[keep]
    zt = []
    for n in range(1, p.N + 1):
        zn, rn = p.zf(n), p.rf(n)
        zt.append(zn + rng.uniform(2 * rn, 3 * rn, nsamples // 2) * numpy.exp(1j * rng.uniform(-numpy.pi, numpy.pi, nsamples // 2)))
    _residual_rows(rep, sol, zp, numpy.concatenate(zt))

    def bound(z):
        az = numpy.abs(z)
        return C * z1 * az ** 2 / eps * numpy.exp(-eps / C * az ** alpha)
    for n in range(1, p.N + 1):
        z = p.zf(n) + 0.25 * numpy.sqrt(rng.uniform(0, 1, nsamples)) * numpy.exp(1j * rng.uniform(-numpy.pi, numpy.pi, nsamples))
        err = float(numpy.max(numpy.abs(numpy.asarray(sol(z)) - p.zf(n + 1))))
        rep.add(
            '|f - z_{}| on B(z_{}, 1/4)'.format(n + 1, n), err, float(numpy.min(bound(z))), '<=', None,
            note=_CAUCHY_NOTE,
            )
    R = 2 * (p.zf(p.N) + 3 * p.rf(p.N))
    r = z1 * rng.uniform(1.5, 0.45 * R / z1, nsamples)
    z = -r * numpy.exp(1j * rng.uniform(-eps / 2, eps / 2, nsamples))
    err = float(numpy.max(numpy.abs(numpy.asarray(sol(z)) - z1)))
    rep.add('|f - z_1| on V', err, float(numpy.min(bound(z))), '<=', None, note=_CAUCHY_NOTE)
    excess = -numpy.inf
    for rad in (z1 / 2., z1, 2 * z1):
        z = rad * numpy.exp(2j * numpy.pi * numpy.arange(64) / 64.)
        lhs = numpy.log(numpy.abs(numpy.asarray(sol(z))))
        rhs = numpy.log(C * z1 / eps) + rad ** alpha
        excess = max(excess, float(numpy.max(lhs - rhs)))
    rep.add(
        'log|f| <= log(C z_1/eps) + |z|^(1/2+eps)', excess, 0., '<=', excess <= 0,
        note='max excess on |z| = z_1/2, z_1, 2 z_1',
        )
    t = float(numpy.max(sol.tail_sensitivity(numpy.array([p.zf(n) for n in range(1, p.N + 1)]))))
    rep.add('truncation sensitivity', t, '', '', None, note='outer half of the window, at z_n')
    return rep
