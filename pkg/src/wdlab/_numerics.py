""" part of wdlab module: tower arithmetic, grids, finite differences, quadrature """

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
import functools

import numpy

import gvar as _gvar

B = 1e300
LNB = float(numpy.log(B))
_LNLNB = float(numpy.log(LNB))
_EXP_MAX = 709.0
_ADD_MAX = 1e280

class TruncationWarning(UserWarning):
    """ A sequence was cut short at the tower level cap. """
    pass

class SurrogateWarning(UserWarning):
    """ A parameter bundle runs below its faithful thresholds. """
    pass

class AccuracyWarning(UserWarning):
    """ A numerical routine hit a node cap or dropped samples. """
    pass

def _bump(v, direction, n=2):
    " move ``v`` by ``n`` ulps toward ``+inf`` (direction>0) or ``-inf`` (direction<0) "
    if direction == 0:
        return v
    target = numpy.inf if direction > 0 else -numpy.inf
    for i in range(n):
        v = numpy.nextafter(v, target)
    return float(v)

def _exp_dir(v, direction=0):
    return _bump(float(numpy.exp(v)), direction)

def _ln_dir(v, direction=0):
    return _bump(float(numpy.log(v)), direction)


@functools.total_ordering
class TowerReal(object):
    """ Extended-range real number ``sign * exp^level(mantissa)``.

    Numbers too large for a ``float`` (parameter ladders, iterated
    maximum-modulus bounds) are stored as an iterated exponential
    of a banded mantissa:

        ``level == 0``: the value is ``mantissa`` itself, ``|mantissa| < B``;

        ``level >= 1``: the value is ``sign * exp(exp(...exp(mantissa)))``
        (``level`` exponentials) with ``1 <= mantissa < ln B``.

    Here ``B = 1e300``. Representations need not be minimal:
    ``TowerReal(5., level=1)`` is a legitimate (non-minimal) form
    of ``exp(5.)``. Comparisons are exact up to the rounding of
    the floating-point ``exp`` used to line up different levels.

    Arithmetic is provided only through :func:`tower_exp`,
    :func:`tower_ln`, :func:`tower_combine`, :func:`tower_add` and
    :func:`tower_mul`, each of which takes a ``direction`` argument:
    ``direction=+1`` returns a guaranteed upper bound on the exact
    result, ``direction=-1`` a guaranteed lower bound, and
    ``direction=0`` the nearest representation.

    Args:
        mantissa (float): Value (``level=0``) or mantissa.
        level (int): Number of exponentials; default 0.
        sign (int): Sign for ``level >= 1``; default ``+1``.

    Attributes:
        level (int): Iterated-exponential depth.
        mantissa (float): Banded mantissa (signed when ``level == 0``).
        sign (int): ``+1``, ``-1`` or ``0``.
    """
    DEFAULTS = dict(level_cap=128)

    def __init__(self, mantissa=0.0, level=0, sign=1):
        level, mantissa, sign = TowerReal._canonical(
            int(level), float(mantissa), sign, 0
            )
        self.level = level
        self.mantissa = mantissa
        self.sign = sign

    @staticmethod
    def _canonical(level, m, sign, direction):
        if not numpy.isfinite(m):
            raise ValueError('mantissa not finite: ' + str(m))
        if level < 0:
            raise ValueError('negative level: ' + str(level))
        if level == 0:
            sign = int(numpy.sign(m))
            if abs(m) < B:
                return 0, m, sign
            # |m| >= B: climb one level; sign rides along
            m = _ln_dir(abs(m), direction * sign)
            level = 1
        elif sign not in (1, -1):
            raise ValueError('bad sign for tower level: ' + str(sign))
        # rounding direction on the magnitude
        mdir = direction * sign
        while m >= LNB:
            m = _ln_dir(m, mdir)
            level += 1
        while level > 0 and m < 1.:
            m = _exp_dir(m, mdir)
            level -= 1
            if level == 0:
                m = sign * m
        if level > TowerReal.DEFAULTS['level_cap']:
            raise OverflowError(
                'tower level cap exceeded: {} > {}'.format(
                    level, TowerReal.DEFAULTS['level_cap']
                    )
                )
        return level, m, sign

    @staticmethod
    def _make(level, m, sign=1, direction=0):
        ans = TowerReal.__new__(TowerReal)
        ans.level, ans.mantissa, ans.sign = TowerReal._canonical(
            level, m, sign, direction
            )
        return ans

    @staticmethod
    def set(clear=False, **defaults):
        """ Set default parameters for :class:`wdlab.TowerReal`.

        Only ``level_cap`` (default 128) is recognized. Returns
        a dictionary containing the old defaults, which can be
        restored with ``TowerReal.set(**old_defaults)``.
        """
        old_defaults = dict(TowerReal.DEFAULTS)
        if clear:
            TowerReal.DEFAULTS = dict(level_cap=128)
        for k in defaults:
            if k != 'level_cap':
                raise ValueError('unknown TowerReal default: ' + str(k))
            if int(defaults[k]) < 1:
                raise ValueError('level_cap must be positive')
            TowerReal.DEFAULTS[k] = int(defaults[k])
        return old_defaults

    @staticmethod
    def asTowerReal(x):
        " Convert ``x`` to a :class:`TowerReal` (no copy if already one). "
        if isinstance(x, TowerReal):
            return x
        return TowerReal(float(x))

    @staticmethod
    def from_log(lx, direction=0):
        """ Return ``exp(lx)`` where ``lx`` is a float or :class:`TowerReal`. """
        return tower_exp(TowerReal.asTowerReal(lx), direction=direction, _allow_negative=True)

    def log_value(self, direction=0):
        """ Natural log of ``abs(self)`` as a :class:`TowerReal`. """
        if self.sign == 0:
            raise ValueError('log of zero')
        if self.sign > 0:
            return tower_ln(self, direction=direction)
        return tower_ln(TowerReal._make(self.level, abs(self.mantissa), 1), direction=direction)

    def minimal(self, direction=0):
        """ Equivalent form with the smallest level the band allows. """
        level, m, sign = self.level, self.mantissa, self.sign
        if sign == 0 or level == 0:
            return self
        mdir = direction * sign
        while level >= 1:
            if level == 1:
                v = _exp_dir(m, mdir)
                if v >= B:
                    break
                level, m = 0, sign * v
                break
            if m >= _LNLNB:
                break
            v = _exp_dir(m, mdir)
            if v >= LNB:
                break
            level, m = level - 1, v
        return TowerReal._make(level, m, sign)

    def __float__(self):
        x = self.minimal()
        if x.level == 0:
            return float(x.mantissa)
        m = x.mantissa
        for i in range(x.level):
            if m > _EXP_MAX:
                return x.sign * numpy.inf
            m = float(numpy.exp(m))
        return x.sign * m

    def __abs__(self):
        if self.level == 0:
            return TowerReal(abs(self.mantissa))
        return TowerReal._make(self.level, self.mantissa, 1)

    def __neg__(self):
        if self.level == 0:
            return TowerReal(-self.mantissa)
        return TowerReal._make(self.level, self.mantissa, -self.sign)

    def _cmp(self, other):
        other = TowerReal.asTowerReal(other)
        if self.sign != other.sign:
            return -1 if self.sign < other.sign else 1
        if self.sign == 0:
            return 0
        if self.sign < 0:
            return -abs(self)._cmp(abs(other))
        if self.level == other.level:
            mx, my = self.mantissa, other.mantissa
            return (mx > my) - (mx < my)
        if self.level < other.level:
            return -other._cmp(self)
        # self.level > other.level: bring self down to other's level
        m = self.mantissa
        for i in range(self.level - other.level):
            if m > _EXP_MAX:
                return 1
            m = float(numpy.exp(m))
        my = other.mantissa
        return (m > my) - (m < my)

    def __eq__(self, other):
        try:
            return self._cmp(other) == 0
        except (TypeError, ValueError):
            return NotImplemented

    def __lt__(self, other):
        return self._cmp(other) < 0

    __hash__ = None

    def format(self, ndigits=6):
        """ Formatted string: ``'1.5'`` or ``'exp^3(4.2)'``. """
        if self.level == 0:
            return '{:.{}g}'.format(self.mantissa, ndigits)
        sgn = '-' if self.sign < 0 else ''
        return '{}exp^{}({:.{}g})'.format(sgn, self.level, self.mantissa, ndigits)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return 'TowerReal({!r}, level={}, sign={})'.format(
            self.mantissa, self.level, self.sign
            )


def tower_exp(x, direction=0, _allow_negative=False):
    """ ``exp(x)`` for a nonnegative :class:`TowerReal` ``x``.

    Raises ``ValueError`` for negative ``x`` and ``OverflowError`` if the
    result would pass the level cap (``TowerReal.DEFAULTS['level_cap']``).
    """
    x = TowerReal.asTowerReal(x)
    if x.sign < 0 and not _allow_negative:
        raise ValueError('tower_exp needs a nonnegative argument: ' + str(x))
    if x.level == 0:
        v = x.mantissa
        if v < LNB:
            return TowerReal._make(0, _exp_dir(v, direction))
        return TowerReal._make(1, v, 1, direction)
    if x.sign < 0:
        # exp of a huge negative number
        return TowerReal(0.0) if direction <= 0 else TowerReal(5e-324)
    return TowerReal._make(x.level + 1, x.mantissa, 1, direction)

def tower_ln(x, direction=0):
    """ ``ln(x)`` for positive :class:`TowerReal` ``x`` (exact for ``level >= 1``). """
    x = TowerReal.asTowerReal(x)
    if x.sign <= 0:
        raise ValueError('tower_ln needs a positive argument: ' + str(x))
    if x.level == 0:
        return TowerReal._make(0, _ln_dir(x.mantissa, direction))
    return TowerReal._make(x.level - 1, x.mantissa, 1, direction)

def tower_combine(x, c, op, direction=0):
    """ Combine :class:`TowerReal` ``x`` with moderate float ``c``.

    Supported operations:

        ``op='add'``: ``x + c``, with ``abs(c) <= 1e280`` whenever ``x``
        is beyond float range. The constant is then swamped by ``x``, and
        the result is ``x`` itself on the safe side of the requested
        ``direction`` or ``x`` nudged by two ulps of its mantissa
        otherwise (a nudge at level 2 moves the value by more than
        ``1e287``).

        ``op='mul'``: ``x * c`` for ``c > 0``, computed as
        ``exp(ln(x) + ln(c))`` beyond float range.

        ``op='pow'``: ``x ** c`` for ``c > 0`` and ``x > 0``, computed as
        ``exp(c * ln(x))`` beyond float range.

    Args:
        x: :class:`TowerReal` (or float).
        c (float): Moderate constant.
        op (str): ``'add'``, ``'mul'`` or ``'pow'``.
        direction (int): ``+1`` for an upper bound, ``-1`` for a lower
            bound, ``0`` for nearest.

    Returns:
        :class:`TowerReal` bound on the result.

    Raises:
        ValueError: If the operation shape is not supported or the
            requested direction cannot be guaranteed.
    """
    x = TowerReal.asTowerReal(x).minimal(direction)
    c = float(c)
    if not numpy.isfinite(c):
        raise ValueError('constant not finite: ' + str(c))
    if op == 'add':
        if x.level == 0:
            v = x.mantissa + c
            if not numpy.isfinite(v):
                raise ValueError('sum overflows: {} + {}'.format(x, c))
            # two-sum: exact sums need no bump
            bv = v - x.mantissa
            err = (x.mantissa - (v - bv)) + (c - bv)
            if err != 0.0:
                v = _bump(v, direction, 1)
            return TowerReal._make(0, v, 1, direction)
        if abs(c) > _ADD_MAX:
            raise ValueError('constant too large for tower add: ' + str(c))
        if c == 0.0 or direction == 0:
            return x
        mdir = x.sign * direction
        if (c > 0) == (direction < 0):
            # exact value lies on the requested side of x
            return x
        return TowerReal._make(x.level, _bump(x.mantissa, mdir), x.sign, direction)
    elif op == 'mul':
        if c <= 0:
            raise ValueError('tower mul needs a positive constant: ' + str(c))
        if c == 1.0:
            return x
        if x.level == 0:
            v = x.mantissa * c
            if abs(v) < B:
                return TowerReal._make(0, _bump(v, direction, 1), 1, direction)
        if x.sign <= 0:
            raise ValueError('tower mul needs a positive tower: ' + str(x))
        lx = tower_ln(x, direction)
        s = tower_combine(lx, _ln_dir(c, direction), 'add', direction)
        return tower_exp(s, direction, _allow_negative=True)
    elif op == 'pow':
        if c == 1.0:
            return x
        if c <= 0:
            raise ValueError('tower pow needs a positive exponent: ' + str(c))
        if x.sign <= 0:
            raise ValueError('tower pow needs a positive base: ' + str(x))
        if x.level == 0:
            with numpy.errstate(over='ignore'):
                v = float(numpy.power(x.mantissa, c))
            if v < B:
                return TowerReal._make(0, _bump(v, direction, 1), 1, direction)
        # x beyond float range here, so ln(x) > 0
        s = tower_combine(tower_ln(x, direction), c, 'mul', direction)
        return tower_exp(s, direction)
    raise ValueError('unknown tower operation: ' + str(op))

def tower_add(x, y, direction=0):
    """ Directed sum of two nonnegative :class:`TowerReal`\\s. """
    x = TowerReal.asTowerReal(x).minimal(direction)
    y = TowerReal.asTowerReal(y).minimal(direction)
    if x.sign < 0 or y.sign < 0:
        raise ValueError('tower_add needs nonnegative arguments')
    if x < y:
        x, y = y, x
    if y.sign == 0:
        return x
    if y.level == 0 and y.mantissa <= _ADD_MAX:
        return tower_combine(x, y.mantissa, 'add', direction)
    # both beyond 1e280: ln(x + y) = ln x + log1p(exp(ln y - ln x))
    lx = tower_ln(x, direction).minimal(direction)
    if lx.level == 0:
        lx_opp = tower_ln(x, -direction).minimal(-direction)
        ly = tower_ln(y, direction).minimal(direction)
        d = _bump(ly.mantissa - lx_opp.mantissa, direction)
        t = _bump(float(numpy.log1p(numpy.exp(min(d, 0.0)))), direction)
        return tower_exp(tower_combine(lx, t, 'add', direction), direction)
    # x so large that y/x is only known to be in (0, 1]
    if direction < 0:
        return x
    if direction == 0 and x != y:
        return x
    return tower_exp(tower_combine(lx, _bump(float(numpy.log(2.)), 1), 'add', direction), direction)

def tower_mul(x, y, direction=0):
    """ Directed product of two positive :class:`TowerReal`\\s. """
    x = TowerReal.asTowerReal(x).minimal(direction)
    y = TowerReal.asTowerReal(y).minimal(direction)
    if x.sign <= 0 or y.sign <= 0:
        raise ValueError('tower_mul needs positive arguments')
    if x.level == 0 and y.level == 0:
        v = x.mantissa * y.mantissa
        if v < B:
            return TowerReal._make(0, _bump(v, direction, 1), 1, direction)
    if y.level == 0:
        return tower_combine(x, y.mantissa, 'mul', direction)
    if x.level == 0:
        return tower_combine(y, x.mantissa, 'mul', direction)
    lx = tower_ln(x, direction)
    ly = tower_ln(y, direction)
    return tower_exp(tower_add(lx, ly, direction), direction)


class SampledField(object):
    """ Values of a real or complex function on a rectangular grid.

    Node ``[j, i]`` sits at ``origin + spacing * (i + 1j * j)`` so
    the row index follows ``Im(z)``. Masked nodes (``mask[j, i]``
    false) carry ``nan``.

    Args:
        origin (complex): Position of node ``[0, 0]``.
        spacing (float): Grid spacing (positive).
        shape (tuple): ``(ny, nx)`` with both at least 2.
        values (array): Node values, shape ``shape``.
        mask (array or None): Boolean array, ``True`` for valid nodes.
    """
    def __init__(self, origin, spacing, shape, values, mask=None):
        spacing = float(spacing)
        if not spacing > 0:
            raise ValueError('grid spacing must be positive: ' + str(spacing))
        shape = tuple(int(n) for n in shape)
        if len(shape) != 2 or min(shape) < 2:
            raise ValueError('grid must be at least 2x2: ' + str(shape))
        values = numpy.array(values)
        if values.shape != shape:
            raise ValueError('values shape {} != grid shape {}'.format(values.shape, shape))
        if mask is None:
            mask = numpy.ones(shape, dtype=bool)
        else:
            mask = numpy.array(mask, dtype=bool)
            if mask.shape != shape:
                raise ValueError('mask shape mismatch')
        if not numpy.iscomplexobj(values):
            values = numpy.asarray(values, dtype=float)
        values[~mask] = numpy.nan
        self.origin = complex(origin)
        self.spacing = spacing
        self.shape = shape
        self.values = values
        self.mask = mask

    @classmethod
    def from_function(cls, f, origin, spacing, shape, mask=None):
        """ Sample ``f`` (vectorized over complex arrays) on the grid. """
        tmp = cls(origin, spacing, shape, numpy.zeros(shape), mask)
        z = tmp.points()
        values = numpy.asarray(f(z))
        if values.shape != tmp.shape:
            values = numpy.broadcast_to(values, tmp.shape).copy()
        return cls(origin, spacing, shape, values, tmp.mask)

    @property
    def iscomplex(self):
        return numpy.iscomplexobj(self.values)

    def points(self):
        """ Complex array of node positions. """
        ny, nx = self.shape
        x = numpy.arange(nx) * self.spacing
        y = numpy.arange(ny) * self.spacing
        return self.origin + x[None, :] + 1j * y[:, None]

    def to_csv(self, path):
        """ Write valid nodes as CSV with header ``re,im,value_re,value_im``. """
        z = self.points()[self.mask]
        v = self.values[self.mask]
        with open(path, 'w', newline='', encoding='utf-8') as ofile:
            writer = csv.writer(ofile)
            writer.writerow(['re', 'im', 'value_re', 'value_im'])
            for zi, vi in zip(z, v):
                if self.iscomplex:
                    row = [zi.real, zi.imag, vi.real, vi.imag]
                    writer.writerow(['{:.17g}'.format(r) for r in row])
                else:
                    row = ['{:.17g}'.format(r) for r in (zi.real, zi.imag, vi)]
                    writer.writerow(row + [''])


def wirtinger_fd(f, z, h=None, scale=1.0):
    """ Central-difference Wirtinger derivatives of ``f`` at ``z``.

    Uses the four-point stencil ``z +- h``, ``z +- 1j*h``. For
    holomorphic ``f`` the ``dzbar`` part is ``O(h**2)``.

    Args:
        f: Complex function (vectorized if ``z`` is an array).
        z (complex or array): Evaluation point(s).
        h (float or None): Step; default ``1e-4 * scale``.
        scale (float): Local length scale of ``f``.

    Returns:
        Tuple ``(dz, dzbar)``.

    Raises:
        ValueError: If ``f`` is not finite on the stencil.
    """
    if h is None:
        h = DEFAULTS['fd_step'] * scale
    if not h > 0:
        raise ValueError('finite-difference step must be positive: ' + str(h))
    z = numpy.asarray(z, dtype=complex)
    fp = numpy.asarray(f(z + h))
    fm = numpy.asarray(f(z - h))
    fpi = numpy.asarray(f(z + 1j * h))
    fmi = numpy.asarray(f(z - 1j * h))
    for fs in (fp, fm, fpi, fmi):
        if not numpy.all(numpy.isfinite(fs)):
            raise ValueError('non-finite value on finite-difference stencil near ' + str(z))
    fx = (fp - fm) / (2 * h)
    fy = (fpi - fmi) / (2 * h)
    dz = (fx - 1j * fy) / 2
    dzbar = (fx + 1j * fy) / 2
    if dz.ndim == 0:
        return complex(dz), complex(dzbar)
    return dz, dzbar


_ORIGINAL_DEFAULTS = dict(
    fd_step=1e-4, nodes=32, method='gauss', max_cell=None,
    vegas_neval=20000, vegas_nitn=10,
    )
DEFAULTS = dict(_ORIGINAL_DEFAULTS)

def _set_defaults(clear=False, **defaults):
    """ Set defaults for :func:`wirtinger_fd` and :func:`quad_region`.

    Recognized keys: ``fd_step``, ``nodes``, ``method``, ``max_cell``,
    ``vegas_neval``, ``vegas_nitn``. Sample usage::

        old_defaults = wdlab.quad_region.set(nodes=64)
        ...
        wdlab.quad_region.set(**old_defaults)

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
        if k == 'method' and defaults[k] not in _QUAD_METHODS:
            raise ValueError('unknown quadrature method: ' + str(defaults[k]))
        DEFAULTS[k] = defaults[k]
    return old_defaults


class QuadResult(object):
    """ Result of :func:`quad_region`.

    Attributes:
        value (complex or float): Integral estimate.
        error (float): Error estimate from node doubling (or the
            Monte Carlo standard deviation for ``method='vegas'``).
        neval (int): Number of integrand evaluations.
        method (str): Quadrature rule used.
    """
    def __init__(self, value, error, neval, method):
        if numpy.iscomplexobj(value) and numpy.imag(value) == 0:
            value = float(numpy.real(value))
        self.value = value
        self.error = float(error)
        self.neval = int(neval)
        self.method = method

    @property
    def gvar(self):
        """ ``gvar.GVar`` (or pair of them for complex values) ``value +- error``. """
        if numpy.iscomplexobj(self.value):
            return numpy.array([
                _gvar.gvar(self.value.real, self.error),
                _gvar.gvar(self.value.imag, self.error),
                ])
        return _gvar.gvar(self.value, self.error)

    def __complex__(self):
        return complex(self.value)

    def __float__(self):
        return float(numpy.real(self.value))

    def format(self):
        return '{} +- {:.3g} ({} evaluations, {})'.format(
            self.value, self.error, self.neval, self.method
            )

    def __str__(self):
        return self.format()


def _rule(n, lo, hi, method, periodic=False):
    " nodes and weights for [lo, hi] "
    if periodic:
        x = lo + (hi - lo) * numpy.arange(n) / n
        return x, numpy.full(n, (hi - lo) / n)
    if method == 'midpoint':
        x = lo + (hi - lo) * (numpy.arange(n) + 0.5) / n
        return x, numpy.full(n, (hi - lo) / n)
    from scipy.special import roots_legendre
    t, w = roots_legendre(n)
    return lo + (hi - lo) * (t + 1) / 2, w * (hi - lo) / 2

def _cell_nodes(cell, n, method):
    " quadrature points, weights (Jacobian included) and clip for one cell "
    kind = cell[0]
    if kind == 'affine':
        origin, e1, e2, srange, trange, clip = cell[1:]
        s, ws = _rule(n, srange[0], srange[1], method)
        t, wt = _rule(n, trange[0], trange[1], method)
        jac = abs((numpy.conj(e1) * e2).imag)
        z = origin + s[None, :] * e1 + t[:, None] * e2
        w = wt[:, None] * ws[None, :] * jac
    elif kind == 'polar':
        center, rrange, trange, clip = cell[1:]
        periodic = abs(trange[1] - trange[0] - 2 * numpy.pi) < 1e-14
        r, wr = _rule(n, rrange[0], rrange[1], method)
        th, wth = _rule(2 * n if periodic else n, trange[0], trange[1], method, periodic)
        z = center + r[None, :] * numpy.exp(1j * th[:, None])
        w = wth[:, None] * (wr * r)[None, :]
    else:
        raise ValueError('unknown cell kind: ' + str(kind))
    return z.ravel(), w.ravel(), clip

def _integrate_cells(f, cells, n, method):
    total = 0.0
    neval = 0
    for cell in cells:
        z, w, clip = _cell_nodes(cell, n, method)
        if clip is not None:
            keep = clip(z)
            z, w = z[keep], w[keep]
        if len(z) == 0:
            continue
        fz = numpy.asarray(f(z))
        if not numpy.all(numpy.isfinite(fz)):
            raise ValueError('integrand not finite on quadrature nodes')
        total = total + numpy.sum(w * fz)
        neval += len(z)
    return total, neval

def _vegas_integrate(f, region, window, neval, nitn, seed):
    import vegas
    if window is None:
        window = region.bbox()
    xmin, xmax, ymin, ymax = window
    if seed is not None:
        _gvar.ranseed(seed)
    integ = vegas.Integrator([[xmin, xmax], [ymin, ymax]])

    @vegas.lbatchintegrand
    def fv(x):
        z = x[:, 0] + 1j * x[:, 1]
        inside = numpy.asarray(region.contains(z), dtype=bool)
        ans = numpy.zeros((len(z), 2), dtype=float)
        if numpy.any(inside):
            fz = numpy.asarray(f(z[inside]), dtype=complex)
            ans[inside, 0] = fz.real
            ans[inside, 1] = fz.imag
        return ans

    integ(fv, nitn=max(1, nitn // 2), neval=neval)
    result = integ(fv, nitn=nitn, neval=neval)
    re, im = result[0], result[1]
    value = complex(re.mean, im.mean)
    error = float(numpy.hypot(re.sdev, im.sdev))
    return QuadResult(value, error, nitn * neval, 'vegas')

_QUAD_METHODS = ('gauss', 'midpoint', 'vegas')

def quad_region(f, region, nodes=None, method=None, window=None, max_cell=None, seed=None):
    """ Integrate ``f`` over ``region`` (intersected with ``window``).

    The region is tiled into affine and polar cells
    (:meth:`wdlab.Region.cells`); each cell gets a tensor-product
    rule with ``nodes`` points per direction:

        ``method='gauss'``: Gauss-Legendre (trapezoid in full-circle
        angles). The estimate uses ``2 * nodes``, the error is the change
        from ``nodes``.

        ``method='midpoint'``: midpoint rule with Richardson
        extrapolation ``(4 * I(2n) - I(n)) / 3`` and error
        ``|I(2n) - I(n)| / 3``.

        ``method='vegas'``: adaptive Monte Carlo over the bounding box
        of ``window`` (or the region) using :mod:`vegas`.

    Args:
        f: Integrand taking a complex :mod:`numpy` array.
        region: :class:`wdlab.Region`.
        nodes (int): Nodes per direction and cell (default 32).
        method (str): ``'gauss'``, ``'midpoint'`` or ``'vegas'``.
        window (tuple or None): ``(xmin, xmax, ymin, ymax)`` truncation;
            required for unbounded regions.
        max_cell (float or None): Largest cell diameter.
        seed (int or None): Seed for ``method='vegas'``.

    Returns:
        :class:`QuadResult`.
    """
    nodes = DEFAULTS['nodes'] if nodes is None else int(nodes)
    method = DEFAULTS['method'] if method is None else method
    max_cell = DEFAULTS['max_cell'] if max_cell is None else max_cell
    if method not in _QUAD_METHODS:
        raise ValueError('unknown quadrature method: ' + str(method))
    if nodes < 1:
        raise ValueError('need at least one node per direction')
    if window is None and not region.bounded:
        raise ValueError('unbounded region needs an explicit window')
    if method == 'vegas':
        return _vegas_integrate(
            f, region, window, DEFAULTS['vegas_neval'],
            DEFAULTS['vegas_nitn'], seed
            )
    cells = region.cells(window=window, max_size=max_cell)
    i1, n1 = _integrate_cells(f, cells, nodes, method)
    i2, n2 = _integrate_cells(f, cells, 2 * nodes, method)
    if method == 'midpoint':
        value = (4 * i2 - i1) / 3.
        error = abs(i2 - i1) / 3.
    else:
        value = i2
        error = abs(i2 - i1)
    return QuadResult(value, error, n1 + n2, method)

quad_region.DEFAULTS = DEFAULTS
quad_region.set = _set_defaults
wirtinger_fd.set = _set_defaults
