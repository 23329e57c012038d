""" part of wdlab module: orbits, classification, hyperbolic contraction, escape and growth """

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

import collections
import csv
import warnings

import numpy
from scipy.optimize import minimize_scalar

import gvar as _gvar

from ._numerics import TowerReal, tower_combine, AccuracyWarning, _bump
from ._geometry import HalfPlaneBand, strip_at
from ._params import StripParams, OrderParams, fast_growth_bound
from ._params import ladder_induction_strip, ladder_induction_order, _above_ladder
from ._mollify import inner_map_family
from ._report import CheckReport

_ORIGINAL_DEFAULTS = dict(
    samples=256, refine_tol=1e-12, case_a=0.2, case_c=5.,
    )
DEFAULTS = dict(_ORIGINAL_DEFAULTS)

def _set_defaults(clear=False, **defaults):
    """ Set defaults for orbit classification and maximum-modulus sweeps.

    Recognized keys: ``samples`` (circle samples for :func:`max_modulus`,
    256), ``refine_tol`` (angle tolerance of the refinement, 1e-12),
    ``case_a`` (lower distance threshold, 1/5) and ``case_c`` (upper
    threshold in units of ``eps_n``, 5).

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

def _add(x, c, d):
    return tower_combine(x, c, 'add', d)

def _jsonable(x):
    if isinstance(x, TowerReal):
        return x.format()
    if isinstance(x, (complex, numpy.complexfloating)):
        return [float(x.real), float(x.imag)]
    if isinstance(x, (float, numpy.floating)):
        return float(x)
    return x


OrbitStep = collections.namedtuple(
    'OrbitStep', ['n', 'z', 'height', 'region', 'budget', 'dist_lo', 'dist_hi', 'deviation'],
    )
OrbitStep.__doc__ = """ One orbit step.

    ``z`` is the position relative to ``i * height`` (model mode) or the
    point itself (numeric mode, ``height = 0``); ``region`` is the strip
    index holding the step (``-1`` if none); ``budget`` the radius of
    the error ball; ``dist_lo``/``dist_hi`` bracket the distance to the
    boundary of the component proxy; ``deviation`` is the distance to the
    model prediction (numeric mode).
    """

class OrbitRecord(object):
    """ Orbit with per-step positions, error budgets and boundary distances.

    Attributes:
        mode (str): ``'model'`` or ``'numeric'``.
        z0: Start point.
        steps (list): :class:`OrbitStep` per step, ``steps[0]`` is ``n = 0``.
        status (str): ``'complete'``, ``'escaped'`` or ``'nonfinite'``.
        family (str): Inner-map family (model mode).
    """
    def __init__(self, mode, z0, steps, status='complete', family=None):
        self.mode = mode
        self.z0 = z0
        self.steps = list(steps)
        self.status = status
        self.family = family

    def __len__(self):
        return len(self.steps)

    def position(self, n):
        """ Step ``n`` as a complex number, or its modulus as a :class:`TowerReal` beyond float range. """
        s = self.steps[n]
        if self.mode == 'numeric':
            return s.z
        h = float(s.height)
        if numpy.isfinite(h):
            return s.z + 1j * h
        return _add(s.height, float(s.z.imag) - abs(s.z.real), -1)

    @property
    def consistent(self):
        """ ``True`` if every model step's error ball lies inside its recorded strip. """
        return all(s.dist_lo > 0 for s in self.steps[1:] if self.mode == 'model')

    def to_dict(self):
        return dict(
            mode=self.mode, status=self.status, family=self.family,
            z0=_jsonable(complex(self.z0)),
            steps=[{k: _jsonable(v) for k, v in s._asdict().items()} for s in self.steps],
            )

    def to_csv(self, path):
        """ Write ``n, re, im, height, region, budget, dist_lo, dist_hi, deviation`` rows. """
        with open(path, 'w', newline='', encoding='utf-8') as ofile:
            writer = csv.writer(ofile)
            writer.writerow(['n', 're', 'im', 'height', 'region', 'budget', 'dist_lo', 'dist_hi', 'deviation'])
            for s in self.steps:
                writer.writerow([
                    s.n, repr(float(s.z.real)), repr(float(s.z.imag)), str(s.height),
                    s.region, repr(float(s.budget)), repr(float(s.dist_lo)), repr(float(s.dist_hi)),
                    repr(float(s.deviation)),
                    ])

    def format(self):
        lines = ['OrbitRecord(mode={}, family={}, status={}, steps={})'.format(
            self.mode, self.family, self.status, len(self.steps)
            )]
        for s in self.steps:
            lines.append('  n={:<3} z={:<28} height={:<20} budget={:<10.3g} dist=[{:.4g}, {:.4g}]'.format(
                s.n, str(complex(s.z)), str(s.height), s.budget, s.dist_lo, s.dist_hi
                ))
        return '\n'.join(lines) + '\n'

    def __str__(self):
        return self.format()


def _constant_step(family, k):
    if family.variant in ('constant', 'alternating', 'zero'):
        return True
    if family.variant == 'custom':
        return len(numpy.trim_zeros(family._coef(k), 'b')) <= 1
    return False

def _strip_distances(local, eps, budget):
    " bracket of the distance to the boundary of U with S^-eps <= U <= S^+eps "
    d = 0.5 - abs(local.imag)
    return d - eps - budget, d + eps + budget

def iterate_model(p, family=None, z0=None, nmax=None):
    """ Model orbit ``H_n(z0) = h_n(...h_1(z0 - i tau_1)...) + i tau_{n+1}``.

    Positions are kept relative to ``i tau_{n+1}`` so the orbit can be
    followed through heights beyond float range. The error ball of step
    ``n`` has radius ``sum_{k<=n} delta_k`` while the inner maps are
    1-Lipschitz and is reset to ``delta_n`` after a constant map.

    Args:
        p (StripParams): Parameters.
        family (InnerMapFamily or None): Default from ``p.family``.
        z0 (complex or None): Start in ``S^{-eps_1} + i tau_1``; default
            ``i tau_1``.
        nmax (int or None): Steps (at most and by default ``K``).

    Returns:
        :class:`OrbitRecord` in model mode.

    Raises:
        ValueError: If ``z0`` is outside the start strip or ``nmax`` is too large.
    """
    family = inner_map_family(p) if family is None else family
    nmax = p.K if nmax is None else int(nmax)
    if not 1 <= nmax <= p.K:
        raise ValueError('need 1 <= nmax <= K = {}: {}'.format(p.K, nmax))
    tau1 = float(p.tau[1])
    if z0 is None:
        local = 0j
        z0 = 1j * tau1
    else:
        if not numpy.isfinite(tau1):
            raise ValueError('tau_1 beyond float range; start from i tau_1')
        local = complex(z0) - 1j * tau1
    if not abs(local.imag) < 0.5 - p.eps[1]:
        raise ValueError('z0 not in S^-eps_1 + i tau_1: ' + str(z0))
    lo, hi = _strip_distances(local, p.eps[1], 0.)
    steps = [OrbitStep(0, local, p.tau[1], 1, 0., lo, hi, float('nan'))]
    budget = 0.
    for n in range(1, nmax + 1):
        local = complex(family(n, local))
        delta = p.delta[n]
        budget = delta if _constant_step(family, n) else budget + delta
        lo, hi = _strip_distances(local, p.eps[n + 1], budget)
        steps.append(OrbitStep(n, local, p.tau[n + 1], n + 1, budget, lo, hi, float('nan')))
    return OrbitRecord('model', z0, steps, family=family.variant)


class ClassificationReport(object):
    """ Boundary-convergence case of a model orbit.

    Attributes:
        case (str): ``'a'`` (stays away), ``'b'`` (split subsequences),
            ``'c'`` (converges to the boundary) or ``'inconclusive'``.
        lower, upper (dict): Distance bounds per step ``n >= 1``.
        evidence (dict): ``min_lower`` and ``max_upper_ratio`` (largest
            ``upper / eps_n``) over the window, and ``away``/``toward``
            index lists for case b.
    """
    def __init__(self, case, lower, upper, eps, evidence, inflate):
        self.case = case
        self.lower = lower
        self.upper = upper
        self.eps = eps
        self.evidence = evidence
        self.inflate = inflate

    def report(self, family=None, scale='faithful'):
        """ :class:`wdlab.CheckReport` with one row per step and the decision. """
        rep = CheckReport('classify', 'strips', scale)
        a, c = DEFAULTS['case_a'], DEFAULTS['case_c']
        for n in sorted(self.lower):
            lo, hi, eps = self.lower[n], self.upper[n], self.eps[n]
            rep.add('dist(f^{0}, bd U_{1}) lower'.format(n, n + 1), lo, a, '>=', None)
            rep.add('dist(f^{0}, bd U_{1}) upper'.format(n, n + 1), hi, c * eps, '<=', None)
        if family == 'identity':
            for n in sorted(self.lower):
                chain = 0.5 - self.eps[n] - 1. / 56.
                rep.add('1/2 - eps_{} - 1/56 > 1/5'.format(n), chain, 0.2, '>', chain > 0.2)
        expected = dict(identity='a', constant='c', alternating='b', zero='a').get(family)
        note = 'budgets x{:g}; min lower {:.4g}; max upper/eps_n {:.4g}'.format(
            self.inflate, self.evidence['min_lower'], self.evidence['max_upper_ratio']
            )
        rep.add(
            'case', self.case, expected if expected is not None else '-', '==',
            None if expected is None else self.case == expected, note=note,
            )
        return rep

    def format(self):
        return 'ClassificationReport(case={}, min lower={:.4g}, max upper/eps_n={:.4g})'.format(
            self.case, self.evidence['min_lower'], self.evidence['max_upper_ratio']
            )

    def __str__(self):
        return self.format()

def classify(orbit, p, inflate=1.):
    """ Classify a model orbit by its boundary distances.

    Step ``n`` lies in ``U_{n+1}``, bracketed by
    ``S^{-eps} + i tau <= U <= S^{+eps} + i tau`` with ``eps = eps_{n+1}``;
    the distance to the boundary is bracketed accordingly, widened by the
    error ball (times ``inflate``). Case a: every lower bound for
    ``n >= 2`` is at least 1/5. Case c: every upper bound is at most
    ``5 eps_n``. Case b: one parity class of steps satisfies the first
    criterion and the other the second.

    Returns:
        :class:`ClassificationReport`.
    """
    if orbit.mode != 'model':
        raise ValueError('classify needs a model orbit')
    a, c = DEFAULTS['case_a'], DEFAULTS['case_c']
    lower, upper, eps = {}, {}, {}
    for s in orbit.steps[1:]:
        lo, hi = _strip_distances(s.z, p.eps[s.n + 1], inflate * s.budget)
        lower[s.n], upper[s.n], eps[s.n] = lo, hi, p.eps[s.n]
    ns = sorted(lower)
    away = [n for n in ns if lower[n] >= a]
    toward = [n for n in ns if upper[n] <= c * eps[n]]
    evidence = dict(
        min_lower=min(lower[n] for n in ns) if ns else float('nan'),
        max_upper_ratio=max(upper[n] / eps[n] for n in ns) if ns else float('nan'),
        away=away, toward=toward,
        )
    tail = [n for n in ns if n >= 2]
    if tail and all(lower[n] >= a for n in tail):
        case = 'a'
    elif ns and all(upper[n] <= c * eps[n] for n in ns):
        case = 'c'
    else:
        case = 'inconclusive'
        for parity in (0, 1):
            even = [n for n in ns if n % 2 == parity]
            odd = [n for n in ns if n % 2 != parity]
            if even and odd and all(lower[n] >= a for n in even if n >= 2) \
                    and any(n >= 2 for n in even) and all(upper[n] <= c * eps[n] for n in odd):
                case = 'b'
                evidence['away'] = even
                evidence['toward'] = odd
                break
    return ClassificationReport(case, lower, upper, eps, evidence, inflate)


def _strip_limits(strip):
    if not isinstance(strip, HalfPlaneBand):
        raise ValueError('need a horizontal strip: ' + str(strip))
    lo, hi = strip._limits()
    if not (numpy.isfinite(lo) and numpy.isfinite(hi)):
        raise ValueError('strip must be bounded on both sides: ' + str(strip))
    return lo, hi

def hyperbolic_density_strip(strip, z):
    """ Hyperbolic density of a horizontal strip; ``pi/cos(pi y)`` for ``S``. """
    lo, hi = _strip_limits(strip)
    y = numpy.asarray(z, dtype=complex).imag
    if numpy.any((y <= lo) | (y >= hi)):
        raise ValueError('point outside the strip')
    w = hi - lo
    return (numpy.pi / w) / numpy.sin(numpy.pi * (y - lo) / w)

def hyperbolic_dist_strip(strip, z, w):
    """ Hyperbolic distance in a horizontal strip.

    The strip is mapped onto the upper half-plane by
    ``zeta -> exp(pi (zeta - i lo)/width)``, where the density is
    ``1/Im``; the common real factor is divided out so that large
    ``|Re z|`` does not overflow.

    Raises:
        ValueError: If a point lies outside the strip.
    """
    lo, hi = _strip_limits(strip)
    z = numpy.asarray(z, dtype=complex)
    w = numpy.asarray(w, dtype=complex)
    for x in (z, w):
        if numpy.any((x.imag <= lo) | (x.imag >= hi)):
            raise ValueError('point outside the strip')
    k = numpy.pi / (hi - lo)
    shift = numpy.maximum(z.real, w.real)
    a = numpy.exp(k * (z.real - shift) + 1j * k * (z.imag - lo))
    b = numpy.exp(k * (w.real - shift) + 1j * k * (w.imag - lo))
    t = numpy.abs(a - b) / numpy.sqrt(a.imag * b.imag)
    ans = 2 * numpy.arcsinh(t / 2)
    return ans[()] if ans.ndim == 0 else ans


def _contraction_logs(p, nmax):
    " lower bounds on -ln(delta_n / (2 eps_{n+1})) "
    return [
        _add(p.log_delta[n], _bump(float(numpy.log(2 * p.eps[n + 1])), -1), -1)
        for n in range(1, nmax + 1)
        ]

def _contraction_bound(s):
    " 4 log(1 + q) for q = exp(-s), as a float; 0 below float range "
    sf = float(s)
    if not numpy.isfinite(sf) or sf > 745.:
        return 0.
    return 4 * float(numpy.log1p(numpy.exp(-sf)))

def contraction_check(p, family=None, z0=None, w0=None, nmax=None, slack=1e-12):
    """ Hyperbolic contraction ``dist_T(f^n z, f^n w) <= 4 log(1 + delta_n/(2 eps_{n+1}))``.

    ``T_{n+1} = S^{-eps_{n+1}} + i tau_{n+1}``. Both model orbits are
    followed; the measured distance is between the two model points
    pushed apart along ``Im`` by their error balls.

    Args:
        p (StripParams): Parameters.
        family: ``'constant'``, ``'zero'`` or ``'alternating'`` family.
        z0, w0 (complex or None): Start points (default ``i tau_1`` and
            ``i tau_1 + 1``).

    Raises:
        ValueError: For families with non-constant maps, or if
            ``delta_n/(2 eps_{n+1})`` is not decreasing.
    """
    family = inner_map_family(p) if family is None else family
    if family.variant not in ('constant', 'zero', 'alternating'):
        raise ValueError('contraction check needs a constant-map family, not ' + family.variant)
    nmax = p.K if nmax is None else int(nmax)
    logs = _contraction_logs(p, nmax)
    for n in range(1, nmax):
        if not logs[n] > logs[n - 1]:
            raise ValueError(
                'delta_n/(2 eps_(n+1)) not decreasing at n = {}: -ln ratio {} then {}'.format(
                    n + 1, logs[n - 1], logs[n]
                    ))
    tau1 = float(p.tau[1])
    if w0 is None:
        w0 = (1j * tau1 + 1.) if numpy.isfinite(tau1) else None
    oz = iterate_model(p, family, z0, nmax)
    ow = iterate_model(p, family, w0, nmax) if w0 is not None else oz
    rep = CheckReport('contraction', 'strips', 'faithful')
    previous = None
    for n in range(1, nmax + 1):
        sz, sw = oz.steps[n], ow.steps[n]
        T = strip_at(0., p.eps[n + 1])
        bound = _contraction_bound(logs[n - 1])
        model = float(hyperbolic_dist_strip(T, sz.z, sw.z))
        if sz.z.imag >= sw.z.imag:
            a, b = sz.z + 1j * sz.budget, sw.z - 1j * sw.budget
        else:
            a, b = sz.z - 1j * sz.budget, sw.z + 1j * sw.budget
        inflated = float(hyperbolic_dist_strip(T, a, b))
        rep.add('model distance in T_{}'.format(n + 1), model, 0., '==', model == 0.)
        rep.add(
            'dist_T(f^{0} z, f^{0} w) <= 4 log(1 + delta_{0}/(2 eps_{1}))'.format(n, n + 1),
            inflated, bound, '<=', inflated <= bound + slack,
            note='-ln(delta/(2 eps)) >= ' + logs[n - 1].format(),
            )
        if previous is not None:
            rep.add(
                'bound decreasing at {}'.format(n), logs[n - 1], logs[n - 2], '>',
                logs[n - 1] > logs[n - 2], note='in -ln form',
                )
        previous = bound
    rep.add(
        'bound < 1e-3 by step {}'.format(nmax), previous, 1e-3, '<', previous < 1e-3,
        )
    return rep


def fast_escape_check(p, z0=None):
    """ Fast-escape criterion through the realized levels.

    Strips: for ``z0`` in ``S^{-eps_1} + i tau_1`` the sandwich gives
    ``|f^k(z0)| >= tau_{k+1} - 1/2 - eps_{k+1}``, compared against the
    ladder ``R_k`` of :func:`wdlab.ladder_induction_strip`. Order:
    ``|f^n(z0)| > z_{n+1} - 1/4 > z_{n+1}/100`` for ``z0`` in
    ``B(z_1, 1/4)``, combined with :func:`wdlab.ladder_induction_order`.
    Checking halts at the first failure.

    Returns:
        :class:`wdlab.CheckReport`; its last row is the conclusion.
    """
    if isinstance(p, StripParams):
        return _fast_escape_strip(p, z0)
    if isinstance(p, OrderParams):
        return _fast_escape_order(p, z0)
    raise ValueError('need StripParams or OrderParams')

def _fast_escape_strip(p, z0):
    if z0 is not None:
        tau1 = float(p.tau[1])
        if not abs(complex(z0).imag - tau1) < 0.5 - p.eps[1]:
            raise ValueError('z0 not in S^-eps_1 + i tau_1: ' + str(z0))
    rep = CheckReport('escape', 'strips', 'faithful')
    ladder = ladder_induction_strip(p)
    rep.extend(ladder)
    ok = ladder.passed
    R = _add(p.tau[2], -1.5, 1)
    for k in range(1, p.K + 1):
        if not ok:
            break
        if k > 1:
            R = fast_growth_bound(p.a[k - 1], p.eps[k - 1], R, 1)
        if k + 1 >= len(p.eps):
            break
        lo, holds, margin = _above_ladder(p.tau[k + 1], p.eps[k + 1], R, ok)
        note = '|f^{0}| >= |Im f^{0}| >= tau_{1} - 1/2 - eps_{1}'.format(k, k + 1)
        ok = rep.add(
            '|f^{0}(z0)| > R_{0}'.format(k), lo, R, '>', holds,
            note=note + ('; ' + margin if margin else ''),
            )
    rep.add(
        'A(f) membership criterion through level {}'.format(p.K), ok, True, '==', bool(ok),
        note='' if ok else 'halted at first failing inequality',
        )
    return rep

def _fast_escape_order(p, z0):
    if z0 is not None:
        z1 = p.zf(1)
        if numpy.isfinite(z1) and not abs(complex(z0) - z1) < 0.25:
            raise ValueError('z0 not in B(z_1, 1/4): ' + str(z0))
    scale = 'surrogate' if p.surrogate else 'faithful'
    rep = CheckReport('escape', 'order', scale)
    ok = True
    for n in range(1, p.N + 1):
        # z - 1/4 > z/100 exactly when z > 25/99
        ok = rep.add(
            '|f^{0}(z0)| > z_{1} - 1/4 > z_{1}/100'.format(n, n + 1), p.z_lo[n], 25. / 99., '>',
            p.z_lo[n] > 25. / 99., note='z_{} > 25/99'.format(n + 1),
            )
        if not ok:
            break
    if ok:
        ladder = ladder_induction_order(p)
        rep.extend(ladder)
        ok = ladder.passed
    rep.add(
        'A(f) membership criterion through level {}'.format(p.N), ok, True, '==', bool(ok),
        note='' if ok else 'halted at first failing inequality',
        )
    return rep


def iterate_numeric(f, z0, nmax, window, model=None):
    """ Plain iteration ``z_{n+1} = f(z_n)`` while the orbit stays in ``window``.

    Args:
        f: Callable (e.g. :class:`wdlab.DbarSolution`).
        z0 (complex): Start point inside ``window``.
        nmax (int): Largest number of steps.
        window (tuple): ``(xmin, xmax, ymin, ymax)``.
        model: Optional :class:`wdlab.StripModel`; each step then records
            its deviation from ``model.h`` of the previous point.

    Returns:
        :class:`OrbitRecord` in numeric mode; ``status`` is ``'escaped'``
        when a step leaves the window and ``'nonfinite'`` on NaN or overflow.
    """
    xmin, xmax, ymin, ymax = window

    def inside(z):
        return xmin <= z.real <= xmax and ymin <= z.imag <= ymax
    z = complex(z0)
    if not inside(z):
        raise ValueError('z0 outside the window: ' + str(z0))

    def step(n, z, dev):
        region, lo, hi = -1, float('nan'), float('nan')
        if model is not None:
            for k in range(model.kmax + 2):
                d = z.imag - model.tau[k]
                if abs(d) < 0.5:
                    region = k
                    lo, hi = _strip_distances(d * 1j, model.eps[k], 0.)
                    break
        return OrbitStep(n, z, 0, region, float('nan'), lo, hi, dev)
    steps = [step(0, z, float('nan'))]
    status = 'complete'
    for n in range(1, nmax + 1):
        with numpy.errstate(all='ignore'):
            znew = complex(f(z))
        if not numpy.isfinite(znew):
            status = 'nonfinite'
            break
        dev = float('nan')
        if model is not None and z.imag <= model.ymax:
            dev = abs(znew - complex(model.h(z)))
        steps.append(step(n, znew, dev))
        z = znew
        if not inside(z):
            status = 'escaped'
            break
    return OrbitRecord('numeric', complex(z0), steps, status=status)


def max_modulus(f, r, samples=None):
    """ ``M_f(r) = max_{|z| = r} |f(z)|``.

    Equispaced samples on the circle, then a bounded scalar search for
    the maximum in the two sample intervals around the best sample.
    """
    if not r > 0:
        raise ValueError('need r > 0: ' + str(r))
    samples = DEFAULTS['samples'] if samples is None else int(samples)
    theta = 2 * numpy.pi * numpy.arange(samples) / samples
    with numpy.errstate(over='ignore', invalid='ignore'):
        v = numpy.abs(numpy.asarray(f(r * numpy.exp(1j * theta)), dtype=complex))
    if not numpy.any(numpy.isfinite(v)):
        return float('nan')
    v = numpy.where(numpy.isfinite(v), v, -numpy.inf)
    i = int(numpy.argmax(v))
    h = 2 * numpy.pi / samples

    def neg(t):
        with numpy.errstate(over='ignore', invalid='ignore'):
            val = abs(complex(numpy.asarray(f(r * numpy.exp(1j * t)), dtype=complex)))
        return -val if numpy.isfinite(val) else 0.
    res = minimize_scalar(
        neg, bounds=(theta[i] - h, theta[i] + h), method='bounded',
        options=dict(xatol=DEFAULTS['refine_tol']),
        )
    return float(max(v[i], -res.fun))

max_modulus.DEFAULTS = DEFAULTS
max_modulus.set = _set_defaults

def order_ratios(f, radii, samples=None):
    """ ``log log M_f(r) / log r`` for each radius (``nan`` where undefined). """
    radii = numpy.asarray(radii, dtype=float)
    M = numpy.array([max_modulus(f, r, samples) for r in radii])
    with numpy.errstate(divide='ignore', invalid='ignore'):
        return numpy.log(numpy.log(M)) / numpy.log(radii)


class OrderEstimate(object):
    """ Least-squares growth order.

    Attributes:
        slope (gvar.GVar): Slope of ``log log M_f(r)`` against ``log r``
            with its fit uncertainty.
        residual (float): Root-mean-square fit residual.
        radii (array): Radii used.
        excluded (array): Radii dropped for non-finite or ``M <= e``.
    """
    def __init__(self, slope, residual, radii, excluded):
        self.slope = slope
        self.residual = residual
        self.radii = radii
        self.excluded = excluded

    def format(self):
        return 'OrderEstimate(slope={}, residual={:.3g}, {} radii)'.format(
            self.slope, self.residual, len(self.radii)
            )

    def __str__(self):
        return self.format()

def order_estimate(f, radii, samples=None):
    """ Order of growth as the slope of ``log log M_f(r)`` against ``log r``.

    Radii where ``M_f(r)`` is not finite or ``log log M_f(r)`` is
    undefined are excluded with an :class:`wdlab.AccuracyWarning`.

    Raises:
        ValueError: If radii are not increasing or fewer than four remain.
    """
    radii = numpy.asarray(radii, dtype=float)
    if radii.ndim != 1 or numpy.any(numpy.diff(radii) <= 0) or numpy.any(radii <= 1):
        raise ValueError('radii must increase and exceed 1')
    M = numpy.array([max_modulus(f, r, samples) for r in radii])
    good = numpy.isfinite(M) & (M > numpy.e)
    if not numpy.all(good):
        warnings.warn(
            'excluded radii with unusable M_f(r): ' + str(radii[~good]), AccuracyWarning
            )
    if numpy.sum(good) < 4:
        raise ValueError('need at least 4 usable radii; have ' + str(int(numpy.sum(good))))
    x = numpy.log(radii[good])
    y = numpy.log(numpy.log(M[good]))
    coef, cov = numpy.polyfit(x, y, 1, cov=True)
    resid = y - numpy.polyval(coef, x)
    slope = _gvar.gvar(coef[0], float(numpy.sqrt(max(cov[0, 0], 0.))))
    return OrderEstimate(slope, float(numpy.sqrt(numpy.mean(resid ** 2))), radii[good], radii[~good])

def explore_extent(f, p, nrays=16, tmax=None, npts=200):
    """ How far around ``z_1`` the points mapped into ``B(z_2, 1/4)`` reach.

    Along each of ``nrays`` rays from ``z_1`` the largest ``t <= tmax``
    (default ``3 r_1``) such that ``|f(z_1 + s e^{i theta}) - z_2| < 1/4``
    for every sampled ``s <= t`` is recorded. Rows are findings.
    """
    z1, z2 = p.zf(1), p.zf(2)
    if not (numpy.isfinite(z1) and numpy.isfinite(z2)):
        raise ValueError('explore_extent needs finite z_1 and z_2')
    tmax = 3 * p.rf(1) if tmax is None else float(tmax)
    rep = CheckReport('extent', 'order', 'surrogate')
    s = numpy.linspace(0., tmax, npts + 1)[1:]
    extents = []
    for j in range(nrays):
        th = 2 * numpy.pi * j / nrays
        with numpy.errstate(all='ignore'):
            v = numpy.asarray(f(z1 + s * numpy.exp(1j * th)), dtype=complex)
        ok = numpy.abs(v - z2) < 0.25
        bad = numpy.nonzero(~ok)[0]
        t = float(s[bad[0] - 1]) if len(bad) and bad[0] > 0 else (0. if len(bad) else tmax)
        extents.append(t)
        rep.add('extent along {:.4g}'.format(th), t, tmax, '<=', None)
    rep.add(
        'extent around z_1', min(extents), max(extents), 'range', None,
        note='numeric exploration only; boundedness of U_1 is not decided',
        )
    return rep
