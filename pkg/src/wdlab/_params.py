""" part of wdlab module: parameter bundles, validation and escape ladders """

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
import warnings

import numpy

from ._numerics import TowerReal, tower_exp, tower_ln, tower_combine
from ._numerics import tower_add, tower_mul, _bump
from ._numerics import TruncationWarning, SurrogateWarning
from ._report import CheckReport

# directed shorthands; d = +1 upper bound, -1 lower bound
def _add(x, c, d):
    return tower_combine(x, c, 'add', d)

def _mul(x, c, d):
    return tower_combine(x, c, 'mul', d)

def _pow(x, c, d):
    return tower_combine(x, c, 'pow', d)

def _T(x):
    return TowerReal.asTowerReal(x)

# (n_k, b_k) with |h_k(z)| <= |z|**n_k + b_k on S
FAMILY_BOUNDS = dict(
    identity=(1, 1), constant=(0, 1), alternating=(0, 1), zero=(0, 1),
    )

_TAU_SAFETY = 1.01
_FLOAT_TAU_MAX = 1e20

def make_eps_geometric(K, eps0=0.2):
    """ Widths ``eps_0 = eps0`` and ``eps_k = 8**(-k)`` for ``k = 1..K``.

    The tail ``sum_{k>=1} 8**(-k)`` equals ``1/7``.

    Returns:
        :mod:`numpy` array of length ``K + 1``.
    """
    if K < 1:
        raise ValueError('need K >= 1: ' + str(K))
    eps = 8.0 ** (-numpy.arange(K + 1))
    eps[0] = float(eps0)
    return eps

def derive_log_delta(eps_k, tau_k):
    """ Lower bound on ``-ln(delta_k)`` for ``delta_k = 3 / (eps_k * tau_k**2)``. """
    if not eps_k > 0:
        raise ValueError('eps_k must be positive: ' + str(eps_k))
    tau_k = _T(tau_k)
    if not tau_k > 0:
        raise ValueError('tau_k must be positive: ' + str(tau_k))
    two_ln_tau = _mul(tower_ln(tau_k, -1), 2., -1) if tau_k > 1 else None
    c = _bump(float(numpy.log(eps_k / 3.)), -1)
    if two_ln_tau is None:
        # tau <= 1: plain float
        v = 2 * float(numpy.log(float(tau_k))) + c
        return TowerReal(_bump(v, -1))
    return _add(two_ln_tau, c, -1)

def derive_delta(eps_k, tau_k):
    """ ``delta_k = 3 / (eps_k * tau_k**2)`` as a float upper bound.

    Exact (up to one rounding, taken upward) while ``tau_k**2`` fits in a
    float; otherwise computed from :func:`derive_log_delta` and floored at
    the smallest positive float ``5e-324``.
    """
    if not eps_k > 0:
        raise ValueError('eps_k must be positive: ' + str(eps_k))
    tau = _T(tau_k)
    if not tau > 0:
        raise ValueError('tau_k must be positive: ' + str(tau_k))
    if tau < 1e150:
        t = float(tau)
        return _bump(3. / (eps_k * t * t), 1)
    nl = derive_log_delta(eps_k, tau).minimal(-1)
    if nl.level == 0 and nl.mantissa < 744.:
        return max(_bump(float(numpy.exp(-nl.mantissa)), 1), 5e-324)
    return 5e-324

def fast_growth_bound(a, eps, t, direction=1):
    """ Directed bound on ``4 * exp(a * exp(pi / eps * t))`` for ``t >= 0``.

    This is the growth bound for the approximant between strips ``k``
    and ``k+1`` evaluated at ``|Re(z)| = t``.
    """
    t = _T(t)
    if t.sign < 0:
        raise ValueError('fast_growth_bound needs t >= 0: ' + str(t))
    c = _bump(numpy.pi / eps, direction)
    u = _mul(t, c, direction) if t.sign > 0 else TowerReal(0.0)
    e = tower_exp(u, direction)
    g = tower_exp(tower_mul(_T(a), e, direction), direction)
    return _mul(g, 4., direction)


class StripDraft(object):
    """ Partial strip bundle used while ``a_k`` and ``tau_k`` are co-computed. """
    def __init__(self, eps, tau, a=()):
        self.eps = numpy.asarray(eps, dtype=float)
        self.tau = [_T(t) for t in tau]
        self.a = [_T(ai) for ai in a]


class StripParams(object):
    """ Parameters of the strip construction, truncated at depth ``K``.

    Args:
        eps (array): Widths ``eps_0 .. eps_{K+1}``.
        tau (list): Heights ``tau_0 .. tau_{K+1}`` (floats or
            :class:`wdlab.TowerReal`).
        a (list): Weights ``a_0 .. a_K``.
        nb (list or None): Inner-map bounds ``(n_k, b_k)`` for ``k = 0..K``;
            default from ``family``.
        family (str): Inner-map family name (``'identity'``, ``'constant'``,
            ``'alternating'``, ``'zero'`` or ``'custom'``).
        fast_mode (bool): ``True`` if the heights follow the fast-growth rule.

    Attributes:
        K (int): Truncation depth.
        delta (list): Float upper bounds on ``delta_k``, ``k = 0..K+1``.
        log_delta (list): Lower bounds on ``-ln(delta_k)`` (:class:`TowerReal`).
    """
    def __init__(self, eps, tau, a, nb=None, family='identity', fast_mode=False):
        eps = numpy.array(eps, dtype=float)
        if eps.ndim != 1 or len(eps) < 3:
            raise ValueError('need eps_0 .. eps_{K+1} with K >= 1')
        K = len(eps) - 2
        if len(tau) != K + 2:
            raise ValueError('need {} heights tau_0 .. tau_{}; got {}'.format(K + 2, K + 1, len(tau)))
        if len(a) != K + 1:
            raise ValueError('need {} weights a_0 .. a_{}; got {}'.format(K + 1, K, len(a)))
        if nb is None:
            if family not in FAMILY_BOUNDS:
                raise ValueError('need explicit (n_k, b_k) for family ' + str(family))
            nb = [FAMILY_BOUNDS[family]] * (K + 1)
        if len(nb) != K + 1:
            raise ValueError('need (n_k, b_k) for k = 0..K')
        self.eps = eps
        self.tau = [_T(t) for t in tau]
        self.a = [_T(ai) for ai in a]
        self.nb = [(int(n), float(b)) for n, b in nb]
        self.family = family
        self.fast_mode = bool(fast_mode)
        self.K = K
        self.delta = [derive_delta(eps[k], self.tau[k]) for k in range(K + 2)]
        self.log_delta = [derive_log_delta(eps[k], self.tau[k]) for k in range(K + 2)]

    def tau_float(self, k):
        """ ``tau_k`` as a float (``inf`` beyond float range). """
        return float(self.tau[k])

    def with_family(self, family, nb=None):
        """ Same heights and weights with another inner-map family. """
        return StripParams(
            self.eps, self.tau, self.a, nb=nb, family=family, fast_mode=self.fast_mode
            )

    def format(self):
        lines = ['StripParams(K={}, family={}, fast_mode={})'.format(self.K, self.family, self.fast_mode)]
        for k in range(self.K + 2):
            a = self.a[k].format() if k <= self.K else '-'
            lines.append('  k={:<3} eps={:<12.6g} tau={:<22} a={:<22} delta={:.4g}'.format(
                k, self.eps[k], self.tau[k].format(), a, self.delta[k]
                ))
        return '\n'.join(lines) + '\n'

    def __str__(self):
        return self.format()


def _ln_P(t, n, b, tau0, tauk1):
    " ln((t**n + b)**2 + tau0**2 + tauk1**2) for t > 0 "
    lt = numpy.log(t)
    lb = numpy.log(b) if b > 0 else -numpy.inf
    head = numpy.logaddexp(n * lt, lb)
    return numpy.logaddexp(2 * head, numpy.logaddexp(2 * numpy.log(tau0), 2 * numpy.log(tauk1)))

def _a_problem(k, draft, nb, C, pfcn, qfcn):
    " closures for the two a_k conditions (float regime) "
    from scipy.special import roots_laguerre, logsumexp
    eps = draft.eps[k]
    tau0 = float(draft.tau[0])
    tauk = float(draft.tau[k])
    tauk1 = float(draft.tau[k + 1])
    n, b = nb
    T2 = (tauk + 1.) ** 2

    if pfcn is None:
        def lnP(t):
            return _ln_P(t, n, b, tau0, tauk1)
    else:
        def lnP(t):
            return numpy.log(numpy.asarray(pfcn(t), dtype=float) * numpy.ones_like(t))

    if qfcn is None:
        def lnQ(x):
            t = x * x + T2
            return 2 * numpy.log(C) + lnP(t) + 4 * numpy.log(t)
    else:
        def lnQ(x):
            return numpy.log(numpy.asarray(qfcn(x), dtype=float) * numpy.ones_like(x))

    # Gauss-Laguerre is exact for the polynomial Q (degree 4 n + 8)
    m = max(64, (4 * n + 9) // 2 + 1)
    y, w = roots_laguerre(m)
    target = float(numpy.log(eps / (2. * 3. ** k)))

    def ln_integral(a):
        s = a / 4.
        return -numpy.log(s) + logsumexp(lnQ(y / s), b=w)

    def cond_i(a, npts):
        x = numpy.linspace(0., max(10., 4. * tauk1), npts)
        lhs = numpy.log(numpy.log(2.) + lnP(numpy.sqrt(x * x + (tauk1 - 0.5) ** 2)))
        rhs = numpy.log(a) + numpy.pi * x / eps
        return bool(numpy.all(lhs <= rhs))

    return ln_integral, cond_i, target

def check_a(k, draft, nb, a, C=16., npts=4000, pfcn=None, qfcn=None):
    """ Re-check both ``a_k`` conditions at ``npts`` sample points.

    Returns:
        Tuple ``(growth_ok, integral, target)``: whether the pointwise
        growth condition holds on the samples, the ``Q_k`` integral and
        the bound ``eps_k / (2 * 3**k)`` it must stay below.
    """
    ln_integral, cond_i, target = _a_problem(k, draft, nb, C, pfcn, qfcn)
    a = float(a)
    return cond_i(a, npts), float(numpy.exp(ln_integral(a))), float(numpy.exp(target))

def choose_a(k, draft, nb, C=16., pfcn=None, qfcn=None):
    """ Smallest tested weight ``a_k`` meeting the growth and integral conditions.

    While ``tau_{k+1} < 1e20`` the conditions are tested directly:

        (i) ``P_k(sqrt(x**2 + (tau_{k+1} - 1/2)**2)) <= exp(a_k * exp(pi*x/eps_k)) / 2``
        on sampled ``x >= 0`` (compared as ``ln ln``), where
        ``P_k(t) = (t**n_k + b_k)**2 + tau_0**2 + tau_{k+1}**2``;

        (ii) ``int_0^inf Q_k(x) exp(-a_k x / 4) dx < eps_k / (2 * 3**k)`` with
        ``Q_k(x) = C**2 * P_k(x**2 + (tau_k + 1)**2) * (x**2 + (tau_k + 1)**2)**4``,
        integrated by Gauss-Laguerre quadrature in log domain.

    The search starts at ``max(10 * tau_0, a_{k-1})``, doubles until both hold
    and bisects to relative precision ``1e-6``. The result is re-checked on a
    ten times denser grid.

    Beyond float range a closed-form sufficient weight is used instead:
    with ``M = max(1, b_k, tau_0, tau_{k+1}, tau_k + 1)``, ``d_P = max(4 n_k, 2)``
    and ``d = d_P + 8``, ``a_k`` is the directed upper bound of the largest of
    ``96 C**2 3**k M**d / eps_k``, ``8 d / M``, ``ln 12 + d_P ln M + 1``,
    ``2 a_{k-1}`` and ``10 tau_0``.

    Args:
        k (int): Level.
        draft (StripDraft): Needs ``eps``, ``tau_0 .. tau_{k+1}`` and ``a_0 .. a_{k-1}``.
        nb (tuple): ``(n_k, b_k)``.
        C (float): Gradient constant of the cutoff (16).
        pfcn, qfcn: Optional replacements for ``P_k``/``Q_k`` (vectorized).

    Returns:
        :class:`wdlab.TowerReal`.

    Raises:
        RuntimeError: If no weight below ``1e300`` works (float regime).
    """
    if k < 0 or len(draft.tau) < k + 2:
        raise ValueError('need tau_0 .. tau_{k+1} for k = ' + str(k))
    if k > 0 and len(draft.a) < k:
        raise ValueError('need a_{k-1} for k = ' + str(k))
    a_prev = draft.a[k - 1] if k > 0 else None
    tau0 = draft.tau[0]
    if draft.tau[k + 1] >= _FLOAT_TAU_MAX or (a_prev is not None and a_prev >= 1e280):
        return _tower_a(k, draft, nb, C)
    ln_integral, cond_i, target = _a_problem(k, draft, nb, C, pfcn, qfcn)

    def ok(a, npts=400):
        return cond_i(a, npts) and ln_integral(a) < target

    start = _bump(10. * float(tau0), 1, 1)
    if a_prev is not None:
        start = max(start, float(a_prev) * (1 + 1e-6))
    if ok(start):
        a = start
    else:
        lo, hi = start, 2. * start
        while not ok(hi):
            lo, hi = hi, 2. * hi
            if hi > 1e300:
                raise RuntimeError(
                    'a_{} search cap exceeded; last integral = {:.6g}, target {:.6g}'.format(
                        k, float(numpy.exp(ln_integral(lo))), float(numpy.exp(target))
                        )
                    )
        while hi - lo > 1e-6 * hi:
            mid = (lo + hi) / 2.
            if ok(mid):
                hi = mid
            else:
                lo = mid
        a = hi
    while not ok(a, 4000):
        a *= 2.
    return TowerReal(a)

def _tower_a(k, draft, nb, C):
    n, b = nb
    eps = draft.eps[k]
    M = max(
        TowerReal(1.), TowerReal(b), draft.tau[0], draft.tau[k + 1],
        _add(draft.tau[k], 1., 1),
        )
    dP = max(4 * n, 2)
    d = dP + 8
    c1 = _bump(96. * C * C * 3. ** k / eps, 1)
    terms = [
        _mul(_pow(M, d, 1), c1, 1),
        TowerReal(_bump(8. * d / max(1., float(M)), 1)),
        _add(_mul(tower_ln(M, 1), dP, 1) if M > 1 else TowerReal(0.), _bump(numpy.log(12.) + 1., 1), 1),
        _mul(draft.tau[0], 10., 1),
        ]
    if k > 0:
        terms.append(_mul(draft.a[k - 1], 2., 1))
    return max(terms)

def _minimal_tau(eps):
    " heights with the spacing and delta rules, times the safety factor "
    n = len(eps)
    tau = [TowerReal(max(1.5, _TAU_SAFETY * numpy.sqrt(3. / (eps[0] * eps[1]))))]
    for k in range(n - 1):
        spacing = float(tau[k]) + 1 + eps[k] + eps[k + 1]
        dl = numpy.sqrt(3. / (eps[k + 1] * eps[k + 2])) if k + 2 < n else 0.
        tau.append(TowerReal(_bump(_TAU_SAFETY * max(spacing, dl), 1)))
    return tau

def _next_fast_tau(k, eps, tau, a):
    " tau_{k+2} from a_k, eps_k and tau_{k+1} "
    V = _add(fast_growth_bound(a[k], eps[k], _add(tau[k + 1], -1.5, 1), 1), 1.5, 1)
    cands = [
        _mul(V, _TAU_SAFETY, 1),
        _mul(_add(tau[k + 1], 1. + eps[k + 1] + eps[k + 2], 1), _TAU_SAFETY, 1),
        ]
    if k + 3 < len(eps):
        cands.append(TowerReal(_bump(_TAU_SAFETY * numpy.sqrt(3. / (eps[k + 2] * eps[k + 3])), 1)))
    return max(cands)

def make_fast_tau(K, eps=None, nb=None, C=16., family='identity'):
    """ Heights growing by the fast-growth rule, co-computed with the weights.

    ``tau_0, tau_1`` follow the minimal rule; for ``k >= 0``

        ``tau_{k+2} = 1.01 * max(4 exp(a_k exp(pi/eps_k (tau_{k+1} - 3/2))) + 3/2,
        tau_{k+1} + 1 + eps_{k+1} + eps_{k+2}, sqrt(3/(eps_{k+2} eps_{k+3})))``

    evaluated as directed upper bounds, with ``a_k`` from :func:`choose_a`.
    The depth ``K`` is reduced (with a :class:`wdlab.TruncationWarning`)
    if a height would pass the tower level cap.

    Returns:
        Tuple ``(eps, tau, a, nb)`` for :class:`StripParams`.
    """
    if eps is None:
        eps = make_eps_geometric(K + 1)
    eps = numpy.asarray(eps, dtype=float)
    if len(eps) != K + 2:
        raise ValueError('need eps_0 .. eps_{K+1}')
    if nb is None:
        nb = [FAMILY_BOUNDS[family]] * (K + 1)
    tau = _minimal_tau(eps[:3])[:2]
    a = []
    try:
        for k in range(K + 1):
            a.append(choose_a(k, StripDraft(eps, tau, a), nb[k], C=C))
            if k + 2 <= K + 1:
                tau.append(_next_fast_tau(k, eps, tau, a))
    except OverflowError as err:
        Keff = min(len(tau) - 2, len(a) - 1)
        if Keff < 1:
            raise RuntimeError('tower level cap reached before K = 1: ' + str(err))
        warnings.warn(
            'fast heights truncated at K = {} (requested {}): {}'.format(Keff, K, err),
            TruncationWarning,
            )
        K = Keff
    return eps[:K + 2], tau[:K + 2], a[:K + 1], list(nb[:K + 1])

def fast_strip_params(K=3, eps0=0.2, family='identity', C=16., nb=None):
    """ Fast-growth strip bundle with ``eps_k = 8**(-k)``. """
    eps = make_eps_geometric(K + 1, eps0)
    eps, tau, a, nb = make_fast_tau(K, eps=eps, nb=nb, C=C, family=family)
    return StripParams(eps, tau, a, nb=nb, family=family, fast_mode=True)

def minimal_strip_params(K=3, eps0=0.2, family='identity', C=16., nb=None):
    """ Strip bundle whose heights obey only the spacing and ``delta`` rules. """
    eps = make_eps_geometric(K + 1, eps0)
    if nb is None:
        nb = [FAMILY_BOUNDS[family]] * (K + 1)
    tau = _minimal_tau(eps)
    a = []
    for k in range(K + 1):
        a.append(choose_a(k, StripDraft(eps, tau, a), nb[k], C=C))
    return StripParams(eps, tau, a, nb=nb, family=family, fast_mode=False)

def surrogate_strip_params(family='identity'):
    """ Small strip bundle (``K = 2``) for grid-based checks of weights and solvers. """
    return StripParams(
        eps=[0.24, 0.2, 0.16, 0.12], tau=[1.5, 3.0, 4.5, 6.0], a=[20., 40., 80.],
        family=family, fast_mode=False,
        )

def validate_strip_params(p, scale='faithful'):
    """ Check every structural inequality of a strip bundle.

    Rows: widths in ``(0, 1/4)`` and decreasing; ``tau_0 >= 3/2``;
    ``tau_{k+1} > tau_k + 1 + eps_k + eps_{k+1}``; ``delta_k < eps_{k+1}``
    (in log domain); weights increasing with ``a_0 >= 10 tau_0``; and, in
    fast mode, ``tau_{k+1} > 4 exp(a_{k-1} exp(pi/eps_{k-1} (tau_k - 3/2))) + 3/2``.
    All comparisons use directed bounds that make a pass rigorous.

    Returns:
        :class:`wdlab.CheckReport`.
    """
    rep = CheckReport('validate', 'strips', scale)
    eps, tau, a, K = p.eps, p.tau, p.a, p.K
    for k in range(K + 2):
        rep.add('eps_{} in (0, 1/4)'.format(k), eps[k], '(0, 0.25)', 'in', 0 < eps[k] < 0.25)
    for k in range(K + 1):
        rep.add('eps_{} > eps_{}'.format(k, k + 1), eps[k], eps[k + 1], '>', eps[k] > eps[k + 1])
    rep.add('tau_0 >= 3/2', tau[0], 1.5, '>=', tau[0] >= 1.5)
    for k in range(K + 1):
        rhs = _add(tau[k], 1. + eps[k] + eps[k + 1], 1)
        rep.add(
            'tau spacing {}'.format(k), tau[k + 1], rhs, '>', tau[k + 1] > rhs,
            note='tau_{} > tau_{} + 1 + eps_{} + eps_{}'.format(k + 1, k, k, k + 1),
            )
    for k in range(K + 1):
        # delta_k < eps_{k+1}  <=>  -ln delta_k > -ln eps_{k+1}
        rhs = _bump(-float(numpy.log(eps[k + 1])), 1)
        rep.add(
            'delta below next eps {}'.format(k), p.log_delta[k], rhs, '>',
            p.log_delta[k] > rhs,
            note='-ln delta_{} vs -ln eps_{}; delta_{} <= {:.4g}'.format(k, k + 1, k, p.delta[k]),
            )
    rhs = _mul(tau[0], 10., 1)
    rep.add('a_0 >= 10 tau_0', a[0], rhs, '>=', a[0] >= rhs)
    for k in range(K):
        rep.add('a increasing {}'.format(k), a[k + 1], a[k], '>', a[k + 1] > a[k])
    if p.fast_mode:
        for k in range(1, K + 1):
            V = _add(fast_growth_bound(a[k - 1], eps[k - 1], _add(tau[k], -1.5, 1), 1), 1.5, 1)
            rep.add(
                'fast growth {}'.format(k), tau[k + 1], V, '>', tau[k + 1] > V,
                note='upper bound of 4 exp(a_{0} exp(pi/eps_{0} (tau_{1} - 3/2))) + 3/2'.format(k - 1, k),
                )
    for k in range(K + 1):
        n, b = p.nb[k]
        rep.add(
            'inner-map bound {}'.format(k), '|h_{}(z)|'.format(k), '|z|^{} + {:g}'.format(n, b),
            '<=', None, note='assumed for family ' + str(p.family),
            )
    return rep

def ladder_induction_strip(p, f_bound=None):
    """ Escape ladder ``R_k <= tau_{k+1} - 3/2`` for a strip bundle.

    ``R_1 = tau_2 - 3/2`` and ``R_{k} = f_bound(a_{k-1}, eps_{k-1}, R_{k-1})``
    (default :func:`fast_growth_bound`, an upper bound for the maximum
    modulus of the approximant). For each ``k`` the rows check
    ``R_k + 3/2 <= tau_{k+1}`` (by definition at ``k = 1``) and
    ``tau_{k+1} - 1/2 - eps_{k+1} > R_k``. Beyond float range the second
    row cannot be resolved by directed bounds; it then passes through the
    margin ``1 - eps_{k+1} > 0`` over the first. The ladder halts at the
    first failure.

    Returns:
        :class:`wdlab.CheckReport`.
    """
    if f_bound is None:
        f_bound = fast_growth_bound
    rep = CheckReport('ladder', 'strips', 'faithful')
    tau, eps, K = p.tau, p.eps, p.K
    R = _add(tau[2], -1.5, 1)
    rep.add('R_1 = tau_2 - 3/2', R, tau[2], 'def', True, note='by definition')
    for k in range(1, K + 1):
        if k > 1:
            try:
                R = f_bound(p.a[k - 1], eps[k - 1], R, 1)
            except OverflowError as err:
                rep.add('R_{} <= tau_{} - 3/2'.format(k, k + 1), 'overflow', tau[k + 1], '<=', False, note=str(err))
                break
            lhs = _add(R, 1.5, 1)
            ok1 = rep.add(
                'R_{} <= tau_{} - 3/2'.format(k, k + 1), lhs, tau[k + 1], '<=', lhs <= tau[k + 1],
                note='lhs is R_{} + 3/2'.format(k),
                )
        else:
            ok1 = True
        if k + 1 < len(eps):
            lo, holds, note = _above_ladder(tau[k + 1], eps[k + 1], R, ok1)
            ok2 = rep.add(
                'tau_{0} - 1/2 - eps_{0} > R_{1}'.format(k + 1, k), lo, R, '>', holds, note=note,
                )
        else:
            ok2 = True
        if not (ok1 and ok2):
            break
    return rep

def _above_ladder(tau_k1, eps_k1, R, ladder_ok):
    """ Decide ``tau_{k+1} - 1/2 - eps_{k+1} > R_k``.

    Compared directly when the bounds resolve it; otherwise it follows
    from ``R_k + 3/2 <= tau_{k+1}`` (``ladder_ok``) and ``eps_{k+1} < 1``.

    Returns:
        Tuple ``(lower bound of the left side, holds, note)``.
    """
    lo = _add(tau_k1, -(0.5 + eps_k1), -1)
    if lo > R:
        return lo, True, ''
    holds = bool(ladder_ok) and eps_k1 < 1
    return lo, holds, 'margin 1 - eps = {:.6g} over R + 3/2 <= tau'.format(1 - eps_k1)


ZSequence = collections.namedtuple('ZSequence', ['z', 'z_lo', 'z_hi', 'r', 'A', 'surrogate'])

def order_constant(c=0.1, c0=5., Ctilde=9.):
    """ ``C = 800 (Ctilde + 1/c + c0)``. """
    return 800. * (Ctilde + 1. / c + c0)

def derive_z_sequence(eps, z1, N, c=0.1, C=None, surrogate=None):
    """ Disk centers ``z_{n+1} = exp(z_n**(1/2+eps) / 6) / n`` with radii and puddle depths.

    Computes ``z_1 .. z_{N+1}`` three ways: nearest, lower bounds and upper
    bounds (directed tower arithmetic). Radii are ``r_n = z_n / 9`` and
    depths ``A_n = c eps (z_n - r_n)**(1/2+eps)`` for ``n = 1..N``.
    Lists are 0-based: ``z[n - 1]`` is ``z_n``.

    ``surrogate=None`` flags surrogate mode automatically (with a
    :class:`wdlab.SurrogateWarning`) when ``z_1 <= exp(C/eps)``.
    ``N`` is reduced with a :class:`wdlab.TruncationWarning` if ``z_{N+1}``
    would pass the tower level cap.

    Returns:
        ``ZSequence(z, z_lo, z_hi, r, A, surrogate)``.
    """
    if not 0 < eps <= 0.5:
        raise ValueError('eps must be in (0, 1/2]: ' + str(eps))
    z1 = _T(z1)
    if not z1 > 0:
        raise ValueError('z_1 must be positive: ' + str(z1))
    if N < 1:
        raise ValueError('need N >= 1: ' + str(N))
    if C is None:
        C = order_constant(c)
    alpha = 0.5 + eps
    z, zlo, zhi = [z1], [z1], [z1]

    def step(x, n, d):
        x = _mul(_pow(x, alpha, d), 1. / 6., d)
        x = tower_exp(x, d)
        return _mul(x, _bump(1. / n, d), d) if n > 1 else x

    try:
        for n in range(1, N + 1):
            z.append(step(z[-1], n, 0))
            zlo.append(step(zlo[-1], n, -1))
            zhi.append(step(zhi[-1], n, 1))
    except OverflowError as err:
        Neff = min(len(z), len(zlo), len(zhi)) - 1
        if Neff < 1:
            raise RuntimeError('tower level cap reached at z_2: ' + str(err))
        warnings.warn(
            'z sequence truncated at N = {} (requested {}): {}'.format(Neff, N, err),
            TruncationWarning,
            )
        N = Neff
        z, zlo, zhi = z[:N + 1], zlo[:N + 1], zhi[:N + 1]
    r = [_mul(zn, 1. / 9., 0) for zn in z[:N]]
    A = [_mul(_pow(_mul(zn, 8. / 9., 0), alpha, 0), c * eps, 0) for zn in z[:N]]
    if surrogate is None:
        threshold = tower_exp(TowerReal(C / eps))
        surrogate = not z1 > threshold
        if surrogate:
            warnings.warn(
                'z_1 = {} <= exp(C/eps) = {}: surrogate mode'.format(z1, threshold),
                SurrogateWarning,
                )
    return ZSequence(z, zlo, zhi, r, A, bool(surrogate))


class OrderParams(object):
    """ Parameters of the finite-order construction.

    Args:
        eps (float): In ``(0, 1/2]``; the order is ``1/2 + eps``.
        z1 (float or TowerReal): First disk center.
        N (int): Number of disks realized.
        c (float): Puddle-depth constant in ``(0, 1)``.
        c0 (float): Constant ``> 4`` of the weight.
        Ctilde (float): Cutoff gradient constant ``> 1``.
        C (float or None): Overrides ``800 (Ctilde + 1/c + c0)``.
        surrogate (bool or None): ``None`` decides from ``z_1 <= exp(C/eps)``.

    Attributes:
        alpha (float): ``1/2 + eps``.
        beta (float): ``1/2 + eps / (4 pi - 2 eps)``.
        z, z_lo, z_hi (list): Centers ``z_1 .. z_{N+1}`` (nearest, lower,
            upper bounds); ``z[n - 1]`` is ``z_n``.
        r, A (list): Radii and puddle depths for ``n = 1..N``.
    """
    def __init__(self, eps, z1, N=2, c=0.1, c0=5., Ctilde=9., C=None, surrogate=None):
        if not 0 < eps <= 0.5:
            raise ValueError('eps must be in (0, 1/2]: ' + str(eps))
        self.eps = float(eps)
        self.c = float(c)
        self.c0 = float(c0)
        self.Ctilde = float(Ctilde)
        self.C_formula = order_constant(c, c0, Ctilde)
        self.C = self.C_formula if C is None else float(C)
        self.alpha = 0.5 + self.eps
        self.beta = 0.5 + self.eps / (4 * numpy.pi - 2 * self.eps)
        self.surrogate_requested = surrogate
        seq = derive_z_sequence(self.eps, z1, N, c=self.c, C=self.C, surrogate=surrogate)
        self.z1 = seq.z[0]
        self.z, self.z_lo, self.z_hi = seq.z, seq.z_lo, seq.z_hi
        self.r, self.A = seq.r, seq.A
        self.N = len(seq.r)
        self.surrogate = seq.surrogate

    def zf(self, n):
        """ ``z_n`` as a float (``inf`` beyond float range). """
        return float(self.z[n - 1])

    def rf(self, n):
        return float(self.r[n - 1])

    def Af(self, n):
        return float(self.A[n - 1])

    def format(self):
        lines = ['OrderParams(eps={:g}, N={}, C={:g}, surrogate={})'.format(
            self.eps, self.N, self.C, self.surrogate
            )]
        for n in range(1, self.N + 1):
            lines.append('  n={:<3} z={:<22} r={:<22} A={}'.format(
                n, self.z[n - 1].format(), self.r[n - 1].format(), self.A[n - 1].format()
                ))
        return '\n'.join(lines) + '\n'

    def __str__(self):
        return self.format()


def puddle_order_params():
    """ One puddle at a scale where the depth window is nonempty (``z_1 = 1e140``). """
    return OrderParams(0.5, 1e140, N=1, c=0.008, surrogate=True)

def dynamics_order_params():
    """ Small-scale bundle (``z_1 = 30``) for solver and orbit experiments. """
    return OrderParams(0.5, 30., N=2, c=0.1, surrogate=True)

def faithful_order_params(C=None, N=3, eps=0.5):
    """ Bundle at faithful scale: ``z_1 = exp(C/eps + 1)``. """
    C = order_constant() if C is None else float(C)
    z1 = TowerReal.from_log(C / eps + 1., direction=1)
    return OrderParams(eps, z1, N=N, C=C, surrogate=False)

def _faithful_row(rep, surrogate, anchor, lhs, rhs, relation, holds, note=''):
    " rows that only bind at faithful scale "
    if surrogate:
        if holds:
            return rep.add(anchor, lhs, rhs, relation, True, note=note, scale='surrogate')
        note = (note + '; ' if note else '') + 'not required at surrogate scale'
        return rep.add(anchor, lhs, rhs, relation, None, note=note, scale='surrogate')
    return rep.add(anchor, lhs, rhs, relation, holds, note=note)

def validate_order_params(p):
    """ Check the invariants of an :class:`OrderParams` bundle.

    Rows: range of ``eps`` and of the constants; ``z_1 > exp(C/eps)``;
    monotone centers; the radius ratio ``5/4``; nonempty depth window
    ``ln r_n > (5/4)**alpha / (c eps)``; disjoint tripled disks
    (``z_{n+1} > 2 z_n``); tripled disks clear of the padded sector
    (``z_n > 3/2``); and ``pi / (2 beta) = pi - eps/2`` to ``1e-12``.
    In surrogate mode the faithful-only rows pass if they hold and are
    informational otherwise.
    """
    scale = 'surrogate' if p.surrogate else 'faithful'
    rep = CheckReport('validate', 'order', scale)
    rep.add('eps in (0, 1/2]', p.eps, '(0, 0.5]', 'in', 0 < p.eps <= 0.5)
    rep.add('c in (0, 1)', p.c, '(0, 1)', 'in', 0 < p.c < 1)
    rep.add('c0 > 4', p.c0, 4., '>', p.c0 > 4)
    rep.add('Ctilde > 1', p.Ctilde, 1., '>', p.Ctilde > 1)
    if p.C == p.C_formula:
        rep.add('C = 800(Ctilde + 1/c + c0)', p.C, p.C_formula, '==', True)
    else:
        rep.add('C = 800(Ctilde + 1/c + c0)', p.C, p.C_formula, '==', None, note='override')
    rep.add('C > 800', p.C, 800., '>', p.C > 800)
    threshold = tower_exp(TowerReal(_bump(p.C / p.eps, 1)), 1)
    _faithful_row(
        rep, p.surrogate, 'z_1 > exp(C/eps)', p.z1, threshold, '>', p.z1 > threshold,
        note='required z_1 > ' + threshold.format(),
        )
    for n in range(1, p.N + 1):
        rep.add(
            'z_{} > z_{}'.format(n + 1, n), p.z_lo[n], p.z_hi[n - 1], '>',
            p.z_lo[n] > p.z_hi[n - 1],
            )
    ratio = (1. + 1. / 9.) / (1. - 1. / 9.)
    rep.add('(z_n + r_n)/(z_n - r_n) = 5/4', ratio, 1.25, '==', abs(ratio - 1.25) < 1e-15)
    wrhs = _bump(1.25 ** p.alpha / (p.c * p.eps), 1)
    for n in range(1, p.N + 1):
        rn_lo = _mul(p.z_lo[n - 1], _bump(1. / 9., -1), -1)
        lhs = tower_ln(rn_lo, -1)
        _faithful_row(
            rep, p.surrogate, 'depth window {}'.format(n), lhs, wrhs, '>', lhs > wrhs,
            note='ln r_{} > (5/4)^alpha / (c eps)'.format(n),
            )
    for n in range(1, p.N):
        rhs = _mul(p.z_hi[n - 1], 2., 1)
        rep.add(
            '3B_{} and 3B_{} disjoint'.format(n, n + 1), p.z_lo[n], rhs, '>', p.z_lo[n] > rhs,
            note='z_{} > 2 z_{}'.format(n + 1, n),
            )
    for n in range(1, p.N + 1):
        rep.add(
            '3B_{} clear of padded sector'.format(n), p.z_lo[n - 1], 1.5, '>',
            p.z_lo[n - 1] > 1.5,
            )
    err = abs(numpy.pi / (2 * p.beta) - (numpy.pi - p.eps / 2))
    rep.add('pi/(2 beta) = pi - eps/2', err, 1e-12, '<=', err <= 1e-12)
    return rep

def _n_condition(p, zk_lo, k):
    " (C z_1/eps) exp(z_k^alpha/10) < exp(z_k^alpha/6)/(100 k), in log form "
    const = _bump(float(numpy.log(p.C / p.eps) + numpy.log(100. * k)), 1)
    lz1 = tower_ln(p.z1, 1)
    lhs = _add(lz1, const, 1) if lz1.sign >= 0 else TowerReal(_bump(float(lz1) + const, 1))
    rhs = _mul(_pow(zk_lo, p.alpha, -1), 1. / 15., -1)
    return lhs, rhs, lhs < rhs

def ladder_induction_order(p, jmin=None, nmin=100, window=3):
    """ Escape ladder ``R_n <= z_{n+N}/100`` for the finite-order construction.

    ``N`` is the least ``n >= nmin`` with ``z_n/100 > jmin`` for which the
    growth condition ``(C z_1/eps) exp(z_k**alpha/10) < exp(z_k**alpha/6)/(100 k)``
    holds at ``k = n .. n + window`` (its two sides separate monotonically
    beyond the window). ``jmin`` stands in for the smallest modulus on the
    Julia set (default ``z_1/2``), so the ladder is conditional on it.

    With ``R_0 = z_N/100`` and ``R_n = (C z_1/eps) exp(R_{n-1}**alpha)``
    each step is verified link by link: ``100**(-alpha) <= 1/10`` because
    ``alpha >= 1/2``; the growth condition at ``k = N + n - 1``; and the
    recurrence ``exp(z_k**alpha / 6) / k = z_{k+1}``. Directed tower bounds
    at this size cannot resolve the factor ``1/100`` directly.
    """
    scale = 'surrogate' if p.surrogate else 'faithful'
    rep = CheckReport('ladder', 'order', scale)
    nmax = nmin + 2 * window + 2
    try:
        with warnings.catch_warnings():
            warnings.simplefilter('ignore', TruncationWarning)
            seq = derive_z_sequence(p.eps, p.z1, nmax, c=p.c, C=p.C, surrogate=p.surrogate)
    except RuntimeError as err:
        rep.add('z sequence to n = {}'.format(nmax), 'failed', nmax, '>=', False, note=str(err))
        return rep
    if jmin is None:
        jmin = _mul(p.z1, 0.5, 1)
        jnote = 'stand-in min |J(f)| = z_1/2'
    else:
        jmin = _T(jmin)
        jnote = 'stand-in min |J(f)| supplied'
    zlo = seq.z_lo
    navail = len(zlo)
    N = None
    for n in range(nmin, navail - window):
        if not _mul(zlo[n - 1], 0.01, -1) > jmin:
            continue
        if all(_n_condition(p, zlo[k - 1], k)[2] for k in range(n, n + window + 1)):
            N = n
            break
    if N is None:
        rep.add(
            'N exists', 'none', '[{}, {})'.format(nmin, navail - window), 'in', False,
            note='no admissible N in computed window',
            )
        return rep
    rep.add('N >= {}'.format(nmin), N, nmin, '>=', True, note=jnote)
    rep.add(
        'z_N/100 > min|J(f)|', _mul(zlo[N - 1], 0.01, -1), jmin, '>', True, note=jnote,
        )
    rep.add('R_0 = z_N/100', 'R_0', 'z_{}/100'.format(N), 'def', True, note='by definition')
    for n in range(1, window + 1):
        k = N + n - 1
        link1 = p.alpha >= 0.5
        lhs, rhs, link2 = _n_condition(p, zlo[k - 1], k)
        rep.add(
            'growth condition at k = {}: ln(100 k C z_1/eps) < z_k^alpha/15'.format(k), lhs, rhs, '<', link2,
            note='log form of (C z_1/eps) exp(z_k^alpha/10) < exp(z_k^alpha/6)/(100 k)',
            )
        ok = rep.add(
            'R_{} <= z_{}/100'.format(n, n + N), 'R_{}'.format(n), 'z_{}/100'.format(n + N), '<=',
            link1 and link2,
            note='links: 100^-alpha <= 1/10 ({}); growth condition at k = {} ({}); recurrence'.format(
                link1, k, link2
                ),
            )
        if not ok:
            break
    return rep

def ball_inclusion_check(p):
    """ Disk-to-disk mechanism: the approximation bound is below ``1/4``.

    The bound ``C z_1 |z|**2 / eps * exp(-eps/C |z|**alpha)`` decreases for
    ``|z| >= 16 C**2 / eps**2``. It is evaluated (upper bound, in log form)
    at ``|z| = z_1`` for the sector set ``V`` and at ``|z| = z_n - 1/4``
    for ``B(z_n, 1/4)``.
    """
    scale = 'surrogate' if p.surrogate else 'faithful'
    rep = CheckReport('ball inclusion', 'order', scale)
    start = _bump(16. * p.C ** 2 / p.eps ** 2, 1)
    _faithful_row(rep, p.surrogate, 'z_1 >= 16 C^2/eps^2', p.z1, start, '>=', p.z1 >= start)
    const = _bump(float(numpy.log(p.C) - numpy.log(p.eps) + numpy.log(4.)), 1)
    lz1 = tower_ln(p.z1, 1)

    def sides(t):
        lt = tower_ln(t, 1)
        two_lt = _mul(lt, 2., 1) if lt.sign > 0 else TowerReal(0.)
        lhs = _add(tower_add(lz1, two_lt, 1), const, 1)
        rhs = _mul(_pow(t, p.alpha, -1), _bump(p.eps / p.C, -1), -1)
        return lhs, rhs

    lhs, rhs = sides(p.z1)
    _faithful_row(
        rep, p.surrogate, 'bound < 1/4 on V', lhs, rhs, '<', lhs < rhs,
        note='ln(4 C z_1 t^2/eps) < eps t^alpha/C at t = z_1',
        )
    for n in range(1, p.N + 1):
        t = _add(p.z_lo[n - 1], -0.25, -1)
        if not t > 1:
            rep.add('bound < 1/4 on B(z_{}, 1/4)'.format(n), t, 1., '>', None, note='disk too close to 0')
            continue
        lhs, rhs = sides(t)
        _faithful_row(
            rep, p.surrogate, 'bound < 1/4 on B(z_{}, 1/4)'.format(n), lhs, rhs, '<', lhs < rhs,
            note='at t = z_{} - 1/4'.format(n),
            )
    return rep
