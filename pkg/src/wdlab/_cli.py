""" part of wdlab module: command-line front end """

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

import argparse
import os
import sys

import numpy

import gvar as _gvar

from ._numerics import SampledField, quad_region
from ._params import StripParams, OrderParams
from ._params import fast_strip_params, minimal_strip_params, surrogate_strip_params
from ._params import puddle_order_params, dynamics_order_params, faithful_order_params
from ._params import validate_strip_params, validate_order_params
from ._params import ladder_induction_strip, ladder_induction_order, ball_inclusion_check
from ._weights import StripWeight, PowerWeight, verify_strip_weight, verify_power_weight
from ._weights import submean_check
from ._mollify import StripModel, OrderModel, verify_cutoff, verify_model, grad_chi
from ._mollify import inner_map_family
from ._dbar import DbarSolution, approx_error_report, hormander_integral, hormander_ratio
from ._dynamics import iterate_model, classify, contraction_check, fast_escape_check
from ._dynamics import order_estimate
from ._config import RunConfig
from ._report import CheckReport

COMMANDS = (
    'validate', 'verify-weights', 'verify-chi', 'solve', 'classify', 'escape', 'order', 'dump-field',
    )

# bundle used for 'auto' per command
_AUTO_STRIPS = {'validate': 'fast', 'escape': 'fast', 'classify': 'fast'}
_AUTO_ORDER = {'validate': 'faithful', 'escape': 'faithful', 'verify-weights': 'puddle'}


def strip_params(cfg, command, family=None):
    """ :class:`wdlab.StripParams` described by ``cfg`` for ``command``. """
    family = cfg['strips.family'] if family is None else family
    bundle = cfg['strips.bundle']
    if bundle == 'auto':
        bundle = _AUTO_STRIPS.get(command, 'surrogate')
    K, eps0 = cfg['strips.K'], cfg['strips.eps0']

    def nb(K):
        # custom maps need explicit bounds; the others have known ones
        return [tuple(cfg['strips.nb'])] * (K + 1) if family == 'custom' else None
    if bundle == 'surrogate':
        p = surrogate_strip_params()
        return p.with_family(family, nb=nb(p.K))
    if bundle == 'fast':
        return fast_strip_params(K, eps0, family=family, nb=nb(K))
    if bundle == 'minimal':
        return minimal_strip_params(K, eps0, family=family, nb=nb(K))
    eps, tau, a = cfg['strips.eps'], cfg['strips.tau'], cfg['strips.a']
    return StripParams(eps, tau, a, nb=nb(len(a) - 1), family=family)

def order_params(cfg, command):
    """ :class:`wdlab.OrderParams` described by ``cfg`` for ``command``. """
    bundle = cfg['order.bundle']
    if bundle == 'auto':
        bundle = _AUTO_ORDER.get(command, 'dynamics')
    C = cfg['order.C'] if cfg['order.C'] > 0 else None
    if bundle == 'dynamics':
        return dynamics_order_params()
    if bundle == 'puddle':
        return puddle_order_params()
    if bundle == 'faithful':
        return faithful_order_params(C=C, N=cfg['order.N'], eps=cfg['order.eps'])
    return OrderParams(cfg['order.eps'], cfg['order.z1'], N=cfg['order.N'], c=cfg['order.c'], C=C)

def _coefficients(cfg, p):
    return cfg['strips.coefficients'] if p.family == 'custom' else None

def _model(cfg, command):
    if cfg['construction'] == 'strips':
        p = strip_params(cfg, command)
        return StripModel(p, coefficients=_coefficients(cfg, p))
    return OrderModel(order_params(cfg, command))

def _solution(cfg, model):
    return DbarSolution(
        model, nodes=cfg['quad.nodes'], near_nodes=(cfg['quad.near_nr'], cfg['quad.near_ntheta']),
        X=cfg['solve.X'],
        )


def cmd_validate(cfg):
    """ Parameter inequalities and escape ladders. """
    if cfg['construction'] == 'strips':
        p = strip_params(cfg, 'validate')
        rep = validate_strip_params(p, scale=cfg['scale'])
        rep.extend(ladder_induction_strip(p))
        return rep, {}
    p = order_params(cfg, 'validate')
    rep = validate_order_params(p)
    rep.extend(ladder_induction_order(p))
    rep.extend(ball_inclusion_check(p))
    return rep, {}

def cmd_verify_weights(cfg):
    """ Weight properties and the discrete sub-mean-value test. """
    n, seed, scale = cfg['grid.n'], cfg['seed'], cfg['scale']
    if cfg['construction'] == 'strips':
        p = strip_params(cfg, 'verify-weights')
        w = StripWeight(p)
        xmax = cfg['grid.xmax']
        rep = verify_strip_weight(
            w, n=max(2, n // 2), nsamples=cfg['grid.samples'], xmax=xmax, seed=seed, scale=scale,
            )
        h = 2 * xmax / (n - 1)
        top = min(float(p.tau[2]), w.ymax)
        field = SampledField.from_function(w, complex(-xmax, 0.), h, (int(top / h) + 1, n))
        rep.extend(submean_check(
            field, kappa=cfg['tol.kappa'], run='verify-weights', construction='strips', scale=scale,
            ))
        return rep, dict(u=field)
    p = order_params(cfg, 'verify-weights')
    w = PowerWeight(p)
    rep = verify_power_weight(w)
    z1, r1 = p.zf(1), p.rf(1)
    h = 4 * r1 / (n - 1)
    field = SampledField.from_function(w, complex(z1 - 2 * r1, -2 * r1), h, (n, n))
    rep.extend(submean_check(
        field, seam_mask=w.seam_mask(field.points(), h), kappa=cfg['tol.kappa'],
        run='verify-weights', construction='order', scale='surrogate',
        ))
    return rep, dict(u=field)

def cmd_verify_chi(cfg):
    """ Cutoff and model-map properties. """
    model = _model(cfg, 'verify-chi')
    rep = verify_cutoff(model.cutoff, seed=cfg['seed'], scale=cfg['scale'])
    rep.extend(verify_model(model, xmax=cfg['grid.xmax'], seed=cfg['seed'], scale=cfg['scale']))
    return rep, {}

def _solve_window(model, cfg):
    if model.kind == 'strip':
        xmax = cfg['grid.xmax']
        return (-xmax, xmax, model.tau[0] - 1., min(model.ymax, model.tau[min(2, model.kmax + 1)]))
    z1, r1 = model.p.zf(1), model.p.rf(1)
    return (z1 - 3 * r1, z1 + 3 * r1, -3 * r1, 3 * r1)

def _grid(window, n):
    xmin, xmax, ymin, ymax = window
    h = (xmax - xmin) / (n - 1)
    return complex(xmin, ymin), h, (max(2, int((ymax - ymin) / h) + 1), n)

def cmd_solve(cfg):
    """ dbar solution, approximation errors and Hormander integrals. """
    model = _model(cfg, 'solve')
    sol = _solution(cfg, model)
    rep = approx_error_report(
        sol, nsamples=cfg['solve.samples'], xmax=cfg['grid.xmax'], seed=cfg['seed'],
        )
    if cfg['solve.hormander']:
        H = hormander_integral(model)
        H.report(rep)
        ratio, lhs = hormander_ratio(sol, H)
        rep.add(
            'Hormander ratio', ratio, 1., '<=', None,
            note='int |alpha|^2 e^-u/(1+|z|^2)^2 = {}'.format(lhs),
            )
    window = _solve_window(model, cfg) if sol.band is None else sol.band
    origin, h, shape = _grid(window, 41)
    field = SampledField.from_function(sol, origin, h, shape)
    return rep, dict(f=field)

def cmd_classify(cfg):
    """ Boundary-distance cases of the inner-map families, with contraction. """
    if cfg['construction'] != 'strips':
        raise ValueError('classify needs construction = strips')
    rep = CheckReport('classify', 'strips', 'faithful')
    orbits = {}
    for family in cfg['classify.families']:
        p = strip_params(cfg, 'classify', family=family)
        fam = inner_map_family(p, coefficients=_coefficients(cfg, p))
        orbit = iterate_model(p, fam)
        orbits['orbit_' + family] = orbit
        rep.extend(classify(orbit, p, inflate=cfg['classify.inflate']).report(family))
        if family in ('constant', 'zero', 'alternating'):
            rep.extend(contraction_check(p, fam))
    return rep, orbits

def cmd_escape(cfg):
    """ Fast-escape criterion through the realized levels. """
    if cfg['construction'] == 'strips':
        return fast_escape_check(strip_params(cfg, 'escape')), {}
    return fast_escape_check(order_params(cfg, 'escape')), {}

_BASELINES = dict(
    exp=(numpy.exp, 1., 0.02),
    cossqrt=(lambda z: numpy.cos(numpy.sqrt(z)), 0.5, 0.05),
    )

def cmd_order(cfg):
    """ Growth order of a baseline function or of the assembled approximant. """
    baseline = cfg['order.baseline']
    radii, samples = cfg['order.radii'], cfg['order.samples']
    construction = 'order' if baseline == 'assembled' else cfg['construction']
    rep = CheckReport('order', construction, 'surrogate' if baseline == 'assembled' else 'faithful')
    if baseline == 'assembled':
        p = order_params(cfg, 'order')
        sol = _solution(cfg, OrderModel(p))
        est = order_estimate(sol, radii, samples)
        rep.add('order estimate', est.slope, p.alpha, '~', None, note='surrogate scale')
        rep.add('fit residual', est.residual, 0.1, '<', est.residual < 0.1)
        return rep, {}
    f, target, tol = _BASELINES[baseline]
    est = order_estimate(f, radii, samples)
    ok = abs(est.slope.mean - target) <= tol
    rep.add('order estimate ' + baseline, est.slope, target, '~', ok, note='tolerance {:g}'.format(tol))
    rep.add('fit residual', est.residual, '', '', None)
    return rep, {}

def cmd_dump_field(cfg):
    """ CSV dump of chi, |grad chi|, |g|, u or f on a grid. """
    which = cfg['dump.field']
    model = _model(cfg, 'dump-field')
    xmin, xmax, ymin, ymax = cfg['dump.window']
    if model.kind == 'strip':
        ymax = min(ymax, model.ymax)
    origin, h, shape = _grid((xmin, xmax, ymin, ymax), cfg['dump.n'])
    if which == 'chi':
        fcn = model.cutoff
    elif which == 'grad_chi':
        def fcn(z):
            return grad_chi(model.cutoff, z)[0]
    elif which == 'g':
        def fcn(z):
            return numpy.abs(numpy.asarray(model.g(z)))
    elif which == 'u':
        fcn = StripWeight(model.p) if model.kind == 'strip' else PowerWeight(model.p)
    else:
        fcn = _solution(cfg, model)
    tmp = SampledField(origin, h, shape, numpy.zeros(shape))
    mask = tmp.points() != 0
    z = tmp.points()
    values = numpy.full(shape, numpy.nan, dtype=complex if which == 'f' else float)
    values[mask] = numpy.asarray(fcn(z[mask]))
    field = SampledField(origin, h, shape, values, mask)
    rep = CheckReport('dump-field', cfg['construction'], cfg['scale'])
    rep.add('field ' + which, int(mask.sum()), '', 'nodes', None)
    return rep, {which: field}

_DISPATCH = {
    'validate': cmd_validate,
    'verify-weights': cmd_verify_weights,
    'verify-chi': cmd_verify_chi,
    'solve': cmd_solve,
    'classify': cmd_classify,
    'escape': cmd_escape,
    'order': cmd_order,
    'dump-field': cmd_dump_field,
    }


def _parser():
    parser = argparse.ArgumentParser(
        prog='wdlab', description='Numerical checks of fast-escaping wandering-domain constructions.',
        )
    parser.add_argument('command', choices=COMMANDS)
    parser.add_argument('--config', default=None, help='key = value configuration file')
    parser.add_argument('--out', default=None, help='output directory')
    parser.add_argument('--scale', choices=('faithful', 'surrogate'), default=None)
    parser.add_argument('--construction', choices=('strips', 'order'), default=None)
    parser.add_argument('--seed', type=int, default=None)
    return parser

def run(command, cfg):
    """ Run ``command`` with :class:`wdlab.RunConfig` ``cfg``; write artifacts.

    Returns:
        The :class:`wdlab.CheckReport` of the run.
    """
    _gvar.ranseed(cfg['seed'])
    old = quad_region.set(method=cfg['quad.method'])
    try:
        rep, artifacts = _DISPATCH[command](cfg)
    finally:
        quad_region.set(**old)
    out = cfg['out']
    os.makedirs(out, exist_ok=True)
    stem = command.replace('-', '_')
    rep.dump_json(os.path.join(out, stem + '.json'))
    for name in sorted(artifacts):
        artifacts[name].to_csv(os.path.join(out, '{}_{}.csv'.format(stem, name)))
    return rep

def main(argv=None):
    """ Entry point of the ``wdlab`` command; returns the exit status. """
    args = _parser().parse_args(argv)
    try:
        cfg = RunConfig.from_file(args.config) if args.config is not None else RunConfig()
        cfg.update(scale=args.scale, construction=args.construction, seed=args.seed, out=args.out)
        rep = run(args.command, cfg)
    except (ValueError, RuntimeError, OSError) as err:
        sys.stderr.write('wdlab: {}\n'.format(err))
        return 2
    sys.stdout.write(rep.format())
    return 0 if rep.passed else 1
