""" Introduction
----------------
This package is a numerical laboratory for the explicit constructions
behind unbounded fast-escaping wandering domains of entire functions.
It builds, samples and property-tests every ingredient:

    1) Parameter bundles --- heights ``tau_k``, widths ``eps_k`` and
       weights ``a_k`` of the strip construction (:class:`StripParams`),
       and disk centers ``z_n`` of the finite-order construction
       (:class:`OrderParams`). Heights grow like towers of exponentials,
       so they are carried as :class:`TowerReal` numbers with directed
       (upper or lower) rounding.

    2) Subharmonic weights ``u`` (:class:`StripWeight`,
       :class:`PowerWeight`), checked pointwise and with a discrete
       sub-mean-value test (:func:`submean_check`).

    3) Smooth cutoffs and model maps (:class:`StripModel`,
       :class:`OrderModel`), whose ``dbar`` derivative ``g`` is the data
       of the ``dbar`` problem.

    4) A ``dbar`` solver (:class:`DbarSolution`) that assembles the
       approximant ``f = h - alpha`` from the Cauchy transform of ``g``,
       together with the weighted ``L**2`` integrals that control it.

    5) Dynamics: model orbits with error budgets (:func:`iterate_model`),
       boundary-distance classification (:func:`classify`), hyperbolic
       contraction, fast-escape ladders and growth-order estimates.

A typical session::

    import wdlab

    p = wdlab.surrogate_strip_params()
    model = wdlab.StripModel(p)
    sol = wdlab.DbarSolution(model)
    print(wdlab.approx_error_report(sol))

Every check returns a :class:`CheckReport` whose rows record the
inequality tested, both sides, and whether it holds (``None`` marks
measured findings that are reported without a verdict). The same
checks are available from the command line (``wdlab --help``).
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

from ._version import __version__

from ._numerics import TruncationWarning, SurrogateWarning, AccuracyWarning
from ._numerics import TowerReal, tower_exp, tower_ln, tower_combine, tower_add, tower_mul
from ._numerics import SampledField, wirtinger_fd, QuadResult, quad_region

from ._geometry import Region, HalfPlaneBand, HorizontalStrip, Disk, Annulus
from ._geometry import Sector, SectorCollar, Union
from ._geometry import unit_strip, strip_at, gap_band, transition_set, sector_set

from ._report import SCALES, CheckRow, CheckReport

from ._params import FAMILY_BOUNDS, make_eps_geometric, derive_log_delta, derive_delta
from ._params import fast_growth_bound, StripDraft, StripParams, check_a, choose_a
from ._params import make_fast_tau, fast_strip_params, minimal_strip_params, surrogate_strip_params
from ._params import validate_strip_params, ladder_induction_strip
from ._params import ZSequence, order_constant, derive_z_sequence, OrderParams
from ._params import puddle_order_params, dynamics_order_params, faithful_order_params
from ._params import validate_order_params, ladder_induction_order, ball_inclusion_check

from ._weights import v_strip, v_strip_log, StripWeight, u_strip_eval, verify_strip_weight
from ._weights import v_power, poisson_disk, PowerWeight, u_power_eval
from ._weights import gluing_margin, estimate_c, verify_power_weight, submean_check

from ._mollify import bump_constant, bump, convolve_bump, StripCutoff, OrderCutoff
from ._mollify import chi_eval, grad_chi, sweep_grad_chi, measure_ctilde, verify_cutoff
from ._mollify import InnerMapFamily, inner_map_family, check_family
from ._mollify import StripModel, model_h_order, model_h_strip, OrderModel, g_eval, verify_model

from ._dbar import cauchy_transform, DbarSolution, assemble_f
from ._dbar import HormanderIntegral, hormander_integral, hormander_ratio, approx_error_report

from ._dynamics import OrbitStep, OrbitRecord, iterate_model, ClassificationReport, classify
from ._dynamics import hyperbolic_density_strip, hyperbolic_dist_strip, contraction_check
from ._dynamics import fast_escape_check, iterate_numeric, max_modulus, order_ratios
from ._dynamics import OrderEstimate, order_estimate, explore_extent

from ._config import RunConfig
from ._cli import main
