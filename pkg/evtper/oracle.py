# encoding: utf-8
#
#
# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this file,
# You can obtain one at http://mozilla.org/MPL/2.0/.
"""
Reference values that do not rely on the Gumbel algebra: adaptive quadrature of
the averaging integral, a Monte Carlo estimate over channel draws, and the
numeric inverse coding gain.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import unicode_literals

import math

import numpy as np
from scipy.integrate import quad
from scipy.optimize import brentq

from mo_logs import Log
from mo_times import Timer

# Use import as follows to prevent
# circular dependency conflict with
# fading, which integrates non-integer m here
import evtper.fading
from evtper.awgn import gumbel_min, norming_constants, per_awgn_exact
from evtper.modulation import EXPFORM
from evtper.pool import parallel_map
from evtper.specfun import ln_gamma
from evtper.util import (
    CONVERGENCE_ERROR,
    DOMAIN_ERROR,
    McResult,
    QuadResult,
    require,
)

DEBUG = False
EXACT = "exact"  # 1-(1-ber)^N
GUMBEL = "gumbel"  # 1-exp(-exp(-(gamma-a_N)/b_N))
MIN_TOL = 1e-12
MIN_OMEGA0_TOL = 1e-10
MAX_EVALUATIONS = 1000000
QUAD_LIMIT = 200  # SUBINTERVALS PER PANEL
TAIL_FRACTION = 0.1  # SHARE OF tol LEFT FOR THE TRUNCATED TAIL
KNOT_LEVELS = (0.99, 0.5, 1e-2, 1e-4, 1e-8)  # PER LEVELS MARKING THE TRANSITION
MAX_DOUBLINGS = 64
MIN_DRAWS = 1000
SHARD_SIZE = 1 << 16
GENERATOR = "Philox"


def _per_function(scheme, N, per_fn):
    if callable(per_fn):
        return per_fn
    if per_fn == EXACT:
        return lambda gamma: per_awgn_exact(scheme, N, gamma)
    if per_fn == GUMBEL:
        constants = norming_constants(scheme, N)
        return lambda gamma: gumbel_min(constants, gamma)
    Log.error(
        DOMAIN_ERROR + ": expecting per_fn of {{options}}, not {{per_fn|quote}}",
        options=[EXACT, GUMBEL],
        per_fn=per_fn,
    )


def transition_knots(per):
    """
    SNR VALUES WHERE A DECREASING PER FUNCTION CROSSES KNOT_LEVELS
    """
    knots = []
    start = per(0.0)
    for level in KNOT_LEVELS:
        if start <= level:
            continue
        high = 1.0
        for _ in range(MAX_DOUBLINGS):
            if per(high) < level:
                break
            high *= 2
        else:
            continue
        knots.append(brentq(lambda g: per(g) - level, 0.0, high, xtol=1e-6))
    return sorted(set(knots))


def _integrate_panels(func, edges, tol, max_evaluations, first=None):
    """
    :param func: INTEGRAND
    :param edges: INCREASING PANEL BOUNDARIES
    :param tol: ABSOLUTE ERROR TO SHARE OVER THE PANELS
    :param first: OPTIONAL (integrand, alpha) FOR THE FIRST PANEL, INTEGRATED WITH WEIGHT x^alpha
    :return: (value, abs_error, evaluations)
    """
    panels = list(zip(edges[:-1], edges[1:]))
    panel_tol = tol / len(panels)
    values, errors, evaluations = [], [], 0
    for i, (low, high) in enumerate(panels):
        if i == 0 and first is not None:
            integrand, alpha = first
            output = quad(
                integrand,
                low,
                high,
                weight="alg",
                wvar=(alpha, 0.0),
                epsabs=panel_tol,
                epsrel=0.0,
                limit=QUAD_LIMIT,
                full_output=1,
            )
        else:
            output = quad(
                func, low, high, epsabs=panel_tol, epsrel=0.0, limit=QUAD_LIMIT, full_output=1
            )
        value, error, info = output[:3]
        if DEBUG and len(output) > 3:
            Log.note(
                "quad on [{{low}}, {{high}}]: {{message}}", low=low, high=high, message=output[3]
            )
        values.append(value)
        errors.append(error)
        evaluations += int(info["neval"])
        if evaluations > max_evaluations:
            Log.error(
                CONVERGENCE_ERROR + ": quadrature used {{evaluations}} evaluations, over {{max}}",
                evaluations=evaluations,
                max=max_evaluations,
                value=math.fsum(values),
                abs_error=math.fsum(errors),
            )
    return math.fsum(values), math.fsum(errors), evaluations


def _check_error(value, abs_error, evaluations, tol):
    if abs_error > tol:
        Log.error(
            CONVERGENCE_ERROR + ": quadrature error {{abs_error}} is above tol={{tol}}",
            value=value,
            abs_error=abs_error,
            evaluations=evaluations,
            tol=tol,
        )
    return QuadResult(value, abs_error, evaluations)


def avg_per_quadrature(scheme, N, ch, per_fn=EXACT, tol=1e-9, max_evaluations=None):
    """
    INTEGRATE per_fn(gamma) * nakagami_pdf(gamma) OVER [0, inf)

    Panels are [0, gamma_bar/2], then doubling, split again at the PER transition
    knots; the panels stop once the channel tail beyond them is below
    TAIL_FRACTION*tol (|per_fn| <= 1 bounds the dropped part).  For m < 1 the
    first panel is integrated with the gamma^(m-1) singularity as a weight.

    :param per_fn: EXACT, GUMBEL, OR A CALLABLE gamma -> value IN [0, 1]
    :param tol: ABSOLUTE ERROR TOLERANCE, >= 1e-12
    :return: QuadResult
    """
    require(tol >= MIN_TOL, "quadrature tol must be >= {{min}}, not {{tol}}", min=MIN_TOL, tol=tol)
    max_evaluations = max_evaluations or MAX_EVALUATIONS
    per = _per_function(scheme, N, per_fn)
    m, gamma_bar = ch

    tail_tol = TAIL_FRACTION * tol
    edges = [0.0]
    edge = gamma_bar / 2
    for _ in range(MAX_DOUBLINGS):
        edges.append(edge)
        if evtper.fading.nakagami_tail(ch, edge) < tail_tol:
            break
        edge *= 2
    tail = evtper.fading.nakagami_tail(ch, edges[-1])
    edges = sorted(set(edges + [k for k in transition_knots(per) if 0 < k < edges[-1]]))

    first = None
    if m < 1:
        log_norm = m * math.log(m / gamma_bar) - ln_gamma(m)
        first = (lambda g: per(g) * math.exp(log_norm - m * g / gamma_bar), m - 1)

    with Timer(
        "quadrature over {{panels}} panels for m={{m}}, gamma_bar={{gamma_bar}}",
        {"panels": len(edges) - 1, "m": m, "gamma_bar": gamma_bar},
        silent=not DEBUG,
    ):
        value, error, evaluations = _integrate_panels(
            lambda g: per(g) * evtper.fading.nakagami_pdf(ch, g),
            edges,
            tol - tail_tol,
            max_evaluations,
            first=first,
        )
    return _check_error(value, error + tail, evaluations, tol)


def _omega0_tail(scheme, N, gamma):
    """
    UPPER BOUND OF THE INTEGRAL OF THE EXACT PER BEYOND gamma, FROM per <= N*ber
    AND Q(x) <= exp(-x^2/2)/2
    """
    if scheme.form == EXPFORM:
        return N * scheme.c_m * math.exp(-scheme.k_m * gamma) / scheme.k_m
    return N * scheme.c_m * math.exp(-scheme.k_m * gamma / 2) / scheme.k_m


def omega0_numeric(scheme, N, tol=1e-9, max_evaluations=None):
    """
    INVERSE CODING GAIN, THE INTEGRAL OF THE EXACT AWGN PER OVER [0, inf)
    :return: QuadResult
    """
    require(
        tol >= MIN_OMEGA0_TOL,
        "omega0 tol must be >= {{min}}, not {{tol}}",
        min=MIN_OMEGA0_TOL,
        tol=tol,
    )
    max_evaluations = max_evaluations or MAX_EVALUATIONS
    per = _per_function(scheme, N, EXACT)

    tail_tol = TAIL_FRACTION * tol
    step = 1.0 / scheme.k_m
    edges = [0.0] + transition_knots(per)
    if len(edges) == 1:
        edges.append(step)
    for _ in range(MAX_DOUBLINGS):
        if _omega0_tail(scheme, N, edges[-1]) < tail_tol:
            break
        edges.append(max(2 * edges[-1], edges[-1] + step))
    tail = _omega0_tail(scheme, N, edges[-1])

    value, error, evaluations = _integrate_panels(per, edges, tol - tail_tol, max_evaluations)
    return _check_error(value, error + tail, evaluations, tol)


def _merge(left, right):
    """
    COMBINE (count, mean, M2) OF TWO SAMPLES
    """
    n_a, mean_a, m2_a = left
    n_b, mean_b, m2_b = right
    n = n_a + n_b
    delta = mean_b - mean_a
    mean = mean_a + delta * n_b / n
    m2 = m2_a + m2_b + delta ** 2 * n_a * n_b / n
    return n, mean, m2


def avg_per_montecarlo(scheme, N, ch, draws, seed, threads=1):
    """
    AVERAGE THE EXACT AWGN PER OVER Gamma(m, gamma_bar/m) SNR DRAWS

    Draws are cut into SHARD_SIZE shards; shard i uses a Philox generator seeded
    with child i of SeedSequence(seed), and shard statistics merge in shard
    order, so the result does not depend on threads.

    :return: McResult
    """
    require(
        draws >= MIN_DRAWS,
        "expecting at least {{min}} draws, not {{draws}}",
        min=MIN_DRAWS,
        draws=draws,
    )
    require(0 <= seed < 2 ** 64, "seed must be a 64-bit unsigned integer, not {{seed}}", seed=seed)
    draws, seed = int(draws), int(seed)

    shards = -(-draws // SHARD_SIZE)
    sizes = [SHARD_SIZE] * (shards - 1) + [draws - SHARD_SIZE * (shards - 1)]
    children = np.random.SeedSequence(seed).spawn(shards)

    def shard(i):
        generator = np.random.Generator(np.random.Philox(children[i]))
        per = per_awgn_exact(scheme, N, evtper.fading.nakagami_sample(ch, sizes[i], generator))
        mean = float(np.mean(per))
        return sizes[i], mean, float(np.sum((per - mean) ** 2))

    stats = parallel_map("montecarlo", shard, range(shards), threads)
    total = stats[0]
    for s in stats[1:]:
        total = _merge(total, s)
    n, mean, m2 = total
    std_error = math.sqrt(m2 / (n - 1)) / math.sqrt(n)
    return McResult(mean, std_error, n, seed, GENERATOR)
