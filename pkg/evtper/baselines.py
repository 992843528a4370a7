# encoding: utf-8
#
#
# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this file,
# You can obtain one at http://mozilla.org/MPL/2.0/.
"""
Earlier average-PER expressions, kept for comparison with the Gumbel result:
the exact binomial series for exp-form schemes in Rayleigh fading, the
threshold bound 1-exp(-omega0/gamma_bar) with its log-linear omega0 models, and
the Chernoff substitution for Q-form schemes.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import unicode_literals

import math
from collections import namedtuple

import mpmath

from mo_logs import Log
from evtper.modulation import EXPFORM, QFORM, custom_scheme
from evtper.oracle import EXACT, avg_per_quadrature, omega0_numeric
from evtper.util import DOMAIN_ERROR, EULER_GAMMA, require

DEBUG = False
SERIES_MAX_N = 64
SERIES_PRECISION = 50  # DECIMAL DIGITS
QUADRATURE_TOL = 1e-10

LIU = "liu"
WU = "wu"
NUMERIC = "numeric"

# (k1, k2) OF omega0 = k1 ln(N) + k2, FITTED PER SCHEME
WU_FITTED = {"qam16": (2.327, -3.736)}

Omega0Model = namedtuple("Omega0Model", ["k1", "k2", "source"])
NUMERIC_MODEL = Omega0Model(None, None, NUMERIC)


def omega0_liu(scheme):
    """
    ANALYTIC CONSTANTS k1 = 1/k_m, k2 = (EULER_GAMMA + ln c_m)/k_m
    """
    return Omega0Model(
        1.0 / scheme.k_m, (EULER_GAMMA + math.log(scheme.c_m)) / scheme.k_m, LIU
    )


def omega0_wu(scheme):
    fitted = WU_FITTED.get(scheme.name)
    if fitted is None:
        Log.error(
            DOMAIN_ERROR + ": no fitted omega0 constants for {{scheme|quote}}, only {{known}}",
            scheme=scheme.name,
            known=sorted(WU_FITTED.keys()),
        )
    k1, k2 = fitted
    return Omega0Model(k1, k2, WU)


def omega0_model(scheme, model, N):
    """
    :param model: Omega0Model; THE NUMERIC SOURCE INTEGRATES THE EXACT AWGN PER
    :return: k1 ln(N) + k2
    """
    require(int(N) == N and N >= 2, "omega0 models need N >= 2, not {{N}}", N=N)
    if model.source == NUMERIC:
        return omega0_numeric(scheme, N).value

    omega0 = model.k1 * math.log(N) + model.k2
    if omega0 < 0:
        Log.warning(
            "{{source}} omega0 for {{scheme}} at N={{N}} is negative ({{omega0}})",
            source=model.source,
            scheme=scheme.name,
            N=N,
            omega0=omega0,
        )
    return omega0


def avg_per_threshold_bound(omega0, gamma_bar):
    """
    1 - exp(-omega0/gamma_bar), THE RAYLEIGH UPPER BOUND
    """
    require(omega0 > 0, "threshold bound needs omega0 > 0, not {{omega0}}", omega0=omega0)
    require(gamma_bar > 0, "average SNR must be positive, not {{gamma_bar}}", gamma_bar=gamma_bar)
    return -math.expm1(-omega0 / gamma_bar)


def avg_per_exact_series(scheme, N, ch):
    """
    1 - sum_n C(N,n) (-c_m)^n / (1 + n k_m gamma_bar)

    The alternating terms grow like C(N, N/2) c_m^(N/2) before they cancel, so
    the sum runs at SERIES_PRECISION digits and N is capped at SERIES_MAX_N.
    """
    require(scheme.form == EXPFORM, "the binomial series needs an exp-form scheme")
    require(ch.m == 1, "the binomial series needs Rayleigh fading (m=1), not m={{m}}", m=ch.m)
    require(int(N) == N and N >= 1, "packet length must be a positive integer, not {{N}}", N=N)
    require(
        N <= SERIES_MAX_N,
        "the binomial series is unstable above N={{max}}, not {{N}}",
        max=SERIES_MAX_N,
        N=N,
    )
    N = int(N)
    with mpmath.workdps(SERIES_PRECISION):
        c = mpmath.mpf(scheme.c_m)
        slope = mpmath.mpf(scheme.k_m) * mpmath.mpf(ch.gamma_bar)
        total = mpmath.fsum(
            mpmath.binomial(N, n) * (-c) ** n / (1 + n * slope) for n in range(N + 1)
        )
        return float(1 - total)


def chernoff_scheme(scheme):
    """
    c_m Q(sqrt(k_m gamma)) <= (c_m/2) exp(-k_m gamma/2)
    """
    require(scheme.form == QFORM, "the Chernoff bound applies to Q-form schemes")
    return substituted_scheme(scheme, scheme.c_m / 2, scheme.k_m / 2)


def substituted_scheme(scheme, c_m, k_m):
    """
    REPLACE THE BER OF scheme WITH c_m exp(-k_m gamma), FOR ANY EXPONENTIAL
    APPROXIMATION OF THE Q-FUNCTION
    """
    return custom_scheme(scheme.name + "~exp", EXPFORM, c_m, k_m)


def avg_per_chernoff(scheme, N, ch):
    """
    AVERAGE PER OF THE CHERNOFF-SUBSTITUTED SCHEME: EXACT SERIES WHEN IT IS
    STABLE (m=1, N <= SERIES_MAX_N), QUADRATURE OTHERWISE
    """
    bounded = chernoff_scheme(scheme)
    if ch.m == 1 and N <= SERIES_MAX_N:
        return avg_per_exact_series(bounded, N, ch)
    if DEBUG:
        Log.note("Chernoff PER for N={{N}}, m={{m}} by quadrature", N=N, m=ch.m)
    return avg_per_quadrature(bounded, N, ch, per_fn=EXACT, tol=QUADRATURE_TOL).value
