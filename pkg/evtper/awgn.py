# encoding: utf-8
#
#
# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this file,
# You can obtain one at http://mozilla.org/MPL/2.0/.
"""
PACKET ERROR RATE IN THE AWGN CHANNEL

The exact N-bit expression 1-(1-b_e)^N and its Gumbel (minimum) approximation
1-exp(-exp(-(gamma-a_N)/b_N)).  The norming constants come from the quantile
function of the parent distribution: normal for the Q-form BER, exponential for
the exp-form BER, each evaluated at N*c_m samples.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import unicode_literals

from collections import namedtuple

import numpy as np
from scipy import special

from evtper.modulation import EXPFORM, QFORM, ber
from evtper.specfun import erfc_inv, q_function
from evtper.util import require, scalar_or_array

SUP_ERROR_POINTS = 64
# exp(-exp(z)) ROUNDS TO 0 OR 1 FAR FROM a_N; THE GUMBEL PER IS KEPT STRICTLY INSIDE (0, 1)
PER_FLOOR = np.finfo(float).tiny
PER_CEILING = np.nextafter(1.0, 0.0)

NormingConstants = namedtuple("NormingConstants", ["a_N", "b_N"])


def _check_length(N):
    require(int(N) == N and N >= 1, "packet length must be a positive integer, not {{N}}", N=N)


def per_awgn_exact(scheme, N, gamma):
    """
    1-(1-ber)^N, EVALUATED AS -expm1(N*log1p(-ber)) SO TINY BER DOES NOT CANCEL
    """
    _check_length(N)
    b = np.minimum(ber(scheme, gamma), 1.0)
    with np.errstate(divide="ignore"):
        return scalar_or_array(-np.expm1(N * np.log1p(-b)))


def per_awgn_power(scheme, N, gamma):
    """
    THE INTERMEDIATE 1-[F(x)]^(N*c_m), F THE PARENT CDF (NORMAL AT sqrt(k_m*gamma)
    FOR Q-FORM, EXPONENTIAL WITH RATE k_m FOR EXP-FORM)
    """
    _check_length(N)
    gamma = np.asarray(gamma, dtype=float)
    require(np.all(gamma >= 0), "expecting a non-negative SNR")
    if scheme.form == QFORM:
        tail = q_function(np.sqrt(scheme.k_m * gamma))
    else:
        tail = np.exp(-scheme.k_m * gamma)
    with np.errstate(divide="ignore"):
        return scalar_or_array(-np.expm1(N * scheme.c_m * np.log1p(-np.asarray(tail))))


def norming_constants(scheme, N):
    """
    :param scheme: ModulationScheme
    :param N: PACKET LENGTH IN BITS
    :return: NormingConstants(a_N, b_N) IN THE LINEAR SNR DOMAIN
    """
    _check_length(N)
    nc = N * scheme.c_m
    if scheme.form == EXPFORM:
        require(
            nc > 1,
            "exponential norming constants need N*c_m > 1, not {{nc}} (N={{N}}, c_m={{c}})",
            nc=nc,
            N=N,
            c=scheme.c_m,
        )
        return NormingConstants(np.log(nc) / scheme.k_m, 1.0 / scheme.k_m)

    require(
        nc > 2,
        "normal norming constants need N*c_m > 2, not {{nc}} (N={{N}}, c_m={{c}})",
        nc=nc,
        N=N,
        c=scheme.c_m,
    )
    # erf_inv(1 - 2/(N c_m)) == erfc_inv(2/(N c_m))
    scale = 2.0 / scheme.k_m
    a_N = scale * erfc_inv(2.0 / nc) ** 2
    b_N = scale * erfc_inv(2.0 / (nc * np.e)) ** 2 - a_N
    return NormingConstants(a_N, b_N)


def gumbel_min(constants, gamma):
    """
    1 - G(gamma) FOR THE GUMBEL LAW WITH LOCATION a_N AND SCALE b_N
    """
    gamma = np.asarray(gamma, dtype=float)
    z = -(gamma - constants.a_N) / constants.b_N
    with np.errstate(over="ignore"):
        return scalar_or_array(-np.expm1(-np.exp(z)))


def per_awgn_gumbel(scheme, N, gamma):
    gamma = np.asarray(gamma, dtype=float)
    require(np.all(gamma >= 0), "expecting a non-negative SNR")
    per = gumbel_min(norming_constants(scheme, N), gamma)
    return scalar_or_array(np.clip(per, PER_FLOOR, PER_CEILING))


def gumbel_quantile(constants, p):
    """
    :return: THE SNR WHERE THE GUMBEL PER EQUALS p
    """
    require(0 < p < 1, "expecting 0 < p < 1, not {{p}}", p=p)
    return constants.a_N - constants.b_N * np.log(-np.log1p(-p))


def attraction_slope(scheme, x):
    """
    d/dx[(1-F(x))/f(x)] FOR THE PARENT DISTRIBUTION; TENDS TO ZERO FOR EVERY F IN
    THE GUMBEL DOMAIN OF ATTRACTION
    """
    x = np.asarray(x, dtype=float)
    if scheme.form == EXPFORM:
        # (1-F)/f == 1/k_m
        return scalar_or_array(np.zeros_like(x))
    # MILLS RATIO Q(x)/phi(x) == sqrt(pi/2) erfcx(x/sqrt(2))
    mills = np.sqrt(np.pi / 2.0) * special.erfcx(x / np.sqrt(2.0))
    return scalar_or_array(x * mills - 1.0)


def gumbel_sup_error(scheme, N, points=SUP_ERROR_POINTS):
    """
    max |exact - gumbel| ON [a_N-3b_N, a_N+6b_N], CLIPPED AT gamma=0
    """
    constants = norming_constants(scheme, N)
    low = max(0.0, constants.a_N - 3 * constants.b_N)
    grid = np.linspace(low, constants.a_N + 6 * constants.b_N, points)
    diff = per_awgn_exact(scheme, N, grid) - gumbel_min(constants, grid)
    return float(np.max(np.abs(diff)))
