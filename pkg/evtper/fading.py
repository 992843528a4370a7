# encoding: utf-8
#
#
# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this file,
# You can obtain one at http://mozilla.org/MPL/2.0/.
"""
AVERAGE PER OVER NAKAGAMI-m BLOCK FADING

Averaging the Gumbel PER over the gamma-distributed SNR is a Laplace transform
evaluated at s = m/gamma_bar:

    PER = 1 - s^m (-1)^(m-1) / Gamma(m) * d^(m-1)/ds^(m-1) [exp(-s a_N) Gamma(1 + s b_N) / s]

The derivative is taken with the Leibniz rule on f(s)=exp(u(s)) and g(s)=1/s,
u(s) = -a_N s + lnGamma(1 + b_N s), whose derivatives are polygamma values.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import unicode_literals

import math
from collections import namedtuple

import numpy as np
from scipy import special
from scipy.integrate import quad
from scipy.special import comb

# Use import as follows to prevent
# circular dependency conflict with
# the oracle, which needs the density
import evtper.oracle
from mo_logs import Log
from evtper.awgn import norming_constants
from evtper.specfun import ln_gamma, polygamma
from evtper.util import CONSISTENCY_ERROR, require, scalar_or_array

DEBUG = False
MIN_M = 0.5
MAX_ORDER = 15  # DERIVATIVE ORDER, SO m <= 16
CLOSED_FORM_M = (1, 2, 3)
RANGE_SLACK = 1e-9  # HOW FAR OUTSIDE [0, 1] ROUNDING MAY PUSH A PER
CANCELLATION_LIMIT = 1e-9  # LARGEST ACCEPTABLE ROUNDING ERROR IN THE LEIBNIZ SUM
QUADRATURE_TOL = 1e-10
MAX_LOG_START = 6.5  # a_N/b_N ABOVE THIS PUTS exp(-exp(a_N/b_N)) BELOW 1e-290
EPSILON = np.finfo(float).eps

# PROVENANCE TAGS
CLOSED_FORM = "closed-form"
LEIBNIZ = "leibniz"
QUAD_GUMBEL = "quad-gumbel"

FadingChannel = namedtuple("FadingChannel", ["m", "gamma_bar"])


def channel(m, gamma_bar):
    require(m >= MIN_M, "fading parameter m must be >= 0.5, not {{m}}", m=m)
    require(gamma_bar > 0, "average SNR must be positive, not {{gamma_bar}}", gamma_bar=gamma_bar)
    return FadingChannel(float(m), float(gamma_bar))


def nakagami_pdf(ch, gamma):
    """
    GAMMA DENSITY OF THE SNR WITH SHAPE m AND MEAN gamma_bar
    AT gamma=0: 0 FOR m>1, 1/gamma_bar FOR m=1, inf (THE SINGULARITY) FOR m<1
    """
    m, gamma_bar = ch
    gamma = np.asarray(gamma, dtype=float)
    require(np.all(gamma >= 0), "expecting a non-negative SNR")
    if m > 1:
        at_zero = 0.0
    elif m == 1:
        at_zero = 1.0 / gamma_bar
    else:
        at_zero = np.inf

    log_norm = m * np.log(m / gamma_bar) - ln_gamma(m)
    with np.errstate(divide="ignore", invalid="ignore"):
        log_density = log_norm + (m - 1) * np.log(gamma) - m * gamma / gamma_bar
        return scalar_or_array(np.where(gamma > 0, np.exp(log_density), at_zero))


def nakagami_cdf(ch, gamma):
    m, gamma_bar = ch
    return scalar_or_array(special.gammainc(m, m * np.asarray(gamma, dtype=float) / gamma_bar))


def nakagami_tail(ch, gamma):
    """
    P(SNR > gamma)
    """
    m, gamma_bar = ch
    return scalar_or_array(special.gammaincc(m, m * np.asarray(gamma, dtype=float) / gamma_bar))


def nakagami_sample(ch, size, generator):
    """
    :param generator: numpy Generator
    :return: size SNR DRAWS FROM Gamma(shape=m, scale=gamma_bar/m)
    """
    m, gamma_bar = ch
    return generator.gamma(m, gamma_bar / m, size)


def _log_derivatives(a_N, b_N, s, order):
    """
    u(s) = -a_N s + lnGamma(1 + b_N s) FOLLOWED BY u^(1), ..., u^(order)
    """
    require(
        int(order) == order and 0 <= order <= MAX_ORDER,
        "unsupported derivative order {{order}}, expecting 0..{{max}}",
        order=order,
        max=MAX_ORDER,
    )
    require(s > 0, "expecting s > 0, not {{s}}", s=s)
    x = 1.0 + s * b_N
    require(x > 0, "expecting 1 + s*b_N > 0, not {{x}}", x=x)
    order = int(order)

    u = [ln_gamma(x) - a_N * s] + [b_N ** n * polygamma(n - 1, x) for n in range(1, order + 1)]
    if order:
        u[1] -= a_N
    return u


def _bell(u, order):
    """
    f^(n)/f FOR f = exp(u), n = 0..order
    """
    # f^(n) = sum_k C(n-1,k) u^(k+1) f^(n-1-k)
    ratios = [1.0]
    for n in range(1, order + 1):
        ratios.append(
            math.fsum(comb(n - 1, k, exact=True) * u[k + 1] * ratios[n - 1 - k] for k in range(n))
        )
    return ratios


def _leibniz_terms(a_N, b_N, s, order):
    u = _log_derivatives(a_N, b_N, s, order)
    order = int(order)
    f = math.exp(u[0])
    ratios = _bell(u, order)
    g = [(-1) ** k * math.factorial(k) / s ** (k + 1) for k in range(order + 1)]
    return [comb(order, k, exact=True) * f * ratios[k] * g[order - k] for k in range(order + 1)]


def gumbel_laplace_derivative(a_N, b_N, s, order):
    """
    :return: d^order/ds^order OF exp(-s a_N) Gamma(1 + s b_N) / s
    """
    return math.fsum(_leibniz_terms(a_N, b_N, s, order))


def _check_range(per, ch, source):
    if not (-RANGE_SLACK <= per <= 1 + RANGE_SLACK):
        Log.error(
            CONSISTENCY_ERROR + ": {{source}} gave {{per}} at m={{m}}, gamma_bar={{gamma_bar}}",
            source=source,
            per=per,
            m=ch.m,
            gamma_bar=ch.gamma_bar,
        )
    return min(max(per, 0.0), 1.0)


def _leibniz(constants, ch):
    """
    The normalised derivative s^m (-1)^(m-1)/Gamma(m) h^(m-1)(s) collapses to
    f(s) sum_k (-s)^k B_k/k! with B_k = f^(k)/f, so the PER is
    -expm1(u) - f sum_{k>=1} (-s)^k B_k/k!, free of the leading 1 - 1.

    :return: (PER, WORST ROUNDING ERROR OF THE SUM)
    """
    m = int(ch.m)
    s = m / ch.gamma_bar
    u = _log_derivatives(constants.a_N, constants.b_N, s, m - 1)
    ratios = _bell(u, m - 1)
    f = math.exp(u[0])
    terms = [-math.expm1(u[0])]
    terms.extend(-f * (-s) ** k * ratios[k] / math.factorial(k) for k in range(1, m))
    rounding = max(abs(t) for t in terms) * EPSILON * len(terms)
    return math.fsum(terms), rounding


def _closed_form(constants, ch):
    a, b = constants
    m, gamma_bar = int(ch.m), ch.gamma_bar
    x = 1.0 + m * b / gamma_bar
    u = ln_gamma(x) - m * a / gamma_bar

    # PER = 1 - exp(u) (1 + rest)
    if m == 1:
        rest = 0.0
    elif m == 2:
        rest = 2.0 * a / gamma_bar - 2.0 * b / gamma_bar * polygamma(0, x)
    else:
        psi = polygamma(0, x)
        trigamma = polygamma(1, x)
        g2 = gamma_bar ** 2
        rest = 0.5 * (
            9.0 * a ** 2 / g2
            + 6.0 * a / gamma_bar
            + 9.0 * b ** 2 / g2 * trigamma
            - 6.0 * b / gamma_bar * psi
            + 9.0 * b ** 2 / g2 * psi ** 2
            - 18.0 * a * b / g2 * psi
        )
    return -math.expm1(u) - math.exp(u) * rest


def avg_per_closed_form(scheme, N, ch):
    """
    THE DEDICATED EXPRESSIONS FOR m = 1, 2, 3
    """
    require(
        ch.m in CLOSED_FORM_M,
        "closed forms exist for m in {{ms}}, not {{m}}",
        ms=CLOSED_FORM_M,
        m=ch.m,
    )
    return _check_range(_closed_form(norming_constants(scheme, N), ch), ch, CLOSED_FORM)


def avg_per_leibniz(scheme, N, ch):
    """
    THE GENERIC INTEGER-m EVALUATION, WITHOUT FALLBACK
    """
    require(
        ch.m == int(ch.m) and 1 <= ch.m <= MAX_ORDER + 1,
        "the Leibniz evaluation needs integer m in 1..{{max}}, not {{m}}",
        max=MAX_ORDER + 1,
        m=ch.m,
    )
    per, _ = _leibniz(norming_constants(scheme, N), ch)
    return _check_range(per, ch, LEIBNIZ)


def gumbel_below_zero(constants, ch):
    """
    THE PART OF THE LAPLACE-TRANSFORM RESULT CONTRIBUTED BY GUMBEL MASS AT gamma < 0

    The transform integrates the Gumbel law over the whole line against the
    integer-m Gamma cdf continued to negative arguments, 1 - exp(-y) sum_{k<m} y^k/k!,
    y = m*gamma/gamma_bar.  Quadrature over [0, inf) misses this part.  With
    t = exp(-(gamma - a_N)/b_N) the Gumbel density is exp(-t) on t > exp(a_N/b_N).

    :return: THE CORRECTION TO ADD TO THE [0, inf) GUMBEL AVERAGE (NEGATIVE FOR m=1)
    """
    require(ch.m == int(ch.m), "the continued Gamma cdf needs integer m, not {{m}}", m=ch.m)
    a, b = constants
    m = int(ch.m)
    s = m / ch.gamma_bar
    start = a / b
    if start > MAX_LOG_START:
        return 0.0

    def kernel(t):
        w = s * (b * math.log(t) - a)  # -y, POSITIVE BELOW gamma=0
        if w <= 0:
            return 0.0
        log_w = math.log(w)
        terms = [math.exp(-t)]
        terms.extend(
            -((-1) ** k) * math.exp(w - t + k * log_w - math.lgamma(k + 1)) for k in range(m)
        )
        return math.fsum(terms)

    value, error = quad(
        kernel, math.exp(start), np.inf, epsabs=QUADRATURE_TOL / 10, epsrel=0.0, limit=200
    )
    if DEBUG:
        Log.note(
            "below gamma=0: {{value}} (+/-{{error}}) at m={{m}}, gamma_bar={{gamma_bar}}",
            value=value,
            error=error,
            m=m,
            gamma_bar=ch.gamma_bar,
        )
    return value


def avg_per_evt_provenance(scheme, N, ch):
    """
    :return: (AVERAGE GUMBEL PER, PROVENANCE TAG)
    """
    constants = norming_constants(scheme, N)
    m = ch.m
    if m in CLOSED_FORM_M:
        return _check_range(_closed_form(constants, ch), ch, CLOSED_FORM), CLOSED_FORM

    if m == int(m) and m <= MAX_ORDER + 1:
        per, rounding = _leibniz(constants, ch)
        if rounding <= CANCELLATION_LIMIT:
            return _check_range(per, ch, LEIBNIZ), LEIBNIZ
        Log.warning(
            "Leibniz sum at m={{m}}, gamma_bar={{gamma_bar}} rounds off by {{rounding}}",
            m=m,
            gamma_bar=ch.gamma_bar,
            rounding=rounding,
        )
    elif DEBUG:
        Log.note("m={{m}} has no classical derivative, using quadrature", m=m)

    result = evtper.oracle.avg_per_quadrature(
        scheme, N, ch, per_fn=evtper.oracle.GUMBEL, tol=QUADRATURE_TOL
    )
    per = result.value
    if m == int(m):
        # MATCH THE CLOSED FORMS, WHICH COUNT THE GUMBEL MASS BELOW gamma=0
        per += gumbel_below_zero(constants, ch)
    return _check_range(per, ch, QUAD_GUMBEL), QUAD_GUMBEL


def avg_per_evt(scheme, N, ch):
    """
    :param scheme: ModulationScheme
    :param N: PACKET LENGTH
    :param ch: FadingChannel
    :return: AVERAGE PER UNDER THE GUMBEL APPROXIMATION
    """
    return avg_per_evt_provenance(scheme, N, ch)[0]
