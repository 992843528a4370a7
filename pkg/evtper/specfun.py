# encoding: utf-8
#
#
# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this file,
# You can obtain one at http://mozilla.org/MPL/2.0/.
"""
Special functions used by the PER expressions.  All accept a scalar or a numpy
array; scalars come back as plain float.
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import unicode_literals

import numpy as np
from scipy import special

from evtper.util import require, scalar_or_array

SQRT2 = np.sqrt(2.0)
MAX_POLYGAMMA_ORDER = 16
TAIL_BRANCH = 0.5  # |p| ABOVE THIS USES THE COMPLEMENTARY INVERSE


def q_function(x):
    """
    UPPER TAIL OF THE STANDARD NORMAL, Q(x) = erfc(x/sqrt(2))/2
    """
    x = np.asarray(x, dtype=float)
    require(np.all(np.isfinite(x)), "q_function expects finite input")
    return scalar_or_array(0.5 * special.erfc(x / SQRT2))


def q_inverse(p):
    """
    :param p: UPPER TAIL PROBABILITY IN (0, 1)
    :return: x WITH Q(x) = p
    """
    p = np.asarray(p, dtype=float)
    require(np.all((p > 0) & (p < 1)), "q_inverse expects 0 < p < 1")
    return scalar_or_array(SQRT2 * special.erfcinv(2.0 * p))


def erf_inv(p):
    p = np.asarray(p, dtype=float)
    require(np.all(np.abs(p) < 1), "erf_inv expects -1 < p < 1")
    magnitude = np.abs(p)
    # NEAR |p|=1 erfinv LOSES DIGITS; 1-|p| IS EXACT THERE, SO GO THROUGH erfcinv
    result = np.where(
        magnitude > TAIL_BRANCH,
        np.sign(p) * special.erfcinv(1.0 - magnitude),
        special.erfinv(p),
    )
    return scalar_or_array(result)


def erfc_inv(q):
    """
    erf_inv(1 - q) WITHOUT FORMING 1 - q
    :param q: IN (0, 2)
    """
    q = np.asarray(q, dtype=float)
    require(np.all((q > 0) & (q < 2)), "erfc_inv expects 0 < q < 2")
    return scalar_or_array(special.erfcinv(q))


def ln_gamma(x):
    x = np.asarray(x, dtype=float)
    require(np.all(x > 0), "ln_gamma expects x > 0")
    return scalar_or_array(special.gammaln(x))


def gamma(x):
    x = np.asarray(x, dtype=float)
    require(np.all(x > 0), "gamma expects x > 0")
    return scalar_or_array(special.gamma(x))


def polygamma(n, x):
    """
    n-TH DERIVATIVE OF THE DIGAMMA FUNCTION; n=0 IS psi, n=1 IS THE TRIGAMMA
    :param n: ORDER, 0 <= n <= MAX_POLYGAMMA_ORDER
    :param x: POSITIVE REAL
    """
    require(
        int(n) == n and 0 <= n <= MAX_POLYGAMMA_ORDER,
        "polygamma order {{n}} is outside 0..{{max}}",
        n=n,
        max=MAX_POLYGAMMA_ORDER,
    )
    x = np.asarray(x, dtype=float)
    require(np.all(x > 0), "polygamma expects x > 0")
    if n == 0:
        return scalar_or_array(special.digamma(x))
    return scalar_or_array(special.polygamma(int(n), x))
