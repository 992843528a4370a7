# encoding: utf-8
#
#
# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this file,
# You can obtain one at http://mozilla.org/MPL/2.0/.
from __future__ import absolute_import
from __future__ import division
from __future__ import unicode_literals

from collections import namedtuple

import numpy as np

from mo_logs import Log

# ERROR TEMPLATES, CHECK WITH `DOMAIN_ERROR in e`
DOMAIN_ERROR = "domain error"
USAGE_ERROR = "usage error"
CONVERGENCE_ERROR = "did not converge"
CONSISTENCY_ERROR = "internal consistency"

EULER_GAMMA = 0.57721566490153286061


def require(condition, template, **params):
    """
    RAISE A DOMAIN ERROR UNLESS condition HOLDS
    :param condition: True IF THE ARGUMENTS ARE ACCEPTABLE
    :param template: EXPLANATION, PREFIXED WITH DOMAIN_ERROR
    """
    if not condition:
        Log.error(DOMAIN_ERROR + ": " + template, **params)


def scalar_or_array(value):
    # 0-d RESULTS GO BACK TO THE CALLER AS PLAIN float
    if np.ndim(value) == 0:
        return float(value)
    return value


def db2lin(db):
    return 10.0 ** (np.asarray(db, dtype=float) / 10.0)


def snr_grid(start, stop, step):
    """
    INCLUSIVE dB GRID, SO 0:30:1 HAS 31 POINTS
    """
    require(step > 0, "snr step must be positive, not {{step}}", step=step)
    require(start <= stop, "snr start {{start}} is above stop {{stop}}", start=start, stop=stop)
    count = int(np.floor((stop - start) / step + 1e-9)) + 1
    return [start + i * step for i in range(count)]


def parse_range(text):
    """
    :param text: "start:stop:step" IN dB
    :return: (start, stop, step) AS floats
    """
    try:
        start, stop, step = (float(p) for p in text.split(":"))
    except Exception as e:
        Log.error(
            DOMAIN_ERROR + ": expecting start:stop:step, not {{text|quote}}", text=text, cause=e
        )
    return start, stop, step


# Used for increasing readability
# Can be accessed with result.value, result.abs_error_estimate
QuadResult = namedtuple("QuadResult", ["value", "abs_error_estimate", "evaluations"])
McResult = namedtuple("McResult", ["mean", "std_error", "draws", "seed", "generator"])
