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

from mo_dots import coalesce, wrap
from mo_logs import Log

from evtper import baselines
from evtper.fading import avg_per_evt_provenance
from evtper.modulation import EXPFORM, QFORM
from evtper.oracle import EXACT, GENERATOR, avg_per_montecarlo, avg_per_quadrature
from evtper.util import USAGE_ERROR

# AvgPerMethod NAMES
EVT = "evt"
QUAD = "quad"
MC = "mc"
SERIES = "series"
THRESHOLD_NUMERIC = "threshold-numeric"
THRESHOLD_LIU = "threshold-liu"
THRESHOLD_WU = "threshold-wu"
CHERNOFF = "chernoff"
METHODS = (EVT, QUAD, MC, SERIES, THRESHOLD_NUMERIC, THRESHOLD_LIU, THRESHOLD_WU, CHERNOFF)
THRESHOLDS = (THRESHOLD_NUMERIC, THRESHOLD_LIU, THRESHOLD_WU)
ORACLE = QUAD

DEFAULT_TOL = 1e-9
DEFAULT_DRAWS = 100000
DEFAULT_SEED = 0

# error IS THE QUADRATURE ERROR ESTIMATE OR THE MC STANDARD ERROR, None OTHERWISE
PerValue = namedtuple("PerValue", ["value", "error", "provenance"])


def parse_methods(text):
    """
    :param text: COMMA SEPARATED METHOD NAMES, OR A LIST OF THEM
    :return: LIST OF METHOD NAMES, IN GIVEN ORDER, WITHOUT REPEATS
    """
    if isinstance(text, (list, tuple)):
        names = [n.strip().lower() for n in text]
    else:
        names = [n.strip().lower() for n in (text or "").split(",")]
    output = []
    for name in names:
        if not name or name in output:
            continue
        if name not in METHODS:
            Log.error(
                USAGE_ERROR + ": unknown method {{name|quote}}, expecting one of {{methods}}",
                name=name,
                methods=METHODS,
            )
        output.append(name)
    if not output:
        Log.error(USAGE_ERROR + ": expecting at least one method")
    return output


def validate(methods, scheme, ch):
    """
    RAISE USAGE_ERROR FOR A METHOD THAT DOES NOT APPLY TO scheme OR ch
    """
    for method in methods:
        if method == SERIES and (scheme.form != EXPFORM or ch.m != 1):
            Log.error(
                USAGE_ERROR + ": {{method}} needs exp-form and m=1, not {{scheme}}, m={{m}}",
                method=method,
                scheme=scheme.name,
                m=ch.m,
            )
        elif method == CHERNOFF and scheme.form != QFORM:
            Log.error(
                USAGE_ERROR + ": {{method}} needs a Q-form scheme, not {{scheme}}",
                method=method,
                scheme=scheme.name,
            )
        elif method in THRESHOLDS and ch.m != 1:
            Log.error(
                USAGE_ERROR + ": {{method}} is a Rayleigh (m=1) bound, not m={{m}}",
                method=method,
                m=ch.m,
            )
        elif method == THRESHOLD_WU and scheme.name not in baselines.WU_FITTED:
            Log.error(
                USAGE_ERROR + ": {{method}} has no fitted constants for {{scheme}}",
                method=method,
                scheme=scheme.name,
            )


def average_per(method, scheme, N, ch, settings=None, omega0=None):
    """
    :param method: ONE OF METHODS
    :param settings: OPTIONAL tol, draws, seed, threads
    :param omega0: OPTIONAL {method: omega0} FOR THE THRESHOLD METHODS
    :return: PerValue
    """
    settings = wrap(settings or {})
    tol = coalesce(settings.tol, DEFAULT_TOL)

    if method == EVT:
        value, provenance = avg_per_evt_provenance(scheme, N, ch)
        return PerValue(value, None, provenance)
    if method == QUAD:
        result = avg_per_quadrature(scheme, N, ch, per_fn=EXACT, tol=tol)
        return PerValue(result.value, result.abs_error_estimate, QUAD)
    if method == MC:
        result = avg_per_montecarlo(
            scheme,
            N,
            ch,
            draws=coalesce(settings.draws, DEFAULT_DRAWS),
            seed=coalesce(settings.seed, DEFAULT_SEED),
            threads=coalesce(settings.threads, 1),
        )
        return PerValue(result.mean, result.std_error, MC + ":" + GENERATOR)
    if method == SERIES:
        return PerValue(baselines.avg_per_exact_series(scheme, N, ch), None, SERIES)
    if method == CHERNOFF:
        return PerValue(baselines.avg_per_chernoff(scheme, N, ch), None, CHERNOFF)
    if method in THRESHOLDS:
        known = (omega0 or {}).get(method)
        if known is None:
            known = threshold_omega0(method, scheme, N)
        return PerValue(baselines.avg_per_threshold_bound(known, ch.gamma_bar), None, method)
    Log.error(USAGE_ERROR + ": unknown method {{method|quote}}", method=method)


def threshold_omega0(method, scheme, N):
    """
    omega0 USED BY A THRESHOLD METHOD; IT DOES NOT DEPEND ON gamma_bar, SO A
    CURVE COMPUTES IT ONCE
    """
    if method == THRESHOLD_NUMERIC:
        model = baselines.NUMERIC_MODEL
    elif method == THRESHOLD_LIU:
        model = baselines.omega0_liu(scheme)
    else:
        model = baselines.omega0_wu(scheme)
    return baselines.omega0_model(scheme, model, N)
