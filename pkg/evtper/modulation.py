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
from evtper.specfun import q_function
from evtper.util import DOMAIN_ERROR, require, scalar_or_array

QFORM = "q"  # c_m Q(sqrt(k_m gamma))
EXPFORM = "exp"  # c_m exp(-k_m gamma)
FORMS = (QFORM, EXPFORM)

ModulationScheme = namedtuple("ModulationScheme", ["name", "form", "c_m", "k_m"])


def custom_scheme(name, form, c_m, k_m):
    """
    A CUSTOM SCHEME; THE BUILTINS ARE ONLY CONVENIENCES
    """
    require(form in FORMS, "BER form {{form|quote}} is not in {{forms}}", form=form, forms=FORMS)
    require(c_m > 0 and k_m > 0, "expecting c_m > 0 and k_m > 0, not ({{c}}, {{k}})", c=c_m, k=k_m)
    return ModulationScheme(name, form, float(c_m), float(k_m))


def mqam(M):
    """
    SQUARE M-QAM, BER ~ (4/k)(1-1/sqrt(M)) Q(sqrt(3k gamma/(M-1))), k=log2(M)
    """
    k = int(round(np.log2(M))) if M > 0 else 0
    if M < 4 or 2 ** k != M or k % 2:
        Log.error(DOMAIN_ERROR + ": M-QAM needs a power of 4 for M, not {{M}}", M=M)
    c_m = (4.0 / k) * (1.0 - 1.0 / np.sqrt(M))
    k_m = 3.0 * k / (M - 1)
    return custom_scheme("qam" + str(M), QFORM, c_m, k_m)


FSK = custom_scheme("fsk", EXPFORM, 0.5, 0.5)
# NOT STATED WITH THE OTHERS; THE USUAL DBPSK CONSTANTS
DPSK = custom_scheme("dpsk", EXPFORM, 0.5, 1.0)
BPSK = custom_scheme("bpsk", QFORM, 1.0, 2.0)

BUILTIN = {"fsk": FSK, "dpsk": DPSK, "bpsk": BPSK}


def builtin_scheme(name):
    """
    :param name: fsk, dpsk, bpsk, qamM (qam16, qam64, ...) OR custom:form,c,k
    :return: ModulationScheme
    """
    name = name.strip().lower()
    if name in BUILTIN:
        return BUILTIN[name]
    if name.startswith("qam"):
        try:
            M = int(name[3:])
        except Exception as e:
            Log.error(DOMAIN_ERROR + ": unknown scheme {{name|quote}}", name=name, cause=e)
        return mqam(M)
    if name.startswith("custom:"):
        try:
            form, c_m, k_m = name[7:].split(",")
            c_m, k_m = float(c_m), float(k_m)
        except Exception as e:
            Log.error(
                DOMAIN_ERROR + ": expecting custom:form,c,k, not {{name|quote}}",
                name=name,
                cause=e,
            )
        return custom_scheme(name, form.strip(), c_m, k_m)
    Log.error(DOMAIN_ERROR + ": unknown scheme {{name|quote}}", name=name)


def ber(scheme, gamma):
    """
    INSTANTANEOUS BIT ERROR RATE
    :param scheme: ModulationScheme
    :param gamma: LINEAR SNR (SCALAR OR ARRAY), >= 0
    """
    gamma = np.asarray(gamma, dtype=float)
    require(np.all(gamma >= 0), "ber expects a non-negative SNR")
    if scheme.form == QFORM:
        return scalar_or_array(scheme.c_m * q_function(np.sqrt(scheme.k_m * gamma)))
    else:
        return scalar_or_array(scheme.c_m * np.exp(-scheme.k_m * gamma))
