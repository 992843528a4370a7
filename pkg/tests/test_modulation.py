# encoding: utf-8
#
#
# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this file,
# You can obtain one at http://mozilla.org/MPL/2.0/.
from __future__ import absolute_import
from __future__ import division
from __future__ import unicode_literals

import math

import numpy as np
import pytest

from evtper.modulation import (
    BPSK,
    DPSK,
    EXPFORM,
    FSK,
    QFORM,
    ber,
    builtin_scheme,
    custom_scheme,
    mqam,
)
from evtper.util import DOMAIN_ERROR
from tests.util import expect_error

BUILTINS = ["fsk", "dpsk", "bpsk", "qam4", "qam16", "qam64"]


def test_builtin_constants():
    assert (FSK.form, FSK.c_m, FSK.k_m) == (EXPFORM, 0.5, 0.5)
    assert (DPSK.form, DPSK.c_m, DPSK.k_m) == (EXPFORM, 0.5, 1.0)
    assert (BPSK.form, BPSK.c_m, BPSK.k_m) == (QFORM, 1.0, 2.0)


def test_qam16():
    scheme = builtin_scheme("qam16")
    assert scheme.form == QFORM
    assert scheme.c_m == pytest.approx(0.75, rel=1e-15)
    assert scheme.k_m == pytest.approx(0.8, rel=1e-15)


def test_qam4_from_formula():
    scheme = mqam(4)
    assert scheme.c_m == pytest.approx(1.0, rel=1e-15)
    assert scheme.k_m == pytest.approx(2.0, rel=1e-15)


def test_unsupported_qam():
    expect_error(DOMAIN_ERROR, mqam, 8)
    expect_error(DOMAIN_ERROR, mqam, 2)
    expect_error(DOMAIN_ERROR, builtin_scheme, "qam32")
    expect_error(DOMAIN_ERROR, builtin_scheme, "qamx")
    expect_error(DOMAIN_ERROR, builtin_scheme, "ook")


def test_custom_scheme():
    scheme = builtin_scheme("custom:exp,0.25,3")
    assert (scheme.form, scheme.c_m, scheme.k_m) == (EXPFORM, 0.25, 3.0)
    expect_error(DOMAIN_ERROR, builtin_scheme, "custom:exp,0.25")
    expect_error(DOMAIN_ERROR, custom_scheme, "x", "sine", 1, 1)
    expect_error(DOMAIN_ERROR, custom_scheme, "x", QFORM, 0, 1)


def test_ber_examples():
    assert ber(FSK, 2.0) == pytest.approx(0.5 * math.exp(-1), rel=1e-15)
    assert ber(BPSK, 4.0) == pytest.approx(2.33886749052759207941e-3, rel=1e-12)
    assert ber(FSK, 0.0) == 0.5
    assert ber(BPSK, 0.0) == 0.5


def test_ber_vectorised():
    gamma = np.array([0.0, 1.0, 2.0])
    result = ber(FSK, gamma)
    assert result.shape == (3,)
    assert result[2] == ber(FSK, 2.0)


def test_ber_decreasing_and_bounded():
    gamma = np.linspace(0, 40, 401)
    for name in BUILTINS:
        values = ber(builtin_scheme(name), gamma)
        assert np.all(np.diff(values[values > 0]) < 0)
        assert np.all(values <= 0.5 + 1e-15)
        assert np.all(values >= 0)


def test_ber_rejects_negative_snr():
    expect_error(DOMAIN_ERROR, ber, FSK, -0.1)
