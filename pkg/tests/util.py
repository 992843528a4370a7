# encoding: utf-8
#
#
# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this file,
# You can obtain one at http://mozilla.org/MPL/2.0/.
from __future__ import absolute_import
from __future__ import division
from __future__ import unicode_literals

from mo_logs import Except


def expect_error(template, func, *args, **kwargs):
    """
    CALL func, WHICH MUST RAISE AN ERROR CONTAINING template
    :return: THE Except RAISED
    """
    try:
        func(*args, **kwargs)
    except Exception as e:
        e = Except.wrap(e)
        assert template in e
        return e
    assert False, "expecting " + template  # SHOULD NOT GET HERE
