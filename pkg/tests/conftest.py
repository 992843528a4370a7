# encoding: utf-8
#
#
# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this file,
# You can obtain one at http://mozilla.org/MPL/2.0/.
from __future__ import absolute_import
from __future__ import division
from __future__ import unicode_literals

import os

import pytest

from mo_logs import Log, constants, startup

from evtper.cli import CONFIG_FILE, CONFIG_VARIABLE


def pytest_addoption(parser):
    parser.addoption(
        "--slow",
        action="store",
        default="no",
        help="`yes` or `no` to run the slow acceptance checks",
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("slow") == "yes":
        return
    skip = pytest.mark.skip(reason="use --slow=yes to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def config():
    config = startup.read_settings(filename=os.environ.get(CONFIG_VARIABLE, CONFIG_FILE))
    constants.set(config.constants)
    Log.start(config.debug)
    return config

