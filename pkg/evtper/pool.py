# encoding: utf-8
#
# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this file,
# You can obtain one at http://mozilla.org/MPL/2.0/.
#

from __future__ import division
from __future__ import unicode_literals

import os

from mo_dots import coalesce
from mo_logs import Except, Log
from mo_threads import Lock, Thread

THREADS_VARIABLE = str("EVTPER_THREADS")


def worker_count(requested=None):
    """
    :param requested: THREADS ASKED FOR BY THE CALLER (None FOR DEFAULT)
    :return: THE NUMBER OF WORKERS TO USE, CAPPED BY $EVTPER_THREADS
    """
    cap = os.environ.get(THREADS_VARIABLE)
    try:
        cap = int(cap) if cap else None
    except Exception as e:
        Log.warning("Ignoring {{name}}={{value|quote}}", name=THREADS_VARIABLE, value=cap, cause=e)
        cap = None

    threads = int(coalesce(requested, cap, 1))
    if cap:
        threads = min(threads, cap)
    return max(1, threads)


class Failures(object):
    """
    Collect worker exceptions, keep the one for the lowest item index so the
    reported error does not depend on thread timing
    """

    def __init__(self):
        self.locker = Lock()
        self.index = None
        self.cause = None

    def add(self, index, cause):
        with self.locker:
            if self.index is None or index < self.index:
                self.index = index
                self.cause = cause

    def __bool__(self):
        return self.cause is not None

    __nonzero__ = __bool__


def parallel_map(name, func, items, threads=1):
    """
    func APPLIED TO EACH ITEM, RESULTS IN ITEM ORDER

    Worker w handles items w, w+threads, w+2*threads, ...; every result lands in
    its own slot, so the output is the same for any number of workers.

    :param name: PREFIX FOR THE THREAD NAMES
    :param func: ONE-ARGUMENT FUNCTION
    :param items: WORK ITEMS
    :param threads: MAXIMUM NUMBER OF WORKERS
    :return: LIST OF RESULTS
    """
    items = list(items)
    threads = max(1, min(int(threads), len(items)))
    if threads == 1:
        return [func(item) for item in items]

    results = [None] * len(items)
    failures = Failures()

    def worker(offset, please_stop=None):
        for i in range(offset, len(items), threads):
            if please_stop:
                return
            try:
                results[i] = func(items[i])
            except Exception as e:
                failures.add(i, Except.wrap(e))

    workers = [Thread.run(name + " " + str(w), worker, w) for w in range(threads)]
    for w in workers:
        w.join()

    if failures:
        Log.error(
            "{{name}} failed on item {{index}}",
            name=name,
            index=failures.index,
            cause=failures.cause,
        )
    return results
