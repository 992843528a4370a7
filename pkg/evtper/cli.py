# encoding: utf-8
#
# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this file,
# You can obtain one at http://mozilla.org/MPL/2.0/.
#
"""
COMMAND LINE FRONT END, CSV ON STANDARD OUTPUT (OR --out)

    python -m evtper.cli curve --scheme fsk --n 256 --m 1 --snr 0:30:1 --methods evt,quad
    python -m evtper.cli compare --scheme bpsk --n 32 --methods quad,evt,chernoff
    python -m evtper.cli constants --scheme qam16 --n 1024
"""
from __future__ import absolute_import
from __future__ import division
from __future__ import unicode_literals

import csv
import io
import os
import sys
from collections import namedtuple

from mo_dots import coalesce, set_default, wrap
from mo_files import File
from mo_kwargs import override
from mo_logs import Except, Log, constants, startup
from mo_times import Timer

from evtper import __version__
from evtper.awgn import norming_constants
from evtper.baselines import NUMERIC_MODEL, WU_FITTED, omega0_liu, omega0_model, omega0_wu
from evtper.fading import channel
from evtper.methods import (
    MC,
    ORACLE,
    THRESHOLDS,
    average_per,
    parse_methods,
    threshold_omega0,
    validate,
)
from evtper.modulation import builtin_scheme
from evtper.pool import parallel_map, worker_count
from evtper.util import (
    CONVERGENCE_ERROR,
    DOMAIN_ERROR,
    USAGE_ERROR,
    db2lin,
    parse_range,
    require,
    snr_grid,
)

CONFIG_VARIABLE = str("EVTPER_CONFIG")
ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIG_FILE = os.path.join(ROOT, "config.json")
STDOUT = "-"
CURVE = "curve"
COMPARE = "compare"
CONSTANTS = "constants"
COMMANDS = (CURVE, COMPARE, CONSTANTS)
VALUE_FORMAT = "%.17g"
CONSTANT_FORMAT = "%.10g"

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2
EXIT_CONVERGENCE = 3

DEFS = [
    {"name": "command", "help": "one of " + ", ".join(COMMANDS), "choices": list(COMMANDS)},
    {"name": "--scheme", "help": "fsk, dpsk, bpsk, qamM or custom:form,c,k", "dest": "scheme"},
    {"name": ["--n", "-N"], "help": "packet length in bits", "type": int, "dest": "N"},
    {"name": "--m", "help": "Nakagami fading parameter", "type": float, "dest": "m"},
    {"name": "--snr", "help": "average SNR start:stop:step in dB", "dest": "snr"},
    {"name": "--methods", "help": "comma separated methods", "dest": "methods"},
    {"name": "--tol", "help": "quadrature tolerance", "type": float, "dest": "tol"},
    {"name": "--draws", "help": "Monte Carlo draws", "type": int, "dest": "draws"},
    {"name": "--seed", "help": "Monte Carlo seed", "type": int, "dest": "seed"},
    {"name": "--out", "help": "output file, - for standard output", "dest": "out"},
    {"name": "--threads", "help": "worker threads", "type": int, "dest": "threads"},
]

# meta IS A LIST OF (key, value); points ARE (snr_db, [PerValue, ...]) IN methods ORDER
PerCurve = namedtuple("PerCurve", ["meta", "methods", "points"])


class RunConfig(object):
    @override
    def __init__(
        self,
        command=CURVE,
        scheme="fsk",
        N=256,
        m=1,
        snr="0:30:1",
        methods="evt,quad",
        tol=1e-9,
        draws=100000,
        seed=0,
        out=STDOUT,
        threads=None,
        kwargs=None,
    ):
        require(command in COMMANDS, "unknown command {{command|quote}}", command=command)
        require(int(N) == N and N >= 1, "packet length must be a positive integer, not {{N}}", N=N)
        self.command = command
        self.scheme_name = scheme
        self.scheme = builtin_scheme(scheme)
        self.N = int(N)
        self.m = float(m)
        channel(self.m, 1.0)
        self.snr = snr
        self.snr_db = snr_grid(*parse_range(snr))
        self.methods = parse_methods(methods)
        self.tol = float(tol)
        self.draws = int(draws)
        self.seed = int(seed)
        self.out = out
        self.threads = threads

    @property
    def settings(self):
        # EACH POINT RUNS ON ONE THREAD, THE POINTS ARE SPREAD OVER THE WORKERS
        return wrap({"tol": self.tol, "draws": self.draws, "seed": self.seed, "threads": 1})

    def echo(self):
        return [
            ("command", self.command),
            ("scheme", self.scheme_name),
            ("c_m", VALUE_FORMAT % self.scheme.c_m),
            ("k_m", VALUE_FORMAT % self.scheme.k_m),
            ("form", self.scheme.form),
            ("N", self.N),
            ("m", VALUE_FORMAT % self.m),
            ("snr_db", self.snr),
            ("methods", ",".join(self.methods)),
            ("tol", VALUE_FORMAT % self.tol),
            ("draws", self.draws),
            ("seed", self.seed),
            ("version", __version__),
        ]


def _evaluate(run, methods, threads):
    validate(methods, run.scheme, channel(run.m, 1.0))
    omega0 = {
        method: threshold_omega0(method, run.scheme, run.N)
        for method in methods
        if method in THRESHOLDS
    }
    settings = run.settings

    def point(snr_db):
        ch = channel(run.m, float(db2lin(snr_db)))
        return (
            snr_db,
            [average_per(method, run.scheme, run.N, ch, settings, omega0) for method in methods],
        )

    with Timer("{{num}} points of {{methods}}", {"num": len(run.snr_db), "methods": methods}):
        points = parallel_map("point", point, run.snr_db, threads)

    meta = run.echo()
    for i, method in enumerate(methods):
        tags = sorted(set(values[i].provenance for _, values in points))
        meta.append(("provenance_" + method, ",".join(tags)))
    for method, value in sorted(omega0.items()):
        meta.append(("omega0_" + method, VALUE_FORMAT % value))
    return PerCurve(meta, methods, points)


def cmd_curve(run, threads=1):
    """
    :return: PerCurve, ONE COLUMN PER METHOD
    """
    return _evaluate(run, run.methods, threads)


def cmd_compare(run, threads=1):
    """
    :return: (PerCurve WITH THE ORACLE FIRST, SUMMARY LIST OF (method, max_abs, mean_abs, max_rel))
    """
    if ORACLE not in run.methods or len(run.methods) < 2:
        Log.error(
            USAGE_ERROR + ": compare needs {{oracle}} and another method, not {{methods}}",
            oracle=ORACLE,
            methods=run.methods,
        )
    methods = [ORACLE] + [m for m in run.methods if m != ORACLE]
    curve = _evaluate(run, methods, threads)

    summary = []
    for i, method in enumerate(methods[1:], 1):
        errors = [abs(values[i].value - values[0].value) for _, values in curve.points]
        relative = [
            e / values[0].value
            for e, (_, values) in zip(errors, curve.points)
            if values[0].value > 0
        ]
        summary.append(
            (method, max(errors), sum(errors) / len(errors), max(relative) if relative else 0.0)
        )
    return curve, summary


def cmd_constants(run):
    """
    :return: (header, row) WITH a_N, b_N AND THE omega0 VALUES
    omega0_wu IS None FOR SCHEMES WITHOUT FITTED CONSTANTS
    """
    scheme, N = run.scheme, run.N
    a_N, b_N = norming_constants(scheme, N)
    wu = omega0_model(scheme, omega0_wu(scheme), N) if scheme.name in WU_FITTED else None
    header = ["scheme", "N", "a_N", "b_N", "omega0_numeric", "omega0_liu", "omega0_wu"]
    row = [
        run.scheme_name,
        N,
        a_N,
        b_N,
        omega0_model(scheme, NUMERIC_MODEL, N),
        omega0_model(scheme, omega0_liu(scheme), N),
        wu,
    ]
    return header, row


def _meta_lines(meta):
    return "".join("# " + key + "=" + str(value) + "\n" for key, value in meta)


def _format(value, template=VALUE_FORMAT):
    if value is None:
        return ""
    if isinstance(value, float):
        return template % value
    return str(value)


def _csv(rows, template=VALUE_FORMAT):
    """
    :param rows: LISTS OF CELLS, FLOATS ARE FORMATTED WITH template
    :return: CSV TEXT WITH NEWLINE LINE ENDINGS
    """
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    for row in rows:
        writer.writerow([_format(v, template) for v in row])
    return output.getvalue()


def curve_csv(curve):
    header = ["snr_db"]
    for method in curve.methods:
        header.append("per_" + method)
        if method == MC:
            header.append("err_" + method)
    rows = [header]
    for snr_db, values in curve.points:
        row = [float(snr_db)]
        for method, value in zip(curve.methods, values):
            row.append(value.value)
            if method == MC:
                row.append(value.error)
        rows.append(row)
    return _meta_lines(curve.meta) + _csv(rows)


def compare_csv(curve, summary):
    oracle = curve.methods[0]
    header = ["snr_db", "per_" + oracle]
    for method in curve.methods[1:]:
        header.extend(["per_" + method, "err_" + method])
    rows = [header]
    for snr_db, values in curve.points:
        row = [float(snr_db), values[0].value]
        for value in values[1:]:
            row.extend([value.value, abs(value.value - values[0].value)])
        rows.append(row)
    for method, max_abs, mean_abs, max_rel in summary:
        rows.append(
            [
                "#summary",
                "method=" + method,
                "max_abs=" + _format(max_abs),
                "mean_abs=" + _format(mean_abs),
                "max_rel=" + _format(max_rel),
            ]
        )
    return _meta_lines(curve.meta) + _csv(rows)


def constants_csv(header, row):
    return _csv([header, row], CONSTANT_FORMAT)


def run_command(run):
    """
    :return: CSV TEXT FOR run.command
    """
    threads = worker_count(run.threads)
    if run.command == CURVE:
        return curve_csv(cmd_curve(run, threads))
    if run.command == COMPARE:
        return compare_csv(*cmd_compare(run, threads))
    return constants_csv(*cmd_constants(run))


def write(content, out):
    if out in (None, STDOUT):
        sys.stdout.write(content)
        sys.stdout.flush()
    else:
        File(out).write(content)


def exit_code(e):
    if CONVERGENCE_ERROR in e:
        return EXIT_CONVERGENCE
    if DOMAIN_ERROR in e or USAGE_ERROR in e:
        return EXIT_USAGE
    return EXIT_ERROR


def main():
    try:
        # read_settings APPENDS ITS --config OPTION TO THE LIST IT IS GIVEN
        config = startup.read_settings(
            defs=[dict(d) for d in DEFS],
            default_filename=coalesce(os.environ.get(CONFIG_VARIABLE), CONFIG_FILE),
        )
    except SystemExit as e:
        # argparse EXITS WITH 2 ON BAD FLAGS
        return e.code
    except Exception as e:
        sys.stderr.write("evtper: can not read settings: " + str(e) + "\n")
        return EXIT_USAGE

    try:
        constants.set(config.constants)
        Log.start(config.debug)
        run = RunConfig(kwargs=set_default({}, config.args, config.evtper))
        write(run_command(run), run.out)
        return EXIT_OK
    except Exception as e:
        e = Except.wrap(e)
        Log.warning("evtper {{command}} failed", command=config.args.command, cause=e)
        return exit_code(e)
    finally:
        Log.stop()


if __name__ == "__main__":
    sys.exit(main())
