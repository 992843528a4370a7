# encoding: utf-8
#
#
# This Source Code Form is subject to the terms of the Mozilla Public
# License, v. 2.0. If a copy of the MPL was not distributed with this file,
# You can obtain one at http://mozilla.org/MPL/2.0/.
from __future__ import absolute_import
from __future__ import division
from __future__ import unicode_literals

import csv
import math
import sys

import pytest

from mo_files import File

from evtper import oracle
from evtper.cli import (
    CONFIG_VARIABLE,
    DEFS,
    EXIT_CONVERGENCE,
    EXIT_OK,
    EXIT_USAGE,
    RunConfig,
    cmd_compare,
    cmd_constants,
    cmd_curve,
    curve_csv,
    main,
)
from evtper.util import USAGE_ERROR
from tests.util import expect_error


def _run(monkeypatch, tmp_path, *args):
    """
    RUN THE COMMAND LINE WITH args, RETURN (exit code, CSV TEXT)
    """
    out = tmp_path / "out.csv"
    if out.exists():
        out.unlink()
    monkeypatch.setattr(sys, "argv", ["evtper"] + list(args) + ["--out", str(out)])
    code = main()
    content = File(str(out)).read() if out.exists() else None
    return code, content


def _table(content):
    """
    :return: (meta dict, header, rows) FROM curve/compare CSV
    """
    lines = content.strip().split("\n")
    meta = {}
    for line in lines:
        if line.startswith("# "):
            key, value = line[2:].split("=", 1)
            meta[key] = value
    body = [line for line in lines if not line.startswith("#")]
    header = body[0].split(",")
    rows = [dict(zip(header, line.split(","))) for line in body[1:]]
    return meta, header, rows


def test_curve(monkeypatch, tmp_path):
    code, content = _run(
        monkeypatch,
        tmp_path,
        "curve",
        "--scheme",
        "fsk",
        "--n",
        "256",
        "--m",
        "1",
        "--snr",
        "0:30:1",
        "--methods",
        "evt,quad",
    )
    assert code == EXIT_OK
    meta, header, rows = _table(content)
    assert header == ["snr_db", "per_evt", "per_quad"]
    assert len(rows) == 31
    assert meta["scheme"] == "fsk"
    assert meta["N"] == "256"
    assert meta["provenance_evt"] == "closed-form"

    at20 = [r for r in rows if float(r["snr_db"]) == 20][0]
    assert float(at20["per_evt"]) == pytest.approx(0.10260, abs=1e-4)
    for row in rows:
        assert abs(float(row["per_evt"]) - float(row["per_quad"])) < 4e-4


def test_curve_with_monte_carlo(monkeypatch, tmp_path):
    code, content = _run(
        monkeypatch,
        tmp_path,
        "curve",
        "--scheme",
        "bpsk",
        "-N",
        "32",
        "--snr",
        "10:12:1",
        "--methods",
        "mc,evt",
        "--draws",
        "5000",
        "--seed",
        "3",
    )
    assert code == EXIT_OK
    meta, header, rows = _table(content)
    assert header == ["snr_db", "per_mc", "err_mc", "per_evt"]
    assert len(rows) == 3
    assert meta["provenance_mc"] == "mc:Philox"
    assert all(float(r["err_mc"]) > 0 for r in rows)


def test_curve_threshold_records_omega0(monkeypatch, tmp_path):
    code, content = _run(
        monkeypatch,
        tmp_path,
        "curve",
        "--scheme",
        "qam16",
        "--n",
        "256",
        "--snr",
        "0:10:5",
        "--methods",
        "threshold-wu,threshold-liu",
    )
    assert code == EXIT_OK
    meta, _, rows = _table(content)
    assert float(meta["omega0_threshold-wu"]) == pytest.approx(9.168, abs=1e-3)
    assert len(rows) == 3


def test_curve_same_for_any_thread_count(monkeypatch, tmp_path):
    args = ["curve", "--scheme", "bpsk", "--n", "64", "--m", "2", "--snr", "0:20:2"]
    args += ["--methods", "evt,quad,mc", "--draws", "2000"]
    _, single = _run(monkeypatch, tmp_path, *(args + ["--threads", "1"]))
    _, many = _run(monkeypatch, tmp_path, *(args + ["--threads", "8"]))
    assert single is not None
    assert single == many


def test_compare(monkeypatch, tmp_path):
    code, content = _run(
        monkeypatch,
        tmp_path,
        "compare",
        "--scheme",
        "bpsk",
        "--n",
        "32",
        "--snr",
        "0:20:5",
        "--methods",
        "evt,quad,chernoff",
    )
    assert code == EXIT_OK
    _, header, rows = _table(content)
    assert header == ["snr_db", "per_quad", "per_evt", "err_evt", "per_chernoff", "err_chernoff"]
    assert len(rows) == 5

    summary = {}
    for line in content.split("\n"):
        if line.startswith("#summary,"):
            fields = dict(f.split("=", 1) for f in line.split(",")[1:])
            summary[fields["method"]] = fields
    assert set(summary) == {"evt", "chernoff"}
    max_abs = max(float(r["err_evt"]) for r in rows)
    assert float(summary["evt"]["max_abs"]) == pytest.approx(max_abs, rel=1e-12)
    assert float(summary["evt"]["mean_abs"]) <= max_abs
    assert float(summary["evt"]["mean_abs"]) < float(summary["chernoff"]["mean_abs"])


def test_compare_needs_oracle():
    run = RunConfig(command="compare", scheme="bpsk", N=32, methods="evt,chernoff")
    expect_error(USAGE_ERROR, cmd_compare, run)
    run = RunConfig(command="compare", scheme="bpsk", N=32, methods="quad")
    expect_error(USAGE_ERROR, cmd_compare, run)


def test_constants(monkeypatch, tmp_path):
    code, content = _run(monkeypatch, tmp_path, "constants", "--scheme", "fsk", "--n", "256")
    assert code == EXIT_OK
    header, row = content.strip().split("\n")
    values = dict(zip(header.split(","), row.split(",")))
    assert values["scheme"] == "fsk"
    assert values["a_N"] == "9.704060528"
    assert float(values["b_N"]) == 2.0
    assert float(values["omega0_liu"]) == pytest.approx(10.8585, abs=1e-4)
    assert float(values["omega0_numeric"]) == pytest.approx(10.86, rel=0.02)
    assert values["omega0_wu"] == ""


def test_constants_wu():
    header, row = cmd_constants(RunConfig(command="constants", scheme="qam16", N=1024))
    values = dict(zip(header, row))
    assert values["omega0_wu"] == pytest.approx(2.327 * math.log(1024) - 3.736, rel=1e-12)


def test_usage_errors(monkeypatch, tmp_path):
    code, content = _run(monkeypatch, tmp_path, "curve", "--scheme", "bpsk", "--methods", "series")
    assert code == EXIT_USAGE
    assert content is None

    code, _ = _run(monkeypatch, tmp_path, "constants", "--scheme", "bpsk", "--n", "2")
    assert code == EXIT_USAGE

    code, _ = _run(monkeypatch, tmp_path, "curve", "--methods", "evt,magic")
    assert code == EXIT_USAGE

    code, _ = _run(monkeypatch, tmp_path, "curve", "--snr", "30:0:1")
    assert code == EXIT_USAGE

    code, _ = _run(monkeypatch, tmp_path, "plot")
    assert code == EXIT_USAGE


def test_convergence_failure(monkeypatch, tmp_path):
    # main() SETS THE CONSTANTS; monkeypatch PUTS THE ORIGINAL BACK
    monkeypatch.setattr(oracle, "MAX_EVALUATIONS", oracle.MAX_EVALUATIONS)
    settings = tmp_path / "starved.json"
    File(str(settings)).write('{"constants": {"evtper.oracle.MAX_EVALUATIONS": 21}, "debug": {}}')
    monkeypatch.setenv(CONFIG_VARIABLE, str(settings))
    code, content = _run(monkeypatch, tmp_path, "curve", "--snr", "20:20:1", "--methods", "quad")
    assert code == EXIT_CONVERGENCE
    assert content is None


def test_curve_csv_round_trip():
    run = RunConfig(
        command="curve",
        scheme="bpsk",
        N=32,
        m=2,
        snr="0:12:1.5",
        methods="evt,quad,mc,chernoff",
        draws=5000,
        seed=9,
    )
    curve = cmd_curve(run)
    lines = [line for line in curve_csv(curve).split("\n") if line and not line.startswith("#")]
    rows = list(csv.reader(lines))
    assert rows[0] == ["snr_db", "per_evt", "per_quad", "per_mc", "err_mc", "per_chernoff"]
    assert len(rows) - 1 == len(curve.points)
    for row, (snr_db, values) in zip(rows[1:], curve.points):
        expected = [snr_db]
        for method, value in zip(curve.methods, values):
            expected.append(value.value)
            if method == "mc":
                expected.append(value.error)
        assert [float(cell) for cell in row] == expected


def test_main_runs_twice(monkeypatch, tmp_path):
    size = len(DEFS)
    args = ["constants", "--scheme", "fsk", "--n", "64"]
    first = _run(monkeypatch, tmp_path, *args)
    second = _run(monkeypatch, tmp_path, *args)
    assert first[0] == second[0] == EXIT_OK
    assert first[1] == second[1]
    assert len(DEFS) == size
