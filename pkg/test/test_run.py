#!/usr/bin/env python3

# Copyright (c) visarea contributors.
# This source code is licensed under the MIT license found in the
# LICENSE file in the root directory of this source tree.

import json
import os
import xml.etree.ElementTree as ET

import pytest

from visarea.core.engine import STATS_KEYS
from visarea.core.logging import logger
from visarea.core.geometry import Point
from visarea.core.polygon import read_polygon, write_polygon
from visarea.oracle.reference import compare_cyclic
from visarea.run import build_parser, main
from visarea.utils.visualizations.svg import SVG_NS

NOTCHED_SQUARE = "test/data/notched_square.poly"
NOTCHED_ORACLE = "test/data/notched_square_oracle.poly"


def _tag(name):
    return f"{{{SVG_NS}}}{name}"


def _convex_square(tmp_path):
    path = str(tmp_path / "square.poly")
    write_polygon(
        path,
        [Point(0, 0), Point(4, 0), Point(4, 4), Point(0, 4)],
        Point(1, 1),
    )
    return path


def test_parser_opts():
    args = build_parser().parse_args(
        ["run", "--mode", "validated", "in.poly", "SEED", "3"]
    )
    assert args.command == "run"
    assert args.input == "in.poly"
    assert args.mode == "validated"
    assert args.opts == ["SEED", "3"]


def test_run_notched_square(tmp_path):
    out = str(tmp_path / "out.poly")
    stats_path = str(tmp_path / "stats.json")
    svg = str(tmp_path / "out.svg")
    code = main(
        [
            "run",
            "--engine",
            "constrained",
            "--output",
            out,
            "--stats",
            stats_path,
            "--svg",
            svg,
            NOTCHED_SQUARE,
        ]
    )
    assert code == 0
    result = read_polygon(out)
    assert result.viewpoint == Point(2, 1)
    assert compare_cyclic(result.points, read_polygon(NOTCHED_ORACLE).points)

    with open(stats_path) as f:
        stats = json.load(f)
    assert tuple(stats) == STATS_KEYS
    assert stats["n"] == 8
    assert stats["c"] == 2
    assert stats["flag_bits"] == 2

    root = ET.parse(svg).getroot()
    assert root.tag == _tag("svg")
    paths = root.findall(_tag("path"))
    assert [p.get("id") for p in paths] == ["boundary", "visibility"]
    circles = root.findall(_tag("circle"))
    assert sorted(c.get("class") for c in circles) == [
        "critical",
        "critical",
        "viewpoint",
    ]
    assert len(root.findall(_tag("line"))) == 2


def test_run_is_reproducible(tmp_path):
    outputs = []
    for k in range(2):
        out = str(tmp_path / f"out{k}.poly")
        assert main(["run", "--output", out, NOTCHED_SQUARE]) == 0
        with open(out) as f:
            outputs.append(f.read())
    assert outputs[0] == outputs[1]


def test_run_oracle_engine(tmp_path):
    out = str(tmp_path / "out.poly")
    stats_path = str(tmp_path / "stats.json")
    code = main(
        [
            "run",
            "--engine",
            "oracle",
            "--output",
            out,
            "--stats",
            stats_path,
            NOTCHED_SQUARE,
        ]
    )
    assert code == 0
    assert compare_cyclic(
        read_polygon(out).points, read_polygon(NOTCHED_ORACLE).points
    )
    with open(stats_path) as f:
        assert json.load(f)["mode"] == "n/a"


def test_run_convex_square(tmp_path):
    path = _convex_square(tmp_path)
    out = str(tmp_path / "out.poly")
    assert main(["run", "--output", out, path]) == 0
    assert compare_cyclic(read_polygon(out).points, read_polygon(path).points)


def test_run_to_stdout(capsys):
    assert main(["run", NOTCHED_SQUARE]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "8"
    assert lines[-1] == "2.0 1.0"


def test_run_viewpoint_outside(mocker):
    error = mocker.patch.object(logger, "error")
    code = main(["run", "--viewpoint", "5,5", NOTCHED_SQUARE])
    assert code == 1
    assert error.call_args[0][1] == "ViewpointOutside"


def test_run_degenerate_viewpoint(mocker):
    error = mocker.patch.object(logger, "error")
    code = main(["run", "--viewpoint", "0,0", NOTCHED_SQUARE])
    assert code == 2
    assert error.call_args[0][1] == "DegeneratePosition"


def test_run_bad_arguments():
    with pytest.raises(SystemExit) as excinfo:
        main(["run", "--viewpoint", "foo", NOTCHED_SQUARE])
    assert excinfo.value.code == 1
    with pytest.raises(SystemExit) as excinfo:
        main(["run", "--engine", "fastest", NOTCHED_SQUARE])
    assert excinfo.value.code == 1


def test_run_missing_file(mocker, tmp_path):
    mocker.patch.object(logger, "error")
    assert main(["run", str(tmp_path / "missing.poly")]) == 1


def test_run_bad_file(mocker, tmp_path):
    error = mocker.patch.object(logger, "error")
    path = tmp_path / "bad.poly"
    path.write_text("3\n0 0\n1 0\n")
    assert main(["run", str(path)]) == 1
    assert error.call_args[0][1] == "PolygonFormatError"


def test_run_binary_file(mocker, tmp_path):
    error = mocker.patch.object(logger, "error")
    path = tmp_path / "binary.poly"
    path.write_bytes(b"\xff\xfe 0 0\n")
    assert main(["run", "--viewpoint", "1,1", str(path)]) == 1
    assert error.call_args[0][1] == "PolygonFormatError"


def test_run_discrepancy(mocker, tmp_path):
    mocker.patch.object(logger, "error")
    for name in ("forward_sweep", "backward_sweep", "merge_effective"):
        mocker.patch(f"visarea.algorithms.effective.{name}")
    path = str(tmp_path / "two_notch.poly")
    assert (
        main(
            [
                "generate",
                "--family",
                "two_notch",
                "--n",
                "10",
                "--seed",
                "0",
                "--output",
                path,
            ]
        )
        == 0
    )
    stats_path = str(tmp_path / "stats.json")
    code = main(["run", "--mode", "validated", "--stats", stats_path, path])
    assert code == 3
    with open(stats_path) as f:
        report = json.load(f)
    assert report["c"] == 3
    assert report["c_effective"] == 3


def test_generate_stdout(capsys):
    argv = ["generate", "--family", "comb", "--n", "64", "--seed", "1"]
    assert main(argv) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "64"
    assert lines[-1] == "0.0 0.0"
    assert len(lines) == 66


def test_generate_random_is_deterministic(tmp_path):
    texts = []
    for k in range(2):
        path = str(tmp_path / f"random{k}.poly")
        argv = ["generate", "--n", "20", "--seed", "5", "--output", path]
        assert main(argv) == 0
        with open(path) as f:
            texts.append(f.read())
    assert texts[0] == texts[1]
    assert read_polygon(path).points


def test_generate_unknown_family(mocker):
    mocker.patch.object(logger, "error")
    argv = ["generate", "--family", "blob", "--n", "10", "--seed", "0"]
    assert main(argv) == 1


def test_generate_requires_seed():
    with pytest.raises(SystemExit) as excinfo:
        main(["generate", "--n", "10"])
    assert excinfo.value.code == 1


def test_bench(capsys, tmp_path):
    stats_path = str(tmp_path / "bench.json")
    code = main(
        [
            "bench",
            "--stats",
            stats_path,
            "BENCH.SIZES",
            "[200, 400]",
            "BENCH.FAMILIES",
            "['comb']",
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert out.startswith("family\tt\tn")
    assert "slope comb:" in out
    with open(stats_path) as f:
        record = json.load(f)
    assert [row["n"] for row in record["rows"]] == [200, 400]
    assert {row["flag_bits"] for row in record["rows"]} == {16}
    assert record["slopes"]["comb"] == pytest.approx(1.0, abs=0.1)
    assert record["oracle"] == []


def test_check(capsys, tmp_path):
    archive = str(tmp_path / "failures")
    stats_path = str(tmp_path / "check.json")
    code = main(
        [
            "check",
            "--archive-dir",
            archive,
            "--stats",
            stats_path,
            "CHECK.NUM_RANDOM",
            "3",
            "CHECK.MAX_VERTICES",
            "20",
        ]
    )
    with open(stats_path) as f:
        report = json.load(f)
    assert report["instances"] == 15
    assert (
        report["match"] + report["discrepancy"] + report["failure"]
        == report["instances"]
    )
    assert code == (3 if report["failure"] else 0)
    assert len(report["archived"]) == report["instances"] - report["match"]
    if not report["archived"]:
        assert not os.path.exists(archive)
    assert "15 instances" in capsys.readouterr().out
