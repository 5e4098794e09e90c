#!/usr/bin/env python3
# -*- coding: utf-8 -*-

"""
End-to-end tests of the command line interface on the packaged fixtures.
"""

import json

import pytest

from conelens.app import build_parser, cli


def test_every_command_is_registered():
    parser = build_parser()
    for command in ("analyze", "domain", "project", "verify", "edge"):
        args = parser.parse_args([command, "--spec", "fix-a"])
        assert args.command == command


def test_spec_is_required():
    with pytest.raises(SystemExit):
        build_parser().parse_args(["domain"])


@pytest.mark.parametrize("spec", ["fix-a", "fix-b", "fix-c"])
def test_analyze_and_domain(spec, quiet_console):
    assert cli(["analyze", "--spec", spec], console=quiet_console) == 0
    assert cli(["domain", "--spec", spec], console=quiet_console) == 0


def test_project_fix_c(quiet_console):
    assert cli(["project", "--spec", "fix-c"], console=quiet_console) == 0
    assert "t log t" in quiet_console.file.getvalue()


def test_verify_fix_c(quiet_console):
    assert cli(["verify", "--spec", "fix-c", "--seed", "3"], console=quiet_console) == 0


def test_edge_command_needs_edge_spec(quiet_console):
    assert cli(["edge", "--spec", "fix-a"], console=quiet_console) == 2
    assert "CommandKindMismatch" in quiet_console.file.getvalue()


def test_missing_spec_file(quiet_console, tmp_path):
    assert cli(["domain", "--spec", str(tmp_path / "nothing.toml")], console=quiet_console) == 2


def test_edge_fix_g(quiet_console):
    assert cli(["edge", "--spec", "fix-g", "--eta-rays", "2", "--lambda-max", "16"], console=quiet_console) == 0


def test_json_report(quiet_console, tmp_path):
    assert cli(["domain", "--spec", "fix-c", "--json-out", str(tmp_path)], console=quiet_console) == 0
    report = json.loads((tmp_path / "report.json").read_text(encoding="utf-8"))
    assert report["passed"] is True
    assert report["command"] == "domain"
    assert report["sections"]["domain"]["dimension"] == 2
    assert all(check["passed"] for check in report["checks"])


def test_spec_tolerances_reach_the_report(quiet_console, tmp_path):
    spec = tmp_path / "op.toml"
    spec.write_text(
        'kind = "cone"\nmu = 1\n[[coefficients]]\nj = 1\ntaylor = [1.0]\n'
        "[[coefficients]]\nj = 0\ntaylor = [0.25]\n[tolerances]\nfit = 1e-5\n",
        encoding="utf-8",
    )
    out = tmp_path / "out.json"
    assert cli(["analyze", "--spec", str(spec), "--json-out", str(out), "--tol-cluster", "1e-7"], console=quiet_console) == 0
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["tolerances"]["fit"] == 1e-5
    assert report["tolerances"]["cluster"] == 1e-7


def test_verify_reports_image_membership(quiet_console, tmp_path):
    argv = ["verify", "--spec", "fix-c", "--seed", "3", "--json-out", str(tmp_path)]
    assert cli(argv, console=quiet_console) == 0
    report = json.loads((tmp_path / "report.json").read_text(encoding="utf-8"))
    checks = {check["name"]: check for check in report["checks"]}
    for i in range(2):
        assert checks[f"verify.image_membership[{i}]"]["passed"] is True
        assert checks[f"verify.cancellation[{i}]"]["passed"] is True
