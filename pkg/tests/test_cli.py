import json

import pytest

from loccqss.__main__ import build_config, build_parser, main
from loccqss.cli import analyze_report, subsets_report, verify_report
from loccqss.code import identity_code
from loccqss.constant import Command, ExitCode
from loccqss.utils import load_msgpack

REP3 = {"field": {"p": 2}, "generator": [[1, 1, 1]]}
PARITY_Q2 = {"field": {"p": 2}, "generator": [[1, 0, 1], [0, 1, 1]]}
IDENTITY = {"field": {"p": 2}, "generator": [[1, 0], [0, 1]]}


@pytest.fixture
def code_file(tmp_path):
    def write(spec, name="code.json"):
        path = tmp_path / name
        path.write_text(json.dumps(spec))
        return str(path)

    return write


def test_analyze(code_file, capsys):
    assert main(["analyze", "--code", code_file(REP3)]) == ExitCode.OK
    out = capsys.readouterr().out
    assert "n=3, k=1, q=2" in out
    assert "d=3, MDS: true" in out
    assert "every B with |B| >= k = 1 is assisted" in out

    assert main(["analyze", "--code", code_file(IDENTITY)]) == ExitCode.OK
    out = capsys.readouterr().out
    assert "d=1, MDS: true" in out
    assert "smallest assisted |B|: none" in out


def test_subsets(code_file, capsys):
    assert main(["subsets", "--code", code_file(PARITY_Q2)]) == ExitCode.OK
    out = capsys.readouterr().out
    assert "assisted: 3 of 6 proper subsets" in out
    assert "n - d = 1" in out


def test_simulate_is_reproducible(code_file, capsys):
    argv = ["simulate", "--code", code_file(REP3), "--subset-a", "1,2", "--trials", "5"]
    assert main([*argv, "--seed", "42"]) == ExitCode.OK
    first = capsys.readouterr().out
    assert main([*argv, "--seed", "42"]) == ExitCode.OK
    assert capsys.readouterr().out == first

    assert first.count("fidelity=1.000000000000") == 5
    assert "trial 1 (seed 42)" in first
    assert "trial 5 (seed 46)" in first
    assert "A={1,2} B={3}" in first


def test_simulate_json(code_file, capsys):
    argv = ["simulate", "--code", code_file(REP3), "--subset-a", "2", "--trials", "3"]
    assert main([*argv, "--format", "json"]) == ExitCode.OK
    data = json.loads(capsys.readouterr().out)
    transcripts = data["transcripts"]
    assert [t["seed"] for t in transcripts] == [42, 43, 44]
    assert all(t["subset_A"] == [2] and t["subset_B"] == [1, 3] for t in transcripts)
    assert all(t["fidelity"] == 1.0 for t in transcripts)


def test_simulate_basis_secret_to_file(code_file, tmp_path):
    output = tmp_path / "report.txt"
    argv = ["simulate", "--code", code_file(REP3), "--subset-a", "1", "--secret", "basis:1"]
    assert main([*argv, "--output", str(output)]) == ExitCode.OK
    text = output.read_text()
    assert "(1)  1.000000000000  0.000000000000" in text


def test_verify(code_file, tmp_path, capsys):
    assert main(["verify", "--code", code_file(PARITY_Q2), "--trials", "4"]) == ExitCode.OK
    out = capsys.readouterr().out
    assert "PASS: 6 of 6" in out
    assert "converse PASS witness" in out
    assert "(boundary |B| = k)" in out

    output = tmp_path / "verify.msgpack"
    argv = ["verify", "--code", code_file(REP3), "--subset-a", "1,2"]
    assert main([*argv, "--format", "msgpack", "--output", str(output)]) == ExitCode.OK
    data = load_msgpack(output.read_bytes())
    assert data["passed"] == data["total"] == 1
    assert data["verdicts"][0]["trials"] == 20
    assert data["verdicts"][0]["subset_B"] == [3]


@pytest.mark.parametrize(
    "argv",
    [
        ["simulate", "--subset-a", "1,2", "--trials", "0"],
        ["simulate"],
        ["simulate", "--subset-a", "1,x"],
        ["simulate", "--subset-a", "1", "--secret", "haar"],
        ["analyze", "--format", "msgpack"],
        ["analyze", "--seed", "-1"],
        ["analyze", "--jobs", "0"],
        ["simulate", "--subset-a", "1,2,3"],
    ],
    ids=[
        "zero-trials",
        "missing-subset",
        "bad-subset",
        "bad-secret",
        "msgpack-stdout",
        "negative-seed",
        "zero-jobs",
        "full-subset",
    ],
)
def test_usage_errors(code_file, argv):
    assert main([argv[0], "--code", code_file(REP3), *argv[1:]]) == ExitCode.USAGE


def test_parse_errors(tmp_path, code_file):
    bad = tmp_path / "bad.json"
    bad.write_text('{"field": {"p": 2}, "generator": [[1, 1')
    assert main(["analyze", "--code", str(bad)]) == ExitCode.USAGE
    assert main(["analyze", "--code", str(tmp_path / "missing.json")]) == ExitCode.USAGE
    assert main(["analyze", "--code", code_file({"field": {"p": 4}, "generator": [[1]]})]) == (
        ExitCode.USAGE
    )
    assert main(["bogus"]) == ExitCode.USAGE
    assert main(["analyze"]) == ExitCode.USAGE


def test_help_exits_cleanly(capsys):
    assert main(["--help"]) == ExitCode.OK
    assert "simulate" in capsys.readouterr().out


def test_not_assisted_is_a_failure(code_file):
    argv = ["simulate", "--code", code_file(PARITY_Q2), "--subset-a", "1,2"]
    assert main(argv) == ExitCode.FAILURE


def test_budget_exceeded(code_file):
    wide = {"field": {"p": 2}, "generator": [[1] * 25]}
    assert main(["subsets", "--code", code_file(wide)]) == ExitCode.BUDGET
    argv = ["simulate", "--code", code_file(REP3), "--subset-a", "1", "--budget-amps", "4"]
    assert main(argv) == ExitCode.BUDGET


def test_budgets_from_env(code_file, monkeypatch):
    monkeypatch.setenv("LOCCQSS_MAX_SUBSET_SITES", "2")
    assert main(["subsets", "--code", code_file(REP3)]) == ExitCode.BUDGET
    monkeypatch.setenv("LOCCQSS_MAX_SUBSET_SITES", "many")
    assert main(["subsets", "--code", code_file(REP3)]) == ExitCode.USAGE


def test_build_config_defaults(code_file):
    parser = build_parser()
    config = build_config(parser.parse_args(["verify", "--code", code_file(REP3)]))
    assert config.command == Command.VERIFY
    assert config.trials == 20
    assert config.subset_a is None

    config = build_config(
        parser.parse_args(["simulate", "--code", code_file(REP3), "--subset-a", "3,1"])
    )
    assert config.trials == 1
    assert config.subset_a == (0, 2)


def test_reports_without_files(f2, rep3):
    report = analyze_report(identity_code(f2, 3))
    assert report.data["is_mds"]
    assert report.data["min_assisted_size"] is None

    report = subsets_report(rep3)
    assert report.data["assisted"] == report.data["total"] == 6

    report = verify_report(rep3, trials=2)
    assert report.exit_code == ExitCode.OK
    assert report.text.splitlines()[-1] == "PASS: 6 of 6"
