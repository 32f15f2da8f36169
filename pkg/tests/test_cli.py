import json

import pytest

from bbnet import benchmark
from bbnet.cli import main
from bbnet.generator import GeneratorConfig
from bbnet.storage import fixture_path, load_network


def test_generate_and_validate(tmp_path, capsys):
    out = tmp_path / "n.bb"
    assert main(["generate", "--facts", "30", "--rules", "20", "--containers", "4",
                 "--links", "6", "--seed", "3", "--out", str(out)]) == 0
    net = load_network(out)
    assert len(net.facts) == 30
    assert json.loads((tmp_path / "n.bb.manifest.json").read_text())["config"]["seed"] == 3
    # generated rules ignore container placement, so only integrity is clean
    assert main(["validate", str(out), "--no-lint"]) == 0
    assert main(["validate", fixture_path("employee")]) == 0


def test_validate_reports_lints(tmp_path):
    out = tmp_path / "n.bb"
    main(["generate", "--facts", "100", "--rules", "50", "--containers", "10",
          "--links", "0", "--out", str(out)])
    assert main(["validate", str(out)]) == 2


def test_infer_updates_fact(tmp_path, capsys):
    out = tmp_path / "after.bb"
    code = main(["infer", fixture_path("employee"), "--set", "office_open_sat=true", "--out", str(out)])
    assert code == 0
    assert "false -> true" in capsys.readouterr().out
    net = load_network(out)
    assert net.fact(net.facts_named("jane_works_sat")[0]).value is True


def test_traverse(capsys):
    code = main(["traverse", fixture_path("employee"), "--from", "jane_name",
                 "--to", "office_name", "--via", "links"])
    assert code == 0
    out = capsys.readouterr().out
    assert "found: true" in out and "hops: 1" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["bogus"],
        ["traverse", "x.bb"],
        ["generate", "--facts", "2", "--rules", "1", "--out", "x.bb"],
        ["infer", fixture_path("employee"), "--set", "nope"],
        ["infer", fixture_path("employee"), "--set", "no_such_fact=true"],
        ["traverse", fixture_path("equipment"), "--from", "Manufacturer", "--to", "0", "--via", "rules"],
        ["bench", "--runs", "0", "--out-records", "r", "--out-summary", "s"],
    ],
)
def test_usage_errors_exit_one(argv, tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == 1


def test_data_errors_exit_two(tmp_path):
    bad = tmp_path / "bad.bb"
    bad.write_text("{not json")
    assert main(["validate", str(bad)]) == 2
    assert main(["validate", str(tmp_path / "missing.bb")]) == 2
    assert main(["summarize", str(bad), "--out", str(tmp_path / "s.csv")]) == 2
    cfg = tmp_path / "cfg.json"
    cfg.write_text('{"config": {"facts": -3}}')
    assert main(["bench", "--config", str(cfg), "--out-records", "r", "--out-summary", "s"]) == 2


def _tiny_matrix(monkeypatch):
    real = benchmark.run_matrix
    small = benchmark.conditions(percentages=(50,))[:2]
    monkeypatch.setattr(benchmark, "run_matrix", lambda *a, **k: real(*a, **{**k, "matrix": small}))


def test_bench_and_summarize(tmp_path, monkeypatch):
    _tiny_matrix(monkeypatch)
    cfg = tmp_path / "cfg.json"
    cfg.write_text(GeneratorConfig(facts=100, rules=100, containers=10, links=40).dumps())
    rec, summ = tmp_path / "r.csv", tmp_path / "s.csv"
    code = main(["bench", "--config", str(cfg), "--seed", "3", "--runs", "2", "--quiet",
                 "--out-records", str(rec), "--out-summary", str(summ)])
    assert code == 0
    assert len(rec.read_text().splitlines()) == 5
    man = json.loads((tmp_path / "r.csv.manifest.json").read_text())
    assert man["runs"] == 2 and man["config"]["seed"] == 3
    again = tmp_path / "s2.csv"
    assert main(["summarize", str(rec), "--out", str(again)]) == 0
    assert again.read_text() == summ.read_text()


def test_bench_condition_failure_exits_three(tmp_path, monkeypatch):
    _tiny_matrix(monkeypatch)
    cfg = tmp_path / "cfg.json"
    cfg.write_text(GeneratorConfig(facts=4, rules=0, containers=2, links=0).dumps())
    code = main(["bench", "--config", str(cfg), "--runs", "1", "--quiet",
                 "--out-records", str(tmp_path / "r"), "--out-summary", str(tmp_path / "s")])
    assert code == 3


def test_bench_bad_thread_env(tmp_path, monkeypatch):
    monkeypatch.setenv("BB_LC_THREADS", "lots")
    assert main(["bench", "--runs", "1", "--out-records", str(tmp_path / "r"),
                 "--out-summary", str(tmp_path / "s")]) == 1


def test_version(capsys):
    with pytest.raises(SystemExit):
        raise SystemExit(main(["--version"]))
    assert "bbnet" in capsys.readouterr().out
