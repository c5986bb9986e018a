from __future__ import annotations

import json

import pytest

from clusterdiam.cli import main, parse_weight_model, resolve_graph
from clusterdiam.errors import ValidationError
from clusterdiam.records import (
    COMPARE_CSV_HEADER,
    RunRecord,
    append_record,
    canonical_line,
    read_records,
    write_compare_csv,
)


def test_record_lines_have_sorted_keys(tmp_path):
    rec = RunRecord(command="diam", graph="g[n=1,m=0]", seed=3)
    line = rec.to_line()
    keys = list(json.loads(line))
    assert keys == sorted(keys)


def test_append_and_read_roundtrip(tmp_path):
    p = tmp_path / "r.jsonl"
    append_record(p, RunRecord(command="a", graph="g"))
    append_record(p, RunRecord(command="b", graph="g"))
    got = read_records(p)
    assert [r["command"] for r in got] == ["a", "b"]


def test_canonical_form_nulls_volatile_fields():
    a = RunRecord(command="x", graph="g", metrics={"wall_time": 1.23, "rounds": 4},
                  timestamp="2024-01-01T00:00:00")
    b = RunRecord(command="x", graph="g", metrics={"wall_time": 9.87, "rounds": 4},
                  timestamp="2025-06-06T06:06:06")
    assert canonical_line(a) == canonical_line(b)
    assert a.to_line() != b.to_line()


def test_canonical_form_keeps_meaningful_diffs():
    a = RunRecord(command="x", graph="g", results={"phi_approx": 1.0})
    b = RunRecord(command="x", graph="g", results={"phi_approx": 2.0})
    assert canonical_line(a) != canonical_line(b)


def test_compare_csv_golden_header(tmp_path):
    assert COMPARE_CSV_HEADER == ["algo", "seed", "approx_ratio", "time", "rounds", "work"]
    p = tmp_path / "c.csv"
    write_compare_csv(p, [{"algo": "cluster", "seed": 0, "approx_ratio": 1.0,
                           "time": 0.1, "rounds": 3, "work": 10}])
    lines = p.read_text().strip().splitlines()
    assert lines[0] == "algo,seed,approx_ratio,time,rounds,work"
    assert lines[1].startswith("cluster,0,1.0")


# --- cli ---------------------------------------------------------------------


def test_parse_weight_model():
    assert parse_weight_model("uniform").kind == "uniform"
    m = parse_weight_model("two-point:0.1,1e-6,1.0")
    assert (m.p, m.w_small, m.w_big) == (0.1, 1e-6, 1.0)
    with pytest.raises(ValidationError):
        parse_weight_model("two-point:0.1")
    with pytest.raises(ValidationError):
        parse_weight_model("zipf")


def test_resolve_graph_descriptors(tmp_path):
    g = resolve_graph("mesh:4", seed=0, weights="as-given")
    assert g.n == 16
    g = resolve_graph("rmat:4", seed=1, weights="uniform")
    assert g.n == 16 and g.edge_w.max() <= 1.0
    with pytest.raises(ValidationError):
        resolve_graph("roads:2", seed=0, weights="as-given")


def test_gen_writes_file_and_record(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CLUSTERDIAM_OUT", str(tmp_path))
    assert main(["gen", "--graph", "mesh:3"]) == 0
    out = capsys.readouterr().out
    assert "n=9 m=12" in out
    assert (tmp_path / "mesh-3.gr").exists()
    recs = read_records(tmp_path / "records.jsonl")
    assert recs[0]["command"] == "gen"
    assert recs[0]["results"] == {"n": 9, "m": 12}


def test_diam_emits_record_with_metrics(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CLUSTERDIAM_OUT", str(tmp_path))
    rc = main(["diam", "--graph", "mesh:6", "--weights", "uniform", "--seed", "3",
               "--exact"])
    assert rc == 0
    assert "phi_approx=" in capsys.readouterr().out
    rec = read_records(tmp_path / "records.jsonl")[0]
    assert rec["params"]["tau"] >= 1
    assert rec["results"]["phi_approx"] >= rec["oracle"]["value"] - 1e-9
    assert rec["metrics"]["rounds"] >= 1


def test_sssp_reports_upper_and_trials(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CLUSTERDIAM_OUT", str(tmp_path))
    rc = main(["sssp", "--graph", "mesh:6", "--weights", "uniform", "--lower"])
    assert rc == 0
    rec = read_records(tmp_path / "records.jsonl")[0]
    assert rec["results"]["upper"] >= rec["results"]["lower"]
    assert len(rec["results"]["trials"]) == 10  # default tuning grid


def test_sssp_single_delta_policy(tmp_path, monkeypatch):
    monkeypatch.setenv("CLUSTERDIAM_OUT", str(tmp_path))
    rc = main(["sssp", "--graph", "mesh:6", "--delta-init", "0.5"])
    assert rc == 0
    rec = read_records(tmp_path / "records.jsonl")[0]
    assert rec["results"]["delta"] == 0.5
    assert len(rec["results"]["trials"]) == 1


def test_compare_writes_csv_and_plot(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CLUSTERDIAM_OUT", str(tmp_path))
    rc = main(["compare", "--graph", "mesh:5", "--weights", "uniform",
               "--seeds", "0,1"])
    assert rc == 0
    csv_lines = (tmp_path / "compare.csv").read_text().strip().splitlines()
    assert csv_lines[0] == "algo,seed,approx_ratio,time,rounds,work"
    assert len(csv_lines) == 1 + 2 * 3  # 2 seeds x (cluster, cluster2, baseline)
    plot = json.loads((tmp_path / "compare.plot.json").read_text())
    assert set(plot["bars"]) == {"cluster", "cluster2", "delta-stepping"}


def test_compare_rejects_empty_seeds(tmp_path, monkeypatch):
    monkeypatch.setenv("CLUSTERDIAM_OUT", str(tmp_path))
    assert main(["compare", "--graph", "mesh:4", "--seeds", ""]) == 1


def test_oracle_subcommand_prints_json(tmp_path, monkeypatch, capsys):
    monkeypatch.setenv("CLUSTERDIAM_OUT", str(tmp_path))
    assert main(["oracle", "--graph", "mesh:3", "--quantity", "diameter"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["value"] == 4.0


def test_exit_code_validation_error():
    assert main(["diam", "--graph", "mesh:0"]) == 1
    assert main(["nonsense"]) == 1


def test_exit_code_io_error(tmp_path, monkeypatch):
    monkeypatch.setenv("CLUSTERDIAM_OUT", str(tmp_path))
    assert main(["diam", "--graph", str(tmp_path / "missing.gr")]) == 2


def test_records_replayable_same_seed(tmp_path, monkeypatch):
    monkeypatch.setenv("CLUSTERDIAM_OUT", str(tmp_path))
    argv = ["diam", "--graph", "mesh:6", "--weights", "uniform", "--seed", "9"]
    assert main(argv) == 0
    assert main(argv) == 0
    a, b = read_records(tmp_path / "records.jsonl")
    assert canonical_line(a) == canonical_line(b)
    assert a["metrics"]["rounds"] == b["metrics"]["rounds"]


def test_graph_file_roundtrip_through_cli(tmp_path, monkeypatch):
    monkeypatch.setenv("CLUSTERDIAM_OUT", str(tmp_path))
    out = tmp_path / "saved.gr"
    assert main(["gen", "--graph", "mesh:4", "--weights", "uniform", "--seed", "2",
                 "--out", str(out)]) == 0
    assert main(["diam", "--graph", str(out)]) == 0
    recs = read_records(tmp_path / "records.jsonl")
    assert recs[-1]["command"] == "diam"
