"""Command-line behavior: exit codes, file IO, formats, determinism."""

from __future__ import annotations

import itertools
import json
import subprocess

import pytest

from covlab.cli import main
from conftest import power_spec, sum_spec

Z6 = '{"kind": "cyclic", "order": 6}'
Z8_CHAIN = json.dumps({
    "tower": [{"generators": []}, {"generators": [4]},
              {"generators": [2]}, {"generators": [1]}],
    "labels": "auto",
})


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_validate_inline(capsys):
    code, out, _ = run_cli(capsys, "validate", "--group", Z6)
    assert code == 0
    body = json.loads(out)
    assert body["ok"] is True and body["order"] == 6


def test_validate_group_file(capsys, tmp_path):
    spec = tmp_path / "g.json"
    spec.write_text(Z6)
    code, out, _ = run_cli(capsys, "validate", "--group", str(spec))
    assert code == 0
    assert json.loads(out)["kind"] == "cyclic"


def test_cov_exact_pinned(capsys):
    code, out, _ = run_cli(capsys, "cov", "--group", Z6, "--set", "[1, 2]", "--canonical")
    assert code == 0
    body = json.loads(out)
    assert body["value"] == 3
    assert body["witness"] == [0, 2, 4]
    assert body["proven_optimal"] is True


def test_cov_set_file_and_out(capsys, tmp_path):
    sets = tmp_path / "a.json"
    sets.write_text("[0, 3]")
    dest = tmp_path / "res.json"
    code, out, _ = run_cli(
        capsys, "cov", "--group", Z6, "--set", str(sets), "--bounds", "--out", str(dest)
    )
    assert code == 0
    assert out == ""
    body = json.loads(dest.read_text())
    assert body == {"lower": 3, "method": "bounds", "upper": 3}


def test_cov_budget_exhaustion_is_exit_3(capsys):
    vecs = [[0] * 8]
    for i, j in itertools.combinations(range(8), 2):
        v = [0] * 8
        v[i] = v[j] = 1
        vecs.append(v)
    code, out, _ = run_cli(
        capsys, "cov", "--group", json.dumps(power_spec(2, 8)),
        "--set", json.dumps(vecs), "--budget", "200",
    )
    assert code == 3
    body = json.loads(out)
    assert body["proven_optimal"] is False
    assert body["value"] >= 12


def test_usage_error_is_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["cov", "--group", Z6])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate"])
    assert exc.value.code == 1


def test_unreadable_spec_is_exit_1(capsys):
    code, _, err = run_cli(capsys, "validate", "--group", "/no/such/file.json")
    assert code == 1
    assert "covlab: error:" in err


def test_invalid_json_file_is_exit_1(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run_cli(capsys, "validate", "--group", str(bad))
    assert code == 1
    assert "not valid JSON" in err


def test_non_group_is_exit_2(capsys):
    table = '{"kind": "cayley", "table": [[0, 1], [1, 1]]}'
    code, _, err = run_cli(capsys, "validate", "--group", table)
    assert code == 2
    assert "covlab: error:" in err


def test_factorize_pinned(capsys):
    code, out, _ = run_cli(
        capsys, "theorem1", "factorize",
        "--group", '{"kind": "cyclic", "order": 8}',
        "--chain", Z8_CHAIN, "--element", "7",
    )
    assert code == 0
    body = json.loads(out)
    assert body["label"] == [0, 1, 2]
    assert [f["rep"] for f in body["factors"]] == [4, 2, 1]


def test_cells_members_flag(capsys):
    code, out, _ = run_cli(
        capsys, "theorem1", "cells", "--group", json.dumps(sum_spec(2, 2)),
        "--offset-bound", "2", "--members",
    )
    assert code == 0
    body = json.loads(out)
    assert body["region_size"] == 16
    assert all("members" in cell for cell in body["cells"])


def test_chain_witness_comma_label(capsys):
    code, out, _ = run_cli(
        capsys, "theorem1", "witness", "--group", json.dumps(sum_spec(2, 2)),
        "--k", "[]", "--s", "0,1", "--offset-bound", "4", "--max-support", "2",
    )
    assert code == 0
    assert json.loads(out)["report"]["passed"] is True


def test_support_witness_pinned(capsys):
    code, out, _ = run_cli(
        capsys, "theorem2", "witness", "--group", json.dumps(power_spec(2, 8)),
        "--k", "[[1, 1, 0, 0, 0, 0, 0, 0]]", "--n", "1",
    )
    assert code == 0
    assert json.loads(out)["h"] == [0, 0, 1, 1, 1, 0, 0, 0]


def test_cov_per_cell_budget_is_exit_3(capsys):
    code, out, _ = run_cli(
        capsys, "theorem2", "cov-per-cell", "--group", json.dumps(power_spec(2, 8)),
        "--max-n", "1", "--budget", "200",
    )
    assert code == 3
    rows = json.loads(out)["rows"]
    assert any(row.get("proven_optimal") is False for row in rows)


def test_phi_exit_codes(capsys):
    code, out, _ = run_cli(capsys, "phi", "--group", '{"kind": "cyclic", "order": 4}', "--n", "2")
    assert code == 0
    assert json.loads(out)["phi_value"] == 2
    code, out, _ = run_cli(capsys, "phi", "--group", Z6, "--n", "2", "--budget", "1")
    assert code == 3
    assert json.loads(out)["complete"] is False


def test_phi_random_needs_seed(capsys):
    code, _, err = run_cli(capsys, "phi", "--group", Z6, "--n", "2", "--random")
    assert code == 1
    assert "seed" in err


def test_tower_csv_and_budget(capsys, tmp_path):
    family = '{"base": {"kind": "cyclic", "order": 2}, "m_range": [2, 4]}'
    dest = tmp_path / "tower.csv"
    code, _, _ = run_cli(
        capsys, "tower", "--family", family, "--n-values", "1",
        "--format", "csv", "--out", str(dest),
    )
    assert code == 0
    lines = dest.read_text().splitlines()
    assert lines[0] == "experiment,group,params,metric,value,wall_ms"
    assert any(",cov_exact,2," in line for line in lines)
    code, out, _ = run_cli(
        capsys, "tower", "--family",
        '{"base": {"kind": "cyclic", "order": 2}, "m_range": [7, 7]}',
        "--n-values", "[1]", "--budget", "1000",
    )
    assert code == 3
    rows = json.loads(out)
    assert any(r["metric"] == "proven_optimal" and r["value"] == 0 for r in rows)


def test_report_csv_from_config_file(capsys, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"experiment": "cov", "group": json.loads(Z6), "set": [1, 2]}))
    code, out, _ = run_cli(capsys, "report", "--config", str(cfg), "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "experiment,group,params,metric,value,wall_ms"
    assert lines[1].endswith("cov_exact,3,0")


def test_report_flag_merge_and_determinism(capsys, tmp_path):
    cfg = json.dumps({
        "experiment": "theorem2",
        "group": power_spec(2, 6),
        "witness_trials": 5,
        "k_size": 3,
    })
    runs = []
    for name in ("first.csv", "second.csv"):
        dest = tmp_path / name
        code, _, _ = run_cli(
            capsys, "report", "--config", cfg, "--seed", "7",
            "--format", "csv", "--out", str(dest),
        )
        assert code == 0
        runs.append(dest.read_bytes())
    assert runs[0] == runs[1]
    assert b"separation_fail,0" in runs[0] or b"witness_fail,0" in runs[0]


def test_console_script_roundtrip():
    proc = subprocess.run(
        ["covlab", "validate", "--group", Z6], capture_output=True, text=True
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"] is True
