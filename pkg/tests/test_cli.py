"""End-to-end tests of the command-line driver, run in process."""

import csv
import io
import json
import math

import numpy as np
import pytest

from dicke.cli import main
from dicke.meanfield import critical_beta_closed
from dicke.params import ModelParams


def _run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def _rows(csv_text):
    return list(csv.DictReader(io.StringIO(csv_text)))


# ---------------------------------------------------------------------------
# critical sweeps


def test_critical_sweep_walks_through_every_phase(capsys):
    code, out = _run(
        ["critical", "--g2", "0.0", "--beta", "zero-temperature", "--sweep", "g1=0.5:2.0:151"],
        capsys,
    )
    assert code == 0
    rows = _rows(out)
    assert len(rows) == 151
    assert rows[0]["g1"] == "0.5"
    assert rows[0]["beta_c_closed"] == "none"
    assert rows[0]["phase"] == "fluorescent"
    assert rows[0]["status"] == "no-transition"
    # the grid hits g1 = 1 exactly: the zero-temperature transition point
    assert rows[50]["g1"] == "1"
    assert rows[50]["beta_c_closed"] == "zero-temperature"
    assert rows[50]["phase"] == "critical"
    assert rows[-1]["phase"] == "super-radiant"
    assert rows[-1]["status"] == "ok"
    closed = float(rows[-1]["beta_c_closed"])
    numeric = float(rows[-1]["beta_c_numeric"])
    assert abs(closed - numeric) < 1e-8 * closed


def test_critical_csv_floats_round_trip_exactly(capsys):
    code, out = _run(["critical", "--g1", "0.8", "--g2", "0.9", "--beta", "1.5"], capsys)
    assert code == 0
    (row,) = _rows(out)
    p = ModelParams(omega0=1.0, Omega=1.0, g1=0.8, g2=0.9, lam=0.0, n_atoms=1, beta=1.5)
    expected = critical_beta_closed(p, "general").beta_c
    assert float(row["beta_c_closed"]) == expected
    assert row["phase"] in ("fluorescent", "critical", "super-radiant")


def test_two_axis_sweep_is_row_major(capsys):
    code, out = _run(
        ["critical", "--sweep", "g1=0.0:1.0:2", "--sweep", "g2=0.0:1.0:3"], capsys
    )
    assert code == 0
    rows = _rows(out)
    assert [r["g1"] for r in rows] == ["0", "0", "0", "1", "1", "1"]
    assert [r["g2"] for r in rows] == ["0", "0.5", "1", "0", "0.5", "1"]


def test_json_format_emits_one_record_per_line(capsys):
    code, out = _run(
        ["critical", "--format", "json", "--sweep", "g2=1.2:1.4:2"], capsys
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 2
    records = [json.loads(line) for line in lines]
    assert records[0]["g2"] == 1.2
    assert records[1]["g2"] == 1.4
    assert records[0]["command"] == "critical"


# ---------------------------------------------------------------------------
# config handling


def test_flags_override_config(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    out_file = tmp_path / "records.json"
    cfg.write_text(
        'omega0 = 2.0\ng2 = 0.8\nbeta = "zero-temperature"\nformat = "json"\n'
        f'out = "{out_file}"\n'
    )
    code, out = _run(["critical", "--config", str(cfg), "--omega0", "1.5"], capsys)
    assert code == 0
    assert out == ""
    record = json.loads(out_file.read_text().strip())
    assert record["omega0"] == 1.5
    assert record["g2"] == 0.8
    assert record["beta"] == "zero-temperature"


def test_missing_config_file_exits_2(capsys):
    assert main(["critical", "--config", "/nonexistent/run.toml"]) == 2
    assert "not found" in capsys.readouterr().err


def test_malformed_config_exits_2(tmp_path, capsys):
    cfg = tmp_path / "bad.toml"
    cfg.write_text("omega0 = = 2\n")
    assert main(["critical", "--config", str(cfg)]) == 2


def test_bad_sweep_specs_exit_2(capsys):
    for spec in ("g2=1:2", "foo=0:1:5", "g2=0:1:0"):
        assert main(["critical", "--sweep", spec]) == 2
    assert main(["critical", "--sweep", "g1=0:1:2", "--sweep", "g1=0:1:2"]) == 2
    assert (
        main(
            ["critical", "--sweep", "g1=0:1:2", "--sweep", "g2=0:1:2", "--sweep", "beta=1:2:2"]
        )
        == 2
    )


def test_invalid_parameters_exit_2(capsys):
    assert main(["critical", "--beta", "-1"]) == 2
    assert main(["critical", "--beta", "0"]) == 2
    assert main(["critical", "--omega0", "-2"]) == 2
    assert main(["exactdiag", "--n-atoms", "0"]) == 2
    assert main(["exactdiag", "--n-atoms", "two"]) == 2


def test_workers_env_override(monkeypatch, capsys):
    monkeypatch.setenv("DICKE_WORKERS", "not-a-number")
    assert main(["critical"]) == 2
    monkeypatch.setenv("DICKE_WORKERS", "1")
    code, out = _run(["critical", "--workers", "4"], capsys)
    assert code == 0
    assert len(_rows(out)) == 1


def test_worker_count_does_not_change_output(tmp_path, capsys):
    argv = ["critical", "--beta", "zero-temperature", "--sweep", "g2=0.5:2.0:25"]
    out1 = tmp_path / "w1.csv"
    out2 = tmp_path / "w2.csv"
    assert main(argv + ["--workers", "1", "--out", str(out1)]) == 0
    assert main(argv + ["--workers", "2", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


# ---------------------------------------------------------------------------
# spectrum command


def test_spectrum_records_closed_roots_at_criticality(capsys):
    code, out = _run(["spectrum", "--g1", "0.4", "--g2", "0.9", "--format", "json"], capsys)
    assert code == 0
    (record,) = [json.loads(line) for line in out.strip().split("\n")]
    assert record["status"] == "ok"
    assert record["exploratory"] == "false"
    assert record["beta_used"] > 0
    # E1 = 0 always; E2 from the closed form
    assert record["e1_closed"] == 0.0
    expected_e2 = math.sqrt((0.4 * 4.0 + 0.9 * 0.0) / 1.3)
    assert record["e2_closed"] == pytest.approx(expected_e2, rel=1e-12)
    roots = [float(r) for r in record["roots_numeric"].split(";")]
    assert any(abs(r) < 1e-8 for r in roots)
    assert any(abs(r - expected_e2) < 1e-6 for r in roots)
    assert record["max_residual_numeric"] < 1e-8


def test_spectrum_with_explicit_beta_is_exploratory(capsys):
    code, out = _run(
        ["spectrum", "--g2", "1.3", "--beta", "2.0", "--format", "json"], capsys
    )
    assert code == 0
    (record,) = [json.loads(line) for line in out.strip().split("\n")]
    assert record["status"] == "ok"
    assert record["exploratory"] == "true"
    assert record["beta_used"] == 2.0


def test_spectrum_below_threshold_reports_no_transition(capsys):
    code, out = _run(["spectrum", "--g2", "0.4", "--format", "json"], capsys)
    assert code == 0
    (record,) = [json.loads(line) for line in out.strip().split("\n")]
    assert record["status"] == "no-transition"
    assert record["roots_numeric"] == ""


# ---------------------------------------------------------------------------
# exactdiag and entropy commands


def test_exactdiag_ground_state_records(capsys):
    code, out = _run(
        ["exactdiag", "--n-atoms", "2", "--g2", "0.4", "--beta", "zero-temperature"],
        capsys,
    )
    assert code == 0
    (row,) = _rows(out)
    assert row["status"] == "ok"
    assert row["partition_function_log"] == ""
    assert float(row["energy"]) < 0
    assert float(row["fock_tail"]) <= 1e-8
    assert int(row["n_max"]) >= 8
    assert float(row["order_parameter"]) >= 0


def test_exactdiag_thermal_records(capsys):
    code, out = _run(
        ["exactdiag", "--n-atoms", "2", "--g2", "0.4", "--beta", "2.0"], capsys
    )
    assert code == 0
    (row,) = _rows(out)
    assert row["status"] == "ok"
    assert row["energy"] == ""
    assert float(row["partition_function_log"]) != 0
    assert float(row["order_parameter"]) > 0


def test_exactdiag_expands_the_atom_list(capsys):
    code, out = _run(
        ["exactdiag", "--n-atoms", "1,2", "--beta", "zero-temperature", "--sweep", "g2=0.0:0.4:3"],
        capsys,
    )
    assert code == 0
    rows = _rows(out)
    assert [r["n_atoms"] for r in rows] == ["1", "1", "1", "2", "2", "2"]
    assert [float(r["g2"]) for r in rows] == pytest.approx([0.0, 0.2, 0.4] * 2)


def test_exactdiag_hard_cap_exits_4(capsys):
    code, out = _run(
        [
            "exactdiag",
            "--n-atoms", "4",
            "--g1", "1.4",
            "--g2", "1.4",
            "--beta", "zero-temperature",
            "--start-cap", "8",
            "--hard-cap", "8",
        ],
        capsys,
    )
    assert code == 4
    (row,) = _rows(out)
    assert row["status"] == "truncation-capped"
    assert row["energy"] == ""


def test_entropy_records(capsys):
    code, out = _run(
        [
            "entropy",
            "--n-atoms", "2",
            "--beta", "zero-temperature",
            "--sweep", "g2=0.0:0.6:3",
        ],
        capsys,
    )
    assert code == 0
    rows = _rows(out)
    assert len(rows) == 3
    assert float(rows[0]["entropy"]) < 1e-12
    assert float(rows[2]["entropy"]) > float(rows[0]["entropy"])
    assert all(int(r["schmidt_number"]) >= 1 for r in rows)
    assert all(r["status"] == "ok" for r in rows)


# ---------------------------------------------------------------------------
# compare-poles command


def test_compare_poles_report_passes(tmp_path, capsys):
    out_file = tmp_path / "report.json"
    code, _ = _run(
        [
            "compare-poles",
            "--g1", "0.3",
            "--g2", "0.9",
            "--beta", "2.0",
            "--omega-grid", "0.0:10.0:101",
            "--out", str(out_file),
        ],
        capsys,
    )
    assert code == 0
    report = json.loads(out_file.read_text())
    assert report["passed"] is True
    assert report["poles_match"] is True
    assert report["lambda_invariant"] is True
    assert report["max_discrepancy"] < 1e-12
    assert report["i0_matches_critical"] is True
    assert len(report["frequency_grid"]) == 101


def test_compare_poles_bad_grid_exits_2(capsys):
    assert main(["compare-poles", "--omega-grid", "1:2"]) == 2


# ---------------------------------------------------------------------------
# plotdata command


def _write_critical_records(tmp_path, capsys, fmt):
    out = tmp_path / f"crit.{'json' if fmt == 'json' else 'csv'}"
    code = main(
        [
            "critical",
            "--beta", "zero-temperature",
            "--sweep", "g1=0.5:2.0:7",
            "--g2", "0.3",
            "--format", fmt,
            "--out", str(out),
        ]
    )
    assert code == 0
    capsys.readouterr()
    return out


def test_plotdata_line_output(tmp_path, capsys):
    records = _write_critical_records(tmp_path, capsys, "csv")
    base = tmp_path / "plot"
    code = main(
        ["plotdata", "--records", str(records), "--x", "g1", "--y", "beta_c_closed", "--out", str(base)]
    )
    assert code == 0
    dat = (tmp_path / "plot.dat").read_text().split("\n")
    assert dat[0] == "# g1 beta_c_closed"
    # rows whose beta_c is a phase sentinel are skipped, finite rows survive
    body = [line for line in dat[1:] if line]
    assert 0 < len(body) < 7
    for line in body:
        x, y = line.split()
        assert float(x) > 0 and float(y) > 0
    svg = (tmp_path / "plot.svg").read_bytes()
    assert svg.lstrip().startswith(b"<?xml")


def test_plotdata_from_json_matches_csv_route(tmp_path, capsys):
    csv_records = _write_critical_records(tmp_path, capsys, "csv")
    json_records = _write_critical_records(tmp_path, capsys, "json")
    base_csv = tmp_path / "from_csv"
    base_json = tmp_path / "from_json"
    for records, base in ((csv_records, base_csv), (json_records, base_json)):
        assert (
            main(
                [
                    "plotdata",
                    "--records", str(records),
                    "--x", "g1",
                    "--y", "beta_c_numeric",
                    "--out", str(base),
                ]
            )
            == 0
        )
    assert (tmp_path / "from_csv.dat").read_bytes() == (tmp_path / "from_json.dat").read_bytes()


def test_plotdata_heatmap_blocks(tmp_path, capsys):
    records = tmp_path / "grid.csv"
    code = main(
        [
            "critical",
            "--beta", "1.0",
            "--sweep", "g1=1.0:2.0:3",
            "--sweep", "g2=1.0:2.0:3",
            "--out", str(records),
        ]
    )
    assert code == 0
    capsys.readouterr()
    base = tmp_path / "map"
    code = main(
        [
            "plotdata",
            "--records", str(records),
            "--x", "g1",
            "--y", "g2",
            "--z", "beta_c_numeric",
            "--out", str(base),
        ]
    )
    assert code == 0
    lines = (tmp_path / "map.dat").read_text().rstrip("\n").split("\n")
    assert lines[0] == "# g1 g2 beta_c_numeric"
    blocks = "\n".join(lines[1:]).split("\n\n")
    assert len(blocks) == 3
    assert all(len(b.split("\n")) == 3 for b in blocks)
    assert (tmp_path / "map.svg").exists()


def test_plotdata_svg_is_deterministic(tmp_path, capsys):
    records = _write_critical_records(tmp_path, capsys, "csv")
    for base in ("one", "two"):
        assert (
            main(
                [
                    "plotdata",
                    "--records", str(records),
                    "--x", "g1",
                    "--y", "beta_c_numeric",
                    "--out", str(tmp_path / base),
                ]
            )
            == 0
        )
    assert (tmp_path / "one.svg").read_bytes() == (tmp_path / "two.svg").read_bytes()


def test_plotdata_error_paths(tmp_path, capsys):
    records = _write_critical_records(tmp_path, capsys, "csv")
    base = str(tmp_path / "plot")
    # missing column
    assert main(["plotdata", "--records", str(records), "--x", "nope", "--y", "g1", "--out", base]) == 2
    # no --out
    assert main(["plotdata", "--records", str(records), "--x", "g1", "--y", "g2"]) == 2
    # heatmap without z
    assert (
        main(["plotdata", "--records", str(records), "--x", "g1", "--y", "g2", "--kind", "heatmap", "--out", base])
        == 2
    )
    # records file absent
    assert main(["plotdata", "--records", str(tmp_path / "gone.csv"), "--x", "a", "--y", "b", "--out", base]) == 2
    # empty record set
    empty = tmp_path / "empty.csv"
    empty.write_text("command,g1\n")
    assert main(["plotdata", "--records", str(empty), "--x", "g1", "--y", "g1", "--out", base]) == 2
    # mixed commands
    mixed = tmp_path / "mixed.csv"
    mixed.write_text("command,g1,g2\ncritical,1,1\nspectrum,1,1\n")
    assert main(["plotdata", "--records", str(mixed), "--x", "g1", "--y", "g2", "--out", base]) == 2
    # column present but nowhere numeric
    allnone = tmp_path / "none.csv"
    allnone.write_text("command,g1,beta_c\ncritical,1,none\ncritical,2,none\n")
    assert main(["plotdata", "--records", str(allnone), "--x", "g1", "--y", "beta_c", "--out", base]) == 2


def test_unknown_format_in_config_exits_2(tmp_path, capsys):
    cfg = tmp_path / "run.toml"
    cfg.write_text('format = "xml"\n')
    assert main(["critical", "--config", str(cfg)]) == 2
