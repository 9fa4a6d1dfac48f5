import json
import logging
import math

import pytest

from src.analytic.oracles import analytic_fidelity_1d
from src.config.settings import get_settings
from src.experiments import runners
from src.experiments.output import format_value, read_csv, write_csv
from src.experiments.records import CODE_VERSION, ExperimentRecord, GeometryEntry
from src.experiments.run_log import get_run_stats, log_run, read_runs
from src.lattice.geometry import LatticeGeometry
from src.model.params import ModelParameters


def test_parse_range():
    assert runners.parse_range("4:8:2") == [4, 6, 8]
    assert runners.parse_range("3:5") == [3, 4, 5]
    assert runners.parse_range("7") == [7]
    for text in ("8:4", "1:2:0", "1:2:3:4"):
        with pytest.raises(ValueError):
            runners.parse_range(text)


def test_format_value():
    assert format_value(None) == ""
    assert format_value(True) == "true"
    assert format_value(1 / 3) == "0.333333333333333"
    assert format_value(12) == "12"


def test_ring_scan_matches_analytic_fidelity(params):
    sizes = runners.scan_sizes([1], list(range(10, 3, -1)))
    rows = runners.fidelity_scan(sizes, params, tolerance=1e-12, seed=1234)
    assert [row["L"] for row in rows] == list(range(4, 11))
    for row in rows:
        assert row["status"] == "ok"
        assert row["fidelity"] == pytest.approx(analytic_fidelity_1d(row["L"]), abs=1e-10)
        assert row["analytic_fidelity"] == pytest.approx(row["fidelity"], abs=1e-10)
        assert row["ansatz_energy"] >= row["exact_energy"]
        assert row["relative_exact_energy"] < 0


def test_scan_with_worker_pool_matches_serial(params):
    sizes = runners.scan_sizes([1, 3], [4, 5])
    serial = runners.fidelity_scan(sizes, params, tolerance=1e-12, seed=1234)
    pooled = runners.fidelity_scan(sizes, params, tolerance=1e-12, seed=1234, workers=2)
    assert [(row["n"], row["L"]) for row in pooled] == [(row["n"], row["L"]) for row in serial]
    for a, b in zip(pooled, serial):
        assert a["fidelity"] == pytest.approx(b["fidelity"], abs=1e-12)
        assert a["status"] == b["status"]


def test_square_scan_sizes():
    assert runners.scan_sizes([1], [4, 5], square=True) == [(4, 4), (5, 5)]


def test_scan_rejects_single_pair(params):
    with pytest.raises(ValueError):
        runners.fidelity_scan([(1, 6)], params.with_pairs(1), tolerance=None, seed=None)


def test_extent_two_warning(params, caplog):
    with caplog.at_level(logging.WARNING):
        runners.fidelity_scan([(2, 4)], params, tolerance=None, seed=None)
    assert "extent 2" in caplog.text


def test_correlations_runner(params):
    result = runners.correlations(LatticeGeometry(rows=4, cols=6), params, 0, None, None)
    rows = result.rows()
    assert len(rows) == 24
    assert {"j_x", "j_y", "p_exact", "p_ansatz"} == set(rows[0])
    assert sum(row["p_exact"] for row in rows) == pytest.approx(1.0)
    spread = result.flatness()
    assert spread["ansatz"] == pytest.approx(0.0, abs=1e-12)
    with pytest.raises(ValueError):
        runners.correlations(LatticeGeometry.ring(6), params.with_pairs(3), 0, None, None)


def test_validate_single_pair_scaling():
    report = runners.validate(5, 1, [50, 100, 200])
    assert report.slope == pytest.approx(3.0, abs=0.3)
    for row in report.rows:
        assert row["bound_ratio"] < 10
    assert report.heisenberg_difference is None


def test_validate_two_pairs_even_ring():
    report = runners.validate(6, 2, [50, 100, 200])
    assert report.slope == pytest.approx(3.0, abs=0.3)
    assert report.sign_flip_difference < 1e-10
    assert report.heisenberg_difference < 1e-12


def test_chi_table():
    rows = runners.chi_table([4], max_pairs=6)
    assert [row["N"] for row in rows] == [1, 2, 3, 4]
    assert rows[1]["chi"] == pytest.approx(0.75)
    assert rows[1]["ratio"] == pytest.approx(0.75)
    assert rows[0]["purity"] == pytest.approx(0.25)


def test_write_and_read_csv(tmp_path):
    path = write_csv(
        tmp_path / "out" / "scan.csv",
        "fidelity-scan",
        {"u0": 1.0, "jy": None},
        ["n", "L", "fidelity", "analytic_fidelity"],
        [{"n": 1, "L": 4, "fidelity": 8 / 9, "analytic_fidelity": None}],
    )
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "# command: fidelity-scan"
    assert lines[1] == "# u0: 1"
    assert lines[2] == "# jy: "
    assert lines[3] == f"# code_version: {CODE_VERSION}"
    assert lines[4] == "n,L,fidelity,analytic_fidelity"
    assert lines[5] == "1,4,0.888888888888889,"

    metadata, rows = read_csv(path)
    assert metadata["command"] == "fidelity-scan"
    assert rows == [{"n": "1", "L": "4", "fidelity": "0.888888888888889", "analytic_fidelity": ""}]


def test_run_log_round_trip():
    assert get_run_stats() == {"total": 0, "oldest": None, "newest": None}
    record = ExperimentRecord(
        command="chi-table",
        geometry=[GeometryEntry(rows=1, cols=4)],
        parameters={"max_pairs": 2},
        results=[{"M": 4, "N": 2, "chi": 0.75}],
    )
    log_run(record)
    log_run(record.model_copy(update={"experiment_id": "second"}))
    with open(get_settings().run_log_path, "a", encoding="utf-8") as f:
        f.write("{broken\n")

    runs = read_runs()
    assert len(runs) == 2
    assert runs[0]["command"] == "chi-table"
    assert runs[0]["geometry"] == [{"rows": 1, "cols": 4}]
    assert runs[1]["experiment_id"] == "second"
    assert get_run_stats()["total"] == 2
    json.dumps(runs)


def test_record_defaults():
    record = ExperimentRecord(command="validate")
    assert len(record.experiment_id) == 32
    assert record.code_version == CODE_VERSION
    assert record.timestamp.endswith("+00:00")
    assert ModelParameters(u0=1.0, j_x=0.1).j_y == 0.1


def test_chi_table_is_exact_for_a_filled_lattice():
    rows = runners.chi_table([24], max_pairs=24)
    last = rows[-1]
    assert last["N"] == 24
    exact = math.factorial(24) / 24**24
    assert last["chi"] == pytest.approx(exact, rel=1e-12)
    assert last["ratio"] == pytest.approx(1 / 24, rel=1e-12)


def test_validate_rows_report_perturbative_ratio():
    report = runners.validate(4, 1, [50, 100])
    assert [row["perturbative_ratio"] for row in report.rows] == pytest.approx([0.02, 0.01])
    assert "perturbative_ratio" in runners.VALIDATION_COLUMNS
