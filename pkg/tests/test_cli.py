import json

import pytest

from src.cli.main import build_parser, main
from src.config.settings import get_settings
from src.experiments.output import read_csv
from src.experiments.run_log import read_runs


def test_chi_table_command(tmp_path, capsys):
    out = tmp_path / "chi.csv"
    assert main(["chi-table", "--sites-range", "4:6", "--max-pairs", "2", "--out", str(out)]) == 0
    assert "χ_N" in capsys.readouterr().out

    metadata, rows = read_csv(out)
    assert metadata["command"] == "chi-table"
    assert metadata["max_pairs"] == "2"
    assert len(rows) == 6
    assert float(rows[1]["chi"]) == pytest.approx(0.75)

    runs = read_runs()
    assert len(runs) == 1
    assert runs[0]["command"] == "chi-table"


def test_default_output_goes_to_settings_dir():
    assert main(["chi-table", "--sites-range", "3", "--max-pairs", "1"]) == 0
    assert (get_settings().output_dir / "chi-table.csv").exists()


def test_fidelity_scan_rejects_single_pair(capsys):
    assert main(["fidelity-scan", "--n-pairs", "1", "--cols-range", "4:5"]) == 1
    err = capsys.readouterr().err
    assert err.startswith('error: {"type": "ValueError"')
    assert read_runs() == []


def test_bad_range_is_reported(capsys):
    assert main(["fidelity-scan", "--cols-range", "9:4"]) == 1
    assert "invalid range" in capsys.readouterr().err


def test_fidelity_scan_csv_is_deterministic(tmp_path):
    first, second = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (first, second):
        argv = ["fidelity-scan", "--cols-range", "4:7", "--seed", "7", "--out", str(path)]
        assert main(argv) == 0
    assert first.read_bytes() == second.read_bytes()

    _, rows = read_csv(first)
    assert [row["L"] for row in rows] == ["4", "5", "6", "7"]
    assert float(rows[0]["fidelity"]) == pytest.approx(float(rows[0]["analytic_fidelity"]))
    assert rows[0]["status"] == "ok"


def test_correlations_command_with_json(tmp_path):
    out, record_path = tmp_path / "corr.csv", tmp_path / "corr.json"
    argv = ["correlations", "--cols", "8", "--out", str(out), "--json", str(record_path)]
    assert main(argv) == 0

    _, rows = read_csv(out)
    assert len(rows) == 8
    assert rows[0]["p_exact"] == "0"
    record = json.loads(record_path.read_text(encoding="utf-8"))
    assert record["command"] == "correlations"
    assert record["geometry"] == [{"rows": 1, "cols": 8}]
    assert record["results"][0]["flatness_ansatz"] == pytest.approx(0.0, abs=1e-12)


def test_validate_command(tmp_path):
    out = tmp_path / "validate.csv"
    argv = ["validate", "--cols", "4", "--n-pairs", "1", "--u0-ratios", "50,100", "--out", str(out)]
    assert main(argv) == 0
    metadata, rows = read_csv(out)
    assert len(rows) == 2
    assert "slope" in metadata


def test_parser_defaults():
    args = build_parser().parse_args(["fidelity-scan"])
    assert args.cols_range == "4:20"
    assert args.rows == 1
    assert args.jx == 0.1
    assert args.jy is None
    assert args.n_pairs == 2


def test_runs_command_summarizes_log(capsys):
    assert main(["runs"]) == 0
    assert "件数: 0" in capsys.readouterr().out

    for _ in range(3):
        assert main(["chi-table", "--sites-range", "3", "--max-pairs", "1"]) == 0
    capsys.readouterr()
    assert main(["runs", "--limit", "2"]) == 0
    out = capsys.readouterr().out
    assert "件数: 3" in out
    assert out.count("chi-table") == 2
    # 要約の表示そのものはログに残さない
    assert len(read_runs()) == 3


def test_runs_command_rejects_bad_limit(capsys):
    assert main(["runs", "--limit", "0"]) == 1
    assert '"type": "ValueError"' in capsys.readouterr().err


def test_scan_reports_perturbative_ratio(tmp_path):
    out = tmp_path / "scan.csv"
    argv = ["fidelity-scan", "--cols-range", "4", "--u0", "2.0", "--jx", "0.1", "--jy", "0.3"]
    assert main([*argv, "--out", str(out)]) == 0
    metadata, _ = read_csv(out)
    assert float(metadata["perturbative_ratio"]) == pytest.approx(0.15)
    assert read_runs()[0]["parameters"]["perturbative_ratio"] == pytest.approx(0.15)
