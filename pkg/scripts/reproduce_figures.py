#!/usr/bin/env python
"""図のデータ一式を再生成するスクリプト"""

import sys
from pathlib import Path

# プロジェクトルートをパスに追加
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.cli.main import main
from src.config.settings import get_settings

# (出力ファイル名, CLI 引数)
FIGURES = [
    ("ring_fidelity.csv", ["fidelity-scan", "--rows", "1", "--cols-range", "4:60"]),
    ("ring_correlations.csv", ["correlations", "--rows", "1", "--cols", "20"]),
    ("quasi_1d_fidelity.csv", ["fidelity-scan", "--rows-range", "3:5", "--cols-range", "3:16"]),
    ("strip_4x18_correlations.csv", ["correlations", "--rows", "4", "--cols", "18"]),
    *[
        (f"square_xi{xi}.csv", ["fidelity-scan", "--square", "--cols-range", "4:12", "--xi", xi])
        for xi in ("1", "2", "5", "10", "100")
    ],
    ("square_51x51_correlations.csv", ["correlations", "--rows", "51", "--cols", "51"]),
    ("validate_L6_N2.csv", ["validate", "--cols", "6", "--n-pairs", "2"]),
    ("chi_table.csv", ["chi-table"]),
]


def reproduce_figures():
    """全データセットを output_dir に書き出す"""
    print("=== 図データ再生成開始 ===\n")
    output_dir = get_settings().output_dir
    failures = []

    for i, (name, arguments) in enumerate(FIGURES):
        print(f"[{i + 1}/{len(FIGURES)}] {name}")
        status = main([*arguments, "--out", str(output_dir / name)])
        if status != 0:
            failures.append(name)

    print("\n=== 再生成完了 ===")
    print(f"出力先: {output_dir}")
    print(f"失敗: {len(failures)}件")
    for name in failures:
        print(f"  {name}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(reproduce_figures())
