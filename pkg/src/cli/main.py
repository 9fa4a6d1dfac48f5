"""コマンドラインインターフェース"""

import argparse
import json
import logging
import sys
from pathlib import Path

from src.config.settings import get_settings
from src.errors import CobosonError
from src.experiments import runners
from src.experiments.output import write_csv, write_json
from src.experiments.records import ExperimentRecord, GeometryEntry
from src.experiments.run_log import get_run_stats, log_run, read_runs
from src.lattice.geometry import LatticeGeometry
from src.model.params import ModelParameters

logger = logging.getLogger(__name__)


def _model_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--rows", type=int, default=1, help="n（行数）")
    parser.add_argument("--n-pairs", type=int, default=2, help="ペア数 N")
    parser.add_argument("--u0", type=float, default=1.0, help="結合エネルギー U0")
    parser.add_argument("--jx", type=float, default=0.1, help="x 方向のトンネル振幅 J_x")
    parser.add_argument("--jy", type=float, default=None, help="y 方向（省略時は J_x）")
    parser.add_argument("--xi", type=float, default=None, help="異方性 V_x / V_y（--jy より優先）")


def _common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--tol", type=float, default=None, help="Lanczos の相対残差")
    parser.add_argument("--seed", type=int, default=None, help="Lanczos の初期ベクトル乱数")
    parser.add_argument("--out", type=Path, default=None, help="出力 CSV")
    parser.add_argument("--json", type=Path, default=None, help="実験記録の JSON 出力")
    parser.add_argument("--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="coboson", description="コボソン仮説状態と厳密対角化の比較"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    scan = commands.add_parser("fidelity-scan", help="格子サイズごとのフィデリティ")
    _model_arguments(scan)
    _common_arguments(scan)
    scan.add_argument("--cols-range", default="4:20", help="a:b:step（b を含む）")
    scan.add_argument("--rows-range", default=None, help="複数の n を走査する場合")
    scan.add_argument("--square", action="store_true", help="L×L を走査")
    scan.add_argument("--workers", type=int, default=None)

    corr = commands.add_parser("correlations", help="条件付きペア位置分布")
    _model_arguments(corr)
    _common_arguments(corr)
    corr.add_argument("--cols", type=int, default=20)
    corr.add_argument("--anchor-row", type=int, default=0)
    corr.add_argument("--anchor-col", type=int, default=0)
    corr.add_argument("--exclusion-radius", type=int, default=2)

    check = commands.add_parser("validate", help="元の模型と実効模型の比較")
    _common_arguments(check)
    check.add_argument("--cols", type=int, default=6)
    check.add_argument("--n-pairs", type=int, default=2)
    check.add_argument("--j", type=float, default=1.0)
    check.add_argument("--u0-ratios", default="50,100,200")

    table = commands.add_parser("chi-table", help="一様スペクトルの χ_N")
    _common_arguments(table)
    table.add_argument("--sites-range", default="2:16")
    table.add_argument("--max-pairs", type=int, default=4)

    history = commands.add_parser("runs", help="実行ログの要約")
    history.add_argument("--limit", type=int, default=5, help="表示する直近の件数")
    history.add_argument("--verbose", action="store_true")
    return parser


def _parameters(args: argparse.Namespace) -> ModelParameters:
    if args.xi is not None:
        return ModelParameters.from_anisotropy(args.u0, args.jx, args.xi, n_pairs=args.n_pairs)
    return ModelParameters(u0=args.u0, j_x=args.jx, j_y=args.jy, n_pairs=args.n_pairs)


def _parameter_echo(args: argparse.Namespace) -> dict:
    echo = {}
    for key, value in sorted(vars(args).items()):
        if key in ("command", "out", "json", "verbose"):
            continue
        echo[key] = str(value) if isinstance(value, Path) else value
    return echo


def _model_echo(args: argparse.Namespace, params: ModelParameters) -> dict:
    """引数に max(|J|) / U0 を添える（摂動論の妥当性の目安、強制はしない）"""
    return {**_parameter_echo(args), "perturbative_ratio": params.perturbative_ratio}


def _output_path(args: argparse.Namespace) -> Path:
    return args.out or get_settings().output_dir / f"{args.command}.csv"


def run_fidelity_scan(args: argparse.Namespace) -> ExperimentRecord:
    print("=== フィデリティ走査開始 ===\n")
    params = _parameters(args)
    rows_values = runners.parse_range(args.rows_range) if args.rows_range else [args.rows]
    sizes = runners.scan_sizes(rows_values, runners.parse_range(args.cols_range), args.square)
    workers = args.workers or get_settings().workers
    print(f"格子数: {len(sizes)}  N={params.n_pairs}  V_x/V_y={params.anisotropy:.6g}")
    print(f"max|J|/U0: {params.perturbative_ratio:.3g}")

    rows = runners.fidelity_scan(sizes, params, args.tol, args.seed, workers=workers)
    for row in rows:
        print(f"  {row['n']}x{row['L']}: F={row['fidelity']:.10f} ({row['status']})")

    metadata = _model_echo(args, params)
    path = write_csv(_output_path(args), args.command, metadata, runners.SCAN_COLUMNS, rows)
    print("\n=== 走査完了 ===")
    print(f"出力: {path}")
    return ExperimentRecord(
        command=args.command,
        geometry=[GeometryEntry(rows=n, cols=length) for n, length in sizes],
        parameters=metadata,
        results=rows,
    )


def run_correlations(args: argparse.Namespace) -> ExperimentRecord:
    print("=== 条件付き分布の計算開始 ===\n")
    params = _parameters(args)
    geometry = LatticeGeometry(rows=args.rows, cols=args.cols)
    anchor = geometry.site_index(args.anchor_row, args.anchor_col)
    result = runners.correlations(geometry, params, anchor, args.tol, args.seed)
    rows = result.rows()
    spread = result.flatness(args.exclusion_radius)

    metadata = _model_echo(args, params)
    path = write_csv(_output_path(args), args.command, metadata, runners.CORRELATION_COLUMNS, rows)
    print(f"格子: {geometry.describe()}  anchor: ({args.anchor_row}, {args.anchor_col})")
    print(f"平坦度（厳密）: {spread['exact']:.6g}")
    print(f"平坦度（仮説）: {spread['ansatz']:.6g}")
    print("\n=== 計算完了 ===")
    print(f"出力: {path}")
    return ExperimentRecord(
        command=args.command,
        geometry=[GeometryEntry(rows=geometry.rows, cols=geometry.cols)],
        parameters=metadata,
        results=[{"flatness_exact": spread["exact"], "flatness_ansatz": spread["ansatz"]}],
    )


def run_validate(args: argparse.Namespace) -> ExperimentRecord:
    print("=== 実効模型の検証開始 ===\n")
    ratios = [float(value) for value in args.u0_ratios.split(",") if value.strip()]
    report = runners.validate(
        args.cols, args.n_pairs, ratios, tunneling=args.j, tolerance=args.tol, seed=args.seed
    )
    for row in report.rows:
        print(
            f"  U0/J={row['u0_over_j']:g}: E_full={row['e_full']:.12f} "
            f"E_eff={row['e_eff']:.12f} |diff|={row['difference']:.3e}"
        )
    summary = report.summary()
    metadata = {**_parameter_echo(args), **{k: v for k, v in summary.items() if v is not None}}
    path = write_csv(
        _output_path(args), args.command, metadata, runners.VALIDATION_COLUMNS, report.rows
    )
    print("\n=== 検証完了 ===")
    for key in ("slope", "sign_flip_difference", "heisenberg_difference"):
        if summary[key] is not None:
            print(f"{key}: {summary[key]:.6g}")
    print(f"出力: {path}")
    return ExperimentRecord(
        command=args.command,
        geometry=[GeometryEntry(rows=1, cols=args.cols)],
        parameters=_parameter_echo(args),
        results=[*report.rows, summary],
    )


def run_chi_table(args: argparse.Namespace) -> ExperimentRecord:
    print("=== χ_N の計算 ===\n")
    rows = runners.chi_table(runners.parse_range(args.sites_range), args.max_pairs)
    path = write_csv(
        _output_path(args), args.command, _parameter_echo(args), runners.CHI_COLUMNS, rows
    )
    print(f"{len(rows)} 行")
    print(f"出力: {path}")
    return ExperimentRecord(
        command=args.command, parameters=_parameter_echo(args), results=rows
    )


def run_runs(args: argparse.Namespace) -> None:
    """実行ログの件数・期間と直近の実行を表示（ログには追記しない）"""
    if args.limit < 1:
        raise ValueError(f"--limit must be at least 1, got {args.limit}")
    stats = get_run_stats()
    print("=== 実行ログ ===\n")
    print(f"件数: {stats['total']}")
    if not stats["total"]:
        return None
    print(f"最古: {stats['oldest']}")
    print(f"最新: {stats['newest']}")
    print(f"\n直近 {args.limit} 件:")
    for entry in read_runs()[-args.limit :]:
        print(f"  {entry.get('timestamp')}  {entry.get('command')}  {entry.get('experiment_id')}")
    return None


COMMANDS = {
    "fidelity-scan": run_fidelity_scan,
    "correlations": run_correlations,
    "validate": run_validate,
    "chi-table": run_chi_table,
    "runs": run_runs,
}


def _configure_logging(verbose: bool) -> None:
    level = logging.DEBUG if verbose else get_settings().log_level
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        record = COMMANDS[args.command](args)
    except (CobosonError, ValueError) as exc:
        error = {"type": type(exc).__name__, "message": str(exc)}
        print(f"error: {json.dumps(error, ensure_ascii=False)}", file=sys.stderr)
        return 1

    if record is None:
        return 0
    if args.json:
        write_json(args.json, record)
    log_run(record)
    return 0


if __name__ == "__main__":
    sys.exit(main())
