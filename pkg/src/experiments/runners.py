"""走査・相関・検証の実行ロジック"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from src.analytic.oracles import analytic_fidelity_1d
from src.coboson.ansatz import ansatz_state
from src.coboson.schmidt import SchmidtSpectrum, bosonic_ratio, chi
from src.errors import ConvergenceError
from src.lattice.basis import build_sector_basis, enumerate_full_basis
from src.lattice.geometry import LatticeGeometry
from src.model.effective import build_effective
from src.model.full import build_full
from src.model.heisenberg import heisenberg_image
from src.model.params import ModelParameters
from src.observables.correlations import CorrelationMap, conditional_map, flatness
from src.observables.expectation import energy_expectation, fidelity, subspace_fidelity
from src.solver.eigensolver import EigenResult, LanczosSolver, dense_spectrum

logger = logging.getLogger(__name__)

SCAN_COLUMNS = [
    "n",
    "L",
    "M",
    "sector_dim",
    "fidelity",
    "exact_energy",
    "ansatz_energy",
    "relative_exact_energy",
    "relative_ansatz_energy",
    "analytic_fidelity",
    "residual",
    "iterations",
    "near_degenerate",
    "status",
]
CORRELATION_COLUMNS = ["j_x", "j_y", "p_exact", "p_ansatz"]
VALIDATION_COLUMNS = [
    "u0_over_j",
    "u0",
    "j",
    "perturbative_ratio",
    "e_full",
    "e_eff",
    "difference",
    "bound_ratio",
]
CHI_COLUMNS = ["M", "N", "chi", "ratio", "purity"]


def parse_range(text: str) -> list[int]:
    """'a:b:step'（b を含む）または単一の整数"""
    parts = text.split(":")
    if len(parts) == 1:
        return [int(parts[0])]
    if len(parts) not in (2, 3):
        raise ValueError(f"range must look like a:b or a:b:step, got {text!r}")
    start, stop = int(parts[0]), int(parts[1])
    step = int(parts[2]) if len(parts) == 3 else 1
    if step < 1 or stop < start:
        raise ValueError(f"invalid range {text!r}")
    return list(range(start, stop + 1, step))


def warn_extent_two(geometry: LatticeGeometry) -> None:
    """長さ 2 の方向があれば警告する"""
    if geometry.has_extent_two:
        logger.warning(
            "geometry %s has a direction of extent 2: bonds are counted twice",
            geometry.describe(),
        )


def _ground_state(solver: LanczosSolver, hamiltonian) -> tuple[EigenResult, str]:
    """収束しなくても部分結果を返す"""
    try:
        return solver.ground_state(hamiltonian), "ok"
    except ConvergenceError as exc:
        if exc.result is None:
            raise
        logger.warning("%s", exc)
        return exc.result, "not_converged"


def fidelity_point(
    rows: int, cols: int, params: ModelParameters, tolerance: float | None, seed: int | None
) -> dict:
    """1 格子サイズぶんの k = 0 セクター計算"""
    geometry = LatticeGeometry(rows=rows, cols=cols)
    n_pairs = params.n_pairs
    sector = build_sector_basis(geometry, n_pairs)
    hamiltonian = build_effective(geometry, params, sector)
    result, status = _ground_state(LanczosSolver(tolerance=tolerance, seed=seed), hamiltonian)

    ansatz = ansatz_state(geometry, n_pairs, sector)
    if result.near_degenerate and result.degenerate_vectors is not None:
        value = subspace_fidelity(ansatz, result.degenerate_vectors)
    else:
        value = fidelity(ansatz, result.eigenvector)
    ansatz_energy = energy_expectation(ansatz, hamiltonian)

    analytic = None
    if rows == 1 and n_pairs == 2 and cols >= 3:
        analytic = analytic_fidelity_1d(cols)
    return {
        "n": rows,
        "L": cols,
        "M": geometry.n_sites,
        "sector_dim": int(sector.dimension),
        "fidelity": value,
        "exact_energy": result.eigenvalue,
        "ansatz_energy": ansatz_energy,
        "relative_exact_energy": params.relative_energy(result.eigenvalue, geometry),
        "relative_ansatz_energy": params.relative_energy(ansatz_energy, geometry),
        "analytic_fidelity": analytic,
        "residual": result.residual,
        "iterations": int(result.iterations),
        "near_degenerate": bool(result.near_degenerate),
        "status": status,
    }


def scan_sizes(
    row_values: list[int], col_values: list[int], square: bool = False
) -> list[tuple[int, int]]:
    """走査する (n, L) の一覧（square なら L×L）"""
    if square:
        return [(length, length) for length in col_values]
    return [(rows, cols) for rows in row_values for cols in col_values]


def fidelity_scan(
    sizes: list[tuple[int, int]],
    params: ModelParameters,
    tolerance: float | None,
    seed: int | None,
    workers: int = 1,
) -> list[dict]:
    """格子サイズごとのフィデリティ（結果は (n, L) 順）"""
    if params.n_pairs < 2:
        raise ValueError(f"fidelity scans need N >= 2, got N={params.n_pairs}")
    for rows, cols in sizes:
        if rows * cols < params.n_pairs:
            raise ValueError(f"{rows}x{cols} cannot hold {params.n_pairs} pairs")
        warn_extent_two(LatticeGeometry(rows=rows, cols=cols))

    count = len(sizes)
    arguments = (
        [rows for rows, _ in sizes],
        [cols for _, cols in sizes],
        [params] * count,
        [tolerance] * count,
        [seed] * count,
    )
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(fidelity_point, *arguments))
    else:
        rows = [fidelity_point(*args) for args in zip(*arguments)]
    return sorted(rows, key=lambda row: (row["n"], row["L"]))


@dataclass
class CorrelationResult:
    """厳密基底状態と仮説状態の条件付き分布"""

    exact: CorrelationMap
    ansatz: CorrelationMap
    ground: EigenResult
    status: str

    def rows(self) -> list[dict]:
        """CSV 用の行（サイトごと）"""
        geometry = self.exact.geometry
        return [
            {
                "j_x": col,
                "j_y": row,
                "p_exact": self.exact.at(row, col),
                "p_ansatz": self.ansatz.at(row, col),
            }
            for row in range(geometry.rows)
            for col in range(geometry.cols)
        ]

    def flatness(self, exclusion_radius: int = 2) -> dict[str, float]:
        """厳密・仮説それぞれの平坦度"""
        return {
            "exact": flatness(self.exact, exclusion_radius),
            "ansatz": flatness(self.ansatz, exclusion_radius),
        }


def correlations(
    geometry: LatticeGeometry,
    params: ModelParameters,
    anchor: int,
    tolerance: float | None,
    seed: int | None,
) -> CorrelationResult:
    """2 ペア基底状態で anchor を条件とした他方のペアの位置分布"""
    if params.n_pairs != 2:
        raise ValueError(f"correlation maps need N = 2, got N={params.n_pairs}")
    warn_extent_two(geometry)
    sector = build_sector_basis(geometry, 2)
    hamiltonian = build_effective(geometry, params, sector)
    result, status = _ground_state(LanczosSolver(tolerance=tolerance, seed=seed), hamiltonian)
    return CorrelationResult(
        exact=conditional_map(result.eigenvector, anchor),
        ansatz=conditional_map(ansatz_state(geometry, 2, sector), anchor),
        ground=result,
        status=status,
    )


@dataclass
class ValidationReport:
    """元の模型と実効模型の比較"""

    length: int
    n_pairs: int
    rows: list[dict] = field(default_factory=list)
    slope: float | None = None
    sign_flip_difference: float | None = None
    heisenberg_difference: float | None = None

    def summary(self) -> dict:
        """CSV メタデータと記録用の要約"""
        return {
            "L": self.length,
            "N": self.n_pairs,
            "slope": self.slope,
            "sign_flip_difference": self.sign_flip_difference,
            "heisenberg_difference": self.heisenberg_difference,
        }


def validate(
    length: int,
    n_pairs: int,
    u0_ratios: list[float],
    tunneling: float = 1.0,
    tolerance: float | None = None,
    seed: int | None = None,
    limit: int | None = None,
) -> ValidationReport:
    """固定 J で U0/J を変え、E_full - E_eff の (J/U0)⁴ U0 スケーリングを確認"""
    geometry = LatticeGeometry.ring(length)
    warn_extent_two(geometry)
    solver = LanczosSolver(tolerance=tolerance, seed=seed)
    effective_basis = enumerate_full_basis(geometry, n_pairs)
    report = ValidationReport(length=length, n_pairs=n_pairs)

    for ratio in u0_ratios:
        params = ModelParameters(u0=ratio * tunneling, j_x=tunneling, n_pairs=n_pairs)
        e_full = solver.ground_state(build_full(geometry, params, limit=limit)).eigenvalue
        e_eff = solver.ground_state(build_effective(geometry, params, effective_basis)).eigenvalue
        difference = abs(e_full - e_eff)
        report.rows.append(
            {
                "u0_over_j": float(ratio),
                "u0": params.u0,
                "j": tunneling,
                "perturbative_ratio": params.perturbative_ratio,
                "e_full": e_full,
                "e_eff": e_eff,
                "difference": difference,
                "bound_ratio": difference / (tunneling**4 / params.u0**3),
            }
        )

    if len(report.rows) >= 2:
        x = np.log([tunneling / row["u0"] for row in report.rows])
        y = np.log([max(row["difference"], np.finfo(float).tiny) for row in report.rows])
        report.slope = float(np.polyfit(x, y, 1)[0])

    if u0_ratios:
        params = ModelParameters(u0=u0_ratios[0] * tunneling, j_x=tunneling, n_pairs=n_pairs)
        original = solver.ground_state(build_full(geometry, params, limit=limit)).eigenvalue
        flipped = solver.ground_state(build_full(geometry, params.flipped(), limit=limit))
        report.sign_flip_difference = abs(original - flipped.eigenvalue)

        if length % 2 == 0:
            effective = dense_spectrum(build_effective(geometry, params, effective_basis))
            image = dense_spectrum(heisenberg_image(geometry, params))
            report.heisenberg_difference = float(np.max(np.abs(effective - image)))
    return report


def chi_table(site_counts: list[int], max_pairs: int) -> list[dict]:
    """一様スペクトル 1/M に対する χ_N, χ_N/χ_{N-1}, 純度（N ≈ M でも正確な漸化式で計算）"""
    rows = []
    for n_sites in site_counts:
        spectrum = SchmidtSpectrum(np.full(n_sites, 1.0 / n_sites))
        for n_pairs in range(1, min(max_pairs, n_sites) + 1):
            rows.append(
                {
                    "M": n_sites,
                    "N": n_pairs,
                    "chi": chi(spectrum, n_pairs, method="recurrence"),
                    "ratio": bosonic_ratio(spectrum, n_pairs, method="recurrence"),
                    "purity": spectrum.purity,
                }
            )
    return rows
