"""最低固有対の計算（完全再直交化 Lanczos 法 + 小次元の密行列フォールバック）"""

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy import linalg

from src.config.settings import get_settings
from src.errors import ConvergenceError, SizeLimitError
from src.lattice.state import StateVector
from src.model.hamiltonian import SparseHamiltonian

logger = logging.getLogger(__name__)

METHODS = ("auto", "dense", "lanczos")


@dataclass
class EigenResult:
    """基底エネルギーと基底状態"""

    eigenvalue: float
    eigenvector: StateVector
    residual: float
    iterations: int
    converged: bool
    method: str
    near_degenerate: bool = False
    gap: float | None = None
    ritz_history: list[float] = field(default_factory=list)
    degenerate_vectors: np.ndarray | None = None


def fix_phase(vector: np.ndarray) -> np.ndarray:
    """絶対値最大の成分を正の実数にそろえる"""
    index = int(np.argmax(np.abs(vector)))
    pivot = vector[index]
    if pivot == 0:
        return vector
    return vector * (np.conj(pivot) / abs(pivot))


class LanczosSolver:
    """最低固有値ソルバー"""

    def __init__(
        self,
        tolerance: float | None = None,
        seed: int | None = None,
        max_iterations: int | None = None,
        max_restarts: int | None = None,
        dense_limit: int | None = None,
        degeneracy_tolerance: float | None = None,
    ):
        settings = get_settings()
        self.tolerance = settings.tolerance if tolerance is None else tolerance
        self.seed = settings.seed if seed is None else seed
        self.max_iterations = (
            settings.lanczos_max_iterations if max_iterations is None else max_iterations
        )
        self.max_restarts = settings.lanczos_max_restarts if max_restarts is None else max_restarts
        self.dense_limit = settings.dense_dimension_limit if dense_limit is None else dense_limit
        self.degeneracy_tolerance = (
            settings.degeneracy_tolerance
            if degeneracy_tolerance is None
            else degeneracy_tolerance
        )
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance}")

    def ground_state(
        self,
        hamiltonian: SparseHamiltonian,
        method: str = "auto",
        raise_on_failure: bool = True,
    ) -> EigenResult:
        """最小固有値と固有ベクトル"""
        if method not in METHODS:
            raise ValueError(f"unknown method {method!r}, expected one of {METHODS}")
        if hamiltonian.dimension < 1:
            raise ValueError("cannot diagonalize an empty Hamiltonian")

        use_dense = method == "dense" or (
            method == "auto" and hamiltonian.dimension <= self.dense_limit
        )
        result = self._dense(hamiltonian) if use_dense else self._lanczos(hamiltonian)

        if result.near_degenerate:
            logger.warning(
                "near-degenerate ground state (gap %.3e) for %s Hamiltonian of dimension %d",
                result.gap,
                hamiltonian.label,
                hamiltonian.dimension,
            )
        if not result.converged:
            message = (
                f"Lanczos did not converge after {result.iterations} iterations "
                f"(residual {result.residual:.3e})"
            )
            if raise_on_failure:
                raise ConvergenceError(message, result)
            logger.warning(message)
        return result

    def _dense(self, hamiltonian: SparseHamiltonian) -> EigenResult:
        if hamiltonian.dimension > self.dense_limit:
            logger.info("dense diagonalization above the dense limit (%d)", hamiltonian.dimension)
        values, vectors = linalg.eigh(hamiltonian.to_dense())
        eigenvalue = float(values[0])
        vector = fix_phase(vectors[:, 0])
        gap = float(values[1] - values[0]) if values.shape[0] > 1 else None
        near = gap is not None and gap < self.degeneracy_tolerance
        return EigenResult(
            eigenvalue=eigenvalue,
            eigenvector=StateVector(vector, hamiltonian.basis),
            residual=_residual(hamiltonian, vector, eigenvalue),
            iterations=1,
            converged=True,
            method="dense",
            near_degenerate=near,
            gap=gap,
            ritz_history=[eigenvalue],
            degenerate_vectors=vectors[:, values - values[0] < self.degeneracy_tolerance],
        )

    def _lanczos(self, hamiltonian: SparseHamiltonian) -> EigenResult:
        dimension = hamiltonian.dimension
        dtype = np.result_type(hamiltonian.dtype, np.float64)
        rng = np.random.default_rng(self.seed)
        start = rng.standard_normal(dimension)
        if np.issubdtype(dtype, np.complexfloating):
            start = start + 1j * rng.standard_normal(dimension)
        start = start.astype(dtype)

        history: list[float] = []
        iterations = 0
        krylov_size = min(self.max_iterations, dimension)
        for restart in range(self.max_restarts + 1):
            theta, vector, gap, steps = self._krylov_pass(hamiltonian, start, krylov_size, history)
            iterations += steps
            vector = vector / np.linalg.norm(vector)
            # Ritz 値より Rayleigh 商のほうが精度が高い
            eigenvalue = float(np.real(np.vdot(vector, hamiltonian.matvec(vector))))
            residual = _residual(hamiltonian, vector, eigenvalue)
            converged = residual <= self.tolerance * max(1.0, abs(eigenvalue))
            if converged or restart == self.max_restarts:
                break
            logger.debug("Lanczos restart %d, residual %.3e", restart + 1, residual)
            start = vector

        vector = fix_phase(vector)
        return EigenResult(
            eigenvalue=eigenvalue,
            eigenvector=StateVector(vector, hamiltonian.basis),
            residual=residual,
            iterations=iterations,
            converged=converged,
            method="lanczos",
            near_degenerate=gap is not None and gap < self.degeneracy_tolerance,
            gap=gap,
            ritz_history=history,
        )

    def _krylov_pass(
        self,
        hamiltonian: SparseHamiltonian,
        start: np.ndarray,
        krylov_size: int,
        history: list[float],
    ) -> tuple[float, np.ndarray, float | None, int]:
        """1 回分の Lanczos 反復。収束判定は Ritz 残差 β_k |y_k|"""
        dimension = hamiltonian.dimension
        basis = np.zeros((dimension, krylov_size), dtype=start.dtype)
        basis[:, 0] = start / np.linalg.norm(start)
        alphas: list[float] = []
        betas: list[float] = []

        for j in range(krylov_size):
            w = hamiltonian.matvec(basis[:, j])
            alpha = float(np.real(np.vdot(basis[:, j], w)))
            alphas.append(alpha)
            w = w - alpha * basis[:, j]
            if j > 0:
                w = w - betas[j - 1] * basis[:, j - 1]
            # 完全再直交化（2 回）
            for _ in range(2):
                w = w - basis[:, : j + 1] @ (basis[:, : j + 1].conj().T @ w)
            beta = float(np.linalg.norm(w))

            ritz_values, ritz_vectors = _tridiagonal_eigh(alphas, betas)
            theta = float(ritz_values[0])
            y = ritz_vectors[:, 0]
            history.append(theta)
            gap = float(ritz_values[1] - ritz_values[0]) if ritz_values.shape[0] > 1 else None

            scale = max(1.0, abs(theta))
            breakdown = beta <= 1e-14 * scale
            if breakdown or beta * abs(y[-1]) <= self.tolerance * scale or j == krylov_size - 1:
                return theta, basis[:, : j + 1] @ y, gap, j + 1
            betas.append(beta)
            basis[:, j + 1] = w / beta
        raise AssertionError("unreachable")


def _tridiagonal_eigh(alphas: list[float], betas: list[float]) -> tuple[np.ndarray, np.ndarray]:
    if len(alphas) == 1:
        return np.array(alphas), np.ones((1, 1))
    return linalg.eigh_tridiagonal(np.array(alphas), np.array(betas))


def _residual(hamiltonian: SparseHamiltonian, vector: np.ndarray, eigenvalue: float) -> float:
    return float(np.linalg.norm(hamiltonian.matvec(vector) - eigenvalue * vector))


def ground_state(
    hamiltonian: SparseHamiltonian,
    tolerance: float | None = None,
    seed: int | None = None,
    method: str = "auto",
) -> EigenResult:
    """既定設定のソルバーで基底状態を求める"""
    return LanczosSolver(tolerance=tolerance, seed=seed).ground_state(hamiltonian, method=method)


def dense_spectrum(hamiltonian: SparseHamiltonian, limit: int | None = None) -> np.ndarray:
    """全固有値（密行列で計算できる次元のみ）"""
    limit = get_settings().dense_dimension_limit if limit is None else limit
    if hamiltonian.dimension > limit:
        raise SizeLimitError(
            f"dense spectrum of dimension {hamiltonian.dimension} exceeds limit {limit}"
        )
    return linalg.eigvalsh(hamiltonian.to_dense())
