"""エネルギー期待値とフィデリティ"""

import numpy as np

from src.errors import BasisMismatchError
from src.lattice.state import StateVector, same_basis
from src.model.hamiltonian import SparseHamiltonian


def energy_expectation(state: StateVector, hamiltonian: SparseHamiltonian) -> float:
    """⟨ψ|H|ψ⟩ / ⟨ψ|ψ⟩ の実部"""
    if not same_basis(state.basis, hamiltonian.basis):
        raise BasisMismatchError("state and Hamiltonian live on different bases")
    vector = state.amplitudes
    norm = float(np.real(np.vdot(vector, vector)))
    if norm == 0.0:
        raise ValueError("energy expectation of the zero vector")
    return float(np.real(np.vdot(vector, hamiltonian.matvec(vector)))) / norm


def _common_representation(u: StateVector, v: StateVector) -> tuple[StateVector, StateVector]:
    if same_basis(u.basis, v.basis):
        return u, v
    if u.basis.geometry != v.basis.geometry or u.n_pairs != v.n_pairs:
        raise BasisMismatchError(
            f"cannot compare states on {u.basis.key} and {v.basis.key}"
        )
    # セクター表現と全基底表現の比較は全基底で行う
    u_full, v_full = u.to_full(), v.to_full()
    if not same_basis(u_full.basis, v_full.basis):
        raise BasisMismatchError(f"cannot compare states on {u.basis.key} and {v.basis.key}")
    return u_full, v_full


def fidelity(u: StateVector, v: StateVector) -> float:
    """|⟨u|v⟩|²（両者を規格化して計算）"""
    u, v = _common_representation(u, v)
    u, v = u.normalized(), v.normalized()
    overlap = np.vdot(u.amplitudes, v.amplitudes)
    return float(min(1.0, abs(overlap) ** 2))


def subspace_fidelity(u: StateVector, vectors: np.ndarray) -> float:
    """縮退部分空間（正規直交な列ベクトル）に対する最大フィデリティ Σ_i |⟨u|v_i⟩|²"""
    vectors = np.asarray(vectors)
    if vectors.ndim == 1:
        vectors = vectors[:, None]
    if vectors.shape[0] != u.basis.dimension:
        raise BasisMismatchError(
            f"subspace vectors of length {vectors.shape[0]} do not fit basis of dimension "
            f"{u.basis.dimension}"
        )
    overlaps = vectors.conj().T @ u.normalized().amplitudes
    return float(min(1.0, np.sum(np.abs(overlaps) ** 2)))
