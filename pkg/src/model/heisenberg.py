"""実効模型のハイゼンベルク鎖への写像（偶数 L のリング）

N_j = (σ^z_j + 1) / 2、a_j b_j = σ^-_j とし、偶数サイトのスピンを z 軸回りに回転すると
H = -N U0 + (J² / 4U0)(H_H - L)、H_H = Σ_j σ_j · σ_{j+1}、σ^z_T = 2N - L のセクター。
"""

import numpy as np
from scipy import sparse

from src.lattice.basis import FullBasis, combinations_array
from src.lattice.geometry import Direction, LatticeGeometry
from src.model.hamiltonian import SparseHamiltonian, assemble
from src.model.moves import bond_moves
from src.model.params import ModelParameters


def spin_sector_basis(geometry: LatticeGeometry, n_up: int) -> FullBasis:
    """上向きスピンの位置で張る固定磁化セクター（N = 0 も可）"""
    if not 0 <= n_up <= geometry.n_sites:
        raise ValueError(f"number of up spins must be in [0, {geometry.n_sites}], got {n_up}")
    return FullBasis(geometry, n_up, combinations_array(geometry.n_sites, n_up))


def _require_even_ring(geometry: LatticeGeometry) -> None:
    if not geometry.is_ring:
        raise ValueError(f"Heisenberg mapping needs a 1xL ring, got {geometry.describe()}")
    if geometry.cols % 2:
        raise ValueError(f"Heisenberg mapping only works for even L, got L={geometry.cols}")


def heisenberg_image(
    geometry: LatticeGeometry, params: ModelParameters, n_pairs: int | None = None
) -> SparseHamiltonian:
    """-N U0 + (V / 4)(H_H - L) を σ^z_T = 2N - L のセクターに組む"""
    _require_even_ring(geometry)
    n_pairs = params.n_pairs if n_pairs is None else n_pairs
    basis = spin_sector_basis(geometry, n_pairs)
    v = params.v_x
    length = geometry.cols

    spins = np.where(basis.occupation, 1, -1)
    bonds = geometry.bond_array(Direction.X)
    zz = (spins[:, bonds[:, 0]] * spins[:, bonds[:, 1]]).sum(axis=1)
    diagonal = -n_pairs * params.u0 + 0.25 * v * (zz - length)

    # σ^x σ^x + σ^y σ^y = 2(σ^+ σ^- + σ^- σ^+): 反平行スピン対の反転
    flips = bond_moves(geometry, basis.configs, basis.occupation, Direction.X)
    values = np.full(flips.sources.shape[0], 0.25 * v * 2.0)
    matrix = assemble(basis.dimension, diagonal, basis.index_of(flips.moved), flips.sources, values)
    return SparseHamiltonian(
        matrix=matrix, basis=basis, params=params.with_pairs(n_pairs), label="heisenberg"
    )


def total_magnetization(geometry: LatticeGeometry, n_pairs: int) -> int:
    """σ^z_T = 2N - L"""
    return 2 * n_pairs - geometry.n_sites


def sublattice_rotation(basis: FullBasis) -> sparse.csr_matrix:
    """偶数サイトのスピン回転 U（対角 ±1）: U H_eff U = ハイゼンベルク像"""
    _require_even_ring(basis.geometry)
    even_occupied = (basis.configs % 2 == 0).sum(axis=1)
    return sparse.diags(np.where(even_occupied % 2 == 0, 1.0, -1.0), format="csr")
