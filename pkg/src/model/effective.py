"""基底多様体の実効ハミルトニアン（ハードコア・ボース模型）

H = -N(U0 + Σ_ν V_ν) + Σ_ν V_ν Σ_j N_j N_{j+e_ν} - Σ_ν (V_ν / 2) Σ_j (T_j^+ + T_j^-)

和はサイトごとのボンドで取る。長さ 2 の方向では同じサイト対が 2 回現れ、結合は倍になる。
"""

import logging

import numpy as np

from src.errors import BasisMismatchError
from src.lattice.basis import FullBasis, SectorBasis, enumerate_full_basis, occupation_matrix
from src.lattice.geometry import LatticeGeometry
from src.model.hamiltonian import SparseHamiltonian, assemble
from src.model.moves import bond_moves, bond_pair_counts
from src.model.params import ModelParameters

logger = logging.getLogger(__name__)


def build_effective(
    geometry: LatticeGeometry,
    params: ModelParameters,
    basis: FullBasis | SectorBasis | None = None,
) -> SparseHamiltonian:
    """実効ハミルトニアンを全配置基底またはセクター基底上に組む"""
    if basis is None:
        basis = enumerate_full_basis(geometry, params.n_pairs)
    if basis.geometry != geometry or basis.n_pairs != params.n_pairs:
        raise BasisMismatchError(
            f"basis ({basis.geometry.describe()}, N={basis.n_pairs}) does not match "
            f"geometry {geometry.describe()} with N={params.n_pairs}"
        )

    if isinstance(basis, SectorBasis):
        configs = basis.representatives
    else:
        configs = basis.configs
    diagonal, sources, moved, amplitudes = effective_action(geometry, params, configs)

    if isinstance(basis, SectorBasis):
        targets, shift_x, shift_y = basis.locate(moved)
        inside = targets >= 0
        sources, targets = sources[inside], targets[inside]
        # H_{r'r} = Σ_c h_c χ(g_c)* √(O_r / O_r')
        weights = np.sqrt(basis.orbit_sizes[sources] / basis.orbit_sizes[targets])
        phases = np.conj(basis.character(shift_x[inside], shift_y[inside]))
        values = amplitudes[inside] * weights * (phases.real if basis.is_real else phases)
    else:
        targets = basis.index_of(moved)
        values = amplitudes

    matrix = assemble(basis.dimension, diagonal, targets, sources, values, dtype=basis.dtype)
    logger.debug(
        "effective hamiltonian %s N=%d: dimension %d, nnz %d",
        geometry.describe(),
        params.n_pairs,
        basis.dimension,
        matrix.nnz,
    )
    return SparseHamiltonian(matrix=matrix, basis=basis, params=params, label="effective")


def effective_action(
    geometry: LatticeGeometry, params: ModelParameters, configs: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """配置集合への作用: (対角要素, 移動元行, 移動後配置, 振幅)"""
    occupation = occupation_matrix(configs, geometry.n_sites)
    diagonal = np.full(configs.shape[0], params.pair_constant(geometry, configs.shape[1]))
    sources, moved, amplitudes = [], [], []
    for direction in geometry.active_directions():
        v = params.effective_tunneling(direction)
        diagonal = diagonal + v * bond_pair_counts(occupation, geometry, direction)
        moves = bond_moves(geometry, configs, occupation, direction)
        sources.append(moves.sources)
        moved.append(moves.moved)
        amplitudes.append(np.full(moves.sources.shape[0], -0.5 * v))
    if not sources:
        empty = np.empty(0, dtype=np.int64)
        return diagonal, empty, np.empty((0, configs.shape[1]), dtype=np.int64), np.empty(0)
    return (
        diagonal,
        np.concatenate(sources),
        np.concatenate(moved),
        np.concatenate(amplitudes),
    )
