"""疎ハミルトニアン"""

from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy import sparse

from src.lattice.basis import FullBasis, rank_configurations
from src.model.params import ModelParameters


@dataclass(frozen=True, eq=False)
class SparseHamiltonian:
    """CSR 形式のエルミート演算子と、その基底"""

    matrix: sparse.csr_matrix
    basis: Any
    params: ModelParameters | None = None
    label: str = "effective"

    @property
    def dimension(self) -> int:
        """行列の次元"""
        return self.matrix.shape[0]

    @property
    def row_offsets(self) -> np.ndarray:
        return self.matrix.indptr

    @property
    def column_indices(self) -> np.ndarray:
        return self.matrix.indices

    @property
    def values(self) -> np.ndarray:
        return self.matrix.data

    @property
    def dtype(self) -> np.dtype:
        return self.matrix.dtype

    def matvec(self, vector: np.ndarray) -> np.ndarray:
        """H v"""
        return self.matrix @ vector

    def diagonal(self) -> np.ndarray:
        return self.matrix.diagonal()

    def to_dense(self) -> np.ndarray:
        """密行列（小さな系の検証用）"""
        return self.matrix.toarray()

    def is_hermitian(self, atol: float = 1e-14) -> bool:
        """H と H† の差が atol 以内か"""
        difference = self.matrix - self.matrix.conj().T
        if difference.nnz == 0:
            return True
        return float(abs(difference).max()) <= atol


def assemble(
    dimension: int,
    diagonal: np.ndarray,
    rows: np.ndarray,
    cols: np.ndarray,
    values: np.ndarray,
    dtype: type = np.float64,
) -> sparse.csr_matrix:
    """対角（0 でも明示的に格納）と非対角要素から CSR を組む

    重複する (row, col) は加算される。
    """
    diag_index = np.arange(dimension)
    matrix = sparse.coo_matrix(
        (
            np.concatenate([np.asarray(diagonal, dtype=dtype), np.asarray(values, dtype=dtype)]),
            (np.concatenate([diag_index, rows]), np.concatenate([diag_index, cols])),
        ),
        shape=(dimension, dimension),
    )
    return matrix.tocsr()


def translation_operator(basis: FullBasis, shift_x: int, shift_y: int) -> sparse.csr_matrix:
    """全配置基底上の並進の置換行列"""
    geometry = basis.geometry
    moved = np.sort(geometry.shift_sites(basis.configs, shift_x, shift_y), axis=1)
    targets = rank_configurations(moved, geometry.n_sites)
    ones = np.ones(basis.dimension)
    return sparse.csr_matrix(
        (ones, (targets, np.arange(basis.dimension))), shape=(basis.dimension,) * 2
    )
