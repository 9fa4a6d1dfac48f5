"""2 種フェルミオンの元のハミルトニアン（小さな系での検証用）

H = -U0 Σ_j n^a_j n^b_j + Σ_ν (J_ν / 2) Σ_j (a†_j a_{j+e_ν} + b†_j b_{j+e_ν} + h.c.)

各種の基底状態は占有サイト昇順に生成演算子を並べたもの。異種の演算子は可換。
"""

import logging
from dataclasses import dataclass

import numpy as np
from scipy import sparse

from src.config.settings import get_settings
from src.errors import SizeLimitError
from src.lattice.basis import FullBasis, binomial, enumerate_full_basis
from src.lattice.geometry import LatticeGeometry
from src.model.hamiltonian import SparseHamiltonian, assemble
from src.model.moves import bond_moves
from src.model.params import ModelParameters

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class TwoSpeciesBasis:
    """a 種・b 種それぞれ N 粒子のテンソル積基底（index = i_a * D + i_b）"""

    geometry: LatticeGeometry
    n_pairs: int
    species: FullBasis

    @property
    def dimension(self) -> int:
        """C(M, N)²"""
        return self.species.dimension**2

    @property
    def key(self) -> tuple:
        return ("two-species", self.geometry, self.n_pairs)

    def index(self, index_a: np.ndarray | int, index_b: np.ndarray | int) -> np.ndarray:
        """(a 種, b 種) の配置番号からテンソル積基底の番号へ"""
        return np.asarray(index_a) * self.species.dimension + np.asarray(index_b)

    def paired_indices(self) -> np.ndarray:
        """全粒子がペアを組んでいる状態（a と b の配置が一致）"""
        diagonal = np.arange(self.species.dimension)
        return self.index(diagonal, diagonal)


def fermion_signs(configs: np.ndarray, start: np.ndarray, end: np.ndarray) -> np.ndarray:
    """a†_end a_start の符号: start と end の間にある占有サイト数の偶奇"""
    low = np.minimum(start, end)[:, None]
    high = np.maximum(start, end)[:, None]
    between = ((configs > low) & (configs < high)).sum(axis=1)
    return np.where(between % 2 == 0, 1.0, -1.0)


def species_hopping(
    geometry: LatticeGeometry, params: ModelParameters, species: FullBasis
) -> sparse.csr_matrix:
    """1 種ぶんのホッピング演算子 Σ_ν (J_ν / 2) Σ_j (c†_j c_{j+e_ν} + h.c.)"""
    rows, cols, values = [], [], []
    for direction in geometry.active_directions():
        moves = bond_moves(geometry, species.configs, species.occupation, direction)
        signs = fermion_signs(species.configs[moves.sources], moves.start_sites, moves.end_sites)
        rows.append(species.index_of(moves.moved))
        cols.append(moves.sources)
        values.append(0.5 * params.tunneling(direction) * signs)
    if not rows:
        return sparse.csr_matrix((species.dimension, species.dimension))
    return assemble(
        species.dimension,
        np.zeros(species.dimension),
        np.concatenate(rows),
        np.concatenate(cols),
        np.concatenate(values),
    )


def build_full(
    geometry: LatticeGeometry,
    params: ModelParameters,
    n_pairs: int | None = None,
    limit: int | None = None,
) -> SparseHamiltonian:
    """2 種フェルミオン模型を C(M, N)² 次元の基底上に組む"""
    n_pairs = params.n_pairs if n_pairs is None else n_pairs
    limit = get_settings().full_model_limit if limit is None else limit
    dimension = binomial(geometry.n_sites, n_pairs) ** 2
    if dimension > limit:
        raise SizeLimitError(
            f"full model {geometry.describe()} with N={n_pairs} has dimension {dimension} "
            f"> limit {limit}"
        )

    species = enumerate_full_basis(geometry, n_pairs)
    basis = TwoSpeciesBasis(geometry=geometry, n_pairs=n_pairs, species=species)
    hopping = species_hopping(geometry, params, species)
    identity = sparse.identity(species.dimension, format="csr")

    occupation = species.occupation.astype(np.float64)
    doubly_occupied = occupation @ occupation.T
    interaction = sparse.diags(-params.u0 * doubly_occupied.ravel(), format="csr")

    matrix = (sparse.kron(hopping, identity) + sparse.kron(identity, hopping) + interaction).tocsr()
    logger.debug(
        "full model %s N=%d: dimension %d, nnz %d",
        geometry.describe(),
        n_pairs,
        dimension,
        matrix.nnz,
    )
    return SparseHamiltonian(
        matrix=matrix, basis=basis, params=params.with_pairs(n_pairs), label="full"
    )
