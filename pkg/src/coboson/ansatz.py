"""コボソン仮説状態 |N⟩ とそのエネルギー"""

import numpy as np

from src.errors import BasisMismatchError
from src.lattice.basis import (
    FullBasis,
    SectorBasis,
    binomial,
    build_sector_basis,
    enumerate_full_basis,
)
from src.lattice.geometry import LatticeGeometry
from src.lattice.state import StateVector
from src.model.effective import build_effective
from src.model.params import ModelParameters
from src.observables.expectation import energy_expectation


def ansatz_sector_vector(basis: SectorBasis) -> np.ndarray:
    """k = 0 セクターでの成分 √(O_r / C(M, N))"""
    total = binomial(basis.geometry.n_sites, basis.n_pairs)
    return np.sqrt(basis.orbit_sizes / total)


def ansatz_state(
    geometry: LatticeGeometry,
    n_pairs: int,
    basis: FullBasis | SectorBasis | None = None,
) -> StateVector:
    """全ハードコア配置の一様重ね合わせ（振幅 C(M, N)^{-1/2}）"""
    if not 0 < n_pairs <= geometry.n_sites:
        raise ValueError(f"n_pairs must be in (0, {geometry.n_sites}], got {n_pairs}")
    if basis is None:
        basis = enumerate_full_basis(geometry, n_pairs)
    if basis.geometry != geometry or basis.n_pairs != n_pairs:
        raise BasisMismatchError("basis does not match the requested ansatz")

    if isinstance(basis, SectorBasis):
        if basis.momentum != (0, 0):
            raise BasisMismatchError(
                f"the ansatz lives in the k=0 sector, not in k={basis.momentum}"
            )
        return StateVector(ansatz_sector_vector(basis), basis)
    amplitude = 1.0 / np.sqrt(basis.dimension)
    return StateVector(np.full(basis.dimension, amplitude), basis)


def ansatz_energy(
    geometry: LatticeGeometry, params: ModelParameters, n_pairs: int | None = None
) -> float:
    """⟨N|H_eff|N⟩（k = 0 セクターでの二次形式）"""
    n_pairs = params.n_pairs if n_pairs is None else n_pairs
    params = params.with_pairs(n_pairs)
    sector = build_sector_basis(geometry, n_pairs)
    hamiltonian = build_effective(geometry, params, sector)
    return energy_expectation(ansatz_state(geometry, n_pairs, sector), hamiltonian)
