"""基底付き状態ベクトル"""

from dataclasses import dataclass

import numpy as np

from src.errors import BasisMismatchError
from src.lattice.basis import FullBasis, SectorBasis

Basis = FullBasis | SectorBasis


def same_basis(a: Basis, b: Basis) -> bool:
    """同じ基底（格子・N・セクター）か"""
    return a is b or a.key == b.key


@dataclass(frozen=True, eq=False)
class StateVector:
    """基底上の振幅ベクトル"""

    amplitudes: np.ndarray
    basis: Basis

    def __post_init__(self):
        amplitudes = np.asarray(self.amplitudes)
        if amplitudes.shape != (self.basis.dimension,):
            raise BasisMismatchError(
                f"vector of shape {amplitudes.shape} does not fit basis of dimension "
                f"{self.basis.dimension}"
            )
        object.__setattr__(self, "amplitudes", amplitudes)

    @property
    def norm(self) -> float:
        """2 ノルム"""
        return float(np.linalg.norm(self.amplitudes))

    @property
    def n_pairs(self) -> int:
        """ペア数"""
        return self.basis.n_pairs

    def normalized(self) -> "StateVector":
        """規格化した状態"""
        norm = self.norm
        if norm == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.amplitudes / norm, self.basis)

    def amplitude_of(self, configs: np.ndarray) -> np.ndarray:
        """任意配置（昇順）の全基底振幅"""
        configs = np.atleast_2d(np.asarray(configs, dtype=np.int64))
        if configs.shape[1] != self.basis.n_pairs:
            raise BasisMismatchError(
                f"configurations with {configs.shape[1]} pairs "
                f"for a {self.basis.n_pairs}-pair basis"
            )
        if isinstance(self.basis, SectorBasis):
            return self.basis.amplitudes_of(self.amplitudes, configs)
        return self.amplitudes[self.basis.index_of(configs)]

    def to_full(self) -> "StateVector":
        """全配置基底での表現"""
        if isinstance(self.basis, FullBasis):
            return self
        return lift_to_full(self)


def lift_to_full(state: StateVector) -> StateVector:
    """セクター状態を全配置基底の状態へ展開"""
    if not isinstance(state.basis, SectorBasis):
        raise BasisMismatchError("lift_to_full expects a vector over a SectorBasis")
    if state.norm == 0.0:
        raise ValueError("cannot lift the zero vector")
    basis = state.basis
    return StateVector(basis.lift(state.amplitudes), basis.full_basis)
