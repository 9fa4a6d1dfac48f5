"""閉じた形の解（1 ペアのスペクトル、1 次元の 2 ペア厳密解、フィデリティ）"""

import math
from dataclasses import dataclass

import numpy as np

from src.lattice.basis import FullBasis, binomial, enumerate_full_basis
from src.lattice.geometry import Direction, LatticeGeometry
from src.lattice.state import StateVector
from src.model.params import ModelParameters


@dataclass(frozen=True)
class SinglePairLevel:
    """1 ペアの運動量固有状態"""

    momentum: tuple[int, int]
    energy: float

    @property
    def k(self) -> int:
        """1 次元リングでの運動量 k_x"""
        return self.momentum[0]


def single_pair_spectrum(
    geometry: LatticeGeometry, params: ModelParameters
) -> list[SinglePairLevel]:
    """E(k) = -U0 - 2 V_x cos²(π k_x / L) - 2 V_y cos²(π k_y / n)"""
    active = geometry.active_directions()
    levels = []
    for k_y in range(geometry.rows):
        for k_x in range(geometry.cols):
            energy = -params.u0
            if Direction.X in active:
                energy -= 2.0 * params.v_x * math.cos(math.pi * k_x / geometry.cols) ** 2
            if Direction.Y in active:
                energy -= 2.0 * params.v_y * math.cos(math.pi * k_y / geometry.rows) ** 2
            levels.append(SinglePairLevel(momentum=(k_x, k_y), energy=energy))
    return levels


def _require_two_pair_ring(length: int) -> None:
    if length < 3:
        raise ValueError(f"two-pair closed forms need L >= 3, got L={length}")


def _ring_distance(length: int, j1: np.ndarray | int, j2: np.ndarray | int) -> np.ndarray:
    gap = np.abs(np.asarray(j2) - np.asarray(j1)) % length
    return np.minimum(gap, length - gap)


def _profile(length: int, distance: np.ndarray | int) -> np.ndarray:
    return np.sin(np.pi * (np.asarray(distance) - 0.5) / (length - 1))


def _distance_multiplicities(length: int) -> tuple[np.ndarray, np.ndarray]:
    """リング上の 2 ペア配置を距離 d ごとに数える（d = L/2 のみ L/2 通り）"""
    distances = np.arange(1, length // 2 + 1)
    counts = np.full(distances.shape, length, dtype=np.int64)
    if length % 2 == 0:
        counts[-1] = length // 2
    return distances, counts


@dataclass(frozen=True)
class TwoPairExactState:
    """1×L リング上の 2 ペア厳密基底状態 A sin[π(d - 1/2)/(L - 1)]"""

    length: int
    normalization: float

    @property
    def geometry(self) -> LatticeGeometry:
        """1×L リング"""
        return LatticeGeometry.ring(self.length)

    def amplitude(self, j1: int, j2: int) -> float:
        """配置 {j1, j2} の振幅"""
        if j1 % self.length == j2 % self.length:
            raise ValueError("hard-core pairs cannot share a site")
        distance = _ring_distance(self.length, j1, j2)
        return float(self.normalization * _profile(self.length, distance))

    def amplitudes(self, basis: FullBasis | None = None) -> np.ndarray:
        """全配置基底（辞書順）での振幅"""
        if basis is None:
            basis = enumerate_full_basis(self.geometry, 2)
        distance = _ring_distance(self.length, basis.configs[:, 0], basis.configs[:, 1])
        return self.normalization * _profile(self.length, distance)

    def as_state(self) -> StateVector:
        """全配置基底上の状態"""
        basis = enumerate_full_basis(self.geometry, 2)
        return StateVector(self.amplitudes(basis), basis)


def two_pair_exact_state(length: int) -> TwoPairExactState:
    _require_two_pair_ring(length)
    distances, counts = _distance_multiplicities(length)
    norm_squared = float(np.sum(counts * _profile(length, distances) ** 2))
    return TwoPairExactState(length=length, normalization=1.0 / math.sqrt(norm_squared))


def two_pair_exact_energy(length: int, params: ModelParameters) -> float:
    """-2U0 - 4V cos²(π / 2(L - 1))"""
    _require_two_pair_ring(length)
    return -2.0 * params.u0 - 4.0 * params.v_x * math.cos(math.pi / (2 * (length - 1))) ** 2


def two_pair_ansatz_energy(length: int, params: ModelParameters) -> float:
    """⟨2|H|2⟩ = -2U0 - 4V + 4V / (L - 1)"""
    _require_two_pair_ring(length)
    v = params.v_x
    return -2.0 * params.u0 - 4.0 * v + 4.0 * v / (length - 1)


def analytic_fidelity_1d(length: int) -> float:
    """一様仮説状態と 2 ペア厳密解の重なりの 2 乗（距離ごとの和で O(L)）"""
    exact = two_pair_exact_state(length)
    distances, counts = _distance_multiplicities(length)
    overlap = exact.normalization * np.sum(counts * _profile(length, distances))
    return float(overlap**2 / binomial(length, 2))


def fidelity_limit() -> float:
    """L → ∞ で 8/π²"""
    return 8.0 / math.pi**2


def two_pair_correlation_profile(length: int) -> np.ndarray:
    """サイト 0 にペアがあるとき他方がサイト j にある確率（p[0] = 0）"""
    _require_two_pair_ring(length)
    sites = np.arange(1, length)
    weights = _profile(length, _ring_distance(length, 0, sites)) ** 2
    profile = np.zeros(length)
    profile[1:] = weights / weights.sum()
    return profile
