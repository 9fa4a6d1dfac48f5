"""シュミット係数・規格化因子 χ_N・純度"""

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from src.lattice.geometry import LatticeGeometry
from src.lattice.state import StateVector

ESP_METHODS = ("newton", "recurrence", "summation")


@dataclass(frozen=True)
class SchmidtSpectrum:
    """シュミット係数（降順、和は 1）"""

    coefficients: np.ndarray

    def __post_init__(self):
        values = np.sort(np.asarray(self.coefficients, dtype=np.float64))[::-1]
        if values.size == 0:
            raise ValueError("Schmidt spectrum needs at least one coefficient")
        if values[-1] < 0:
            raise ValueError(f"Schmidt coefficients must be non-negative, got {values[-1]}")
        if abs(values.sum() - 1.0) > 1e-12:
            raise ValueError(f"Schmidt coefficients must sum to 1, got {values.sum()!r}")
        values.setflags(write=False)
        object.__setattr__(self, "coefficients", values)

    @property
    def rank(self) -> int:
        """0 でない係数の数"""
        return int(np.count_nonzero(self.coefficients))

    @property
    def purity(self) -> float:
        """Σ λ²"""
        return float(np.sum(self.coefficients**2))


def schmidt_of_single_pair_ground(geometry: LatticeGeometry) -> SchmidtSpectrum:
    """1 ペア基底状態は一様重ね合わせなので λ_α = 1/M"""
    return SchmidtSpectrum(np.full(geometry.n_sites, 1.0 / geometry.n_sites))


def schmidt_of_pair_state(state: StateVector) -> SchmidtSpectrum:
    """Σ_j ψ_j |j, j⟩ の構成粒子の縮約密度行列は diag(|ψ_j|²)"""
    if state.n_pairs != 1:
        raise ValueError(f"Schmidt decomposition needs a single-pair state, got N={state.n_pairs}")
    weights = np.abs(state.to_full().amplitudes) ** 2
    return SchmidtSpectrum(weights / weights.sum())


def elementary_symmetric(values: np.ndarray, order: int, method: str = "newton") -> float:
    """基本対称式 e_order(values)"""
    if order < 0:
        raise ValueError(f"order must be non-negative, got {order}")
    if method not in ESP_METHODS:
        raise ValueError(f"unknown method {method!r}, expected one of {ESP_METHODS}")
    values = np.asarray(values, dtype=np.float64)
    if order == 0:
        return 1.0
    if order > values.size:
        return 0.0

    if method == "summation":
        return float(sum(math.prod(subset) for subset in combinations(values.tolist(), order)))

    if method == "recurrence":
        partial = np.zeros(order + 1)
        partial[0] = 1.0
        for i, value in enumerate(values):
            for j in range(min(i + 1, order), 0, -1):
                partial[j] += value * partial[j - 1]
        return float(partial[order])

    # Newton の恒等式: k e_k = Σ_{i=1}^{k} (-1)^{i-1} e_{k-i} p_i
    power_sums = [float(np.sum(values**i)) for i in range(order + 1)]
    e = [1.0]
    for k in range(1, order + 1):
        total = sum((-1) ** (i - 1) * e[k - i] * power_sums[i] for i in range(1, k + 1))
        e.append(total / k)
    return e[order]


def chi(spectrum: SchmidtSpectrum, n_pairs: int, method: str = "newton") -> float:
    """χ_N = N! e_N(λ)（N > S なら 0）

    newton はべき和の交代和なので N が S に近いと相対誤差が 1e-9 程度まで増える。
    その範囲では method="recurrence" を使う。
    """
    if n_pairs < 0:
        raise ValueError(f"n_pairs must be non-negative, got {n_pairs}")
    if n_pairs > spectrum.coefficients.size:
        return 0.0
    return math.factorial(n_pairs) * elementary_symmetric(
        spectrum.coefficients, n_pairs, method=method
    )


def bosonic_ratio(spectrum: SchmidtSpectrum, n_pairs: int, method: str = "newton") -> float:
    """χ_N / χ_{N-1}（1 に近いほどボソン的）"""
    if n_pairs < 1:
        raise ValueError(f"n_pairs must be at least 1, got {n_pairs}")
    previous = chi(spectrum, n_pairs - 1, method=method)
    return chi(spectrum, n_pairs, method=method) / previous if previous else 0.0
