"""2 ペア状態の条件付き位置分布"""

from dataclasses import dataclass

import numpy as np

from src.lattice.geometry import LatticeGeometry
from src.lattice.state import StateVector


@dataclass(frozen=True)
class CorrelationMap:
    """一方のペアを anchor に見つけたときの他方の位置分布 p(site)"""

    geometry: LatticeGeometry
    anchor: int
    probabilities: np.ndarray

    def __post_init__(self):
        probabilities = np.asarray(self.probabilities, dtype=np.float64)
        if probabilities.shape != (self.geometry.n_sites,):
            raise ValueError(
                f"expected {self.geometry.n_sites} probabilities, got {probabilities.shape}"
            )
        if probabilities[self.anchor] != 0.0:
            raise ValueError("the anchor site cannot hold the other pair")
        if np.any(probabilities < 0) or abs(probabilities.sum() - 1.0) > 1e-12:
            raise ValueError("probabilities must be non-negative and sum to 1")
        object.__setattr__(self, "probabilities", probabilities)

    def as_grid(self) -> np.ndarray:
        """(n, L) 配列、grid[j_y, j_x]"""
        return self.probabilities.reshape(self.geometry.rows, self.geometry.cols)

    def at(self, row: int, col: int) -> float:
        """位置 (row, col) の確率"""
        return float(self.probabilities[self.geometry.site_index(row, col)])

    def distances(self) -> np.ndarray:
        """各サイトの anchor からの周期的マンハッタン距離"""
        sites = range(self.geometry.n_sites)
        return np.array([sum(self.geometry.torus_distance(self.anchor, s)) for s in sites])


def conditional_map(state: StateVector, anchor: int) -> CorrelationMap:
    """p(s) ∝ |ψ({anchor, s})|²"""
    if state.n_pairs != 2:
        raise ValueError(f"conditional maps need a two-pair state, got N={state.n_pairs}")
    geometry = state.basis.geometry
    if not 0 <= anchor < geometry.n_sites:
        raise ValueError(f"anchor {anchor} outside [0, {geometry.n_sites})")

    partners = np.array([s for s in range(geometry.n_sites) if s != anchor], dtype=np.int64)
    configs = np.sort(np.column_stack([np.full_like(partners, anchor), partners]), axis=1)
    weights = np.abs(state.amplitude_of(configs)) ** 2
    total = weights.sum()
    if total == 0.0:
        raise ValueError(f"state has no weight with a pair on site {anchor}")

    probabilities = np.zeros(geometry.n_sites)
    probabilities[partners] = weights / total
    return CorrelationMap(geometry=geometry, anchor=anchor, probabilities=probabilities)


def flatness(correlation: CorrelationMap, exclusion_radius: int = 2) -> float:
    """anchor から距離 exclusion_radius より遠いサイトでの相対分散 var(p) / mean(p)²"""
    far = correlation.probabilities[correlation.distances() > exclusion_radius]
    if far.size == 0:
        raise ValueError(f"no sites farther than {exclusion_radius} from the anchor")
    mean = far.mean()
    return float(far.var() / mean**2) if mean > 0 else 0.0
