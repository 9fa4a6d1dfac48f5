"""構成粒子の純度"""

from src.coboson.schmidt import schmidt_of_pair_state
from src.lattice.state import StateVector


def purity_of_pair_constituent(state: StateVector) -> float:
    """1 ペア状態の構成粒子の縮約密度行列の純度 Σ λ_α²"""
    return schmidt_of_pair_state(state).purity
