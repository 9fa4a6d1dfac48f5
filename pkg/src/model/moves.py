"""ボンドに沿った 1 粒子移動の列挙"""

from dataclasses import dataclass

import numpy as np

from src.lattice.geometry import Direction, LatticeGeometry


@dataclass
class BondMoves:
    """許される移動の一覧（sources 行の配置から moved 配置へ）"""

    sources: np.ndarray
    moved: np.ndarray
    start_sites: np.ndarray
    end_sites: np.ndarray


def bond_moves(
    geometry: LatticeGeometry,
    configs: np.ndarray,
    occupation: np.ndarray,
    direction: Direction,
) -> BondMoves:
    """ν 方向の各ボンドで、空きサイトへの移動を両向きとも列挙（移動先が埋まっていれば禁止）"""
    bonds = geometry.bond_array(direction)
    sources, moved, starts, ends = [], [], [], []
    for start, end in ((bonds[:, 0], bonds[:, 1]), (bonds[:, 1], bonds[:, 0])):
        rows, bond_index = np.nonzero(occupation[:, start] & ~occupation[:, end])
        from_site = start[bond_index]
        to_site = end[bond_index]
        shifted = np.where(configs[rows] == from_site[:, None], to_site[:, None], configs[rows])
        sources.append(rows)
        moved.append(np.sort(shifted, axis=1))
        starts.append(from_site)
        ends.append(to_site)
    return BondMoves(
        sources=np.concatenate(sources),
        moved=np.concatenate(moved),
        start_sites=np.concatenate(starts),
        end_sites=np.concatenate(ends),
    )


def bond_pair_counts(occupation: np.ndarray, geometry: LatticeGeometry, direction: Direction):
    """Σ_bonds N_j N_j' を配置ごとに数える"""
    bonds = geometry.bond_array(direction)
    return (occupation[:, bonds[:, 0]] & occupation[:, bonds[:, 1]]).sum(axis=1)
