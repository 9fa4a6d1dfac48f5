"""ハードコア N ペア配置の基底と運動量セクター"""

import logging
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import chain, combinations

import numpy as np
from scipy.special import comb

from src.lattice.geometry import LatticeGeometry

logger = logging.getLogger(__name__)

# 並進位相が 1 とみなせる許容誤差
_PHASE_ATOL = 1e-12


def binomial(n: int, k: int) -> int:
    """二項係数（範囲外は 0）"""
    return int(comb(n, k, exact=True))


@lru_cache(maxsize=64)
def _binomial_table(n_max: int, k_max: int) -> np.ndarray:
    table = np.zeros((n_max + 1, k_max + 1), dtype=np.int64)
    for n in range(n_max + 1):
        for k in range(min(n, k_max) + 1):
            table[n, k] = binomial(n, k)
    table.setflags(write=False)
    return table


def combinations_array(n_sites: int, n_pairs: int, offset: int = 0) -> np.ndarray:
    """[offset, offset + n_sites) から n_pairs 個選ぶ組合せを辞書順で列挙"""
    count = binomial(n_sites, n_pairs)
    flat = np.fromiter(
        chain.from_iterable(combinations(range(offset, offset + n_sites), n_pairs)),
        dtype=np.int64,
        count=count * n_pairs,
    )
    return flat.reshape(count, n_pairs)


def rank_configurations(configs: np.ndarray, n_sites: int) -> np.ndarray:
    """配置（昇順）の辞書順ランク

    rank = C(M, N) - 1 - Σ_p C(M - 1 - c_p, N - p)
    """
    configs = np.atleast_2d(np.asarray(configs, dtype=np.int64))
    n_pairs = configs.shape[1]
    table = _binomial_table(n_sites, n_pairs)
    if n_pairs == 0:
        return np.zeros(configs.shape[0], dtype=np.int64)
    upper = n_pairs - np.arange(n_pairs)
    return binomial(n_sites, n_pairs) - 1 - table[n_sites - 1 - configs, upper].sum(axis=1)


def occupation_matrix(configs: np.ndarray, n_sites: int) -> np.ndarray:
    """配置の占有行列（bool, 行 = 配置）"""
    occ = np.zeros((configs.shape[0], n_sites), dtype=bool)
    rows = np.repeat(np.arange(configs.shape[0]), configs.shape[1])
    occ[rows, configs.ravel()] = True
    return occ


def unrank_configuration(index: int, n_sites: int, n_pairs: int) -> tuple[int, ...]:
    """辞書順ランクから配置を復元"""
    total = binomial(n_sites, n_pairs)
    if not 0 <= index < total:
        raise ValueError(f"rank {index} outside [0, {total})")
    occupied = []
    site = 0
    remaining = index
    for position in range(n_pairs):
        left = n_pairs - position
        while True:
            # site を先頭に置いた場合の残りの選び方
            block = binomial(n_sites - 1 - site, left - 1)
            if remaining < block:
                break
            remaining -= block
            site += 1
        occupied.append(site)
        site += 1
    return tuple(occupied)


@dataclass(frozen=True)
class PairConfiguration:
    """ペアの占有サイト（昇順、重複なし）"""

    occupied: tuple[int, ...]

    def __post_init__(self):
        occupied = tuple(int(s) for s in self.occupied)
        if any(s < 0 for s in occupied):
            raise ValueError(f"negative site in {occupied}")
        if any(a >= b for a, b in zip(occupied, occupied[1:])):
            raise ValueError(f"occupied sites must be strictly increasing: {occupied}")
        object.__setattr__(self, "occupied", occupied)

    @property
    def n_pairs(self) -> int:
        """ペア数"""
        return len(self.occupied)


@dataclass(frozen=True, eq=False)
class FullBasis:
    """全 C(M, N) 配置の基底（辞書順）"""

    geometry: LatticeGeometry
    n_pairs: int
    configs: np.ndarray

    @property
    def dimension(self) -> int:
        """C(M, N)"""
        return self.configs.shape[0]

    @property
    def key(self) -> tuple:
        """基底の同一性判定に使うキー"""
        return ("full", self.geometry, self.n_pairs)

    @property
    def is_real(self) -> bool:
        return True

    @property
    def dtype(self) -> type:
        """振幅の型"""
        return np.float64

    @property
    def configurations(self) -> list[PairConfiguration]:
        """全配置（辞書順）"""
        return [PairConfiguration(tuple(row)) for row in self.configs.tolist()]

    def index_of(self, configs: np.ndarray) -> np.ndarray:
        """配置の基底内インデックス（= 辞書順ランク）"""
        return rank_configurations(configs, self.geometry.n_sites)

    @cached_property
    def occupation(self) -> np.ndarray:
        """占有行列 (dimension, M)"""
        return occupation_matrix(self.configs, self.geometry.n_sites)


def enumerate_full_basis(geometry: LatticeGeometry, n_pairs: int) -> FullBasis:
    """全配置基底を作る（0 < N ≤ M）"""
    if not 0 < n_pairs <= geometry.n_sites:
        raise ValueError(f"n_pairs must be in (0, {geometry.n_sites}], got {n_pairs}")
    return FullBasis(geometry, n_pairs, combinations_array(geometry.n_sites, n_pairs))


@dataclass(frozen=True, eq=False)
class SectorBasis:
    """並進群の運動量セクター基底

    代表元 r の対称化状態は (1/√O_r) Σ_s χ(g_s) |s⟩（s = T_{g_s} r）。
    """

    geometry: LatticeGeometry
    n_pairs: int
    momentum: tuple[int, int]
    representatives: np.ndarray
    orbit_sizes: np.ndarray
    representative_ranks: np.ndarray

    @property
    def dimension(self) -> int:
        """代表元の数"""
        return self.representatives.shape[0]

    @property
    def key(self) -> tuple:
        """基底の同一性判定に使うキー"""
        return ("sector", self.geometry, self.n_pairs, self.momentum)

    @property
    def is_real(self) -> bool:
        """k = 0 なら実数で表せる"""
        return self.momentum == (0, 0)

    @property
    def dtype(self) -> type:
        """振幅の型"""
        return np.float64 if self.is_real else np.complex128

    @property
    def norms(self) -> np.ndarray:
        """√O_r"""
        return np.sqrt(self.orbit_sizes.astype(np.float64))

    @property
    def configurations(self) -> list[PairConfiguration]:
        """代表元の配置"""
        return [PairConfiguration(tuple(row)) for row in self.representatives.tolist()]

    @cached_property
    def full_basis(self) -> FullBasis:
        """展開先の全配置基底"""
        return enumerate_full_basis(self.geometry, self.n_pairs)

    def character(self, shift_x: np.ndarray | int, shift_y: np.ndarray | int) -> np.ndarray:
        """並進 (t_x, t_y) の位相 exp(-2πi(k_x t_x / L + k_y t_y / n))"""
        return momentum_character(self.geometry, self.momentum, shift_x, shift_y)

    def locate(self, configs: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """任意配置 c を (代表元インデックス, t_x, t_y) へ（c = T_t r）

        セクターに含まれない軌道は -1。
        """
        configs = np.atleast_2d(np.asarray(configs, dtype=np.int64))
        canonical, shift_x, shift_y = _canonicalize(self.geometry, configs)
        if self.dimension == 0:
            return np.full(canonical.shape, -1), shift_x, shift_y
        index = np.searchsorted(self.representative_ranks, canonical)
        index = np.minimum(index, self.dimension - 1)
        found = self.representative_ranks[index] == canonical
        return np.where(found, index, -1), shift_x, shift_y

    def amplitudes_of(self, vector: np.ndarray, configs: np.ndarray) -> np.ndarray:
        """セクターベクトルから任意配置の全基底振幅を読む"""
        index, shift_x, shift_y = self.locate(configs)
        valid = index >= 0
        safe = np.where(valid, index, 0)
        amplitude = vector[safe] * self.character(shift_x, shift_y) / self.norms[safe]
        amplitude = np.where(valid, amplitude, 0.0)
        return amplitude.real if self.is_real else amplitude

    def lift(self, vector: np.ndarray) -> np.ndarray:
        """セクターベクトルを全基底へ展開"""
        full = np.zeros(self.full_basis.dimension, dtype=self.dtype)
        weights = vector / self.norms
        n_sites = self.geometry.n_sites
        for translation in self.geometry.translations():
            shifted = np.sort(translation.apply(self.representatives), axis=1)
            ranks = rank_configurations(shifted, n_sites)
            phase = self.character(translation.shift_x, translation.shift_y)
            # 安定化群で同じ配置に戻る場合も位相は一致する
            full[ranks] = weights * phase if not self.is_real else weights
        return full


def momentum_character(
    geometry: LatticeGeometry,
    momentum: tuple[int, int],
    shift_x: np.ndarray | int,
    shift_y: np.ndarray | int,
) -> np.ndarray:
    """運動量 (k_x, k_y) の指標 χ(t)"""
    k_x, k_y = momentum
    angle = 2.0 * np.pi * (
        k_x * np.asarray(shift_x) / geometry.cols + k_y * np.asarray(shift_y) / geometry.rows
    )
    return np.exp(-1j * angle)


def _canonicalize(
    geometry: LatticeGeometry, configs: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """軌道の辞書順最小元のランクと、そこから c へ戻す並進

    最小元は必ずサイト 0 を含むので、占有サイトを 0 へ運ぶ N 通りの並進だけ調べればよい。
    """
    candidate_ranks, rows, cols = _translated_ranks(geometry, configs)
    best = np.argmin(candidate_ranks, axis=1)
    picked = np.arange(configs.shape[0])
    return candidate_ranks[picked, best], cols[picked, best], rows[picked, best]


def _translated_ranks(
    geometry: LatticeGeometry, configs: np.ndarray
) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """各占有サイトを 0 へ運んだ配置のランク (K, N) と占有サイトの行・列"""
    rows, cols = np.divmod(configs, geometry.cols)
    ranks = np.empty(configs.shape, dtype=np.int64)
    for p in range(configs.shape[1]):
        shifted = geometry.shift_sites(configs, -cols[:, p : p + 1], -rows[:, p : p + 1])
        ranks[:, p] = rank_configurations(np.sort(shifted, axis=1), geometry.n_sites)
    return ranks, rows, cols


def _orbit_candidates(n_sites: int, n_pairs: int) -> np.ndarray:
    """サイト 0 を含む配置（代表元の候補）"""
    rest = combinations_array(n_sites - 1, n_pairs - 1, offset=1)
    return np.column_stack([np.zeros(rest.shape[0], dtype=np.int64), rest])


def build_sector_basis(
    geometry: LatticeGeometry, n_pairs: int, k_x: int = 0, k_y: int = 0
) -> SectorBasis:
    """運動量 (k_x, k_y) セクターの基底を作る"""
    n_sites = geometry.n_sites
    if not 0 < n_pairs <= n_sites:
        raise ValueError(f"n_pairs must be in (0, {n_sites}], got {n_pairs}")
    if not (0 <= k_x < geometry.cols and 0 <= k_y < geometry.rows):
        raise ValueError(
            f"momentum ({k_x}, {k_y}) outside [0, {geometry.cols}) x [0, {geometry.rows})"
        )
    momentum = (k_x, k_y)

    candidates = _orbit_candidates(n_sites, n_pairs)
    own_ranks = rank_configurations(candidates, n_sites)
    candidate_ranks, rows, cols = _translated_ranks(geometry, candidates)

    is_representative = candidate_ranks.min(axis=1) == own_ranks
    # 自分自身へ戻る並進が安定化群
    stabilizing = candidate_ranks == own_ranks[:, None]
    phases = momentum_character(geometry, momentum, -cols, -rows)
    compatible = np.all(~stabilizing | (np.abs(phases - 1.0) < _PHASE_ATOL), axis=1)

    keep = is_representative & compatible
    stabilizer_sizes = stabilizing.sum(axis=1)[keep]
    basis = SectorBasis(
        geometry=geometry,
        n_pairs=n_pairs,
        momentum=momentum,
        representatives=candidates[keep],
        orbit_sizes=(n_sites // stabilizer_sizes).astype(np.int64),
        representative_ranks=own_ranks[keep],
    )
    logger.debug(
        "sector basis %s N=%d k=%s: dimension %d",
        geometry.describe(),
        n_pairs,
        momentum,
        basis.dimension,
    )
    return basis
