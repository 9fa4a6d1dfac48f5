"""格子幾何（周期境界のリングとトーラス）"""

from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np


class Direction(Enum):
    """ボンドの方向"""

    X = "x"  # 列方向（長さ L）
    Y = "y"  # 行方向（長さ n）


@dataclass(frozen=True)
class Translation:
    """格子の並進操作"""

    shift_x: int
    shift_y: int
    permutation: tuple[int, ...]

    @property
    def shift(self) -> tuple[int, int]:
        """(t_x, t_y)"""
        return (self.shift_x, self.shift_y)

    @property
    def is_identity(self) -> bool:
        """恒等変換か"""
        return self.shift_x == 0 and self.shift_y == 0

    def apply(self, sites: np.ndarray | int) -> np.ndarray:
        """サイト（配列可）を並進先へ写す"""
        return np.asarray(self.permutation, dtype=np.int64)[sites]


@dataclass(frozen=True)
class LatticeGeometry:
    """n×L トーラス（rows = 1 なら 1 次元リング）

    サイト番号は行優先（列が速く回る）: site = row * cols + col。
    位置 (j_x, j_y) は (col, row) に対応する。
    """

    rows: int
    cols: int

    def __post_init__(self):
        for name in ("rows", "cols"):
            value = getattr(self, name)
            if not isinstance(value, (int, np.integer)) or value < 1:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")

    @classmethod
    def ring(cls, length: int) -> "LatticeGeometry":
        """1×L リング"""
        return cls(rows=1, cols=length)

    @property
    def n_sites(self) -> int:
        """サイト数 M = n L"""
        return self.rows * self.cols

    @property
    def is_ring(self) -> bool:
        """1 次元リングか"""
        return self.rows == 1

    @property
    def has_extent_two(self) -> bool:
        """いずれかの方向の長さが 2（ボンドが二重に数えられる）"""
        return self.rows == 2 or self.cols == 2

    def extent(self, direction: Direction) -> int:
        """方向ごとの長さ（X は L、Y は n）"""
        return self.cols if direction is Direction.X else self.rows

    def active_directions(self) -> list[Direction]:
        """ボンドを持つ方向（長さ 2 以上）"""
        return [d for d in Direction if self.extent(d) >= 2]

    def site_index(self, row: int, col: int) -> int:
        """(row, col) をサイト番号へ（周期的に折り返す）"""
        return (row % self.rows) * self.cols + (col % self.cols)

    def site_position(self, site: int) -> tuple[int, int]:
        """サイト番号を (row, col) へ"""
        if not 0 <= site < self.n_sites:
            raise ValueError(f"site {site} outside [0, {self.n_sites})")
        row, col = divmod(int(site), self.cols)
        return row, col

    def shift_sites(self, sites: np.ndarray | int, shift_x: int, shift_y: int) -> np.ndarray:
        """サイト配列を (shift_x, shift_y) だけ並進"""
        sites = np.asarray(sites, dtype=np.int64)
        row, col = np.divmod(sites, self.cols)
        return ((row + shift_y) % self.rows) * self.cols + (col + shift_x) % self.cols

    def bonds(self, direction: Direction) -> list[tuple[int, int]]:
        """方向ごとの有向ボンド (j, j + e_ν) をサイトごとに 1 本"""
        return [tuple(pair) for pair in self.bond_array(direction).tolist()]

    def bond_array(self, direction: Direction) -> np.ndarray:
        """ボンドの (M, 2) 配列（長さ 1 の方向は空）"""
        return self._bond_arrays[direction]

    @cached_property
    def _bond_arrays(self) -> dict[Direction, np.ndarray]:
        sites = np.arange(self.n_sites, dtype=np.int64)
        arrays = {}
        for direction in Direction:
            if self.extent(direction) < 2:
                arrays[direction] = np.empty((0, 2), dtype=np.int64)
                continue
            step = (1, 0) if direction is Direction.X else (0, 1)
            arrays[direction] = np.column_stack([sites, self.shift_sites(sites, *step)])
        return arrays

    def translations(self) -> list[Translation]:
        """並進群の全要素（恒等変換が先頭）"""
        return list(self._translations)

    @cached_property
    def _translations(self) -> tuple[Translation, ...]:
        sites = np.arange(self.n_sites, dtype=np.int64)
        return tuple(
            Translation(
                shift_x=tx,
                shift_y=ty,
                permutation=tuple(self.shift_sites(sites, tx, ty).tolist()),
            )
            for ty in range(self.rows)
            for tx in range(self.cols)
        )

    def translation_to(self, site: int) -> tuple[int, int]:
        """サイト 0 を site へ運ぶ並進量 (t_x, t_y)"""
        row, col = self.site_position(site)
        return col, row

    def torus_distance(self, a: int, b: int) -> tuple[int, int]:
        """周期境界での最短変位 (|dx|, |dy|)"""
        ra, ca = self.site_position(a)
        rb, cb = self.site_position(b)
        dx = abs(ca - cb) % self.cols
        dy = abs(ra - rb) % self.rows
        return min(dx, self.cols - dx), min(dy, self.rows - dy)

    def describe(self) -> str:
        """表示用の "nxL" 表記"""
        return f"{self.rows}x{self.cols}"
