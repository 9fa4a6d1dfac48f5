"""モデルパラメータ"""

import math
from dataclasses import dataclass, replace

from src.lattice.geometry import Direction, LatticeGeometry


@dataclass(frozen=True)
class ModelParameters:
    """強結合ペア模型のパラメータ

    U0 は結合エネルギー、J_x / J_y は構成フェルミオンのトンネル振幅。
    実効トンネル V_ν = J_ν² / U0。
    """

    u0: float
    j_x: float
    j_y: float | None = None
    n_pairs: int = 2

    def __post_init__(self):
        if not self.u0 > 0:
            raise ValueError(f"u0 must be positive, got {self.u0}")
        if self.n_pairs < 0:
            raise ValueError(f"n_pairs must be non-negative, got {self.n_pairs}")
        if self.j_y is None:
            object.__setattr__(self, "j_y", self.j_x)

    @classmethod
    def from_anisotropy(
        cls, u0: float, j_x: float, xi: float, n_pairs: int = 2
    ) -> "ModelParameters":
        """V_x / V_y = xi となるように J_y を決める"""
        if not xi > 0:
            raise ValueError(f"anisotropy must be positive, got {xi}")
        return cls(u0=u0, j_x=j_x, j_y=j_x / math.sqrt(xi), n_pairs=n_pairs)

    @property
    def v_x(self) -> float:
        """V_x = J_x² / U0"""
        return self.j_x**2 / self.u0

    @property
    def v_y(self) -> float:
        """V_y = J_y² / U0"""
        return self.j_y**2 / self.u0

    @property
    def anisotropy(self) -> float:
        """ξ = V_x / V_y"""
        return self.v_x / self.v_y if self.v_y else math.inf

    @property
    def perturbative_ratio(self) -> float:
        """max(|J_x|, |J_y|) / U0（報告用、強制はしない）"""
        return max(abs(self.j_x), abs(self.j_y)) / self.u0

    def tunneling(self, direction: Direction) -> float:
        """構成フェルミオンのトンネル振幅 J_ν"""
        return self.j_x if direction is Direction.X else self.j_y

    def effective_tunneling(self, direction: Direction) -> float:
        """実効トンネル V_ν"""
        return self.v_x if direction is Direction.X else self.v_y

    def with_pairs(self, n_pairs: int) -> "ModelParameters":
        """ペア数だけ変えたコピー"""
        return replace(self, n_pairs=n_pairs)

    def flipped(self) -> "ModelParameters":
        """J → -J"""
        return replace(self, j_x=-self.j_x, j_y=-self.j_y)

    def pair_constant(self, geometry: LatticeGeometry, n_pairs: int | None = None) -> float:
        """-N(U0 + Σ V_ν)（長さ 2 以上の方向のみ）"""
        n = self.n_pairs if n_pairs is None else n_pairs
        shift = sum(self.effective_tunneling(d) for d in geometry.active_directions())
        return -n * (self.u0 + shift)

    def relative_energy(self, energy: float, geometry: LatticeGeometry) -> float:
        """(E + N(U0 + Σ V_ν)) / V_x"""
        return (energy - self.pair_constant(geometry)) / self.v_x
