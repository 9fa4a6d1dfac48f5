"""例外定義"""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from src.solver.eigensolver import EigenResult


class CobosonError(Exception):
    """パッケージ共通の基底例外"""


class BasisMismatchError(CobosonError, ValueError):
    """基底・格子・状態ベクトルの不整合"""


class SizeLimitError(CobosonError):
    """次元が設定上限を超えた"""


class ConvergenceError(CobosonError):
    """Lanczos法が収束しなかった"""

    def __init__(self, message: str, result: EigenResult | None = None):
        super().__init__(message)
        self.result = result
