"""アプリケーション設定管理"""

from functools import lru_cache
from pathlib import Path

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """数値計算・出力の既定値"""

    model_config = SettingsConfigDict(
        env_file=".env",
        env_file_encoding="utf-8",
        env_prefix="COBOSON_",
        extra="ignore",
    )

    # Eigensolver
    tolerance: float = 1e-12  # 相対残差
    seed: int = 1234
    lanczos_max_iterations: int = 400
    lanczos_max_restarts: int = 30
    degeneracy_tolerance: float = 1e-10

    # Size limits
    dense_dimension_limit: int = 2000
    full_model_limit: int = 1_000_000

    # Storage paths
    output_dir: Path = Path("./data/results")
    run_log_path: Path = Path("./data/runs/run_log.jsonl")

    # Runtime
    workers: int = 1
    log_level: str = "INFO"


@lru_cache
def get_settings() -> Settings:
    """設定のシングルトンインスタンスを返す"""
    return Settings()
