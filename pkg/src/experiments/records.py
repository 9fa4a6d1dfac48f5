"""実験記録のスキーマ"""

from datetime import datetime, timezone
from importlib.metadata import PackageNotFoundError, version
from typing import Any
from uuid import uuid4

from pydantic import BaseModel, Field

try:
    CODE_VERSION = version("coboson-lattice")
except PackageNotFoundError:
    CODE_VERSION = "0.1.0"


class GeometryEntry(BaseModel):
    """格子サイズ"""

    rows: int
    cols: int


class ExperimentRecord(BaseModel):
    """1 回の CLI 実行の記録（入力と導出量）"""

    experiment_id: str = Field(default_factory=lambda: uuid4().hex)
    command: str
    geometry: list[GeometryEntry] = []
    parameters: dict[str, Any] = {}
    results: list[dict[str, Any]] = []
    timestamp: str = Field(default_factory=lambda: datetime.now(timezone.utc).isoformat())
    code_version: str = CODE_VERSION
