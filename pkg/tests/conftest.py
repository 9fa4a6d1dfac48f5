import pytest

from src.config.settings import get_settings
from src.lattice.geometry import LatticeGeometry
from src.model.params import ModelParameters


@pytest.fixture(autouse=True)
def isolated_settings(tmp_path, monkeypatch):
    """出力先を一時ディレクトリへ向け、設定キャッシュを毎回作り直す"""
    monkeypatch.setenv("COBOSON_OUTPUT_DIR", str(tmp_path / "results"))
    monkeypatch.setenv("COBOSON_RUN_LOG_PATH", str(tmp_path / "runs" / "run_log.jsonl"))
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def ring4() -> LatticeGeometry:
    return LatticeGeometry.ring(4)


@pytest.fixture
def torus3x4() -> LatticeGeometry:
    return LatticeGeometry(rows=3, cols=4)


@pytest.fixture
def params() -> ModelParameters:
    return ModelParameters(u0=1.0, j_x=0.1, n_pairs=2)
