"""実行ログ記録（JSONL形式）"""

import json
from pathlib import Path

from src.config.settings import get_settings
from src.experiments.records import ExperimentRecord


def _log_file(path: Path | None) -> Path:
    return Path(path) if path is not None else get_settings().run_log_path


def log_run(record: ExperimentRecord, path: Path | None = None) -> None:
    """実行記録を1行JSONとして追記する。"""
    log_file = _log_file(path)
    log_file.parent.mkdir(parents=True, exist_ok=True)
    with open(log_file, "a", encoding="utf-8") as f:
        f.write(record.model_dump_json() + "\n")


def read_runs(path: Path | None = None) -> list[dict]:
    """ログファイルを読み込み、エントリのリストを返す。"""
    log_file = _log_file(path)
    if not log_file.exists():
        return []
    entries = []
    with open(log_file, "r", encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if line:
                try:
                    entries.append(json.loads(line))
                except json.JSONDecodeError:
                    continue
    return entries


def get_run_stats(path: Path | None = None) -> dict:
    """ログの統計情報を返す。"""
    entries = read_runs(path)
    if not entries:
        return {"total": 0, "oldest": None, "newest": None}
    return {
        "total": len(entries),
        "oldest": entries[0].get("timestamp"),
        "newest": entries[-1].get("timestamp"),
    }
