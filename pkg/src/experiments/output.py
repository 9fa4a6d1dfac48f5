"""CSV / JSON 出力"""

import csv
import math
from collections.abc import Iterable, Mapping
from pathlib import Path

from src.experiments.records import CODE_VERSION, ExperimentRecord


def format_value(value) -> str:
    """数値は有効数字 15 桁、該当なしは空欄"""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return format(value, ".15g")
    return str(value)


def write_csv(
    path: Path,
    command: str,
    metadata: Mapping[str, object],
    header: list[str],
    rows: Iterable[Mapping[str, object]],
) -> Path:
    """'#' 始まりのメタデータ行、ヘッダ行、データ行の順に書く"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="") as f:
        f.write(f"# command: {command}\n")
        for key, value in metadata.items():
            f.write(f"# {key}: {format_value(value)}\n")
        f.write(f"# code_version: {CODE_VERSION}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format_value(row.get(column)) for column in header])
    return path


def read_csv(path: Path) -> tuple[dict[str, str], list[dict[str, str]]]:
    """メタデータと行（文字列のまま）を読む"""
    metadata: dict[str, str] = {}
    body: list[str] = []
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            if line.startswith("#"):
                key, _, value = line[1:].strip().partition(":")
                metadata[key.strip()] = value.strip()
            else:
                body.append(line)
    return metadata, list(csv.DictReader(body))


def write_json(path: Path, record: ExperimentRecord) -> Path:
    """実験記録を整形 JSON で書く"""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(record.model_dump_json(indent=2), encoding="utf-8")
    return path
