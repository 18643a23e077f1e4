import csv
import io
import json
from typing import Any, Dict, List, Optional, Sequence

from . import __version__
from .config import load_settings
from .repfn import RepTable
from .types import CampaignReport


def make_report(
    campaign: str,
    params: Dict[str, Any],
    rows: List[Dict[str, Any]],
    failures: List[Dict[str, Any]],
    summary: Optional[Dict[str, Any]] = None,
) -> CampaignReport:
    """캠페인 결과를 공통 보고서 구조로 감싼다. ok 는 failures 가 비었는지로 정한다.

    params 에는 호출 시점의 상한 설정이 caps 로 함께 들어간다.
    """

    return {
        "campaign": campaign,
        "version": __version__,
        "params": {**params, "caps": load_settings().caps()},
        "ok": not failures,
        "summary": summary or {},
        "rows": rows,
        "failures": failures,
    }


def to_json(payload: Any) -> str:
    # 같은 입력이면 바이트 단위로 같은 출력이 나오도록 키를 정렬한다.
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False)


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, tuple)):
        return ",".join(str(x) for x in value)
    return str(value)


def _columns(rows: Sequence[Dict[str, Any]]) -> List[str]:
    columns: List[str] = []
    for row in rows:
        for key in row:
            if key not in columns:
                columns.append(key)
    return columns


def rows_to_csv(rows: Sequence[Dict[str, Any]]) -> str:
    buffer = io.StringIO()
    columns = _columns(rows)
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(column)) for column in columns])
    return buffer.getvalue()


def rows_to_text(rows: Sequence[Dict[str, Any]]) -> str:
    """열 너비를 맞춘 사람이 읽기 위한 표."""

    columns = _columns(rows)
    if not columns:
        return "(no rows)\n"

    cells = [[_cell(row.get(column)) for column in columns] for row in rows]
    widths = [
        max([len(column)] + [len(line[index]) for line in cells])
        for index, column in enumerate(columns)
    ]
    lines = ["  ".join(column.ljust(width) for column, width in zip(columns, widths))]
    lines.append("  ".join("-" * width for width in widths))
    for line in cells:
        lines.append("  ".join(value.ljust(width) for value, width in zip(line, widths)))
    return "\n".join(line.rstrip() for line in lines) + "\n"


def report_to_text(report: CampaignReport) -> str:
    header = [
        f"campaign: {report['campaign']}",
        f"version: {report['version']}",
        "params: " + ", ".join(f"{k}={_cell(v)}" for k, v in sorted(report["params"].items())),
        f"ok: {_cell(report['ok'])}",
    ]
    for key, value in sorted(report["summary"].items()):
        header.append(f"{key}: {_cell(value)}")

    parts = ["\n".join(header), "", rows_to_text(report["rows"])]
    if report["failures"]:
        parts.extend(["failures:", rows_to_text(report["failures"])])
    return "\n".join(parts)


def render_report(report: CampaignReport, fmt: str) -> str:
    if fmt == "json":
        return to_json(report) + "\n"
    if fmt == "csv":
        return rows_to_csv(report["rows"])
    if fmt == "text":
        return report_to_text(report)
    raise ValueError(f"Unsupported report format: {fmt}")


def table_rows(table: RepTable) -> List[Dict[str, Any]]:
    return [{"n": n, "count": count} for n, count in enumerate(table.to_list())]


def render_table(table: RepTable, fmt: str) -> str:
    """RepTable 을 CSV (n,count), JSON 배열, 또는 텍스트 표로 출력한다."""

    if fmt == "json":
        return json.dumps(table.to_list()) + "\n"
    rows = table_rows(table)
    if fmt == "csv":
        return rows_to_csv(rows)
    if fmt == "text":
        return rows_to_text(rows)
    raise ValueError(f"Unsupported table format: {fmt}")
