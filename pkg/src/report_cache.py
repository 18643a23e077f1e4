import hashlib
import json
import logging
import os
import sqlite3
from typing import Any, Dict, Optional

from .types import CampaignReport


logger = logging.getLogger(__name__)

DEFAULT_DB_PATH = "data/report_cache.db"


def _get_connection(path: str) -> sqlite3.Connection:
    # DB 파일이 위치할 디렉터리가 없으면 생성한다.
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)

    conn = sqlite3.connect(path)
    conn.execute(
        """
        CREATE TABLE IF NOT EXISTS report_cache (
            campaign TEXT NOT NULL,
            version TEXT NOT NULL,
            params_hash TEXT NOT NULL,
            report_json TEXT NOT NULL,
            PRIMARY KEY (campaign, version, params_hash)
        )
        """
    )
    return conn


def build_params_hash(params: Dict[str, Any]) -> str:
    """캠페인 파라미터로부터 캐시용 해시를 계산한다.

    키 순서와 무관하게 같은 파라미터는 같은 해시가 나오도록 정렬된 JSON 으로 직렬화한다.
    """

    payload = json.dumps(params, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()


def get_cached_report(
    path: str,
    campaign: str,
    version: str,
    params: Dict[str, Any],
) -> Optional[CampaignReport]:
    """(campaign, version, params) 조합의 저장된 보고서를 반환한다.

    DB 오류가 발생하면 예외를 전파하지 않고 None 을 반환해 캐시를 건너뛴다.
    """

    params_hash = build_params_hash(params)
    conn: Optional[sqlite3.Connection] = None
    try:
        conn = _get_connection(path)
        row = conn.execute(
            "SELECT report_json FROM report_cache WHERE campaign = ? AND version = ? AND params_hash = ?",
            (campaign, version, params_hash),
        ).fetchone()
        if not row:
            return None
        logger.info("Report cache hit: campaign=%s, version=%s", campaign, version)
        return json.loads(row[0])
    except Exception:
        logger.exception("Failed to read report cache; skipping cache usage.")
        return None
    finally:
        if conn is not None:
            conn.close()


def put_cached_report(path: str, params: Dict[str, Any], report: CampaignReport) -> None:
    """params 로 조회할 수 있도록 보고서를 캐시에 저장한다. 실패해도 호출자는 영향을 받지 않는다."""

    params_hash = build_params_hash(params)
    conn: Optional[sqlite3.Connection] = None
    try:
        conn = _get_connection(path)
        conn.execute(
            """
            INSERT INTO report_cache (campaign, version, params_hash, report_json)
            VALUES (?, ?, ?, ?)
            ON CONFLICT(campaign, version, params_hash) DO UPDATE SET
                report_json = excluded.report_json
            """,
            (report["campaign"], report["version"], params_hash, json.dumps(report, sort_keys=True)),
        )
        conn.commit()
    except Exception:
        logger.exception("Failed to write report cache; ignoring cache persistence error.")
    finally:
        if conn is not None:
            conn.close()
