"""모든 수용 기준 캠페인을 정해진 규모로 실행하고 요약을 출력하는 스크립트.

프로젝트 루트의 .env(또는 환경 변수)에서 다음 값을 읽어 사용한다.
- LOG_LEVEL
- PARTITIONS_SWEEP_WORKERS (선택, sweep 워커 수)
- PARTITIONS_REPORT_CACHE_DB_PATH (선택, 보고서 캐시)

사용 예:

    uv run python run_acceptance_campaigns.py

또는 결과 JSON 을 디렉터리에 남기려면:

    python run_acceptance_campaigns.py reports/
"""

from __future__ import annotations

import logging
import sys
from pathlib import Path
from time import perf_counter
from typing import Callable, List, Tuple

from dotenv import load_dotenv

from src.config import get_log_level, load_settings
from src.genfun import eq4_campaign, eq5_campaign
from src.report_format import to_json
from src.types import CampaignReport
from src.verifier import (
    classify_theorem3,
    classify_theorem6,
    claim34_check,
    corollary1_sweep,
    eq1_check,
    lemma1_check,
    oracle_check,
    progression_evidence,
)


PROJECT_ROOT = Path(__file__).resolve().parent
ENV_PATH = PROJECT_ROOT / ".env"

if ENV_PATH.exists():
    load_dotenv(dotenv_path=ENV_PATH, override=False)


def _campaigns() -> List[Tuple[str, Callable[[], CampaignReport]]]:
    return [
        ("thm3", lambda: classify_theorem3(4096)),
        ("oracle", lambda: oracle_check(18)),
        ("thm6", lambda: classify_theorem6(300)),
        ("eq1", lambda: eq1_check(10**6)),
        ("cor1", lambda: corollary1_sweep(4096)),
        ("lemma1", lambda: lemma1_check([1, 2], 32)),
        ("eq4", lambda: eq4_campaign(1000, 256)),
        ("eq5", lambda: eq5_campaign([1, 2, 3])),
        ("claims34", lambda: claim34_check(1 << 16)),
        ("progression", lambda: progression_evidence([2, 3, 4, 5], 24, 24)),
    ]


def main() -> int:
    """캠페인을 순서대로 실행하고 하나라도 실패하면 1 을 반환한다."""

    logging.basicConfig(level=get_log_level())
    logger = logging.getLogger("acceptance_campaigns")

    output_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else None
    if output_dir is not None:
        output_dir.mkdir(parents=True, exist_ok=True)

    logger.info("Running acceptance campaigns with settings: %s", load_settings())

    all_ok = True
    for name, run in _campaigns():
        started_at = perf_counter()
        report = run()
        elapsed = perf_counter() - started_at
        all_ok = all_ok and report["ok"]

        print(f"{name:12s} ok={str(report['ok']).lower():5s} failures={len(report['failures'])} elapsed={elapsed:.1f}s")
        if output_dir is not None:
            (output_dir / f"{name}.json").write_text(to_json(report) + "\n", encoding="utf-8")

    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
