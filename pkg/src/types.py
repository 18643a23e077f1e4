import sys
from typing import Any, Dict, List, TypedDict

if sys.version_info >= (3, 11):
    from typing import NotRequired
else:
    from typing_extensions import NotRequired


class PartitionPairDict(TypedDict):
    """PartitionPair 의 JSON 직렬화 형태.

    집합은 오름차순 정수 리스트, intersection 은 `finite:...` / `periodic:r,p` 표기.
    """

    C: List[int]
    D: List[int]
    m: int
    intersection: str


class ForcingOutcomeDict(TypedDict):
    status: str
    stage: str
    m: int
    horizon: int
    intersection: str
    failure_index: NotRequired[int]
    pair: NotRequired[PartitionPairDict]


class ProgressionReportDict(TypedDict):
    """progression_search 결과. n_star 는 R_C = R_D 가 유지되는 최대 prefix."""

    intersection: str
    N: int
    n_star: int
    exhausted: bool
    degenerate: bool
    nodes: int
    pruned: int
    witness: PartitionPairDict


class CampaignReport(TypedDict):
    """검증 캠페인 보고서 공통 구조.

    rows 는 CSV/텍스트 표로 그대로 출력되는 셀 단위 결과이고,
    failures 가 비어 있고 ok 가 True 일 때만 CLI 종료 코드가 0 이 된다.
    """

    campaign: str
    version: str
    params: Dict[str, Any]
    ok: bool
    summary: Dict[str, Any]
    rows: List[Dict[str, Any]]
    failures: List[Dict[str, Any]]
