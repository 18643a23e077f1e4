from typing import Optional


class PartitionError(Exception):
    """이 패키지에서 발생하는 모든 예외의 최상위 타입."""


class InvalidArgumentError(PartitionError, ValueError):
    """인자 값이 허용 범위를 벗어난 경우 (오버플로, 범위 밖 원소, 잘못된 표기 등)."""


class PreconditionError(InvalidArgumentError):
    """전제 조건 위반. 처음으로 위반이 발견된 정수를 index로 함께 보고한다."""

    def __init__(self, message: str, index: Optional[int] = None) -> None:
        super().__init__(message if index is None else f"{message} (index={index})")
        self.index = index


class CapExceededError(PartitionError):
    """brute-force / DFS / sweep 상한을 초과한 요청."""


class CampaignAssertionError(PartitionError):
    """결과를 보장해야 하는 연산 내부에서 정리 수준의 검증이 실패한 경우."""
