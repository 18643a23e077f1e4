import logging
import os
from contextlib import contextmanager
from dataclasses import dataclass
from typing import Dict, Iterator, Optional


logger = logging.getLogger(__name__)

DEFAULT_BRUTE_FORCE_CAP = 22
DEFAULT_SEARCH_CAP = 64
DEFAULT_SWEEP_CAP = 8192
DEFAULT_SWEEP_WORKERS = 1

# 2^32 을 넘는 universe 는 다루지 않는다.
MAX_UNIVERSE_BITS = 32

# CLI 플래그로 받은 상한. 비어 있으면 환경 변수를 따른다.
_cap_overrides: Dict[str, int] = {}


def _get_int_env(name: str, default: int) -> int:
    value = os.environ.get(name)
    if value is None or not value.strip():
        return default

    try:
        parsed = int(value)
        if parsed <= 0:
            raise ValueError
        return parsed
    except ValueError:
        logger.warning("Invalid %s '%s', using default %s", name, value, default)
        return default


def _get_optional_path_env(name: str) -> Optional[str]:
    value = os.environ.get(name)
    if value and value.strip():
        return value.strip()
    return None


def get_log_level() -> int:
    """LOG_LEVEL 환경 변수를 logging 레벨 값으로 변환한다.

    알 수 없는 값이면 경고를 남기고 INFO로 대체한다.
    """

    log_level_name = os.environ.get("LOG_LEVEL", "INFO").strip().upper()
    log_level = getattr(logging, log_level_name, None)
    if not isinstance(log_level, int):
        logger.warning("Invalid LOG_LEVEL '%s', defaulting to INFO", log_level_name)
        return logging.INFO
    return log_level


@dataclass(frozen=True)
class Settings:
    brute_force_cap: int
    search_cap: int
    sweep_cap: int
    sweep_workers: int
    report_cache_db_path: Optional[str]

    def caps(self) -> Dict[str, int]:
        return {
            "brute_force_cap": self.brute_force_cap,
            "search_cap": self.search_cap,
            "sweep_cap": self.sweep_cap,
        }


@contextmanager
def override_caps(**caps: Optional[int]) -> Iterator[None]:
    """with 블록 동안 주어진 상한을 환경 변수보다 우선 적용한다. None 은 무시한다."""

    previous = dict(_cap_overrides)
    _cap_overrides.update({name: value for name, value in caps.items() if value is not None})
    try:
        yield
    finally:
        _cap_overrides.clear()
        _cap_overrides.update(previous)


def load_settings() -> Settings:
    """환경 변수에서 캡/워커 수/캐시 경로 설정을 읽어 온다.

    호출 시점의 환경을 그대로 반영하도록 캐싱하지 않는다.
    """

    return Settings(
        brute_force_cap=_cap_overrides.get("brute_force_cap")
        or _get_int_env("PARTITIONS_BRUTE_FORCE_CAP", DEFAULT_BRUTE_FORCE_CAP),
        search_cap=_cap_overrides.get("search_cap")
        or _get_int_env("PARTITIONS_SEARCH_CAP", DEFAULT_SEARCH_CAP),
        sweep_cap=_cap_overrides.get("sweep_cap")
        or _get_int_env("PARTITIONS_SWEEP_CAP", DEFAULT_SWEEP_CAP),
        sweep_workers=_get_int_env("PARTITIONS_SWEEP_WORKERS", DEFAULT_SWEEP_WORKERS),
        report_cache_db_path=_get_optional_path_env("PARTITIONS_REPORT_CACHE_DB_PATH"),
    )
