from pathlib import Path

from src.report_cache import build_params_hash, get_cached_report, put_cached_report
from src.report_format import make_report


def test_params_hash_ignores_key_order() -> None:
    assert build_params_hash({"m_max": 64, "target": "thm3"}) == build_params_hash(
        {"target": "thm3", "m_max": 64}
    )
    assert build_params_hash({"m_max": 64}) != build_params_hash({"m_max": 65})


def test_put_then_get_round_trips_report(tmp_path: Path) -> None:
    path = str(tmp_path / "nested" / "cache.db")
    params = {"target": "claims34", "m_max": 16}
    report = make_report("claims34", {"M_max": 16}, [{"M": 1}, {"M": 3}], [])

    assert get_cached_report(path, "claims34", report["version"], params) is None

    put_cached_report(path, params, report)

    assert get_cached_report(path, "claims34", report["version"], params) == report
    assert get_cached_report(path, "claims34", "0.0.0-other", params) is None


def test_put_overwrites_existing_entry(tmp_path: Path) -> None:
    path = str(tmp_path / "cache.db")
    params = {"target": "eq1"}
    first = make_report("eq1", {"N": 10}, [], [])
    second = make_report("eq1", {"N": 10}, [{"N": 10}], [])

    put_cached_report(path, params, first)
    put_cached_report(path, params, second)

    assert get_cached_report(path, "eq1", second["version"], params) == second


def test_cache_errors_are_swallowed(tmp_path: Path) -> None:
    """DB 경로가 디렉터리여서 열 수 없어도 예외 없이 캐시를 건너뛰는지 검증한다."""

    path = str(tmp_path)
    report = make_report("eq1", {}, [], [])

    put_cached_report(path, {}, report)
    assert get_cached_report(path, "eq1", report["version"], {}) is None
