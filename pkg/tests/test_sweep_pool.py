import threading

import pytest

from src.sweep_pool import run_sweep_cells


def test_run_sweep_cells_rejects_non_positive_workers() -> None:
    with pytest.raises(ValueError):
        run_sweep_cells([1, 2], lambda key: key, worker_concurrency=0)

    with pytest.raises(ValueError):
        run_sweep_cells([1, 2], lambda key: key, worker_concurrency=-1)


def test_run_sweep_cells_returns_results_in_key_order() -> None:
    results = run_sweep_cells([5, 1, 3, 1], lambda key: key * key, worker_concurrency=1)

    assert list(results.items()) == [(1, 1), (3, 9), (5, 25)]


def test_run_sweep_cells_uses_multiple_worker_threads() -> None:
    """여러 워커로 평가해도 결과는 키 정렬 순서로 같아야 한다."""

    seen_threads = set()
    lock = threading.Lock()

    def evaluate(key: tuple) -> int:
        with lock:
            seen_threads.add(threading.current_thread().name)
        return key[0] * 100 + key[1]

    cells = [(m, r) for m in range(1, 30) for r in range(1, m + 1)]
    results = run_sweep_cells(cells, evaluate, worker_concurrency=4)

    assert list(results) == sorted(cells)
    assert results[(6, 3)] == 603
    assert all(name.startswith("sweep-worker-") for name in seen_threads)


def test_run_sweep_cells_reraises_error_of_smallest_key() -> None:
    def evaluate(key: int) -> int:
        if key in (7, 3):
            raise RuntimeError(f"cell {key} failed")
        return key

    with pytest.raises(RuntimeError, match="cell 3 failed"):
        run_sweep_cells(range(10), evaluate, worker_concurrency=3)

    with pytest.raises(RuntimeError, match="cell 3 failed"):
        run_sweep_cells(range(10), evaluate, worker_concurrency=1)
