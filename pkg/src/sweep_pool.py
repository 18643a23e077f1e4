import logging
import queue
import threading
from typing import Callable, Dict, Iterable, TypeVar


logger = logging.getLogger(__name__)

CellKey = TypeVar("CellKey")
CellResult = TypeVar("CellResult")


def run_sweep_cells(
    cells: Iterable[CellKey],
    evaluate: Callable[[CellKey], CellResult],
    worker_concurrency: int = 1,
) -> Dict[CellKey, CellResult]:
    """서로 독립인 sweep 셀들을 작업 큐와 워커 스레드로 평가한다.

    결과는 평가 순서와 무관하게 셀 키 정렬 순서의 dict 로 돌려준다.
    셀 하나라도 예외가 나면 나머지 셀을 끝까지 처리한 뒤, 키가 가장 작은 셀의 예외를 다시 던진다.
    """

    if worker_concurrency <= 0:
        raise ValueError("worker_concurrency must be positive")

    keys = sorted(set(cells))
    if worker_concurrency == 1 or len(keys) <= 1:
        return {key: evaluate(key) for key in keys}

    job_queue: "queue.Queue[CellKey]" = queue.Queue()
    for key in keys:
        job_queue.put(key)

    results: Dict[CellKey, CellResult] = {}
    errors: Dict[CellKey, BaseException] = {}
    lock = threading.Lock()

    def _worker_loop() -> None:
        while True:
            try:
                key = job_queue.get_nowait()
            except queue.Empty:
                return

            try:
                value = evaluate(key)
                with lock:
                    results[key] = value
            except Exception as exc:  # noqa: BLE001 - 워커는 큐가 빌 때까지 살아 있어야 한다.
                logger.exception("Unexpected error while evaluating sweep cell %r", key)
                with lock:
                    errors[key] = exc
            finally:
                job_queue.task_done()

    worker_count = min(worker_concurrency, len(keys))
    workers = [
        threading.Thread(
            target=_worker_loop,
            name=f"sweep-worker-{index + 1}",
            daemon=True,
        )
        for index in range(worker_count)
    ]
    for worker in workers:
        worker.start()
    for worker in workers:
        worker.join()

    logger.debug("Evaluated %s sweep cells with %s workers", len(keys), worker_count)

    if errors:
        raise errors[min(errors)]
    return {key: results[key] for key in keys}
