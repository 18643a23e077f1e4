import itertools
import logging
from dataclasses import dataclass
from time import perf_counter
from typing import Dict, FrozenSet, List, Literal, Optional, Sequence, Tuple

import numpy as np

from .config import load_settings
from .constructions import chen_lev_pair, lift_partition
from .core_sets import (
    IntersectionSpec,
    IntSet,
    PartitionPair,
    evil_set,
    is_evil,
    odious_set,
    reflect_pair,
    thue_morse_prefix,
)
from .errors import CampaignAssertionError, CapExceededError, InvalidArgumentError
from .repfn import first_mismatch, repfn_table
from .report_format import make_report
from .sweep_pool import run_sweep_cells
from .types import CampaignReport, ForcingOutcomeDict, ProgressionReportDict


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ForcingOutcome:
    """forced_extension 결과.

    unique 이면 pair 가 채워지고, contradiction 이면 failure_index 가
    강제 단계 (stage="forcing") 또는 최종 검사 (stage="final_check") 에서 처음 실패한 정수다.
    """

    status: Literal["unique", "contradiction"]
    stage: Literal["forcing", "final_check"]
    m: int
    horizon: int
    intersection: IntersectionSpec
    pair: Optional[PartitionPair] = None
    failure_index: Optional[int] = None

    @property
    def is_unique(self) -> bool:
        return self.status == "unique"

    def to_dict(self) -> ForcingOutcomeDict:
        payload: ForcingOutcomeDict = {
            "status": self.status,
            "stage": self.stage,
            "m": self.m,
            "horizon": self.horizon,
            "intersection": self.intersection.format(),
        }
        if self.failure_index is not None:
            payload["failure_index"] = self.failure_index
        if self.pair is not None:
            payload["pair"] = self.pair.to_dict()
        return payload


class _ForcedPrefix:
    """0 ∈ C, 0 ∉ D 에서 시작해 v = 1, 2, ... 순서로 χ_C(v) 를 강제한다.

    rep_c[n], rep_d[n] 은 지금까지 넣은 원소들로 만든 부분 표현 수이다.
    v 를 넣기 직전의 rep_d[v] 는 이미 확정된 값이고, rep_c[v] 에는 (0, v) 쌍만 빠져 있으므로
    χ_C(v) = rep_d[v] - rep_c[v] 가 강제된다. 결과는 v 이상의 m 에 의존하지 않는다.
    """

    def __init__(self, capacity: int, shared: FrozenSet[int]) -> None:
        self.capacity = capacity
        self.shared = shared
        self.chi_c = np.zeros(capacity + 1, dtype=np.int64)
        self.chi_d = np.zeros(capacity + 1, dtype=np.int64)
        self.rep_c = np.zeros(2 * capacity + 1, dtype=np.int64)
        self.rep_d = np.zeros(2 * capacity + 1, dtype=np.int64)
        self.reached = 0
        self.failure_index: Optional[int] = None
        self._insert(self.chi_c, self.rep_c, 0)

    @staticmethod
    def _insert(chi: np.ndarray, rep: np.ndarray, v: int) -> None:
        rep[v : 2 * v] += chi[:v]
        chi[v] = 1

    def extend_to(self, limit: int) -> bool:
        for v in range(self.reached + 1, min(limit, self.capacity) + 1):
            forced = int(self.rep_d[v] - self.rep_c[v])
            if v in self.shared:
                if forced != 1:
                    self.failure_index = v
                    return False
                self._insert(self.chi_c, self.rep_c, v)
                self._insert(self.chi_d, self.rep_d, v)
            elif forced == 1:
                self._insert(self.chi_c, self.rep_c, v)
            elif forced == 0:
                self._insert(self.chi_d, self.rep_d, v)
            else:
                self.failure_index = v
                return False
            self.reached = v
        return True

    def survives(self, m: int) -> bool:
        return self.failure_index is None or self.failure_index > m

    def candidate(self, m: int) -> Tuple[IntSet, IntSet]:
        return (
            IntSet.from_array(self.chi_c[: m + 1]),
            IntSet.from_array(self.chi_d[: m + 1]),
        )


def _forcing_members(m: int, spec: IntersectionSpec) -> FrozenSet[int]:
    if m < 1:
        raise InvalidArgumentError(f"m must be positive, got {m}")
    if spec.kind == "finite":
        outside = [r for r in spec.elements if r > m]
        if outside:
            raise InvalidArgumentError(
                f"intersection element {outside[0]} lies outside (0, {m}]"
            )
        return frozenset(spec.elements)
    if spec.offset == 0:
        raise InvalidArgumentError(
            "forcing needs 0 ∉ D; periodic specs with offset 0 go to progression_search"
        )
    return frozenset(spec.materialize(m).members())


def _resolve_horizon(m: int, horizon: Optional[int]) -> int:
    if horizon is None:
        return 2 * m
    if horizon < m:
        raise InvalidArgumentError(f"horizon {horizon} must be at least m={m}")
    return horizon


def _cell_outcome(
    prefix: _ForcedPrefix,
    m: int,
    spec: IntersectionSpec,
    horizon: int,
) -> ForcingOutcome:
    if not prefix.survives(m):
        return ForcingOutcome(
            status="contradiction",
            stage="forcing",
            m=m,
            horizon=horizon,
            intersection=spec,
            failure_index=prefix.failure_index,
        )

    c, d = prefix.candidate(m)
    mismatch = first_mismatch(c, d, min(horizon, 2 * m))
    if mismatch is not None:
        return ForcingOutcome(
            status="contradiction",
            stage="final_check",
            m=m,
            horizon=horizon,
            intersection=spec,
            failure_index=mismatch,
        )
    return ForcingOutcome(
        status="unique",
        stage="final_check",
        m=m,
        horizon=horizon,
        intersection=spec,
        pair=PartitionPair(C=c, D=d, m=m, intersection=spec),
    )


def forced_extension(
    m: int,
    spec: IntersectionSpec,
    horizon: Optional[int] = None,
) -> ForcingOutcome:
    """교집합 처방과 R_C = R_D 로부터 유일한 후보 쌍을 결정론적으로 복원한다.

    v = 1..m 에 대해 χ_C(v) 를 강제하고, 값이 {0, 1} 밖이거나 처방과 충돌하면 contradiction.
    끝까지 가면 n <= horizon (기본 2m) 전체에서 R_C(n) = R_D(n) 을 다시 확인한다.
    """

    shared = _forcing_members(m, spec)
    horizon = _resolve_horizon(m, horizon)

    prefix = _ForcedPrefix(m, shared)
    if not prefix.extend_to(m):
        return ForcingOutcome(
            status="contradiction",
            stage="forcing",
            m=m,
            horizon=horizon,
            intersection=spec,
            failure_index=prefix.failure_index,
        )

    # [0, m] 부분집합의 표현 수는 2m 을 넘으면 모두 0 이다.
    top = min(horizon, 2 * m)
    diff = np.flatnonzero(prefix.rep_c[: top + 1] != prefix.rep_d[: top + 1])
    if diff.size:
        return ForcingOutcome(
            status="contradiction",
            stage="final_check",
            m=m,
            horizon=horizon,
            intersection=spec,
            failure_index=int(diff[0]),
        )

    c, d = prefix.candidate(m)
    return ForcingOutcome(
        status="unique",
        stage="final_check",
        m=m,
        horizon=horizon,
        intersection=spec,
        pair=PartitionPair(C=c, D=d, m=m, intersection=spec),
    )


def _scan_rep(chi: Sequence[int], n: int) -> int:
    top = len(chi) - 1
    return sum(
        1
        for s in range(max(0, n - top), (n - 1) // 2 + 1)
        if chi[s] and chi[n - s]
    )


def _tables_agree(chi_c: Sequence[int], chi_d: Sequence[int], lo: int, hi: int) -> bool:
    return all(_scan_rep(chi_c, n) == _scan_rep(chi_d, n) for n in range(lo, hi + 1))


def _as_pair(
    chi_c: Sequence[int], chi_d: Sequence[int], m: int, spec: IntersectionSpec
) -> PartitionPair:
    return PartitionPair(
        C=IntSet.from_array(np.asarray(chi_c, dtype=np.uint8)),
        D=IntSet.from_array(np.asarray(chi_d, dtype=np.uint8)),
        m=m,
        intersection=spec,
    )


def exhaustive_search(
    m: int,
    spec: IntersectionSpec,
    horizon: Optional[int] = None,
    cap: Optional[int] = None,
    prune: bool = True,
) -> List[PartitionPair]:
    """[1, m] 의 모든 C/D/양쪽 배정을 열거해 R_C = R_D (n <= horizon) 를 만족하는 쌍을 모두 찾는다.

    forcing 논리를 쓰지 않는 독립 oracle 이다. prune=True 이면 n 이하 원소가 모두 배정되는 즉시
    R(n) 을 검사해 가지를 자르고, prune=False 이면 itertools.product 로 글자 그대로 열거한다.
    """

    if cap is None:
        cap = load_settings().brute_force_cap
    if m > cap:
        raise CapExceededError(f"m={m} exceeds brute-force cap {cap}")

    shared = _forcing_members(m, spec)
    horizon = _resolve_horizon(m, horizon)
    top = min(horizon, 2 * m)

    chi_c = [0] * (m + 1)
    chi_d = [0] * (m + 1)
    chi_c[0] = 1
    survivors: List[PartitionPair] = []

    if not prune:
        free = [v for v in range(1, m + 1) if v not in shared]
        for v in shared:
            chi_c[v] = chi_d[v] = 1
        for choice in itertools.product((1, 0), repeat=len(free)):
            for v, in_c in zip(free, choice):
                chi_c[v] = in_c
                chi_d[v] = 1 - in_c
            if _tables_agree(chi_c, chi_d, 0, top):
                survivors.append(_as_pair(chi_c, chi_d, m, spec))
        return survivors

    def _descend(v: int) -> None:
        if v > m:
            if _tables_agree(chi_c, chi_d, m + 1, top):
                survivors.append(_as_pair(chi_c, chi_d, m, spec))
            return

        options = [(1, 1)] if v in shared else [(1, 0), (0, 1)]
        for in_c, in_d in options:
            chi_c[v], chi_d[v] = in_c, in_d
            if _scan_rep(chi_c, v) == _scan_rep(chi_d, v):
                _descend(v + 1)
        chi_c[v] = chi_d[v] = 0

    _descend(1)
    return survivors


def _all_ones(value: int) -> bool:
    return value > 0 and (value & (value + 1)) == 0


def check_sweep_cap(m_max: int) -> None:
    cap = load_settings().sweep_cap
    if m_max > cap:
        raise CapExceededError(f"m_max={m_max} exceeds sweep cap {cap}")


def check_brute_force_cap(m: int, label: str = "m") -> None:
    cap = load_settings().brute_force_cap
    if m > cap:
        raise CapExceededError(f"{label}={m} exceeds brute-force cap {cap}")


def check_search_cap(n_max: int) -> None:
    cap = load_settings().search_cap
    if n_max > cap:
        raise CapExceededError(f"N={n_max} exceeds search cap {cap}")


def classify_theorem3(
    m_max: int,
    oracle_m_max: int = 0,
    workers: Optional[int] = None,
) -> CampaignReport:
    """m <= m_max 마다 forced_extension(m, ∅, 2m) 을 돌려 해가 있는 m 을 분류한다.

    빈 처방의 강제 prefix 는 m 과 무관하므로 한 번만 m_max 까지 강제하고,
    각 m 은 잘라낸 후보에 대해 최종 검사만 한다. 해는 정확히 m = 2^l - 1 에서
    (A_l, B_l) 과 같아야 한다.
    """

    if m_max < 1:
        raise InvalidArgumentError(f"m_max must be positive, got {m_max}")
    check_sweep_cap(m_max)
    check_brute_force_cap(min(oracle_m_max, m_max), "oracle_m_max")
    workers = workers or load_settings().sweep_workers
    spec = IntersectionSpec.empty()

    started_at = perf_counter()
    prefix = _ForcedPrefix(m_max, frozenset())
    prefix.extend_to(m_max)

    outcomes = run_sweep_cells(
        range(1, m_max + 1),
        lambda m: _cell_outcome(prefix, m, spec, 2 * m),
        worker_concurrency=workers,
    )

    rows: List[Dict[str, object]] = []
    failures: List[Dict[str, object]] = []
    hits = [m for m, outcome in outcomes.items() if outcome.is_unique]
    expected = [(1 << l) - 1 for l in range(1, m_max.bit_length() + 1) if (1 << l) - 1 <= m_max]

    for m in hits:
        pair = outcomes[m].pair
        assert pair is not None
        l = (m + 1).bit_length() - 1 if _all_ones(m) else None
        equals_tm = l is not None and pair.C == evil_set(l) and pair.D == odious_set(l)
        rows.append({"m": m, "l": l, "equals_tm": equals_tm, "C": pair.C.format(), "D": pair.D.format()})
        if not equals_tm:
            failures.append({"m": m, "reason": "solution is not (A_l, B_l)"})

    for m in sorted(set(hits) ^ set(expected)):
        reason = "unexpected solution" if m in hits else "missing solution"
        failures.append({"m": m, "reason": reason})

    for m in range(1, min(oracle_m_max, m_max) + 1):
        brute = exhaustive_search(m, spec, 2 * m)
        pair = outcomes[m].pair
        if brute != ([pair] if pair is not None else []):
            failures.append({"m": m, "reason": "exhaustive_search disagrees"})

    elapsed = perf_counter() - started_at
    logger.info(
        "Empty-intersection sweep finished: m_max=%s, hits=%s, elapsed=%.2fs",
        m_max,
        hits,
        elapsed,
    )
    return make_report(
        "thm3",
        {"m_max": m_max, "horizon": "2m", "oracle_m_max": oracle_m_max},
        rows,
        failures,
        {"cells": m_max, "hits": hits, "expected": expected},
    )


def _theorem6_cell(
    r: int,
    m_max: int,
    use_reflection: bool,
) -> List[PartitionPair]:
    spec = IntersectionSpec.finite([r])
    prefix = _ForcedPrefix(m_max, frozenset([r]))
    prefix.extend_to(m_max)

    found: List[PartitionPair] = []
    first_m = 2 * r if use_reflection else r
    for m in range(first_m, m_max + 1):
        if not prefix.survives(m):
            break
        outcome = _cell_outcome(prefix, m, spec, 2 * m)
        if outcome.pair is None:
            continue
        found.append(outcome.pair)
        if use_reflection and 2 * r != m:
            found.append(reflect_pair(outcome.pair))
    return found


def _diagonal_cell(m: int) -> List[PartitionPair]:
    outcome = forced_extension(m, IntersectionSpec.finite([m]))
    return [outcome.pair] if outcome.pair is not None else []


def classify_theorem6(
    m_max: int,
    oracle_m_max: int = 0,
    use_reflection: bool = True,
    workers: Optional[int] = None,
) -> CampaignReport:
    """m <= m_max, r ∈ (0, m] 전체에서 C ∩ D = {r} 인 해를 찾는다.

    반사 대칭 (m - C, m - D) 을 이용해 r <= m/2 만 탐색하고 찾은 해를 반사해 채운다.
    해는 정확히 (2^{2l+1} - 2, 2^{2l} - 1) 에서 chen_lev_pair(l) 과 같아야 한다.
    """

    if m_max < 2:
        raise InvalidArgumentError(f"m_max must be at least 2, got {m_max}")
    check_sweep_cap(m_max)
    check_brute_force_cap(min(oracle_m_max, m_max), "oracle_m_max")
    workers = workers or load_settings().sweep_workers

    started_at = perf_counter()
    r_max = m_max // 2 if use_reflection else m_max
    per_r = run_sweep_cells(
        range(1, r_max + 1),
        lambda r: _theorem6_cell(r, m_max, use_reflection),
        worker_concurrency=workers,
    )
    cells = list(per_r.values())
    if use_reflection:
        # r = m 은 반사하면 0 이 교집합에 들어가므로 따로 강제한다.
        diagonal = run_sweep_cells(range(1, m_max + 1), _diagonal_cell, worker_concurrency=workers)
        cells.extend(diagonal.values())

    hits: Dict[Tuple[int, int], PartitionPair] = {}
    for pairs in cells:
        for pair in pairs:
            hits[(pair.m, pair.intersection.elements[0])] = pair

    expected: Dict[Tuple[int, int], int] = {}
    l = 1
    while (1 << (2 * l + 1)) - 2 <= m_max:
        expected[((1 << (2 * l + 1)) - 2, (1 << (2 * l)) - 1)] = l
        l += 1

    rows: List[Dict[str, object]] = []
    failures: List[Dict[str, object]] = []
    for key in sorted(hits):
        pair = hits[key]
        level = expected.get(key)
        equals_chen_lev = level is not None and pair == chen_lev_pair(level)
        rows.append(
            {
                "m": key[0],
                "r": key[1],
                "l": level,
                "equals_chen_lev": equals_chen_lev,
                "C": pair.C.format(),
                "D": pair.D.format(),
            }
        )
        if level is None:
            failures.append({"m": key[0], "r": key[1], "reason": "unexpected solution"})
        elif not equals_chen_lev:
            failures.append({"m": key[0], "r": key[1], "reason": "solution differs from chen_lev_pair"})

    for key in sorted(set(expected) - set(hits)):
        failures.append({"m": key[0], "r": key[1], "reason": "missing solution"})

    for m in range(1, min(oracle_m_max, m_max) + 1):
        for r in range(1, m + 1):
            brute = exhaustive_search(m, IntersectionSpec.finite([r]), 2 * m)
            hit = hits.get((m, r))
            if brute != ([hit] if hit is not None else []):
                failures.append({"m": m, "r": r, "reason": "exhaustive_search disagrees"})

    elapsed = perf_counter() - started_at
    logger.info(
        "Single-element intersection sweep finished: m_max=%s, hits=%s, elapsed=%.2fs",
        m_max,
        sorted(hits),
        elapsed,
    )
    return make_report(
        "thm6",
        {
            "m_max": m_max,
            "horizon": "2m",
            "oracle_m_max": oracle_m_max,
            "use_reflection": use_reflection,
        },
        rows,
        failures,
        {"hits": [list(key) for key in sorted(hits)], "expected": [list(key) for key in sorted(expected)]},
    )


def corollary1_witness(m: int) -> int:
    """R_{A∩[0,m]}(n) != R_{B∩[0,m]}(n) 인 가장 작은 n ∈ (m, 2m).

    m = 2^l - 1 이면 그런 n 이 없으므로 (두 표가 완전히 같다) 인자 오류로 거부한다.
    """

    if m < 1:
        raise InvalidArgumentError(f"m must be positive, got {m}")
    if _all_ones(m):
        raise InvalidArgumentError(f"m={m} is of the form 2^l - 1; no witness exists")

    evil, odious = thue_morse_prefix(m)
    table_c = repfn_table(evil, 2 * m - 1).values
    table_d = repfn_table(odious, 2 * m - 1).values
    diff = np.flatnonzero(table_c[m + 1 :] != table_d[m + 1 :])
    if diff.size == 0:
        raise CampaignAssertionError(f"no witness in ({m}, {2 * m}) for m={m}")
    return m + 1 + int(diff[0])


def corollary1_sweep(m_max: int, workers: Optional[int] = None) -> CampaignReport:
    if m_max < 1:
        raise InvalidArgumentError(f"m_max must be positive, got {m_max}")
    check_sweep_cap(m_max)
    workers = workers or load_settings().sweep_workers

    cells = [m for m in range(1, m_max + 1) if not _all_ones(m)]
    witnesses = run_sweep_cells(cells, corollary1_witness, worker_concurrency=workers)

    rows: List[Dict[str, object]] = []
    failures: List[Dict[str, object]] = []
    for m, witness in witnesses.items():
        rows.append({"m": m, "witness": witness})
        if not m < witness < 2 * m:
            failures.append({"m": m, "witness": witness, "reason": "no witness in (m, 2m)"})

    logger.info("Witness sweep finished: m_max=%s, cells=%s", m_max, len(cells))
    return make_report("cor1", {"m_max": m_max}, rows, failures, {"cells": len(cells)})


def claim34_check(big_m_max: int) -> CampaignReport:
    """M <= M_max 에 대해 M - 2^i (i = 0..⌊log₂M⌋) 가 모두 A (또는 모두 B) 인지 본다.

    그런 M 은 2^k - 1 꼴이어야 한다. 가설이 성립하는 M 을 rows 로 기록한다.
    """

    if big_m_max < 1:
        raise InvalidArgumentError(f"M_max must be positive, got {big_m_max}")

    rows: List[Dict[str, object]] = []
    failures: List[Dict[str, object]] = []
    for big_m in range(1, big_m_max + 1):
        top = big_m.bit_length() - 1
        parities = {is_evil(big_m - (1 << i)) for i in range(top + 1)}
        if len(parities) != 1:
            continue

        contained_in = "A" if parities == {1} else "B"
        rows.append({"M": big_m, "contained_in": contained_in, "all_ones": _all_ones(big_m)})
        if not _all_ones(big_m):
            failures.append({"M": big_m, "reason": "hypothesis holds but M is not 2^k - 1"})

    logger.info("All-ones predecessor sweep finished: M_max=%s, hits=%s", big_m_max, len(rows))
    return make_report(
        "claims34",
        {"M_max": big_m_max, "exponents": "0..floor(log2 M)"},
        rows,
        failures,
        {"hits": [row["M"] for row in rows]},
    )


@dataclass(frozen=True)
class ProgressionResult:
    """progression_search 결과와 분기 통계."""

    intersection: IntersectionSpec
    n_max: int
    n_star: int
    exhausted: bool
    nodes: int
    pruned: int
    witness: PartitionPair

    def to_dict(self) -> ProgressionReportDict:
        return {
            "intersection": self.intersection.format(),
            "N": self.n_max,
            "n_star": self.n_star,
            "exhausted": self.exhausted,
            "degenerate": self.intersection.is_degenerate,
            "nodes": self.nodes,
            "pruned": self.pruned,
            "witness": self.witness.to_dict(),
        }


def progression_search(
    spec: IntersectionSpec,
    n_max: int,
    cap: Optional[int] = None,
) -> ProgressionResult:
    """교집합이 r + pℕ 인 [0, N] 분할 중 R_C(n) = R_D(n) 이 n <= n* 에서 유지되는 최대 n* 를 찾는다.

    0 ∈ C∩D 이면 원소별 강제가 적용되지 않으므로 C 먼저, D 나중 순서로 실제 분기하고,
    n 이하 원소가 모두 정해진 시점에 R(n) 이 어긋나는 가지를 자른다.
    """

    if spec.kind != "periodic":
        raise InvalidArgumentError("progression_search needs a periodic intersection spec")
    if n_max < 1:
        raise InvalidArgumentError(f"N must be positive, got {n_max}")
    if cap is None:
        cap = load_settings().search_cap
    if n_max > cap:
        raise CapExceededError(f"N={n_max} exceeds search cap {cap}")
    if spec.is_degenerate:
        logger.warning("Degenerate spec %s: every point lies in both sets", spec.format())

    chi_c = [0] * (n_max + 1)
    chi_d = [0] * (n_max + 1)
    rep_c = [0] * (2 * n_max + 1)
    rep_d = [0] * (2 * n_max + 1)

    def _insert(chi: List[int], rep: List[int], v: int, delta: int) -> None:
        for s in range(v):
            if chi[s]:
                rep[s + v] += delta

    def _assign(v: int, in_c: int, in_d: int) -> None:
        if in_c:
            _insert(chi_c, rep_c, v, 1)
            chi_c[v] = 1
        if in_d:
            _insert(chi_d, rep_d, v, 1)
            chi_d[v] = 1

    def _unassign(v: int) -> None:
        if chi_c[v]:
            chi_c[v] = 0
            _insert(chi_c, rep_c, v, -1)
        if chi_d[v]:
            chi_d[v] = 0
            _insert(chi_d, rep_d, v, -1)

    _assign(0, 1, 1 if spec.contains(0) else 0)
    best = {"n": 0, "chi_c": chi_c[:1], "chi_d": chi_d[:1]}
    stats = {"nodes": 0, "pruned": 0}

    def _descend(v: int) -> bool:
        stats["nodes"] += 1
        options = [(1, 1)] if spec.contains(v) else [(1, 0), (0, 1)]
        for in_c, in_d in options:
            _assign(v, in_c, in_d)
            if rep_c[v] == rep_d[v]:
                if v > best["n"]:
                    best.update(n=v, chi_c=chi_c[: v + 1], chi_d=chi_d[: v + 1])
                if v == n_max or _descend(v + 1):
                    return True
            else:
                stats["pruned"] += 1
            _unassign(v)
        return False

    completed = _descend(1)

    # 최대 prefix 뒤는 C 먼저 규칙으로 채워 [0, N] 전체의 분할로 만든다.
    witness_c = list(best["chi_c"]) + [0] * (n_max - best["n"])
    witness_d = list(best["chi_d"]) + [0] * (n_max - best["n"])
    for u in range(best["n"] + 1, n_max + 1):
        witness_c[u] = 1
        witness_d[u] = 1 if spec.contains(u) else 0

    result = ProgressionResult(
        intersection=spec,
        n_max=n_max,
        n_star=best["n"],
        exhausted=not completed,
        nodes=stats["nodes"],
        pruned=stats["pruned"],
        witness=_as_pair(witness_c, witness_d, n_max, spec),
    )
    logger.info(
        "Progression search finished: spec=%s, N=%s, n_star=%s, nodes=%s",
        spec.format(),
        n_max,
        result.n_star,
        result.nodes,
    )
    return result


def brute_force_prefix(spec: IntersectionSpec, n_max: int) -> int:
    """progression_search 와 같은 n* 를 [1, N] 의 모든 배정을 직접 열거해 계산한다."""

    free = [v for v in range(1, n_max + 1) if not spec.contains(v)]
    check_brute_force_cap(len(free), "free_points")
    chi_c = [0] * (n_max + 1)
    chi_d = [0] * (n_max + 1)
    chi_c[0] = 1
    chi_d[0] = 1 if spec.contains(0) else 0
    for v in range(1, n_max + 1):
        if spec.contains(v):
            chi_c[v] = chi_d[v] = 1

    best = 0
    for choice in itertools.product((1, 0), repeat=len(free)):
        for v, in_c in zip(free, choice):
            chi_c[v] = in_c
            chi_d[v] = 1 - in_c
        reached = 0
        for n in range(1, n_max + 1):
            if _scan_rep(chi_c, n) != _scan_rep(chi_d, n):
                break
            reached = n
        best = max(best, reached)
        if best == n_max:
            break
    return best


def oracle_check(m_max: int, spec_size: int = 1) -> CampaignReport:
    """m <= m_max 와 원소 spec_size 개 이하의 유한 처방 전체에서 forced_extension 과 exhaustive_search 를 비교한다.

    exhaustive_search 가 둘 이상의 해를 내면 (유일성 위반) 실패로 기록하고,
    유일 해마다 반사 쌍 (m - C, m - D) 이 반사된 처방의 해인지도 forced_extension 으로 다시 확인한다.
    """

    check_brute_force_cap(m_max, "m_max")
    if spec_size < 0:
        raise InvalidArgumentError(f"spec_size must be nonnegative, got {spec_size}")

    rows: List[Dict[str, object]] = []
    failures: List[Dict[str, object]] = []
    checked = 0
    for m in range(1, m_max + 1):
        for size in range(spec_size + 1):
            for elements in itertools.combinations(range(1, m + 1), size):
                spec = IntersectionSpec.finite(elements)
                forced = forced_extension(m, spec)
                brute = exhaustive_search(m, spec)
                checked += 1
                if len(brute) > 1:
                    failures.append({"m": m, "spec": spec.format(), "reason": "more than one survivor"})
                if brute != ([forced.pair] if forced.pair is not None else []):
                    failures.append({"m": m, "spec": spec.format(), "reason": "forced_extension disagrees"})

                if forced.pair is None:
                    continue
                rows.append({"m": m, "spec": spec.format(), "survivors": len(brute)})
                if m in elements:
                    continue
                mirror = reflect_pair(forced.pair)
                if forced_extension(m, mirror.intersection).pair != mirror:
                    failures.append({"m": m, "spec": spec.format(), "reason": "reflection closure fails"})

    logger.info("Oracle check finished: m_max=%s, specs=%s, solutions=%s", m_max, checked, len(rows))
    return make_report(
        "oracle",
        {"m_max": m_max, "spec_size": spec_size, "horizon": "2m"},
        rows,
        failures,
        {"specs": checked},
    )


def eq1_check(n_max: int) -> CampaignReport:
    """A ∩ [0, N'], B ∩ [0, N'] (N' = N) 의 표를 n <= N 에서 비교한다."""

    if n_max < 1:
        raise InvalidArgumentError(f"N must be positive, got {n_max}")

    started_at = perf_counter()
    evil, odious = thue_morse_prefix(n_max)
    mismatch = first_mismatch(evil, odious, n_max)
    elapsed = perf_counter() - started_at
    logger.info("Evil/odious table check finished: N=%s, mismatch=%s, elapsed=%.2fs", n_max, mismatch, elapsed)

    failures = [] if mismatch is None else [{"n": mismatch, "reason": "R_A(n) != R_B(n)"}]
    return make_report(
        "eq1",
        {"N": n_max},
        [{"N": n_max, "first_mismatch": mismatch}],
        failures,
    )


def lemma1_check(levels: Sequence[int] = (1, 2), blocks: int = 32) -> CampaignReport:
    rows: List[Dict[str, object]] = []
    failures: List[Dict[str, object]] = []
    for l in levels:
        base = chen_lev_pair(l)
        r = base.intersection.elements[0]
        lifted = lift_partition(base.C, base.D, r, base.m, blocks, verify=False)

        top = lifted.m
        covers = (lifted.C.bits | lifted.D.bits) == (1 << (top + 1)) - 1
        shared = lifted.C.intersection(lifted.D)
        expected_shared = IntersectionSpec.periodic(r, base.m + 1).materialize(top)
        mismatch = first_mismatch(lifted.C, lifted.D, top)
        row = {
            "l": l,
            "m": base.m,
            "r": r,
            "blocks": blocks,
            "universe": top,
            "covers": covers,
            "intersection_ok": shared.same_members(expected_shared),
            "first_mismatch": mismatch,
        }
        rows.append(row)
        if not (covers and row["intersection_ok"] and mismatch is None):
            failures.append({"l": l, "reason": "lifted pair fails block-lift checks"})

    return make_report("lemma1", {"levels": list(levels), "blocks": blocks}, rows, failures)


def progression_evidence(
    periods: Sequence[int] = (2, 3, 4, 5),
    n_max: int = 24,
    brute_n_max: int = 24,
) -> CampaignReport:
    """kℕ 교집합에 대한 유한 범위 증거: n* < N 과 brute force 와의 일치를 확인한다.

    k >= 2 이면 0 은 양쪽에, 1 은 한쪽에만 들어가 R_C(1) ≠ R_D(1) 이므로 n* 는 항상 0 이다.
    """

    rows: List[Dict[str, object]] = []
    failures: List[Dict[str, object]] = []
    for k in periods:
        spec = IntersectionSpec.periodic(0, k)
        result = progression_search(spec, n_max)
        expected = n_max if k == 1 else 0
        rows.append(
            {"k": k, "N": n_max, "n_star": result.n_star, "expected_n_star": expected, "nodes": result.nodes}
        )
        if k > 1 and result.n_star >= n_max:
            failures.append({"k": k, "reason": "equality persisted to N"})
        if result.n_star != expected:
            failures.append({"k": k, "reason": f"n*={result.n_star}, expected {expected}"})

        small = min(brute_n_max, n_max)
        searched = progression_search(spec, small).n_star
        brute = brute_force_prefix(spec, small)
        if searched != brute:
            failures.append({"k": k, "N": small, "reason": f"search n*={searched} vs brute n*={brute}"})

    return make_report(
        "progression",
        {"periods": list(periods), "N": n_max, "brute_N": brute_n_max},
        rows,
        failures,
    )
