import logging
from dataclasses import dataclass
from typing import List, Optional

import gmpy2
import numpy as np

from .core_sets import IntSet, evil_set, odious_set, reflect
from .errors import InvalidArgumentError


logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class RepTable:
    """n = 0..N 에 대한 표현 수 R(n) (또는 교차 표현 수) 의 수열.

    범위를 벗어난 인덱스 (음수 또는 N 초과) 조회는 0 으로 정의한다.
    """

    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.int64)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def N(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        if n < 0 or n > self.N:
            return 0
        return int(self.values[n])

    def __len__(self) -> int:
        return len(self.values)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RepTable):
            return NotImplemented
        return np.array_equal(self.values, other.values)

    def to_list(self) -> List[int]:
        return self.values.tolist()

    def total(self) -> int:
        return int(self.values.sum())


def _digit_bytes(max_count: int) -> int:
    return max(1, (max_count.bit_length() + 7) // 8)


def _pack(chi: np.ndarray, width: int) -> "gmpy2.mpz":
    # 원소 하나당 width 바이트짜리 digit 을 쓰는 Kronecker 패킹
    digits = np.zeros((len(chi), width), dtype=np.uint8)
    digits[:, 0] = chi
    return gmpy2.mpz(int.from_bytes(digits.tobytes(), "little"))


def _unpack(product: "gmpy2.mpz", width: int, length: int) -> np.ndarray:
    raw = int(product).to_bytes(length * width, "little")
    digits = np.frombuffer(raw, dtype=np.uint8).reshape(length, width)
    weights = np.left_shift(np.int64(1), 8 * np.arange(width, dtype=np.int64))
    return digits.astype(np.int64) @ weights


def _packed_convolution(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    """두 0/1 수열의 정확한 정수 합성곱 (길이 len(left) + len(right) - 1).

    각 계수는 min(len(left), len(right)) 이하이므로 digit 폭을 그 값이 들어가게
    잡으면 자리 올림이 이웃 digit 으로 넘어가지 않는다.
    """

    length = len(left) + len(right) - 1
    if not left.any() or not right.any():
        return np.zeros(length, dtype=np.int64)

    width = _digit_bytes(min(len(left), len(right)))
    packed_left = _pack(left, width)
    if left is right:
        product = gmpy2.square(packed_left)
    else:
        product = packed_left * _pack(right, width)
    return _unpack(product, width, length + 1)[:length]


def _fit(values: np.ndarray, size: int) -> np.ndarray:
    out = np.zeros(size, dtype=np.int64)
    count = min(size, len(values))
    out[:count] = values[:count]
    return out


def _shifted(values: np.ndarray, offset: int, size: int) -> np.ndarray:
    out = np.zeros(size, dtype=np.int64)
    if offset < size:
        count = min(size - offset, len(values))
        out[offset : offset + count] = values[:count]
    return out


def _chi_up_to(s: IntSet, n: int) -> np.ndarray:
    # n 보다 큰 원소는 n 이하의 합에 기여하지 않는다.
    return s.restrict(min(s.bound, n)).to_array()


def repfn_point(s: IntSet, n: int) -> int:
    """직접 쌍을 훑어 R_S(n) = |{(x, y): x < y, x, y ∈ S, x + y = n}| 를 센다 (oracle)."""

    count = 0
    for x in s.members():
        y = n - x
        if y <= x:
            break
        if s.chi(y):
            count += 1
    return count


def repfn_table(s: IntSet, n_max: int) -> RepTable:
    """R_S(0..n_max) 를 (χ_S * χ_S - 대각 성분) / 2 로 계산한다."""

    if n_max < 0:
        raise InvalidArgumentError(f"N must be nonnegative, got {n_max}")

    chi = _chi_up_to(s, n_max)
    ordered = _fit(_packed_convolution(chi, chi), n_max + 1)

    # 짝수 n = 2x 에서 (x, x) 쌍을 뺀다.
    half = np.arange(0, min(len(chi), n_max // 2 + 1))
    ordered[2 * half] -= chi[half]
    return RepTable(ordered // 2)


def cross_rep_table(s: IntSet, t: IntSet, n_max: int) -> RepTable:
    """n 번째 값이 |{(x, y): x ∈ S, y ∈ T, x + y = n}| 인 표 (순서쌍)."""

    if n_max < 0:
        raise InvalidArgumentError(f"N must be nonnegative, got {n_max}")

    left = _chi_up_to(s, n_max)
    right = _chi_up_to(t, n_max)
    return RepTable(_fit(_packed_convolution(left, right), n_max + 1))


def first_mismatch(c: IntSet, d: IntSet, n_max: int) -> Optional[int]:
    """R_C(n) != R_D(n) 인 가장 작은 n <= n_max. 없으면 None."""

    table_c = repfn_table(c, n_max)
    table_d = repfn_table(d, n_max)
    diff = np.flatnonzero(table_c.values != table_d.values)
    if diff.size == 0:
        return None
    return int(diff[0])


def doubling_law_residual(l: int) -> Optional[int]:
    """A_{l+1}, B_{l+1} 의 표현 함수가 doubling 분해와 어긋나는 첫 n.

    R_{A_{l+1}}(n) = R_{A_l}(n) + cross(A_l, B_l)[n - 2^l] + R_{B_l}(n - 2^{l+1})
    와 A/B 를 바꾼 식을 n <= 2^{l+2} - 2 전체에서 비교한다.
    """

    evil, odious = evil_set(l), odious_set(l)
    next_evil, next_odious = evil_set(l + 1), odious_set(l + 1)
    n_max = (1 << (l + 2)) - 2
    size = n_max + 1

    rep_evil = repfn_table(evil, n_max).values
    rep_odious = repfn_table(odious, n_max).values
    cross = cross_rep_table(evil, odious, n_max).values

    expected_evil = rep_evil + _shifted(cross, 1 << l, size) + _shifted(
        rep_odious, 1 << (l + 1), size
    )
    expected_odious = rep_odious + _shifted(cross, 1 << l, size) + _shifted(
        rep_evil, 1 << (l + 1), size
    )

    bad = np.flatnonzero(
        (repfn_table(next_evil, n_max).values != expected_evil)
        | (repfn_table(next_odious, n_max).values != expected_odious)
    )
    return int(bad[0]) if bad.size else None


def reflection_residual(s: IntSet, m: int) -> Optional[int]:
    """R_{m-S}(k) != R_S(2m - k) 인 첫 k <= 2m. 없으면 None."""

    reflected = repfn_table(reflect(s, m), 2 * m).values
    mirrored = repfn_table(s, 2 * m).values[::-1]
    bad = np.flatnonzero(reflected != mirrored)
    return int(bad[0]) if bad.size else None
