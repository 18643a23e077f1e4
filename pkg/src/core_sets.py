import logging
from dataclasses import dataclass
from typing import Iterable, Iterator, List, Literal, Optional, Tuple

import numpy as np

from .config import MAX_UNIVERSE_BITS
from .errors import InvalidArgumentError
from .types import PartitionPairDict


logger = logging.getLogger(__name__)


def _mask(bound: int) -> int:
    return (1 << (bound + 1)) - 1


def lowest_set_bit(value: int) -> int:
    return (value & -value).bit_length() - 1


def _check_universe(bound: int) -> None:
    if bound < 0:
        raise InvalidArgumentError(f"bound must be nonnegative, got {bound}")
    if bound.bit_length() > MAX_UNIVERSE_BITS:
        raise InvalidArgumentError(
            f"bound {bound} exceeds the 2^{MAX_UNIVERSE_BITS} universe limit"
        )


@dataclass(frozen=True)
class IntSet:
    """[0, bound] 위의 유한 정수 집합.

    bits 는 특성 수열을 비트 단위로 패킹한 정수이다 (bit n == chi(S, n)).
    shift 와 union 은 큰 정수의 시프트/OR 로 워드 단위 병렬 처리된다.
    """

    bound: int
    bits: int = 0

    def __post_init__(self) -> None:
        _check_universe(self.bound)
        if self.bits < 0:
            raise InvalidArgumentError("bits must be nonnegative")
        overflow = self.bits >> (self.bound + 1)
        if overflow:
            first = self.bound + 1 + lowest_set_bit(overflow)
            raise InvalidArgumentError(
                f"member {first} exceeds bound {self.bound}"
            )

    @classmethod
    def empty(cls, bound: int = 0) -> "IntSet":
        return cls(bound=bound, bits=0)

    @classmethod
    def full(cls, bound: int) -> "IntSet":
        """[0, bound] 전체."""

        return cls(bound=bound, bits=_mask(bound))

    @classmethod
    def from_members(
        cls,
        members: Iterable[int],
        bound: Optional[int] = None,
    ) -> "IntSet":
        values = sorted(set(int(x) for x in members))
        if values and values[0] < 0:
            raise InvalidArgumentError(f"negative member {values[0]}")
        if bound is None:
            bound = values[-1] if values else 0
        _check_universe(bound)
        if values and values[-1] > bound:
            raise InvalidArgumentError(f"member {values[-1]} exceeds bound {bound}")

        chi = np.zeros(bound + 1, dtype=np.uint8)
        if values:
            chi[np.asarray(values, dtype=np.int64)] = 1
        return cls.from_array(chi)

    @classmethod
    def from_array(cls, chi: np.ndarray) -> "IntSet":
        """0/1 특성 배열로부터 집합을 만든다. bound 는 len(chi) - 1."""

        if len(chi) == 0:
            raise InvalidArgumentError("characteristic array must be non-empty")
        packed = np.packbits(np.asarray(chi, dtype=bool), bitorder="little")
        return cls(bound=len(chi) - 1, bits=int.from_bytes(packed.tobytes(), "little"))

    @classmethod
    def parse(cls, text: str, bound: Optional[int] = None) -> "IntSet":
        """정규 텍스트 표기(오름차순, 콤마 구분 십진수)를 파싱한다."""

        stripped = text.strip()
        if not stripped:
            return cls.empty(bound or 0)

        try:
            values = [int(token) for token in stripped.split(",")]
        except ValueError as exc:
            raise InvalidArgumentError(f"Malformed set text: {text!r}") from exc

        for left, right in zip(values, values[1:]):
            if right <= left:
                raise InvalidArgumentError(
                    f"Set text must be strictly increasing: {text!r}"
                )
        return cls.from_members(values, bound=bound)

    def format(self) -> str:
        return ",".join(str(x) for x in self.members())

    def to_array(self) -> np.ndarray:
        """길이 bound + 1 의 uint8 특성 배열."""

        nbytes = (self.bound + 8) // 8
        raw = np.frombuffer(self.bits.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little", count=self.bound + 1)

    def members(self) -> List[int]:
        if not self.bits:
            return []
        return np.flatnonzero(self.to_array()).tolist()

    def chi(self, n: int) -> int:
        if n < 0 or n > self.bound:
            return 0
        return (self.bits >> n) & 1

    def __contains__(self, n: object) -> bool:
        return isinstance(n, int) and self.chi(n) == 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.members())

    def __len__(self) -> int:
        return self.bits.bit_count()

    def max_member(self) -> Optional[int]:
        return self.bits.bit_length() - 1 if self.bits else None

    def union(self, other: "IntSet") -> "IntSet":
        return IntSet(max(self.bound, other.bound), self.bits | other.bits)

    def intersection(self, other: "IntSet") -> "IntSet":
        return IntSet(max(self.bound, other.bound), self.bits & other.bits)

    def difference(self, other: "IntSet") -> "IntSet":
        return IntSet(self.bound, self.bits & ~other.bits)

    def complement(self) -> "IntSet":
        """[0, bound] 안에서의 여집합."""

        return IntSet(self.bound, _mask(self.bound) & ~self.bits)

    def restrict(self, bound: int) -> "IntSet":
        """S ∩ [0, bound]. bound 가 줄어들면 그 밖의 원소는 의도적으로 잘라낸다."""

        _check_universe(bound)
        return IntSet(bound, self.bits & _mask(bound))

    def widen(self, bound: int) -> "IntSet":
        """원소는 그대로 두고 universe 만 [0, bound] 로 바꾼다."""

        return IntSet(bound, self.bits)

    def same_members(self, other: "IntSet") -> bool:
        return self.bits == other.bits


def is_evil(n: int) -> int:
    """n 의 이진 표기에서 1 의 개수가 짝수면 1 (n ∈ A), 홀수면 0 (n ∈ B)."""

    if n < 0:
        raise InvalidArgumentError(f"n must be nonnegative, got {n}")
    return 1 if n.bit_count() % 2 == 0 else 0


def _thue_morse_bits(l: int) -> Tuple[int, int]:
    # A_0 = {0}, B_0 = {} 에서 시작해 A_{j+1} = A_j ∪ (2^j + B_j) 를 반복한다.
    evil, odious = 1, 0
    for j in range(l):
        width = 1 << j
        evil, odious = evil | (odious << width), odious | (evil << width)
    return evil, odious


def _check_level(l: int) -> None:
    if l < 1:
        raise InvalidArgumentError(f"l must be positive, got {l}")
    if l > MAX_UNIVERSE_BITS:
        raise InvalidArgumentError(
            f"2^{l} - 1 exceeds the 2^{MAX_UNIVERSE_BITS} universe limit"
        )


def evil_set(l: int) -> IntSet:
    """A_l = A ∩ [0, 2^l - 1]."""

    _check_level(l)
    evil, _ = _thue_morse_bits(l)
    return IntSet((1 << l) - 1, evil)


def odious_set(l: int) -> IntSet:
    """B_l = B ∩ [0, 2^l - 1]."""

    _check_level(l)
    _, odious = _thue_morse_bits(l)
    return IntSet((1 << l) - 1, odious)


def thue_morse_prefix(bound: int) -> Tuple[IntSet, IntSet]:
    """(A ∩ [0, bound], B ∩ [0, bound]) 를 반환한다.

    2^l - 1 >= bound 인 가장 작은 l 까지 doubling 으로 만든 뒤 잘라낸다.
    """

    _check_universe(bound)
    l = max(1, bound.bit_length())
    evil, odious = _thue_morse_bits(l)
    mask = _mask(bound)
    return IntSet(bound, evil & mask), IntSet(bound, odious & mask)


def shift(s: IntSet, a: int) -> IntSet:
    """a + S. universe 도 a 만큼 늘린다."""

    if a < 0:
        raise InvalidArgumentError(f"shift amount must be nonnegative, got {a}")
    return IntSet(s.bound + a, s.bits << a)


def reflect(s: IntSet, m: int) -> IntSet:
    """m - S = {m - x : x ∈ S}, universe [0, m]."""

    if m < 0:
        raise InvalidArgumentError(f"m must be nonnegative, got {m}")
    overflow = s.bits >> (m + 1)
    if overflow:
        first = m + 1 + lowest_set_bit(overflow)
        raise InvalidArgumentError(f"member {first} exceeds reflection point {m}")

    chi = IntSet(m, s.bits).to_array()
    return IntSet.from_array(chi[::-1])


@dataclass(frozen=True)
class IntersectionSpec:
    """C ∩ D 의 처방. 유한 리스트 {r_1 < ... < r_s} 또는 등차수열 r + pℕ."""

    kind: Literal["finite", "periodic"]
    elements: Tuple[int, ...] = ()
    offset: int = 0
    period: int = 0

    def __post_init__(self) -> None:
        if self.kind == "finite":
            for left, right in zip(self.elements, self.elements[1:]):
                if right <= left:
                    raise InvalidArgumentError(
                        f"finite intersection must be strictly increasing: {self.elements}"
                    )
            if self.elements and self.elements[0] <= 0:
                raise InvalidArgumentError(
                    "finite intersection elements must be positive"
                )
        elif self.kind == "periodic":
            if self.offset < 0:
                raise InvalidArgumentError(
                    f"periodic offset must be nonnegative, got {self.offset}"
                )
            # period 1 은 퇴화된 경우로 허용한다 (모든 점이 양쪽에 속함).
            if self.period < 1:
                raise InvalidArgumentError(
                    f"periodic period must be positive, got {self.period}"
                )
        else:
            raise InvalidArgumentError(f"Unknown intersection kind: {self.kind}")

    @classmethod
    def empty(cls) -> "IntersectionSpec":
        return cls(kind="finite")

    @classmethod
    def finite(cls, elements: Iterable[int]) -> "IntersectionSpec":
        return cls(kind="finite", elements=tuple(int(x) for x in elements))

    @classmethod
    def periodic(cls, offset: int, period: int) -> "IntersectionSpec":
        return cls(kind="periodic", offset=offset, period=period)

    @classmethod
    def parse(cls, text: str) -> "IntersectionSpec":
        """`finite:r1,r2,...` 또는 `periodic:r,p` 표기를 파싱한다."""

        kind, sep, body = text.strip().partition(":")
        if not sep:
            raise InvalidArgumentError(f"Malformed intersection spec: {text!r}")

        try:
            values = [int(token) for token in body.split(",") if token.strip()]
        except ValueError as exc:
            raise InvalidArgumentError(f"Malformed intersection spec: {text!r}") from exc

        if kind == "finite":
            return cls.finite(values)
        if kind == "periodic":
            if len(values) != 2:
                raise InvalidArgumentError(
                    f"periodic spec needs exactly 'r,p': {text!r}"
                )
            return cls.periodic(values[0], values[1])
        raise InvalidArgumentError(f"Unknown intersection kind in {text!r}")

    def format(self) -> str:
        if self.kind == "finite":
            return "finite:" + ",".join(str(x) for x in self.elements)
        return f"periodic:{self.offset},{self.period}"

    @property
    def is_degenerate(self) -> bool:
        return self.kind == "periodic" and self.period == 1

    def contains(self, n: int) -> bool:
        if n < 0:
            return False
        if self.kind == "finite":
            return n in self.elements
        return n >= self.offset and (n - self.offset) % self.period == 0

    def materialize(self, bound: int) -> IntSet:
        """[0, bound] 안에서 처방을 실제 집합으로 만든다."""

        if self.kind == "finite":
            return IntSet.from_members(
                [x for x in self.elements if x <= bound], bound=bound
            )

        chi = np.zeros(bound + 1, dtype=np.uint8)
        chi[self.offset :: self.period] = 1
        return IntSet.from_array(chi)


@dataclass(frozen=True)
class PartitionPair:
    """[0, m] 을 덮는 (C, D) 쌍. 교집합은 intersection 처방과 일치하고 0 ∈ C 이다.

    위반하는 쌍은 자동으로 뒤바꾸지 않고 거부한다.
    """

    C: IntSet
    D: IntSet
    m: int
    intersection: IntersectionSpec

    def __post_init__(self) -> None:
        _check_universe(self.m)
        universe = _mask(self.m)
        for label, part in (("C", self.C), ("D", self.D)):
            overflow = part.bits >> (self.m + 1)
            if overflow:
                first = self.m + 1 + lowest_set_bit(overflow)
                raise InvalidArgumentError(f"{label} member {first} exceeds m={self.m}")

        missing = universe & ~(self.C.bits | self.D.bits)
        if missing:
            raise InvalidArgumentError(
                f"C ∪ D does not cover [0, {self.m}]: {lowest_set_bit(missing)} missing"
            )

        expected = self.intersection.materialize(self.m).bits
        actual = self.C.bits & self.D.bits
        if actual != expected:
            raise InvalidArgumentError(
                "C ∩ D differs from the prescribed intersection at "
                f"{lowest_set_bit(actual ^ expected)}"
            )

        if not self.C.chi(0):
            raise InvalidArgumentError("0 must belong to C")

        # 비교가 일관되도록 두 집합의 universe 를 [0, m] 으로 맞춘다.
        object.__setattr__(self, "C", self.C.widen(self.m))
        object.__setattr__(self, "D", self.D.widen(self.m))

    def format(self) -> str:
        shared = self.intersection.materialize(self.m).format()
        return f"C={self.C.format()} D={self.D.format()} r={shared} m={self.m}"

    def to_dict(self) -> PartitionPairDict:
        return {
            "C": self.C.members(),
            "D": self.D.members(),
            "m": self.m,
            "intersection": self.intersection.format(),
        }


def reflect_pair(pair: PartitionPair) -> PartitionPair:
    """(m - C, m - D) 로 반사한 쌍을 만들고, 0 을 포함하는 쪽을 C 로 둔다."""

    if pair.intersection.kind != "finite":
        raise InvalidArgumentError("only finite intersections can be reflected")

    reflected = tuple(sorted(pair.m - r for r in pair.intersection.elements))
    if reflected and reflected[0] == 0:
        raise InvalidArgumentError(
            f"reflection puts 0 into the intersection (r={pair.m} == m)"
        )

    first = reflect(pair.C, pair.m)
    second = reflect(pair.D, pair.m)
    if not first.chi(0):
        first, second = second, first
    return PartitionPair(
        C=first,
        D=second,
        m=pair.m,
        intersection=IntersectionSpec.finite(reflected),
    )
