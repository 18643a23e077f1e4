import logging
from typing import Tuple

from .core_sets import (
    IntersectionSpec,
    IntSet,
    PartitionPair,
    evil_set,
    is_evil,
    lowest_set_bit,
    odious_set,
    shift,
    thue_morse_prefix,
)
from .errors import CampaignAssertionError, InvalidArgumentError, PreconditionError
from .repfn import first_mismatch


logger = logging.getLogger(__name__)


def dombi_partition(n_max: int) -> PartitionPair:
    """(A ∩ [0, N], B ∩ [0, N]) 를 서로소 쌍으로 반환한다."""

    evil, odious = thue_morse_prefix(n_max)
    return PartitionPair(
        C=evil, D=odious, m=n_max, intersection=IntersectionSpec.empty()
    )


def finite_tm_partition(l: int) -> PartitionPair:
    """(A_l, B_l). 모든 n 에서 R_C(n) = R_D(n) 을 만족한다."""

    return PartitionPair(
        C=evil_set(l),
        D=odious_set(l),
        m=(1 << l) - 1,
        intersection=IntersectionSpec.empty(),
    )


def chen_lev_pair(l: int) -> PartitionPair:
    """C = A_{2l} ∪ (2^{2l} - 1 + B_{2l}), D = B_{2l} ∪ (2^{2l} - 1 + A_{2l}).

    m = 2^{2l+1} - 2 이고 교집합은 정확히 {2^{2l} - 1} 이다.
    """

    if l < 1:
        raise InvalidArgumentError(f"l must be positive, got {l}")

    evil, odious = evil_set(2 * l), odious_set(2 * l)
    r = (1 << (2 * l)) - 1
    m = (1 << (2 * l + 1)) - 2
    return PartitionPair(
        C=evil.union(shift(odious, r)),
        D=odious.union(shift(evil, r)),
        m=m,
        intersection=IntersectionSpec.finite([r]),
    )


def _validate_lift_base(c0: IntSet, d0: IntSet, r: int, m: int) -> None:
    if r < 1 or r > m:
        raise PreconditionError(f"r must lie in (0, {m}]", index=r)

    universe = (1 << (m + 1)) - 1
    beyond = (c0.bits | d0.bits) & ~universe
    if beyond:
        raise PreconditionError("C0 ∪ D0 exceeds [0, m]", index=lowest_set_bit(beyond))

    missing = universe & ~(c0.bits | d0.bits)
    if missing:
        raise PreconditionError("C0 ∪ D0 does not cover [0, m]", index=lowest_set_bit(missing))

    wrong = (c0.bits & d0.bits) ^ (1 << r)
    if wrong:
        raise PreconditionError("C0 ∩ D0 differs from {r}", index=lowest_set_bit(wrong))

    if not c0.chi(0):
        raise PreconditionError("0 must belong to C0", index=0)

    mismatch = first_mismatch(c0, d0, 2 * m)
    if mismatch is not None:
        raise PreconditionError("R_C0 and R_D0 differ", index=mismatch)


def lift_partition(
    c0: IntSet,
    d0: IntSet,
    r: int,
    m: int,
    blocks: int,
    verify: bool = True,
) -> PartitionPair:
    """[0, m] 위의 해 (C0, D0) 를 폭 m + 1 블록으로 이어 붙여 K 블록 prefix 를 만든다.

    블록 k 는 is_evil(k) = 1 이면 C 쪽에 k(m+1) + C0, 아니면 k(m+1) + D0 를 받고
    D 쪽은 그 반대를 받는다. 교집합은 (r + (m+1)ℕ) ∩ [0, K(m+1) - 1] 이 된다.
    verify=True 이면 prefix 전체에서 R_C = R_D 를 다시 확인하고, 깨지면 예외를 던진다.
    """

    if blocks < 1:
        raise InvalidArgumentError(f"block count must be positive, got {blocks}")
    _validate_lift_base(c0, d0, r, m)

    width = m + 1
    c_bits = 0
    d_bits = 0
    for k in range(blocks):
        first, second = (c0, d0) if is_evil(k) else (d0, c0)
        c_bits |= first.bits << (k * width)
        d_bits |= second.bits << (k * width)

    top = blocks * width - 1
    pair = PartitionPair(
        C=IntSet(top, c_bits),
        D=IntSet(top, d_bits),
        m=top,
        intersection=IntersectionSpec.periodic(r, width),
    )

    if verify:
        mismatch = first_mismatch(pair.C, pair.D, top)
        if mismatch is not None:
            raise CampaignAssertionError(
                f"lifted pair breaks R_C = R_D at n={mismatch} (blocks={blocks})"
            )
        logger.debug("Lifted pair verified: m=%s, r=%s, blocks=%s", m, r, blocks)

    return pair


def doubling_step(
    evil_part: IntSet, odious_part: IntSet, l: int
) -> Tuple[IntSet, IntSet]:
    """(A_l ∪ (2^l + B_l), B_l ∪ (2^l + A_l)). 입력은 [0, 2^l - 1] 의 분할이어야 한다."""

    if l < 1:
        raise InvalidArgumentError(f"l must be positive, got {l}")

    top = (1 << l) - 1
    universe = (1 << (top + 1)) - 1
    beyond = (evil_part.bits | odious_part.bits) & ~universe
    if beyond:
        raise PreconditionError(
            f"input exceeds [0, {top}]", index=lowest_set_bit(beyond)
        )
    overlap = evil_part.bits & odious_part.bits
    if overlap:
        raise PreconditionError("inputs are not disjoint", index=lowest_set_bit(overlap))
    missing = universe & ~(evil_part.bits | odious_part.bits)
    if missing:
        raise PreconditionError(
            f"inputs do not cover [0, {top}]", index=lowest_set_bit(missing)
        )

    next_top = (1 << (l + 1)) - 1
    width = 1 << l
    return (
        IntSet(next_top, evil_part.bits | (odious_part.bits << width)),
        IntSet(next_top, odious_part.bits | (evil_part.bits << width)),
    )
