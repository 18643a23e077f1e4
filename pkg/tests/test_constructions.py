import pytest

from src.constructions import (
    chen_lev_pair,
    dombi_partition,
    doubling_step,
    finite_tm_partition,
    lift_partition,
)
from src.core_sets import IntersectionSpec, IntSet, evil_set, odious_set
from src.errors import InvalidArgumentError, PreconditionError
from src.repfn import first_mismatch


def test_chen_lev_pair_level_one() -> None:
    assert chen_lev_pair(1).format() == "C=0,3,4,5 D=1,2,3,6 r=3 m=6"


@pytest.mark.parametrize("l", [1, 2, 3])
def test_chen_lev_pair_has_equal_tables(l: int) -> None:
    pair = chen_lev_pair(l)

    assert pair.m == (1 << (2 * l + 1)) - 2
    assert pair.intersection.elements == ((1 << (2 * l)) - 1,)
    assert first_mismatch(pair.C, pair.D, 2 * pair.m) is None


def test_chen_lev_pair_rejects_non_positive_level() -> None:
    with pytest.raises(InvalidArgumentError):
        chen_lev_pair(0)


def test_finite_tm_partition_and_dombi_partition() -> None:
    pair = finite_tm_partition(3)
    assert pair.format() == "C=0,3,5,6 D=1,2,4,7 r= m=7"

    dombi = dombi_partition(10)
    assert dombi.C.format() == "0,3,5,6,9,10"
    assert dombi.D.format() == "1,2,4,7,8"
    assert first_mismatch(dombi.C, dombi.D, 10) is None


def test_lift_partition_four_blocks() -> None:
    base = chen_lev_pair(1)
    lifted = lift_partition(base.C, base.D, 3, 6, 4)

    assert lifted.m == 27
    assert lifted.intersection == IntersectionSpec.periodic(3, 7)
    assert lifted.C.intersection(lifted.D).members() == [3, 10, 17, 24]
    assert lifted.format().endswith("r=3,10,17,24 m=27")
    assert first_mismatch(lifted.C, lifted.D, 27) is None


def test_lift_partition_blocks_follow_thue_morse_order() -> None:
    """블록 k 는 k 가 evil 이면 C 쪽에 C0, odious 이면 D0 를 받는다."""

    base = chen_lev_pair(1)
    lifted = lift_partition(base.C, base.D, 3, 6, 2)

    # 블록 0 (evil) 은 C0, 블록 1 (odious) 은 7 + D0
    assert lifted.C.members() == [0, 3, 4, 5, 8, 9, 10, 13]


@pytest.mark.parametrize(
    ("c0", "d0", "r", "m", "index"),
    [
        ([0, 3], [1, 2, 3], 0, 3, 0),
        ([0, 3], [1, 3], 3, 3, 2),
        ([0, 3, 5], [1, 2, 3], 3, 3, 5),
        ([0, 2, 3], [1, 3], 3, 3, 2),
        ([0, 1, 3], [1, 2, 3], 3, 3, 1),
    ],
)
def test_lift_partition_precondition_reports_index(
    c0: list, d0: list, r: int, m: int, index: int
) -> None:
    with pytest.raises(PreconditionError) as exc_info:
        lift_partition(IntSet.from_members(c0), IntSet.from_members(d0), r, m, 4)

    assert exc_info.value.index == index


def test_lift_partition_requires_zero_in_c0() -> None:
    with pytest.raises(PreconditionError) as exc_info:
        lift_partition(IntSet.from_members([1, 2, 3]), IntSet.from_members([0, 3]), 3, 3, 2)

    assert exc_info.value.index == 0


def test_lift_partition_rejects_non_positive_blocks() -> None:
    base = chen_lev_pair(1)
    with pytest.raises(InvalidArgumentError):
        lift_partition(base.C, base.D, 3, 6, 0)


def test_doubling_step_builds_next_level() -> None:
    assert doubling_step(evil_set(3), odious_set(3), 3) == (evil_set(4), odious_set(4))


def test_doubling_step_rejects_overlap() -> None:
    with pytest.raises(PreconditionError) as exc_info:
        doubling_step(evil_set(2), evil_set(2), 2)

    assert exc_info.value.index == 0


def test_iterated_doubling_reproduces_thue_morse_halves() -> None:
    evil, odious = evil_set(1), odious_set(1)

    for l in range(1, 16):
        evil, odious = doubling_step(evil, odious, l)
        assert evil == evil_set(l + 1)
        assert odious == odious_set(l + 1)


@pytest.mark.parametrize("l", [1, 2])
@pytest.mark.parametrize("blocks", [1, 2, 3, 5, 17, 32, 64])
def test_lift_partition_cover_intersection_and_equal_tables(l: int, blocks: int) -> None:
    base = chen_lev_pair(l)
    r = base.intersection.elements[0]
    lifted = lift_partition(base.C, base.D, r, base.m, blocks, verify=False)
    top = blocks * (base.m + 1) - 1

    assert lifted.m == top
    assert lifted.C.union(lifted.D) == IntSet.full(top)
    assert lifted.C.intersection(lifted.D) == IntersectionSpec.periodic(r, base.m + 1).materialize(top)
    assert first_mismatch(lifted.C, lifted.D, top) is None


def test_finite_tm_partition_tables_agree_through_level_ten() -> None:
    for l in range(1, 11):
        pair = finite_tm_partition(l)
        assert first_mismatch(pair.C, pair.D, 2 * pair.m) is None
