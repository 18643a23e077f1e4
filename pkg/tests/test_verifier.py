import pytest

from src.constructions import chen_lev_pair, finite_tm_partition, lift_partition
from src.core_sets import IntersectionSpec, evil_set, odious_set
from src.errors import CapExceededError, InvalidArgumentError
from src.verifier import (
    brute_force_prefix,
    classify_theorem3,
    classify_theorem6,
    claim34_check,
    corollary1_sweep,
    corollary1_witness,
    eq1_check,
    exhaustive_search,
    forced_extension,
    lemma1_check,
    oracle_check,
    progression_evidence,
    progression_search,
)


EMPTY = IntersectionSpec.empty()


def test_forced_extension_recovers_thue_morse_pair() -> None:
    outcome = forced_extension(3, EMPTY, 6)

    assert outcome.status == "unique"
    assert outcome.pair is not None
    assert outcome.pair.C.members() == [0, 3]
    assert outcome.pair.D.members() == [1, 2]


def test_forced_extension_recovers_chen_lev_pair() -> None:
    outcome = forced_extension(6, IntersectionSpec.finite([3]), 12)

    assert outcome.is_unique
    assert outcome.pair == chen_lev_pair(1)


def test_forced_extension_reports_contradiction_index() -> None:
    """m = 4 에서는 강제된 D = {1, 2, 4} 가 R(5) 에서 어긋난다."""

    outcome = forced_extension(4, EMPTY)

    assert outcome.status == "contradiction"
    assert outcome.stage == "final_check"
    assert outcome.failure_index == 5
    assert outcome.pair is None
    assert outcome.to_dict()["failure_index"] == 5


def test_forced_extension_validates_arguments() -> None:
    with pytest.raises(InvalidArgumentError):
        forced_extension(3, IntersectionSpec.finite([4]))
    with pytest.raises(InvalidArgumentError):
        forced_extension(3, EMPTY, horizon=2)
    with pytest.raises(InvalidArgumentError):
        forced_extension(6, IntersectionSpec.periodic(0, 2))
    with pytest.raises(InvalidArgumentError):
        forced_extension(0, EMPTY)


def test_forced_extension_horizon_beyond_2m_changes_nothing() -> None:
    for m in range(1, 20):
        for r in range(1, m + 1):
            spec = IntersectionSpec.finite([r])
            assert forced_extension(m, spec).pair == forced_extension(m, spec, 5 * m).pair


def test_exhaustive_search_examples() -> None:
    assert exhaustive_search(7, EMPTY, 14) == [finite_tm_partition(3)]
    assert exhaustive_search(5, EMPTY, 10) == []
    assert exhaustive_search(6, IntersectionSpec.finite([3]), 12) == [chen_lev_pair(1)]


def test_exhaustive_search_pruned_and_literal_enumeration_agree() -> None:
    for m in range(1, 9):
        specs = [EMPTY] + [IntersectionSpec.finite([r]) for r in range(1, m + 1)]
        for spec in specs:
            assert exhaustive_search(m, spec, prune=True) == exhaustive_search(m, spec, prune=False)


def test_exhaustive_search_respects_cap(monkeypatch: pytest.MonkeyPatch) -> None:
    with pytest.raises(CapExceededError):
        exhaustive_search(23, EMPTY)

    monkeypatch.setenv("PARTITIONS_BRUTE_FORCE_CAP", "5")
    with pytest.raises(CapExceededError):
        exhaustive_search(6, EMPTY)


def test_forced_extension_agrees_with_exhaustive_search() -> None:
    """m <= 12 에서 처방 ∅, {r}, {r1, r2} 전체에 대해 두 방법이 같은 결과를 낸다."""

    for m in range(1, 13):
        specs = [EMPTY] + [IntersectionSpec.finite([r]) for r in range(1, m + 1)]
        specs += [
            IntersectionSpec.finite([r1, r2])
            for r1 in range(1, m + 1)
            for r2 in range(r1 + 1, m + 1)
        ]
        for spec in specs:
            forced = forced_extension(m, spec)
            brute = exhaustive_search(m, spec)
            assert len(brute) <= 1
            assert brute == ([forced.pair] if forced.pair is not None else [])


def test_classify_theorem3_small_range_with_oracle() -> None:
    report = classify_theorem3(16, oracle_m_max=12)

    assert report["ok"], report["failures"]
    assert report["summary"]["hits"] == [1, 3, 7, 15]
    row = [row for row in report["rows"] if row["m"] == 15][0]
    assert row["l"] == 4
    assert row["equals_tm"] is True
    assert row["C"] == evil_set(4).format()
    assert row["D"] == odious_set(4).format()


def test_classify_theorem3_matches_per_cell_forcing() -> None:
    """공유 prefix sweep 결과가 m 마다 따로 forced_extension 을 돌린 결과와 같다."""

    report = classify_theorem3(64)
    per_cell = [m for m in range(1, 65) if forced_extension(m, EMPTY).is_unique]

    assert report["ok"]
    assert report["summary"]["hits"] == per_cell == [1, 3, 7, 15, 31, 63]


def test_classify_theorem3_is_independent_of_worker_count() -> None:
    assert classify_theorem3(64, workers=4) == classify_theorem3(64, workers=1)


def test_classify_theorem6_up_to_forty() -> None:
    report = classify_theorem6(40, oracle_m_max=10)

    assert report["ok"], report["failures"]
    assert report["summary"]["hits"] == [[6, 3], [30, 15]]
    assert all(row["equals_chen_lev"] for row in report["rows"])


def test_classify_theorem6_without_reflection_finds_same_hits() -> None:
    with_reflection = classify_theorem6(40)
    without_reflection = classify_theorem6(40, use_reflection=False)

    assert without_reflection["summary"]["hits"] == with_reflection["summary"]["hits"]


def test_theorem6_contradiction_cell() -> None:
    assert forced_extension(6, IntersectionSpec.finite([2])).status == "contradiction"
    assert exhaustive_search(6, IntersectionSpec.finite([2])) == []


def test_sweeps_respect_sweep_cap(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("PARTITIONS_SWEEP_CAP", "32")

    with pytest.raises(CapExceededError):
        classify_theorem3(64)
    with pytest.raises(CapExceededError):
        classify_theorem6(40)


def test_corollary1_witness_examples() -> None:
    assert corollary1_witness(4) == 5
    assert 5 < corollary1_witness(5) < 10

    with pytest.raises(InvalidArgumentError):
        corollary1_witness(7)


def test_corollary1_sweep() -> None:
    report = corollary1_sweep(256)

    assert report["ok"]
    assert report["summary"]["cells"] == 256 - 8


def test_claim34_hits_are_all_ones() -> None:
    report = claim34_check(1 << 10)

    assert report["ok"]
    assert report["summary"]["hits"] == [(1 << j) - 1 for j in range(1, 11)]
    row = [row for row in report["rows"] if row["M"] == 7][0]
    assert row["contained_in"] == "A"


def test_progression_search_reproduces_lifted_construction() -> None:
    base = chen_lev_pair(1)
    result = progression_search(IntersectionSpec.periodic(3, 7), 27)

    assert result.n_star == 27
    assert not result.exhausted
    assert result.witness == lift_partition(base.C, base.D, 3, 6, 4)


def test_progression_search_multiples_of_k_fail_before_n() -> None:
    for k in (2, 3, 4, 5):
        spec = IntersectionSpec.periodic(0, k)
        result = progression_search(spec, 24)

        assert result.n_star == 0
        assert result.exhausted
        assert progression_search(spec, 10).n_star == brute_force_prefix(spec, 10) == 0


def test_progression_evidence_pins_n_star() -> None:
    report = progression_evidence([2, 3], 16, 10)

    assert report["ok"], report["failures"]
    assert [row["n_star"] for row in report["rows"]] == [0, 0]
    assert all(row["expected_n_star"] == 0 for row in report["rows"])


def test_brute_force_prefix_respects_cap(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("PARTITIONS_BRUTE_FORCE_CAP", "8")

    with pytest.raises(CapExceededError):
        brute_force_prefix(IntersectionSpec.periodic(0, 2), 24)


def test_progression_search_degenerate_spec() -> None:
    result = progression_search(IntersectionSpec.periodic(0, 1), 8)
    payload = result.to_dict()

    assert payload["degenerate"] is True
    assert payload["N"] == 8
    assert payload["witness"]["C"] == list(range(9))


def test_progression_search_validates_arguments() -> None:
    with pytest.raises(InvalidArgumentError):
        progression_search(IntersectionSpec.finite([3]), 10)
    with pytest.raises(CapExceededError):
        progression_search(IntersectionSpec.periodic(3, 7), 65)


def test_campaign_drivers_pass_at_small_scale() -> None:
    assert oracle_check(8)["ok"]
    assert oracle_check(7, spec_size=2)["ok"]
    assert eq1_check(5000)["ok"]
    assert lemma1_check([1, 2], 8)["ok"]
    assert progression_evidence([2, 3], 16, 10)["ok"]


def test_oracle_check_respects_brute_force_cap() -> None:
    with pytest.raises(CapExceededError):
        oracle_check(30)


def test_sweep_oracle_bound_does_not_raise_brute_force_cap(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("PARTITIONS_BRUTE_FORCE_CAP", "10")

    with pytest.raises(CapExceededError):
        classify_theorem3(16, oracle_m_max=12)
    with pytest.raises(CapExceededError):
        classify_theorem6(16, oracle_m_max=12)
    assert classify_theorem3(8, oracle_m_max=12)["ok"]


@pytest.mark.slow
def test_acceptance_scale_sweeps() -> None:
    thm3 = classify_theorem3(4096)
    assert thm3["ok"]
    assert thm3["summary"]["hits"] == [(1 << l) - 1 for l in range(1, 13)]

    thm6 = classify_theorem6(300)
    assert thm6["ok"]
    assert thm6["summary"]["hits"] == [[6, 3], [30, 15], [126, 63]]

    assert corollary1_sweep(4096)["ok"]
    assert claim34_check(1 << 16)["ok"]
    assert lemma1_check([1, 2], 32)["ok"]
    assert oracle_check(18)["ok"]


@pytest.mark.slow
@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_progression_search_agrees_with_full_enumeration_at_24(k: int) -> None:
    spec = IntersectionSpec.periodic(0, k)

    assert progression_search(spec, 24).n_star == brute_force_prefix(spec, 24) == 0


@pytest.mark.slow
def test_progression_evidence_acceptance_scale() -> None:
    report = progression_evidence([2, 3, 4, 5], 24, 24)

    assert report["ok"], report["failures"]
    assert report["params"]["brute_N"] == 24
