import pytest

from src.constructions import chen_lev_pair
from src.core_sets import IntSet, evil_set
from src.errors import InvalidArgumentError
from src.genfun import (
    IntPolynomial,
    charpoly,
    coefficient_relations_check,
    coupled_partner,
    eq3_residual,
    eq4_campaign,
    eq4_check,
    eq5_campaign,
    eq5_residual,
)
from src.repfn import first_mismatch


def test_int_polynomial_trims_and_multiplies_exactly() -> None:
    p = IntPolynomial((1, 1, 0, 0))

    assert p.coefficients == (1, 1)
    assert (p * p).coefficients == (1, 2, 1)
    assert (p - p).is_zero()
    assert IntPolynomial.zero().degree == -1
    assert p.compose_square().coefficients == (1, 0, 1)


def test_int_polynomial_large_coefficients_stay_exact() -> None:
    big = 1 << 40
    p = IntPolynomial((big, big))

    assert (p * p).coefficients == (big * big, 2 * big * big, big * big)


def test_exact_half_rejects_odd_coefficients() -> None:
    assert IntPolynomial((2, 4)).exact_half().coefficients == (1, 2)
    with pytest.raises(InvalidArgumentError):
        IntPolynomial((2, 3)).exact_half()


def test_geometric_expansions() -> None:
    assert IntPolynomial.all_ones(3).coefficients == (1, 1, 1, 1)
    assert IntPolynomial.even_ones(2).coefficients == (1, 0, 1, 0, 1)
    assert IntPolynomial.monomial(2, 5).nonzero_terms() == [(2, 5)]


def test_charpoly_examples() -> None:
    assert charpoly(IntSet.from_members([0, 3]), 3).coefficients == (1, 0, 0, 1)
    assert charpoly(IntSet.empty(2), 2).is_zero()
    assert charpoly(chen_lev_pair(1).C, 6).to_json() == [1, 0, 0, 1, 1, 1]

    with pytest.raises(InvalidArgumentError):
        charpoly(IntSet.from_members([0, 5]), 3)


def test_eq3_residual_examples() -> None:
    pair = chen_lev_pair(1)

    assert eq3_residual(pair.C, pair.D, 6, 3).is_zero()
    assert eq3_residual(IntSet.from_members([0, 1]), IntSet.from_members([1, 2]), 2, 1).is_zero()
    assert not eq3_residual(IntSet.from_members([0, 1]), IntSet.from_members([2]), 2, 1).is_zero()


def test_eq4_check_examples() -> None:
    assert eq4_check(evil_set(4), 30) is None
    assert eq4_check(IntSet.empty(), 10) is None
    assert eq4_check(IntSet.from_members([0, 1, 2]), 4) is None


@pytest.mark.parametrize("l", [1, 2, 3])
def test_eq5_residual_vanishes_for_chen_lev_pairs(l: int) -> None:
    pair = chen_lev_pair(l)
    residual = eq5_residual(pair.C, pair.m, pair.intersection.elements[0])

    assert residual.is_zero()


def test_eq5_residual_nonzero_when_partner_fails() -> None:
    c = IntSet.from_members([0, 3])
    residual = eq5_residual(c, 6, 3)

    assert not residual.is_zero()
    assert residual.degree <= 2 * 6 + 2
    assert first_mismatch(c, coupled_partner(c, 6, 3), 12) is not None


def test_eq5_residual_requires_zero_and_r_in_c() -> None:
    with pytest.raises(InvalidArgumentError):
        eq5_residual(IntSet.from_members([0, 4]), 6, 3)
    with pytest.raises(InvalidArgumentError):
        eq5_residual(IntSet.from_members([3, 4]), 6, 3)


def test_coupled_partner_of_chen_lev_c_is_its_d() -> None:
    pair = chen_lev_pair(2)

    assert coupled_partner(pair.C, pair.m, 15) == pair.D


@pytest.mark.parametrize("l", [1, 2])
def test_coefficient_relations_hold_for_chen_lev_pairs(l: int) -> None:
    pair = chen_lev_pair(l)
    report = coefficient_relations_check(pair.C, pair.m, pair.intersection.elements[0])

    assert report["ok"], report["failures"]


@pytest.mark.parametrize("toggled", [1, 2, 4])
def test_coefficient_relations_detect_perturbation(toggled: int) -> None:
    pair = chen_lev_pair(1)
    perturbed = IntSet(6, pair.C.bits ^ (1 << toggled))

    report = coefficient_relations_check(perturbed, 6, 3)

    assert not report["ok"]
    assert report["failures"]


def test_coefficient_relations_require_odd_r() -> None:
    with pytest.raises(InvalidArgumentError):
        coefficient_relations_check(chen_lev_pair(1).C, 6, 2)


def test_eq4_campaign_small() -> None:
    report = eq4_campaign(trials=50, bound=64, seed=7)

    assert report["ok"]
    assert len(report["rows"]) == 50


def test_eq5_campaign_covers_every_single_toggle() -> None:
    report = eq5_campaign()

    assert report["ok"], report["failures"]
    assert report["summary"]["perturbations"] == 5 + 29 + 125


@pytest.mark.slow
def test_eq4_campaign_acceptance_scale() -> None:
    assert eq4_campaign(trials=1000, bound=256)["ok"]


def test_eq5_campaign_rows_list_residual_terms() -> None:
    report = eq5_campaign([1])
    rows = {row["toggled"]: row for row in report["rows"]}
    pair = chen_lev_pair(1)

    assert len(rows) == 1 + 5
    assert rows[None]["residual"] == []
    for toggled in (1, 2, 4, 5, 6):
        perturbed = IntSet(6, pair.C.bits ^ (1 << toggled))
        expected = [list(term) for term in eq5_residual(perturbed, 6, 3).nonzero_terms()]
        assert rows[toggled]["residual"] == expected
        assert expected and all(value != 0 for _, value in expected)
