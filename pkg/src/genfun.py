import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .constructions import chen_lev_pair
from .core_sets import IntSet
from .errors import InvalidArgumentError
from .repfn import first_mismatch, repfn_table
from .report_format import make_report
from .types import CampaignReport


logger = logging.getLogger(__name__)

# int64 합성곱이 넘치지 않는 계수 곱의 상한
_INT64_SAFE = 1 << 62


def _trim(coefficients: Iterable[int]) -> Tuple[int, ...]:
    values = [int(c) for c in coefficients]
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


def _convolve_exact(left: Sequence[int], right: Sequence[int]) -> List[int]:
    bound = max(abs(c) for c in left) * max(abs(c) for c in right) * min(len(left), len(right))
    if bound < _INT64_SAFE:
        product = np.convolve(
            np.asarray(left, dtype=np.int64), np.asarray(right, dtype=np.int64)
        )
        return product.tolist()

    out = [0] * (len(left) + len(right) - 1)
    for i, a in enumerate(left):
        if a:
            for j, b in enumerate(right):
                out[i + j] += a * b
    return out


@dataclass(frozen=True)
class IntPolynomial:
    """정수 계수 다항식. coefficients[i] 가 x^i 의 계수이고 끝의 0 은 잘라 둔다."""

    coefficients: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "coefficients", _trim(self.coefficients))

    @classmethod
    def zero(cls) -> "IntPolynomial":
        return cls(())

    @classmethod
    def monomial(cls, degree: int, coefficient: int = 1) -> "IntPolynomial":
        if degree < 0:
            raise InvalidArgumentError(f"degree must be nonnegative, got {degree}")
        return cls((0,) * degree + (coefficient,))

    @classmethod
    def all_ones(cls, m: int) -> "IntPolynomial":
        """(1 - x^{m+1}) / (1 - x) 의 정확한 전개 1 + x + ... + x^m."""

        return cls((1,) * (m + 1))

    @classmethod
    def even_ones(cls, m: int) -> "IntPolynomial":
        """(1 - x^{2m+2}) / (1 - x^2) = 1 + x^2 + ... + x^{2m}."""

        values = [0] * (2 * m + 1)
        values[::2] = [1] * (m + 1)
        return cls(tuple(values))

    @property
    def degree(self) -> int:
        # 영 다항식의 차수는 -1 로 둔다.
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, k: int) -> int:
        if 0 <= k < len(self.coefficients):
            return self.coefficients[k]
        return 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial(
            tuple(self.coefficient(k) + other.coefficient(k) for k in range(size))
        )

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if self.is_zero() or other.is_zero():
            return IntPolynomial.zero()
        return IntPolynomial(tuple(_convolve_exact(self.coefficients, other.coefficients)))

    def scale(self, factor: int) -> "IntPolynomial":
        return IntPolynomial(tuple(factor * c for c in self.coefficients))

    def compose_square(self) -> "IntPolynomial":
        """p(x^2)."""

        values = [0] * (2 * len(self.coefficients))
        values[::2] = self.coefficients
        return IntPolynomial(tuple(values))

    def exact_half(self) -> "IntPolynomial":
        odd = [k for k, c in enumerate(self.coefficients) if c % 2]
        if odd:
            raise InvalidArgumentError(f"coefficient of x^{odd[0]} is odd; halving is not exact")
        return IntPolynomial(tuple(c // 2 for c in self.coefficients))

    def nonzero_terms(self) -> List[Tuple[int, int]]:
        return [(k, c) for k, c in enumerate(self.coefficients) if c]

    def to_json(self) -> List[int]:
        return list(self.coefficients)


def charpoly(s: IntSet, m: int) -> IntPolynomial:
    """p_S(x) = Σ_{i<=m} χ_S(i) x^i."""

    if m < 0:
        raise InvalidArgumentError(f"m must be nonnegative, got {m}")
    top = s.max_member()
    if top is not None and top > m:
        raise InvalidArgumentError(f"member {top} exceeds m={m}")
    return IntPolynomial(tuple(s.restrict(m).to_array().tolist()))


def eq3_residual(c: IntSet, d: IntSet, m: int, r: int) -> IntPolynomial:
    """p_D - (1 + ... + x^m - p_C + x^r). C ∪ D = [0, m], C ∩ D = {r} 이면 0 이다."""

    p_c = charpoly(c, m)
    p_d = charpoly(d, m)
    return p_d - (IntPolynomial.all_ones(m) - p_c + IntPolynomial.monomial(r))


def eq4_check(s: IntSet, n_max: int) -> Optional[int]:
    """(p_S^2 - p_S(x^2)) / 2 의 계수와 repfn_table(S, N) 이 처음 어긋나는 n."""

    if n_max < 0:
        raise InvalidArgumentError(f"N must be nonnegative, got {n_max}")

    bound = min(s.bound, n_max)
    p = charpoly(s.restrict(bound), bound)
    generated = (p * p - p.compose_square()).exact_half()
    table = repfn_table(s, n_max)
    for n in range(n_max + 1):
        if generated.coefficient(n) != table[n]:
            return n
    return None


def _check_eq5_inputs(c: IntSet, m: int, r: int) -> None:
    if m < 1:
        raise InvalidArgumentError(f"m must be positive, got {m}")
    if r < 1 or r > m:
        raise InvalidArgumentError(f"r must lie in (0, {m}], got {r}")
    if not c.chi(0):
        raise InvalidArgumentError("0 must belong to C")
    if not c.chi(r):
        raise InvalidArgumentError(f"r={r} must belong to C")


def eq5_residual(c: IntSet, m: int, r: int) -> IntPolynomial:
    """2p_C(x^2) 에서 결합 관계를 대입한 우변을 뺀 잔차.

    기하급수 인자는 모두 정확한 다항식 전개로 쓰고, 결과 차수는 2m + 2 이하이다.
    0 이면 D = ([0, m] \\ C) ∪ {r} 에 대해 R_C = R_D 이다.
    """

    _check_eq5_inputs(c, m, r)

    p_c = charpoly(c, m)
    ones = IntPolynomial.all_ones(m)
    x_r = IntPolynomial.monomial(r)

    lhs = p_c.compose_square().scale(2)
    rhs = (
        IntPolynomial.even_ones(m)
        + (p_c * ones).scale(2)
        - ones * ones
        - (x_r * ones).scale(2)
        + (x_r * p_c).scale(2)
    )
    return lhs - rhs


def coupled_partner(c: IntSet, m: int, r: int) -> IntSet:
    """결합 관계가 정하는 짝 D = ([0, m] \\ C) ∪ {r}."""

    return c.restrict(m).complement().union(IntSet.from_members([r], bound=m))


def coefficient_relations_check(c: IntSet, m: int, r: int) -> CampaignReport:
    """홀수 r 에 대해 r <= k < 2r <= m 인 짝수 k 의 계수 관계와 합 항등식을 확인한다.

    χ(k/2) = χ(k) + χ(k - r) - χ(k - 1 - r),
    Σ_{i<=r} χ(i) = (r + 1) / 2, χ((r - 1) / 2) = 0.
    """

    if r < 1 or r % 2 == 0:
        raise InvalidArgumentError(f"r must be an odd positive integer, got {r}")
    if r > m:
        raise InvalidArgumentError(f"r={r} exceeds m={m}")

    chi = c.chi
    rows: List[Dict[str, object]] = []
    failures: List[Dict[str, object]] = []

    if 2 * r <= m:
        for k in range(r + 1, 2 * r, 2):
            lhs = chi(k // 2)
            rhs = chi(k) + chi(k - r) - chi(k - 1 - r)
            rows.append({"relation": "parity", "k": k, "lhs": lhs, "rhs": rhs})
            if lhs != rhs:
                failures.append({"relation": "parity", "k": k, "lhs": lhs, "rhs": rhs})

    prefix_sum = sum(chi(i) for i in range(r + 1))
    rows.append({"relation": "prefix_sum", "k": r, "lhs": prefix_sum, "rhs": (r + 1) // 2})
    if prefix_sum != (r + 1) // 2:
        failures.append({"relation": "prefix_sum", "k": r, "lhs": prefix_sum, "rhs": (r + 1) // 2})

    middle = (r - 1) // 2
    rows.append({"relation": "middle_absent", "k": middle, "lhs": chi(middle), "rhs": 0})
    if chi(middle) != 0:
        failures.append({"relation": "middle_absent", "k": middle, "lhs": chi(middle), "rhs": 0})

    return make_report(
        "relations",
        {"C": c.format(), "m": m, "r": r},
        rows,
        failures,
    )


def eq4_campaign(trials: int = 1000, bound: int = 256, seed: int = 0) -> CampaignReport:
    """무작위 집합 trials 개 (universe <= bound) 에 eq4_check 를 적용한다."""

    if trials < 1 or bound < 1:
        raise InvalidArgumentError("trials and bound must be positive")

    rng = np.random.default_rng(seed)
    rows: List[Dict[str, object]] = []
    failures: List[Dict[str, object]] = []
    for trial in range(trials):
        size = int(rng.integers(0, bound + 1))
        density = float(rng.random())
        s = IntSet.from_array((rng.random(size + 1) < density).astype(np.uint8))
        bad = eq4_check(s, 2 * size)
        rows.append({"trial": trial, "bound": size, "members": len(s), "first_bad": bad})
        if bad is not None:
            failures.append({"trial": trial, "set": s.format(), "n": bad})

    logger.info("Doubling identity campaign finished: trials=%s, failures=%s", trials, len(failures))
    return make_report(
        "eq4",
        {"trials": trials, "bound": bound, "seed": seed},
        rows,
        failures,
    )


def eq5_campaign(levels: Sequence[int] = (1, 2, 3)) -> CampaignReport:
    """chen_lev_pair(l) 에서 잔차가 0 이고, C 의 원소 하나를 뒤집은 모든 변형에서 0 이 아닌지 본다.

    각 경우 eq5_residual = 0 과 first_mismatch(C, D) = None 이 서로 일치하는지도 교차 확인한다.
    """

    rows: List[Dict[str, object]] = []
    failures: List[Dict[str, object]] = []
    perturbations = 0
    for l in levels:
        pair = chen_lev_pair(l)
        m, r = pair.m, pair.intersection.elements[0]

        variants: List[Tuple[Optional[int], IntSet]] = [(None, pair.C)]
        for i in range(1, m + 1):
            if i != r:
                variants.append((i, IntSet(m, pair.C.bits ^ (1 << i))))

        for toggled, c in variants:
            residual = eq5_residual(c, m, r)
            mismatch = first_mismatch(c, coupled_partner(c, m, r), 2 * m)
            if toggled is not None:
                perturbations += 1

            zero = residual.is_zero()
            # 잔차는 (차수, 계수) 쌍 목록으로 남긴다.
            terms = [list(term) for term in residual.nonzero_terms()]
            rows.append(
                {"l": l, "m": m, "r": r, "toggled": toggled, "zero": zero, "residual": terms}
            )
            if toggled is None and not zero:
                failures.append(
                    {"l": l, "reason": "residual is nonzero for chen_lev_pair", "residual": terms}
                )
            if toggled is not None and zero:
                failures.append({"l": l, "toggled": toggled, "reason": "perturbed residual is zero"})
            if zero != (mismatch is None):
                failures.append({"l": l, "toggled": toggled, "reason": "residual and first_mismatch disagree"})
            if residual.degree > 2 * m + 2:
                failures.append({"l": l, "toggled": toggled, "reason": "residual degree exceeds 2m + 2"})

    logger.info("Coupled residual campaign finished: levels=%s, perturbations=%s", list(levels), perturbations)
    return make_report(
        "eq5",
        {"levels": list(levels)},
        rows,
        failures,
        {"perturbations": perturbations},
    )
