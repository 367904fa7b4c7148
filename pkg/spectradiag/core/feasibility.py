"""
Движок допустимости: является ли последовательность диагональю самосопряжённого
оператора с заданным конечным спектром и кратностями.
"""

import enum
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .exceptions import (
    BoundsViolatedError,
    HypothesisViolatedError,
    InfeasibleInputError,
    InteriorInfiniteError,
    NotSummableError,
    PreconditionViolatedError,
)
from .majorization import SymmetricMatrixWitness, construct_matrix, prefix_slacks, schur_horn_check
from .numerics import DIVERGENT, format_scalar, is_integer, sum_from_json, sum_to_json
from .sequences import DiagonalSequence, cut_stats, require_within
from .spectrum import NormalizedSpec, SpectrumClass, SpectrumSpec, classify, normalize

logger = logging.getLogger(__name__)

Slack = Tuple[str, object]


class Branch(enum.Enum):
    CLASSICAL = "CLASSICAL"
    ONE_INFINITE = "ONE_INFINITE"
    TWO_INFINITE_SUMMABLE = "TWO_INFINITE_SUMMABLE"
    NON_SUMMABLE = "NON_SUMMABLE"
    MANY_INFINITE = "MANY_INFINITE"


def slack_ok(value: object) -> bool:
    """Запас неотрицателен; DIVERGENT означает −∞."""
    return value is not DIVERGENT and value >= 0


class FeasibilityVerdict:
    """Результат проверки: ветка, ответ, k₀, запасы неравенств и причина отказа."""

    def __init__(self, feasible: bool, branch: Branch, k0: Optional[int] = None,
                 slacks: Sequence[Slack] = (), failed_condition: Optional[str] = None,
                 quantities: Optional[Dict[str, object]] = None):
        if feasible and failed_condition is not None:
            raise ValueError("Допустимый вердикт не может ссылаться на нарушенное условие")
        if feasible and not all(slack_ok(value) for _, value in slacks):
            raise ValueError("Допустимый вердикт с отрицательным запасом")
        self._feasible = feasible
        self._branch = branch
        self._k0 = k0
        self._slacks = tuple(slacks)
        self._failed_condition = failed_condition
        self._quantities = dict(quantities or {})

    @property
    def feasible(self) -> bool:
        return self._feasible

    @property
    def branch(self) -> Branch:
        return self._branch

    @property
    def k0(self) -> Optional[int]:
        return self._k0

    @property
    def slacks(self) -> Tuple[Slack, ...]:
        return self._slacks

    @property
    def failed_condition(self) -> Optional[str]:
        return self._failed_condition

    @property
    def quantities(self) -> Dict[str, object]:
        return dict(self._quantities)

    def slack(self, condition: str) -> object:
        for name, value in self._slacks:
            if name == condition:
                return value
        raise KeyError(condition)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'feasible': self._feasible,
            'branch': self._branch.value,
            'slacks': [[name, sum_to_json(value)] for name, value in self._slacks],
        }
        if self._k0 is not None:
            data['k0'] = self._k0
        if self._failed_condition is not None:
            data['failed_condition'] = self._failed_condition
        if self._quantities:
            data['quantities'] = {name: sum_to_json(value) for name, value in self._quantities.items()}
        return data

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "FeasibilityVerdict":
        return cls(
            feasible=data['feasible'],
            branch=Branch(data['branch']),
            k0=data.get('k0'),
            slacks=[(name, sum_from_json(value)) for name, value in data.get('slacks', [])],
            failed_condition=data.get('failed_condition'),
            quantities={name: sum_from_json(v) for name, v in data.get('quantities', {}).items()},
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FeasibilityVerdict):
            return NotImplemented
        return self.to_dict() == other.to_dict()

    def __repr__(self) -> str:
        status = "feasible" if self._feasible else f"infeasible ({self._failed_condition})"
        return f"FeasibilityVerdict({self._branch.value}, {status}, k0={self._k0})"


def _first_failure(slacks: Sequence[Slack]) -> Optional[str]:
    return next((name for name, value in slacks if not slack_ok(value)), None)


Frame = Dict[int, Tuple[Fraction, object]]


def _lower_slacks(seq: DiagonalSequence, frame: Frame, rs: range) -> List[Slack]:
    # Σ_{j<r}(A_r − A_j)N_j − Σ_{d≤A_r}(A_r − d)
    slacks = []
    for r in rs:
        A_r = frame[r][0]
        gain = sum(((A_r - A_j) * int(N_j) for j, (A_j, N_j) in frame.items() if j < r), Fraction(0))
        excess = seq.excess_below(A_r)
        slacks.append((f"lower_exterior:r={r}", DIVERGENT if excess is DIVERGENT else gain - excess))
    return slacks


def _upper_slacks(seq: DiagonalSequence, frame: Frame, rs: range) -> List[Slack]:
    # Σ_{j>r}(A_j − A_r)N_j − Σ_{d≥A_r}(d − A_r)
    slacks = []
    for r in rs:
        A_r = frame[r][0]
        gain = sum(((A_j - A_r) * int(N_j) for j, (A_j, N_j) in frame.items() if j > r), Fraction(0))
        excess = seq.excess_above(A_r)
        slacks.append((f"upper_exterior:r={r}", DIVERGENT if excess is DIVERGENT else gain - excess))
    return slacks


def _frame(nspec: NormalizedSpec) -> Frame:
    return {j: (nspec.A(j), nspec.N(j)) for j in nspec.indices}


def _translated(seq: DiagonalSequence, nspec: NormalizedSpec) -> DiagonalSequence:
    lo, hi = nspec.A(-nspec.m), nspec.A(nspec.n + nspec.p + 1)
    shifted = seq.shifted(-nspec.translation)
    require_within(shifted, lo, hi)
    return shifted


def lower_exterior_check(seq: DiagonalSequence, nspec: NormalizedSpec) -> List[Tuple[int, object]]:
    """Запасы нижней внешней мажоризации для r = −m..0."""
    slacks = _lower_slacks(_translated(seq, nspec), _frame(nspec), range(-nspec.m, 1))
    return [(r, value) for r, (_, value) in zip(range(-nspec.m, 1), slacks)]


def upper_exterior_check(seq: DiagonalSequence, nspec: NormalizedSpec) -> List[Tuple[int, object]]:
    """Запасы верхней внешней мажоризации для r = n+1..n+p+1."""
    rs = range(nspec.n + 1, nspec.n + nspec.p + 2)
    slacks = _upper_slacks(_translated(seq, nspec), _frame(nspec), rs)
    return [(r, value) for r, (_, value) in zip(rs, slacks)]


def infinite_tail_exterior_check(d_values: Sequence[Fraction], lambdas: Sequence[Tuple[Fraction, int]],
                                 lambda_inf: Fraction) -> bool:
    """
    Внешнее условие для спектра, убывающего к λ∞: Σ_{d ≥ λ∞}(d − λ∞) ≤ Σ_j (λ_j − λ∞)N_j.

    Raises:
        HypothesisViolatedError: Если λ_j не убывают строго или не превышают λ∞
    """
    lambda_inf = Fraction(lambda_inf)
    values = [Fraction(v) for v, _ in lambdas]
    if any(not a > b for a, b in zip(values, values[1:])) or any(v <= lambda_inf for v in values):
        raise HypothesisViolatedError("decreasing", "λ_j должны строго убывать к λ∞")
    lhs = sum((Fraction(d) - lambda_inf for d in d_values if Fraction(d) >= lambda_inf), Fraction(0))
    rhs = sum(((Fraction(v) - lambda_inf) * n for v, n in lambdas), Fraction(0))
    return lhs <= rhs


def kadison_check(seq: DiagonalSequence) -> FeasibilityVerdict:
    """Диагональ проекции: C(1/2) или D(1/2) расходится, либо C(1/2) − D(1/2) ∈ ℤ."""
    require_within(seq, Fraction(0), Fraction(1))
    stats = cut_stats(seq, Fraction(1, 2), Fraction(1))
    quantities = {'C(1/2)': stats.C, 'D(1/2)': stats.D}
    if not stats.is_summable:
        return FeasibilityVerdict(True, Branch.NON_SUMMABLE, quantities=quantities)
    branch = Branch.CLASSICAL if seq.is_finite else Branch.TWO_INFINITE_SUMMABLE
    difference = stats.difference()
    quantities['C-D'] = difference
    if is_integer(difference):
        return FeasibilityVerdict(True, branch, k0=int(difference), quantities=quantities)
    return FeasibilityVerdict(False, branch, failed_condition="kadison_integrality", quantities=quantities)


def kadison_partition_check(seq: DiagonalSequence, partition: Tuple[Fraction, Fraction]) -> bool:
    """Σ_{I₀} d − Σ_{I₁}(1 − d) ∈ ℤ для разбиения с конечными суммами."""
    require_within(seq, Fraction(0), Fraction(1))
    mass, deficiency = (Fraction(x) for x in partition)
    return is_integer(mass - deficiency)


def projection_witness(seq: DiagonalSequence) -> SymmetricMatrixWitness:
    """
    Матрица проекции с диагональю seq (конечная последовательность).

    Raises:
        InfeasibleInputError: Если последовательность бесконечна или не проходит условие Кадисона
    """
    if not seq.is_finite:
        raise InfeasibleInputError("нужна конечная последовательность")
    verdict = kadison_check(seq)
    if not verdict.feasible:
        raise InfeasibleInputError("C(1/2) − D(1/2) не целое")
    d = seq.atom_values()
    rank = int(sum(d, Fraction(0)))
    return construct_matrix([Fraction(1)] * rank + [Fraction(0)] * (len(d) - rank), d)


def _sum_AN(nspec: NormalizedSpec, indices) -> Fraction:
    return sum((nspec.A(j) * int(nspec.N(j)) for j in indices), Fraction(0))


def _outer_indices(nspec: NormalizedSpec) -> List[int]:
    return [j for j in nspec.indices if j not in (0, nspec.n + 1)]


def interior_majorization_check(seq: DiagonalSequence, nspec: NormalizedSpec) -> FeasibilityVerdict:
    """
    Внутренняя мажоризация (лебегова форма).

    k₀ определяется тождеством следа при α = A_n:
    C(A_n) − D(A_n) = Σ'A_jN_j + k₀B; затем для r = 1..n проверяется
    C(A_r) ≥ Σ_{j=−m, j≠0}^{r} A_jN_j + A_r(k₀ − |{A_r ≤ d < A_n}| + Σ_{j=r+1, j≠n+1}^{n+p+1} N_j).

    Raises:
        PreconditionViolatedError: Если n = 0
        InteriorInfiniteError: Если некоторая N_j, 1 ≤ j ≤ n, бесконечна
        NotSummableError: Если C(B/2) или D(B/2) расходится
    """
    n = nspec.n
    if n < 1:
        raise PreconditionViolatedError("n", "требуется хотя бы одно внутреннее собственное значение")
    for j in nspec.interior_indices():
        if nspec.N(j).is_infinite:
            raise InteriorInfiniteError(j)
    seq_t = _translated(seq, nspec)
    B = nspec.B
    half = cut_stats(seq_t, B / 2, B)
    if half.C is DIVERGENT:
        raise NotSummableError("C")
    if half.D is DIVERGENT:
        raise NotSummableError("D")

    outer = _outer_indices(nspec)
    A_n = nspec.A(n)
    at_n = cut_stats(seq_t, A_n, B)
    residue = at_n.difference() - _sum_AN(nspec, outer)
    quantities = {'C(B/2)': half.C, 'D(B/2)': half.D, 'trace_residue': residue}
    if not is_integer(residue / B):
        return FeasibilityVerdict(False, Branch.TWO_INFINITE_SUMMABLE, failed_condition="trace", quantities=quantities)
    k0 = int(residue / B)

    slacks = []
    for r in nspec.interior_indices():
        A_r = nspec.A(r)
        stats = cut_stats(seq_t, A_r, B)
        between = int(seq_t.count_between(A_r, A_n))
        lower_mass = _sum_AN(nspec, [j for j in range(-nspec.m, r + 1) if j != 0])
        upper_count = sum(int(nspec.N(j)) for j in range(r + 1, n + nspec.p + 2) if j != n + 1)
        rhs = lower_mass + A_r * (k0 - between + upper_count)
        slacks.append((f"interior:r={r}", stats.C - rhs))
    failed = _first_failure(slacks)
    logger.debug("Внутренняя мажоризация: k0=%d, запасы=%s", k0, slacks)
    return FeasibilityVerdict(failed is None, Branch.TWO_INFINITE_SUMMABLE, k0=k0, slacks=slacks,
                              failed_condition=failed, quantities=quantities)


def interior_majorization_gaps(seq: DiagonalSequence, nspec: NormalizedSpec) -> List[Tuple[int, Fraction]]:
    """
    Зазоры симметричной формы внутренней мажоризации для r = 1..n:
    (B − A_r)C(A_r) + A_rD(A_r) − (B − A_r)Σ_{j≤r, j≠0} A_jN_j − A_rΣ_{j>r, j≠n+1}(B − A_j)N_j.
    """
    seq_t = _translated(seq, nspec)
    B, n = nspec.B, nspec.n
    gaps = []
    for r in nspec.interior_indices():
        A_r = nspec.A(r)
        stats = cut_stats(seq_t, A_r, B)
        below = _sum_AN(nspec, [j for j in range(-nspec.m, r + 1) if j != 0])
        above = sum(((B - nspec.A(j)) * int(nspec.N(j)) for j in range(r + 1, n + nspec.p + 2) if j != n + 1), Fraction(0))
        gaps.append((r, (B - A_r) * stats.C + A_r * stats.D - (B - A_r) * below - A_r * above))
    return gaps


def decide_diagonal(seq: DiagonalSequence, spec: SpectrumSpec) -> FeasibilityVerdict:
    """
    Решение: является ли seq диагональю оператора со спектром spec.

    Raises:
        BoundsViolatedError: Если значения seq вне [min A_j, max A_j]
    """
    lo, hi = spec.eigenvalue_range()
    value_range = seq.value_range()
    if value_range is not None:
        if value_range[0] < lo:
            raise BoundsViolatedError(format_scalar(value_range[0]), format_scalar(lo), format_scalar(hi))
        if value_range[1] > hi:
            raise BoundsViolatedError(format_scalar(value_range[1]), format_scalar(lo), format_scalar(hi))
    spectrum_class = classify(spec)
    logger.debug("decide_diagonal: %s, класс %s", seq, spectrum_class.value)
    if spectrum_class is SpectrumClass.ALL_FINITE:
        return _decide_classical(seq, spec)
    if spectrum_class is SpectrumClass.ONE_INFINITE:
        return _decide_one_infinite(seq, spec)
    return _decide_framed(seq, spec, spectrum_class)


def _decide_classical(seq: DiagonalSequence, spec: SpectrumSpec) -> FeasibilityVerdict:
    if not seq.is_finite or seq.cardinality() != spec.total_multiplicity():
        return FeasibilityVerdict(False, Branch.CLASSICAL, failed_condition="cardinality")
    lam, d = spec.eigenvalue_list(), seq.atom_values()
    slacks = [(f"prefix:n={n}", value) for n, value in prefix_slacks(lam, d)]
    if schur_horn_check(lam, d):
        return FeasibilityVerdict(True, Branch.CLASSICAL, slacks=slacks)
    failed = _first_failure(slacks) or "trace"
    return FeasibilityVerdict(False, Branch.CLASSICAL, slacks=slacks, failed_condition=failed)


def _decide_one_infinite(seq: DiagonalSequence, spec: SpectrumSpec) -> FeasibilityVerdict:
    pivot = spec.infinite_indices()[0]
    translation = spec.pairs[pivot][0]
    frame = {i - pivot: (value - translation, count) for i, (value, count) in enumerate(spec.pairs)}
    m, p = pivot, len(spec.pairs) - 1 - pivot
    if seq.is_finite:
        return FeasibilityVerdict(False, Branch.ONE_INFINITE, failed_condition="cardinality")
    seq_t = seq.shifted(-translation)
    slacks = _lower_slacks(seq_t, frame, range(-m, 1)) + _upper_slacks(seq_t, frame, range(0, p + 1))
    total = seq_t.total_sum()
    target = sum((A * int(N) for j, (A, N) in frame.items() if j != 0), Fraction(0))
    quantities = {'trace': total, 'trace_target': target}
    failed = _first_failure(slacks)
    if failed is None and (total is DIVERGENT or total != target):
        failed = "trace"
    return FeasibilityVerdict(failed is None, Branch.ONE_INFINITE, slacks=slacks,
                              failed_condition=failed, quantities=quantities)


def _decide_framed(seq: DiagonalSequence, spec: SpectrumSpec, spectrum_class: SpectrumClass) -> FeasibilityVerdict:
    nspec = normalize(spec)
    seq_t = _translated(seq, nspec)
    frame = _frame(nspec)
    n, B = nspec.n, nspec.B
    summable_branch = Branch.MANY_INFINITE if spectrum_class is SpectrumClass.MANY_INFINITE else Branch.TWO_INFINITE_SUMMABLE
    if seq.is_finite:
        return FeasibilityVerdict(False, summable_branch, failed_condition="cardinality")

    slacks = _lower_slacks(seq_t, frame, range(-nspec.m, 1)) + _upper_slacks(seq_t, frame, range(n + 1, n + nspec.p + 2))
    exterior_failure = _first_failure(slacks)
    half = cut_stats(seq_t, B / 2, B)
    quantities = {'C(B/2)': half.C, 'D(B/2)': half.D}

    if not half.is_summable:
        return FeasibilityVerdict(exterior_failure is None, Branch.NON_SUMMABLE, slacks=slacks,
                                  failed_condition=exterior_failure, quantities=quantities)
    if spectrum_class is SpectrumClass.MANY_INFINITE:
        return FeasibilityVerdict(False, Branch.MANY_INFINITE, slacks=slacks,
                                  failed_condition=exterior_failure or "interior_multiplicity_infinite",
                                  quantities=quantities)

    branch = Branch.TWO_INFINITE_SUMMABLE
    if exterior_failure is not None:
        return FeasibilityVerdict(False, branch, slacks=slacks, failed_condition=exterior_failure, quantities=quantities)
    if not (half.count_below.is_infinite and half.count_at_least.is_infinite):
        return FeasibilityVerdict(False, branch, slacks=slacks, failed_condition="cardinality", quantities=quantities)

    if n >= 1:
        interior = interior_majorization_check(seq, nspec)
        quantities.update(interior.quantities)
        return FeasibilityVerdict(interior.feasible, branch, k0=interior.k0, slacks=slacks + list(interior.slacks),
                                  failed_condition=interior.failed_condition, quantities=quantities)

    residue = half.difference() - _sum_AN(nspec, _outer_indices(nspec))
    quantities['trace_residue'] = residue
    if not is_integer(residue / B):
        return FeasibilityVerdict(False, branch, slacks=slacks, failed_condition="trace", quantities=quantities)
    return FeasibilityVerdict(True, branch, k0=int(residue / B), slacks=slacks, quantities=quantities)


def audit_witness(witness: SymmetricMatrixWitness, spec: SpectrumSpec) -> FeasibilityVerdict:
    """Повторное решение по точной диагонали построенной матрицы."""
    return decide_diagonal(DiagonalSequence.from_values(witness.diagonal), spec)
