"""
Множество Λ_N допустимых наборов из N внутренних собственных значений при фиксированной диагонали:
η, проверка принадлежности и минимальные элементы по порядку мажоризации.
"""

import enum
import itertools
import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .exceptions import HypothesisViolatedError, NotInClassFError, OutOfRangeError, PreconditionViolatedError
from .numerics import format_scalar, frac_mod_one
from .sequences import ZERO, DiagonalSequence, beta_tails, cut_stats, f_value, in_class_F, require_within
from .transforms import split_extremes, truncate_to_finite

logger = logging.getLogger(__name__)

HALF = Fraction(1, 2)


class MinimalCase(enum.Enum):
    CASE1 = "CASE1"
    CASE2 = "CASE2"
    CASE3 = "CASE3"


class MinimalElement:
    """Минимальный элемент μ^k со следом k + η."""

    def __init__(self, k: int, mu: Sequence[Fraction], case: MinimalCase, a: Optional[Fraction] = None,
                 b: Optional[Fraction] = None, Na: Optional[int] = None, Nb: Optional[int] = None):
        self.k = k
        self.mu = tuple(mu)
        self.case = case
        self.a = a
        self.b = b
        self.Na = Na
        self.Nb = Nb

    def to_dict(self) -> Dict[str, Any]:
        data = {'k': self.k, 'mu': [format_scalar(x) for x in self.mu], 'case': self.case.value}
        if self.case is MinimalCase.CASE3:
            data.update({'a': format_scalar(self.a), 'b': format_scalar(self.b), 'Na': self.Na, 'Nb': self.Nb})
        return data

    def __repr__(self) -> str:
        return f"MinimalElement(k={self.k}, mu={[format_scalar(x) for x in self.mu]}, {self.case.value})"


class MinimalElementReport:
    """η, выбранный ε, усечённый внутренний вектор и минимальные элементы μ^k."""

    def __init__(self, eta: Fraction, entries: Sequence[MinimalElement],
                 epsilon: Optional[Fraction] = None, interior: Sequence[Fraction] = ()):
        self.eta = eta
        self.entries = list(entries)
        self.epsilon = epsilon
        self.interior = tuple(interior)

    def mu(self, k: int) -> Tuple[Fraction, ...]:
        for entry in self.entries:
            if entry.k == k:
                return entry.mu
        raise KeyError(k)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'eta': format_scalar(self.eta),
            'entries': [entry.to_dict() for entry in self.entries],
            'interior': [format_scalar(x) for x in self.interior],
        }
        if self.epsilon is not None:
            data['epsilon'] = format_scalar(self.epsilon)
        return data


def eta_of(seq: DiagonalSequence) -> Fraction:
    """η ∈ [0, 1) с C(1/2) − D(1/2) ≡ η (mod 1)."""
    if not in_class_F(seq):
        raise NotInClassFError()
    return frac_mod_one(cut_stats(seq, HALF).difference())


def _solve_excess(values: Sequence[Fraction], rhs: Fraction) -> Fraction:
    """Единственное x с Σ_{v > x}(v − x) = rhs ≥ 0 (кусочно-линейное уравнение по узлам values)."""
    ordered = sorted(values, reverse=True)
    count, total = 0, ZERO
    for index, value in enumerate(ordered):
        count += 1
        total += value
        x = (total - rhs) / count
        if index + 1 == len(ordered) or x >= ordered[index + 1]:
            return x
    raise ValueError("пустой набор узлов")


def minimal_element(d: Sequence[Fraction], K: int, eta: Fraction, N: int, k: int) -> MinimalElement:
    """
    Минимальный элемент множества {λ ∈ (0,1)^N : d ≺ (1^{K−k}, λ, 0^{M−N−(K−k)})}.

    Args:
        d: Невозрастающий вектор в [0, 1] с суммой K + η
        K: Целая часть суммы
        eta: Дробная часть суммы
        N: Длина λ
        k: Номер слоя, Σμ = k + η

    Raises:
        PreconditionViolatedError: Если нарушено одно из условий на d, K, η, N, k
    """
    d = [Fraction(x) for x in d]
    eta = Fraction(eta)
    M = len(d)
    if any(x < y for x, y in zip(d, d[1:])):
        raise PreconditionViolatedError("nonincreasing", "d должен не возрастать")
    if any(not 0 <= x <= 1 for x in d):
        raise PreconditionViolatedError("bounds", "значения d вне [0, 1]")
    if not 0 <= eta < 1:
        raise PreconditionViolatedError("eta", f"η = {format_scalar(eta)} вне [0, 1)")
    if sum(d, ZERO) != K + eta:
        raise PreconditionViolatedError("trace", f"Σd = {format_scalar(sum(d, ZERO))} ≠ K + η")
    if not N < M:
        raise PreconditionViolatedError("N<M", f"N = {N}, M = {M}")
    if not 0 <= k <= K:
        raise PreconditionViolatedError("k<=K", f"k = {k}, K = {K}")
    if not k + eta > 0:
        raise PreconditionViolatedError("k+eta>0", "след k + η должен быть положительным")
    if not K - k <= M - N:
        raise PreconditionViolatedError("K-k<=M-N", f"K − k = {K - k}, M − N = {M - N}")
    target = (k + eta) / N
    if not 0 < target < 1:
        raise PreconditionViolatedError("interior_target", f"(k + η)/N = {format_scalar(target)}")

    ones = K - k
    upper_rhs = sum((1 - x for x in d[:ones]), ZERO)
    lower_rhs = sum(d[ones + N:], ZERO)
    g_target = sum((x - target for x in d[ones:] if x > target), ZERO)
    h_target = sum((target - x for x in d[:ones + N] if x < target), ZERO)
    if g_target <= upper_rhs:
        return MinimalElement(k, [target] * N, MinimalCase.CASE1)
    if h_target <= lower_rhs:
        return MinimalElement(k, [target] * N, MinimalCase.CASE2)

    a = _solve_excess(d[ones:], upper_rhs)
    b = -_solve_excess([-x for x in d[:ones + N]], lower_rhs)
    Na = sum(1 for x in d[ones:] if x > a)
    Nb = sum(1 for x in d[:ones + N] if x < b)
    mu = [a] * Na + d[ones + Na:ones + N - Nb] + [b] * Nb
    logger.debug("minimal_element: k=%d, a=%s, b=%s, Na=%d, Nb=%d", k, a, b, Na, Nb)
    return MinimalElement(k, mu, MinimalCase.CASE3, a=a, b=b, Na=Na, Nb=Nb)


def _layers(eta: Fraction, N: int) -> List[int]:
    return list(range(0 if eta > 0 else 1, N))


def _has_interior_accumulation(seq: DiagonalSequence) -> bool:
    # бесконечно много членов в (0, 1/2) и в [1/2, 1)
    return any(t.limit == 0 for t in seq.tails) and any(t.limit == 1 for t in seq.tails)


def _count_open(seq: DiagonalSequence, lo: Fraction, hi: Fraction, limit: int) -> int:
    """Число членов в (lo, hi), но не больше limit."""
    inside = itertools.takewhile(lambda x: x > lo, seq.iter_descending_below(hi))
    return sum(1 for _ in itertools.islice(inside, limit))


def select_epsilon(seq: DiagonalSequence, N: int, eta: Fraction) -> Fraction:
    """
    ε, при котором для каждого слоя k в (ε, (k+η)/N) и в ((k+η)/N, 1 − ε) лежит не меньше N членов.

    ε = min(e_N, 1 − f_N)/2, где e_N — N-й по величине член ниже наименьшей цели,
    f_N — N-й по малости член выше наибольшей цели.
    """
    targets = [(k + eta) / N for k in _layers(eta, N)]
    below = itertools.takewhile(lambda x: x > 0, seq.iter_descending_below(min(targets)))
    above = itertools.takewhile(lambda x: x > 0, seq.reflected().iter_descending_below(1 - max(targets)))
    e_N = next(itertools.islice(below, N - 1, None))
    f_N = 1 - next(itertools.islice(above, N - 1, None))
    return min(e_N, 1 - f_N) / 2


def _epsilon_is_valid(seq: DiagonalSequence, N: int, eta: Fraction, epsilon: Fraction) -> bool:
    if not 0 < epsilon <= HALF:
        return False
    mirrored = seq.reflected()
    for k in _layers(eta, N):
        target = (k + eta) / N
        if _count_open(seq, epsilon, target, N) < N or _count_open(mirrored, epsilon, 1 - target, N) < N:
            return False
    return True


def minimal_set(seq: DiagonalSequence, N: int, epsilon: Optional[Fraction] = None) -> MinimalElementReport:
    """
    Все минимальные элементы Λ_N: μ^k для k = 0..N−1 (без k = 0 при η = 0).

    Args:
        seq: Последовательность из класса F в [0, 1]
        N: Число внутренних собственных значений
        epsilon: Порог усечения; по умолчанию выбирается автоматически

    Raises:
        NotInClassFError: Если seq не из класса F
        HypothesisViolatedError: Если в (0, 1/2) или [1/2, 1) лишь конечное число членов
    """
    if N < 1:
        raise OutOfRangeError("N", N, "N ≥ 1")
    require_within(seq, ZERO, Fraction(1))
    eta = eta_of(seq)
    if not _has_interior_accumulation(seq):
        raise HypothesisViolatedError("interior_accumulation",
                                      "Нужно бесконечно много членов в (0, 1/2) и в [1/2, 1)")
    layers = _layers(eta, N)
    if not layers:
        return MinimalElementReport(eta, [])
    if epsilon is None:
        epsilon = select_epsilon(seq, N, eta)
    elif not _epsilon_is_valid(seq, N, eta, Fraction(epsilon)):
        raise OutOfRangeError("epsilon", format_scalar(epsilon), "по N членов по обе стороны каждой цели")
    epsilon = Fraction(epsilon)
    logger.debug("minimal_set: eta=%s, epsilon=%s", eta, epsilon)

    truncated, _ = truncate_to_finite(seq, epsilon)
    _, interior, _ = split_extremes(truncated)
    d = interior.atom_values()
    K = int(sum(d, ZERO) - eta)
    entries = [minimal_element(d, K, eta, N, k) for k in layers]
    return MinimalElementReport(eta, entries, epsilon=epsilon, interior=d)


class MembershipVerdict:
    """Ответ на вопрос λ ∈ Λ_N с нарушенным условием и значениями f."""

    def __init__(self, member: bool, failed_condition: Optional[str],
                 f_values: Sequence[Tuple[Fraction, Fraction, Fraction]]):
        self.member = member
        self.failed_condition = failed_condition
        self.f_values = list(f_values)

    def to_dict(self) -> Dict[str, Any]:
        data = {
            'member': self.member,
            'f_values': [{'alpha': format_scalar(alpha), 'f_d': format_scalar(f_d), 'f_lambda': format_scalar(f_l)}
                         for alpha, f_d, f_l in self.f_values],
        }
        if self.failed_condition is not None:
            data['failed_condition'] = self.failed_condition
        return data


def membership_report(seq: DiagonalSequence, lam: Sequence[Fraction]) -> MembershipVerdict:
    """
    Критерий λ ∈ Λ_N: C(1/2) − D(1/2) ≡ Σλ (mod 1) и f_d(λ_i) ≥ f_λ(λ_i) для всех i.

    Raises:
        NotInClassFError: Если seq не из класса F
        OutOfRangeError: Если λ_i вне (0, 1)
    """
    lam = [Fraction(x) for x in lam]
    for x in lam:
        if not 0 < x < 1:
            raise OutOfRangeError("lambda", format_scalar(x), "(0, 1)")
    eta = eta_of(seq)
    if frac_mod_one(eta - sum(lam, ZERO)) != 0:
        return MembershipVerdict(False, "trace_mod_1", [])
    spectrum = DiagonalSequence.from_values(lam, bounds=(ZERO, Fraction(1)))
    f_values = []
    failed = None
    for alpha in sorted(set(lam)):
        f_d, f_l = f_value(seq, alpha), f_value(spectrum, alpha)
        f_values.append((alpha, f_d, f_l))
        if failed is None and f_d < f_l:
            failed = f"f:alpha={format_scalar(alpha)}"
    return MembershipVerdict(failed is None, failed, f_values)


def lambda_membership(seq: DiagonalSequence, lam: Sequence[Fraction]) -> bool:
    return membership_report(seq, lam).member


def beta_sequence(beta: Fraction) -> DiagonalSequence:
    """Последовательность β^i ∪ 1 − β^i, i ≥ 1."""
    beta = Fraction(beta)
    if not 0 < beta < 1:
        raise OutOfRangeError("beta", format_scalar(beta), "(0, 1)")
    return DiagonalSequence(tails=beta_tails(beta), bounds=(ZERO, Fraction(1)))
