"""
Мажоризация конечных векторов, проверки Шура–Хорна и построение
симметричной матрицы с заданными диагональю и спектром.
"""

import enum
import io
import logging
import math
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple, Union

import numpy as np

from .exceptions import HypothesisViolatedError, InfeasibleInputError, LengthMismatchError
from .numerics import format_scalar
from .sequences import GeometricTail

logger = logging.getLogger(__name__)

RealVector = Tuple[Fraction, ...]


class Orientation(enum.Enum):
    NONINCREASING = "NONINCREASING"
    NONDECREASING = "NONDECREASING"


def decreasing_rearrangement(v: Sequence[Fraction]) -> RealVector:
    """Перестановка по невозрастанию (устойчивая для равных элементов)."""
    return tuple(sorted(v, reverse=True))


def majorizes(mu: Sequence[Fraction], lam: Sequence[Fraction]) -> bool:
    """
    Проверка μ ≺ λ.

    Args:
        mu: Мажорируемый вектор
        lam: Мажорирующий вектор

    Returns:
        bool: True, если суммы равны и каждая префиксная сумма λ↓ не меньше суммы μ↓

    Raises:
        LengthMismatchError: Если длины различны
    """
    if len(mu) != len(lam):
        raise LengthMismatchError(len(mu), len(lam))
    running = 0
    for x, y in zip(decreasing_rearrangement(mu), decreasing_rearrangement(lam)):
        running += y - x
        if running < 0:
            return False
    return running == 0


def schur_horn_check(lam: Sequence[Fraction], d: Sequence[Fraction]) -> bool:
    """d является диагональю симметричной матрицы со спектром λ."""
    return majorizes(d, lam)


def prefix_slacks(lam: Sequence[Fraction], d: Sequence[Fraction]) -> List[Tuple[int, Fraction]]:
    """Запасы Σλ↓_{≤n} − Σd↓_{≤n} для n = 1..N."""
    if len(lam) != len(d):
        raise LengthMismatchError(len(lam), len(d))
    slacks, running = [], Fraction(0)
    for n, (x, y) in enumerate(zip(decreasing_rearrangement(d), decreasing_rearrangement(lam)), start=1):
        running += Fraction(y) - Fraction(x)
        slacks.append((n, running))
    return slacks


def _tail_total(item: Union[Fraction, GeometricTail]):
    if isinstance(item, GeometricTail):
        if item.limit != 0:
            return None
        return item.coefficient * item.ratio / (1 - item.ratio)
    return Fraction(item)


def finite_rank_check(lam: Sequence[Fraction], d_interior: Sequence[Fraction],
                      d_tail: Sequence[Union[Fraction, GeometricTail]],
                      orientation: Orientation = Orientation.NONINCREASING) -> bool:
    """
    Критерий диагонали положительного оператора конечного ранга.

    NONINCREASING: Σ_{i≥n} d_i ≥ Σ_{i=n}^{N} λ_i, равенство при n = 1.
    NONDECREASING: Σ_{i≤n} d_i ≥ Σ_{i=1}^{n} λ_i, равенство при n = N.

    Raises:
        LengthMismatchError: Если |λ| ≠ |d_interior|
        HypothesisViolatedError: Если нарушены предположения о порядке и знаке
    """
    lam = [Fraction(x) for x in lam]
    d_interior = [Fraction(x) for x in d_interior]
    if len(lam) != len(d_interior):
        raise LengthMismatchError(len(lam), len(d_interior))
    if not lam:
        raise HypothesisViolatedError("rank", "Ранг оператора должен быть положительным")
    if any(x <= 0 for x in lam):
        raise HypothesisViolatedError("positive", "Собственные значения должны быть положительными")

    decreasing = orientation is Orientation.NONINCREASING
    for seq, name in ((lam, "lambda"), (d_interior, "d_interior")):
        pairs = zip(seq, seq[1:])
        if not all((x >= y) if decreasing else (x <= y) for x, y in pairs):
            raise HypothesisViolatedError("order", f"Вектор {name} не упорядочен как {orientation.value}")

    pivot = d_interior[-1] if decreasing else d_interior[0]
    tail_sum = Fraction(0)
    for item in d_tail:
        lo = item.infimum if isinstance(item, GeometricTail) else Fraction(item)
        hi = item.supremum if isinstance(item, GeometricTail) else Fraction(item)
        if lo < 0 or hi > pivot:
            raise HypothesisViolatedError("tail", f"Член хвоста вне [0, {format_scalar(pivot)}]")
        total = _tail_total(item)
        if total is None:
            return False
        tail_sum += total

    N = len(lam)
    if decreasing:
        for n in range(N):
            lhs = sum(d_interior[n:], Fraction(0)) + tail_sum
            rhs = sum(lam[n:], Fraction(0))
            if lhs < rhs or (n == 0 and lhs != rhs):
                return False
        return True
    for n in range(1, N + 1):
        lhs = tail_sum + sum(d_interior[:n], Fraction(0))
        rhs = sum(lam[:n], Fraction(0))
        if lhs < rhs or (n == N and lhs != rhs):
            return False
    return True


class GivensStep:
    """Шаг цепочки вращений: слияние двух собственных слотов."""

    def __init__(self, target_index: int, upper: Fraction, lower: Fraction, cos2: Fraction):
        self.target_index = target_index
        self.upper = upper
        self.lower = lower
        self.cos2 = cos2

    def to_dict(self) -> Dict[str, Any]:
        return {
            'target_index': self.target_index,
            'upper': format_scalar(self.upper),
            'lower': format_scalar(self.lower),
            'cos2': format_scalar(self.cos2),
        }

    def __repr__(self) -> str:
        return f"GivensStep({self.target_index}: {self.upper}, {self.lower}, cos2={self.cos2})"


class SymmetricMatrixWitness:
    """Вещественная симметричная матрица с точной диагональю."""

    def __init__(self, entries: np.ndarray, diagonal: Sequence[Fraction],
                 eigenvalues: Sequence[Fraction], provenance: Sequence[GivensStep]):
        entries = np.array(entries, dtype=float)
        entries = (entries + entries.T) / 2
        np.fill_diagonal(entries, [float(x) for x in diagonal])
        entries.setflags(write=False)
        self._entries = entries
        self._diagonal = tuple(Fraction(x) for x in diagonal)
        self._eigenvalues = tuple(Fraction(x) for x in eigenvalues)
        self._provenance = tuple(provenance)

    @property
    def dimension(self) -> int:
        return len(self._diagonal)

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def diagonal(self) -> RealVector:
        return self._diagonal

    @property
    def eigenvalues(self) -> RealVector:
        return self._eigenvalues

    @property
    def provenance(self) -> Tuple[GivensStep, ...]:
        return self._provenance

    def entry(self, i: int, j: int) -> float:
        return float(self._entries[min(i, j), max(i, j)])

    def max_deviation(self) -> float:
        return validate_witness(self, self._eigenvalues)

    def to_csv(self) -> str:
        buffer = io.StringIO()
        np.savetxt(buffer, self._entries, fmt="%.17g", delimiter=",")
        return buffer.getvalue()

    def to_dict(self) -> Dict[str, Any]:
        return {
            'dimension': self.dimension,
            'diagonal': [format_scalar(x) for x in self._diagonal],
            'eigenvalues': [format_scalar(x) for x in self._eigenvalues],
            'entries': self._entries.tolist(),
            'provenance': [step.to_dict() for step in self._provenance],
        }

    def __repr__(self) -> str:
        return f"SymmetricMatrixWitness(dimension={self.dimension}, steps={len(self._provenance)})"


def construct_matrix(lam: Sequence[Fraction], d: Sequence[Fraction]) -> SymmetricMatrixWitness:
    """
    Построение симметричной матрицы с диагональю d и спектром λ.

    Цели d обрабатываются по невозрастанию. На каждом шаге слот a (наименьшее значение
    ≥ цели) и слот b (наибольшее ≤ цели) сливаются вращением с c² = (d − b)/(a − b), c ≥ 0;
    остаток a + b − d остаётся на месте слитой пары.

    Raises:
        LengthMismatchError: Если |λ| ≠ |d|
        InfeasibleInputError: Если d не мажорируется λ
    """
    lam = [Fraction(x) for x in lam]
    d = [Fraction(x) for x in d]
    if len(lam) != len(d):
        raise LengthMismatchError(len(lam), len(d))
    if not schur_horn_check(lam, d):
        raise InfeasibleInputError("диагональ не мажорируется спектром")

    n = len(d)
    if n == 0:
        raise InfeasibleInputError("пустая диагональ")
    spectrum = sorted(lam, reverse=True)
    identity = np.eye(n)
    slots: List[Tuple[Fraction, np.ndarray]] = [(value, identity[i]) for i, value in enumerate(spectrum)]
    basis: List[np.ndarray] = [None] * n
    steps: List[GivensStep] = []

    order = sorted(range(n), key=lambda i: d[i], reverse=True)
    for target_index in order[:-1]:
        target = d[target_index]
        hit = next((i for i, (value, _) in enumerate(slots) if value == target), None)
        if hit is not None:
            value, vector = slots.pop(hit)
            basis[target_index] = vector
            steps.append(GivensStep(target_index, value, value, Fraction(1)))
            continue
        k = next((i for i in range(len(slots) - 1) if slots[i][0] > target > slots[i + 1][0]), None)
        if k is None:
            raise InfeasibleInputError(f"нет пары слотов для цели {format_scalar(target)}")
        (upper, u_vec), (lower, l_vec) = slots[k], slots[k + 1]
        cos2 = (target - lower) / (upper - lower)
        c, s = math.sqrt(cos2), math.sqrt(1 - cos2)
        basis[target_index] = c * u_vec + s * l_vec
        slots[k:k + 2] = [(upper + lower - target, -s * u_vec + c * l_vec)]
        steps.append(GivensStep(target_index, upper, lower, cos2))
        logger.debug("Вращение: цель %s, слоты (%s, %s), cos2=%s", target, upper, lower, cos2)

    last = order[-1]
    value, vector = slots[0]
    if value != d[last]:
        raise InfeasibleInputError("след не совпадает")
    basis[last] = vector

    U = np.column_stack(basis)
    entries = U.T @ np.diag([float(x) for x in spectrum]) @ U
    return SymmetricMatrixWitness(entries, d, lam, steps)


def validate_witness(witness: SymmetricMatrixWitness, lam: Sequence[Fraction]) -> float:
    """Максимальное отклонение собственных значений матрицы от λ."""
    if len(lam) != witness.dimension:
        raise LengthMismatchError(len(lam), witness.dimension)
    if witness.dimension == 0:
        return 0.0
    computed = np.linalg.eigvalsh(witness.entries)
    target = np.sort(np.array([float(x) for x in lam]))
    return float(np.max(np.abs(np.sort(computed) - target)))
