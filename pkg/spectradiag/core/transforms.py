"""
Преобразования диагональных последовательностей с точными квитанциями сохранения.
"""

import itertools
import logging
import math
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Sequence, Tuple, Union

from .exceptions import (
    BoundsViolatedError,
    BudgetExceededError,
    HypothesisViolatedError,
    NoReceiverError,
    NotInClassFError,
    OrderViolatedError,
    OutOfRangeError,
    SchemaError,
)
from .numerics import DIVERGENT, INFINITE, ExtendedCount, format_scalar, sum_to_json
from .sequences import ZERO, DiagonalSequence, GeometricTail, in_class_F, require_within

logger = logging.getLogger(__name__)

Identity = Tuple[str, object, object, Fraction]


def _widened(seq: DiagonalSequence, lo: Fraction, hi: Fraction) -> DiagonalSequence:
    return seq.with_bounds((min(seq.bounds[0], lo), max(seq.bounds[1], hi)))


class TransformReceipt:
    """Перенесённая масса, затронутые элементы и тождества вида after = before + shift."""

    def __init__(self, moved_mass: Fraction, touched: Dict[str, Any], identities: Sequence[Identity] = ()):
        self.moved_mass = Fraction(moved_mass)
        self.touched = dict(touched)
        self.identities = list(identities)

    def holds(self) -> bool:
        """Все тождества выполняются точно."""
        for _, before, after, shift in self.identities:
            if before is DIVERGENT or after is DIVERGENT:
                if before is not after:
                    return False
            elif after != before + shift:
                return False
        return True

    def restore(self) -> Dict[str, object]:
        """Обратный прогон: значения сумм до преобразования."""
        return {name: after if after is DIVERGENT else after - shift for name, _, after, shift in self.identities}

    def to_dict(self) -> Dict[str, Any]:
        return {
            'moved_mass': format_scalar(self.moved_mass),
            'touched': self.touched,
            'identities': [
                {'name': name, 'before': sum_to_json(before), 'after': sum_to_json(after), 'shift': format_scalar(shift)}
                for name, before, after, shift in self.identities
            ],
            'holds': self.holds(),
        }

    def __repr__(self) -> str:
        return f"TransformReceipt(moved_mass={self.moved_mass}, identities={len(self.identities)})"


def _endpoint_moves(low: List[Fraction], high: List[Fraction], eta0: Fraction,
                    A: Fraction, B: Fraction) -> Tuple[List[Fraction], List[Fraction]]:
    """Снять eta0 с low (от наименьшего к A) и добавить к high (от наибольшего к B)."""
    remaining = eta0
    new_low = []
    for value in sorted(low):
        take = min(remaining, value - A)
        new_low.append(value - take)
        remaining -= take
    remaining = eta0
    new_high = []
    for value in sorted(high, reverse=True):
        give = min(remaining, B - value)
        new_high.append(value + give)
        remaining -= give
    return new_low, new_high


def _check_move(low: List[Fraction], high: List[Fraction], eta0: Fraction, A: Fraction, B: Fraction) -> None:
    if eta0 < 0:
        raise OutOfRangeError("eta0", format_scalar(eta0), "[0, ∞)")
    for value in low + high:
        if not A <= value <= B:
            raise BoundsViolatedError(format_scalar(value), format_scalar(A), format_scalar(B))
    if low and high and max(low) > min(high):
        raise OrderViolatedError(format_scalar(max(low)), format_scalar(min(high)))
    budget = min(sum((v - A for v in low), ZERO), sum((B - v for v in high), ZERO))
    if eta0 > budget:
        raise BudgetExceededError(format_scalar(eta0), format_scalar(budget))


def move_toward_endpoints(seq: DiagonalSequence, I0: Sequence[Fraction], I1: Sequence[Fraction],
                          eta0: Fraction, A: Fraction, B: Fraction) -> Tuple[DiagonalSequence, TransformReceipt]:
    """
    Сдвиг элементов I0 вниз к A и I1 вверх к B на общую массу eta0.

    Args:
        seq: Последовательность
        I0: Значения выбранных конечных атомов (мультимножество)
        I1: Значения выбранных конечных атомов, не пересекающиеся с I0
        eta0: Переносимая масса
        A: Нижняя граница
        B: Верхняя граница

    Raises:
        OrderViolatedError: Если max(I0) > min(I1)
        BudgetExceededError: Если eta0 больше доступной массы
        SchemaError: Если значения нет среди конечных атомов
    """
    low = [Fraction(v) for v in I0]
    high = [Fraction(v) for v in I1]
    A, B, eta0 = Fraction(A), Fraction(B), Fraction(eta0)
    _check_move(low, high, eta0, A, B)
    new_low, new_high = _endpoint_moves(low, high, eta0, A, B)
    result = _widened(seq, A, B).replace_atoms(low + high, new_low + new_high)
    receipt = TransformReceipt(eta0, {'I0': [format_scalar(v) for v in sorted(low)],
                                      'I1': [format_scalar(v) for v in sorted(high, reverse=True)]}, [
        ("I0_mass_above_A", sum((v - A for v in low), ZERO), sum((v - A for v in new_low), ZERO), -eta0),
        ("I1_deficit_below_B", sum((B - v for v in high), ZERO), sum((B - v for v in new_high), ZERO), -eta0),
    ])
    logger.debug("move_toward_endpoints: eta0=%s, I0=%s -> %s, I1=%s -> %s", eta0, low, new_low, high, new_high)
    return result, receipt


def _J_values(seq: DiagonalSequence, J: Dict[str, Any]) -> Tuple[Fraction, Fraction, Union[Fraction, GeometricTail]]:
    """Наименьшее и наибольшее значения J и его источник: хвост или значение бесконечного атома."""
    if 'tail' in J:
        index = J['tail']
        if not isinstance(index, int) or not 0 <= index < len(seq.tails):
            raise SchemaError("J.tail", f"нет хвоста с индексом {index}")
        tail = seq.tails[index]
        return tail.infimum, tail.supremum, tail
    if 'infinite_atom' in J:
        value = Fraction(J['infinite_atom'])
        if value not in seq.infinite_atoms:
            raise SchemaError("J.infinite_atom", f"нет бесконечного атома {format_scalar(value)}")
        return value, value, value
    raise SchemaError("J", "ожидается 'tail' или 'infinite_atom'")


def _positive_side_diverges(source, delta: Fraction) -> bool:
    # Σ_{d≥0}(δ − d) = ∞ по J
    if isinstance(source, Fraction):
        return 0 <= source < delta
    L = source.limit
    if not L < delta:
        return False
    return L > 0 or (L == 0 and source.coefficient > 0)


def _J_json(J: Dict[str, Any]) -> Dict[str, Any]:
    return {key: format_scalar(value) if isinstance(value, Fraction) else value for key, value in J.items()}


def _negated_J(J: Dict[str, Any]) -> Dict[str, Any]:
    if 'infinite_atom' in J:
        return {'infinite_atom': -Fraction(J['infinite_atom'])}
    return dict(J)


def _pick_sets(source, M: int, eta: Fraction, delta: Fraction) -> Tuple[List[Fraction], List[Fraction], int]:
    """
    Конечные I0 (|I0| = M) и I1 из неотрицательной части J с max(I0) ≤ min(I1)
    и Σ_{I1}(δ − d) ≥ η + Σ_{I0} d. Возвращает также число развёрнутых членов хвоста.
    """
    if isinstance(source, Fraction):
        need = eta + M * source
        count = max(1, math.ceil(need / (delta - source)))
        return [source] * M, [source] * count, 0
    terms: List[Fraction] = []

    def term(i: int) -> Fraction:
        while len(terms) < i:
            terms.append(source.term(len(terms) + 1))
        return terms[i - 1]

    if source.coefficient > 0:
        # убывающий хвост: I1 из первых n членов, I0 из следующих M
        n = 1
        while True:
            high = [term(i) for i in range(1, n + 1)]
            low = [term(i) for i in range(n + 1, n + M + 1)]
            if sum((delta - v for v in high), ZERO) >= eta + sum(low, ZERO):
                return low, high, n + M
            n += 1
    start = 1
    while term(start) < 0:
        start += 1
    low = [term(i) for i in range(start, start + M)]
    n = 1
    while True:
        high = [term(i) for i in range(start + M, start + M + n)]
        if sum((delta - v for v in high), ZERO) >= eta + sum(low, ZERO):
            return low, high, start + M + n - 1
        n += 1


def decouple(seq: DiagonalSequence, J: Dict[str, Any], gamma: Fraction, delta: Fraction,
             eta: Fraction) -> Tuple[DiagonalSequence, TransformReceipt]:
    """
    Перенос массы eta через ноль внутри J ⊂ [−γ, δ].

    После преобразования отрицательная часть J уменьшается ровно на eta,
    положительная увеличивается ровно на eta; элементы вне J не меняются.

    Args:
        J: {"tail": индекс} или {"infinite_atom": значение}

    Raises:
        HypothesisViolatedError: Если ни одна сторона J не расходится
        BoundsViolatedError: Если значения J вне [−γ, δ]
    """
    gamma, delta, eta = Fraction(gamma), Fraction(delta), Fraction(eta)
    if gamma <= 0:
        raise OutOfRangeError("gamma", format_scalar(gamma), "(0, ∞)")
    if delta <= 0:
        raise OutOfRangeError("delta", format_scalar(delta), "(0, ∞)")
    if eta < 0:
        raise OutOfRangeError("eta", format_scalar(eta), "[0, ∞)")
    lo, hi, source = _J_values(seq, J)
    if lo < -gamma or hi > delta:
        bad = lo if lo < -gamma else hi
        raise BoundsViolatedError(format_scalar(bad), format_scalar(-gamma), format_scalar(delta))

    if eta == 0:
        return seq, TransformReceipt(ZERO, {'J': _J_json(J), 'M': 0}, [
            ("J_negative_mass", ZERO, ZERO, ZERO), ("J_positive_mass", ZERO, ZERO, ZERO)])

    if not _positive_side_diverges(source, delta):
        mirrored_source = -source if isinstance(source, Fraction) else source.negated()
        if not _positive_side_diverges(mirrored_source, gamma):
            raise HypothesisViolatedError("divergence", "Ни одна сторона J не имеет бесконечной массы до края полосы")
        logger.debug("decouple: зеркальная конструкция на −d")
        mirrored, inner = decouple(seq.negated(), _negated_J(J), delta, gamma, eta)
        identities = {name: (before, after) for name, before, after, _ in inner.identities}
        neg_before, neg_after = identities["J_positive_mass"]
        pos_before, pos_after = identities["J_negative_mass"]
        receipt = TransformReceipt(eta, dict(inner.touched, J=_J_json(J), mirrored=True), [
            ("J_negative_mass", -neg_before, -neg_after, -eta),
            ("J_positive_mass", -pos_before, -pos_after, eta),
        ])
        return mirrored.negated(), receipt

    M = math.ceil(eta / gamma)
    low, high, expanded = _pick_sets(source, M, eta, delta)
    eta0 = eta + sum(low, ZERO)
    base = _widened(seq, -gamma, delta)
    if not isinstance(source, Fraction):
        base = base.expand_tail(J['tail'], expanded)
    new_low, new_high = _endpoint_moves(low, high, eta0, -gamma, delta)
    if isinstance(source, Fraction):
        # копии бесконечного атома: его кратность остаётся бесконечной
        result = base.concat(DiagonalSequence.from_values(new_low + new_high, bounds=base.bounds))
    else:
        result = base.replace_atoms(low + high, new_low + new_high)

    def negative(values):
        return sum((v for v in values if v < 0), ZERO)

    def positive(values):
        return sum((v for v in values if v > 0), ZERO)

    before, after = low + high, new_low + new_high
    receipt = TransformReceipt(eta, {
        'J': _J_json(J),
        'M': M,
        'I0': [format_scalar(v) for v in low],
        'I1': [format_scalar(v) for v in high],
        'eta0': format_scalar(eta0),
    }, [
        ("J_negative_mass", negative(before), negative(after), -eta),
        ("J_positive_mass", positive(before), positive(after), eta),
    ])
    logger.debug("decouple: M=%d, eta0=%s, |I1|=%d", M, eta0, len(high))
    return result, receipt


def _expand_boundary_terms(seq: DiagonalSequence, B: Fraction) -> DiagonalSequence:
    # только первый член хвоста может совпасть с 0 или B
    for index, tail in enumerate(seq.tails):
        if tail.first_term in (ZERO, B):
            return _expand_boundary_terms(seq.expand_tail(index, 1), B)
    return seq


def split_extremes(seq: DiagonalSequence, B: Fraction = Fraction(1)) -> Tuple[ExtendedCount, DiagonalSequence, ExtendedCount]:
    """Разбиение на нули, значения в (0, B) и значения B."""
    B = Fraction(B)
    require_within(seq, ZERO, B)
    seq = _expand_boundary_terms(seq, B)

    def count_of(value: Fraction) -> ExtendedCount:
        if value in seq.infinite_atoms:
            return INFINITE
        return ExtendedCount(sum(n for v, n in seq.atoms if v == value))

    interior = DiagonalSequence(
        atoms=[(v, n) for v, n in seq.atoms if 0 < v < B],
        infinite_atoms=[v for v in seq.infinite_atoms if 0 < v < B],
        tails=seq.tails,
        bounds=(ZERO, B),
    )
    return count_of(ZERO), interior, count_of(B)


def _positive_below(seq: DiagonalSequence, t: Fraction) -> Iterator[Fraction]:
    """Положительные члены < t по невозрастанию."""
    return itertools.takewhile(lambda x: x > 0, seq.iter_descending_below(t))


def _collapse_lower(seq: DiagonalSequence, epsilon: Fraction) -> Tuple[DiagonalSequence, Dict[str, str], Fraction]:
    """Сброс массы членов из (0, t] на наибольший член полосы (0, ε)."""
    if not any(tail.limit == 0 for tail in seq.tails):
        return seq, {}, ZERO
    band = _positive_below(seq, epsilon)
    receiver = next(band, None)
    if receiver is None:
        raise NoReceiverError("(0, ε)", format_scalar(epsilon))
    bound = epsilon - receiver
    total = seq.sum_below(epsilon)
    above, previous, cutoff = receiver, receiver, None
    for value in band:
        if value != previous:
            if total - above < bound:
                cutoff = value
                break
            previous = value
        above += value
    collapsed = total - above

    atoms = [(ZERO if 0 < value <= cutoff else value, count) for value, count in seq.atoms]
    tails, infinite_atoms = [], list(seq.infinite_atoms)
    for tail in seq.tails:
        head = 0
        if tail.limit == 0:
            while tail.term(head + 1) > cutoff:
                head += 1
            atoms.extend((tail.term(i), 1) for i in range(1, head + 1))
            infinite_atoms.append(ZERO)
            continue
        # возрастающий хвост может начинаться внутри полосы (0, ε)
        while tail.coefficient < 0 and tail.term(head + 1) < epsilon:
            head += 1
        atoms.extend((ZERO if tail.term(i) <= cutoff else tail.term(i), 1) for i in range(1, head + 1))
        tails.append(tail.advanced(head))
    collapsed_seq = DiagonalSequence(atoms=atoms, infinite_atoms=infinite_atoms, tails=tails, bounds=seq.bounds)
    result = collapsed_seq.replace_atoms([receiver], [receiver + collapsed])
    logger.debug("Усечение: приёмник %s, порог %s, сброшено %s", receiver, cutoff, collapsed)
    details = {
        'receiver': format_scalar(receiver),
        'cutoff': format_scalar(cutoff),
        'collapsed': format_scalar(collapsed),
    }
    return result, details, collapsed


def truncate_to_finite(seq: DiagonalSequence, epsilon: Fraction) -> Tuple[DiagonalSequence, TransformReceipt]:
    """
    Замена последовательности из класса F на последовательность, у которой
    все члены, кроме конечного числа, равны 0 или 1.

    Массы Σ_{d<ε} d и Σ_{d>1−ε}(1 − d) сохраняются точно, члены в [ε, 1 − ε] не меняются.

    Raises:
        NoReceiverError: Если у последовательности с хвостами нет члена в (0, ε) или (1 − ε, 1)
        NotInClassFError: Если последовательность не из класса F
        OutOfRangeError: Если epsilon вне (0, 1/2]
    """
    epsilon = Fraction(epsilon)
    if not 0 < epsilon <= Fraction(1, 2):
        raise OutOfRangeError("epsilon", format_scalar(epsilon), "(0, 1/2]")
    require_within(seq, ZERO, Fraction(1))

    def lower_mass(s: DiagonalSequence):
        return s.sum_below(epsilon)

    def upper_deficit(s: DiagonalSequence):
        return s.reflected().sum_below(epsilon)

    if not in_class_F(seq):
        raise NotInClassFError()
    if seq.tails:
        for side, s in (("(0, ε)", seq), ("(1 − ε, 1)", seq.reflected())):
            if next(_positive_below(s, epsilon), None) is None:
                raise NoReceiverError(side, format_scalar(epsilon))

    lowered, lower_details, lower_moved = _collapse_lower(seq, epsilon)
    raised, upper_details, upper_moved = _collapse_lower(lowered.reflected(), epsilon)
    result = raised.reflected()
    receipt = TransformReceipt(lower_moved + upper_moved, {
        'epsilon': format_scalar(epsilon),
        'lower': lower_details,
        'upper': {key: format_scalar(1 - Fraction(value)) if key != 'collapsed' else value
                  for key, value in upper_details.items()},
    }, [
        ("mass_below_epsilon", lower_mass(seq), lower_mass(result), ZERO),
        ("deficit_above_1-epsilon", upper_deficit(seq), upper_deficit(result), ZERO),
    ])
    return result, receipt
