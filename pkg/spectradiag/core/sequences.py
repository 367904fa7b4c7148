"""
Модель диагональной последовательности {d_i}.

Последовательность задаётся в замкнутой форме: конечные атомы (значение, кратность),
атомы бесконечной кратности и геометрические хвосты limit + coeff·ratio^i, i ≥ 1.
Все ряды, возникающие в условиях мажоризации, суммируются точно.
"""

import heapq
import logging
from collections import Counter
from fractions import Fraction
from typing import Any, Dict, Iterable, Iterator, List, Optional, Tuple

from .exceptions import BoundsViolatedError, NotInClassFError, OutOfRangeError, SchemaError
from .numerics import (
    DIVERGENT,
    INFINITE,
    ExtendedCount,
    add_sums,
    format_scalar,
    parse_scalar,
    sum_to_json,
)

logger = logging.getLogger(__name__)

ZERO = Fraction(0)


def _neg(value):
    return DIVERGENT if value is DIVERGENT else -value


class GeometricTail:
    """Счётное семейство членов limit + coefficient·ratio^i, i ≥ 1."""

    def __init__(self, limit: Fraction, coefficient: Fraction, ratio: Fraction):
        limit, coefficient, ratio = Fraction(limit), Fraction(coefficient), Fraction(ratio)
        if coefficient == 0:
            raise OutOfRangeError("coeff", coefficient, "≠ 0")
        if not 0 < ratio < 1:
            raise OutOfRangeError("ratio", ratio, "(0, 1)")
        self._limit = limit
        self._coefficient = coefficient
        self._ratio = ratio

    @property
    def limit(self) -> Fraction:
        return self._limit

    @property
    def coefficient(self) -> Fraction:
        return self._coefficient

    @property
    def ratio(self) -> Fraction:
        return self._ratio

    @property
    def first_term(self) -> Fraction:
        return self._limit + self._coefficient * self._ratio

    @property
    def is_decreasing(self) -> bool:
        """Члены убывают к пределу сверху."""
        return self._coefficient > 0

    @property
    def infimum(self) -> Fraction:
        return min(self._limit, self.first_term)

    @property
    def supremum(self) -> Fraction:
        return max(self._limit, self.first_term)

    def term(self, i: int) -> Fraction:
        if i < 1:
            raise OutOfRangeError("i", i, "i ≥ 1")
        return self._limit + self._coefficient * self._ratio ** i

    def terms(self) -> Iterator[Fraction]:
        power = self._ratio
        while True:
            yield self._limit + self._coefficient * power
            power *= self._ratio

    def deviation_mass(self) -> Fraction:
        """Σ |coeff|·ratio^i."""
        return abs(self._coefficient) * self._ratio / (1 - self._ratio)

    def _remainder(self, start: int) -> Fraction:
        # Σ_{i ≥ start} coeff·ratio^i
        return self._coefficient * self._ratio ** start / (1 - self._ratio)

    def _head(self, keep) -> List[Fraction]:
        """Начальные члены, пока keep(term) истинно; keep обязан ложно выполняться у предела."""
        head = []
        for x in self.terms():
            if not keep(x):
                break
            head.append(x)
        return head

    def shifted(self, c: Fraction) -> "GeometricTail":
        return GeometricTail(self._limit + c, self._coefficient, self._ratio)

    def negated(self) -> "GeometricTail":
        return GeometricTail(-self._limit, -self._coefficient, self._ratio)

    def reflected(self, B: Fraction) -> "GeometricTail":
        """Отражение d ↦ B − d."""
        return GeometricTail(B - self._limit, -self._coefficient, self._ratio)

    def scaled(self, s: Fraction) -> "GeometricTail":
        return GeometricTail(self._limit * s, self._coefficient * s, self._ratio)

    def advanced(self, h: int) -> "GeometricTail":
        """Хвост без первых h членов."""
        return GeometricTail(self._limit, self._coefficient * self._ratio ** h, self._ratio)

    def split_below(self, alpha: Fraction) -> Tuple[ExtendedCount, object]:
        """Число членов < alpha и их сумма (или DIVERGENT)."""
        L = self._limit
        if self._coefficient > 0:
            if L >= alpha:
                return ExtendedCount(0), ZERO
            head = self._head(lambda x: x >= alpha)
            if L != 0:
                return INFINITE, DIVERGENT
            return INFINITE, self._remainder(len(head) + 1)
        if L <= alpha:
            if L != 0:
                return INFINITE, DIVERGENT
            return INFINITE, self._remainder(1)
        head = self._head(lambda x: x < alpha)
        return ExtendedCount(len(head)), sum(head, ZERO)

    def split_at_least(self, alpha: Fraction, B: Fraction) -> Tuple[ExtendedCount, object]:
        """Число членов ≥ alpha и сумма дефектов B − d (или DIVERGENT)."""
        L = self._limit
        if self._coefficient > 0:
            if L >= alpha:
                if L != B:
                    return INFINITE, DIVERGENT
                return INFINITE, -self._remainder(1)
            head = self._head(lambda x: x >= alpha)
            return ExtendedCount(len(head)), sum((B - x for x in head), ZERO)
        if L <= alpha:
            return ExtendedCount(0), ZERO
        head = self._head(lambda x: x < alpha)
        if L != B:
            return INFINITE, DIVERGENT
        return INFINITE, -self._remainder(len(head) + 1)

    def excess_below(self, t: Fraction):
        """Σ_{d ≤ t}(t − d)."""
        L = self._limit
        if self._coefficient > 0:
            return ZERO if L >= t else DIVERGENT
        if L <= t:
            return -self._remainder(1) if L == t else DIVERGENT
        head = self._head(lambda x: x <= t)
        return sum((t - x for x in head), ZERO)

    def excess_above(self, t: Fraction):
        """Σ_{d ≥ t}(d − t)."""
        return self.negated().excess_below(-t)

    def count_between(self, lo: Fraction, hi: Fraction) -> ExtendedCount:
        """Число членов в [lo, hi)."""
        if lo >= hi:
            return ExtendedCount(0)
        L, c = self._limit, self._coefficient
        if lo < L < hi:
            return INFINITE
        if L == lo:
            return INFINITE if c > 0 else ExtendedCount(0)
        if L == hi:
            return INFINITE if c < 0 else ExtendedCount(0)
        if L < lo:
            if c < 0:
                return ExtendedCount(0)
            head = self._head(lambda x: x >= lo)
            return ExtendedCount(sum(1 for x in head if x < hi))
        if c > 0:
            return ExtendedCount(0)
        head = self._head(lambda x: x < hi)
        return ExtendedCount(sum(1 for x in head if x >= lo))

    def descending_below(self, t: Fraction) -> Iterator[Fraction]:
        """Члены < t в порядке невозрастания."""
        if self._coefficient > 0:
            if self._limit >= t:
                return
            for x in self.terms():
                if x < t:
                    yield x
        else:
            if self._limit <= t:
                raise ValueError("У возрастающего хвоста с пределом ≤ t нет наибольшего члена < t")
            yield from reversed(self._head(lambda x: x < t))

    def to_dict(self) -> Dict[str, str]:
        return {
            'limit': format_scalar(self._limit),
            'coeff': format_scalar(self._coefficient),
            'ratio': format_scalar(self._ratio),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any], field: str = "tail") -> "GeometricTail":
        try:
            return cls(parse_scalar(data['limit']), parse_scalar(data['coeff']), parse_scalar(data['ratio']))
        except KeyError as e:
            raise SchemaError(f"{field}.{e.args[0]}", "обязательное поле отсутствует") from None
        except (TypeError, OutOfRangeError) as e:
            raise SchemaError(field, str(e)) from None

    def _key(self) -> Tuple[Fraction, Fraction, Fraction]:
        return (self._limit, self._coefficient, self._ratio)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GeometricTail):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return f"GeometricTail(limit={self._limit}, coeff={self._coefficient}, ratio={self._ratio})"


class DiagonalSequence:
    """Диагональная последовательность: атомы, бесконечные атомы и геометрические хвосты."""

    def __init__(self, atoms: Iterable[Tuple[Fraction, int]] = (),
                 infinite_atoms: Iterable[Fraction] = (),
                 tails: Iterable[GeometricTail] = (),
                 bounds: Optional[Tuple[Fraction, Fraction]] = None):
        """
        Инициализация последовательности.

        Args:
            atoms: Пары (значение, кратность) с натуральной кратностью
            infinite_atoms: Значения бесконечной кратности
            tails: Геометрические хвосты
            bounds: Отрезок [lo, hi], содержащий все значения (по умолчанию оболочка значений)

        Raises:
            BoundsViolatedError: Если значение вне bounds
        """
        infinite = sorted({Fraction(v) for v in infinite_atoms})
        counter: Counter = Counter()
        for value, count in atoms:
            if isinstance(count, bool) or not isinstance(count, int) or count < 0:
                raise OutOfRangeError("count", count, "натуральные числа")
            if count:
                counter[Fraction(value)] += count
        infinite_set = set(infinite)
        self._atoms = tuple(sorted((v, n) for v, n in counter.items() if v not in infinite_set))
        self._infinite_atoms = tuple(infinite)
        self._tails = tuple(tails)

        value_range = self._hull()
        if bounds is None:
            bounds = value_range if value_range is not None else (ZERO, Fraction(1))
        lo, hi = Fraction(bounds[0]), Fraction(bounds[1])
        if lo > hi:
            raise OutOfRangeError("bounds", f"[{lo}, {hi}]", "lo ≤ hi")
        if value_range is not None:
            if value_range[0] < lo:
                raise BoundsViolatedError(value_range[0], lo, hi)
            if value_range[1] > hi:
                raise BoundsViolatedError(value_range[1], lo, hi)
        self._bounds = (lo, hi)

    def _hull(self) -> Optional[Tuple[Fraction, Fraction]]:
        points = [v for v, _ in self._atoms] + list(self._infinite_atoms)
        for tail in self._tails:
            points.extend((tail.infimum, tail.supremum))
        if not points:
            return None
        return min(points), max(points)

    @classmethod
    def from_values(cls, values: Iterable[Fraction], bounds=None) -> "DiagonalSequence":
        """Конечная последовательность из списка значений."""
        counter = Counter(Fraction(v) for v in values)
        return cls(atoms=counter.items(), bounds=bounds)

    @property
    def atoms(self) -> Tuple[Tuple[Fraction, int], ...]:
        return self._atoms

    @property
    def infinite_atoms(self) -> Tuple[Fraction, ...]:
        return self._infinite_atoms

    @property
    def tails(self) -> Tuple[GeometricTail, ...]:
        return self._tails

    @property
    def bounds(self) -> Tuple[Fraction, Fraction]:
        return self._bounds

    @property
    def is_finite(self) -> bool:
        return not self._infinite_atoms and not self._tails

    def value_range(self) -> Optional[Tuple[Fraction, Fraction]]:
        """Наименьшее и наибольшее значения (inf/sup для хвостов)."""
        return self._hull()

    def cardinality(self) -> ExtendedCount:
        if not self.is_finite:
            return INFINITE
        return ExtendedCount(sum(n for _, n in self._atoms))

    def atom_values(self) -> List[Fraction]:
        """Конечные атомы, развёрнутые с кратностью, по невозрастанию."""
        values = []
        for value, count in reversed(self._atoms):
            values.extend([value] * count)
        return values

    def _rebuild(self, atoms=None, infinite_atoms=None, tails=None, bounds=None) -> "DiagonalSequence":
        return DiagonalSequence(
            atoms=self._atoms if atoms is None else atoms,
            infinite_atoms=self._infinite_atoms if infinite_atoms is None else infinite_atoms,
            tails=self._tails if tails is None else tails,
            bounds=self._bounds if bounds is None else bounds,
        )

    def with_bounds(self, bounds: Tuple[Fraction, Fraction]) -> "DiagonalSequence":
        return self._rebuild(bounds=bounds)

    def concat(self, other: "DiagonalSequence") -> "DiagonalSequence":
        """Объединение мультимножеств двух последовательностей."""
        lo = min(self._bounds[0], other._bounds[0])
        hi = max(self._bounds[1], other._bounds[1])
        return DiagonalSequence(
            atoms=self._atoms + other._atoms,
            infinite_atoms=self._infinite_atoms + other._infinite_atoms,
            tails=self._tails + other._tails,
            bounds=(lo, hi),
        )

    def shifted(self, c: Fraction) -> "DiagonalSequence":
        c = Fraction(c)
        return DiagonalSequence(
            atoms=[(v + c, n) for v, n in self._atoms],
            infinite_atoms=[v + c for v in self._infinite_atoms],
            tails=[t.shifted(c) for t in self._tails],
            bounds=(self._bounds[0] + c, self._bounds[1] + c),
        )

    def scaled(self, s: Fraction) -> "DiagonalSequence":
        s = Fraction(s)
        if s <= 0:
            raise OutOfRangeError("s", s, "(0, ∞)")
        return DiagonalSequence(
            atoms=[(v * s, n) for v, n in self._atoms],
            infinite_atoms=[v * s for v in self._infinite_atoms],
            tails=[t.scaled(s) for t in self._tails],
            bounds=(self._bounds[0] * s, self._bounds[1] * s),
        )

    def negated(self) -> "DiagonalSequence":
        return DiagonalSequence(
            atoms=[(-v, n) for v, n in self._atoms],
            infinite_atoms=[-v for v in self._infinite_atoms],
            tails=[t.negated() for t in self._tails],
            bounds=(-self._bounds[1], -self._bounds[0]),
        )

    def reflected(self, B: Fraction = Fraction(1)) -> "DiagonalSequence":
        """Отражение d ↦ B − d."""
        B = Fraction(B)
        return DiagonalSequence(
            atoms=[(B - v, n) for v, n in self._atoms],
            infinite_atoms=[B - v for v in self._infinite_atoms],
            tails=[t.reflected(B) for t in self._tails],
            bounds=(B - self._bounds[1], B - self._bounds[0]),
        )

    def expand_tail(self, index: int, h: int) -> "DiagonalSequence":
        """Первые h членов хвоста index становятся конечными атомами."""
        tail = self._tails[index]
        head = [tail.term(i) for i in range(1, h + 1)]
        tails = list(self._tails)
        tails[index] = tail.advanced(h)
        return self._rebuild(atoms=self._atoms + tuple((v, 1) for v in head), tails=tails)

    def replace_atoms(self, removed: Iterable[Fraction], added: Iterable[Fraction]) -> "DiagonalSequence":
        """Замена части конечных атомов (мультимножество removed) на added."""
        counter = Counter(dict(self._atoms))
        for value in removed:
            value = Fraction(value)
            if counter[value] <= 0:
                raise SchemaError("selection", f"значение {format_scalar(value)} отсутствует среди конечных атомов")
            counter[value] -= 1
        counter.update(Fraction(v) for v in added)
        return self._rebuild(atoms=[(v, n) for v, n in counter.items() if n > 0])

    def total_sum(self):
        """Σ d_i или DIVERGENT, если ряд не сходится абсолютно."""
        parts = [v * n for v, n in self._atoms]
        if any(v != 0 for v in self._infinite_atoms):
            return DIVERGENT
        for tail in self._tails:
            if tail.limit != 0:
                return DIVERGENT
            parts.append(tail.coefficient * tail.ratio / (1 - tail.ratio))
        return add_sums(*parts)

    def sum_below(self, alpha: Fraction):
        """Σ_{d < alpha} d или DIVERGENT."""
        parts = [v * n for v, n in self._atoms if v < alpha]
        if any(v < alpha and v != 0 for v in self._infinite_atoms):
            return DIVERGENT
        parts.extend(tail.split_below(alpha)[1] for tail in self._tails)
        return add_sums(*parts)

    def sum_above(self, alpha: Fraction):
        """Σ_{d > alpha} d или DIVERGENT."""
        return _neg(self.negated().sum_below(-alpha))

    def count_between(self, lo: Fraction, hi: Fraction) -> ExtendedCount:
        """Число членов в [lo, hi)."""
        total = ExtendedCount(sum(n for v, n in self._atoms if lo <= v < hi))
        if any(lo <= v < hi for v in self._infinite_atoms):
            return INFINITE
        for tail in self._tails:
            total = total + tail.count_between(lo, hi)
        return total

    def excess_below(self, t: Fraction):
        """Σ_{d ≤ t}(t − d) или DIVERGENT."""
        parts = [(t - v) * n for v, n in self._atoms if v <= t]
        if any(v < t for v in self._infinite_atoms):
            return DIVERGENT
        parts.extend(tail.excess_below(t) for tail in self._tails)
        return add_sums(*parts)

    def excess_above(self, t: Fraction):
        """Σ_{d ≥ t}(d − t) или DIVERGENT."""
        return self.negated().excess_below(-t)

    def iter_descending_below(self, t: Fraction) -> Iterator[Fraction]:
        """Все члены < t по невозрастанию (с кратностью)."""
        streams = [iter([v for v in self.atom_values() if v < t])]
        for value in self._infinite_atoms:
            if value < t:
                streams.append(_repeat(value))
        streams.extend(tail.descending_below(t) for tail in self._tails)
        return heapq.merge(*streams, reverse=True)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'bounds': [format_scalar(self._bounds[0]), format_scalar(self._bounds[1])],
            'atoms': [{'value': format_scalar(v), 'count': n} for v, n in self._atoms],
            'infinite_atoms': [format_scalar(v) for v in self._infinite_atoms],
            'tails': [t.to_dict() for t in self._tails],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "DiagonalSequence":
        """Создание последовательности из JSON-документа."""
        if not isinstance(data, dict):
            raise SchemaError("sequence", "ожидается объект")
        try:
            atoms = []
            for i, item in enumerate(data.get('atoms', [])):
                if 'value' not in item:
                    raise SchemaError(f"atoms[{i}].value", "обязательное поле отсутствует")
                count = item.get('count', 1)
                if isinstance(count, bool) or not isinstance(count, int) or count < 1:
                    raise SchemaError(f"atoms[{i}].count", "ожидается натуральное число ≥ 1")
                atoms.append((parse_scalar(item['value']), count))
            infinite_atoms = [parse_scalar(v) for v in data.get('infinite_atoms', [])]
            tails = [GeometricTail.from_dict(t, f"tails[{i}]") for i, t in enumerate(data.get('tails', []))]
            bounds = data.get('bounds')
            if bounds is not None:
                if not isinstance(bounds, list) or len(bounds) != 2:
                    raise SchemaError("bounds", "ожидается пара [lo, hi]")
                bounds = (parse_scalar(bounds[0]), parse_scalar(bounds[1]))
        except (TypeError, AttributeError) as e:
            raise SchemaError("sequence", str(e)) from None
        return cls(atoms=atoms, infinite_atoms=infinite_atoms, tails=tails, bounds=bounds)

    def _key(self):
        return (self._atoms, self._infinite_atoms, self._tails, self._bounds)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DiagonalSequence):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __str__(self) -> str:
        parts = [f"{format_scalar(v)}×{n}" for v, n in self._atoms]
        parts += [f"{format_scalar(v)}×inf" for v in self._infinite_atoms]
        parts += [f"{format_scalar(t.limit)}{'+' if t.coefficient > 0 else '-'}{format_scalar(abs(t.coefficient))}·({format_scalar(t.ratio)})^i" for t in self._tails]
        return "{" + ", ".join(parts) + "}"

    def __repr__(self) -> str:
        return f"DiagonalSequence({self})"


def _repeat(value: Fraction) -> Iterator[Fraction]:
    while True:
        yield value


def beta_tails(beta: Fraction) -> Tuple[GeometricTail, GeometricTail]:
    """Хвосты β^i и 1 − β^i."""
    return GeometricTail(0, 1, beta), GeometricTail(1, -1, beta)


class CutStatistics:
    """Статистики разреза C(α), D(α) и мощности по обе стороны порога."""

    def __init__(self, alpha: Fraction, B: Fraction, C, D,
                 count_below: ExtendedCount, count_at_least: ExtendedCount):
        self._alpha = alpha
        self._B = B
        self._C = C
        self._D = D
        self._count_below = count_below
        self._count_at_least = count_at_least

    @property
    def alpha(self) -> Fraction:
        return self._alpha

    @property
    def B(self) -> Fraction:
        return self._B

    @property
    def C(self):
        """Σ_{d < α} d или DIVERGENT."""
        return self._C

    @property
    def D(self):
        """Σ_{d ≥ α}(B − d) или DIVERGENT."""
        return self._D

    @property
    def count_below(self) -> ExtendedCount:
        return self._count_below

    @property
    def count_at_least(self) -> ExtendedCount:
        return self._count_at_least

    @property
    def is_summable(self) -> bool:
        return self._C is not DIVERGENT and self._D is not DIVERGENT

    def difference(self) -> Fraction:
        """C(α) − D(α); разность расходящихся величин не образуется."""
        if not self.is_summable:
            raise NotInClassFError(f"C или D расходится при α={format_scalar(self._alpha)}")
        return self._C - self._D

    def to_dict(self) -> Dict[str, Any]:
        return {
            'alpha': format_scalar(self._alpha),
            'B': format_scalar(self._B),
            'C': sum_to_json(self._C),
            'D': sum_to_json(self._D),
            'count_below': self._count_below.to_json(),
            'count_at_least': self._count_at_least.to_json(),
        }

    def __repr__(self) -> str:
        return f"CutStatistics(alpha={self._alpha}, C={self._C}, D={self._D})"


def cut_stats(seq: DiagonalSequence, alpha: Fraction, B: Fraction = Fraction(1)) -> CutStatistics:
    """
    Точные C(α) = Σ_{d<α} d и D(α) = Σ_{d≥α}(B − d).

    Raises:
        OutOfRangeError: Если alpha вне (0, B)
    """
    alpha, B = Fraction(alpha), Fraction(B)
    if not 0 < alpha < B:
        raise OutOfRangeError("alpha", format_scalar(alpha), f"(0, {format_scalar(B)})")

    c_parts, d_parts = [], []
    below, at_least = ExtendedCount(0), ExtendedCount(0)
    for value, count in seq.atoms:
        if value < alpha:
            c_parts.append(value * count)
            below = below + count
        else:
            d_parts.append((B - value) * count)
            at_least = at_least + count
    for value in seq.infinite_atoms:
        if value < alpha:
            below = INFINITE
            c_parts.append(DIVERGENT if value != 0 else ZERO)
        else:
            at_least = INFINITE
            d_parts.append(DIVERGENT if value != B else ZERO)
    for tail in seq.tails:
        n_below, c_tail = tail.split_below(alpha)
        n_above, d_tail = tail.split_at_least(alpha, B)
        below = below + n_below
        at_least = at_least + n_above
        c_parts.append(c_tail)
        d_parts.append(d_tail)
    return CutStatistics(alpha, B, add_sums(*c_parts), add_sums(*d_parts), below, at_least)


def require_within(seq: DiagonalSequence, lo: Fraction, hi: Fraction) -> None:
    """
    Все значения seq лежат в [lo, hi].

    Raises:
        BoundsViolatedError: Если некоторое значение вне отрезка
    """
    value_range = seq.value_range()
    if value_range is None:
        return
    if value_range[0] < lo:
        raise BoundsViolatedError(format_scalar(value_range[0]), format_scalar(lo), format_scalar(hi))
    if value_range[1] > hi:
        raise BoundsViolatedError(format_scalar(value_range[1]), format_scalar(lo), format_scalar(hi))


def in_class_F(seq: DiagonalSequence, B: Fraction = Fraction(1)) -> bool:
    """Класс F: C(α), D(α) конечны хотя бы при одном α ∈ (0, B)."""
    B = Fraction(B)
    require_within(seq, ZERO, B)
    if any(0 < v < B for v in seq.infinite_atoms):
        return False
    return all(tail.limit in (0, B) for tail in seq.tails)


def f_value(seq: DiagonalSequence, alpha: Fraction) -> Fraction:
    """
    Функция следа f_d(α) = (1 − α)·C(α) + α·D(α) при B = 1.

    Raises:
        NotInClassFError: Если seq не из класса F
        OutOfRangeError: Если alpha вне (0, 1)
    """
    if not in_class_F(seq):
        raise NotInClassFError()
    alpha = Fraction(alpha)
    stats = cut_stats(seq, alpha, Fraction(1))
    return (1 - alpha) * stats.C + alpha * stats.D


def f_grid(seq: DiagonalSequence, grid: int) -> List[Tuple[Fraction, Fraction]]:
    """Значения f_d на сетке α = i/(grid + 1), i = 1..grid."""
    if grid < 1:
        raise OutOfRangeError("grid", grid, "grid ≥ 1")
    points = [Fraction(i, grid + 1) for i in range(1, grid + 1)]
    logger.debug("f_grid: %d точек", len(points))
    return [(alpha, f_value(seq, alpha)) for alpha in points]
