"""Списки собственных значений с кратностями и их нормализация в рамку (m, n, p, B)."""

import enum
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Tuple, Union

from .exceptions import NotEnoughInfiniteError, OutOfRangeError, SchemaError
from .numerics import ExtendedCount, format_scalar, parse_scalar


class SpectrumClass(enum.Enum):
    ALL_FINITE = "ALL_FINITE"
    ONE_INFINITE = "ONE_INFINITE"
    TWO_INFINITE = "TWO_INFINITE"
    MANY_INFINITE = "MANY_INFINITE"


class SpectrumSpec:
    """Список {(A_j, N_j)} со строго возрастающими A_j и N_j ∈ ℕ ∪ {∞}."""

    def __init__(self, pairs: Iterable[Tuple[Fraction, Union[int, ExtendedCount]]]):
        """
        Инициализация спектра.

        Args:
            pairs: Пары (собственное значение, кратность)

        Raises:
            OutOfRangeError: Если значения не возрастают строго или кратность меньше 1
        """
        normalized = [(Fraction(value), ExtendedCount.of(count)) for value, count in pairs]
        if not normalized:
            raise OutOfRangeError("pairs", "[]", "непустой список")
        for (a, _), (b, _) in zip(normalized, normalized[1:]):
            if not a < b:
                raise OutOfRangeError("eigenvalue", format_scalar(b), f"> {format_scalar(a)}")
        for value, count in normalized:
            if count < 1:
                raise OutOfRangeError("multiplicity", count, "≥ 1")
        self._pairs = tuple(normalized)

    @property
    def pairs(self) -> Tuple[Tuple[Fraction, ExtendedCount], ...]:
        return self._pairs

    @property
    def eigenvalues(self) -> Tuple[Fraction, ...]:
        return tuple(value for value, _ in self._pairs)

    @property
    def multiplicities(self) -> Tuple[ExtendedCount, ...]:
        return tuple(count for _, count in self._pairs)

    def infinite_indices(self) -> List[int]:
        return [i for i, (_, count) in enumerate(self._pairs) if count.is_infinite]

    def eigenvalue_range(self) -> Tuple[Fraction, Fraction]:
        return self._pairs[0][0], self._pairs[-1][0]

    def total_multiplicity(self) -> ExtendedCount:
        return sum((count for _, count in self._pairs), ExtendedCount(0))

    def eigenvalue_list(self) -> List[Fraction]:
        """Собственные значения с кратностью (только для конечного спектра)."""
        if self.total_multiplicity().is_infinite:
            raise OutOfRangeError("multiplicity", "inf", "конечные кратности")
        values = []
        for value, count in self._pairs:
            values.extend([value] * int(count))
        return values

    def translated(self, c: Fraction) -> "SpectrumSpec":
        return SpectrumSpec((value + Fraction(c), count) for value, count in self._pairs)

    def scaled(self, s: Fraction) -> "SpectrumSpec":
        s = Fraction(s)
        if s <= 0:
            raise OutOfRangeError("s", s, "(0, ∞)")
        return SpectrumSpec((value * s, count) for value, count in self._pairs)

    def to_dict(self) -> Dict[str, Any]:
        return {'pairs': [{'eigenvalue': format_scalar(v), 'multiplicity': n.to_json()} for v, n in self._pairs]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "SpectrumSpec":
        """Создание спектра из JSON-документа."""
        if not isinstance(data, dict) or not isinstance(data.get('pairs'), list):
            raise SchemaError("pairs", "ожидается список пар")
        pairs = []
        for i, item in enumerate(data['pairs']):
            if not isinstance(item, dict):
                raise SchemaError(f"pairs[{i}]", "ожидается объект")
            for key in ('eigenvalue', 'multiplicity'):
                if key not in item:
                    raise SchemaError(f"pairs[{i}].{key}", "обязательное поле отсутствует")
            try:
                count = ExtendedCount.from_json(item['multiplicity'])
            except ValueError as e:
                raise SchemaError(f"pairs[{i}].multiplicity", str(e)) from None
            pairs.append((parse_scalar(item['eigenvalue']), count))
        return cls(pairs)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SpectrumSpec):
            return NotImplemented
        return self._pairs == other._pairs

    def __hash__(self) -> int:
        return hash(self._pairs)

    def __str__(self) -> str:
        return "{" + ", ".join(f"({format_scalar(v)}, {n})" for v, n in self._pairs) + "}"

    def __repr__(self) -> str:
        return f"SpectrumSpec({self})"


def classify(spec: SpectrumSpec) -> SpectrumClass:
    count = len(spec.infinite_indices())
    if count == 0:
        return SpectrumClass.ALL_FINITE
    if count == 1:
        return SpectrumClass.ONE_INFINITE
    if count == 2:
        return SpectrumClass.TWO_INFINITE
    return SpectrumClass.MANY_INFINITE


class NormalizedSpec:
    """
    Спектр в рамке {(A_j, N_j)}, j = −m..n+p+1, со сдвигом A_0 = 0.

    A_0 — наименьшее, A_{n+1} = B — наибольшее собственное значение бесконечной кратности.
    """

    def __init__(self, m: int, n: int, p: int, values: Tuple[Fraction, ...],
                 counts: Tuple[ExtendedCount, ...], translation: Fraction):
        self._m = m
        self._n = n
        self._p = p
        self._values = values
        self._counts = counts
        self._translation = translation

    @property
    def m(self) -> int:
        return self._m

    @property
    def n(self) -> int:
        return self._n

    @property
    def p(self) -> int:
        return self._p

    @property
    def B(self) -> Fraction:
        return self.A(self._n + 1)

    @property
    def translation(self) -> Fraction:
        return self._translation

    @property
    def indices(self) -> range:
        return range(-self._m, self._n + self._p + 2)

    def A(self, j: int) -> Fraction:
        return self._values[j + self._m]

    def N(self, j: int) -> ExtendedCount:
        return self._counts[j + self._m]

    def interior_indices(self) -> range:
        return range(1, self._n + 1)

    def denormalized(self) -> SpectrumSpec:
        return SpectrumSpec((value + self._translation, count) for value, count in zip(self._values, self._counts))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'm': self._m,
            'n': self._n,
            'p': self._p,
            'B': format_scalar(self.B),
            'translation': format_scalar(self._translation),
            'A': [format_scalar(v) for v in self._values],
            'N': [c.to_json() for c in self._counts],
        }

    def __repr__(self) -> str:
        return f"NormalizedSpec(m={self._m}, n={self._n}, p={self._p}, B={self.B}, translation={self._translation})"


def normalize(spec: SpectrumSpec) -> NormalizedSpec:
    """
    Переиндексация спектра с двумя и более бесконечными кратностями.

    Raises:
        NotEnoughInfiniteError: Если бесконечных кратностей меньше двух
    """
    infinite = spec.infinite_indices()
    if len(infinite) < 2:
        raise NotEnoughInfiniteError(len(infinite))
    first, last = infinite[0], infinite[-1]
    translation = spec.pairs[first][0]
    values = tuple(value - translation for value in spec.eigenvalues)
    m = first
    n = last - first - 1
    p = len(spec.pairs) - 1 - last
    return NormalizedSpec(m, n, p, values, spec.multiplicities, translation)
