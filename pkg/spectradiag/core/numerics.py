"""Точные рациональные скаляры, расширенные счётчики и допуски."""

import functools
import math
from fractions import Fraction
from typing import Union

from .exceptions import ScalarParseError

Scalar = Fraction

WITNESS_TOLERANCE = 1e-8
PROJECTION_TOLERANCE = 1e-10


def parse_scalar(value: Union[str, int, Fraction]) -> Fraction:
    """
    Разбор рационального числа.

    Args:
        value: Строка вида "p/q" или "p", целое число или Fraction

    Returns:
        Fraction: Число в каноническом виде

    Raises:
        ScalarParseError: Если значение не является рациональным числом
    """
    if isinstance(value, bool):
        raise ScalarParseError(value)
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if not isinstance(value, str):
        raise ScalarParseError(value)
    try:
        return Fraction(value.strip())
    except (ValueError, ZeroDivisionError):
        raise ScalarParseError(value) from None


def format_scalar(x: Fraction) -> str:
    """Каноническая строка "p/q" или "p"."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def frac_mod_one(x: Fraction) -> Fraction:
    """Дробная часть: η ∈ [0, 1), x − η целое."""
    x = Fraction(x)
    return x - math.floor(x)


def is_integer(x: Fraction) -> bool:
    return Fraction(x).denominator == 1


class _Divergent:
    """Маркер абсолютно расходящейся суммы."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "DIVERGENT"

    def to_json(self) -> str:
        return "divergent"


DIVERGENT = _Divergent()


def is_divergent(value: object) -> bool:
    return value is DIVERGENT


def add_sums(*values):
    """Сумма с поглощающим DIVERGENT."""
    total = Fraction(0)
    for value in values:
        if value is DIVERGENT:
            return DIVERGENT
        total += value
    return total


def sum_to_json(value) -> str:
    if value is DIVERGENT:
        return DIVERGENT.to_json()
    return format_scalar(value)


def sum_from_json(value) -> object:
    if value == "divergent":
        return DIVERGENT
    return parse_scalar(value)


@functools.total_ordering
class ExtendedCount:
    """Натуральное число или INFINITE."""

    __slots__ = ("_value",)

    def __init__(self, value: Union[int, None]):
        if value is not None and (isinstance(value, bool) or not isinstance(value, int) or value < 0):
            raise ValueError(f"Счётчик должен быть натуральным числом: {value}")
        self._value = value

    @property
    def value(self) -> Union[int, None]:
        """Конечное значение или None для бесконечности."""
        return self._value

    @property
    def is_infinite(self) -> bool:
        return self._value is None

    @classmethod
    def of(cls, value: Union[int, "ExtendedCount"]) -> "ExtendedCount":
        if isinstance(value, ExtendedCount):
            return value
        return cls(value)

    def __add__(self, other: Union[int, "ExtendedCount"]) -> "ExtendedCount":
        other = ExtendedCount.of(other)
        if self.is_infinite or other.is_infinite:
            return INFINITE
        return ExtendedCount(self._value + other._value)

    __radd__ = __add__

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = ExtendedCount(other) if other >= 0 else None
        if not isinstance(other, ExtendedCount):
            return NotImplemented
        return self._value == other._value

    def __lt__(self, other: Union[int, "ExtendedCount"]) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            return not self.is_infinite and self._value < other
        if not isinstance(other, ExtendedCount):
            return NotImplemented
        if self.is_infinite:
            return False
        return other.is_infinite or self._value < other._value

    def __hash__(self) -> int:
        return hash(("ExtendedCount", self._value))

    def __int__(self) -> int:
        if self.is_infinite:
            raise OverflowError("INFINITE не приводится к int")
        return self._value

    def __str__(self) -> str:
        return "inf" if self.is_infinite else str(self._value)

    def __repr__(self) -> str:
        return "INFINITE" if self.is_infinite else f"ExtendedCount({self._value})"

    def to_json(self) -> Union[int, str]:
        return "inf" if self.is_infinite else self._value

    @classmethod
    def from_json(cls, value: Union[int, str]) -> "ExtendedCount":
        if value == "inf":
            return INFINITE
        if isinstance(value, str) and value.strip().isdigit():
            value = int(value)
        if isinstance(value, bool) or not isinstance(value, int) or value < 0:
            raise ValueError(f"Ожидается натуральное число или 'inf': {value!r}")
        return cls(value)


INFINITE = ExtendedCount(None)
