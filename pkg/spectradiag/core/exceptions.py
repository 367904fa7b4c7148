class SpectraDiagError(Exception):
    """Базовое исключение библиотеки."""


class ScalarParseError(SpectraDiagError):
    """Исключение при разборе рационального числа."""

    def __init__(self, text: object):
        self.text = text
        super().__init__(f"Не удалось разобрать число '{text}': ожидается 'p/q' или 'p'")


class SchemaError(SpectraDiagError):
    """Исключение при несоответствии входного документа схеме."""

    def __init__(self, field: str, reason: str):
        self.field = field
        self.reason = reason
        super().__init__(f"Поле '{field}': {reason}")


class LengthMismatchError(SpectraDiagError):
    """Исключение при несовпадении длин векторов."""

    def __init__(self, left: int, right: int):
        self.left = left
        self.right = right
        super().__init__(f"Длины векторов не совпадают: {left} и {right}")


class OutOfRangeError(SpectraDiagError):
    """Исключение при выходе параметра за допустимый интервал."""

    def __init__(self, name: str, value: object, interval: str):
        self.name = name
        self.value = value
        self.interval = interval
        super().__init__(f"Параметр {name}={value} вне допустимого интервала {interval}")


class HypothesisViolatedError(SpectraDiagError):
    """Исключение при нарушении предположений теоремы или леммы."""

    def __init__(self, condition: str, message: str = None):
        self.condition = condition
        super().__init__(message or f"Нарушено условие '{condition}'")


class BoundsViolatedError(HypothesisViolatedError):
    """Значения последовательности выходят за границы спектра."""

    def __init__(self, value: object, lo: object, hi: object):
        self.value = value
        self.lo = lo
        self.hi = hi
        super().__init__("bounds", f"Значение {value} вне отрезка [{lo}, {hi}]")


class NotNondecreasingError(HypothesisViolatedError):
    """Последовательность не является неубывающей."""

    def __init__(self, where: str):
        self.where = where
        super().__init__("nondecreasing", f"Последовательность не неубывающая: {where}")


class NotSummableLowerTailError(HypothesisViolatedError):
    """Нижний хвост имеет бесконечную сумму."""

    def __init__(self, limit: object):
        self.limit = limit
        super().__init__("lower-tail", f"Нижний хвост с пределом {limit} не суммируем")


class PreconditionViolatedError(HypothesisViolatedError):
    """Нарушено конкретное предусловие операции."""

    def __init__(self, name: str, details: str):
        self.name = name
        self.details = details
        super().__init__(name, f"Нарушено предусловие {name}: {details}")


class NoReceiverError(HypothesisViolatedError):
    """Нет элемента-приёмника для сброса хвостовой массы."""

    def __init__(self, side: str, epsilon: object):
        self.side = side
        self.epsilon = epsilon
        super().__init__("receiver", f"Нет приёмника в полосе '{side}' для epsilon={epsilon}")


class OrderViolatedError(HypothesisViolatedError):
    """Максимум I0 превышает минимум I1."""

    def __init__(self, max_low: object, min_high: object):
        self.max_low = max_low
        self.min_high = min_high
        super().__init__("order", f"max(I0)={max_low} больше min(I1)={min_high}")


class NotEnoughInfiniteError(SpectraDiagError):
    """Исключение, если бесконечных кратностей меньше двух."""

    def __init__(self, count: int):
        self.count = count
        super().__init__(f"Нужно хотя бы две бесконечные кратности, найдено {count}")


class NotSummableError(SpectraDiagError):
    """Исключение при расходимости C(B/2) или D(B/2)."""

    def __init__(self, side: str):
        self.side = side
        super().__init__(f"Сумма {side}(B/2) расходится")


class InteriorInfiniteError(SpectraDiagError):
    """Исключение при бесконечной внутренней кратности."""

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"Внутренняя кратность N_{index} бесконечна")


class NotInClassFError(SpectraDiagError):
    """Исключение, если последовательность не принадлежит классу F."""

    def __init__(self, reason: str = "C(α) или D(α) расходится"):
        self.reason = reason
        super().__init__(f"Последовательность не принадлежит классу F: {reason}")


class InfeasibleInputError(SpectraDiagError):
    """Исключение при невыполнимом входе для построения."""

    def __init__(self, reason: str):
        self.reason = reason
        super().__init__(f"Построение невозможно: {reason}")


class BudgetExceededError(SpectraDiagError):
    """Исключение, если переносимая масса превышает доступную."""

    def __init__(self, eta0: object, budget: object):
        self.eta0 = eta0
        self.budget = budget
        super().__init__(f"Масса {eta0} превышает доступный бюджет {budget}")
