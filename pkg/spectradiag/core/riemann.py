"""
Упорядоченная форма внутренней мажоризации для неубывающей последовательности {d_j}, j ∈ ℤ.

Последовательность задаётся нижним хвостом (d_0, d_{-1}, ... — члены хвоста 1, 2, ...),
конечной серединой d_1..d_L и верхним хвостом (d_{L+1}, d_{L+2}, ...).
Отсутствующий нижний хвост означает d_j = 0 при j ≤ 0, отсутствующий верхний — d_j = top.
"""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from .exceptions import (
    BoundsViolatedError,
    InteriorInfiniteError,
    NotNondecreasingError,
    NotSummableLowerTailError,
    PreconditionViolatedError,
    SchemaError,
)
from .feasibility import interior_majorization_check
from .numerics import DIVERGENT, format_scalar, is_integer, parse_scalar, sum_to_json
from .sequences import DiagonalSequence, GeometricTail
from .spectrum import NormalizedSpec

logger = logging.getLogger(__name__)


def _remainder(tail: GeometricTail, start: int) -> Fraction:
    # Σ_{i≥start} c·r^i
    return tail.coefficient * tail.ratio ** start / (1 - tail.ratio)


class ZIndexedSequence:
    """Неубывающая последовательность со значениями в [0, top], индексированная целыми числами."""

    def __init__(self, middle: Sequence[Fraction] = (), lower: Optional[GeometricTail] = None,
                 upper: Optional[GeometricTail] = None, top: Fraction = Fraction(1)):
        """
        Raises:
            BoundsViolatedError: Если значения вне [0, top]
            NotNondecreasingError: Если последовательность убывает где-либо
            NotSummableLowerTailError: Если нижний хвост не стремится к 0
        """
        self._middle = tuple(Fraction(x) for x in middle)
        self._lower = lower
        self._upper = upper
        self._top = Fraction(top)
        self._validate()

    def _validate(self) -> None:
        top = self._top
        if top <= 0:
            raise BoundsViolatedError(format_scalar(top), "0", "∞")
        for x in self._middle:
            if not 0 <= x <= top:
                raise BoundsViolatedError(format_scalar(x), "0", format_scalar(top))
        if self._lower is not None:
            if self._lower.coefficient < 0:
                raise NotNondecreasingError("нижний хвост растёт при j → −∞")
            if self._lower.limit < 0 or self._lower.supremum > top:
                raise BoundsViolatedError(format_scalar(self._lower.limit), "0", format_scalar(top))
            if self._lower.limit != 0:
                raise NotSummableLowerTailError(format_scalar(self._lower.limit))
        if self._upper is not None:
            if self._upper.coefficient > 0:
                raise NotNondecreasingError("верхний хвост убывает")
            if self._upper.infimum < 0 or self._upper.limit > top:
                raise BoundsViolatedError(format_scalar(self._upper.limit), "0", format_scalar(top))
        chain = [self.d(0)] + list(self._middle) + [self.d(len(self._middle) + 1)]
        for j, (a, b) in enumerate(zip(chain, chain[1:])):
            if a > b:
                raise NotNondecreasingError(f"d_{j} = {format_scalar(a)} > d_{j + 1} = {format_scalar(b)}")

    @property
    def middle(self) -> Tuple[Fraction, ...]:
        return self._middle

    @property
    def lower(self) -> Optional[GeometricTail]:
        return self._lower

    @property
    def upper(self) -> Optional[GeometricTail]:
        return self._upper

    @property
    def top(self) -> Fraction:
        return self._top

    def d(self, j: int) -> Fraction:
        L = len(self._middle)
        if j <= 0:
            return Fraction(0) if self._lower is None else self._lower.term(1 - j)
        if j <= L:
            return self._middle[j - 1]
        return self._top if self._upper is None else self._upper.term(j - L)

    def prefix_sum(self, t: int) -> Fraction:
        """P(t) = Σ_{j ≤ t} d_j."""
        if t <= 0:
            return Fraction(0) if self._lower is None else _remainder(self._lower, 1 - t)
        head = self.prefix_sum(0)
        return head + sum((self.d(j) for j in range(1, t + 1)), Fraction(0))

    def suffix_deficit(self, t: int):
        """S(t) = Σ_{j > t}(top − d_j) или DIVERGENT."""
        L = len(self._middle)
        if t >= L:
            if self._upper is None:
                return Fraction(0)
            if self._upper.limit != self._top:
                return DIVERGENT
            return -_remainder(self._upper, t - L + 1)
        rest = self.suffix_deficit(L)
        if rest is DIVERGENT:
            return DIVERGENT
        return rest + sum((self._top - self.d(j) for j in range(t + 1, L + 1)), Fraction(0))

    def to_diagonal_sequence(self) -> DiagonalSequence:
        """Та же последовательность как мультимножество (без индексации)."""
        infinite_atoms, tails = [], []
        if self._lower is None:
            infinite_atoms.append(Fraction(0))
        else:
            tails.append(self._lower)
        if self._upper is None:
            infinite_atoms.append(self._top)
        else:
            tails.append(self._upper)
        return DiagonalSequence(atoms=[(x, 1) for x in self._middle], infinite_atoms=infinite_atoms,
                                tails=tails, bounds=(Fraction(0), self._top))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'lower': None if self._lower is None else self._lower.to_dict(),
            'middle': [format_scalar(x) for x in self._middle],
            'upper': None if self._upper is None else self._upper.to_dict(),
            'top': format_scalar(self._top),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ZIndexedSequence":
        if not isinstance(data, dict):
            raise SchemaError("sequence", "ожидается объект")
        lower = data.get('lower')
        upper = data.get('upper')
        middle = data.get('middle', [])
        if not isinstance(middle, list):
            raise SchemaError("middle", "ожидается список")
        return cls(
            middle=[parse_scalar(x) for x in middle],
            lower=None if lower is None else GeometricTail.from_dict(lower, "lower"),
            upper=None if upper is None else GeometricTail.from_dict(upper, "upper"),
            top=parse_scalar(data.get('top', 1)),
        )

    def __repr__(self) -> str:
        return f"ZIndexedSequence(lower={self._lower}, middle={self._middle}, upper={self._upper}, top={self._top})"


class RiemannProfile:
    """Частичные суммы δ_m = Σ_{i≤m}(d_{i−k} − λ_i) и их предел."""

    def __init__(self, k: int, deltas: List[Tuple[int, Fraction]], limit):
        self.k = k
        self.deltas = deltas
        self.limit = limit

    @property
    def holds(self) -> bool:
        return self.limit is not DIVERGENT and self.limit == 0 and all(delta >= 0 for _, delta in self.deltas)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'k': self.k,
            'deltas': [[m, format_scalar(delta)] for m, delta in self.deltas],
            'limit': sum_to_json(self.limit),
            'holds': self.holds,
        }


def _staircase(nspec: NormalizedSpec) -> List[Fraction]:
    """λ_1..λ_σ: внутренние собственные значения с кратностью по возрастанию."""
    if nspec.m != 0 or nspec.p != 0:
        raise PreconditionViolatedError("m=p=0", f"m={nspec.m}, p={nspec.p}")
    values = []
    for j in nspec.interior_indices():
        if nspec.N(j).is_infinite:
            raise InteriorInfiniteError(j)
        values.extend([nspec.A(j)] * int(nspec.N(j)))
    return values


def _require_frame(d: ZIndexedSequence, nspec: NormalizedSpec) -> None:
    if d.top != nspec.B:
        raise PreconditionViolatedError("top=B", f"top={format_scalar(d.top)}, B={format_scalar(nspec.B)}")


def _limit(d: ZIndexedSequence, sigma: int, total: Fraction, k: int):
    deficit = d.suffix_deficit(sigma - k)
    if deficit is DIVERGENT:
        return DIVERGENT
    return d.prefix_sum(sigma - k) - total - deficit


def riemann_profile(d: ZIndexedSequence, nspec: NormalizedSpec, k: int,
                    upto: Optional[int] = None) -> RiemannProfile:
    """
    δ_m для m = 0..upto (по умолчанию σ_n + 1) и точный предел δ_m при m → ∞.

    При m ≤ 0 δ_m не убывает от 0, при m > σ_n не возрастает к пределу,
    поэтому условие δ ≥ 0 достаточно проверять при m = 1..σ_n.
    """
    _require_frame(d, nspec)
    lam = _staircase(nspec)
    sigma = len(lam)
    if upto is None:
        upto = sigma + 1
    deltas = [(0, d.prefix_sum(-k))]
    delta = deltas[0][1]
    for m in range(1, upto + 1):
        delta += d.d(m - k) - (lam[m - 1] if m <= sigma else nspec.B)
        deltas.append((m, delta))
    limit = _limit(d, sigma, sum(lam, Fraction(0)), k)
    return RiemannProfile(k, deltas, limit)


def riemann_interior_check(d: ZIndexedSequence, nspec: NormalizedSpec, k: int) -> bool:
    """δ_m ≥ 0 при всех m и δ_m → 0."""
    lam = _staircase(nspec)
    return riemann_profile(d, nspec, k, upto=len(lam)).holds


def riemann_interior_search(d: ZIndexedSequence, nspec: NormalizedSpec) -> Optional[int]:
    """
    Сдвиг k, при котором выполнено упорядоченное условие, или None.

    Предел δ_m аффинно зависит от k с наклоном −B, так что кандидат единственный.
    Он совпадает с k₀ + σ_n − m_n из лебеговой формы; equivalence_audit сверяет ответы обеих форм.
    """
    _require_frame(d, nspec)
    lam = _staircase(nspec)
    base = _limit(d, len(lam), sum(lam, Fraction(0)), 0)
    if base is DIVERGENT or not is_integer(base / nspec.B):
        logger.debug("riemann_interior_search: нет целого k (предел при k=0: %s)", base)
        return None
    k = int(base / nspec.B)
    found = riemann_interior_check(d, nspec, k)
    logger.debug("riemann_interior_search: k=%d, выполнено=%s", k, found)
    return k if found else None


def equivalence_audit(d: ZIndexedSequence, nspec: NormalizedSpec) -> bool:
    """Совпадение упорядоченной и лебеговой форм внутренней мажоризации на одних данных."""
    ordered = riemann_interior_search(d, nspec) is not None
    seq = d.to_diagonal_sequence().shifted(nspec.translation)
    lebesgue = interior_majorization_check(seq, nspec).feasible
    if ordered != lebesgue:
        logger.warning("Формы внутренней мажоризации расходятся: %s, упорядоченная=%s, лебегова=%s",
                       d, ordered, lebesgue)
    return ordered == lebesgue
