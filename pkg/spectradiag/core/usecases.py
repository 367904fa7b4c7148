"""Операции уровня приложения: разбор входных документов, вызов ядра, сборка ответов."""

from fractions import Fraction
from typing import Any, Dict, List, Optional

from ..decorators import log_check, log_fplot, log_membership, log_minimal, log_transform, log_witness
from .exceptions import PreconditionViolatedError, SchemaError
from .feasibility import decide_diagonal, kadison_check, projection_witness
from .lambda_sets import membership_report, minimal_set
from .majorization import construct_matrix
from .numerics import format_scalar, parse_scalar
from .sequences import DiagonalSequence, f_grid
from .spectrum import SpectrumClass, SpectrumSpec, classify
from .transforms import decouple, move_toward_endpoints, split_extremes, truncate_to_finite

TRANSFORM_OPS = ('move', 'decouple', 'split', 'truncate')


def _require(params: Dict[str, Any], key: str) -> Any:
    if key not in params:
        raise SchemaError(f"params.{key}", "обязательное поле отсутствует")
    return params[key]


def _scalar_list(value: Any, field: str) -> List[Fraction]:
    if not isinstance(value, list):
        raise SchemaError(field, "ожидается список")
    return [parse_scalar(x) for x in value]


def _parse_J(value: Any) -> Dict[str, Any]:
    if not isinstance(value, dict):
        raise SchemaError("params.J", "ожидается объект")
    if 'infinite_atom' in value:
        return {'infinite_atom': parse_scalar(value['infinite_atom'])}
    return dict(value)


class UseCases:
    """Класс с логикой приложения поверх ядра."""

    @log_check
    def check(self, seq: DiagonalSequence, spectrum: Optional[SpectrumSpec] = None) -> dict:
        """
        Решение о допустимости диагонали.

        Без спектра проверяется условие Кадисона (диагональ проекции).
        """
        verdict = kadison_check(seq) if spectrum is None else decide_diagonal(seq, spectrum)
        return verdict.to_dict()

    @log_minimal
    def minimal(self, seq: DiagonalSequence, N: int, epsilon: Optional[Fraction] = None) -> dict:
        return minimal_set(seq, N, epsilon).to_dict()

    @log_membership
    def membership(self, seq: DiagonalSequence, lam: List[Fraction]) -> dict:
        return membership_report(seq, lam).to_dict()

    @log_witness
    def witness(self, seq: DiagonalSequence, spectrum: Optional[SpectrumSpec] = None) -> dict:
        """
        Матрица-свидетель для конечного случая.

        Returns:
            dict: witness (SymmetricMatrixWitness), max_deviation, document (JSON-представление)
        """
        if spectrum is None:
            matrix = projection_witness(seq)
        else:
            if classify(spectrum) is not SpectrumClass.ALL_FINITE:
                raise PreconditionViolatedError("all_finite", str(spectrum))
            if not seq.is_finite:
                raise PreconditionViolatedError("finite_sequence", str(seq))
            matrix = construct_matrix(spectrum.eigenvalue_list(), seq.atom_values())
        deviation = matrix.max_deviation()
        document = matrix.to_dict()
        document['max_deviation'] = deviation
        return {'witness': matrix, 'max_deviation': deviation, 'document': document}

    @log_fplot
    def fplot(self, seq: DiagonalSequence, grid: int) -> dict:
        """Точки (α, f(α)) на сетке: JSON-документ и строки CSV `alpha,f`."""
        points = [(format_scalar(alpha), format_scalar(value)) for alpha, value in f_grid(seq, grid)]
        return {
            'document': {'grid': grid, 'points': [{'alpha': alpha, 'f': value} for alpha, value in points]},
            'csv': "".join(f"{alpha},{value}\n" for alpha, value in points),
        }

    @log_transform
    def transform(self, seq: DiagonalSequence, op: str, params: Dict[str, Any]) -> dict:
        """
        Применение одного из преобразований move / decouple / split / truncate.

        Raises:
            SchemaError: Неизвестная операция или нет обязательного параметра
        """
        if op == 'move':
            result, receipt = move_toward_endpoints(
                seq,
                _scalar_list(_require(params, 'I0'), "params.I0"),
                _scalar_list(_require(params, 'I1'), "params.I1"),
                parse_scalar(_require(params, 'eta0')),
                parse_scalar(_require(params, 'A')),
                parse_scalar(_require(params, 'B')),
            )
        elif op == 'decouple':
            result, receipt = decouple(
                seq,
                _parse_J(_require(params, 'J')),
                parse_scalar(_require(params, 'gamma')),
                parse_scalar(_require(params, 'delta')),
                parse_scalar(_require(params, 'eta')),
            )
        elif op == 'truncate':
            result, receipt = truncate_to_finite(seq, parse_scalar(_require(params, 'epsilon')))
        elif op == 'split':
            zeros, interior, ones = split_extremes(seq, parse_scalar(params.get('B', 1)))
            return {
                'op': op,
                'zeros': zeros.to_json(),
                'interior': interior.to_dict(),
                'ones': ones.to_json(),
            }
        else:
            raise SchemaError("op", f"ожидается одно из {', '.join(TRANSFORM_OPS)}")
        return {
            'op': op,
            'sequence': result.to_dict(),
            'receipt': receipt.to_dict(),
            'holds': receipt.holds(),
        }


# Глобальный экземпляр
usecases = UseCases()
