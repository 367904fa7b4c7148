import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, TextIO

from ..core.exceptions import InfeasibleInputError, SchemaError, SpectraDiagError
from ..core.numerics import parse_scalar
from ..core.sequences import DiagonalSequence
from ..core.spectrum import SpectrumSpec
from ..core.usecases import TRANSFORM_OPS, usecases
from ..decorators import configure_logging

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2

logger = logging.getLogger(__name__)


class CLIState:
    """Потоки вывода CLI: stdout для документа, stderr для диагностики."""

    def __init__(self, out: Optional[TextIO] = None, err: Optional[TextIO] = None):
        self.out = out or sys.stdout
        self.err = err or sys.stderr


class InputDocumentError(Exception):
    """Ошибка чтения входного файла (нет файла, битый JSON)."""


def dump_json(document: Any) -> str:
    return json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False)


def load_document(path: str) -> Any:
    """Загрузка JSON-документа; сообщение об ошибке указывает строку и столбец."""
    try:
        with open(Path(path), 'r', encoding='utf-8') as f:
            return json.load(f)
    except json.JSONDecodeError as e:
        raise InputDocumentError(f"{path}: некорректный JSON (строка {e.lineno}, столбец {e.colno}): {e.msg}") from None
    except OSError as e:
        raise InputDocumentError(f"{path}: не удалось прочитать файл: {e.strerror}") from None


def parse_json_flag(text: Any, flag: str) -> Any:
    if not isinstance(text, str):
        raise InputDocumentError(f"--{flag}: ожидается значение")
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputDocumentError(f"--{flag}: некорректный JSON (столбец {e.colno}): {e.msg}") from None


def parse_args(args: List[str]) -> Dict[str, Any]:
    """Разбор аргументов командной строки: первая позиция — команда, далее пары --ключ значение."""
    parsed = {'command': args[0] if args else None}

    i = 1
    while i < len(args):
        arg = args[i]
        if arg.startswith('--'):
            key = arg[2:]
            if i + 1 < len(args) and not args[i + 1].startswith('--'):
                parsed[key] = args[i + 1]
                i += 2
            else:
                parsed[key] = True
                i += 1
        else:
            i += 1

    return parsed


def print_help(state: CLIState) -> None:
    """Вывод справки по командам."""
    lines = [
        "spectradiag - диагонали самосопряжённых операторов с заданным спектром",
        "",
        "Доступные команды:",
        "  check --sequence <file> [--spectrum <file>]          Допустима ли диагональ для спектра",
        "                                                       (без спектра: диагональ проекции)",
        "  minimal --sequence <file> --N <n> [--epsilon <x>]    Минимальные элементы Λ_N",
        "  membership --sequence <file> --lambda '<json>'       Проверка λ ∈ Λ_N",
        "  witness --sequence <file> [--spectrum <file>]        Матрица-свидетель (конечный случай)",
        "          [--output csv|json]",
        "  fplot --sequence <file> --grid <G>                   Значения f(α) при α = i/(G+1)",
        "          [--output csv|json]                          CSV: строки alpha,f",
        "  transform --sequence <file> --op <op> --params '<json>'",
        f"                                                       op: {'|'.join(TRANSFORM_OPS)}",
        "  help                                                 Показать эту справку",
        "",
        "Коды выхода: 0 - успех, 2 - недопустимо, 1 - ошибка",
        "",
        "Примеры:",
        "  check --sequence data/geometric_half.json --spectrum data/interior_spectrum.json",
        "  minimal --sequence data/beta_quarter.json --N 2",
        "  membership --sequence data/beta_quarter.json --lambda '[\"2/3\", \"1/3\"]'",
    ]
    print("\n".join(lines), file=state.out)


def _sequence(args: Dict[str, Any]) -> DiagonalSequence:
    path = args.get('sequence')
    if not isinstance(path, str):
        raise SchemaError("--sequence", "обязательный параметр")
    return DiagonalSequence.from_dict(load_document(path))


def _spectrum(args: Dict[str, Any]) -> Optional[SpectrumSpec]:
    path = args.get('spectrum')
    if path is None:
        return None
    if not isinstance(path, str):
        raise SchemaError("--spectrum", "ожидается путь к файлу")
    return SpectrumSpec.from_dict(load_document(path))


def _int_flag(args: Dict[str, Any], name: str) -> int:
    value = args.get(name)
    if not isinstance(value, str):
        raise SchemaError(f"--{name}", "обязательный параметр")
    try:
        return int(value)
    except ValueError:
        raise SchemaError(f"--{name}", f"ожидается целое число, получено '{value}'") from None


def _output_flag(args: Dict[str, Any]) -> str:
    output = args.get('output', 'csv')
    if output not in ('csv', 'json'):
        raise SchemaError("--output", "ожидается csv или json")
    return output


# Команды CLI
def check_command(args: Dict[str, Any], state: CLIState) -> int:
    """Решение о допустимости диагонали."""
    verdict = usecases.check(_sequence(args), _spectrum(args))
    print(dump_json(verdict), file=state.out)
    return EXIT_OK if verdict['feasible'] else EXIT_INFEASIBLE


def minimal_command(args: Dict[str, Any], state: CLIState) -> int:
    """Минимальные элементы Λ_N."""
    epsilon = args.get('epsilon')
    report = usecases.minimal(
        _sequence(args),
        _int_flag(args, 'N'),
        None if epsilon is None else parse_scalar(epsilon),
    )
    print(dump_json(report), file=state.out)
    return EXIT_OK


def membership_command(args: Dict[str, Any], state: CLIState) -> int:
    """Проверка λ ∈ Λ_N."""
    lam = parse_json_flag(args.get('lambda'), 'lambda')
    if not isinstance(lam, list):
        raise SchemaError("--lambda", "ожидается JSON-список")
    verdict = usecases.membership(_sequence(args), [parse_scalar(x) for x in lam])
    print(dump_json(verdict), file=state.out)
    return EXIT_OK if verdict['member'] else EXIT_INFEASIBLE


def witness_command(args: Dict[str, Any], state: CLIState) -> int:
    """Матрица-свидетель: CSV (по умолчанию) или JSON."""
    output = _output_flag(args)
    try:
        result = usecases.witness(_sequence(args), _spectrum(args))
    except InfeasibleInputError as e:
        print(f"Недопустимо: {e}", file=state.err)
        return EXIT_INFEASIBLE
    if output == 'json':
        print(dump_json(result['document']), file=state.out)
    else:
        state.out.write(result['witness'].to_csv())
        print(f"# max_deviation={result['max_deviation']!r}", file=state.out)
    return EXIT_OK


def fplot_command(args: Dict[str, Any], state: CLIState) -> int:
    """Значения f на равномерной сетке: CSV `alpha,f` (по умолчанию) или JSON."""
    output = _output_flag(args)
    grid = _int_flag(args, 'grid')
    result = usecases.fplot(_sequence(args), grid)
    if output == 'json':
        print(dump_json(result['document']), file=state.out)
    else:
        state.out.write(result['csv'])
    return EXIT_OK


def transform_command(args: Dict[str, Any], state: CLIState) -> int:
    """Применение преобразования с квитанцией."""
    op = args.get('op')
    if op not in TRANSFORM_OPS:
        raise SchemaError("--op", f"ожидается одно из {', '.join(TRANSFORM_OPS)}")
    params = {} if args.get('params') is None else parse_json_flag(args['params'], 'params')
    if not isinstance(params, dict):
        raise SchemaError("--params", "ожидается JSON-объект")
    result = usecases.transform(_sequence(args), op, params)
    print(dump_json(result), file=state.out)
    return EXIT_OK


COMMANDS = {
    'check': check_command,
    'minimal': minimal_command,
    'membership': membership_command,
    'witness': witness_command,
    'fplot': fplot_command,
    'transform': transform_command,
}


def run(args_list: List[str], state: Optional[CLIState] = None) -> int:
    """Выполнение одной команды; возвращает код выхода."""
    state = state or CLIState()
    args = parse_args(args_list)
    command = args.get('command')

    if command in (None, 'help', '--help', '-h'):
        print_help(state)
        return EXIT_OK
    handler = COMMANDS.get(command)
    if handler is None:
        print(f"Неизвестная команда: {command}", file=state.err)
        print("Введите 'help' для списка команд", file=state.err)
        return EXIT_ERROR

    try:
        return handler(args, state)
    except (SpectraDiagError, InputDocumentError) as e:
        print(f"Ошибка: {e}", file=state.err)
        return EXIT_ERROR
    except Exception as e:
        logger.exception("Неожиданная ошибка в команде %s", command)
        print(f"Неожиданная ошибка: {e}", file=state.err)
        return EXIT_ERROR


def main(argv: Optional[List[str]] = None) -> int:
    """Основная функция CLI."""
    configure_logging()
    return run(sys.argv[1:] if argv is None else argv)
