import functools
import inspect
import logging
import os
import sys
from datetime import datetime
from fractions import Fraction
from typing import Any, Callable, Optional

logger = logging.getLogger("spectradiag.actions")

LOG_FORMAT = '%(levelname)s %(asctime)s %(message)s'
LOG_DATEFMT = '%Y-%m-%dT%H:%M:%S'

# Параметры вызова, попадающие в строку лога
_LOGGED_PARAMS = ('N', 'k', 'epsilon', 'op', 'grid', 'beta')
# Поля результата, попадающие в строку лога
_LOGGED_RESULTS = ('feasible', 'branch', 'member', 'failed_condition', 'holds', 'max_deviation')


def configure_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> None:
    """
    Настройка корневого логгера для CLI.

    Уровень берётся из SPECTRADIAG_LOG (по умолчанию WARNING), файл из SPECTRADIAG_LOG_FILE.
    Диагностика пишется в stderr, stdout остаётся для выходного документа.
    """
    level_name = (level or os.environ.get('SPECTRADIAG_LOG') or 'WARNING').upper()
    log_file = log_file or os.environ.get('SPECTRADIAG_LOG_FILE')

    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding='utf-8'))

    logging.basicConfig(
        level=getattr(logging, level_name, logging.WARNING),
        format=LOG_FORMAT,
        datefmt=LOG_DATEFMT,
        handlers=handlers,
        force=True,
    )


def log_action(action_name: str = None, verbose: bool = False):
    """
    Декоратор для логирования операций.

    Args:
        action_name: Название операции (CHECK/MINIMAL/MEMBERSHIP/...)
        verbose: Логировать также размер входной последовательности
    """
    def decorator(func: Callable) -> Callable:
        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            operation = action_name or func.__name__.upper()

            log_data = {
                'timestamp': datetime.now().isoformat(),
                'action': operation,
                'result': 'OK'
            }

            try:
                sig = inspect.signature(func)
                bound_args = sig.bind(*args, **kwargs)
                bound_args.apply_defaults()
                params = bound_args.arguments

                for name in _LOGGED_PARAMS:
                    if params.get(name) is not None:
                        log_data[name] = _format_value(params[name])

                if verbose and params.get('seq') is not None:
                    log_data['cardinality'] = str(params['seq'].cardinality())

                result = func(*args, **kwargs)

                if isinstance(result, dict):
                    for name in _LOGGED_RESULTS:
                        if name in result:
                            log_data[name] = _format_value(result[name])

                logger.info(f"{operation} {_format_log_data(log_data)}")
                return result

            except Exception as e:
                log_data.update({
                    'result': 'ERROR',
                    'error_type': type(e).__name__,
                    'error_message': str(e)
                })
                logger.error(f"{operation} {_format_log_data(log_data)}")
                raise

        return wrapper
    return decorator


def _format_value(value: Any) -> Any:
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, float):
        return f"{value:.3e}"
    return value


def _format_log_data(data: dict) -> str:
    """Форматирование данных лога в строку."""
    parts = []
    for key, value in data.items():
        if key != 'action':
            if isinstance(value, (bool, int, float)) or (isinstance(value, str) and value.replace('/', '').lstrip('-').isdigit()):
                parts.append(f"{key}={value}")
            else:
                parts.append(f"{key}='{value}'")
    return ' '.join(parts)


# Специализированные декораторы для конкретных операций
def log_check(func: Callable) -> Callable:
    return log_action('CHECK', verbose=True)(func)


def log_minimal(func: Callable) -> Callable:
    return log_action('MINIMAL', verbose=True)(func)


def log_membership(func: Callable) -> Callable:
    return log_action('MEMBERSHIP')(func)


def log_witness(func: Callable) -> Callable:
    return log_action('WITNESS')(func)


def log_fplot(func: Callable) -> Callable:
    return log_action('FPLOT')(func)


def log_transform(func: Callable) -> Callable:
    return log_action('TRANSFORM', verbose=True)(func)
