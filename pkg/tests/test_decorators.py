import logging
from fractions import Fraction as F

import pytest

from spectradiag.core.exceptions import OutOfRangeError
from spectradiag.decorators import configure_logging, log_action, log_check

LOGGER = "spectradiag.actions"


@log_action('DEMO')
def demo(seq=None, N=None, epsilon=None):
    return {'feasible': True, 'branch': 'CLASSICAL', 'ignored': 1}


@log_action('FAIL')
def failing(N):
    raise OutOfRangeError("N", N, "N ≥ 1")


class TestLogAction:
    def test_success_line(self, caplog):
        caplog.set_level(logging.INFO, logger=LOGGER)
        assert demo(N=2, epsilon=F(1, 32))['feasible'] is True
        [record] = caplog.records
        assert record.levelno == logging.INFO
        message = record.getMessage()
        assert message.startswith("DEMO ")
        assert "result='OK'" in message
        assert "N=2" in message
        assert "epsilon=1/32" in message
        assert "feasible=True" in message
        assert "branch='CLASSICAL'" in message
        assert "ignored" not in message

    def test_error_is_logged_and_reraised(self, caplog):
        caplog.set_level(logging.INFO, logger=LOGGER)
        with pytest.raises(OutOfRangeError):
            failing(0)
        [record] = caplog.records
        assert record.levelno == logging.ERROR
        assert "error_type='OutOfRangeError'" in record.getMessage()

    def test_verbose_logs_cardinality(self, caplog, beta_quarter):
        caplog.set_level(logging.INFO, logger=LOGGER)

        @log_check
        def check(seq):
            return {'feasible': False}

        check(beta_quarter)
        assert "cardinality='inf'" in caplog.records[0].getMessage()

    def test_name_defaults_to_function(self, caplog):
        caplog.set_level(logging.INFO, logger=LOGGER)

        @log_action()
        def fplot(grid):
            return {}

        fplot(3)
        assert caplog.records[0].getMessage().startswith("FPLOT ")


class TestConfigureLogging:
    def test_env_level(self, monkeypatch):
        monkeypatch.setenv('SPECTRADIAG_LOG', 'debug')
        monkeypatch.delenv('SPECTRADIAG_LOG_FILE', raising=False)
        configure_logging()
        assert logging.getLogger().level == logging.DEBUG

    def test_log_file(self, monkeypatch, tmp_path):
        monkeypatch.delenv('SPECTRADIAG_LOG', raising=False)
        path = tmp_path / "actions.log"
        configure_logging(level='info', log_file=str(path))
        logging.getLogger(LOGGER).info("CHECK result='OK'")
        for handler in logging.getLogger().handlers:
            handler.flush()
        assert "CHECK result='OK'" in path.read_text(encoding='utf-8')
        configure_logging(level='warning')

    def test_unknown_level_falls_back(self, monkeypatch):
        monkeypatch.setenv('SPECTRADIAG_LOG', 'chatty')
        configure_logging()
        assert logging.getLogger().level == logging.WARNING
