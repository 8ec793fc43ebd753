import logging

import pytest

from lexkit._logger import LOG_FORMAT, get_logger, set_verbosity


@pytest.mark.unittest
class TestGetLogger:
    @pytest.fixture(autouse=True)
    def reset_lexkit_logger(self, monkeypatch):
        monkeypatch.delenv("LEXKIT_LOG_LEVEL", raising=False)
        logger = logging.getLogger("lexkit")

        # the package modules attach a handler on import; start each test bare
        def _cleanup():
            for h in list(logger.handlers):
                logger.removeHandler(h)
                try:
                    h.close()
                except Exception:
                    pass
            logger.setLevel(logging.NOTSET)
            logger.propagate = False

        _cleanup()
        yield
        _cleanup()

    def test_first_call_creates_streamhandler_and_formatter(self):
        logger = get_logger()
        assert logger.name == "lexkit"
        assert logger.level == logging.INFO
        assert len(logger.handlers) == 1

        h = logger.handlers[0]
        assert isinstance(h, logging.StreamHandler)
        assert h.level == logging.INFO
        assert getattr(h.formatter, "_fmt", "") == LOG_FORMAT

    def test_idempotent_second_call_does_not_add_handler(self):
        logger1 = get_logger()
        logger2 = get_logger()

        assert logger1 is logger2
        assert len(logger2.handlers) == 1
        assert logger2.level == logging.INFO

    def test_level_applied_only_on_first_call(self):
        logger = get_logger(level=logging.WARNING)
        assert logger.level == logging.WARNING

        logger2 = get_logger(level=logging.DEBUG)
        assert logger2.level == logging.WARNING
        assert logger2.handlers[0].level == logging.WARNING

    def test_preserves_preexisting_handler_and_level(self):
        logger = logging.getLogger("lexkit")
        pre = logging.StreamHandler()
        pre.setLevel(logging.ERROR)
        pre.setFormatter(logging.Formatter("X %(levelname)s %(name)s %(message)s"))
        logger.addHandler(pre)
        logger.setLevel(logging.ERROR)

        lg = get_logger(level=logging.INFO)
        assert lg is logger
        assert len(lg.handlers) == 1
        assert lg.level == logging.ERROR
        assert getattr(lg.handlers[0].formatter, "_fmt", "").startswith("X ")

    @pytest.mark.parametrize(
        "raw, expected",
        [("debug", logging.DEBUG), ("30", logging.WARNING), ("nonsense", logging.INFO)],
    )
    def test_level_from_the_environment(self, monkeypatch, raw, expected):
        monkeypatch.setenv("LEXKIT_LOG_LEVEL", raw)
        assert get_logger().level == expected

    def test_set_verbosity(self):
        logger = set_verbosity(True)
        assert logger.level == logging.DEBUG
        assert logger.handlers[0].level == logging.DEBUG
        set_verbosity(False)
        assert logger.level == logging.WARNING

    def test_log_output_format_contains_level_name_logger_and_message(self, capsys):
        logger = get_logger()
        logger.info("hello")

        line = capsys.readouterr().err.strip().splitlines()[-1]
        assert " INFO lexkit hello" in line
