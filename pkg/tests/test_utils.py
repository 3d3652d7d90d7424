import logging
from pathlib import Path

import pytest

from quotient_lab.utils.logging_config import setup_logging
from quotient_lab.utils.paths import report_path, reports_dir


@pytest.fixture
def restore_package_logger():
    logger = logging.getLogger("quotient_lab")
    handlers, level, propagate = list(logger.handlers), logger.level, logger.propagate
    yield
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
        handler.close()
    for handler in handlers:
        logger.addHandler(handler)
    logger.setLevel(level)
    logger.propagate = propagate


def test_repeated_setup_does_not_stack_handlers(restore_package_logger):
    setup_logging("DEBUG")
    logger = setup_logging("WARNING")
    assert len(logger.handlers) == 1
    assert logger.level == logging.WARNING


def test_log_file_receives_messages(restore_package_logger, tmp_path):
    log_file = tmp_path / "logs" / "lab.log"
    logger = setup_logging("INFO", log_file)
    logging.getLogger("quotient_lab.test").info("anillo T2(F_2) listo")
    for handler in logger.handlers:
        handler.flush()
    assert "anillo T2(F_2) listo" in log_file.read_text(encoding="utf-8")


def test_invalid_level():
    with pytest.raises(ValueError, match="inválido"):
        setup_logging("CHARLA")


def test_report_path_is_named_after_the_corpus():
    assert report_path("md").name == "builtin.md"
    path = report_path("json", Path("otros") / "pequeño.json")
    assert path.name == "pequeño.json"
    assert path.parent == reports_dir()
    assert path.parent.name == "reports"
