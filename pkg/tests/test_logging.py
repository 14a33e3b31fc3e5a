"""Tests for logging setup."""
import logging

from rich.logging import RichHandler

from kemenyqa.utils.logging import setup_logging


def test_verbose_sets_debug():
    setup_logging(verbose=True)
    root = logging.getLogger()
    assert root.level == logging.DEBUG
    assert [type(h) for h in root.handlers] == [RichHandler]


def test_level_from_environment(monkeypatch):
    monkeypatch.setenv("LOG_LEVEL", "warning")
    setup_logging()
    assert logging.getLogger().level == logging.WARNING


def test_log_file(tmp_path, monkeypatch):
    """Test the detailed file log lands under logs/."""
    monkeypatch.chdir(tmp_path)
    monkeypatch.delenv("LOG_LEVEL", raising=False)
    setup_logging(log_file="run.log")
    logging.getLogger("kemenyqa.test").debug("ledger updated")
    for handler in logging.getLogger().handlers:
        handler.flush()
    text = (tmp_path / "logs" / "run.log").read_text(encoding="utf-8")
    assert "[DEBUG] kemenyqa.test" in text
    assert "ledger updated" in text
    for handler in logging.getLogger().handlers[:]:
        if isinstance(handler, logging.FileHandler):
            handler.close()
            logging.getLogger().removeHandler(handler)
