"""Tests for vcmod.logging."""

from __future__ import annotations

from vcmod.logging import (
    DefaultLogger,
    get_global_logger,
    get_logger,
    set_global_logger,
)


class TestDefaultLogger:
    """Tests for DefaultLogger output levels."""

    def test_always_visible_levels(self, capsys):
        """Tests that info, warning and progress print without flags."""
        logger = DefaultLogger()
        logger.info("SWEEP", "done")
        logger.warning("CONFIG", "unknown field")
        logger.progress("SWEEP", "10/100")
        out = capsys.readouterr().out
        assert "[SWEEP] done\n" in out
        assert "[CONFIG] WARNING: unknown field\n" in out
        assert out.endswith("[SWEEP] 10/100\r")

    def test_quiet_by_default(self, capsys):
        """Tests that verbose and debug messages are dropped by default."""
        logger = DefaultLogger()
        logger.verbose("VC", "hidden")
        logger.debug("LDPC", "hidden")
        assert capsys.readouterr().out == ""

    def test_verbose(self, capsys):
        """Tests that verbose mode shows verbose but not debug messages."""
        logger = DefaultLogger(verbose=True)
        logger.verbose("VC", "shown")
        logger.debug("LDPC", "hidden")
        assert capsys.readouterr().out == "[VC] shown\n"

    def test_debug_implies_verbose(self, capsys):
        """Tests that debug mode shows both levels."""
        logger = DefaultLogger(debug=True)
        logger.verbose("VC", "a")
        logger.debug("LDPC", "b")
        assert capsys.readouterr().out == "[VC] a\n[LDPC] b\n"


class TestGlobalLogger:
    """Tests for the module-level logger."""

    def test_set_and_get(self):
        """Tests that set_global_logger replaces the shared instance."""
        original = get_global_logger()
        replacement = get_logger(verbose=True)
        try:
            set_global_logger(replacement)
            assert get_global_logger() is replacement
        finally:
            set_global_logger(original)
