"""Settings load, environment overrides and the package wiring."""

import genestream
from genestream.config import Settings, settings
from genestream.schemas.request import StreamConfig


def test_defaults():
    fresh = Settings(_env_file=None)
    assert fresh.APP_NAME == "genestream"
    assert fresh.DEFAULT_K == 21
    assert fresh.CODON_TABLE == "standard"
    assert fresh.EMIT_PARTIAL is True
    assert fresh.MAX_READ_LEN == 99
    assert fresh.ORACLE_MAX_SEGMENTS == 12


def test_environment_overrides(monkeypatch):
    monkeypatch.setenv("GENESTREAM_DEFAULT_K", "15")
    monkeypatch.setenv("GENESTREAM_EMIT_PARTIAL", "false")
    fresh = Settings(_env_file=None)
    assert fresh.DEFAULT_K == 15
    assert fresh.EMIT_PARTIAL is False


def test_stream_config_follows_settings(monkeypatch):
    monkeypatch.setattr(settings, "DEFAULT_K", 17)
    cfg = StreamConfig()
    assert cfg.k == 17
    assert cfg.codon_table.start == "ATG"


def test_version_exported():
    assert genestream.__version__ == settings.VERSION
