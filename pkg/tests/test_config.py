from pathlib import Path

import pytest

from sgcount.config import CONFIG_ENV, Config, load_config, parse_config


def test_defaults():
    cfg = Config()
    assert cfg.precision == 50
    assert cfg.stage_cap(2, 2) == 15 and cfg.stage_cap(4, 2) == 6
    assert cfg.stage_cap(2, 7) == 3


def test_parse():
    cfg = parse_config("""
        # comment
        precision = 80
        cache_dir = /tmp/x
        use_cache = no
        stage_cap.3.2 = 12
    """)
    assert cfg.precision == 80
    assert cfg.cache_dir == Path("/tmp/x")
    assert cfg.use_cache is False
    assert cfg.stage_cap(3, 2) == 12 and cfg.stage_cap(2, 2) == 15


@pytest.mark.parametrize("text", ["precision", "colour = red", "precision = x"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        parse_config(text)


def test_env(tmp_path, monkeypatch):
    p = tmp_path / "c.conf"
    p.write_text("edge_cap = 12\n")
    monkeypatch.setenv(CONFIG_ENV, str(p))
    assert load_config().edge_cap == 12
    monkeypatch.delenv(CONFIG_ENV)
    assert load_config() == Config(cache_dir=load_config().cache_dir)


def test_overrides_skip_none():
    cfg = Config().with_overrides(precision=None, threads=2)
    assert cfg.precision == 50 and cfg.threads == 2
