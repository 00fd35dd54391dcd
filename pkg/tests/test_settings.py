import json

import pytest

from memkin.settings import load_config, resolve_thread_count


def test_load_default_config():
    config = load_config()
    assert config["device"]["tau0"] == 3e5
    assert config["montecarlo"]["scheme"] == "event"
    assert config["solver"]["rate_ceiling"] is None


def test_user_config_replaces_sections(tmp_path):
    user_config = tmp_path / "user.config.json"
    user_config.write_text(json.dumps({"montecarlo": {"trials": 10}, "profile": True}))
    config = load_config(user_config)
    assert config["montecarlo"] == {"trials": 10}
    assert config["profile"] is True
    assert config["device"]["v0"] == 0.05


def test_missing_user_config_is_ignored(tmp_path):
    assert load_config(tmp_path / "absent.json") == load_config()


def test_thread_count(monkeypatch):
    monkeypatch.delenv("MEMKIN_THREADS", raising=False)
    assert resolve_thread_count(3) == 3
    assert resolve_thread_count() >= 1
    monkeypatch.setenv("MEMKIN_THREADS", "2")
    assert resolve_thread_count(8) == 2
    monkeypatch.setenv("MEMKIN_THREADS", "many")
    with pytest.raises(ValueError, match="MEMKIN_THREADS"):
        resolve_thread_count()
