import pytest

from memkin.report import display_profiling_info, profiled


def test_profiled_records_task():
    profiling_info = {}
    with profiled("ensemble", profiling_info):
        sum(range(10000))
    assert set(profiling_info["ensemble"]) == {"execution_time", "cpu_usage", "memory_usage"}
    assert profiling_info["ensemble"]["execution_time"] >= 0


def test_profiled_records_on_error():
    profiling_info = {}
    with pytest.raises(RuntimeError):
        with profiled("failing", profiling_info):
            raise RuntimeError("boom")
    assert "failing" in profiling_info


def test_profiling_disabled(capsys):
    profiling_info = {}
    with profiled("ensemble", profiling_info, enabled=False):
        pass
    assert profiling_info == {}
    display_profiling_info({"ensemble": {}}, enabled=False)
    assert capsys.readouterr().out == ""


def test_display_profiling_info(capsys):
    display_profiling_info(
        {"ensemble": {"execution_time": 1.5, "cpu_usage": 250.0, "memory_usage": 2 * 1024 * 1024}}
    )
    out = capsys.readouterr().out
    assert "--- Profiling Information ---" in out
    assert "1.500" in out and "250.0" in out and "2.00" in out
    display_profiling_info({})
    assert "No profiling information available." in capsys.readouterr().out
