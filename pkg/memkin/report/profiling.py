import time
from contextlib import contextmanager
from typing import Dict, Iterator

import psutil


def start_profiling():
    process = psutil.Process()
    start_time = time.perf_counter()
    start_cpu = process.cpu_times()
    start_memory = process.memory_info().rss

    return start_time, start_cpu, start_memory


def end_profiling(start_time, start_cpu, start_memory) -> Dict[str, float]:
    process = psutil.Process()
    elapsed = time.perf_counter() - start_time
    end_cpu = process.cpu_times()
    cpu_seconds = (end_cpu.user - start_cpu.user) + (end_cpu.system - start_cpu.system)

    return {
        "execution_time": elapsed,
        # can exceed 100 when worker threads run concurrently
        "cpu_usage": 100.0 * cpu_seconds / elapsed if elapsed > 0 else 0.0,
        "memory_usage": process.memory_info().rss - start_memory,  # bytes
    }


@contextmanager
def profiled(task: str, profiling_info: Dict, enabled: bool = True) -> Iterator[None]:
    """
    Record execution time, CPU load and memory growth of the enclosed block under `task`.

    Example:
    >> with profiled("ensemble", profiling_info, config["profile"]):
    ..     ensemble = run_ensemble(ensemble_config, 10000)
    """
    if not enabled:
        yield
        return
    snapshot = start_profiling()
    try:
        yield
    finally:
        profiling_info[task] = end_profiling(*snapshot)


def display_profiling_info(profiling_info: Dict, enabled: bool = True):
    if not enabled:
        return
    print("\n--- Profiling Information ---")
    if not profiling_info:
        print("No profiling information available.")
        return

    longest_task_name = max(len(task) for task in profiling_info)
    header = (
        f"{'Task'.ljust(longest_task_name)} | Execution Time (s) | CPU Usage (%) | Memory Usage (MB)"
    )
    print(header)
    print("-" * len(header))

    for task, info in profiling_info.items():
        execution_time = info.get("execution_time")
        execution_time_str = f"{execution_time:.3f}" if execution_time is not None else "N/A"
        cpu_usage = info.get("cpu_usage")
        cpu_usage_str = f"{cpu_usage:.1f}" if cpu_usage is not None else "N/A"
        memory_usage = info.get("memory_usage")
        memory_usage_str = (
            f"{memory_usage / (1024 * 1024):.2f}" if memory_usage is not None else "N/A"
        )
        print(
            f"{task.ljust(longest_task_name)} | {execution_time_str:18} | "
            f"{cpu_usage_str:13} | {memory_usage_str:16}"
        )
