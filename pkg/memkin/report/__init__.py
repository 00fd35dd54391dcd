from .profiling import display_profiling_info, end_profiling, profiled, start_profiling
