from .bench import bench, check_structure, write_csv
from .engines import ENGINE_NAMES, make_engine, parse_pair
from .fuzz import fuzz, fuzz_many, generate_trace, shrink
from .runner import TraceRunner, run_trace

__all__ = [
    "ENGINE_NAMES",
    "TraceRunner",
    "bench",
    "check_structure",
    "fuzz",
    "fuzz_many",
    "generate_trace",
    "make_engine",
    "parse_pair",
    "run_trace",
    "shrink",
    "write_csv",
]
