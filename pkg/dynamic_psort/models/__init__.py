from .report_models import (
    CSV_COLUMNS,
    BenchRow,
    CheckReport,
    FuzzReport,
    MismatchInfo,
    OpResult,
    RunReport,
)
from .trace_models import (
    ChangevalOp,
    CutOp,
    LinkOp,
    NewOp,
    OpTrace,
    PsortOp,
    TraceRecord,
    dump_trace,
    load_trace,
    parse_record,
)

__all__ = [
    "CSV_COLUMNS",
    "BenchRow",
    "ChangevalOp",
    "CheckReport",
    "CutOp",
    "FuzzReport",
    "LinkOp",
    "MismatchInfo",
    "NewOp",
    "OpResult",
    "OpTrace",
    "PsortOp",
    "RunReport",
    "TraceRecord",
    "dump_trace",
    "load_trace",
    "parse_record",
]
