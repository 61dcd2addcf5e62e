"""Dynamic partial sorting - tournament trees and layered tournament trees over mutable lists."""

from .errors import Mismatch, PartialSortError, TraceError
from .metrics import Metrics

__all__ = ["Metrics", "Mismatch", "PartialSortError", "TraceError"]
