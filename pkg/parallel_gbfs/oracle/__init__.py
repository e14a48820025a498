from .graph import OracleCapError, OracleConfig
from .hwm import HwmTable, high_water_marks
from .bts import BtsSet, OracleInconclusive, bts_enumerate, bts_via_hwm
from .check import ConstraintReport, FingerprintMismatchError, check_trace_constrained

__all__ = [
    "OracleCapError",
    "OracleConfig",
    "HwmTable",
    "high_water_marks",
    "BtsSet",
    "OracleInconclusive",
    "bts_enumerate",
    "bts_via_hwm",
    "ConstraintReport",
    "FingerprintMismatchError",
    "check_trace_constrained",
]
