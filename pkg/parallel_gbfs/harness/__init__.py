from .records import CSV_COLUMNS, FAIL_CAUSES, RunRecord, append_records, read_records, records_frame
from .metrics import AggregateReport, ConfigSummary, aggregate, geometric_mean
from .benchmark import RunLimits, run_benchmark, run_one
from .plots import DIAGONALS, PlotData, emit_plot_data, plot_data
from .suite import Suite, desk_suite, load_suite, plateau_suite, save_suite, standard_configs

__all__ = [
    "CSV_COLUMNS",
    "FAIL_CAUSES",
    "RunRecord",
    "append_records",
    "read_records",
    "records_frame",
    "AggregateReport",
    "ConfigSummary",
    "aggregate",
    "geometric_mean",
    "RunLimits",
    "run_benchmark",
    "run_one",
    "DIAGONALS",
    "PlotData",
    "emit_plot_data",
    "plot_data",
    "Suite",
    "desk_suite",
    "load_suite",
    "plateau_suite",
    "save_suite",
    "standard_configs",
]
