"""
Bench Module for the multiway cut system
Instance suites run across backends and summarized against the exact oracle
"""

from .config import BackendSpec, BenchmarkConfig, parse_bench_config, load_bench_config
from .suite import BenchmarkRecord, RECORD_COLUMNS, relative_gap, run_row, run_suite
from .summary import SUMMARY_COLUMNS, records_frame, summarize

__all__ = [
    'BackendSpec',
    'BenchmarkConfig',
    'parse_bench_config',
    'load_bench_config',
    'BenchmarkRecord',
    'RECORD_COLUMNS',
    'relative_gap',
    'run_row',
    'run_suite',
    'SUMMARY_COLUMNS',
    'records_frame',
    'summarize'
]
