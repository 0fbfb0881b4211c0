"""
Export Module for the multiway cut system
Benchmark records, summaries, optimizer traces and solver reports
"""

from .writers import (
    export_records, read_records, export_summary, export_traces,
    report_to_json, report_to_text
)

__all__ = [
    'export_records',
    'read_records',
    'export_summary',
    'export_traces',
    'report_to_json',
    'report_to_text'
]
