"""
Multiway cut export writers
Records CSV/JSON with a separate timing metadata file, summary CSV, traces and reports
"""
from typing import Any, Dict, List, Optional, Sequence
import json
import csv
import os
from datetime import datetime

import numpy as np
import pandas as pd

from ..bench.suite import RECORD_COLUMNS, BenchmarkRecord
from ..optim.trace import OptimizerResult
from ..solver.report import SolverReport
from ..utils.config import setup_logging
from ..utils.errors import ParseError

logger = setup_logging()


def _json_default(value: Any):
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, np.ndarray):
        return value.tolist()
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def _csv_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "1" if value else "0"
    return repr(float(value)) if isinstance(value, float) else str(value)


def export_records(records: Sequence[BenchmarkRecord], name: str,
                   output_dir: str = "bench_out") -> Dict[str, str]:
    """
    Write <name>.csv, <name>.json and <name>.meta.json.

    The CSV and JSON files contain only run-independent fields (wall_ms is left
    empty), so re-running a configuration reproduces them byte for byte. Wall
    times, skipped rows and the timestamp go to the metadata file.

    Args:
        records: Benchmark records in report order
        name: File stem
        output_dir: Output directory, created when missing

    Returns:
        Paths keyed by 'csv', 'json' and 'meta'
    """
    os.makedirs(output_dir, exist_ok=True)
    paths = {
        "csv": os.path.join(output_dir, f"{name}.csv"),
        "json": os.path.join(output_dir, f"{name}.json"),
        "meta": os.path.join(output_dir, f"{name}.meta.json"),
    }
    rows = [record.to_row() for record in records]

    with open(paths["csv"], "w", newline="", encoding="utf-8") as csvfile:
        writer = csv.DictWriter(csvfile, fieldnames=RECORD_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows({key: _csv_value(row[key]) for key in RECORD_COLUMNS} for row in rows)

    with open(paths["json"], "w", encoding="utf-8") as f:
        json.dump(rows, f, indent=2, default=_json_default)
        f.write("\n")

    meta = {
        "name": name,
        "generated_at": datetime.now().isoformat(timespec="seconds"),
        "rows": len(rows),
        "wall_ms": [
            {"instance": r.instance, "backend": r.backend, "wall_ms": r.wall_ms} for r in records
        ],
        "skipped": [
            {"instance": r.instance, "backend": r.backend, "message": r.message}
            for r in records if r.skipped
        ],
    }
    with open(paths["meta"], "w", encoding="utf-8") as f:
        json.dump(meta, f, indent=2, default=_json_default)

    logger.info(f"Records exported: {paths['csv']} ({len(rows)} rows)")
    return paths


def _parse_optional(text: str, cast):
    return None if text == "" else cast(text)


def read_records(csv_path: str, meta_path: Optional[str] = None) -> List[Dict[str, Any]]:
    """
    Read a records CSV back into dicts, merging wall times from the metadata file.

    The metadata file defaults to <stem>.meta.json next to the CSV and is optional.

    Raises:
        ParseError: Header differs from the record columns or a value is malformed
    """
    with open(csv_path, "r", newline="", encoding="utf-8") as csvfile:
        reader = csv.DictReader(csvfile)
        if reader.fieldnames != RECORD_COLUMNS:
            raise ParseError(f"Unexpected records header {reader.fieldnames}", 1)
        records = []
        for line, row in enumerate(reader, start=2):
            try:
                records.append({
                    "instance": row["instance"],
                    "backend": row["backend"],
                    "best_energy": _parse_optional(row["best_energy"], float),
                    "opt_energy": _parse_optional(row["opt_energy"], float),
                    "gap": _parse_optional(row["gap"], float),
                    "hit": _parse_optional(row["hit"], lambda v: bool(int(v))),
                    "opt_prob": _parse_optional(row["opt_prob"], float),
                    "evals": _parse_optional(row["evals"], int),
                    "wall_ms": _parse_optional(row["wall_ms"], float),
                    "seed": int(row["seed"]),
                })
            except ValueError as e:
                raise ParseError(f"Malformed record: {e}", line)

    if meta_path is None and csv_path.endswith(".csv"):
        meta_path = csv_path[:-len(".csv")] + ".meta.json"
    if meta_path and os.path.exists(meta_path):
        with open(meta_path, "r", encoding="utf-8") as f:
            times = {(t["instance"], t["backend"]): t["wall_ms"] for t in json.load(f).get("wall_ms", [])}
        for record in records:
            if record["wall_ms"] is None:
                record["wall_ms"] = times.get((record["instance"], record["backend"]))
    return records


def export_summary(summary: pd.DataFrame, output_path: str) -> str:
    os.makedirs(os.path.dirname(output_path) or ".", exist_ok=True)
    summary.to_csv(output_path, index=False, lineterminator="\n")
    logger.info(f"Summary exported: {output_path} ({len(summary)} rows)")
    return output_path


def export_traces(results: Dict[str, OptimizerResult], output_path: str) -> str:
    """One CSV with every optimizer's evaluation trace, tagged by method"""
    frames = []
    for method, result in results.items():
        frame = result.trace.to_frame()
        frame.insert(0, "method", method)
        frames.append(frame)
    table = pd.concat(frames, ignore_index=True) if frames else pd.DataFrame()
    os.makedirs(os.path.dirname(output_path) or ".", exist_ok=True)
    table.to_csv(output_path, index=False, lineterminator="\n")
    logger.info(f"Optimizer traces exported: {output_path} ({len(table)} evaluations)")
    return output_path


def report_to_json(report: SolverReport, include_timing: bool = False) -> str:
    data = report.to_dict()
    if include_timing:
        data["wall_time"] = report.wall_time
    return json.dumps(data, indent=2, default=_json_default)


def report_to_text(report: SolverReport) -> str:
    """Short human-readable report"""
    lines = [
        f"backend: {report.backend_name}",
        f"energy: {report.best_energy:g}",
        f"bitstring: {report.bitstring}",
        f"feasible: {'yes' if report.feasible else 'no'}",
    ]
    if report.best_cut is not None:
        lines.append(f"cut cost: {report.best_cut.cut_cost:g}")
        edges = " ".join(f"{u}-{v}" for u, v in report.best_cut.cut_edges)
        lines.append(f"cut edges: {edges}")
    lines.append(f"evaluations: {report.samples_evaluated}")
    if report.counts:
        lines.append(f"shots: {report.total_shots}")
    return "\n".join(lines)
