"""
Benchmark summaries
Per (backend, size bucket) hit rates, gap quantiles and sampling probabilities
"""
from typing import Iterable, List, Union

import pandas as pd

from .suite import BenchmarkRecord
from ..utils.config import setup_logging

logger = setup_logging()

SUMMARY_COLUMNS = [
    "backend", "bucket", "rows", "solved", "hit_rate", "gap_median", "gap_q25", "gap_q75",
    "opt_prob_mean", "wall_ms_mean",
]


def _quantile(values: pd.Series, q: float):
    values = values.dropna()
    if values.empty:
        return None
    return float(values.astype(float).quantile(q, interpolation="lower"))


def _mean(values: pd.Series):
    values = values.dropna()
    if values.empty:
        return None
    return float(values.astype(float).mean())


def records_frame(records: Iterable[Union[BenchmarkRecord, dict]]) -> pd.DataFrame:
    """Records as a DataFrame sorted by (instance, backend)"""
    rows: List[dict] = []
    for record in records:
        if isinstance(record, BenchmarkRecord):
            row = {
                "instance": record.instance, "backend": record.backend,
                "best_energy": record.best_energy, "gap": record.gap, "hit": record.hit,
                "opt_prob": record.opt_prob, "wall_ms": record.wall_ms, "bucket": record.bucket,
            }
        else:
            row = dict(record)
            row.setdefault("bucket", BenchmarkRecord(
                row["instance"], row["backend"], None, None, None, None, None, None, None, 0).bucket)
        rows.append(row)
    frame = pd.DataFrame(rows, columns=["instance", "backend", "best_energy", "gap", "hit",
                                        "opt_prob", "wall_ms", "bucket"])
    return frame.sort_values(["instance", "backend"], kind="mergesort").reset_index(drop=True)


def summarize(records: Iterable[Union[BenchmarkRecord, dict]]) -> pd.DataFrame:
    """
    Summary table with one row per (backend, bucket).

    Gap quantiles use pandas' "lower" interpolation, so every reported gap is one
    of the observed gaps. Records are sorted before aggregation, which makes the
    table independent of the input order.

    Args:
        records: BenchmarkRecord objects or dicts with the record fields

    Returns:
        DataFrame with SUMMARY_COLUMNS sorted by (backend, bucket)
    """
    frame = records_frame(records)
    rows = []
    for (backend, bucket), group in frame.groupby(["backend", "bucket"], sort=True):
        solved = group[group["best_energy"].notna()]
        hits = solved["hit"].dropna()
        rows.append({
            "backend": backend,
            "bucket": bucket,
            "rows": int(len(group)),
            "solved": int(len(solved)),
            "hit_rate": float(hits.astype(bool).mean()) if not hits.empty else None,
            "gap_median": _quantile(solved["gap"], 0.5),
            "gap_q25": _quantile(solved["gap"], 0.25),
            "gap_q75": _quantile(solved["gap"], 0.75),
            "opt_prob_mean": _mean(solved["opt_prob"]),
            "wall_ms_mean": _mean(solved["wall_ms"]),
        })
    logger.debug(f"Summarized {len(frame)} records into {len(rows)} rows")
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)
