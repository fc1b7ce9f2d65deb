import logging
import os
from typing import Dict, Sequence

import pandas as pd

from errors import InputError
from services.engine_service import TaskOutcome

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = [
    "file", "task", "status", "verdict", "exit_code", "elapsed_s", "spairs", "groebner_runs",
    "largest_basis", "claims", "message",
]


class ReportService:
    """Batch summaries of engine runs as pandas DataFrames."""

    def summarize(self, outcomes: Sequence[TaskOutcome]) -> pd.DataFrame:
        """
        Build one row per processed problem file.

        Args:
            outcomes: Results of EngineService.run_file / run_batch

        Returns:
            DataFrame with the columns of SUMMARY_COLUMNS, in input order
        """
        rows = []
        for outcome in outcomes:
            counters = outcome.counters or {}
            certificate = outcome.certificate or {}
            rows.append({
                "file": outcome.path or "",
                "task": outcome.task or "",
                "status": outcome.status,
                "verdict": outcome.verdict or "",
                "exit_code": outcome.exit_code,
                "elapsed_s": round(outcome.elapsed, 3),
                "spairs": counters.get("spairs", 0),
                "groebner_runs": counters.get("groebner_runs", 0),
                "largest_basis": counters.get("largest_basis", 0),
                "claims": len(certificate.get("claims", [])),
                "message": outcome.message,
            })
        return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)

    def verdict_counts(self, summary: pd.DataFrame) -> pd.DataFrame:
        """Number of files per (task, verdict)."""
        if summary.empty:
            return pd.DataFrame(columns=["task", "verdict", "files"])
        counts = summary.groupby(["task", "verdict"], dropna=False).size()
        return counts.reset_index(name="files")

    def totals(self, summary: pd.DataFrame) -> Dict[str, float]:
        return {
            "files": int(len(summary)),
            "failed": int((summary["status"] == "error").sum()) if not summary.empty else 0,
            "undecided": int((summary["status"] == "undecided").sum()) if not summary.empty else 0,
            "spairs": int(summary["spairs"].sum()) if not summary.empty else 0,
            "elapsed_s": float(summary["elapsed_s"].sum()) if not summary.empty else 0.0,
        }

    def write(self, summary: pd.DataFrame, path: str) -> None:
        """Write the summary as CSV, or as a two-sheet workbook for .xlsx paths."""
        extension = os.path.splitext(path)[1].lower()
        if extension == ".csv":
            summary.to_csv(path, index=False)
        elif extension == ".xlsx":
            with pd.ExcelWriter(path, engine="xlsxwriter") as writer:
                summary.to_excel(writer, sheet_name="Runs", index=False)
                self.verdict_counts(summary).to_excel(writer, sheet_name="Verdicts", index=False)
        else:
            raise InputError(f"summary file must end in .csv or .xlsx, got {path!r}")
        logger.info("summary of %d runs written to %s", len(summary), path)
