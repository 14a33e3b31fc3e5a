"""Run reports, comparison CSVs and console summaries."""
import csv
import io
import json
import logging
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Any, Dict, List, Optional

import jsonschema
from rich.table import Table

from ..core.benchmark import Comparison
from ..core.ranking import Dataset
from ..core.votes import dataset_digest, file_digest
from ..errors import InvalidStateError

logger = logging.getLogger(__name__)

CSV_HEADER = ("method", "seed", "best_kt", "steps", "seconds", "converged")


def dataset_summary(ds: Dataset, path: Optional[Path] = None) -> Dict[str, Any]:
    """Digest of the input: size, kind and hashes."""
    return {
        "n": ds.n,
        "votes": len(ds.votes),
        "kind": ds.kind.value,
        "pair_weight": str(ds.pair_weight),
        "digest": dataset_digest(ds),
        "file_hash": file_digest(path) if path is not None else None,
    }


@dataclass
class RunReport:
    """Everything one CLI command produced."""

    command: List[str]
    dataset: Dict[str, Any]
    method: str
    result: Dict[str, Any]
    seconds: float
    seed: Optional[int]
    oracle: Optional[Dict[str, Any]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "command": list(self.command),
            "dataset": dict(self.dataset),
            "method": self.method,
            "result": self.result,
            "oracle": self.oracle,
            "seconds": self.seconds,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def load_schema() -> Dict[str, Any]:
    """The JSON schema shipped with the package."""
    text = resources.files("kemenyqa").joinpath("schemas/run_report.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


def validate_report(report: RunReport) -> Dict[str, Any]:
    """Check the report as it will be written against the shipped schema.

    Returns the JSON-decoded form that was validated.
    """
    data = json.loads(report.to_json())
    try:
        jsonschema.validate(instance=data, schema=load_schema())
    except jsonschema.ValidationError as e:
        path = "/".join(str(p) for p in e.absolute_path) or "<root>"
        raise InvalidStateError(f"Run report does not match schema at {path}: {e.message}") from e
    return data


def oracle_comparison(kt: float, min_kt: float, accuracy: int) -> Dict[str, Any]:
    return {"min_kt": min_kt, "kt_gap": kt - min_kt, "accuracy": accuracy}


def comparison_csv(comparison: Comparison) -> str:
    """Rows per run, then KwikSort, then one summary row per threshold."""
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    for row in comparison.rows:
        writer.writerow(row.to_row())
    for stat in comparison.thresholds:
        writer.writerow({
            "method": f"kwiksort<{stat.name}",
            "seed": "",
            "best_kt": stat.threshold,
            "steps": "-" if stat.mean_trials is None else round(stat.mean_trials, 3),
            "seconds": "-" if stat.mean_seconds is None else round(stat.mean_seconds, 6),
            "converged": "",
        })
    return buffer.getvalue()


def summary_table(report: RunReport) -> Table:
    """Compact console view of a run report."""
    table = Table(title=f"{report.method} on {report.dataset['n']} candidates")
    table.add_column("Field", style="cyan")
    table.add_column("Value")
    result = report.result
    for key in ("ranking", "cumulative_kt", "normalized_kt", "min_kt", "energy", "num_occ",
                "iterations", "converged"):
        if key in result:
            table.add_row(key, str(result[key]))
    if report.oracle:
        table.add_row("kt_gap", str(report.oracle["kt_gap"]))
        table.add_row("accuracy", str(report.oracle["accuracy"]))
    table.add_row("seconds", f"{report.seconds:.3f}")
    return table


def comparison_table(comparison: Comparison) -> Table:
    table = Table(title="Iterative method vs KwikSort")
    for column in CSV_HEADER:
        table.add_column(column)
    for row in comparison.rows:
        table.add_row(*(str(v) for v in row.to_row().values()))
    for stat in comparison.thresholds:
        table.add_row(f"kwiksort<{stat.name}", "", f"{stat.threshold:g}", stat.display(), "", "")
    return table


def solve_csv(report: RunReport) -> str:
    """One comparison-style row for a single solve."""
    result = report.result
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_HEADER, lineterminator="\n")
    writer.writeheader()
    writer.writerow({
        "method": report.method,
        "seed": "" if report.seed is None else report.seed,
        "best_kt": result.get("cumulative_kt", ""),
        "steps": result.get("iterations", len(result.get("trial_kts", [])) or 1),
        "seconds": round(report.seconds, 6),
        "converged": result.get("converged", ""),
    })
    return buffer.getvalue()
