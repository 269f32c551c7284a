"""Writes evaluation reports: full-precision JSON and a rounded delimited table."""
import json
import logging
from pathlib import Path
from typing import Tuple, Union

from helmfc.models import ComparisonReport, CvReport
from helmfc.ui.table_renderer import TableRenderer

logger = logging.getLogger(__name__)

Report = Union[CvReport, ComparisonReport]


def report_json(report: Report) -> str:
    return json.dumps(report.to_dict(), indent=2) + "\n"


def write_report(report: Report, json_path: Path, table_path: Path = None) -> Tuple[Path, Path]:
    """Write ``report`` as JSON and as a table; the table defaults to the JSON path with a .tsv suffix."""
    json_path = Path(json_path)
    table_path = Path(table_path) if table_path is not None else json_path.with_suffix(".tsv")
    json_path.parent.mkdir(parents=True, exist_ok=True)
    json_path.write_text(report_json(report), encoding="utf-8")
    renderer = TableRenderer()
    if isinstance(report, ComparisonReport):
        table = renderer.render_comparison(report)
    else:
        table = renderer.render(report)
    table_path.write_text(table, encoding="utf-8")
    logger.info("Wrote report to %s and %s", json_path, table_path)
    return json_path, table_path
