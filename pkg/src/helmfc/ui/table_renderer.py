from typing import List, Optional, Sequence

from helmfc.models import BinaryLabel, ComparisonReport, CvReport


class TableRenderer:
    """Renders fold x class accuracy tables: rows Fold 1..k plus Average, an NC/ADHD column pair per variant."""

    def __init__(self, decimals: int = 4, delimiter: str = "\t"):
        self.decimals = decimals
        self.delimiter = delimiter
        self.MISSING = "n/a"
        self.CLASSES = [BinaryLabel.NC, BinaryLabel.ADHD]

    def render(self, report: CvReport) -> str:
        return self.render_many([report])

    def render_comparison(self, comparison: ComparisonReport) -> str:
        return self.render_many(comparison.reports)

    def render_many(self, reports: Sequence[CvReport]) -> str:
        """One table for reports that share k."""
        if not reports:
            raise ValueError("nothing to render")
        k = reports[0].k
        if any(report.k != k for report in reports):
            raise ValueError("all reports in one table must use the same k")
        lines = [self._header(reports)]
        per_fold = [report.per_fold_class_mean() for report in reports]
        for fold in range(k):
            cells = [self._format(rows[fold][cls]) for rows in per_fold for cls in self.CLASSES]
            lines.append(self._row(f"Fold {fold + 1}", cells))
        averages = [report.overall_class_mean() for report in reports]
        lines.append(self._row("Average", [self._format(mean[cls]) for mean in averages for cls in self.CLASSES]))
        return "\n".join(lines) + "\n"

    def _header(self, reports: Sequence[CvReport]) -> str:
        columns = [
            f"{report.label or 'model'} {cls.name}" for report in reports for cls in self.CLASSES
        ]
        return self._row("Fold", columns)

    def _row(self, first: str, cells: List[str]) -> str:
        return self.delimiter.join([first, *cells])

    def _format(self, value: Optional[float]) -> str:
        if value is None:
            return self.MISSING
        return f"{value:.{self.decimals}f}"
