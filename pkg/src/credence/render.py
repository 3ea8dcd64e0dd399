"""Text rendering: tables, ASCII histograms and CSV export.

Tables and histograms honor RenderOptions.precision; CSV always emits full
``repr`` precision so re-parsing a CSV reproduces the summary statistics to
float accuracy.  All output is deterministic: identical inputs yield
byte-identical text.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass

from .confidence import BeliefDistribution, ConfidenceSummary
from .inference import StateDistribution
from .scenario import ScenarioReport

FORMATS = ("table", "csv", "histogram")


@dataclass(frozen=True)
class RenderOptions:
    format: str = "table"
    precision: int = 3
    width: int = 60

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.format!r}")
        if not 1 <= self.precision <= 12:
            raise ValueError(f"precision must be in [1, 12], got {self.precision}")
        if self.width < 10:
            raise ValueError(f"histogram width must be >= 10, got {self.width}")

    def fmt(self, x: float) -> str:
        return f"{x:.{self.precision}f}"


def render_posterior(dist: StateDistribution, opts: RenderOptions) -> str:
    """One "states: mass" line per combination."""
    lines = [
        f"{', '.join(combo)}: {opts.fmt(mass)}" for combo, mass in dist.items()
    ]
    return "\n".join(lines)


def render_distribution(
    dist: BeliefDistribution, summary: ConfidenceSummary, opts: RenderOptions
) -> str:
    """Contingency set, one row per combination, then the summary block."""
    header = list(dist.contingency.variables)
    value_col = f"BEL({dist.target_variable}={dist.target_state} | c)"
    mass_col = "BEL(c)"
    rows = [
        [*c.states, opts.fmt(c.value), opts.fmt(c.mass)] for c in dist.contributions
    ]
    table = _columns([*header, value_col, mass_col], rows)

    cvars = ", ".join(dist.contingency.variables) or "(empty)"
    return "\n".join(
        [f"contingency: {cvars}", *table, *_summary_lines(summary, opts)]
    )


def render_histogram(dist: BeliefDistribution, opts: RenderOptions) -> str:
    """Ascending-value bars; bar length = round(mass * width)."""
    lines = []
    for p in dist.points:
        bars = "#" * round(p.mass * opts.width)
        lines.append(f"{opts.fmt(p.value)} |{bars} {opts.fmt(p.mass)}")
    return "\n".join(lines)


def render_distribution_histogram(
    dist: BeliefDistribution, summary: ConfidenceSummary, opts: RenderOptions
) -> str:
    cvars = ", ".join(dist.contingency.variables) or "(empty)"
    return "\n".join(
        [
            f"contingency: {cvars}",
            render_histogram(dist, opts),
            *_summary_lines(summary, opts),
        ]
    )


def distribution_csv(dist: BeliefDistribution, summary: ConfidenceSummary) -> str:
    """Point rows, a blank line, then a one-row summary table."""
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["value", "mass"])
    for p in dist.points:
        w.writerow([repr(p.value), repr(p.mass)])
    w.writerow([])
    w.writerow(["mean", "sigma", "min", "max", "coverage"])
    w.writerow(_summary_row(summary))
    return out.getvalue()


def report_table(report: ScenarioReport, opts: RenderOptions) -> str:
    sections = []
    for snap in report.snapshots:
        body = render_distribution(snap.distribution, snap.summary, opts)
        sections.append(f"== step {snap.step} ==\n{body}")
    return "\n\n".join(sections)


def report_histogram(report: ScenarioReport, opts: RenderOptions) -> str:
    sections = []
    for snap in report.snapshots:
        body = render_distribution_histogram(snap.distribution, snap.summary, opts)
        sections.append(f"== step {snap.step} ==\n{body}")
    return "\n\n".join(sections)


def report_csv(report: ScenarioReport) -> str:
    """(step, value, mass) rows plus a second (step, summary...) table."""
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["step", "value", "mass"])
    for snap in report.snapshots:
        for p in snap.distribution.points:
            w.writerow([snap.step, repr(p.value), repr(p.mass)])
    w.writerow([])
    w.writerow(["step", "mean", "sigma", "min", "max", "coverage"])
    for snap in report.snapshots:
        w.writerow([snap.step, *_summary_row(snap.summary)])
    return out.getvalue()


def _summary_lines(summary: ConfidenceSummary, opts: RenderOptions) -> list[str]:
    lo, hi = summary.value_range
    return [
        f"mean     {opts.fmt(summary.mean)}",
        f"sigma    {opts.fmt(summary.std_dev)}",
        f"range    [{opts.fmt(lo)}, {opts.fmt(hi)}]",
        f"support  {summary.support_size}",
        f"coverage {opts.fmt(summary.coverage)}",
    ]


def _summary_row(summary: ConfidenceSummary) -> list[str]:
    lo, hi = summary.value_range
    return [
        repr(summary.mean),
        repr(summary.std_dev),
        repr(lo),
        repr(hi),
        repr(summary.coverage),
    ]


def _columns(header: list[str], rows: list[list[str]]) -> list[str]:
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return lines
