"""
Witt Tensor - Report Rendering

Turns VerificationReport and CompositionReport objects into text, markdown
or JSON. JSON output is key-sorted so equal reports render to equal bytes.
"""

import json
from typing import Any, Dict, List, Sequence

from witt_tensor.schemas import (
    CheckStatus,
    CompositionReport,
    OutputFormat,
    VerificationReport,
)

WEIGHT_ROW_LABELS = {
    "A": "𝒜",
    "A_s": "𝒜_s",
    "A_a": "𝒜_a",
    "A+": "𝒜⁺",
    "A_s+": "𝒜_s⁺",
    "A_a+": "𝒜_a⁺",
}

STATUS_MARKS = {
    CheckStatus.PASS: "PASS",
    CheckStatus.FAIL: "FAIL",
    CheckStatus.SKIPPED: "SKIP",
}


# ============================================================================
# COMPOSITION SERIES
# ============================================================================

def format_series_line(report: CompositionReport) -> str:
    """'21 ⊃ 14 ⊃ 7 ⊃ 0; factors L⁻(2), L⁻(4), L⁻(6)' with factors top-down."""
    dims = " ⊃ ".join(str(d) for d in report.chain)
    factors = ", ".join(label.lowest_notation() for label in report.factors)
    return f"{dims}; factors {factors}"


def format_series_block(report: CompositionReport) -> List[str]:
    lines = [f"{report.module_name} (dim {report.module_dim}): {format_series_line(report)}"]
    lines.append("  top-down:  " + ", ".join(str(label) for label in report.factors))
    lines.append("  bottom-up: " + ", ".join(label.notation() for label in reversed(report.factors)))
    lines.append(f"  [M] = {report.grothendieck}")
    return lines


def render_series(report: CompositionReport, fmt: OutputFormat) -> str:
    if fmt == OutputFormat.JSON:
        return _dumps(report.model_dump(mode="json"))
    if fmt == OutputFormat.MARKDOWN:
        return "\n".join(_series_markdown([report])) + "\n"
    return "\n".join(format_series_block(report)) + "\n"


# ============================================================================
# VERIFICATION REPORTS
# ============================================================================

def render_text(report: VerificationReport) -> str:
    lines = [f"witt-tensor {report.mode.value} p={report.prime}: {report.status.value.upper()}"]
    phase = None
    for check in report.checks:
        if check.phase != phase:
            phase = check.phase
            lines.append(f"  {phase.value}")
        detail = f"  {check.detail}" if check.detail else ""
        lines.append(f"    [{STATUS_MARKS[check.status]}] {check.name}{detail}")

    weights = report.tables.get("weights")
    if weights:
        lines.append(f"  weight spaces (λ = 0..{report.prime - 1})")
        for name, dims in weights["rows"].items():
            lines.append(f"    {WEIGHT_ROW_LABELS.get(name, name):<5} {' '.join(str(d) for d in dims)}")

    if report.series:
        lines.append("  composition series")
        for series in report.series:
            lines.extend("    " + line for line in format_series_block(series))

    failures = report.failures()
    lines.append(f"  {len(report.checks) - len(failures)}/{len(report.checks)} checks passed")
    return "\n".join(lines) + "\n"


def render_markdown(report: VerificationReport) -> str:
    p = report.prime
    lines = [f"# witt-tensor {report.mode.value}, p = {p}", "", f"**Status:** {report.status.value}", ""]

    lines += ["## Checks", "", "| phase | check | status | detail |", "|---|---|---|---|"]
    for check in report.checks:
        detail = check.detail.replace("|", "\\|")
        lines.append(f"| {check.phase.value} | `{check.name}` | {check.status.value} | {detail} |")
    lines.append("")

    weights = report.tables.get("weights")
    if weights:
        header = " | ".join(f"λ={lam}" for lam in range(p))
        lines += ["## Dimensions of weight spaces", "", f"| module | {header} |", "|---" * (p + 1) + "|"]
        for name, dims in weights["rows"].items():
            lines.append(f"| {WEIGHT_ROW_LABELS.get(name, name)} | " + " | ".join(map(str, dims)) + " |")
        lines.append("")

    for kind in ("sym", "alt"):
        table = report.tables.get(f"{kind}_chain")
        if table:
            nested = "nested" if table["nested"] else "not nested"
            lines += [f"## {kind} chain ({nested})", "", "| generator degree | dim | head |", "|---|---|---|"]
            heads = table["heads"] or [None] * len(table["degrees"])
            for degree, dim, head in zip(table["degrees"], table["dims"], heads):
                label = f"L({head['highest_weight']}) = L⁻({head['lowest_weight']})" if head else "?"
                lines.append(f"| {degree} | {dim} | {label} |")
            lines.append("")

    if report.series:
        lines += ["## Composition series", ""] + _series_markdown(report.series) + [""]
    return "\n".join(lines)


def _series_markdown(reports: Sequence[CompositionReport]) -> List[str]:
    lines = []
    for report in reports:
        lines.append(f"- **{report.module_name}**: {format_series_line(report)}")
        lines.append(f"  - bottom-up: {', '.join(label.notation() for label in reversed(report.factors))}")
        lines.append(f"  - [M] = `{report.grothendieck}`")
    return lines


def report_payload(report: VerificationReport, include_timings: bool = True) -> Dict[str, Any]:
    payload = report.model_dump(mode="json")
    payload.pop("mode", None)
    if not include_timings:
        payload.pop("timings", None)
    return payload


def _dumps(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def render_reports(reports: Sequence[VerificationReport], fmt: OutputFormat,
                   include_timings: bool = True) -> str:
    """One report renders on its own; several become a batch with an overall status."""
    if fmt == OutputFormat.JSON:
        if len(reports) == 1:
            return _dumps(report_payload(reports[0], include_timings))
        return _dumps({
            "status": overall_status(reports).value,
            "reports": [report_payload(r, include_timings) for r in reports],
        })
    render = render_markdown if fmt == OutputFormat.MARKDOWN else render_text
    body = "\n".join(render(r) for r in reports)
    if len(reports) > 1:
        summary = ", ".join(f"p={r.prime} {r.status.value}" for r in reports)
        body += f"\noverall: {overall_status(reports).value} ({summary})\n"
    return body


def overall_status(reports: Sequence[VerificationReport]) -> CheckStatus:
    if reports and all(r.status == CheckStatus.PASS for r in reports):
        return CheckStatus.PASS
    return CheckStatus.FAIL
