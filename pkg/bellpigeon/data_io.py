"""CSV/JSON rendering of results and writing them to a file or standard output."""

import csv
import io
import json
import logging
import math
from pathlib import Path
from typing import Any

import click

from bellpigeon.config import JSON_SCHEMA, OUTPUT_SIGNIFICANT_DIGITS, OUTPUT_ZERO_SNAP
from bellpigeon.models import (
    CampaignResult,
    PptVerdict,
    ScanPoint,
    SelectionResult,
)

logger = logging.getLogger(__name__)

SCAN_HEADER = ("theta_deg", "total", "zz_component", "xx_component")


def format_float(value: float) -> str:
    """Locale-independent text with OUTPUT_SIGNIFICANT_DIGITS significant digits.

    Magnitudes below OUTPUT_ZERO_SNAP are rounding noise and print as 0.
    """
    if abs(value) < OUTPUT_ZERO_SNAP:
        value = 0.0  # also drops the sign of -0.0
    return f"{value:.{OUTPUT_SIGNIFICANT_DIGITS}g}"


def rounded(value: float) -> float:
    """Round a float to the printed precision so JSON matches CSV output."""
    return float(format_float(value))


def scan_rows(points: list[ScanPoint]) -> list[dict[str, float]]:
    """Scan points as rows keyed by SCAN_HEADER, theta in degrees."""
    return [
        {
            "theta_deg": math.degrees(point.theta),
            "total": point.total,
            "zz_component": point.zz_part,
            "xx_component": point.xx_part,
        }
        for point in points
    ]


def render_scan_csv(points: list[ScanPoint]) -> str:
    """CSV text with header theta_deg,total,zz_component,xx_component."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(SCAN_HEADER)
    for row in scan_rows(points):
        writer.writerow([format_float(row[name]) for name in SCAN_HEADER])
    return buffer.getvalue()


def render_scan_json(points: list[ScanPoint], state: str) -> str:
    """JSON document holding the scan rows."""
    rows = [
        {name: rounded(value) for name, value in row.items()}
        for row in scan_rows(points)
    ]
    return render_json({"state": state, "points": rows})


def render_json(payload: dict[str, Any]) -> str:
    """Serialise a payload with the schema tag first."""
    document = {"schema": JSON_SCHEMA, **payload}
    return json.dumps(document, indent=2) + "\n"


def sample_payload(result: CampaignResult) -> dict[str, Any]:
    """JSON fields for a sampling campaign."""
    stats, report = result.stats, result.report
    payload: dict[str, Any] = {
        "n": stats.n,
        "pairs": [
            {
                "setting_a": pair.setting_a,
                "setting_b": pair.setting_b,
                "e": rounded(pair.e),
                "stderr": rounded(pair.stderr),
            }
            for pair in stats.pairs
        ],
        "sum": rounded(stats.total),
        "sum_stderr": rounded(stats.total_stderr),
        "inequality": report.inequality.value,
        "bound": report.bound,
        "violated": report.violated,
        "seed": result.seed,
    }
    if stats.draw_sums is not None:
        payload["draw_sums"] = sorted(stats.draw_sums)
    return payload


def pigeonhole_payload(
    n: int, label: str, report: list[tuple[tuple[int, int], SelectionResult]]
) -> dict[str, Any]:
    """JSON fields for a pigeonhole report."""
    return {
        "n": n,
        "label": label,
        "pairs": [
            {
                "pair": list(pair),
                "amplitude": {
                    "re": rounded(result.amplitude.real),
                    "im": rounded(result.amplitude.imag),
                },
                "probability": rounded(result.probability),
            }
            for pair, result in report
        ],
    }


def witness_payload(
    p: float, expectation: float, verdict: PptVerdict
) -> dict[str, Any]:
    """JSON fields for a Werner witness evaluation."""
    return {
        "p": p,
        "expectation": rounded(expectation),
        "entangled_flag": expectation < 0.0,
        "ppt_verdict": {
            "ppt": verdict.ppt,
            "min_pt_eigenvalue": rounded(verdict.min_pt_eigenvalue),
        },
    }


def write_output(text: str, output_path: str | None) -> None:
    """Write text to output_path, or to standard output when it is None.

    Raises:
        OSError: If the file cannot be written
    """
    if output_path is None:
        click.echo(text, nl=False)
        return

    # Ensure output directory exists
    Path(output_path).parent.mkdir(parents=True, exist_ok=True)
    with open(output_path, "w", newline="") as f:
        f.write(text)
    logger.info(f"Wrote {output_path}")
