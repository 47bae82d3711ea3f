"""JSON and plain-text reports for trial summaries."""

from __future__ import annotations

import json
import sys
from typing import Iterable, TextIO

from . import catalog
from .errors import ReportIOError
from .harness import TrialSummary

TIMING_FIELDS = ("wall_ms",)


def summary_record(summary: TrialSummary) -> dict:
    """One result entry; keys are emitted in this order."""
    return {
        "id": summary.id,
        "paper_anchor": catalog.get(summary.id).anchor,
        "n": summary.n,
        "pass": summary.passed,
        "max_rel_residual": summary.max_rel_residual,
        "wall_ms": round(summary.wall_time * 1000, 3),
        "expected": "pass" if summary.holds else "fail",
        "ok": summary.ok,
        "pass_count": summary.pass_count,
        "failure_rate": summary.failure_rate,
        "sampler": summary.sampler,
        "seed": summary.seed,
        "widths": list(summary.widths),
        "per_width": {str(w): v for w, v in summary.per_width.items()},
        "histogram": summary.histogram,
        "max_tangency_residual": summary.max_tangency_residual,
        "contact_failures": summary.contact_failures,
        "constraint_failures": summary.constraint_failures,
        "worst": summary.worst,
    }


def report_document(summaries: Iterable[TrialSummary], seed: int, widths, tolerance: float) -> dict:
    results = [summary_record(s) for s in summaries]
    return {
        "run": {"seed": seed, "widths": list(widths), "tolerance": tolerance},
        "results": results,
    }


def strip_timing(document: dict) -> dict:
    """Copy of a report without timing fields, for determinism comparisons."""
    return {
        "run": dict(document["run"]),
        "results": [{k: v for k, v in r.items() if k not in TIMING_FIELDS} for r in document["results"]],
    }


def render_json(document: dict) -> str:
    return json.dumps(document, indent=2) + "\n"


def _status(record: dict) -> str:
    if record["expected"] == "fail":
        return "caught" if record["ok"] else "MISSED"
    return "pass" if record["ok"] else "FAIL"


def render_text(document: dict) -> str:
    run = document["run"]
    header = ("id", "status", "n", "passed", "max_rel_residual", "max_tangency", "wall_ms")
    rows = [
        (
            r["id"],
            _status(r),
            str(r["n"]),
            str(r["pass_count"]),
            f"{r['max_rel_residual']:.3e}",
            f"{r['max_tangency_residual']:.3e}",
            f"{r['wall_ms']:.0f}",
        )
        for r in document["results"]
    ]
    widths = [max(len(row[i]) for row in [header, *rows]) for i in range(len(header))]
    lines = [
        f"seed {run['seed']}  widths {','.join(map(str, run['widths']))}  tolerance {run['tolerance']:g}",
        "  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip(),
    ]
    for row in rows:
        cells = [row[0].ljust(widths[0]), row[1].ljust(widths[1])]
        cells += [cell.rjust(w) for cell, w in zip(row[2:], widths[2:])]
        lines.append("  ".join(cells))
    return "\n".join(lines) + "\n"


def write_report(
    summaries: Iterable[TrialSummary],
    fmt: str = "json",
    out: str | None = None,
    *,
    seed: int = 0,
    widths=(53,),
    tolerance: float = catalog.DEFAULT_TOLERANCE,
    stream: TextIO | None = None,
) -> str:
    """Render summaries as ``json`` or ``text`` and write to ``out`` (a path) or ``stream``.

    Returns the rendered document.  Raises ReportIOError if ``out`` cannot be written.
    """
    document = report_document(summaries, seed, widths, tolerance)
    if fmt == "json":
        text = render_json(document)
    elif fmt == "text":
        text = render_text(document)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    emit(text, out, stream)
    return text


def emit(text: str, out: str | None = None, stream: TextIO | None = None) -> None:
    if out is None:
        (stream or sys.stdout).write(text)
        return
    try:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise ReportIOError(f"cannot write report to {out}: {exc.strerror or exc}") from exc
