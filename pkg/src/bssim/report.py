"""Profiling report documents: one row per run, renderable as an aligned
table (for humans) or JSON (for scripts).  Every numeric field is an exact
integer; rationals render as ``p/q``.  Rendering is fully deterministic."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .machine import RunResult


@dataclass(frozen=True)
class TraceRow:
    step: int
    node: int
    kind: str
    cost: int
    size_w: int
    unit: int
    offset: int


@dataclass(frozen=True)
class RunRow:
    input: tuple[str, ...]
    status: str
    steps: int
    weak_time: int
    weak_space: int
    unit_space: int
    best_offset: int
    budget_verdict: bool | None = None
    output: tuple[str, ...] = ()
    trace: tuple[TraceRow, ...] | None = None


@dataclass(frozen=True)
class ReportDocument:
    subject: str
    budget: str | None
    rows: tuple[RunRow, ...]


def run_row(
    input_text: tuple[str, ...],
    result: RunResult,
    budget_verdict: bool | None = None,
    with_trace: bool = False,
) -> RunRow:
    trace: tuple[TraceRow, ...] | None = None
    if with_trace and result.trace is not None:
        trace = tuple(
            TraceRow(
                step=e.step,
                node=e.node,
                kind=e.kind,
                cost=e.cost,
                size_w=e.measure.weak_size,
                unit=e.measure.unit_size,
                offset=e.measure.best_offset,
            )
            for e in result.trace
        )
    return RunRow(
        input=input_text,
        status=result.status_text(),
        steps=result.steps,
        weak_time=result.weak_time,
        weak_space=result.weak_space,
        unit_space=result.unit_space,
        best_offset=result.peak.best_offset,
        budget_verdict=budget_verdict,
        output=tuple(str(v) for v in result.output),
        trace=trace,
    )


def to_json(doc: ReportDocument) -> str:
    payload = {
        "subject": doc.subject,
        "budget": doc.budget,
        "runs": [
            {
                "input": list(r.input),
                "status": r.status,
                "steps": r.steps,
                "weak_time": r.weak_time,
                "weak_space": r.weak_space,
                "unit_space": r.unit_space,
                "best_offset": r.best_offset,
                "budget_verdict": r.budget_verdict,
                "output": list(r.output),
                **(
                    {
                        "trace": [
                            {
                                "step": t.step,
                                "node": t.node,
                                "kind": t.kind,
                                "cost": t.cost,
                                "size_w": t.size_w,
                                "unit": t.unit,
                                "offset": t.offset,
                            }
                            for t in r.trace
                        ]
                    }
                    if r.trace is not None
                    else {}
                ),
            }
            for r in doc.rows
        ],
    }
    return json.dumps(payload, indent=2) + "\n"


def from_json(text: str) -> ReportDocument:
    payload = json.loads(text)
    rows = []
    for r in payload["runs"]:
        trace = None
        if "trace" in r:
            trace = tuple(
                TraceRow(
                    step=t["step"],
                    node=t["node"],
                    kind=t["kind"],
                    cost=t["cost"],
                    size_w=t["size_w"],
                    unit=t["unit"],
                    offset=t["offset"],
                )
                for t in r["trace"]
            )
        rows.append(
            RunRow(
                input=tuple(r["input"]),
                status=r["status"],
                steps=r["steps"],
                weak_time=r["weak_time"],
                weak_space=r["weak_space"],
                unit_space=r["unit_space"],
                best_offset=r["best_offset"],
                budget_verdict=r["budget_verdict"],
                output=tuple(r.get("output", ())),
                trace=trace,
            )
        )
    return ReportDocument(
        subject=payload["subject"], budget=payload["budget"], rows=tuple(rows)
    )


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    out = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in rows:
        out.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(out)


def to_table(doc: ReportDocument) -> str:
    lines = [f"subject: {doc.subject}"]
    if doc.budget is not None:
        lines.append(f"budget: {doc.budget}")
    headers = [
        "input", "status", "steps", "weak_time", "weak_space",
        "unit_space", "best_offset", "budget_verdict",
    ]
    body = []
    for r in doc.rows:
        verdict = "-" if r.budget_verdict is None else ("pass" if r.budget_verdict else "fail")
        body.append(
            [
                ",".join(r.input) or "()",
                r.status,
                str(r.steps),
                str(r.weak_time),
                str(r.weak_space),
                str(r.unit_space),
                str(r.best_offset),
                verdict,
            ]
        )
    lines.append(_table(headers, body))
    for r in doc.rows:
        if r.output:
            lines.append(f"output[{','.join(r.input) or '()'}]: {','.join(r.output)}")
        if r.trace is not None:
            lines.append("")
            lines.append(f"trace[{','.join(r.input) or '()'}]:")
            lines.append(
                _table(
                    ["step", "node", "kind", "cost", "size_w", "unit", "offset"],
                    [
                        [
                            str(t.step), str(t.node), t.kind, str(t.cost),
                            str(t.size_w), str(t.unit), str(t.offset),
                        ]
                        for t in r.trace
                    ],
                )
            )
    return "\n".join(lines) + "\n"
