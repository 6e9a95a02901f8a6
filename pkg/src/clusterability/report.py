"""Rendering of verdicts and experiment tables.

Three formats everywhere: "plain" (fixed-width, proportions to 3
decimals and p-values to 4, mirroring the benchmark tables this library
reproduces), "csv" (one header row, full float precision so parsing the
output recovers the exact values), and "json" (full metadata).
"""

from __future__ import annotations

import io
import json

from .errors import ContractError
from .experiment import RejectionTable, RuntimeTable
from .pipeline import MethodError, Verdict

FORMATS = ("plain", "csv", "json")


def _check_format(fmt):
    if fmt not in FORMATS:
        raise ContractError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def render_rejection(table: RejectionTable, fmt: str = "plain") -> str:
    _check_format(fmt)
    if fmt == "csv":
        out = io.StringIO()
        out.write("row,method,proportion,clusterable,failures,replicates\n")
        for row in table.rows:
            for m in table.methods:
                out.write(
                    f"{row},{m},{table.proportion(row, m)!r},"
                    f"{table.clusterable[(row, m)]},{table.failures[(row, m)]},"
                    f"{table.replicates}\n"
                )
        return out.getvalue()
    if fmt == "json":
        payload = {
            "metadata": table.metadata,
            "replicates": table.replicates,
            "cells": [
                {
                    "row": row,
                    "method": m,
                    "proportion": table.proportion(row, m),
                    "clusterable": table.clusterable[(row, m)],
                    "failures": table.failures[(row, m)],
                }
                for row in table.rows
                for m in table.methods
            ],
        }
        return json.dumps(payload, indent=2) + "\n"

    width = max(len(m) for m in table.methods) + 2
    head = "".join(f"{m:>{width}}" for m in table.methods)
    lines = [
        f"rejection proportions over {table.replicates} replicates "
        f"(alpha={table.metadata.get('alpha')}, seed={table.metadata.get('seed')})",
        f"{'row':>4}{head}",
    ]
    for row in table.rows:
        cells = "".join(f"{table.proportion(row, m):>{width}.3f}" for m in table.methods)
        lines.append(f"{row:>4}{cells}")
    fail_total = sum(table.failures.values())
    if fail_total:
        lines.append(f"degenerate-method failures: {fail_total} (counted as not clusterable)")
    return "\n".join(lines) + "\n"


def render_runtime(table: RuntimeTable, fmt: str = "plain") -> str:
    _check_format(fmt)
    if fmt == "csv":
        out = io.StringIO()
        out.write("row,method,mean_seconds,repeats\n")
        for row in table.rows:
            for m in table.methods:
                out.write(f"{row},{m},{table.mean_seconds[(row, m)]!r},{table.repeats}\n")
        return out.getvalue()
    if fmt == "json":
        payload = {
            "metadata": table.metadata,
            "hardware": table.hardware,
            "repeats": table.repeats,
            "cells": [
                {"row": row, "method": m, "mean_seconds": table.mean_seconds[(row, m)]}
                for row in table.rows
                for m in table.methods
            ],
        }
        return json.dumps(payload, indent=2) + "\n"

    width = max(12, max(len(m) for m in table.methods) + 2)
    head = "".join(f"{m:>{width}}" for m in table.methods)
    lines = [
        f"mean seconds per call over {table.repeats} repeats  [{table.hardware}]",
        f"{'row':>4}{head}",
    ]
    for row in table.rows:
        cells = "".join(
            f"{table.mean_seconds[(row, m)]:>{width}.4f}" for m in table.methods
        )
        lines.append(f"{row:>4}{cells}")
    return "\n".join(lines) + "\n"


def verdict_record(v: Verdict, alpha: float, seed) -> dict:
    rec = {
        "method": v.method,
        "statistic": v.statistic,
        "p_value": v.p_value,
        "alpha": alpha,
        "clusterable": v.clusterable,
        "n": v.n,
        "d": v.d,
        "seed": seed,
        "runtime_seconds": v.runtime_seconds,
    }
    if v.hopkins_proportion is not None:
        rec["hopkins_rejection_proportion"] = v.hopkins_proportion
    return rec


def render_verdicts(results, alpha: float, seed, fmt: str = "plain") -> str:
    """Render assess_all output (Verdicts and possibly MethodErrors)."""
    _check_format(fmt)
    if fmt == "json":
        payload = []
        for r in results:
            if isinstance(r, MethodError):
                payload.append({"method": r.method, "error": r.error, "kind": r.kind})
            else:
                payload.append(verdict_record(r, alpha, seed))
        return json.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        out = io.StringIO()
        out.write(
            "method,statistic,p_value,alpha,clusterable,n,d,seed,runtime_seconds,"
            "hopkins_rejection_proportion,error\n"
        )
        for r in results:
            if isinstance(r, MethodError):
                out.write(f"{r.method},,,,,,,,,,{r.kind}: {r.error}\n")
            else:
                hp = "" if r.hopkins_proportion is None else repr(r.hopkins_proportion)
                out.write(
                    f"{r.method},{r.statistic!r},{r.p_value!r},{alpha!r},"
                    f"{r.clusterable},{r.n},{r.d},{seed},{r.runtime_seconds!r},{hp},\n"
                )
        return out.getvalue()

    lines = [
        f"{'method':<14}{'statistic':>12}{'p-value':>9}{'clusterable':>13}{'seconds':>10}"
    ]
    for r in results:
        if isinstance(r, MethodError):
            lines.append(f"{r.method:<14}  failed: {r.kind}: {r.error}")
            continue
        extra = (
            f"  (rejects in {r.hopkins_proportion:.2f} of repeated runs)"
            if r.hopkins_proportion is not None
            else ""
        )
        lines.append(
            f"{r.method:<14}{r.statistic:>12.6g}{r.p_value:>9.4f}"
            f"{str(r.clusterable):>13}{r.runtime_seconds:>10.4f}{extra}"
        )
    return "\n".join(lines) + "\n"


def render_catalog(records, fmt: str = "plain") -> str:
    _check_format(fmt)
    if fmt == "json":
        return json.dumps(records, indent=2) + "\n"
    if fmt == "csv":
        out = io.StringIO()
        out.write("row,dim,n,description\n")
        for r in records:
            out.write(f"{r['row']},{r['dim']},{r['n']},\"{r['description']}\"\n")
        return out.getvalue()
    lines = [f"{'row':>4} {'dim':>4} {'n':>5}  description"]
    for r in records:
        lines.append(f"{r['row']:>4} {r['dim']:>4} {r['n']:>5}  {r['description']}")
    return "\n".join(lines) + "\n"
