"""Deterministic CSV / JSON / table emission.

Numbers are written in lower-case scientific notation with 9 significant
digits; infinite T1 or R_eff is written as the string ``inf``.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Iterable, Mapping, Sequence

from .models import SweepResult

SWEEP_COLUMNS = ("freq_hz", "re_y_s", "im_y_s", "r_eff_ohm", "t1_s")


def fmt(x) -> str:
    if isinstance(x, str):
        return x
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, int):
        return str(x)
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return f"{x:.8e}"


def _json_value(x):
    if isinstance(x, (str, bool, int)) or x is None:
        return x
    text = fmt(x)
    return float(text) if math.isfinite(float(x)) else text


def sweep_rows(result: SweepResult) -> list[dict]:
    with_status = not result.all_ok
    rows = []
    for r in result:
        row = {
            "freq_hz": r.freq_hz,
            "re_y_s": r.Y.real,
            "im_y_s": r.Y.imag,
            "r_eff_ohm": r.r_eff,
            "t1_s": r.t1,
        }
        if with_status:
            row["status"] = r.status
        rows.append(row)
    return rows


def to_csv(rows: Sequence[Mapping], columns: Sequence[str] | None = None) -> str:
    columns = list(columns or (rows[0].keys() if rows else SWEEP_COLUMNS))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(row[c]) for c in columns])
    return buf.getvalue()


def to_json(rows: Sequence[Mapping]) -> str:
    return json.dumps([{k: _json_value(v) for k, v in row.items()} for row in rows], indent=2) + "\n"


def to_table(rows: Sequence[Mapping], notes: Iterable[str] = ()) -> str:
    lines = []
    if len(rows) == 1:
        row = rows[0]
        width = max(len(k) for k in row)
        lines += [f"{k:<{width}}  {fmt(v)}" for k, v in row.items()]
    elif rows:
        columns = list(rows[0].keys())
        cells = [columns] + [[fmt(row[c]) for c in columns] for row in rows]
        widths = [max(len(r[i]) for r in cells) for i in range(len(columns))]
        lines += ["  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in cells]
    lines += list(notes)
    return "\n".join(lines) + "\n"


def render(rows: Sequence[Mapping], fmt_name: str, notes: Iterable[str] = ()) -> str:
    if fmt_name == "csv":
        return to_csv(rows)
    if fmt_name == "json":
        return to_json(rows)
    return to_table(rows, notes)


def sweep_csv(result: SweepResult) -> str:
    return to_csv(sweep_rows(result))
