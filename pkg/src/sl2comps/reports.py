"""Shared record-stream formatting: deterministic text, JSON and CSV."""

from __future__ import annotations

import csv
import io
import json

from .sl2 import INFINITY, FactorMultiset


def normalize_value(v):
    if isinstance(v, FactorMultiset):
        return [[n, m] for n, m in v.items()]
    if v == INFINITY:
        return "infinity"
    if isinstance(v, tuple):
        return list(v)
    if isinstance(v, (list, dict, str, int, float, bool)) or v is None:
        return v
    return str(v)


def normalize_record(rec: dict) -> dict:
    return {k: normalize_value(v) for k, v in sorted(rec.items())}


def render(records: list[dict], fmt: str) -> str:
    records = [normalize_record(r) for r in records]
    if fmt == "json":
        return json.dumps(records, indent=2, sort_keys=True)
    if fmt == "csv":
        keys = sorted({k for r in records for k in r})
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=keys)
        writer.writeheader()
        for r in records:
            writer.writerow({k: json.dumps(r.get(k)) if isinstance(
                r.get(k), (list, dict)) else r.get(k) for k in keys})
        return buf.getvalue()
    if fmt == "text":
        lines = []
        for r in records:
            parts = [f"{k}={json.dumps(v) if isinstance(v, (list, dict)) else v}"
                     for k, v in r.items()]
            lines.append(" ".join(parts))
        return "\n".join(lines) + ("\n" if lines else "")
    raise ValueError(f"unknown format {fmt!r}")
