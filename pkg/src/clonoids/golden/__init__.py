"""Golden classification lists: loading with per-row integrity digests."""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

__all__ = ["GoldenError", "GoldenSuite", "SUITES", "row_digest", "header_digest", "load_suite",
           "parse_suite", "dump_suite", "suite_path"]

SUITES = ("mclc", "mcsm", "mcvc", "sclc", "scsm", "scvc")
_HEADER_KEYS = ("suite", "source", "target", "count", "columns")


class GoldenError(ValueError):
    """A golden file is malformed or fails its integrity digests."""


def _digest(obj) -> str:
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=True)
    return hashlib.sha256(text.encode("ascii")).hexdigest()[:16]


def row_digest(row: dict) -> str:
    return _digest({k: v for k, v in row.items() if k != "check"})


def header_digest(doc: dict) -> str:
    return _digest({k: doc.get(k) for k in _HEADER_KEYS})


@dataclass(frozen=True)
class GoldenSuite:
    suite: str
    source: str
    target: str
    columns: tuple
    rows: tuple  # of dicts, each with at least "K"


def suite_path(name: str) -> Path:
    return Path(str(resources.files(__package__).joinpath(f"{name}.json")))


_K_RE = re.compile(rb'"K":\s*"([^"]*)"')


def _where(data: bytes, lineno: int) -> str:
    """Name the row stored on a given 1-based line, if any (rows are one per line)."""
    lines = data.split(b"\n")
    start = next((i for i, ln in enumerate(lines) if b'"rows"' in ln), None)
    if start is None or lineno <= start + 1:
        return "header"
    index = lineno - start - 1
    if lineno - 1 >= len(lines) or not _K_RE.search(b"".join(lines[start + 1:])):
        return f"line {lineno}"
    if not _K_RE.search(lines[lineno - 1]) and lineno > 1 and _K_RE.search(lines[lineno - 2]):
        lineno, index = lineno - 1, index - 1  # a damaged line break surfaces one line late
    m = _K_RE.search(lines[lineno - 1])
    name = m.group(1).decode("utf-8", "replace") if m else None
    return f"row {index} ({name!r})"


def parse_suite(data: bytes, label: str = "<golden>") -> GoldenSuite:
    try:
        doc = json.loads(data.decode("utf-8"))
    except UnicodeDecodeError as exc:
        lineno = data[:exc.start].count(b"\n") + 1
        raise GoldenError(f"{label}: {_where(data, lineno)}: not valid UTF-8 at byte {exc.start}") from None
    except json.JSONDecodeError as exc:
        raise GoldenError(f"{label}: {_where(data, exc.lineno)}: malformed JSON at line "
                          f"{exc.lineno} column {exc.colno}") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("rows"), list):
        raise GoldenError(f"{label}: missing row list")
    if doc.get("check") != header_digest(doc):
        raise GoldenError(f"{label}: header digest mismatch")
    rows = doc["rows"]
    if doc.get("count") != len(rows):
        raise GoldenError(f"{label}: expected {doc.get('count')} rows, found {len(rows)}")
    columns = doc.get("columns")
    if not isinstance(columns, list) or "K" not in columns:
        raise GoldenError(f"{label}: bad column list")
    for i, row in enumerate(rows, start=1):
        name = row.get("K") if isinstance(row, dict) else None
        where = f"{label}: row {i} ({name!r})"
        if not isinstance(row, dict) or set(row) != set(columns) | {"check"}:
            raise GoldenError(f"{where}: unexpected fields")
        if any(not isinstance(row[c], str) for c in columns):
            raise GoldenError(f"{where}: non-string cell")
        if row["check"] != row_digest(row):
            raise GoldenError(f"{where}: row digest mismatch")
    return GoldenSuite(doc["suite"], doc["source"], doc["target"], tuple(columns), tuple(rows))


def load_suite(name: str, path: str | Path | None = None) -> GoldenSuite:
    if name not in SUITES and path is None:
        raise GoldenError(f"unknown suite {name!r}; known suites: {', '.join(SUITES)}")
    p = Path(path) if path is not None else suite_path(name)
    return parse_suite(p.read_bytes(), p.name)


def dump_suite(suite: str, source: str, target: str, columns, rows) -> str:
    """Serialize a suite with fresh digests (one row per line for readable diffs)."""
    columns = list(columns)
    doc = {"suite": suite, "source": source, "target": target, "count": len(rows), "columns": columns}
    doc["check"] = header_digest(doc)
    body = []
    for r in rows:
        r = {c: r[c] for c in columns}
        r["check"] = row_digest(r)
        body.append("    " + json.dumps(r, ensure_ascii=True))
    head = json.dumps(doc, indent=2, ensure_ascii=True)[:-2]
    return head + ',\n  "rows": [\n' + ",\n".join(body) + "\n  ]\n}\n"
