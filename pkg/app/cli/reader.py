# app/cli/reader.py
# ---------------------------------------------------------------------
# Input side of the CLI:
# - Plain text: one real number per line, optional header line
# - CSV: single column, or the column picked with --column
# - Documents written by `encode` (JSON or CSV), read back by `hist`
# Blank lines are skipped; every error names its input line.
# ---------------------------------------------------------------------

import io
import json
import logging
import math
import re
import sys
from pathlib import Path
from typing import List, Optional, Tuple

import numpy as np
import pandas as pd
from pydantic import BaseModel

from app.schemas.pattern import Pattern, PatternKind, TiePolicy
from app.utils.errors import EmptyInputError, InputUnreadableError, ParseError, UsageError

logger = logging.getLogger(__name__)

Numbered = List[Tuple[int, str]]


class EncodedInput(BaseModel):
    """Patterns and run metadata recovered from an `encode` document."""

    m: int
    tau: int
    kind: PatternKind
    policy: TiePolicy
    quantize: Optional[int] = None
    patterns: List[Pattern]


def load_text(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    try:
        return Path(source).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        raise InputUnreadableError(f"cannot read {source}: {e}")


def _number(cell, line: int) -> float:
    if not isinstance(cell, str):
        raise ParseError(line, "missing value")
    text = cell.strip()
    if not text:
        raise ParseError(line, "empty value")
    try:
        value = float(text)
    except ValueError:
        raise ParseError(line, f"not a number: {text!r}")
    if not math.isfinite(value):
        raise ParseError(line, f"non-finite value {text!r}")
    return value


def _is_number(cell: str) -> bool:
    try:
        float(cell.strip())
        return True
    except ValueError:
        return False


def _read_lines(numbered: Numbered) -> List[float]:
    first_line, first = numbered[0]
    if not _is_number(first):
        logger.info(f"line {first_line}: treating {first.strip()!r} as a header")
        numbered = numbered[1:]
    return [_number(text, line) for line, text in numbered]


def _csv_frame(numbered: Numbered) -> pd.DataFrame:
    body = "\n".join(text for _, text in numbered)
    try:
        return pd.read_csv(io.StringIO(body), header=None, dtype=str, keep_default_na=False, skipinitialspace=True)
    except pd.errors.ParserError as e:
        # pandas counts lines of the blank-stripped body
        found = re.search(r"line (\d+)", str(e))
        row = int(found.group(1)) - 1 if found else 0
        line = numbered[min(row, len(numbered) - 1)][0]
        raise ParseError(line, f"malformed CSV row ({e})")


def _read_csv(numbered: Numbered, column: Optional[str]) -> List[float]:
    frame = _csv_frame(numbered)
    lines = [line for line, _ in numbered]
    header = [str(c).strip() for c in frame.iloc[0]]

    if column is not None:
        if column not in header:
            raise UsageError(f"--column {column!r} not found; columns are {', '.join(header)}")
        cells = frame.iloc[1:, header.index(column)]
        rows = lines[1:]
    else:
        if frame.shape[1] != 1:
            raise UsageError(f"input has {frame.shape[1]} columns; pick one with --column")
        cells = frame.iloc[:, 0]
        rows = lines
        if not _is_number(header[0]):
            cells, rows = cells.iloc[1:], rows[1:]
    return [_number(cell, line) for cell, line in zip(cells.tolist(), rows)]


def read_series(source: str = "-", column: Optional[str] = None, text: Optional[str] = None) -> np.ndarray:
    """
    One real number per line, or a CSV column. A first line that is not a
    number is a header; any later one is a ParseError naming the line.
    """
    text = load_text(source) if text is None else text
    numbered = [(n, line) for n, line in enumerate(text.splitlines(), start=1) if line.strip()]
    if not numbered:
        raise EmptyInputError(f"no samples in {'stdin' if source == '-' else source}")

    if column is not None or "," in numbered[0][1]:
        values = _read_csv(numbered, column)
    else:
        values = _read_lines(numbered)
    if not values:
        raise EmptyInputError("the input holds a header but no samples")
    logger.info(f"read {len(values)} samples")
    return np.asarray(values, dtype=float)


# --- encode documents ---------------------------------------------------

def looks_encoded(text: str) -> bool:
    head = text.lstrip()
    return head.startswith("{") or head.startswith("# command=encode")


def _meta_field(meta: dict, name: str):
    if name not in meta:
        raise ParseError(1, f"encode document lacks the {name!r} metadata field")
    return meta[name]


def _encoded(meta: dict, keys: List[Tuple[int, str]]) -> EncodedInput:
    if meta.get("command") != "encode":
        raise ParseError(1, f"expected an encode document, got command={meta.get('command')!r}")
    try:
        policy = TiePolicy(_meta_field(meta, "policy"))
        kind = PatternKind(_meta_field(meta, "kind"))
        m = int(_meta_field(meta, "m"))
        tau = int(_meta_field(meta, "tau"))
    except ValueError as e:
        raise ParseError(1, f"bad metadata: {e}")
    quantize = meta.get("quantize")
    patterns = [Pattern.parse(key, policy, line=line) for line, key in keys]
    if not patterns:
        raise EmptyInputError("the encode document holds no windows")
    for (line, _), p in zip(keys, patterns):
        if p.kind is not kind or p.m != m:
            raise ParseError(line, f"{p.key} does not match the document's {kind.value} m={m}")
    return EncodedInput(
        m=m, tau=tau, kind=kind, policy=policy,
        quantize=int(quantize) if quantize not in (None, "") else None,
        patterns=patterns,
    )


def _read_encoded_json(text: str) -> EncodedInput:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.lineno, f"invalid JSON: {e.msg}")
    if not isinstance(doc, dict) or not isinstance(doc.get("windows"), list):
        raise ParseError(1, "expected an encode document with a 'windows' list")
    # record numbers stand in for line numbers
    keys = [(n, str(r.get("pattern", ""))) for n, r in enumerate(doc["windows"], start=1)]
    return _encoded(doc.get("meta") or {}, keys)


def _parse_meta_line(line: str) -> dict:
    meta = {}
    for item in line.lstrip("#").strip().split(","):
        key, _, value = item.partition("=")
        meta[key.strip()] = value.strip()
    return meta


def _read_encoded_csv(text: str) -> EncodedInput:
    lines = text.splitlines()
    meta = _parse_meta_line(lines[0])
    try:
        start = lines.index("# table=windows") + 1
    except ValueError:
        raise ParseError(1, "no '# table=windows' section in the encode document")
    stop = next((k for k in range(start, len(lines)) if lines[k].startswith("# table=")), len(lines))
    frame = pd.read_csv(io.StringIO("\n".join(lines[start:stop])), dtype=str, keep_default_na=False)
    if "pattern" not in frame.columns:
        raise ParseError(start + 1, "the windows table has no 'pattern' column")
    # header sits on line start + 1, first record on start + 2
    keys = [(start + 2 + n, key) for n, key in enumerate(frame["pattern"].tolist())]
    return _encoded(meta, keys)


def read_encoded(text: str) -> EncodedInput:
    if text.lstrip().startswith("{"):
        return _read_encoded_json(text)
    return _read_encoded_csv(text.lstrip())
