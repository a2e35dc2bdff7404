# app/cli/output.py
# ---------------------------------------------------------------------
# Output documents: run metadata plus one or more named tables.
# JSON: {"meta": {...}, "<table>": [records...]}, indent 2
# CSV:  "# key=value,..." then "# table=<name>" and the table per table
# Floats carry 6 significant digits so reruns are byte-identical.
# ---------------------------------------------------------------------

import json
from typing import Any, Dict, List

import pandas as pd

from app.utils.formatting import SIGNIFICANT_DIGITS, round_sig

Record = Dict[str, Any]


def _clean(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        return round_sig(value)
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if hasattr(value, "item"):
        # numpy scalar
        return _clean(value.item())
    return value


class Document:
    def __init__(self, meta: Record):
        self.meta = {k: _clean(v) for k, v in meta.items()}
        self.tables: Dict[str, List[Record]] = {}

    def add_table(self, name: str, records: List[Record]) -> "Document":
        self.tables[name] = [{k: _clean(v) for k, v in r.items()} for r in records]
        return self

    def to_json(self) -> str:
        return json.dumps({"meta": self.meta, **self.tables}, indent=2, ensure_ascii=False) + "\n"

    def _meta_line(self) -> str:
        def text(v):
            if v is None:
                return ""
            if isinstance(v, list):
                return ";".join(str(x) for x in v)
            return str(v)

        return "# " + ",".join(f"{k}={text(v)}" for k, v in self.meta.items()) + "\n"

    def to_csv(self) -> str:
        parts = [self._meta_line()]
        for name, records in self.tables.items():
            parts.append(f"# table={name}\n")
            if records:
                frame = pd.DataFrame.from_records(records, columns=list(records[0]))
                parts.append(frame.to_csv(index=False, float_format=f"%.{SIGNIFICANT_DIGITS}g", lineterminator="\n"))
        return "".join(parts)

    def render(self, output_format: str) -> str:
        return self.to_csv() if output_format == "csv" else self.to_json()
