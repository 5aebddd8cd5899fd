"""Report records and deterministic serialization.

Rationals are serialized as "num/den" strings (plain "num" for integers)
in every machine-readable output; nothing in a report body depends on
time or environment, so identical configurations produce byte-identical
JSON.
"""

from __future__ import annotations

import dataclasses
import enum
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, List

from .algebra import Poly, rat_to_str

__all__ = ["CheckRecord", "Report", "jsonable"]


def jsonable(value: Any):
    """Lossless JSON-friendly view: exact rationals become strings."""
    if isinstance(value, Fraction):
        return rat_to_str(value)
    if isinstance(value, Poly):
        return [rat_to_str(c) for c in value.coeffs]
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, int):
        # big integers survive as strings past any consumer's float parsing
        return value if abs(value) < 2**53 else str(value)
    if isinstance(value, str):
        return value
    if isinstance(value, enum.Enum):
        return value.name.lower()
    if isinstance(value, dict):
        return {str(k): jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, set, frozenset)):
        seq = sorted(value, key=repr) if isinstance(value, (set, frozenset)) else value
        return [jsonable(v) for v in seq]
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {
            f.name: jsonable(getattr(value, f.name))
            for f in dataclasses.fields(value)
        }
    return repr(value)


@dataclass
class CheckRecord:
    """One verification record; ``tag`` names the identity or 'plumbing'."""

    name: str
    tag: str
    status: str  # "pass" | "fail" | "flag"
    witness: Any = None

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class Report:
    tool_version: str
    config: dict
    records: List[CheckRecord] = field(default_factory=list)

    def add(self, name: str, ok: bool, tag: str = "plumbing", witness: Any = None) -> CheckRecord:
        record = CheckRecord(
            name=name, tag=tag, status="pass" if ok else "fail", witness=witness
        )
        self.records.append(record)
        return record

    @property
    def all_passed(self) -> bool:
        return all(r.status == "pass" for r in self.records)

    def to_json(self) -> str:
        payload = {
            "tool_version": self.tool_version,
            "config": jsonable(self.config),
            "records": [jsonable(r) for r in self.records],
            "all_passed": self.all_passed,
        }
        return json.dumps(payload, indent=2)

    def to_csv(self) -> str:
        out = io.StringIO()
        out.write("name,tag,status,witness\n")
        for r in self.records:
            witness = json.dumps(jsonable(r.witness)) if r.witness is not None else ""
            witness = witness.replace('"', '""')
            out.write(f'{r.name},{r.tag},{r.status},"{witness}"\n')
        return out.getvalue()

    def to_human(self) -> str:
        lines = []
        for r in self.records:
            lines.append(f"[{r.status.upper():4}] {r.name} ({r.tag})")
        lines.append(
            f"{sum(r.passed for r in self.records)}/{len(self.records)} checks passed"
        )
        return "\n".join(lines)
