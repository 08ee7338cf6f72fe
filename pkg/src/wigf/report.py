"""Small result records and a rectangular table with CSV/JSON emitters.

Floats are written with 17 significant digits so that output is a
deterministic, lossless function of the computed values.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from typing import Any, Iterable, Sequence

__all__ = ["IdentityReport", "BoundsReport", "ReportTable", "fmt_float", "to_jsonable", "dumps"]


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of checking ``lhs == rhs`` numerically."""

    name: str
    lhs: float
    rhs: float
    tolerance: float
    gap: float = field(init=False)
    passed: bool = field(init=False)

    def __post_init__(self):
        gap = abs(self.lhs - self.rhs)
        scale = max(1.0, abs(self.lhs), abs(self.rhs))
        object.__setattr__(self, "gap", gap)
        object.__setattr__(self, "passed", bool(gap <= self.tolerance * scale))

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class BoundsReport:
    """``lower <= center <= upper`` with a small slack."""

    lower: float
    center: float
    upper: float
    slack: float = 1e-9
    satisfied: bool = field(init=False)

    def __post_init__(self):
        s = self.slack * max(1.0, abs(self.center))
        ok = self.lower <= self.center + s and self.center <= self.upper + s
        object.__setattr__(self, "satisfied", bool(ok))

    def as_dict(self) -> dict:
        return asdict(self)


def fmt_float(v: float) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, int):
        return str(v)
    if math.isnan(v):
        return "nan"
    if math.isinf(v):
        return "inf" if v > 0 else "-inf"
    return format(v, ".17g")


def to_jsonable(obj: Any) -> Any:
    """Recursively convert numpy scalars, tuples and dataclasses to JSON types."""
    if hasattr(obj, "as_dict"):
        return to_jsonable(obj.as_dict())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if hasattr(obj, "tolist"):
        return to_jsonable(obj.tolist())
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, int):
        return obj
    if isinstance(obj, float):
        return float(obj)
    return str(obj)


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list)) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, float):
        # JSON has no inf/nan; emit them as strings
        return fmt_float(obj) if math.isfinite(obj) else json.dumps(fmt_float(obj))
    return json.dumps(obj)


def dumps(obj: Any, indent: int = 2) -> str:
    """Deterministic JSON text with 17-significant-digit floats."""
    return _encode(to_jsonable(obj), indent, 0) + "\n"


@dataclass
class ReportTable:
    """Rows keyed by parameter cells, columns of named statistics."""

    keys: Sequence[str]
    columns: Sequence[str]
    rows: list[dict] = field(default_factory=list)
    meta: dict = field(default_factory=dict)

    def add(self, **row):
        missing = [c for c in (*self.keys, *self.columns) if c not in row]
        if missing:
            raise KeyError(f"row is missing {missing}")
        self.rows.append(row)

    def extend(self, rows: Iterable[dict]):
        for r in rows:
            self.add(**r)

    @property
    def header(self) -> list[str]:
        extra = [k for r in self.rows[:1] for k in r if k not in (*self.keys, *self.columns)]
        return [*self.keys, *self.columns, *extra]

    def column(self, name: str) -> list:
        return [r[name] for r in self.rows]

    def lookup(self, **key) -> dict:
        for r in self.rows:
            if all(r[k] == v for k, v in key.items()):
                return r
        raise KeyError(key)

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        head = self.header
        w.writerow(head)
        for r in self.rows:
            w.writerow([fmt_float(r[h]) if isinstance(r[h], (float, int)) else r[h] for h in head])
        return buf.getvalue()

    def as_dict(self) -> dict:
        head = self.header
        return {"columns": head, "rows": [{h: r[h] for h in head} for r in self.rows],
                **({"meta": self.meta} if self.meta else {})}

    def to_json(self) -> str:
        return dumps(self.as_dict())
