"""Scan records and their JSONL / CSV encodings."""

from __future__ import annotations

import csv
import json
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path

from .arith import DEFAULT_RHO_BUDGET
from .cf import RootSpec, expand_convergents
from .equations import resulting_equation
from .metrics import equation_metrics

__all__ = [
    "SCHEMA_VERSION",
    "SchemaError",
    "ScanRecord",
    "records_for_root",
    "read_jsonl",
    "append_jsonl",
    "write_csv",
    "read_csv",
]

SCHEMA_VERSION = 1
_BIG = ("p", "q", "d", "a", "b", "c", "rad_abc")
_REALS = ("quality", "approx_gain", "power_gain")


class SchemaError(ValueError):
    pass


@dataclass
class ScanRecord:
    k: int
    s: int
    n: int
    p: int
    q: int
    d: int
    g: int
    a: int
    b: int
    c: int
    rad_abc: int
    quality: float
    approx_gain: float | None
    power_gain: float | None
    flags: list[str] = field(default_factory=list)

    @property
    def key(self) -> tuple[int, int, int]:
        return self.k, self.s, self.n

    def to_json(self) -> str:
        out = {"schema": SCHEMA_VERSION}
        for name, value in asdict(self).items():
            out[name] = str(value) if name in _BIG else value
        return json.dumps(out, separators=(",", ":"))

    @classmethod
    def from_json(cls, line: str) -> ScanRecord:
        raw = json.loads(line)
        if raw.pop("schema", None) != SCHEMA_VERSION:
            raise SchemaError(f"expected schema {SCHEMA_VERSION}: {line.strip()[:80]}")
        names = {f.name for f in fields(cls)}
        unknown = set(raw) - names
        if unknown:
            raise SchemaError(f"unknown fields {sorted(unknown)}")
        missing = names - set(raw)
        if missing:
            raise SchemaError(f"missing fields {sorted(missing)}")
        for name in _BIG:
            if not isinstance(raw[name], str):
                raise SchemaError(f"{name} must be a decimal string")
            raw[name] = int(raw[name])
        return cls(**raw)

    def csv_row(self) -> list[str]:
        row = []
        for f in fields(self):
            value = getattr(self, f.name)
            if f.name in _REALS:
                row.append("" if value is None else f"{value:.4f}")
            elif f.name == "flags":
                row.append(";".join(value))
            else:
                row.append(str(value))
        return row


def records_for_root(
    k: int, s: int, depth: int, skip=frozenset(), budget: int = DEFAULT_RHO_BUDGET
) -> list[ScanRecord]:
    """One record per convergent index n < depth, omitting keys in ``skip``."""
    root = RootSpec(k, s)
    _, convs = expand_convergents(root, depth)
    out = []
    for conv in convs:
        if (k, s, conv.n) in skip:
            continue
        eq = resulting_equation(root, conv)
        m = equation_metrics(eq, budget=budget)
        t = m.triple
        out.append(
            ScanRecord(
                k, s, conv.n, eq.p, eq.q, eq.d, eq.g, t.a, t.b, t.c, m.rad_abc,
                m.quality, m.approximation_gain, m.power_gain, list(m.flags),
            )
        )
    return out


def read_jsonl(path: str | Path) -> list[ScanRecord]:
    path = Path(path)
    if not path.exists():
        return []
    with path.open(encoding="utf-8") as fh:
        return [ScanRecord.from_json(line) for line in fh if line.strip()]


def append_jsonl(path: str | Path, records) -> int:
    n = 0
    with Path(path).open("a", encoding="utf-8") as fh:
        for rec in records:
            fh.write(rec.to_json() + "\n")
            n += 1
    return n


def write_csv(path: str | Path, records) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        w = csv.writer(fh)
        w.writerow([f.name for f in fields(ScanRecord)])
        for rec in records:
            w.writerow(rec.csv_row())


def read_csv(path: str | Path) -> list[dict[str, str]]:
    with Path(path).open(encoding="utf-8", newline="") as fh:
        return list(csv.DictReader(fh))
