"""Tabular output rows and their CSV/JSON encodings."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

from .model import LevelRecord, ModelParams

CSV_FIELDS = ("method", "parity", "k", "x", "E", "gauge_a", "class", "oracle_residual", "flags")


def fmt(value: float) -> str:
    return f"{value:.12g}"


def _quantize(value: float) -> float:
    return float(fmt(value))


@dataclass(frozen=True)
class OutputRow:
    method: str
    parity: str
    k: int
    x: float
    E: float
    gauge_a: float
    solution_class: int
    oracle_residual: float
    flags: tuple[str, ...] = ()

    @classmethod
    def from_level(cls, rec: LevelRecord, params: ModelParams) -> "OutputRow":
        return cls(rec.method.value, rec.parity.short, rec.k, rec.x, rec.energy(params), rec.gauge_a,
                   int(rec.solution_class), rec.oracle_residual, tuple(rec.flags))

    def quantized(self) -> "OutputRow":
        """The row as it reads back after a 12-significant-digit round trip."""
        return OutputRow(self.method, self.parity, self.k, _quantize(self.x), _quantize(self.E),
                         _quantize(self.gauge_a), self.solution_class, _quantize(self.oracle_residual), self.flags)

    def as_strings(self) -> dict:
        return {"method": self.method, "parity": self.parity, "k": str(self.k), "x": fmt(self.x),
                "E": fmt(self.E), "gauge_a": fmt(self.gauge_a), "class": str(self.solution_class),
                "oracle_residual": fmt(self.oracle_residual), "flags": ";".join(self.flags)}

    def as_json(self) -> dict:
        def num(v):
            return None if math.isnan(v) else _quantize(v)
        return {"method": self.method, "parity": self.parity, "k": self.k, "x": num(self.x), "E": num(self.E),
                "gauge_a": num(self.gauge_a), "class": self.solution_class,
                "oracle_residual": num(self.oracle_residual), "flags": list(self.flags)}


def to_csv(rows) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow(row.as_strings())
    return buf.getvalue()


def from_csv(text: str) -> list[OutputRow]:
    rows = []
    for rec in csv.DictReader(io.StringIO(text)):
        rows.append(OutputRow(rec["method"], rec["parity"], int(rec["k"]), float(rec["x"]), float(rec["E"]),
                              float(rec["gauge_a"]), int(rec["class"]), float(rec["oracle_residual"]),
                              tuple(f for f in rec["flags"].split(";") if f)))
    return rows


def to_json(rows) -> str:
    return json.dumps([row.as_json() for row in rows], indent=2)


def from_json(text: str) -> list[OutputRow]:
    def num(v):
        return math.nan if v is None else float(v)
    return [OutputRow(d["method"], d["parity"], int(d["k"]), num(d["x"]), num(d["E"]), num(d["gauge_a"]),
                      int(d["class"]), num(d["oracle_residual"]), tuple(d["flags"]))
            for d in json.loads(text)]


def to_table(rows) -> str:
    cells = [list(CSV_FIELDS)] + [list(row.as_strings().values()) for row in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(CSV_FIELDS))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
