"""Verification reports: a named suite, its parameters and one record per check."""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field
from typing import Any


def _plain(value: Any) -> Any:
    """Make a value JSON-serialisable with a deterministic layout."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (set, frozenset)):
        return sorted((_plain(v) for v in value), key=repr)
    if isinstance(value, bool) or value is None or isinstance(value, (int, float, str)):
        return value
    return str(value)


@dataclass
class CheckRecord:
    check: str
    anchor: str
    expected: Any
    observed: Any
    passed: bool

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "anchor": self.anchor,
            "expected": _plain(self.expected),
            "observed": _plain(self.observed),
            "pass": bool(self.passed),
        }


@dataclass
class Report:
    suite: str
    parameters: dict = field(default_factory=dict)
    records: list[CheckRecord] = field(default_factory=list)
    wall_time: float = 0.0
    _t0: float = field(default_factory=time.perf_counter, repr=False)

    def add(self, check: str, anchor: str, expected, observed, passed: bool | None = None) -> CheckRecord:
        if passed is None:
            passed = expected == observed
        rec = CheckRecord(check, anchor, expected, observed, bool(passed))
        self.records.append(rec)
        return rec

    def extend(self, other: "Report", prefix: str | None = None) -> None:
        for rec in other.records:
            name = f"{prefix}/{rec.check}" if prefix else rec.check
            self.records.append(CheckRecord(name, rec.anchor, rec.expected, rec.observed, rec.passed))

    def finish(self) -> "Report":
        self.wall_time = time.perf_counter() - self._t0
        return self

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> list[CheckRecord]:
        return [r for r in self.records if not r.passed]

    def to_dict(self, timing: bool = True) -> dict:
        d = {
            "suite": self.suite,
            "parameters": _plain(self.parameters),
            "records": [r.to_dict() for r in self.records],
            "pass": self.passed,
        }
        if timing:
            d["wall_time_s"] = round(self.wall_time, 3)
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2, sort_keys=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["check", "anchor", "expected", "observed", "pass"])
        for r in self.records:
            d = r.to_dict()
            w.writerow([d["check"], d["anchor"], json.dumps(d["expected"]), json.dumps(d["observed"]), d["pass"]])
        return buf.getvalue()

    def to_markdown(self) -> str:
        lines = [f"## {self.suite}", "", "| check | expected | observed | pass |", "|---|---|---|---|"]
        for r in self.records:
            d = r.to_dict()
            lines.append(
                f"| {d['check']} | {json.dumps(d['expected'])} | {json.dumps(d['observed'])} | {'yes' if d['pass'] else 'NO'} |"
            )
        lines.append("")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"

    def summary_line(self) -> str:
        return f"{self.suite}: {len(self.records) - len(self.failures)}/{len(self.records)} checks pass"
