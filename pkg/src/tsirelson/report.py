"""Verification reports with JSON and CSV serialisations."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Optional

SCHEMA_VERSION = 1

CSV_FIELDS = ["schema_version", "claim", "seed", "samples", "worst_ratio", "passed", "failures", "description"]


@dataclass
class InequalityReport:
    """Outcome of checking one inequality over a family of samples.

    ``worst_ratio`` is the largest ``lhs / rhs`` seen for an inequality written
    as ``lhs <= rhs``.  A failing report carries the first counterexample, in a
    form that ``lp.recheck`` can re-evaluate from scratch.
    """

    claim: str
    description: str
    seed: Optional[int]
    samples: int = 0
    worst_ratio: float = 0.0
    failures: int = 0
    counterexample: Optional[dict] = None
    params: dict = field(default_factory=dict)
    trace: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def observe(self, lhs: float, rhs: float, tol: float, witness: dict) -> bool:
        """Record one sample of ``lhs <= rhs + tol``; return whether it held."""
        self.samples += 1
        lhs, rhs = float(lhs), float(rhs)
        if rhs > 0:
            ratio = lhs / rhs
        else:
            ratio = 0.0 if lhs <= 0 else math.inf
        self.worst_ratio = max(self.worst_ratio, ratio)
        ok = lhs <= rhs + tol
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = dict(witness, lhs=lhs, rhs=rhs, tol=tol)
        return ok

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "claim": self.claim,
            "description": self.description,
            "seed": self.seed,
            "samples": self.samples,
            "worst_ratio": _finite(self.worst_ratio),
            "passed": self.passed,
            "failures": self.failures,
            "counterexample": self.counterexample,
            "params": self.params,
            "trace": self.trace,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True)

    def csv_row(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "claim": self.claim,
            "seed": "" if self.seed is None else self.seed,
            "samples": self.samples,
            "worst_ratio": repr(_finite(self.worst_ratio)),
            "passed": int(self.passed),
            "failures": self.failures,
            "description": self.description,
        }

    def summary(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.claim}: {self.samples} samples, worst ratio {self.worst_ratio:.12g}"


def _finite(v: float):
    return v if math.isfinite(v) else str(v)


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in reports:
        w.writerow(r.csv_row())
    return buf.getvalue()
