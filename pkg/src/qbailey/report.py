"""Outcome records for identity checks."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .series import INF, BudgetExceeded, Comparison, Mismatch

PASS = "pass"
FAIL = "fail"
BUDGET = "budget-exceeded"


def _plain(v):
    if isinstance(v, Fraction):
        return int(v) if v.denominator == 1 else str(v)
    return v


def _order_text(order) -> str:
    if order == INF:
        return "exact"
    return str(Fraction(order))


@dataclass
class IdentityReport:
    identity: str
    params: dict
    order: object
    status: str
    mismatch: Mismatch | None = None
    millis: float = 0.0
    detail: str = ""
    parts: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.status == PASS

    def __bool__(self):
        return self.ok

    def record(self) -> dict:
        """The structured form written by the CLI, one record per line."""
        out = {
            "identity": self.identity,
            "params": {k: _plain(v) for k, v in self.params.items()},
            "order": _order_text(self.order),
            "status": self.status,
        }
        if self.mismatch is not None:
            m = self.mismatch
            out["mismatch"] = {"exponent": str(m.exponent), "lhs": m.lhs, "rhs": m.rhs}
        if self.detail:
            out["detail"] = self.detail
        out["millis"] = round(self.millis, 3)
        return out


def timed_report(name: str, params: dict, order, run: Callable[[], Comparison]) -> IdentityReport:
    """Run a comparison and wrap it in a report.

    `run` returns a Comparison, or a list of (label, Comparison) for checks
    made of several sub-identities; the first failing part decides the
    mismatch.  A shell-budget overflow becomes a budget-exceeded report.
    """
    t0 = time.perf_counter()
    try:
        result = run()
    except BudgetExceeded as exc:
        return IdentityReport(name, dict(params), order, BUDGET, None,
                              (time.perf_counter() - t0) * 1000, str(exc))
    millis = (time.perf_counter() - t0) * 1000
    if isinstance(result, Comparison):
        status = PASS if result.ok else FAIL
        return IdentityReport(name, dict(params), order, status, result.mismatch, millis)
    parts = list(result)
    for label, comp in parts:
        if not comp.ok:
            return IdentityReport(name, dict(params), order, FAIL, comp.mismatch, millis,
                                  detail=str(label), parts=[lbl for lbl, _ in parts])
    return IdentityReport(name, dict(params), order, PASS, None, millis,
                          parts=[lbl for lbl, _ in parts])
