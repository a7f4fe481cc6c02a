"""Check reports carrying a first counterexample."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .linalg import format_rational


@dataclass
class CheckReport:
    """Outcome of an identity check.

    ``which`` names the failed axiom / equation / condition / order when the
    check has several parts. ``first_failure`` holds the basis indices and
    both side-values of the first violated instance, in iteration order.
    """

    holds: bool
    which: Any = None
    first_failure: dict | None = None
    notes: list[str] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.holds

    def to_dict(self) -> dict:
        out = {"holds": self.holds, "which": self.which, "first_failure": _jsonable(self.first_failure)}
        if self.notes:
            out["notes"] = list(self.notes)
        if self.details:
            out["details"] = _jsonable(self.details)
        return out


def _jsonable(obj):
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, np.ndarray):
        return _jsonable(obj.tolist())
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    return format_rational(obj)


def compare(lhs: np.ndarray, rhs: np.ndarray, which=None, labels: tuple[str, ...] | None = None) -> CheckReport:
    """Compare two tensors whose trailing axis is the value vector.

    The leading axes index basis tuples; the first mismatching tuple in
    C order is reported.
    """
    lhs = np.asarray(lhs, dtype=object)
    rhs = np.asarray(rhs, dtype=object)
    if lhs.shape != rhs.shape:
        raise ValueError(f"shape mismatch {lhs.shape} vs {rhs.shape}")
    if lhs.ndim == 0:
        lhs, rhs = lhs.reshape(1), rhs.reshape(1)
    lead = lhs.shape[:-1]
    for idx in np.ndindex(*lead):
        a, b = lhs[idx], rhs[idx]
        if any(x != y for x, y in zip(a, b)):
            fail = {"indices": list(idx), "lhs": a, "rhs": b}
            if labels:
                fail["labels"] = list(labels)
            return CheckReport(False, which, fail)
    return CheckReport(True)


def first_failing(parts) -> CheckReport:
    """Run ``(label, thunk)`` parts in order; return the first failing report."""
    for label, thunk in parts:
        rep = thunk()
        if not rep.holds:
            rep.which = label
            return rep
    return CheckReport(True)
