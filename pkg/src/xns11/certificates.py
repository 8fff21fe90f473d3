"""Machine-checkable pass/fail certificates.

A Certificate is a named bundle of individual checks plus free-form notes and
machine-readable data.  Checks always record both the computed and the
expected side as decimal strings, so a serialized certificate can be audited
without re-running anything.  Timing is kept out of the equality surface:
reports are reproducible modulo elapsed_ms.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp, workdps

from .real_numerics import BigReal, mpf_to_fraction

DISPLAY_DIGITS = 15


def format_value(value, digits: int = DISPLAY_DIGITS) -> str:
    """Deterministic decimal rendering, independent of working precision.

    Exact integers and short rationals print exactly; everything else is
    rounded to the given number of significant digits.
    """
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, int):
        return str(value)
    if isinstance(value, str):
        return value
    if isinstance(value, (list, tuple)):
        return "[" + ", ".join(format_value(v, digits) for v in value) + "]"
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return str(value.numerator)
        if len(str(value.numerator)) + len(str(value.denominator)) <= 2 * digits:
            return f"{value.numerator}/{value.denominator}"
        with workdps(digits + 10):
            return mp.nstr(mp.mpf(value.numerator) / value.denominator, digits)
    if isinstance(value, BigReal):
        value = value.value
    if isinstance(value, (float, mp.mpf)):
        with workdps(max(digits + 10, 25)):
            return mp.nstr(mp.mpf(value), digits)
    raise TypeError(f"cannot format {type(value).__name__}")


def _as_comparable(value):
    # comparisons happen in exact rational arithmetic
    if isinstance(value, BigReal):
        return value.to_fraction()
    if isinstance(value, mp.mpf):
        return mpf_to_fraction(value)
    if isinstance(value, float):
        return Fraction(value)
    return value


@dataclass(frozen=True)
class Check:
    """A single named comparison with both sides recorded."""

    label: str
    passed: bool
    computed: str
    expected: str
    margin: str | None = None

    def as_dict(self) -> dict:
        d = {"label": self.label, "passed": self.passed,
             "computed": self.computed, "expected": self.expected}
        if self.margin is not None:
            d["margin"] = self.margin
        return d


@dataclass(frozen=True)
class Certificate:
    """Result of one verification routine: all checks must pass."""

    name: str
    precision: int
    checks: tuple
    notes: tuple = ()
    data: dict = field(default_factory=dict)
    elapsed_ms: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "precision": self.precision,
            "passed": self.passed,
            "checks": [c.as_dict() for c in self.checks],
            "notes": list(self.notes),
            "data": self.data,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }

    def render_text(self, verbose: bool = False) -> str:
        lines = [f"certificate {self.name}: "
                 f"{'PASS' if self.passed else 'FAIL'} "
                 f"({len(self.checks)} checks, precision {self.precision})"]
        for c in self.checks:
            if verbose or not c.passed:
                mark = "ok  " if c.passed else "FAIL"
                extra = f", margin {c.margin}" if c.margin is not None else ""
                lines.append(f"  [{mark}] {c.label}: {c.computed} "
                             f"(expected {c.expected}{extra})")
        for n in self.notes:
            lines.append(f"  note: {n}")
        return "\n".join(lines)


class CertificateBuilder:
    """Accumulates checks for one certificate; records wall time."""

    def __init__(self, name: str, precision: int):
        self.name = name
        self.precision = precision
        self._checks = []
        self._notes = []
        self.data = {}
        self._t0 = time.monotonic()

    def add(self, check: Check) -> Check:
        self._checks.append(check)
        return check

    def check_true(self, label: str, condition: bool, detail: str = "") -> Check:
        return self.add(Check(label, bool(condition),
                              detail or str(bool(condition)).lower(), "true"))

    def add_failed(self, label: str, computed: str, expected: str) -> Check:
        return self.add(Check(label, False, computed, expected))

    def check_exact(self, label: str, computed, expected) -> Check:
        return self.add(Check(label, computed == expected,
                              format_value(computed), format_value(expected)))

    def check_close(self, label: str, computed, expected, tolerance) -> Check:
        a = _as_comparable(computed)
        b = _as_comparable(expected)
        tol = _as_comparable(tolerance)
        gap = abs(a - b)
        return self.add(Check(label, gap <= tol, format_value(computed),
                              f"{format_value(expected)} +/- {format_value(tol)}",
                              margin=format_value(tol - gap, 6)))

    def check_le(self, label: str, lhs, rhs) -> Check:
        a = _as_comparable(lhs)
        b = _as_comparable(rhs)
        return self.add(Check(label, a <= b, format_value(lhs),
                              f"<= {format_value(rhs)}",
                              margin=format_value(b - a, 6)))

    def note(self, text: str):
        self._notes.append(text)

    def finish(self) -> Certificate:
        return Certificate(self.name, self.precision, tuple(self._checks),
                           tuple(self._notes), dict(self.data),
                           (time.monotonic() - self._t0) * 1000.0)
