"""Arbitrary-precision real arithmetic with explicit working precision.

BigReal values carry the decimal precision they were computed at; arithmetic
propagates the minimum precision of the operands.  Real roots of exact
polynomials are isolated with Sturm sequences over the rationals and refined
to certified rational enclosures.  Continued fractions are expanded by
interval Euclid so every emitted convergent is certified by the stated
precision of the input.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from mpmath import mp, mpf, workdps

from .exact_arith import (ExactPoly, dense_eval, dense_derivative, dense_trim,
                          dense_divmod, squarefree_part)

GUARD_DIGITS = 15


class InsufficientPrecisionError(ValueError):
    """The stated precision cannot certify the requested result."""


class PrecisionAgreementError(ValueError):
    """Escalated recomputation failed to agree to the required digits."""


def mpf_to_fraction(x) -> Fraction:
    """Exact value of an mpf (every finite mpf is a dyadic rational).

    Never rounds: the mantissa and exponent are read off directly, so the
    result is independent of the ambient working precision.
    """
    if isinstance(x, (int, float)):
        return Fraction(x)
    sign, man, exp, _ = x._mpf_
    if man == 0:
        if x == 0:
            return Fraction(0)
        raise ValueError("non-finite value")
    n = -int(man) if sign else int(man)
    if exp >= 0:
        return Fraction(n << exp)
    return Fraction(n, 1 << (-exp))


def fraction_to_mpf(q) -> mpf:
    """Round an exact rational to the ambient working precision."""
    q = Fraction(q)
    return mp.mpf(q.numerator) / q.denominator


@dataclass(frozen=True)
class BigReal:
    """A real number tagged with the decimal precision it is good to."""

    value: mpf
    precision: int

    def __post_init__(self):
        if self.precision < 20:
            raise ValueError("precision below 20 digits is not supported")
        v = self.value
        if not isinstance(v, mp.mpf):
            # convert at own precision; an existing mpf is kept bit-exact
            with workdps(self.precision + GUARD_DIGITS):
                v = fraction_to_mpf(v) if isinstance(v, Fraction) else mp.mpf(v)
        object.__setattr__(self, "value", v)

    @classmethod
    def from_exact(cls, q, precision: int) -> "BigReal":
        with workdps(precision + GUARD_DIGITS):
            v = fraction_to_mpf(q)
        return cls(v, precision)

    def _binary(self, other, op):
        if isinstance(other, BigReal):
            prec = min(self.precision, other.precision)
            with workdps(prec + GUARD_DIGITS):
                return BigReal(op(self.value, other.value), prec)
        prec = self.precision
        with workdps(prec + GUARD_DIGITS):
            ov = fraction_to_mpf(other) if isinstance(other, (Fraction, int)) else mp.mpf(other)
            return BigReal(op(self.value, ov), prec)

    def __add__(self, other):
        return self._binary(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._binary(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._binary(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._binary(other, lambda a, b: b / a)

    def __neg__(self):
        return BigReal(-self.value, self.precision)

    def __abs__(self):
        return BigReal(abs(self.value), self.precision)

    def __float__(self):
        return float(self.value)

    def _pair(self, other):
        if isinstance(other, BigReal):
            return self.value, other.value
        if isinstance(other, Fraction):
            # exact comparison, no rounding of either side
            return self.to_fraction(), other
        return self.value, other

    def __lt__(self, other):
        a, b = self._pair(other)
        return a < b

    def __le__(self, other):
        a, b = self._pair(other)
        return a <= b

    def __gt__(self, other):
        a, b = self._pair(other)
        return a > b

    def __ge__(self, other):
        a, b = self._pair(other)
        return a >= b

    def to_fraction(self) -> Fraction:
        return mpf_to_fraction(self.value)

    def to_decimal(self, digits: int | None = None) -> str:
        digits = self.precision if digits is None else digits
        return mp.nstr(self.value, digits, strip_zeros=False)

    def __str__(self):
        return self.to_decimal()


def stable_value(compute: Callable[[int], mpf], precision: int,
                 escalation: float = 2.0, label: str = "value") -> tuple:
    """Evaluate compute(dps) at precision d and at escalation*d digits.

    Returns (value at the higher precision, agreed decimal digits).  The two
    runs must agree to at least precision - 10 digits; anything less means
    the computation is drifting and is reported, never silently accepted.
    """
    if escalation < 1.5:
        raise ValueError("escalation factor below 1.5 certifies nothing")
    d1 = precision + GUARD_DIGITS
    d2 = int(escalation * d1)
    with workdps(d1):
        v1 = compute(d1)
    with workdps(d2):
        v2 = compute(d2)
        diff = abs(v1 - v2)
        scale = max(mpf(1), abs(v2))
        if diff == 0:
            agreed = d2
        else:
            agreed = int(-mp.log10(diff / scale))
    if agreed < precision - 10:
        raise PrecisionAgreementError(
            f"{label}: only {agreed} digits agree between {d1} and {d2} digit runs")
    return v2, agreed


# --- real root isolation ------------------------------------------------------


@dataclass(frozen=True)
class IsolatedRoot:
    """One real root: certified rational enclosure plus refined midpoint."""

    lo: Fraction
    hi: Fraction
    midpoint: BigReal
    polynomial: ExactPoly

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi


def _sturm_chain(f: list) -> list:
    chain = [f, dense_trim(dense_derivative(f))]
    while chain[-1]:
        _, r = dense_divmod(chain[-2], chain[-1])
        if not r:
            break
        chain.append([-c for c in r])
    return [c for c in chain if c]


def _variations(chain, x) -> int:
    signs = []
    for poly in chain:
        v = dense_eval(poly, x)
        if v:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _variations_at_infinity(chain, positive: bool) -> int:
    signs = []
    for poly in chain:
        lead = poly[-1]
        deg = len(poly) - 1
        s = 1 if lead > 0 else -1
        if not positive and deg % 2:
            s = -s
        signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def real_roots(a: ExactPoly, precision: int = 60) -> list:
    """All real roots of a univariate polynomial, isolated and refined.

    The squarefree part is taken first, so the returned count is the exact
    number of distinct real roots; each root comes with a rational enclosure
    on which the squarefree part changes sign (or which is the exact root).
    """
    if a.is_zero():
        raise ValueError("zero polynomial")
    if len(a.variables) != 1:
        raise ValueError("univariate polynomial required")
    f = squarefree_part(a.to_dense())
    if len(f) <= 1:
        return []
    chain = _sturm_chain(f)
    lead = f[-1]
    bound = Fraction(1) + max(abs(c / lead) for c in f[:-1]) if len(f) > 1 else Fraction(1)
    total = _variations_at_infinity(chain, False) - _variations_at_infinity(chain, True)

    # peel off exact rational endpoints hit during bisection as exact roots
    exact_roots = []
    intervals = []

    def count(lo, hi, vlo, vhi):
        return vlo - vhi

    def isolate(lo, hi, vlo, vhi):
        n = vlo - vhi
        if n == 0:
            return
        if n == 1:
            intervals.append((lo, hi))
            return
        mid = (lo + hi) / 2
        if dense_eval(f, mid) == 0:
            exact_roots.append(mid)
            # shrink around the exact root until the gap holds only this root
            delta = (hi - lo) / 4
            while (dense_eval(f, mid - delta) == 0 or dense_eval(f, mid + delta) == 0
                   or _variations(chain, mid - delta) - _variations(chain, mid + delta) != 1):
                delta /= 2
            vml = _variations(chain, mid - delta)
            vmr = _variations(chain, mid + delta)
            isolate(lo, mid - delta, vlo, vml)
            isolate(mid + delta, hi, vmr, vhi)
        else:
            vm = _variations(chain, mid)
            isolate(lo, mid, vlo, vm)
            isolate(mid, hi, vm, vhi)

    lo0, hi0 = -bound, bound
    # the Cauchy bound is strict, so f(+-bound) != 0
    isolate(lo0, hi0, _variations(chain, lo0), _variations(chain, hi0))
    assert len(intervals) + len(exact_roots) == total

    roots = [(r, r) for r in exact_roots]
    for lo, hi in intervals:
        roots.append(_refine(f, lo, hi, precision))
    roots.sort(key=lambda t: t[0])

    out = []
    for lo, hi in roots:
        if lo == hi:
            mid = BigReal.from_exact(lo, precision)
        else:
            with workdps(precision + GUARD_DIGITS):
                mid = BigReal((mpf(lo.numerator) / lo.denominator
                               + mpf(hi.numerator) / hi.denominator) / 2, precision)
        out.append(IsolatedRoot(lo, hi, mid, a))
    return out


def _refine(f: list, lo: Fraction, hi: Fraction, precision: int) -> tuple:
    """Shrink a sign-change interval to width < 2*10^-precision."""
    slo = 1 if dense_eval(f, lo) > 0 else -1
    # bisect to a comfortable Newton basin first
    while hi - lo > Fraction(1, 1000):
        mid = (lo + hi) / 2
        v = dense_eval(f, mid)
        if v == 0:
            return mid, mid
        if (1 if v > 0 else -1) == slo:
            lo = mid
        else:
            hi = mid
    target = Fraction(1, 10 ** precision)
    fp = dense_derivative(f)
    with workdps(precision + 2 * GUARD_DIGITS):
        x = (mpf(lo.numerator) / lo.denominator + mpf(hi.numerator) / hi.denominator) / 2
        fl = [mpf(c.numerator) / c.denominator for c in f]
        fpl = [mpf(c.numerator) / c.denominator for c in fp]

        def horner(cs, t):
            acc = mpf(0)
            for c in reversed(cs):
                acc = acc * t + c
            return acc

        converged = False
        for _ in range(precision + 40):
            d = horner(fpl, x)
            if d == 0:
                break
            step = horner(fl, x) / d
            x -= step
            if abs(step) < mpf(10) ** (-(precision + GUARD_DIGITS)):
                converged = True
                break
        approx = mpf_to_fraction(x)
    if converged and lo < approx < hi:
        # certify by exact signs around the Newton limit
        delta = target
        for _ in range(8):
            a, b = approx - delta, approx + delta
            va, vb = dense_eval(f, a), dense_eval(f, b)
            if va == 0:
                return a, a
            if vb == 0:
                return b, b
            if (va > 0) != (vb > 0):
                return (a, b) if a > lo and b < hi else _bisect_only(f, lo, hi, slo, target)
            delta *= 16
    return _bisect_only(f, lo, hi, slo, target)


def _bisect_only(f, lo, hi, slo, target):
    while hi - lo > 2 * target:
        mid = (lo + hi) / 2
        v = dense_eval(f, mid)
        if v == 0:
            return mid, mid
        if (1 if v > 0 else -1) == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


# --- continued fractions --------------------------------------------------------


@dataclass(frozen=True)
class CfExpansion:
    """Certified continued-fraction data: every listed convergent is exact."""

    partial_quotients: tuple
    convergents: tuple
    stop_reason: str  # 'max_terms', 'q_cap' or 'exact'
    first_uncertified_index: int | None  # None when the expansion terminated

    def __len__(self):
        return len(self.convergents)


def continued_fraction(alpha, max_terms: int, q_cap: int) -> CfExpansion:
    """Convergents (p_k, q_k) of alpha, index 0 at the integer part.

    alpha may be a BigReal (certified by interval Euclid against its stated
    precision) or an exact rational.  Stops at max_terms convergents or at the
    first q_k exceeding q_cap; running out of certified digits before either
    cap raises InsufficientPrecisionError rather than silently truncating.
    """
    if isinstance(alpha, BigReal):
        v = alpha.to_fraction()
        eps = Fraction(1, 10 ** alpha.precision)
        lo, hi = v - eps, v + eps
        exact = False
    else:
        lo = hi = Fraction(alpha)
        exact = True
    if lo <= 0:
        raise ValueError("alpha must be positive (certified-positive for BigReal)")

    quotients = []
    convergents = []
    p_prev, q_prev, p_cur, q_cur = 0, 1, 1, 0

    def push(a):
        nonlocal p_prev, q_prev, p_cur, q_cur
        quotients.append(a)
        p_prev, p_cur = p_cur, a * p_cur + p_prev
        q_prev, q_cur = q_cur, a * q_cur + q_prev
        convergents.append((p_cur, q_cur))

    stop = None
    while True:
        a_lo = lo.numerator // lo.denominator
        a_hi = hi.numerator // hi.denominator
        if a_lo != a_hi:
            if exact:
                raise AssertionError("exact endpoints cannot disagree")
            raise InsufficientPrecisionError(
                f"only {len(convergents)} convergents certified before "
                f"reaching max_terms={max_terms} or q_cap={q_cap}")
        push(a_lo)
        if q_cur > q_cap:
            stop = "q_cap"
            break
        if len(convergents) >= max_terms:
            stop = "max_terms"
            break
        flo, fhi = lo - a_lo, hi - a_hi
        if flo == 0 or fhi == 0:
            if exact and flo == 0 and fhi == 0:
                stop = "exact"
                break
            raise InsufficientPrecisionError(
                "interval endpoint became an integer; next term uncertified")
        lo, hi = 1 / fhi, 1 / flo

    uncertified = None if stop == "exact" else len(convergents)
    return CfExpansion(tuple(quotients), tuple(convergents), stop, uncertified)
