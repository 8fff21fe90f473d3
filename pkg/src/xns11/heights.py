"""Naive and canonical heights of rational points, with certified error bounds.

The canonical height is computed in the normalization where it is half of the
doubling limit of h_X, i.e. hhat(P) = lim h_X(2^n P) / (2*4^n).  Each doubling
acts on the exact numerator/denominator pair, so the only error is the
truncated tail, and that tail is bounded by a one-time pair of integer
constants derived from the duplication forms: coefficient sums bound the
growth of max(|u|,|v|) from above, and Bezout cofactors of the two forms bound
both the gcd cancellation and the drop from below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm as _lcm

import gmpy2
from mpmath import mp, workdps

from .certificates import Certificate, CertificateBuilder, format_value
from .curve_core import CURVE, RationalPoint, WeierstrassModel, t_value
from .real_numerics import BigReal, GUARD_DIGITS, fraction_to_mpf

DEFAULT_DOUBLINGS = 12

# chained comparison constants: consumed as printed upper bounds, not re-derived
HALF_HX_SHIFT = Fraction(354, 100)
THIRD_HT_SHIFT = Fraction(452, 100)


def _log_of_int(n: int, precision: int) -> BigReal:
    with workdps(precision + GUARD_DIGITS):
        return BigReal(mp.log(n) if n > 1 else mp.mpf(0), precision)


def rational_log_height(q: Fraction, precision: int = 60) -> BigReal:
    """log max(|numerator|, |denominator|) of a rational in lowest terms."""
    return _log_of_int(max(abs(q.numerator), q.denominator), precision)


def naive_height(P: RationalPoint, selector: str = "x",
                 precision: int = 60) -> BigReal:
    """Logarithmic height of x(P) or of t(P) = y - 11/x.

    Poles of the selected function get the +infinity marker (a BigReal whose
    value is mpf +inf), so comparisons still work.
    """
    if selector == "x":
        value = None if P.is_infinity else P.x
    elif selector == "t":
        value = t_value(P)
    else:
        raise ValueError(f"unknown height selector {selector!r}")
    if value is None:
        return BigReal(mp.inf, precision)
    return rational_log_height(Fraction(value), precision)


def _dense_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        for j, cb in enumerate(b):
            out[i + j] += ca * cb
    return out


def _dense_sub(a, b):
    out = list(a) + [Fraction(0)] * (len(b) - len(a))
    for i, cb in enumerate(b):
        out[i] -= cb
    return out


def _cofactors_to_constant(f, g):
    """(a, b, r) with a*f + b*g = r, r a nonzero rational constant.

    Requires gcd(f, g) constant; dense little-endian Fraction lists.
    """
    from .exact_arith import dense_divmod, dense_trim

    r0, r1 = [Fraction(c) for c in f], [Fraction(c) for c in g]
    a0, a1 = [Fraction(1)], [Fraction(0)]
    b0, b1 = [Fraction(0)], [Fraction(1)]
    while len(dense_trim(r1)) > 1:
        q, rem = dense_divmod(r0, r1)
        r0, r1 = r1, dense_trim(rem) or [Fraction(0)]
        a0, a1 = a1, dense_trim(_dense_sub(a0, _dense_mul(q, a1))) or [Fraction(0)]
        b0, b1 = b1, dense_trim(_dense_sub(b0, _dense_mul(q, b1))) or [Fraction(0)]
    r1 = dense_trim(r1)
    if not r1:
        raise ValueError("inputs share a nonconstant factor")
    return a1, b1, r1[0]


def _scale_integral(a, b, r):
    """Clear denominators of a*f + b*g = r; returns integer data."""
    den = 1
    for c in list(a) + list(b) + [r]:
        den = _lcm(den, c.denominator)
    ai = [int(c * den) for c in a]
    bi = [int(c * den) for c in b]
    return ai, bi, int(r * den)


@lru_cache(maxsize=None)
def _duplication_data(model: WeierstrassModel):
    """Duplication forms and the one-step height-defect constant.

    Returns (fu, gv, Q) where x(2P) = F(u,v)/G(u,v) for x = u/v in lowest
    terms, fu/gv are the dense coefficient tuples of F and G in u (degree 4
    forms), and Q is an exact rational with
    |h(x(2P)) - 4 h(x(P))| <= log Q.
    """
    b2, b4, b6, b8 = model.b2, model.b4, model.b6, model.b8
    fu = (-b8, -2 * b6, -b4, 0, 1)          # F = u^4 - b4 u^2v^2 - 2b6 uv^3 - b8 v^4
    gv = (b6, 2 * b4, b2, 4, 0)             # G = v(4u^3 + b2 u^2v + 2b4 uv^2 + b6 v^3)

    q_plus = max(sum(abs(c) for c in fu), sum(abs(c) for c in gv))

    # Bezout cofactors of the dehomogenized forms: A*F + B*G = r0 * v^7
    f_v = [Fraction(c) for c in fu]          # f(z) = F(z, 1)
    g_v = [Fraction(c) for c in gv[1:]]      # G(z, 1) = g(z) since G has the v factor
    a, b, r = _cofactors_to_constant(f_v, g_v)
    assert len(a) <= 4 and len(b) <= 4, "cofactor degrees exceed form weight"
    ai, bi, r0 = _scale_integral(a, b, r)
    s0 = sum(abs(c) for c in ai) + sum(abs(c) for c in bi)

    # reversed variable: A1*F + B1*G = r1 * u^7
    f_u = [Fraction(c) for c in reversed(fu)]
    g_u = [Fraction(c) for c in reversed(gv)]
    a1, b1, r_1 = _cofactors_to_constant(f_u, g_u)
    assert len(a1) <= 4 and len(b1) <= 4, "cofactor degrees exceed form weight"
    a1i, b1i, r1 = _scale_integral(a1, b1, r_1)
    s1 = sum(abs(c) for c in a1i) + sum(abs(c) for c in b1i)

    # gcd(F, G) divides lcm(r0, r1); max(|F|,|G|) >= min(|ri|/Si) * max(|u|,|v|)^4
    big_r = _lcm(abs(r0), abs(r1))
    q_minus = big_r * max(Fraction(s0, abs(r0)), Fraction(s1, abs(r1)))
    return fu, gv, max(Fraction(q_plus), q_minus)


def _tail_bound(model: WeierstrassModel, doublings: int) -> Fraction:
    """Exact rational upper bound for |hhat - h_X(2^n P)/(2*4^n)|."""
    q = _duplication_data(model)[2]
    with workdps(40):
        lg = mp.log(fraction_to_mpf(q))
        from .real_numerics import mpf_to_fraction
        lg_upper = mpf_to_fraction(lg) * (1 + Fraction(1, 10 ** 30))
    return lg_upper / (6 * 4 ** doublings)


def doublings_for_error(max_error, model: WeierstrassModel = CURVE) -> int:
    """Smallest iteration count whose certified tail is within max_error."""
    max_error = Fraction(max_error)
    if max_error <= 0:
        raise ValueError("error target must be positive")
    n = 0
    while _tail_bound(model, n) > max_error:
        n += 1
        if n > 60:
            raise ValueError("error target unreachable")
    return n


@dataclass(frozen=True)
class HeightEstimate:
    """Canonical height value with a certified truncation bound."""

    value: BigReal
    error_bound: Fraction
    doublings: int

    def upper(self) -> Fraction:
        return self.value.to_fraction() + self.error_bound

    def lower(self) -> Fraction:
        return self.value.to_fraction() - self.error_bound


def canonical_height(P: RationalPoint, precision: int = 60,
                     doublings: int | None = None, max_error=None,
                     model: WeierstrassModel = CURVE) -> HeightEstimate:
    """Doubling-limit canonical height with an explicit tail bound.

    With neither doublings nor max_error given, 12 doublings are used (tail
    below 1e-6).  Large multiples get exponentially large coordinates, so
    callers needing only a coarse value should pass max_error.
    """
    if doublings is None:
        doublings = (DEFAULT_DOUBLINGS if max_error is None
                     else doublings_for_error(max_error, model))
    if P.is_infinity:
        return HeightEstimate(BigReal.from_exact(0, precision), Fraction(0), 0)
    model._require(P)
    fu, gv, _ = _duplication_data(model)
    x = Fraction(P.x)
    u = gmpy2.mpz(x.numerator)
    v = gmpy2.mpz(x.denominator)
    for _ in range(doublings):
        uu = sum(c * u ** (4 - i) * v ** i for i, c in enumerate(reversed(fu)))
        vv = sum(c * u ** (4 - i) * v ** i for i, c in enumerate(reversed(gv)))
        if vv == 0:
            raise ValueError("point is torsion; canonical height is 0 by convention")
        g = gmpy2.gcd(uu, vv)
        u, v = uu // g, abs(vv // g)
    m = max(abs(u), v)
    with workdps(precision + GUARD_DIGITS):
        h = mp.log(int(m)) / (2 * 4 ** doublings) if m > 1 else mp.mpf(0)
    return HeightEstimate(BigReal(h, precision), _tail_bound(model, doublings),
                          doublings)


@dataclass(frozen=True)
class HeightReport:
    """All three heights of one point, for certificate serialization."""

    point: RationalPoint
    h_x: BigReal
    h_t: BigReal
    h_hat: HeightEstimate

    def as_dict(self) -> dict:
        return {
            "point": str(self.point),
            "h_x": format_value(self.h_x),
            "h_t": format_value(self.h_t),
            "h_hat": format_value(self.h_hat.value),
            "h_hat_error": format_value(self.h_hat.error_bound, 6),
            "doublings": self.h_hat.doublings,
        }


def verify_height_comparison(points, precision: int = 60,
                             max_error=Fraction(1, 1000)) -> Certificate:
    """Chained height inequalities for a list of affine points.

    For each point with t defined and nonzero the three checks are
        h_X <= (2/3) h_t + log 7,
        hhat <= (1/2) h_X + 3.54,
        hhat <= (1/3) h_t + 4.52,
    the middle one consuming its shift as an external constant.  Points where
    t has a pole are skipped with a note.  The first check is decided in exact
    integer arithmetic (cubing both sides); the others compare certified
    enclosures whose slack is far below the observed margins.
    """
    cert = CertificateBuilder("height-comparison", precision)
    rows = []
    for P in points:
        tv = t_value(P) if not P.is_infinity else None
        if P.is_infinity or tv is None:
            cert.note(f"skipped {P}: t has a pole there")
            continue
        tq = Fraction(tv)
        xq = Fraction(P.x)
        hx_int = max(abs(xq.numerator), xq.denominator)
        ht_int = max(abs(tq.numerator), tq.denominator)

        # h_X <= (2/3) h_t + log 7, cubed to stay in the integers
        cert.check_true(
            f"{P}: max(|x|num,den)^3 <= 343 * max(|t|num,den)^2",
            hx_int ** 3 <= 343 * ht_int ** 2,
            f"{hx_int}^3 vs 343*{ht_int}^2")

        h_x = rational_log_height(xq, precision)
        h_t = rational_log_height(tq, precision)
        est = canonical_height(P, precision, max_error=max_error)
        rows.append(HeightReport(P, h_x, h_t, est).as_dict())

        slack = Fraction(1, 10 ** (precision - 10))
        hhat_up = est.upper() + slack
        cert.check_le(f"{P}: hhat <= h_X/2 + {HALF_HX_SHIFT}",
                      hhat_up, h_x.to_fraction() / 2 + HALF_HX_SHIFT)
        cert.check_le(f"{P}: hhat <= h_t/3 + {THIRD_HT_SHIFT}",
                      hhat_up, h_t.to_fraction() / 3 + THIRD_HT_SHIFT)
    cert.data["points"] = rows
    cert.note(f"shift constants {HALF_HX_SHIFT} and {THIRD_HT_SHIFT} are "
              "consumed as externally established upper bounds")
    return cert.finish()
