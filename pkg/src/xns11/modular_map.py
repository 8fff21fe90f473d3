"""The degree-55 map to the j-line and the integrality transfer.

j(X,Y) = h(X,Y)/(XY-11)^11, with h a product of two cubes and one long
bivariate factor.  Integrality of j at a rational point is equivalent to
integrality of k = x/(xy-11); the equivalence rests on two exact facts,
a resultant value of 11^63 and an 11-adic content of 14, both verified
here as certificates.  The twenty hand-copied coefficients of the long
factor are guarded three ways: the seven CM j-values, the degree-31
resultant identity, and the 11-adic content; a typo breaks at least one.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .certificates import Certificate, CertificateBuilder
from .curve_core import (CURVE, CUSP_POLYNOMIAL, GENERATOR, RationalPoint,
                         SEVEN_INTEGRAL_POINTS, k_value, mul)
from .exact_arith import (ExactPoly, content_valuation, poly_resultant,
                          substitute_and_clear)

_V = ("X", "Y")
_Y = ExactPoly.variable("Y", _V)

# j-invariants of the CM curves matched by the seven solutions, keyed by
# the discriminant of the quadratic order
CM_TABLE = (
    (-67, -5280 ** 3),
    (-16, 66 ** 3),
    (-4, 12 ** 3),
    (-27, -3 * 160 ** 3),
    (-163, -640320 ** 3),
    (-3, 0),
    (-12, 2 * 30 ** 3),
)

assert len(CM_TABLE) == 7 and len({j for _, j in CM_TABLE}) == 7


def _xpoly(*coeffs) -> ExactPoly:
    """Bivariate polynomial in X alone, coefficients high to low."""
    n = len(coeffs) - 1
    return ExactPoly(_V, {(n - i, 0): c for i, c in enumerate(coeffs)})


@dataclass(frozen=True)
class JMapData:
    """Expanded numerator of the map, with its denominator exponent."""

    numerator: ExactPoly
    denominator_power: int = 11

    @property
    def term_count(self) -> int:
        return len(self.numerator.coeffs)

    def value_at_infinity(self) -> Fraction:
        """Limit along the local parameter u at infinity.

        x ~ u^-2 and y ~ u^-3 with unit leading coefficients, so
        (xy - 11)^11 ~ u^-55 and the limit is the total weight-55
        coefficient of the numerator, weighting X by 2 and Y by 3.
        """
        return sum((c for (i, j), c in self.numerator.coeffs.items()
                    if 2 * i + 3 * j == 55), Fraction(0))


@lru_cache(maxsize=1)
def jmap_data() -> JMapData:
    """Expand the factored numerator once; shared immutably after that."""
    quadratic = _xpoly(1, 11, 22)
    cubic_in_y = _xpoly(11, 88, 121) * _Y + _xpoly(2, 55, 451, 1452, 1452)
    long_factor = (_xpoly(6750, 337590, 5159935, 36807958, 145636931,
                          341425458, 474292533, 362189058, 117523307) * _Y
                   + _xpoly(51975, 1746052, 24440064, 188870352, 892661770,
                            2692703508, 5217583888, 6299026712, 4320837279,
                            1288408000))
    h = quadratic ** 3 * cubic_in_y ** 3 * long_factor
    if not h.is_integral():
        raise AssertionError("expanded numerator must have integer coefficients")
    if h.degree("Y") != 4:
        raise AssertionError("numerator must have Y-degree 4")
    weight = max(2 * i + 3 * j for i, j in h.coeffs)
    if weight != 55:
        raise AssertionError(f"top weight {weight} contradicts a degree-55 map")
    return JMapData(h)


def j_map(P: RationalPoint) -> Fraction:
    """Exact j-invariant of the elliptic curve parametrized by P."""
    if not CURVE.contains(P):
        raise ValueError(f"point {P} is not on the curve")
    data = jmap_data()
    if P.is_infinity:
        return data.value_at_infinity()
    denom = P.x * P.y - 11
    if denom == 0:
        raise ValueError("xy = 11 is outside the domain of the map")
    return data.numerator.evaluate(P.x, P.y) / denom ** data.denominator_power


def verify_resultant_check() -> Certificate:
    """Certify the resultant fact behind integrality away from 11.

    A prime l other than 11 dividing xy - 11 at a rational point divides
    both the cusp quintic p(x) and r(x) = x^4 h(x, 11/x); their resultant
    is +-11^63, so no such l exists once j is assumed integral at l.
    """
    cert = CertificateBuilder("resultant-check", 0)
    cert.note("exact integer arithmetic throughout")
    h = jmap_data().numerator

    r = substitute_and_clear(h, 11, 4)
    cert.check_exact("degree of x^4 h(x, 11/x)", r.degree(), 31)
    cert.data["r_content_valuation_at_11"] = content_valuation(r, 11)

    res = poly_resultant(CUSP_POLYNOMIAL, r)
    cert.check_exact("resultant with the cusp quintic, absolute value",
                     abs(res), 11 ** 63)
    cert.data["resultant_sign"] = 1 if res > 0 else -1

    # multiplicativity cross-check: res(p, X*r) = res(p, X) * res(p, r)
    x = ExactPoly.variable("X")
    factor = poly_resultant(CUSP_POLYNOMIAL, x)
    cert.check_exact("constant term of the cusp quintic",
                     CUSP_POLYNOMIAL.evaluate(0), Fraction(-121))
    cert.check_exact("resultant is multiplicative in the second argument",
                     poly_resultant(CUSP_POLYNOMIAL, x * r), factor * res)
    return cert.finish()


def _valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def verify_eleven_adic_check() -> Certificate:
    """Certify integrality of j at 11 itself.

    When 11 divides both coordinates, (xy - 11)^11 carries exactly 11^11
    while the numerator carries at least 11^14, leaving j divisible by
    11^3 there.
    """
    cert = CertificateBuilder("eleven-adic-check", 0)
    cert.note("exact integer arithmetic throughout")
    h = jmap_data().numerator

    scaled = ExactPoly(("U", "V"),
                       {e: c * Fraction(11) ** sum(e)
                        for e, c in h.coeffs.items()})
    content = content_valuation(scaled, 11)
    cert.check_le("11-adic content of h(11U, 11V) at least 14", 14, content)
    cert.data["content_valuation"] = content

    samples = [(a, b) for a in (-3, -1, 1, 2, 7) for b in (-2, 1, 5)]
    cert.check_true("(11a*11b - 11)^11 has 11-adic valuation exactly 11",
                    all(_valuation((11 * a * 11 * b - 11) ** 11, 11) == 11
                        for a, b in samples),
                    f"{len(samples)} integer pairs")
    for P in (RationalPoint(0, 0), RationalPoint(0, -11)):
        cert.check_exact(f"valuation of (xy-11)^11 at {P}",
                         _valuation(int((P.x * P.y - 11) ** 11), 11), 11)
    cert.check_le("margin of divisibility at 11 is at least 3",
                  3, content - 11)
    return cert.finish()


def verify_integrality_equivalence(points=None) -> Certificate:
    """Certify j in Z <=> k in Z pointwise, and pin the seven j-values."""
    cert = CertificateBuilder("integrality-equivalence", 0)
    cert.note("exact rational arithmetic throughout")
    if points is None:
        points = [mul(m, GENERATOR) for m in range(-12, 13)]

    agree = []
    for P in points:
        j = j_map(P)
        k = k_value(P)
        agree.append((j.denominator == 1) == (k.denominator == 1))
        if not P.is_infinity:
            # both denominators divide a power of rs - 11t^5
            r, s, t = P.standard_form()
            core = abs(r * s - 11 * t ** 5)
            for d in (j.denominator, k.denominator):
                while d > 1:
                    g = gcd(d, core)
                    if g == 1:
                        agree.append(False)
                        break
                    d //= g
    cert.check_true("j and k are integral for exactly the same points",
                    all(agree), f"{len(points)} points")

    for P, (disc, j_cm) in zip(SEVEN_INTEGRAL_POINTS, CM_TABLE):
        cert.check_exact(f"j{P} matches the CM value for discriminant {disc}",
                         j_map(P), Fraction(j_cm))
    cert.check_true("the model's own j-invariant is not among the seven",
                    CURVE.j_invariant not in {j for _, j in CM_TABLE},
                    str(CURVE.j_invariant))
    cert.data["integral_count"] = sum(
        1 for P in points if j_map(P).denominator == 1)
    return cert.finish()
