"""Exact arithmetic on E: Y^2 + 11Y = X^3 + 11X^2 + 33X over the rationals.

The group law works for any long Weierstrass model with integer coefficients
(small models are useful as oracles in tests); the functions t = Y - 11/X and
k = X/(XY - 11) and the level-set machinery are specific to the curve above,
which is isomorphic over Q to the genus-one modular curve X_ns(11).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .exact_arith import ExactPoly, rational_roots


@dataclass(frozen=True)
class WeierstrassModel:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        if self.discriminant == 0:
            raise ValueError("singular model (discriminant zero)")
        # standard identities tie the derived invariants together
        assert 4 * self.b8 == self.b2 * self.b6 - self.b4 ** 2
        assert 1728 * self.discriminant == self.c4 ** 3 - self.c6 ** 2

    @property
    def b2(self):
        return self.a1 ** 2 + 4 * self.a2

    @property
    def b4(self):
        return 2 * self.a4 + self.a1 * self.a3

    @property
    def b6(self):
        return self.a3 ** 2 + 4 * self.a6

    @property
    def b8(self):
        return (self.a1 ** 2 * self.a6 + 4 * self.a2 * self.a6
                - self.a1 * self.a3 * self.a4 + self.a2 * self.a3 ** 2
                - self.a4 ** 2)

    @property
    def c4(self):
        return self.b2 ** 2 - 24 * self.b4

    @property
    def c6(self):
        return -self.b2 ** 3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @property
    def discriminant(self):
        return (-self.b2 ** 2 * self.b8 - 8 * self.b4 ** 3
                - 27 * self.b6 ** 2 + 9 * self.b2 * self.b4 * self.b6)

    @property
    def j_invariant(self) -> Fraction:
        return Fraction(self.c4 ** 3, self.discriminant)

    def curve_polynomial(self) -> ExactPoly:
        """F(X,Y) = Y^2 + a1 XY + a3 Y - X^3 - a2 X^2 - a4 X - a6."""
        return ExactPoly(("X", "Y"), {
            (0, 2): 1, (1, 1): self.a1, (0, 1): self.a3,
            (3, 0): -1, (2, 0): -self.a2, (1, 0): -self.a4, (0, 0): -self.a6,
        })

    def contains(self, P: "RationalPoint") -> bool:
        if P.is_infinity:
            return True
        x, y = P.x, P.y
        return (y * y + self.a1 * x * y + self.a3 * y
                == x ** 3 + self.a2 * x * x + self.a4 * x + self.a6)

    def _require(self, *points):
        for P in points:
            if not self.contains(P):
                raise ValueError(f"point {P} is not on the curve")

    def negate(self, P: "RationalPoint") -> "RationalPoint":
        self._require(P)
        if P.is_infinity:
            return P
        return RationalPoint(P.x, -P.y - self.a1 * P.x - self.a3)

    def add(self, P: "RationalPoint", Q: "RationalPoint") -> "RationalPoint":
        self._require(P, Q)
        if P.is_infinity:
            return Q
        if Q.is_infinity:
            return P
        x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
        a1, a2, a3, a4 = self.a1, self.a2, self.a3, self.a4
        if x1 == x2:
            if y1 + y2 + a1 * x2 + a3 == 0:
                return RationalPoint.infinity()
            lam = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / (2 * y1 + a1 * x1 + a3)
        else:
            lam = (y2 - y1) / (x2 - x1)
        nu = y1 - lam * x1
        x3 = lam * lam + a1 * lam - a2 - x1 - x2
        y3 = -(lam + a1) * x3 - nu - a3
        return RationalPoint(x3, y3)

    def mul(self, m: int, P: "RationalPoint") -> "RationalPoint":
        self._require(P)
        if m < 0:
            return self.mul(-m, self.negate(P))
        result = RationalPoint.infinity()
        addend = P
        while m:
            if m & 1:
                result = self.add(result, addend)
            addend = self.add(addend, addend)
            m >>= 1
        return result


@dataclass(frozen=True)
class RationalPoint:
    """A rational point: affine (x, y) in lowest terms, or the point at infinity."""

    x: Fraction | None
    y: Fraction | None

    def __init__(self, x=None, y=None):
        if (x is None) != (y is None):
            raise ValueError("both coordinates or neither")
        object.__setattr__(self, "x", None if x is None else Fraction(x))
        object.__setattr__(self, "y", None if y is None else Fraction(y))

    @classmethod
    def infinity(cls) -> "RationalPoint":
        return cls(None, None)

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __str__(self):
        if self.is_infinity:
            return "infinity"
        return f"({self.x}, {self.y})"

    def to_json(self):
        if self.is_infinity:
            return "infinity"
        return {"x": f"{self.x.numerator}/{self.x.denominator}",
                "y": f"{self.y.numerator}/{self.y.denominator}"}

    def standard_form(self) -> tuple:
        """(r, s, t) with x = r/t^2, y = s/t^3 in lowest terms and gcd(rs, t) = 1."""
        if self.is_infinity:
            raise ValueError("affine point required")
        t = isqrt(self.x.denominator)
        if t * t != self.x.denominator or self.y.denominator != t ** 3:
            raise ValueError(f"coordinates of {self} lack the r/t^2, s/t^3 shape")
        r, s = self.x.numerator, self.y.numerator
        if gcd(r * s, t) != 1:
            raise ValueError(f"gcd(rs, t) != 1 for {self}")
        return r, s, t


CURVE = WeierstrassModel(0, 11, 11, 33, 0)
GENERATOR = RationalPoint(0, 0)

# E(Q) is free of rank one on GENERATOR; these are its multiples with k integral,
# listed with their multipliers m = -2..4.
INTEGRAL_POINT_MULTIPLES = (
    (-2, RationalPoint(-2, -6)),
    (-1, RationalPoint(0, -11)),
    (0, RationalPoint.infinity()),
    (1, RationalPoint(0, 0)),
    (2, RationalPoint(-2, -5)),
    (3, RationalPoint(Fraction(-11, 4), Fraction(-33, 8))),
    (4, RationalPoint(-6, -2)),
)

# the same seven points in the order used for the j-invariant correspondence
SEVEN_INTEGRAL_POINTS = (
    RationalPoint(0, 0),
    RationalPoint(0, -11),
    RationalPoint(-2, -5),
    RationalPoint(-2, -6),
    RationalPoint(-6, -2),
    RationalPoint(Fraction(-11, 4), Fraction(-33, 8)),
    RationalPoint.infinity(),
)


def add(P, Q, model=CURVE):
    return model.add(P, Q)


def negate(P, model=CURVE):
    return model.negate(P)


def mul(m, P, model=CURVE):
    return model.mul(m, P)


def t_value(P: RationalPoint):
    """t = y - 11/x; None marks the poles (0,0), (0,-11) and infinity."""
    if not CURVE.contains(P):
        raise ValueError(f"point {P} is not on the curve")
    if P.is_infinity or P.x == 0:
        return None
    return P.y - Fraction(11) / P.x


def k_value(P: RationalPoint) -> Fraction:
    """k = x/(xy - 11), the reciprocal of t; k = 0 at the poles of t."""
    if not CURVE.contains(P):
        raise ValueError(f"point {P} is not on the curve")
    if P.is_infinity:
        return Fraction(0)  # t has a pole of order 3 at infinity
    denom = P.x * P.y - 11
    assert denom != 0, "xy = 11 never holds for rational points of this curve"
    return P.x / denom


def level_set_polynomial(tau) -> ExactPoly:
    """Quintic in X whose roots are the x-coordinates of points with t = tau.

    Obtained from -X^2 * F(X, 11/X + tau); tau = 0 gives the cusp polynomial
    p(X) = X^5 + 11X^4 + 33X^3 - 121X - 121.
    """
    tau = Fraction(tau)
    return ExactPoly.from_dense([
        Fraction(-121),
        -22 * tau - 121,
        -(tau * tau + 11 * tau),
        Fraction(33),
        Fraction(11),
        Fraction(1),
    ], "X")


CUSP_POLYNOMIAL = level_set_polynomial(0)


def points_with_k(k: int) -> set:
    """All rational points with k = x/(xy - 11) equal to the given integer.

    k = 0 is the pole set of t. Otherwise points with t = 1/k have x-coordinate
    a rational root of the level-set quintic, and y = 11/x + 1/k lifts each
    root to the unique matching point.
    """
    k = int(k)
    if k == 0:
        return {RationalPoint(0, 0), RationalPoint(0, -11), RationalPoint.infinity()}
    tau = Fraction(1, k)
    found = set()
    for x in rational_roots(level_set_polynomial(tau)):
        # x = 0 is never a root: the quintic has constant term -121
        P = RationalPoint(x, Fraction(11) / x + tau)
        assert CURVE.contains(P)
        found.add(P)
    return found
