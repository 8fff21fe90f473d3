"""Real period and elliptic logarithm on the real locus of the curve.

The real points of a model whose branch cubic has a single real root c form
one loop, parametrized by the logarithm lambda(P) = integral of dx/(2y+a1x+a3)
from infinity to P, taken in [0, Omega).  Both the period Omega and the
logarithms are evaluated through Carlson's symmetric integral RF and certified
by recomputation at doubled working precision.

Normalization: Omega is the full loop integral (half of the convention that
doubles the lattice), so lambda(P) + lambda(-P) = Omega for P off the branch
point and lambda is a homomorphism onto R/(Omega Z).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from mpmath import mp, workdps

from .curve_core import CURVE, RationalPoint, WeierstrassModel
from .exact_arith import ExactPoly
from .real_numerics import (BigReal, GUARD_DIGITS, fraction_to_mpf,
                            mpf_to_fraction, real_roots, stable_value)


def branch_cubic(model: WeierstrassModel) -> ExactPoly:
    """Monic cubic in X whose roots are the x-coordinates where 2y+a1x+a3 = 0.

    Completing the square turns the model into w^2 = 4*(this cubic); its real
    roots are the branch points of x on the real locus.
    """
    X = ExactPoly.variable("X")
    return (X ** 3 + X ** 2 * Fraction(model.b2, 4)
            + X * Fraction(model.b4, 2) + Fraction(model.b6, 4))


def real_branch_point(model: WeierstrassModel = CURVE, precision: int = 60) -> BigReal:
    """The single real branch point c; every real point has x >= c.

    Models whose branch cubic has three real roots have a disconnected real
    locus and are rejected.
    """
    roots = real_roots(branch_cubic(model), precision=precision)
    if len(roots) != 1:
        raise ValueError("real locus is not a single loop "
                         f"({len(roots)} real branch points)")
    return roots[0].midpoint


@lru_cache(maxsize=None)
def _loop_data(model: WeierstrassModel, dps: int):
    """(c, beta, gamma, omega) as mpf at dps digits.

    c is the real root of the branch cubic, beta +/- i*gamma the complex pair
    from deflation, omega the loop integral 2*RF(0, c-z, c-conj(z)).
    """
    c_exact = real_branch_point(model, precision=dps).to_fraction()
    with workdps(dps + GUARD_DIGITS):
        c = fraction_to_mpf(c_exact)
        u1 = fraction_to_mpf(Fraction(model.b2, 4)) + c
        u0 = fraction_to_mpf(Fraction(model.b4, 2)) + c * u1
        beta = -u1 / 2
        gamma = mp.sqrt(u0 - beta * beta)
        omega = 2 * mp.elliprf(mp.mpc(0), mp.mpc(c - beta, -gamma),
                               mp.mpc(c - beta, gamma)).real
    return c, beta, gamma, omega


def real_period(model: WeierstrassModel = CURVE, precision: int = 60) -> BigReal:
    """Loop integral Omega of dx/(2y+a1x+a3) over the real locus."""

    def compute(dps):
        return _loop_data(model, dps)[3]

    value, _ = stable_value(compute, precision, label="real period")
    return BigReal(value, precision)


@dataclass(frozen=True)
class EllipticLog:
    """A point's logarithm, reduced into [0, Omega)."""

    point: object  # RationalPoint, or an (x, y) pair of real coordinates
    value: BigReal
    precision: int


def _coordinates(point, model: WeierstrassModel):
    """Exact (x, y) Fractions of the input, or None for infinity.

    Real coordinate pairs (cusps enter this way) are accepted if they satisfy
    the curve equation to 10^-20; rationals must lie on the curve exactly.
    """
    if isinstance(point, RationalPoint):
        if point.is_infinity:
            return None
        model._require(point)
        return point.x, point.y
    x, y = point
    x = x.to_fraction() if isinstance(x, BigReal) else \
        mpf_to_fraction(x) if isinstance(x, mp.mpf) else Fraction(x)
    y = y.to_fraction() if isinstance(y, BigReal) else \
        mpf_to_fraction(y) if isinstance(y, mp.mpf) else Fraction(y)
    residual = (y * y + model.a1 * x * y + model.a3 * y
                - (x ** 3 + model.a2 * x ** 2 + model.a4 * x + model.a6))
    if abs(residual) > Fraction(1, 10 ** 20):
        raise ValueError(f"coordinate pair is off the curve by {float(residual)}")
    return x, y


def elliptic_log(point, precision: int = 60,
                 model: WeierstrassModel = CURVE) -> EllipticLog:
    """Logarithm of a real point of the model, reduced into [0, Omega).

    Accepts a RationalPoint or an (x, y) pair of real coordinates (BigReal,
    Fraction, int or mpf) lying on the curve.  The integral is taken on the
    branch 2y+a1x+a3 <= 0; points on the opposite branch go through negation
    and are reflected to Omega minus the integral.
    """
    coords = _coordinates(point, model)
    if coords is None:
        return EllipticLog(point, BigReal.from_exact(0, precision), precision)
    x, y = coords
    # w < 0 picks the directly integrated branch, w > 0 the reflected one
    w = 2 * y + model.a1 * x + model.a3

    def compute(dps):
        c, beta, gamma, omega = _loop_data(model, dps)
        with workdps(dps + GUARD_DIGITS):
            xm = fraction_to_mpf(x)
            half = mp.elliprf(mp.mpc(xm - c), mp.mpc(xm - beta, -gamma),
                              mp.mpc(xm - beta, gamma)).real
            lam = half if w <= 0 else omega - half
            return lam % omega

    value, _ = stable_value(compute, precision, label="elliptic log")
    return EllipticLog(point, BigReal(value, precision), precision)
