"""Coefficient bounds from linear forms in two elliptic logarithms.

An integral point forces m*lambda(11P0) to sit unusually close to a multiple
of Omega, quantified by the inequality |n*Omega - m*lambda(11P0)| <=
11*exp(13.56 - 0.13 m^2).  Played against an explicit transcendence lower
bound for the same linear form, that coexistence caps |m| at an absolute
constant; continued-fraction convergents of lambda(11P0)/Omega then shrink
the cap to 12, and an exact sweep of the remaining multiples finishes the
enumeration.  The transcendence constants are consumed as printed source
values, with provenance recorded, never re-derived.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, workdps

from .analytic_certificates import certify_cusp_torsion, certify_interval_lemma
from .certificates import Certificate, CertificateBuilder, format_value
from .curve_core import (GENERATOR, INTEGRAL_POINT_MULTIPLES, RationalPoint,
                         SEVEN_INTEGRAL_POINTS, k_value, mul, points_with_k,
                         t_value)
from .heights import canonical_height, verify_height_comparison
from .periods_logs import elliptic_log, real_period
from .real_numerics import (BigReal, GUARD_DIGITS, continued_fraction,
                            fraction_to_mpf, mpf_to_fraction)


@dataclass(frozen=True)
class DavidParameters:
    """Constants of the transcendence lower bound, consumed as given."""

    growth_constant: int = 7658 * 10 ** 41      # 7.658e44
    v1: int = 1415 * 10 ** 24                   # 1.415e27
    v2: int = 798 * 10 ** 12                    # 7.98e14
    field_degree: int = 1
    num_logarithms: int = 2
    # linear form beta0 + beta1*u1 + beta2*u2 with coefficients (0, n, -m)
    provenance: str = "external transcendence-bound constants, not re-derived"

    def __post_init__(self):
        if not (self.v1 > self.v2 > 0 and self.growth_constant > 0):
            raise ValueError("bound constants out of order")


@dataclass(frozen=True)
class BoundConstants:
    """Named tuning constants of the pipeline, defaults as printed."""

    exp_shift: Fraction = Fraction(1356, 100)    # 13.56
    quad_coeff: Fraction = Fraction(13, 100)     # 0.13
    slack_factor: Fraction = Fraction(2, 5)      # 0.4
    threshold: Fraction = Fraction(1, 20)
    min_coefficient: int = 12
    scan_limit: int = 20
    last_checked_row: int = 55
    approx_error: Fraction = Fraction(1, 10 ** 60)


DAVID = DavidParameters()
BOUNDS = BoundConstants()

_P0 = GENERATOR


def upper_bound_rhs(m: int, precision: int = 60,
                    constants: BoundConstants = BOUNDS) -> BigReal:
    """11*exp(13.56 - 0.13 m^2), the decay side of the key inequality."""
    exponent = constants.exp_shift - constants.quad_coeff * Fraction(m) ** 2
    with workdps(precision + GUARD_DIGITS):
        return BigReal(11 * mp.exp(fraction_to_mpf(exponent)), precision)


def _rhs_upper_fraction(m, constants: BoundConstants = BOUNDS) -> Fraction:
    """Exact rational that certifiably dominates upper_bound_rhs(m).

    Only sane for moderate m: the exact form of exp(-0.13 m^2) needs about
    0.2 m^2 bits of denominator.
    """
    exponent = constants.exp_shift - constants.quad_coeff * Fraction(m) ** 2
    with workdps(40):
        v = 11 * mp.exp(fraction_to_mpf(exponent))
    return mpf_to_fraction(v) * (1 + Fraction(1, 10 ** 20))


def _rhs_display(q, constants: BoundConstants = BOUNDS) -> str:
    """Decimal rendering of the decay bound at m = q, precision-independent.

    The fixed 75-digit working precision leaves a valid mantissa even when
    the decimal exponent itself has 53 digits.
    """
    exponent = constants.exp_shift - constants.quad_coeff * Fraction(q) ** 2
    with workdps(75):
        log10 = (fraction_to_mpf(exponent) + mp.log(11)) / mp.log(10)
        if log10 > -300:
            return mp.nstr(11 * mp.exp(fraction_to_mpf(exponent)), 15)
        d = int(mp.floor(log10))
        return f"{mp.nstr(mp.mpf(10) ** (log10 - d), 10)}e{d}"


def david_lower_bound(B, precision: int = 60,
                      params: DavidParameters = DAVID) -> BigReal:
    """exp(-C (log B + 1)(log log B + 15 log 2 + 1)^3); needs B > V1."""
    B = Fraction(B)
    if B <= params.v1:
        raise ValueError(f"lower bound applies only beyond {params.v1}")
    with workdps(precision + GUARD_DIGITS):
        lb = mp.log(fraction_to_mpf(B))
        factor = (mp.log(lb) + 15 * mp.log(2) + 1) ** 3
        return BigReal(mp.exp(-params.growth_constant * (lb + 1) * factor),
                       precision)


def _log_gap(B, constants: BoundConstants, params: DavidParameters):
    """log of (decay side / transcendence side); positive is contradiction.

    0.13 B^2 - 13.56 - log 11 - C (log B + 1)(log log B + 15 log 2 + 1)^3,
    evaluated as an mpf at the ambient precision.
    """
    lb = mp.log(B)
    david = params.growth_constant * (lb + 1) * (mp.log(lb) + 15 * mp.log(2) + 1) ** 3
    return (fraction_to_mpf(constants.quad_coeff) * B ** 2
            - fraction_to_mpf(constants.exp_shift) - mp.log(11) - david)


def derive_absolute_bound(precision: int = 60,
                          constants: BoundConstants = BOUNDS,
                          params: DavidParameters = DAVID):
    """Absolute coefficient bound M with the certificate of its derivation.

    If some integral point had |m| > V1, both the decay inequality and the
    transcendence bound would apply to the same nonzero linear form, forcing
    the log-gap to be nonpositive.  The gap is negative at m = 12, crosses
    zero once near 3.62e25, and stays positive from there on, in particular
    at V1; so no |m| > V1 exists and M = V1 is unconditional.  Returns
    (M, certificate).
    """
    cert = CertificateBuilder("absolute-coefficient-bound", precision)
    cert.data["constants"] = {
        "exp_shift": str(constants.exp_shift),
        "quad_coeff": str(constants.quad_coeff),
        "growth_constant": str(params.growth_constant),
        "v1": str(params.v1), "v2": str(params.v2),
        "provenance": params.provenance,
    }

    with workdps(precision + GUARD_DIGITS):
        phi = lambda b: _log_gap(b, constants, params)
        lo, hi = mp.mpf(constants.min_coefficient), mp.mpf(10) ** 30
        cert.check_true("gap negative at the small end (m = 12)", phi(lo) < 0,
                        format_value(phi(lo), 6))
        cert.check_true("gap positive at 1e30", phi(hi) > 0,
                        format_value(phi(hi), 6))
        # single sign change: quadratic growth beats the polylog term
        for _ in range(200):
            mid = mp.sqrt(lo * hi)
            if phi(mid) < 0:
                lo = mid
            else:
                hi = mid
            if hi / lo < 1 + mp.mpf(10) ** (-12):
                break
        crossing = mp.sqrt(lo * hi)

    cert.data["crossing"] = format_value(crossing, 8)
    target = mp.mpf(362) * mp.mpf(10) ** 23
    cert.check_true("crossing within factor 1.1 of 3.62e25",
                    target / mp.mpf("1.1") <= crossing <= target * mp.mpf("1.1"),
                    format_value(crossing, 6))
    cert.check_true("crossing below V1 (the contradiction)",
                    crossing < params.v1,
                    f"{format_value(crossing, 6)} < {params.v1}")
    with workdps(precision + GUARD_DIGITS):
        gap_v1 = _log_gap(mp.mpf(params.v1), constants, params)
    cert.check_true("gap strictly positive at V1", gap_v1 > 0,
                    format_value(gap_v1, 6))

    # the coefficient comparison step: the decay side at m = 12 is already
    # below 0.07, itself below 0.4*Omega/12, so max(|m|,|n|) = |m|
    rhs12 = _rhs_upper_fraction(constants.min_coefficient, constants)
    cert.check_le("decay side at m = 12 below 0.07", rhs12, Fraction(7, 100))
    omega = real_period(precision=precision).to_fraction()
    cert.check_le("0.07 below slack 0.4*Omega/12", Fraction(7, 100),
                  constants.slack_factor * omega / constants.min_coefficient)

    # safety of the two printed constants relative to what they stand for
    h0 = canonical_height(_P0, precision)
    cert.check_le("quadratic coefficient understates 3*hhat(P0)",
                  constants.quad_coeff, 3 * h0.lower())
    cert.check_le("exponent shift dominates 3*4.52",
                  3 * Fraction(452, 100), constants.exp_shift)

    return params.v1, cert.finish()


@dataclass(frozen=True)
class ReductionRow:
    """One convergent p/q with both sides of the strict-gap inequality."""

    index: int
    p: int
    q: int
    lhs: str          # |p*Omega - q*lambda|, 15 significant digits
    rhs: str          # decay bound at m = q
    checked: bool     # rows with q < 12 or index > last_checked_row are not
    passed: bool

    def as_dict(self) -> dict:
        return {"index": self.index, "p": str(self.p), "q": str(self.q),
                "lhs": self.lhs, "rhs": self.rhs,
                "checked": self.checked, "passed": self.passed}


@dataclass(frozen=True)
class ReductionTable:
    """Certified convergent table of lambda(11P0)/Omega up to the cutoff."""

    rows: tuple
    cutoff_index: int
    alpha: str
    certificate: Certificate

    @property
    def passed(self) -> bool:
        return self.certificate.passed

    def as_dict(self) -> dict:
        d = self.certificate.as_dict()
        d["cutoff_index"] = self.cutoff_index
        d["alpha"] = self.alpha
        d["rows"] = [r.as_dict() for r in self.rows]
        return d


def reduce_by_convergents(precision: int = 60,
                          constants: BoundConstants = BOUNDS,
                          params: DavidParameters = DAVID) -> ReductionTable:
    """Shrink the coefficient bound from V1 to 12 via convergents.

    Any m with 12 <= |m| <= V1 satisfying the decay inequality would make
    n/m a convergent of alpha = lambda(11P0)/Omega (the observed slack
    0.4/m^2 plus the 1e-60 approximation error stays under 1/(2m^2)); the
    table refutes every convergent denominator q in range by checking
    |p Omega - q lambda| strictly exceeds the decay bound at m = q.  All gap
    comparisons are exact rational arithmetic on certified enclosures.
    """
    cert = CertificateBuilder("convergent-reduction", precision)
    work = precision + 10
    lam_big = elliptic_log(mul(11, _P0), precision=work).value
    om_big = real_period(precision=work)
    lam, om = lam_big.to_fraction(), om_big.to_fraction()
    eps = Fraction(1, 10 ** work)

    alpha = lam_big / om_big
    cf = continued_fraction(alpha, max_terms=400, q_cap=params.v1)
    cert.check_exact("expansion stopped by the denominator cap",
                     cf.stop_reason, "q_cap")
    cert.check_exact("leading convergent is the integer part 0/1",
                     cf.convergents[0], (0, 1))

    # the integer part carries no information; rows are numbered from the
    # first genuine convergent
    convergents = cf.convergents[1:]
    cutoff = next(i for i, (_, q) in enumerate(convergents) if q >= params.v1)
    cert.check_exact("first row at or beyond V1", cutoff, 56)
    cert.check_true("every earlier denominator is below V1",
                    all(q < params.v1 for _, q in convergents[:cutoff]),
                    f"max q {max(q for _, q in convergents[:cutoff])}")

    rows = []
    worst_excess = None
    for i, (p, q) in enumerate(convergents[: cutoff + 1]):
        gap = abs(p * om - q * lam)
        gap_lo = gap - (abs(p) + q) * eps
        checked = q >= constants.min_coefficient and i <= constants.last_checked_row
        ok = True
        if checked:
            ok = gap_lo > 0
            if ok and q <= 1000:
                ok = gap_lo > _rhs_upper_fraction(q, constants)
            if ok:
                # ln(lhs) - ln(rhs); the one-nat floor absorbs all rounding
                with workdps(precision + GUARD_DIGITS):
                    e = constants.exp_shift - constants.quad_coeff * Fraction(q) ** 2
                    excess = (mp.log(fraction_to_mpf(gap_lo)) - mp.log(11)
                              - fraction_to_mpf(e))
                ok = excess > 1
                worst_excess = (excess if worst_excess is None
                                else min(worst_excess, excess))
            # Legendre glue at this denominator: 0.4/q^2 + 1e-60 < 1/(2q^2)
            ok = ok and (constants.slack_factor / q ** 2 + constants.approx_error
                         < Fraction(1, 2 * q ** 2))
        rows.append(ReductionRow(i, p, q, format_value(gap, 15),
                                 _rhs_display(q, constants), checked, ok))
    cert.check_true("all checked rows exceed the decay bound strictly",
                    all(r.passed for r in rows),
                    f"{sum(r.checked for r in rows)} rows checked")
    cert.check_true("worst log-excess over the decay bound is above one nat",
                    worst_excess is not None and worst_excess > 1,
                    format_value(worst_excess, 6)
                    if worst_excess is not None else "none")
    # endpoint cases of the Legendre glue
    for m_end in (constants.min_coefficient, params.v1):
        cert.check_true(f"gap condition at m = {format_value(m_end, 6)}",
                        constants.slack_factor / Fraction(m_end) ** 2
                        + constants.approx_error < Fraction(1, 2 * m_end ** 2),
                        "exact rational comparison")

    alpha_str = format_value(alpha, 15)
    cert.data["alpha"] = alpha_str
    cert.data["rows"] = [r.as_dict() for r in rows]
    return ReductionTable(tuple(rows), cutoff, alpha_str, cert.finish())


@dataclass(frozen=True)
class SweepEntry:
    """One multiple of the generator with its exact k-value."""

    m: int
    point: RationalPoint
    k: Fraction
    integral: bool

    def as_dict(self) -> dict:
        return {"m": self.m, "point": str(self.point),
                "k": format_value(self.k, 20), "integral": self.integral}


def sweep_small_multiples(bound: int = 12) -> tuple:
    """Exact k-values of m*P0 for all |m| < bound, in ascending m."""
    out = []
    for m in range(-bound + 1, bound):
        P = mul(m, _P0)
        k = k_value(P)
        out.append(SweepEntry(m, P, k, k.denominator == 1))
    return tuple(out)


def scan_small_k(limit: int = 20) -> dict:
    """All rational points with integral k, |k| <= limit, keyed by k."""
    return {k: points_with_k(k) for k in range(-limit, limit + 1)}


def scan_certificate(limit: int = 20, precision: int = 60):
    """Run scan_small_k and certify the outcome; returns (scan, Certificate)."""
    scan = scan_small_k(limit)
    cert = CertificateBuilder("small-k-scan", precision)
    nonempty = sorted(k for k, pts in scan.items() if pts)
    cert.check_exact("k-values admitting points", nonempty, [-8, -6, -2, 0, 2])
    union = set().union(*scan.values())
    cert.check_exact("distinct points found", len(union), 7)
    cert.check_true("scan union is the final set",
                    union == set(SEVEN_INTEGRAL_POINTS), f"{len(union)} points")
    return scan, cert.finish()


@dataclass(frozen=True)
class SolveReport:
    """Outcome of the full enumeration with every stage's certificate."""

    precision: int
    stages: tuple                 # (name, Certificate) pairs in run order
    bound: int
    reduction: ReductionTable
    entries: tuple                # integral SweepEntry list, ascending m
    notes: tuple = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for _, c in self.stages)

    @property
    def points(self) -> tuple:
        return tuple(e.point for e in self.entries)

    def as_dict(self) -> dict:
        return {
            "precision": self.precision,
            "passed": self.passed,
            "stages": {name: cert.as_dict() for name, cert in self.stages},
            "bound": str(self.bound),
            "reduction": self.reduction.as_dict(),
            "points": [e.as_dict() for e in self.entries],
            "notes": list(self.notes),
        }

    def render_text(self, verbose: bool = False) -> str:
        lines = []
        for name, cert in self.stages:
            lines.append(cert.render_text(verbose))
        lines.append(f"integral points ({len(self.entries)}):")
        for e in self.entries:
            lines.append(f"  m = {e.m:+d}  k = {str(e.k):>4}  {e.point}")
        lines.append("overall: " + ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def solve_integral_points(precision: int = 60,
                          threshold: Fraction = None,
                          constants: BoundConstants = BOUNDS,
                          params: DavidParameters = DAVID) -> SolveReport:
    """Run every certificate in dependency order and enumerate the points.

    Stages: interval bound on the slope, height comparison spot checks,
    torsion of the zeros of t, exact small-k scan, absolute coefficient
    bound, convergent reduction, and the final sweep of |m| < 12.
    """
    threshold = constants.threshold if threshold is None else Fraction(threshold)
    stages = []
    notes = []

    interval = certify_interval_lemma(precision, threshold)
    stages.append(("interval-slope-bound", interval.certificate))

    spot = [mul(m, _P0) for m in range(-10, 11) if m]
    stages.append(("height-comparison", verify_height_comparison(
        spot, precision, max_error=Fraction(1, 1000))))

    stages.append(("cusp-torsion", certify_cusp_torsion(precision)))

    scan, scan_cert = scan_certificate(constants.scan_limit, precision)
    union = set().union(*scan.values())
    stages.append(("small-k-scan", scan_cert))

    bound, bound_cert = derive_absolute_bound(precision, constants, params)
    stages.append(("absolute-coefficient-bound", bound_cert))

    table = reduce_by_convergents(precision, constants, params)
    stages.append(("convergent-reduction", table.certificate))

    entries = sweep_small_multiples(constants.min_coefficient)
    integral = tuple(e for e in entries if e.integral)
    sweep_cert = CertificateBuilder("coefficient-sweep", precision)
    sweep_cert.check_exact("integral multiples", [e.m for e in integral],
                           [-2, -1, 0, 1, 2, 3, 4])
    expected = dict(INTEGRAL_POINT_MULTIPLES)
    sweep_cert.check_true("multiples land on the published points",
                          all(e.point == expected[e.m] for e in integral),
                          "exact coordinate comparison")
    sweep_cert.check_true("sweep agrees with the small-k scan",
                          {e.point for e in integral} == union,
                          "set equality")
    sweep_cert.check_true("every k from the sweep was seen by the scan",
                          all(int(e.k) in scan and e.point in scan[int(e.k)]
                              for e in integral), "cross-indexed")
    stages.append(("coefficient-sweep", sweep_cert.finish()))

    near = [e for e in integral
            if not e.point.is_infinity and t_value(e.point) is not None
            and abs(t_value(e.point)) < threshold]
    notes.append(f"{len(near)} of the solutions lie inside the |t| < "
                 f"{threshold} neighborhood (every integral k here has "
                 f"|k| <= 8, so |t| >= 1/8)")

    return SolveReport(precision, tuple(stages), bound, table, integral,
                       tuple(notes))
