"""Interval decomposition and cusp torsion certificates, with root-finding oracles."""

from fractions import Fraction

from mpmath import mp, workdps

from xns11.analytic_certificates import (G_AT_CUSPS, G_AT_MINUS_BOUNDARY,
                                         G_AT_PLUS_BOUNDARY, T_AT_CRITICAL,
                                         T_AT_SLOPE_ZEROS, certify_cusp_torsion,
                                         certify_interval_lemma,
                                         eliminate_via_linear,
                                         _slope_zero_relation, slope_value)
from xns11.curve_core import CUSP_POLYNOMIAL

# two-decimal references plus the numeric root error
MATCH_TOL = 0.011


def _real_roots_oracle(dense_coeffs):
    """All real roots of an integer polynomial via mpmath's solver."""
    with workdps(50):
        # coefficients arrive as integral Fractions
        roots = mp.polyroots([mp.mpf(int(c)) for c in reversed(dense_coeffs)],
                             maxsteps=200, extraprec=200)
        return sorted(float(r.real) for r in roots if abs(r.imag) < 1e-30)


class TestIntervalCertificate:
    def test_default_threshold_passes(self):
        ic = certify_interval_lemma(precision=60)
        assert ic.passed
        assert ic.threshold == Fraction(1, 20)
        assert len(ic.intervals) == 5
        assert all(c.passed for c in ic.certificate.checks)

    def test_reference_tables_cover_24_values(self):
        tables = (T_AT_SLOPE_ZEROS, G_AT_CUSPS, T_AT_CRITICAL,
                  G_AT_PLUS_BOUNDARY, G_AT_MINUS_BOUNDARY)
        assert sum(len(t) for t in tables) == 24
        ic = certify_interval_lemma(precision=60)
        matched = [c for c in ic.certificate.checks
                   if "matched" in (c.computed or "")]
        assert len(matched) == 5 and all(c.passed for c in matched)

    def test_minimum_boundary_slope_is_certified(self):
        ic = certify_interval_lemma(precision=60)
        floor = [c for c in ic.certificate.checks if ">= 1" in c.label]
        assert len(floor) == 1 and floor[0].passed
        anchored = [c for c in ic.certificate.checks
                    if c.label == "smallest boundary |g|"]
        assert len(anchored) == 1 and anchored[0].passed
        assert min(Fraction(s) for s in G_AT_MINUS_BOUNDARY + G_AT_PLUS_BOUNDARY
                   if Fraction(s) > 0) == Fraction("1.14")

    def test_intervals_are_centered_on_cusps(self):
        ic = certify_interval_lemma(precision=60)
        xs = [r.cusp_x for r in ic.intervals]
        assert len(set(xs)) == 5
        for r in ic.intervals:
            # the stored center is a certified midpoint of a quintic root
            assert abs(CUSP_POLYNOMIAL.evaluate(r.cusp_x)) < Fraction(1, 10 ** 40)
            assert r.lower[1] * r.upper[1] < 0
            assert (r.lower[2] > 0) == (r.upper[2] > 0) == (r.g_sign > 0)

    def test_wide_threshold_fails_gracefully(self):
        ic = certify_interval_lemma(precision=60, threshold=Fraction(1, 2))
        assert not ic.passed
        failed = [c for c in ic.certificate.checks if not c.passed]
        assert failed
        assert any("|t| >" in c.label for c in failed)

    def test_narrow_threshold_still_passes(self):
        ic = certify_interval_lemma(precision=60, threshold=Fraction(1, 100))
        assert ic.passed
        assert len(ic.intervals) == 5


class TestReferenceOracles:
    def test_slopes_at_cusps_against_polyroots(self):
        got = []
        for x in _real_roots_oracle(CUSP_POLYNOMIAL.to_dense()):
            y = 11 / x
            got.append(3 * x * x + 22 * x + 33 + 11 * (2 * y + 11) / (x * x))
        expected = sorted(float(Fraction(s)) for s in G_AT_CUSPS)
        assert len(got) == 5
        for a, b in zip(sorted(got), expected):
            assert abs(a - b) < MATCH_TOL

    def test_t_at_slope_zeros_against_polyroots(self):
        p1, p0 = _slope_zero_relation()
        octic = eliminate_via_linear(p1, p0)
        got = []
        for x in _real_roots_oracle(octic.to_dense()):
            y = -p0.evaluate(Fraction(x).limit_denominator(10 ** 12)) / 22
            got.append(float(y) - 11 / x)
        expected = sorted(float(Fraction(s)) for s in T_AT_SLOPE_ZEROS)
        assert len(got) == 4
        for a, b in zip(sorted(got), expected):
            assert abs(a - b) < MATCH_TOL

    def test_slope_value_matches_implicit_derivative(self):
        # g equals x^2 * dF/dX - style Jacobian determinant of (t, F);
        # compare against a finite-difference slope of t along the curve
        from xns11.curve_core import GENERATOR, mul
        for m in (2, 4, 5, 7):
            P = mul(m, GENERATOR)
            x, y = Fraction(P.x), Fraction(P.y)
            g = slope_value(x, y)
            with workdps(60):
                h = mp.mpf(1) / 10 ** 20
                xf = mp.mpf(x.numerator) / x.denominator
                yf = mp.mpf(y.numerator) / y.denominator
                # move along the curve: dy/dx = (3x^2+22x+33)/(2y+11)
                dydx = (3 * xf ** 2 + 22 * xf + 33) / (2 * yf + 11)
                t0 = yf - 11 / xf
                t1 = (yf + h * dydx) - 11 / (xf + h)
                # dt/dX = g / (2Y+11) along the curve
                numeric = (t1 - t0) / h * (2 * yf + 11)
                ef = mp.mpf(g.numerator) / g.denominator
                assert abs(numeric - ef) < mp.mpf(10) ** -8


class TestCuspTorsion:
    def test_certificate_passes(self):
        cert = certify_cusp_torsion(precision=60)
        assert cert.passed

    def test_division_polynomial_route_present(self):
        cert = certify_cusp_torsion(precision=60)
        exact = [c for c in cert.checks if "division polynomial" in c.label]
        assert len(exact) == 1 and exact[0].passed

    def test_torsion_indices(self):
        cert = certify_cusp_torsion(precision=60)
        ks = [row["k"] for row in cert.data["torsion_indices"]]
        assert ks == [6, 7, 8, 2, 10]
        assert sum(ks) % 11 == 0
        # the five residues and their negatives cover all ten nonzero classes
        assert sorted(ks + [(11 - k) for k in ks]) == list(range(1, 11))
