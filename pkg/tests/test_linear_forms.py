"""Decay-vs-transcendence gap, convergent reduction, sweep, and full pipeline."""

import json
import math
from fractions import Fraction

import pytest
from mpmath import mp, workdps

from test_periods_logs import LAMBDA_FROZEN, OMEGA_FROZEN
from xns11.curve_core import SEVEN_INTEGRAL_POINTS
from xns11.linear_forms import (BOUNDS, DAVID, david_lower_bound,
                                derive_absolute_bound, reduce_by_convergents,
                                scan_certificate, scan_small_k,
                                solve_integral_points, sweep_small_multiples,
                                upper_bound_rhs, _rhs_display,
                                _rhs_upper_fraction)

Q55_FROZEN = 1154357534423927602192403559
Q56_FROZEN = 12076236148995209471923848646
ALPHA_DISPLAY_FROZEN = "0.740861072619193"


@pytest.fixture(scope="module")
def table():
    return reduce_by_convergents(precision=60)


@pytest.fixture(scope="module")
def report():
    return solve_integral_points(precision=60)


class TestDecayBound:
    def test_value_at_zero_against_float_oracle(self):
        got = upper_bound_rhs(0, precision=60).to_fraction()
        oracle = Fraction(11 * math.exp(13.56))
        assert abs(got - oracle) < oracle * Fraction(1, 10 ** 12)

    def test_below_threshold_at_twelve(self):
        assert upper_bound_rhs(12).to_fraction() < Fraction(7, 100)
        assert _rhs_upper_fraction(12) < Fraction(7, 100)

    def test_strictly_decreasing(self):
        vals = [upper_bound_rhs(m).to_fraction() for m in range(0, 21)]
        assert all(a > b for a, b in zip(vals, vals[1:]))

    def test_exact_fraction_dominates(self):
        for m in range(0, 31, 3):
            assert _rhs_upper_fraction(m) >= upper_bound_rhs(m).to_fraction()

    def test_display_forms(self):
        # moderate exponents use plain notation, huge ones split the mantissa
        assert abs(float(_rhs_display(5))
                   - float(upper_bound_rhs(5).value)) < 1e-6 * 330345
        mant, exp = _rhs_display(10 ** 6).split("e-")
        assert 1 <= float(mant) < 10
        # log10 rhs = (13.56 - 0.13 q^2 + ln 11) / ln 10
        expected = -(Fraction(13, 100) * 10 ** 12 - Fraction(1356, 100)
                     - Fraction(str(math.log(11)))) / Fraction(str(math.log(10)))
        assert abs(int(exp) + math.floor(expected)) <= 1


class TestDavidBound:
    def test_domain_guard(self):
        with pytest.raises(ValueError):
            david_lower_bound(DAVID.v1)
        with pytest.raises(ValueError):
            david_lower_bound(10 ** 20)

    def test_log_against_float_oracle(self):
        B = 2 * 10 ** 27
        got = david_lower_bound(B, precision=60).value
        with workdps(80):
            log_got = float(mp.log(got))
        lb = math.log(B)
        oracle = -7658 * 10 ** 41 * (lb + 1) * (math.log(lb)
                                                + 15 * math.log(2) + 1) ** 3
        assert abs(log_got - oracle) < abs(oracle) * 1e-12

    def test_monotone_decreasing(self):
        with workdps(80):
            a = mp.log(david_lower_bound(2 * 10 ** 27).value)
            b = mp.log(david_lower_bound(10 ** 28).value)
            assert a > b


class TestAbsoluteBound:
    def test_bound_is_v1(self):
        M, cert = derive_absolute_bound(precision=60)
        assert M == 1415 * 10 ** 24
        assert cert.passed
        assert len(cert.checks) == 9

    def test_crossing_location(self):
        _, cert = derive_absolute_bound(precision=60)
        crossing = float(cert.data["crossing"])
        assert 3.62e25 / 1.1 <= crossing <= 3.62e25 * 1.1

    def test_constants_echoed(self):
        _, cert = derive_absolute_bound(precision=60)
        echoed = cert.data["constants"]
        assert echoed["v1"] == str(DAVID.v1)
        assert "not re-derived" in echoed["provenance"]


class TestReduction:
    def test_certificate_passes(self, table):
        assert table.passed
        assert all(r.passed for r in table.rows)

    def test_cutoff_at_56(self, table):
        assert table.cutoff_index == 56
        assert len(table.rows) == 57
        assert table.rows[55].q == Q55_FROZEN
        assert table.rows[56].q == Q56_FROZEN
        assert table.rows[55].q < DAVID.v1 <= table.rows[56].q

    def test_first_rows(self, table):
        assert [(r.p, r.q) for r in table.rows[:4]] == [(1, 1), (2, 3), (3, 4),
                                                        (20, 27)]

    def test_alpha_display(self, table):
        assert table.alpha == ALPHA_DISPLAY_FROZEN

    def test_checked_rows(self, table):
        for r in table.rows:
            assert r.checked == (r.q >= 12 and r.index <= 55)
        assert sum(r.checked for r in table.rows) == 53

    def test_neighboring_convergents_are_unimodular(self, table):
        rows = table.rows
        for a, b in zip(rows, rows[1:]):
            assert abs(b.p * a.q - a.p * b.q) == 1
            assert b.q > a.q or a.index == 0

    def test_table_is_precision_independent(self, table):
        for precision in (80, 120):
            other = reduce_by_convergents(precision=precision)
            assert other.as_dict()["rows"] == table.as_dict()["rows"]
            assert other.cutoff_index == table.cutoff_index
            assert other.alpha == table.alpha

    def test_legendre_window(self):
        # 0.4/m^2 + 1e-60 < 1/(2m^2) holds exactly iff m^2 < 1e59
        def glue(m):
            return (BOUNDS.slack_factor / Fraction(m) ** 2 + BOUNDS.approx_error
                    < Fraction(1, 2 * m ** 2))
        assert glue(12)
        assert glue(DAVID.v1)
        assert not glue(10 ** 30)


class TestNearestIntegerForm:
    def test_window_minimum_is_the_rounded_multiple(self, rng):
        # |m lambda - n Omega| over integers n bottoms out at n = round(m alpha);
        # brute three-wide windows against the closed form, exact arithmetic
        alpha = LAMBDA_FROZEN / OMEGA_FROZEN
        cases = 0
        for _ in range(120):
            m = rng.randint(1, 10 ** 4)
            n0 = round(m * alpha)
            window = [abs(m * LAMBDA_FROZEN - n * OMEGA_FROZEN)
                      for n in range(n0 - 3, n0 + 4)]
            direct = OMEGA_FROZEN * abs(m * alpha - n0)
            assert min(window) == direct
            assert direct > 0
            cases += 1
        assert cases >= 100


class TestSweepAndScan:
    def test_sweep_range_and_integrality(self):
        sw = sweep_small_multiples(12)
        assert [e.m for e in sw] == list(range(-11, 12))
        assert [e.m for e in sw if e.integral] == [-2, -1, 0, 1, 2, 3, 4]

    def test_sweep_k_values(self):
        by_m = {e.m: e for e in sweep_small_multiples(12)}
        assert {m: by_m[m].k for m in range(-2, 5)} == {
            -2: -2, -1: 0, 0: 0, 1: 0, 2: 2, 3: -8, 4: -6}
        assert by_m[5].k == Fraction(-108, 769)

    def test_scan_certificate(self):
        scan, cert = scan_certificate(limit=20, precision=60)
        assert cert.passed
        assert sorted(scan.keys()) == list(range(-20, 21))
        nonempty = sorted(k for k, pts in scan.items() if pts)
        assert nonempty == [-8, -6, -2, 0, 2]
        union = set().union(*scan.values())
        assert union == set(SEVEN_INTEGRAL_POINTS)

    def test_scan_respects_limit(self):
        scan = scan_small_k(8)
        assert sorted(scan.keys()) == list(range(-8, 9))
        assert sorted(k for k, pts in scan.items() if pts) == [-8, -6, -2, 0, 2]


class TestSolvePipeline:
    def test_passes_with_seven_points(self, report):
        assert report.passed
        assert set(report.points) == set(SEVEN_INTEGRAL_POINTS)
        assert report.bound == 1415 * 10 ** 24

    def test_stage_order(self, report):
        names = [name for name, _ in report.stages]
        assert names == ["interval-slope-bound", "height-comparison",
                         "cusp-torsion", "small-k-scan",
                         "absolute-coefficient-bound", "convergent-reduction",
                         "coefficient-sweep"]
        assert all(cert.passed for _, cert in report.stages)

    def test_near_cusp_note(self, report):
        assert any("neighborhood" in n for n in report.notes)

    def test_report_serializes(self, report):
        blob = json.dumps(report.as_dict())
        assert json.loads(blob)["passed"] is True

    def test_render_mentions_overall_verdict(self, report):
        text = report.render_text()
        assert "PASS" in text
