"""Curve model, group law, and the k-level machinery."""

from fractions import Fraction

import pytest

from xns11.curve_core import (CURVE, CUSP_POLYNOMIAL, GENERATOR,
                              INTEGRAL_POINT_MULTIPLES, RationalPoint,
                              SEVEN_INTEGRAL_POINTS, add, k_value,
                              level_set_polynomial, mul, negate,
                              points_with_k, t_value)


class TestModel:
    def test_b_invariants(self):
        assert (CURVE.b2, CURVE.b4, CURVE.b6, CURVE.b8) == (44, 66, 121, 242)

    def test_c_invariants_satisfy_the_discriminant_identity(self):
        assert CURVE.c4 ** 3 - CURVE.c6 ** 2 == 1728 * CURVE.discriminant
        assert CURVE.discriminant != 0

    def test_j_invariant(self):
        assert CURVE.j_invariant == Fraction(CURVE.c4 ** 3, CURVE.discriminant)
        assert CURVE.j_invariant == -(2 ** 15)

    def test_membership(self):
        assert CURVE.contains(GENERATOR)
        assert CURVE.contains(RationalPoint.infinity())
        assert not CURVE.contains(RationalPoint(1, 1))


class TestGroupLaw:
    def test_identity_and_inverse(self):
        O = RationalPoint.infinity()
        assert add(GENERATOR, O) == GENERATOR
        assert add(O, GENERATOR) == GENERATOR
        assert add(GENERATOR, negate(GENERATOR)) == O

    def test_random_multiples_form_a_homomorphism(self, rng):
        cache = {m: mul(m, GENERATOR) for m in range(-50, 51)}
        passing = 0
        for _ in range(120):
            i, j = rng.randint(-25, 25), rng.randint(-25, 25)
            assert add(cache[i], cache[j]) == cache[i + j]
            assert CURVE.contains(cache[i + j])
            assert negate(cache[i]) == cache[-i]
            passing += 1
        assert passing >= 100

    def test_associativity_on_random_triples(self, rng):
        pts = [mul(m, GENERATOR) for m in range(-8, 9)]
        for _ in range(120):
            P, Q, R = (rng.choice(pts) for _ in range(3))
            assert add(add(P, Q), R) == add(P, add(Q, R))

    def test_doubling_consistent_with_addition_chain(self, rng):
        for _ in range(30):
            m = rng.randint(1, 12)
            P = mul(m, GENERATOR)
            assert add(P, P) == mul(2 * m, GENERATOR)

    def test_off_curve_rejected(self):
        with pytest.raises(ValueError):
            add(RationalPoint(1, 1), GENERATOR)


class TestSevenPoints:
    def test_multiples_table(self):
        for m, P in INTEGRAL_POINT_MULTIPLES:
            assert mul(m, GENERATOR) == P
            assert k_value(P).denominator == 1

    def test_table_is_the_seven_point_set(self):
        assert ({P for _, P in INTEGRAL_POINT_MULTIPLES}
                == set(SEVEN_INTEGRAL_POINTS))
        assert len(SEVEN_INTEGRAL_POINTS) == 7

    def test_standard_form(self):
        r, s, t = RationalPoint(Fraction(-11, 4), Fraction(-33, 8)).standard_form()
        assert (r, s, t) == (-11, -33, 2)
        for m in range(2, 13):
            P = mul(m, GENERATOR)
            r, s, t = P.standard_form()
            assert P.x == Fraction(r, t * t) and P.y == Fraction(s, t ** 3)


class TestLevelFunction:
    def test_poles_of_t(self):
        assert t_value(RationalPoint(0, 0)) is None
        assert t_value(RationalPoint(0, -11)) is None
        assert t_value(RationalPoint.infinity()) is None

    def test_k_is_reciprocal_of_t(self, rng):
        for m in range(2, 30):
            P = mul(m, GENERATOR)
            tv, kv = t_value(P), k_value(P)
            if tv is None:
                assert kv == 0
            else:
                assert kv * tv == 1

    def test_k_at_poles_is_zero(self):
        assert k_value(RationalPoint.infinity()) == 0
        assert k_value(RationalPoint(0, 0)) == 0
        assert k_value(RationalPoint(0, -11)) == 0

    def test_cusp_polynomial_coefficients(self):
        assert CUSP_POLYNOMIAL.to_dense() == [
            Fraction(c) for c in (-121, -121, 0, 33, 11, 1)]

    def test_level_set_roots_lift_to_points(self, rng):
        for k in (-8, -6, -2, 2):
            tau = Fraction(1, k)
            quintic = level_set_polynomial(tau)
            from xns11.exact_arith import rational_roots
            for x0 in rational_roots(quintic):
                y0 = 11 / x0 + tau
                P = RationalPoint(x0, y0)
                assert CURVE.contains(P)
                assert k_value(P) == k


class TestPointsWithK:
    def test_matches_the_published_sets(self):
        assert points_with_k(0) == {RationalPoint(0, 0), RationalPoint(0, -11),
                                    RationalPoint.infinity()}
        assert points_with_k(2) == {RationalPoint(-2, -5)}
        assert points_with_k(-2) == {RationalPoint(-2, -6)}
        assert points_with_k(-6) == {RationalPoint(-6, -2)}
        assert points_with_k(-8) == {RationalPoint(Fraction(-11, 4),
                                                   Fraction(-33, 8))}

    def test_empty_levels(self):
        for k in (1, -1, 3, 5, 7, 11, 20, -20):
            assert points_with_k(k) == set()

    def test_every_returned_point_has_that_k(self):
        for k in range(-20, 21):
            for P in points_with_k(k):
                assert CURVE.contains(P)
                assert k_value(P) == k
