from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from wnlie.arith import (
    NEG_INF,
    ArityError,
    Poly,
    PolyParseError,
    divide,
    eval_poly,
    format_poly,
    homogeneous_parts,
    multi_gcd,
    parse_poly,
    partial,
    poly_add,
    poly_gcd,
    poly_mul,
)
from wnlie.sampling import make_rng, random_poly

from conftest import polys


def P(text, n=2):
    return parse_poly(text, n)


class TestExamples:
    def test_add(self):
        assert poly_add(P("x1 + x2"), P("-x2")) == P("x1")
        p = P("1 + x*y")
        assert poly_add(Poly.zero(2), p) == p
        assert poly_add(P("x1^2"), P("x1^2")) == P("2*x1^2")

    def test_mul(self):
        assert poly_mul(P("x+y"), P("x-y")) == P("x^2 - y^2")
        p = P("3/2*x^2*y - y")
        assert poly_mul(p, Poly.one(2)) == p
        assert poly_mul(p, Poly.zero(2)).is_zero()

    def test_partial(self):
        assert partial(P("x1^2*x2"), 1) == P("2*x1*x2")
        assert partial(P("x1"), 2).is_zero()
        assert partial(P("1 + x*y"), 1) == P("y")

    def test_partial_oracle_term_by_term(self):
        p = P("3*x^4*y^2 - 7/3*x*y + 5")
        expected = Poly(2, {})
        for (a, b), c in p.terms.items():
            if a:
                expected = expected + Poly.monomial((a - 1, b), c * a)
        assert partial(p, 1) == expected

    def test_homogeneous_parts(self):
        assert homogeneous_parts(P("1 + x*y")) == {0: P("1"), 2: P("x*y")}
        assert homogeneous_parts(Poly.zero(2)) == {}
        assert homogeneous_parts(P("x + x^2 + y^2")) == {1: P("x"), 2: P("x^2 + y^2")}

    def test_eval(self):
        assert eval_poly(P("1 + x*y"), (0, 0)) == 1
        c = Fraction(7, 3)
        assert eval_poly(P("x - y"), (c, c)) == 0
        assert eval_poly(Poly.zero(2), (4, 5)) == 0

    def test_gcd(self):
        assert poly_gcd(P("x^2 - y^2"), P("x - y")) == P("x - y")
        assert poly_gcd(P("x^3 + 2*y"), Poly.one(2)) == Poly.one(2)
        assert poly_gcd(P("x1*x2", 3), P("x1*x3", 3)) == P("x1", 3)

    def test_multi_gcd(self):
        assert multi_gcd([P("1"), P("1 + x*y")]) == Poly.one(2)
        f, g = P("x + y^2"), P("y - 1")
        assert multi_gcd([P("x") * f, P("x") * g]) == P("x")
        assert multi_gcd([P("-2*x*y + 4")]) == P("x*y - 2")

    def test_gcd_of_zeros_is_an_error(self):
        with pytest.raises(ValueError):
            poly_gcd(Poly.zero(2), Poly.zero(2))

    def test_zero_degree_sentinel(self):
        assert Poly.zero(3).degree() == NEG_INF
        assert Poly.zero(3).degree() != -1
        assert Poly.one(3).degree() == 0


class TestGrammar:
    def test_examples_parse(self):
        p = parse_poly("3/2*x1^2*x2 - x3", 3)
        assert p.coeff((2, 1, 0)) == Fraction(3, 2)
        assert p.coeff((0, 0, 1)) == -1
        assert parse_poly("1 + x*y", 2) == Poly.one(2) + Poly.var(2, 1) * Poly.var(2, 2)

    def test_aliases_only_for_small_n(self):
        assert parse_poly("z", 3) == Poly.var(3, 3)
        with pytest.raises(PolyParseError):
            parse_poly("x", 4)
        with pytest.raises(PolyParseError):
            parse_poly("z", 2)

    @pytest.mark.parametrize("bad", ["x^", "2//3", "x**2", "1 +", "x^y", "(x+1)", "1/0", ""])
    def test_rejects(self, bad):
        with pytest.raises(PolyParseError):
            parse_poly(bad, 2)

    def test_format(self):
        assert format_poly(P("y - 3/2*x^2*y + 1")) == "-3/2*x^2*y + y + 1"
        assert format_poly(Poly.zero(2)) == "0"
        assert format_poly(P("x1*x4", 4)) == "x1*x4"

    @given(polys(3))
    def test_round_trip(self, p):
        assert parse_poly(format_poly(p), 3) == p

    @given(polys(4, 2))
    def test_round_trip_indexed(self, p):
        assert parse_poly(format_poly(p), 4) == p


class TestRingAxioms:
    @given(polys(2), polys(2), polys(2))
    def test_axioms(self, p, q, r):
        assert (p + q) + r == p + (q + r)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert p + q == q + p and p * q == q * p
        assert p - p == Poly.zero(2)

    @given(polys(3), polys(3))
    def test_leibniz(self, p, q):
        for i in (1, 2, 3):
            assert partial(p * q, i) == partial(p, i) * q + p * partial(q, i)

    @given(polys(3))
    def test_homogeneous_parts_reassemble(self, p):
        parts = homogeneous_parts(p)
        assert sum(parts.values(), Poly.zero(3)) == p
        assert all(q.is_homogeneous() and q.degree() == d for d, q in parts.items())

    @given(polys(2), polys(2), st.tuples(st.fractions(max_denominator=7), st.fractions(max_denominator=7)))
    def test_eval_is_homomorphism(self, p, q, pt):
        assert eval_poly(p + q, pt) == eval_poly(p, pt) + eval_poly(q, pt)
        assert eval_poly(p * q, pt) == eval_poly(p, pt) * eval_poly(q, pt)

    def test_arity_mismatch(self):
        with pytest.raises(ArityError):
            Poly.var(2, 1) + Poly.var(3, 1)
        with pytest.raises(ArityError):
            eval_poly(Poly.var(2, 1), (1, 2, 3))


class TestGcdProperties:
    def test_gcd_divides_seeded(self):
        rng = make_rng()
        checked = 0
        for _ in range(40):
            common = random_poly(rng, 2, 2)
            p = common * random_poly(rng, 2, 2)
            q = common * random_poly(rng, 2, 2)
            if p.is_zero() or q.is_zero():
                continue
            g = poly_gcd(p, q)
            for h in (p, q):
                (_,), rem = divide(h, [g])
                assert rem.is_zero()
            # the planted common factor divides the gcd
            if not common.is_zero():
                (_,), rem = divide(g, [common])
                assert rem.is_zero()
            checked += 1
        assert checked >= 25

    @given(polys(2, 2), polys(2, 2), polys(2, 2))
    def test_gcd_is_multiple_of_planted_factor(self, c, a, b):
        p, q = c * a, c * b
        if p.is_zero() or q.is_zero():
            return
        g = poly_gcd(p, q)
        assert divide(p, [g])[1].is_zero() and divide(q, [g])[1].is_zero()
        assert divide(g, [c])[1].is_zero()
        assert g.leading_coefficient() == 1
