"""Sparse multivariate polynomials, checked against sympy."""
from fractions import Fraction

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from piflat.mpoly import MPoly, gcd, layout
from piflat.render import render_mpoly

NAMES = ("x", "y", "z")
SYMS = sympy.symbols(NAMES)

monomial = st.tuples(*[st.integers(0, 3)] * 3)
poly_terms = st.lists(st.tuples(monomial, st.integers(-5, 5)), max_size=5)


def mp(items):
    return MPoly.from_exponents(3, items)


def to_sympy(p):
    return sympy.expand(sum(
        sympy.Rational(c.numerator, c.denominator) * sympy.prod(s ** k for s, k in zip(SYMS, e))
        for e, c in ((layout(3).unpack(m), c) for m, c in p.terms.items())
    ) if p.terms else sympy.Integer(0))


@given(poly_terms, poly_terms)
def test_ring_ops_match_sympy(a, b):
    p, q = mp(a), mp(b)
    assert to_sympy(p + q) == sympy.expand(to_sympy(p) + to_sympy(q))
    assert to_sympy(p - q) == sympy.expand(to_sympy(p) - to_sympy(q))
    assert to_sympy(p * q) == sympy.expand(to_sympy(p) * to_sympy(q))


@given(poly_terms, poly_terms, poly_terms)
def test_gcd_matches_sympy(a, b, c):
    g0 = mp(c)
    p, q = mp(a) * g0, mp(b) * g0
    if not p or not q:
        return
    g = gcd(p, q)
    ref = sympy.Poly(sympy.gcd(to_sympy(p), to_sympy(q)), *SYMS, domain="QQ")
    # both sides are defined up to a rational constant
    assert sympy.Poly(to_sympy(g), *SYMS, domain="QQ").monic() == ref.monic()
    assert p.divexact(g) * g == p
    assert q.divexact(g) * g == q


def test_gcd_known_values():
    x, y = MPoly.gen(3, 0), MPoly.gen(3, 1)
    assert gcd(x * x - y * y, x - y).monic() == (x - y).monic()
    assert gcd(x + 1, y + 1).is_const()
    assert gcd(x * y, x * x) == x


def test_derive_shift_and_render():
    x, y = MPoly.gen(3, 0), MPoly.gen(3, 1)
    p = x * x * y + MPoly.const(3, Fraction(1, 2))
    assert p.derive(0) == x * y * 2
    # x -> x + 2y
    assert (x * x).shift(0, 1, 2) == x * x + x * y * 4 + y * y * 4
    assert render_mpoly(p, NAMES) == "x^2*y + 1/2"


def test_divexact_rejects_inexact():
    x, y = MPoly.gen(3, 0), MPoly.gen(3, 1)
    with pytest.raises(ArithmeticError):
        (x + 1).divexact(y)
