from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from artifact.symrat import (CycloCoeff, SymPoly, SymRat, ZETA3, atom, eq_crossmul,
                             identify_conjugates, mono, reduce_gauss, series_expand, substitute)

ONE = SymPoly.const(1)
NAMES = ("Q", "t1", "t2", "u")


def poly_from(terms):
    out = SymPoly()
    for coeff, exps in terms:
        out = out + SymPoly.monomial(mono(**dict(zip(NAMES, exps))), coeff)
    return out


exps = st.tuples(*(st.integers(-2, 2) for _ in NAMES))
polys = st.lists(st.tuples(st.integers(-3, 3), exps), max_size=4).map(poly_from)
nonzero = polys.filter(lambda p: not p.is_zero())


def test_cyclo_arithmetic():
    z = ZETA3
    assert z * z * z == CycloCoeff.of(1)
    assert z * z + z + CycloCoeff.of(1) == CycloCoeff.of(0)
    assert (z * 2).inverse() * (z * 2) == CycloCoeff.of(1)
    assert abs(z.to_complex() - complex(-0.5, 3**0.5 / 2)) < 1e-12


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * (b * c) == (a * b) * c
    assert a + b == b + a
    assert (a - a).is_zero()


@given(polys, nonzero, polys, nonzero)
def test_rational_field(a, b, c, d):
    x, y = SymRat(a, b), SymRat(c, d)
    assert eq_crossmul((x + y) - y, x)
    assert eq_crossmul(x * y, y * x)
    if not c.is_zero():
        assert eq_crossmul((x / y) * y, x)


@given(polys)
def test_evaluate_homomorphism(a):
    vals = {"Q": 1.3, "t1": 0.7 + 0.2j, "t2": -1.1, "u": 0.5j}
    b = a * a + SymPoly.const(2)
    assert abs(b.evaluate(vals) - (a.evaluate(vals) ** 2 + 2)) < 1e-8 * (1 + abs(b.evaluate(vals)))


def test_reduce_gauss():
    g = atom("G1") ** 2 * atom("Gb1") * atom("t1")
    assert reduce_gauss(g) == atom("Q", 2) * atom("G1") * atom("t1")
    assert reduce_gauss(atom("G2") * atom("Gb2")) == atom("Q", 2)


def test_identify_conjugates():
    assert identify_conjugates(atom("Gb1") * atom("Gb2")) == atom("Q", 2)
    assert identify_conjugates(atom("Gb1")) == atom("G2")


def test_series_geometric():
    x = SymRat(ONE, ONE - atom("t1") * atom("Q", -1))
    s = series_expand(x, "t1", 4)
    assert s == sum((atom("t1", k) * atom("Q", -k) for k in range(5)), SymPoly())


def test_series_needs_monomial_lowest_part():
    with pytest.raises(ValueError):
        series_expand(SymRat(ONE, atom("t1") + atom("t1", 2) - atom("t1") * atom("Q")), "t1", 3)


def test_substitute():
    x = SymRat(atom("t1") + atom("u"), ONE - atom("t1"))
    y = substitute(x, {"t1": 2})
    assert eq_crossmul(y, SymRat(SymPoly.const(-2) - atom("u")))


def test_golden_text():
    x = SymPoly.const(Fraction(1, 2)) * atom("Q", -2) * atom("t1") - atom("u") + SymPoly.const(ZETA3) * atom("t2")
    assert x.text() == "1/2*Q^-2*t1 + -u + z*t2"
    assert SymPoly().text() == "0"
