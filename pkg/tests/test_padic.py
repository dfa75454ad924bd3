import pytest
from fractions import Fraction
from hypothesis import given, strategies as st

from artifact.padic import (Mu3, PAdicElem, PrecisionError, PrimeContext, cubic_residue,
                            hilbert3, hilbert3_parts, hilbert_axiom_sweep, primitive_root)

CTX = PrimeContext(7)
units = st.integers(1, 7**6 - 1).filter(lambda u: u % 7)
vals = st.integers(-4, 4)
elems = st.builds(lambda v, u: PAdicElem.from_parts(CTX, v, u), vals, units)


def test_context_rejects_bad_primes():
    for p in (5, 9, 11):
        with pytest.raises(ValueError):
            PrimeContext(p)


def test_generator_and_iota():
    assert primitive_root(7) == 3 and CTX.gen == 3
    assert CTX.iota(pow(3, 2, 7)) == 1
    assert CTX.iota(1) == 0


@pytest.mark.parametrize("x,expected", [(1, 0), (6, 0), (3, CTX.iota(2))])
def test_cubic_residue_examples(x, expected):
    assert cubic_residue(CTX, x) == expected


def test_cubic_residue_counts_cubes():
    cubes = {pow(x, 3, 13) for x in range(1, 13)}
    ctx = PrimeContext(13)
    for x in range(1, 13):
        assert (cubic_residue(ctx, x) == 0) == (x in cubes)


def test_mu3_arithmetic():
    assert Mu3(2) + Mu3(2) == 1
    assert -Mu3(1) == 2
    assert Mu3(5) == 2


def test_hilbert_examples():
    three, seven = PAdicElem.from_int(CTX, 3), PAdicElem.from_int(CTX, 7)
    assert hilbert3(three, seven) == cubic_residue(CTX, 3) == CTX.iota(2)
    assert hilbert3_parts(CTX, 0, 1, 2, 5) == 0
    with pytest.raises(ValueError):
        hilbert3(PAdicElem.zero(CTX), three)


def test_from_fraction_and_parse():
    x = PAdicElem.from_fraction(CTX, Fraction(14, 3))
    assert x.val == 1 and (x.unit * 3) % 7**6 == 2
    y = PAdicElem.parse(CTX, "1:3")
    assert y.val == 1 and y.unit == 3
    for bad in ("13", "a:b", "1:7"):
        with pytest.raises(ValueError):
            PAdicElem.parse(CTX, bad)


def test_cancellation_raises():
    a = PAdicElem.from_int(CTX, 1)
    b = PAdicElem.from_parts(CTX, 0, 1 + 7**6)  # equal to a at every stored digit
    with pytest.raises(PrecisionError):
        a - b


@given(elems, elems)
def test_division_roundtrip(a, b):
    assert ((a * b) / b).agrees(a)


@given(elems)
def test_x_minus_x_symbol(a):
    assert hilbert3(a, -a) == 0


@given(elems)
def test_one_is_trivial(b):
    assert hilbert3(PAdicElem.from_int(CTX, 1), b) == 0


@given(elems, elems, elems)
def test_bimultiplicative(a, a2, b):
    assert hilbert3(a * a2, b) == hilbert3(a, b) + hilbert3(a2, b)


@given(elems, elems)
def test_antisymmetric(a, b):
    assert hilbert3(a, b) + hilbert3(b, a) == 0


@given(elems, elems)
def test_cube_trivial(a, b):
    assert hilbert3(a ** 3, b) == 0


@given(units, units)
def test_unit_unit(u, v):
    assert hilbert3(PAdicElem.from_parts(CTX, 0, u), PAdicElem.from_parts(CTX, 0, v)) == 0


@given(units.filter(lambda u: (1 - u) % 7))
def test_steinberg_units(u):
    a = PAdicElem.from_parts(CTX, 0, u)
    assert hilbert3(a, PAdicElem.from_int(CTX, 1) - a) == 0


@pytest.mark.parametrize("q", [7, 13, 19])
def test_axiom_sweep(q):
    res = hilbert_axiom_sweep(PrimeContext(q), 300, 1)
    assert all(r["failures"] == 0 for r in res.values())
