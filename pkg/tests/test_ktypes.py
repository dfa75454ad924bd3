import time

import numpy as np
import pytest
from hypothesis import given, strategies as st

from artifact.ktypes import (CLASSES, CharacterChiAB, CosetPoint, KtypeContext, Sub, cond_I,
                             cond_II, cond_III, coset_space, dim_fixed_mackey, dim_fixed_table,
                             double_cosets, intertwining_dim, intertwining_dim_k1, ktype_report,
                             level_consistency, level_consistency_report, predicted_k1)
from artifact.padic import PrimeContext, hilbert3_parts


@pytest.fixture(scope="module", params=[0, 1, 2])
def kt(request):
    return KtypeContext(7, 3, request.param)


@pytest.mark.parametrize("m,size", [(1, 8), (2, 56), (3, 392)])
def test_coset_space_size(m, size):
    pts = coset_space(m)
    assert len(pts) == size and len(set(pts)) == size
    assert all(CosetPoint.from_index(P.index, 7, m) == P for P in pts)


def test_coset_space_level_guard():
    with pytest.raises(ValueError):
        coset_space(4, L=3)


def test_canonical_form():
    assert CosetPoint.of(3, 6, 7, 1) == CosetPoint.of(1, 2, 7, 1)
    assert CosetPoint.of(14, 3, 7, 2) == CosetPoint.of(14 * pow(3, -1, 49) % 49, 1, 7, 2)
    with pytest.raises(ValueError):
        CosetPoint.of(7, 14, 7, 2)


@pytest.mark.parametrize("mp,m,count", [(1, 1, 2), (2, 2, 3), (2, 3, 3), (3, 1, 2), (3, 3, 4)])
def test_double_coset_counts(mp, m, count, kt):
    dec = double_cosets(mp, m, kt)
    assert dec.count == count
    assert dec.bijective
    assert sum(len(t.orbit) for t in dec.terms) == 7 ** (m - 1) * 8
    assert all(t.backstop_ok for t in dec.terms)


def test_named_representatives():
    dec = double_cosets(3, 3, KtypeContext())
    assert set(dec.named) == {"1", "w", "w_1", "w_2"}


def test_intertwining_examples(kt):
    for m in (1, 2, 3):
        assert intertwining_dim(m, (0, 0), m, (0, 0), kt) == m + 1
    d = kt.d
    only_iii = [(x, y) for x in CLASSES for y in CLASSES
                if cond_III(x, y, d) and not cond_I(x, y, d) and not cond_II(x, y, d)]
    none = [(x, y) for x in CLASSES for y in CLASSES if not cond_III(x, y, d)]
    for x, y in only_iii:
        assert intertwining_dim(3, x, 2, y, kt) == 1
    for x, y in none:
        assert intertwining_dim(2, x, 3, y, kt) == 0
    if d == 3:
        assert only_iii and none


@given(st.sampled_from(CLASSES), st.sampled_from(CLASSES), st.integers(1, 3), st.integers(1, 3))
def test_mackey_symmetry(x, y, mp, m):
    kt = KTS[(x[0] + y[1]) % 3]
    assert intertwining_dim(mp, x, m, y, kt) == intertwining_dim(m, y, mp, x, kt)


KTS = {c: KtypeContext(7, 3, c) for c in (0, 1, 2)}


def test_k1_examples(kt):
    d = kt.d
    for x in CLASSES:
        for y in CLASSES:
            for variant in ("Km,Km", "Km,K1m", "K1m,K1m"):
                got = intertwining_dim_k1(variant, 2, 2, (x, y), kt)
                assert got == predicted_k1(variant, 2, x, y, d)


def test_k1_named_examples():
    kt = KtypeContext(7, 3, 0)
    assert intertwining_dim_k1("Km,Km", 3, 3, ((0, 0), (0, 0)), kt) == 3
    assert intertwining_dim_k1("Km,K1m", 2, 2, ((1, 2), (2, 1)), kt) == 1
    assert intertwining_dim_k1("K1m,K1m", 2, 2, ((0, 0), (1, 1)), kt) == 0


def test_dim_fixed_examples():
    assert dim_fixed_table(2, (1, 2), 3, 3) == 1
    assert dim_fixed_table(3, (0, 0), 2, 3) == 0
    assert dim_fixed_table(0, (1, 0), 2, 3) == 0


def test_dim_fixed_against_mackey(kt):
    for k in range(0, 4):
        for m in range(1, 4):
            for ab in CLASSES:
                assert dim_fixed_mackey(k, ab, m, kt) == dim_fixed_table(k, ab, m, kt.d)


@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2),
       st.integers(1, 6), st.integers(1, 6), st.integers(0, 48), st.integers(0, 48))
def test_character_is_tame(a, b, c, x, y, lx, ly):
    ctx = PrimeContext(7)
    chi = CharacterChiAB(a, b, c)
    g1 = (x, 0, 0, y)
    g2 = (x + 7 * lx, 3, 0, y + 7 * ly)
    assert chi.value(ctx, g1) == chi.value(ctx, g2)
    e1, e2 = chi.exponents
    assert chi.value(ctx, g1) == hilbert3_parts(ctx, e1, 1, 0, x) + hilbert3_parts(ctx, e2, 1, 0, y)


def test_swapped_character():
    ctx = PrimeContext(7)
    chi, chiw = CharacterChiAB(1, 0, 0), CharacterChiAB(1, 0, 0, swapped=True)
    assert chi.value(ctx, (3, 0, 0, 1)) == chiw.value(ctx, (1, 0, 0, 3))


def test_level_consistency():
    assert level_consistency(4)
    rows = level_consistency_report(4)
    assert {(r["m"], r["dim"]) for r in rows} == {(0, 1), (1, 1), (2, 2), (3, 3), (4, 4)}


def test_full_report_and_runtime():
    t = time.perf_counter()
    rep = ktype_report(7, 3)
    assert time.perf_counter() - t < 60
    assert rep["ok"], rep["mismatches"][:5]
    values = {c["computed"] for c in rep["cases"] if c["table"] == "K"}
    assert values == {0, 1, 2, 3, 4}


def test_subgroup_membership():
    assert Sub("Km", 2).contains((3, 5, 49, 2), 7)
    assert not Sub("Km", 2).contains((3, 5, 7, 2), 7)
    assert Sub("K1m", 2).contains((3, 49, 7, 2), 7)
    assert not Sub("K1m", 2).contains((3, 7, 7, 2), 7)
