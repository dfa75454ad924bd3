import time
from fractions import Fraction

import pytest

from artifact.chars import compile_for
from artifact.coperiod import (PsiModel, eisenstein_factor, eisenstein_target, l_factor,
                               psi_closed_form, psi_series, series_oracle, specialization,
                               torus_integral_constants, verify_theorem, zeta)
from artifact.symrat import SymPoly, SymRat, atom, eq_crossmul, series_expand


def test_zeta_and_factors():
    assert eq_crossmul(zeta(1), SymRat(SymPoly.const(1), SymPoly.const(1) - atom("Q", -2)))
    ad = l_factor("adjoint", 1).value
    assert ad.num == SymPoly.const(1)
    assert len(ad.den.terms) > 1
    with pytest.raises(ValueError):
        l_factor("sym5", 1)
    with pytest.raises(ValueError):
        l_factor("zeta", Fraction(1, 4)).value


def test_eisenstein_target_series():
    s = series_expand(eisenstein_target(), "X", 2)
    # zeta(1+s) zeta(2+3s) / zeta(2+2s) = 1 + q^-1 X + O(X^2)
    assert s == SymPoly.const(1) + atom("Q", -2) * atom("X")


@pytest.mark.parametrize("c", [0, 1, 2])
def test_theorem_identity(c):
    t = time.perf_counter()
    rep = verify_theorem(c, N=20)
    assert time.perf_counter() - t < 10
    assert rep.identity
    assert rep.series_ok
    assert all(rep.displays.values())
    assert rep.numeric_residual < 1e-9


@pytest.mark.parametrize("d", [3, 1])
def test_series_oracle_direct(d):
    model = PsiModel(d, n_max=63)
    assert series_oracle(model, 20)
    closed = psi_closed_form(d, model=model)
    assert model.norm(series_expand(closed, "t1", 60)) == psi_series(d, 20, model=model)


@pytest.mark.parametrize("d", [3, 1])
def test_closed_form_starts_at_one(d):
    model = PsiModel(d, n_max=12)
    assert psi_series(d, 0, model=model).by_degree("t1")[0] == SymPoly.const(1)


@pytest.mark.parametrize("d", [3, 1])
def test_specialization_plus(d):
    s = specialization(d, 1)
    assert s["stated"] and s["twisted"]


@pytest.mark.parametrize("d", [3, 1])
def test_specialization_minus_is_the_quadratic_twist(d):
    s = specialization(d, -1)
    # the stated target L(1,Sym3)/(L(1/2,Sym3)L(1,ad)) does not match; the twist does
    assert not s["stated"]
    assert s["twisted"]


@pytest.mark.parametrize("d", [3, 1])
def test_eisenstein(d):
    e = eisenstein_factor(d)
    assert e["u_pinned"] and e["identity"] and e["at_s0"] and e["series"]


def test_torus_integral_constants():
    t = torus_integral_constants(N=30)
    assert t["constant_ok"] and t["weights_times_constant_is_one"]
    assert max(t["route_residuals"].values()) < 1e-9


def test_rules_reduce_theorem_combination():
    rules = compile_for(3, omega_trivial=True, u=1)
    assert rules(atom("u")) == SymPoly.const(1)
