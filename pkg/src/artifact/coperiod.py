"""Local L-factors and the unramified local co-period.

Psi is the torus sum of W_+ W_- f over y = pi^n and the central classes
z = diag(pi^j, pi^j), with measure d^x y / |y|.  Its closed form is derived
here by summing one geometric series per residue class of n mod 3; the ratio
of consecutive terms is checked to be a single monomial, not assumed.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .chars import (CHAR_ATOMS, RuleSet, TorusCharSpec, central_reps, compile_for,
                    compile_substitutions, hypothesis_set, statement_combinations)
from .cover import CocycleParams
from .padic import PrimeContext
from .symrat import (SymPoly, SymRat, atom, eq_crossmul, mono, prod, reduce_gauss,
                     series_expand, substitute)
from .whittaker import (WhittakerTable, build_c_table, gauss_values, whittaker_window)

Q = atom("Q")
ONE = SymPoly.const(1)


def zeta(a: int, b: int = 0) -> SymRat:
    """Local zeta factor zeta_F(a + b s) = 1 / (1 - Q^(-2a) X^b)."""
    return SymRat(ONE, ONE - SymPoly.monomial(mono(Q=-2 * a, X=b)))


def zeta_one() -> SymRat:
    return zeta(1)


# Euler factors ---------------------------------------------------------------

INVERSE_ROOTS = {
    "sym3": ((3, 0), (2, 1), (1, 2), (0, 3)),
    "adjoint": ((1, -1), (0, 0), (-1, 1)),
    "zeta": ((0, 0),),
}


@dataclass(frozen=True)
class EulerFactor:
    rep: str
    s0: Fraction
    roots: tuple[SymPoly, ...]
    twist: int = 1

    @property
    def value(self) -> SymRat:
        e = -2 * self.s0
        if e.denominator != 1:
            raise ValueError(f"s0={self.s0} needs a fractional power of Q")
        qs = SymPoly.atom("Q", int(e))
        return SymRat(ONE, prod(SymRat(ONE - self.twist * g * qs) for g in self.roots).num)

    def text(self) -> str:
        return self.value.text()


def l_factor(rep: str, s0, twist: int = 1) -> EulerFactor:
    """L(s0, sigma, rep) for rep in {sym3, adjoint, zeta}; ``twist`` = -1 gives
    the twist by the unramified quadratic character."""
    if rep not in INVERSE_ROOTS:
        raise ValueError(f"unknown representation {rep!r}")
    roots = tuple(SymPoly.monomial(mono(t1=i, t2=j)) for i, j in INVERSE_ROOTS[rep])
    return EulerFactor(rep, Fraction(s0), roots, twist)


# Psi as a series -------------------------------------------------------------

def _pair(d: int, dual: bool, n_max: int) -> tuple[WhittakerTable, WhittakerTable]:
    w = whittaker_window(n_max, d)
    tabs = []
    for sign in (1, -1):
        chi = TorusCharSpec(sign, d, dual)
        tabs.append(WhittakerTable(build_c_table(chi, w)))
    return tabs[0], tabs[1]


def psi_term(Wp: WhittakerTable, Wm: WhittakerTable, n: int, j: int, dual: bool) -> SymPoly:
    """W_+ W_- f at z diag(pi^n, 1) times |pi^n|^-1, z = diag(pi^j, pi^j).

    f(diag(y1, y2)) = theta_1(y1) theta_2(y2) |y1/y2|^(1/2); the contragredient
    uses theta^-1.
    """
    e = -1 if dual else 1
    f = SymPoly.monomial(mono(t1=e * (n + j), t2=e * j, Q=-n))
    return Wp(n + j, j) * Wm(n + j, j) * f * SymPoly.atom("Q", 2 * n)


class PsiModel:
    """Whittaker tables and rules for one branch d (and its contragredient)."""

    def __init__(self, d: int, rules: RuleSet | None = None, n_max: int = 64):
        self.d = d
        self.rules = rules if rules is not None else compile_for(d)
        self.n_max = n_max
        self._pairs = {False: _pair(d, False, n_max), True: _pair(d, True, n_max)}

    def norm(self, x: SymPoly) -> SymPoly:
        return reduce_gauss(self.rules(reduce_gauss(x)))

    def raw_term(self, n: int, j: int, dual: bool = False) -> SymPoly:
        if n > self.n_max:
            raise ValueError(f"n={n} exceeds the table window (n_max={self.n_max})")
        Wp, Wm = self._pairs[dual]
        return psi_term(Wp, Wm, n, j, dual)

    def term(self, n: int, j: int, dual: bool = False) -> SymPoly:
        return self.norm(self.raw_term(n, j, dual))

    def series(self, N: int, dual: bool = False) -> SymPoly:
        """Sum of all terms with n <= 3N."""
        total = SymPoly()
        for n in range(3 * N + 1):
            for j in central_reps(self.d):
                total = total + self.term(n, j, dual)
        return total

    def classes(self, dual: bool = False) -> list[dict]:
        """Per (n mod 3, j) class: first term and verified geometric ratio."""
        out = []
        for rho in range(3):
            for j in central_reps(self.d):
                terms = [self.term(rho + 3 * k, j, dual) for k in range(4)]
                if all(t.is_zero() for t in terms):
                    continue
                if any(t.is_zero() or not t.is_monomial() for t in terms):
                    raise ArithmeticError(f"class ({rho},{j}) is not a monomial series")
                ratio = self.norm(terms[1] * terms[0].inverse_monomial())
                for k in (1, 2):
                    if self.norm(terms[k] * ratio) != terms[k + 1]:
                        raise ArithmeticError(f"class ({rho},{j}) has no constant ratio")
                out.append({"rho": rho, "j": j, "first": terms[0], "ratio": ratio})
        return out

    def closed_form(self, dual: bool = False) -> SymRat:
        """Sum over classes of first / (1 - ratio), grouped by common ratio."""
        groups: dict = {}
        for c in self.classes(dual):
            key = frozenset(c["ratio"].terms.items())
            groups.setdefault(key, [c["ratio"], SymPoly()])
            groups[key][1] = groups[key][1] + c["first"]
        total = SymRat(SymPoly())
        for ratio, first in groups.values():
            total = total + SymRat(first, ONE - ratio)
        return total


def psi_series(d: int, N: int, dual: bool = False, model: PsiModel | None = None) -> SymPoly:
    model = model or PsiModel(d, n_max=max(3 * N + 3, 8))
    return model.series(N, dual)


def psi_closed_form(d: int, dual: bool = False, model: PsiModel | None = None) -> SymRat:
    model = model or PsiModel(d, n_max=12)
    return model.closed_form(dual)


def display_forms(d: int, rules: RuleSet, dual: bool = False) -> dict[str, SymRat]:
    """The two displayed shapes of Psi, built from the character combinations.

    ``sum`` is (1 + |pi|^(-1/2) chi+1chi-1 theta1^2theta2) / (1 - |pi|^(3/2) chi+2chi-2 theta1^3),
    ``factored`` is (1 - |pi| theta1/theta2) / ((1 - ...)(1 - ...)); the
    contragredient swaps indices and inverts.
    """
    comb = {k: rules(v) for k, v in statement_combinations(d).items()}
    c11, c22 = comb["chi+1 chi-1"], comb["chi+2 chi-2"]
    if not dual:
        x = Q * c11 * SymPoly.monomial(mono(t1=2, t2=1))
        r = SymPoly.atom("Q", -3) * c22 * SymPoly.monomial(mono(t1=3))
        num = ONE - SymPoly.monomial(mono(Q=-2, t1=1, t2=-1))
    else:
        x = Q * c22.inverse_monomial() * SymPoly.monomial(mono(t1=-2, t2=-1))
        r = SymPoly.atom("Q", -3) * c11.inverse_monomial() * SymPoly.monomial(mono(t1=-3))
        num = ONE - SymPoly.monomial(mono(Q=-2, t1=-1, t2=1))
    return {"sum": SymRat(ONE + x, ONE - r),
            "factored": SymRat(num, (ONE - x) * (ONE - r))}


# the co-period ----------------------------------------------------------------

def unramified_I(model: PsiModel) -> SymRat:
    """zeta(1) Psi Psi^vee divided by (W_+,W_+^vee)(W_-,W_-^vee)(f,f^vee) = zeta(1)^2."""
    z1 = zeta_one()
    return z1 * model.closed_form(False) * model.closed_form(True) / (z1 * z1)


def theorem_rhs(d: int, rules: RuleSet) -> SymRat:
    """(1/L(1,ad)) prod 1/(1 - |pi|^(1/2) chi+1chi-2(pi^3) gamma) over the Sym^3 roots."""
    u = rules(statement_combinations(d)["chi+1 chi-2"])
    f = l_factor("sym3", Fraction(1, 2))
    den = prod(SymRat(ONE - SymPoly.atom("Q", -1) * u * g) for g in f.roots).num
    return SymRat(ONE, den) / l_factor("adjoint", 1).value


def numeric_point(model: PsiModel, q: int, seed: int, overrides=None) -> dict[str, complex]:
    rng = random.Random(seed)
    g = gauss_values(PrimeContext(q))
    return model.rules.numeric_point(rng, q, overrides, g)


def numeric_psi(model: PsiModel, vals: dict[str, complex], dual: bool, n_max: int) -> complex:
    """Truncated numeric sum of the raw (unreduced) terms."""
    total = 0j
    for n in range(n_max + 1):
        for j in central_reps(model.d):
            total += model.raw_term(n, j, dual).evaluate(vals)
    return total


def _spot_rules(d: int) -> RuleSet:
    """Rules with u and t1 free so that numeric points can fix them."""
    return compile_substitutions(hypothesis_set(d), CHAR_ATOMS + ("t2", "u", "t1", "X", "Q"))


def numeric_spot_check(d: int, q: int = 7, seed: int = 0, n_max: int = 120,
                       u: int | None = None) -> float:
    """|I_numeric - RHS| / |RHS| at a random point with |t1| = 1 and numeric Gauss sums.

    I_numeric multiplies truncated numeric Psi sums computed from the raw tables.
    """
    model = PsiModel(d, _spot_rules(d), n_max=n_max)
    over = {"u": u} if u is not None else None
    vals = numeric_point(model, q, seed, over)
    psi = numeric_psi(model, vals, False, n_max)
    psiv = numeric_psi(model, vals, True, n_max)
    z1 = 1 / (1 - 1 / q)
    lhs = psi * psiv / z1
    rhs = theorem_rhs(d, model.rules).evaluate(vals)
    return abs(lhs - rhs) / abs(rhs)


@dataclass
class TheoremReport:
    c: int
    d: int
    identity: bool
    displays: dict[str, bool]
    series_order: int
    series_ok: bool
    I_text: str
    rhs_text: str
    numeric_residual: float

    @property
    def ok(self) -> bool:
        return self.identity and self.series_ok and all(self.displays.values()) \
            and self.numeric_residual < 1e-9


def series_oracle(model: PsiModel, N: int) -> bool:
    """Series of the derived closed form in t1 to order 3N equals psi_series(N)."""
    closed = model.closed_form(False)
    ser = model.norm(series_expand(closed, "t1", 3 * N))
    return ser == model.series(N)


def verify_theorem(c: int, N: int = 20, q: int = 7, seed: int = 0) -> TheoremReport:
    d = CocycleParams(PrimeContext(q), c).d
    model = PsiModel(d, n_max=max(3 * N + 3, 12))
    I = unramified_I(model)
    rhs = theorem_rhs(d, model.rules)
    ident = eq_crossmul(I, rhs, model.rules)
    displays = {}
    for dual in (False, True):
        derived = model.closed_form(dual)
        for name, form in display_forms(d, model.rules, dual).items():
            displays[f"{'dual-' if dual else ''}{name}"] = eq_crossmul(derived, form, model.rules)
    return TheoremReport(c, d, ident, displays, N, series_oracle(model, N),
                         model.rules.reduce_rat(I).text(), rhs.text(),
                         numeric_spot_check(d, q, seed))


# omega_+- = 1 specializations ------------------------------------------------------

def specialization(d: int, u: int) -> dict:
    """The co-period with omega_+- = 1 and chi+1chi-2(pi^3) = u against the two
    stated targets and the quadratic-twist form."""
    rules = compile_for(d, omega_trivial=True, u=u)
    model = PsiModel(d, rules, n_max=12)
    I = unramified_I(model)
    ad = l_factor("adjoint", 1).value
    half, one = l_factor("sym3", Fraction(1, 2)).value, l_factor("sym3", 1).value
    stated = half / ad if u == 1 else one / (half * ad)
    twisted = l_factor("sym3", Fraction(1, 2), twist=u).value / ad
    return {"d": d, "u": u, "rules": rules.texts(),
            "stated": eq_crossmul(I, stated, rules),
            "twisted": eq_crossmul(I, twisted, rules),
            "I": rules.reduce_rat(I).text(), "stated_text": stated.text()}


# Eisenstein specialization --------------------------------------------------------

def eisenstein_target() -> SymRat:
    """zeta(1+s) zeta(2+3s) / zeta(2+2s)."""
    return zeta(1, 1) * zeta(2, 3) / zeta(2, 2)


def eisenstein_factor(d: int, order: int = 10) -> dict:
    rules = compile_for(d, eisenstein=True)
    model = PsiModel(d, rules, n_max=12)
    psi = rules.reduce_rat(model.closed_form(False))
    target = eisenstein_target()
    at1 = substitute(psi, {"X": 1})
    ser_ok = (series_expand(psi, "X", order) == series_expand(target, "X", order))
    return {"d": d, "rules": rules.texts(), "u_pinned": rules.pivots().get("u") == 1,
            "psi": psi.text(), "identity": eq_crossmul(psi, target, rules),
            "at_s0": eq_crossmul(at1, zeta_one()), "series": ser_ok}


# torus integration constants --------------------------------------------------

def torus_constant(d_psi: int = 0) -> SymRat:
    """|pi|^d(psi) zeta(2) / zeta(1)."""
    return SymRat(SymPoly.atom("Q", -2 * d_psi)) * zeta(2) / zeta(1)


def shell_volume(k: int) -> SymPoly:
    """dx-volume of {v(x) = -k} (k >= 1) or of O (k = 0), with Vol(O) = 1."""
    if k == 0:
        return ONE
    return (ONE - SymPoly.atom("Q", -2)) * SymPoly.atom("Q", 2 * k)


def shell_weight(k: int) -> SymPoly:
    """Weight of the shell v(x) = -k in the lower-unipotent route: its dx-volume
    q^k (1 - q^-1) (or 1 for x in O) times the Jacobian |x|^-2 of y -> y x^-2."""
    if k == 0:
        return ONE
    return (ONE - SymPoly.atom("Q", -2)) * SymPoly.atom("Q", -2 * k)


def shell_weight_sum() -> SymRat:
    """Closed form of sum_k shell_weight(k), from the geometric ratio of shells."""
    w1, w2 = shell_weight(1), shell_weight(2)
    ratio = SymPoly.atom("Q", -2)
    assert w2 == w1 * ratio
    return SymRat(shell_weight(0)) + SymRat(w1, ONE - ratio)


def torus_integral_constants(N: int = 30, q: int = 7, seed: int = 0) -> dict:
    """Both routes of the integration formula on the co-period integrand."""
    const = torus_constant(0)
    expected = SymRat(ONE - SymPoly.atom("Q", -2), ONE - SymPoly.atom("Q", -4))
    total = const * shell_weight_sum()
    out = {"constant": const.text(), "constant_ok": eq_crossmul(const, expected),
           "weights_times_constant_is_one": eq_crossmul(total, SymRat(ONE))}
    residuals = {}
    for d in (3, 1):
        model = PsiModel(d, _spot_rules(d), n_max=3 * N + 3)
        vals = numeric_point(model, q, seed)
        M = 3 * N
        phi = []
        for m in range(M + 1):
            s = 0j
            for j in central_reps(d):
                s += model.raw_term(m, j).evaluate(vals)
            phi.append(s)  # Phi(m) |pi^m|^-1
        qv = complex(q)
        vols = [shell_volume(k).evaluate(vals) for k in range(M // 2 + 1)]
        route2 = 0j
        # y runs over all of F^x; Phi vanishes below valuation 0, so n >= -2k
        for k in range(M // 2 + 1):
            for n in range(-2 * k, M - 2 * k + 1):
                # Phi(n + 2k) |pi^n|^-1 = phi[n + 2k] q^-2k
                route2 += vols[k] * phi[n + 2 * k] * qv ** (-2 * k)
        route2 *= const.evaluate(vals)
        direct = model.closed_form().evaluate(vals)
        residuals[d] = abs(route2 - direct) / abs(direct)
    out["route_residuals"] = residuals
    return out


__all__ = ["EulerFactor", "PsiModel", "TheoremReport", "display_forms", "eisenstein_factor",
           "eisenstein_target", "l_factor", "numeric_spot_check", "psi_closed_form",
           "psi_series", "series_oracle", "shell_weight", "shell_weight_sum", "specialization",
           "theorem_rhs", "torus_constant", "torus_integral_constants", "unramified_I",
           "verify_theorem", "zeta", "zeta_one"]
