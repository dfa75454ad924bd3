"""Gauss sums and spherical Whittaker coefficients of the cubic cover.

The normalized function C lives on the two cosets L and L + (-1, 1) of the
abelian lattice L.  It is determined by C(eta_{0,0}) = 1, one application of
the recursion (cons) giving C(eta_{-1,1}), and the homogeneity
C(h t) = C(t) / (delta^(1/2) chi)(h) for h in L.  :func:`check_cons` then
verifies (cons) at every point of a window.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass, field

from . import kernels
from .chars import RuleSet, TorusCharSpec, central_reps, delta, delta_half, in_lattice
from .padic import PrimeContext, cubic_residue
from .symrat import INDEX, SymPoly, SymRat, identify_conjugates, reduce_gauss

Window = tuple[int, int, int, int]  # amin, amax, bmin, bmax (inclusive)


# Gauss sums ----------------------------------------------------------------

def gauss_sum_numeric(ctx: PrimeContext, i: int) -> complex:
    """sum over x in GF(p)^x of (pi, x)_3^i psi(x/p), psi(y) = exp(2 pi i y).

    The tame symbol gives (pi, x)_3 = eps(-cubic_residue(x)).
    """
    cls = kernels.cubic_class_table(ctx.p, ctx.gen)
    return complex(kernels.gauss_sum(ctx.p, i % 3, cls))


def gauss_sum_reference(ctx: PrimeContext, i: int) -> complex:
    """Same sum by a plain loop through :func:`cubic_residue`."""
    p = ctx.p
    total = 0j
    for x in range(1, p):
        e = -int(cubic_residue(ctx, x)) * i
        total += cmath.exp(2j * cmath.pi * (x / p + e / 3))
    return total


def gauss_values(ctx: PrimeContext) -> dict[str, complex]:
    """Numeric values for the Gauss atoms; Gb_i is the complex conjugate of G_i."""
    g1, g2 = gauss_sum_numeric(ctx, 1), gauss_sum_numeric(ctx, 2)
    return {"G1": g1, "G2": g2, "Gb1": g1.conjugate(), "Gb2": g2.conjugate()}


# C and W tables --------------------------------------------------------------

def cons_factor(chi: TorusCharSpec, a: int, b: int) -> SymPoly:
    """|pi|^-(b-a-2-floor((a-b)/3)) g^(b-a-1): C(eta_{b-1,a+1}) / C(eta_{a,b})."""
    e = -(b - a - 2 - (a - b) // 3)
    return SymPoly.atom("Q", -2 * e) * chi.gauss_atom(b - a - 1)


def support_rep(d: int, a: int, b: int) -> tuple[int, int] | None:
    """The coset representative (0,0) or (-1,1) of eta_{a,b}, or None off support."""
    if in_lattice(d, a, b):
        return (0, 0)
    if in_lattice(d, a + 1, b - 1):
        return (-1, 1)
    return None


@dataclass
class CFunction:
    chi: TorusCharSpec
    window: Window
    table: dict[tuple[int, int], SymPoly] = field(default_factory=dict)

    @property
    def d(self) -> int:
        return self.chi.d

    def anchors(self) -> dict[tuple[int, int], SymPoly]:
        one = SymPoly.const(1)
        return {(0, 0): one, (-1, 1): cons_factor(self.chi, 0, 0) * one}

    def value(self, a: int, b: int) -> SymPoly:
        r = support_rep(self.d, a, b)
        if r is None:
            return SymPoly()
        h = (a - r[0], b - r[1])
        scale = delta_half(*h) * self.chi.value(*h)
        return self.anchors()[r] * scale.inverse_monomial()

    def __call__(self, a: int, b: int) -> SymPoly:
        if (a, b) in self.table:
            return self.table[(a, b)]
        amin, amax, bmin, bmax = self.window
        if not (amin <= a <= amax and bmin <= b <= bmax):
            raise KeyError(f"eta_({a},{b}) is outside the table window {self.window}")
        return self.value(a, b)


def build_c_table(chi: TorusCharSpec, window: Window) -> CFunction:
    amin, amax, bmin, bmax = window
    if not (amin <= 0 <= amax and bmin <= 0 <= bmax):
        raise ValueError("window must contain the anchor eta_{0,0}")
    cf = CFunction(chi, window)
    for a in range(amin, amax + 1):
        for b in range(bmin, bmax + 1):
            cf.table[(a, b)] = cf.value(a, b)
    return cf


def check_cons(cf: CFunction, rules: RuleSet) -> list[tuple[int, int]]:
    """Window points where (cons) fails; empty means the table is well defined.

    Gauss atoms are compared through g^(i),psi g^(-i),psi = q, which holds because
    the cubic character is even.
    """
    amin, amax, bmin, bmax = cf.window
    bad = []
    for a in range(amin, amax + 1):
        for b in range(bmin, bmax + 1):
            a2, b2 = b - 1, a + 1
            if not (amin <= a2 <= amax and bmin <= b2 <= bmax):
                continue
            diff = cf(a2, b2) - cons_factor(cf.chi, a, b) * cf(a, b)
            if not identify_conjugates(rules(diff)).is_zero():
                bad.append((a, b))
    return bad


@dataclass
class WhittakerTable:
    cf: CFunction | None

    def __call__(self, a: int, b: int) -> SymPoly:
        if self.cf is None or a < b:
            return SymPoly()
        return delta(a, b) * self.cf(-b, -a)

    @classmethod
    def zero(cls) -> "WhittakerTable":
        return cls(None)


def spherical_whittaker(a: int, b: int, cf: CFunction) -> SymPoly:
    return WhittakerTable(cf)(a, b)


def whittaker_window(n_max: int, d: int) -> Window:
    """A window covering W(eta_{n+j, j}) for 0 <= n <= n_max and central j."""
    j = max(central_reps(d))
    return (-n_max - j - 2, 2, -n_max - j - 2, 2)


def spherical_pair(sign: int, d: int, n_max: int) -> tuple[WhittakerTable, WhittakerTable]:
    """(W_sign, W_sign^vee) over a window large enough for n <= n_max."""
    chi = TorusCharSpec(sign, d)
    w = whittaker_window(n_max, d)
    return WhittakerTable(build_c_table(chi, w)), WhittakerTable(build_c_table(chi.dualize(), w))


def whittaker_inner(W: WhittakerTable, Wv: WhittakerTable, N: int, d: int,
                    rules: RuleSet) -> SymRat:
    """Torus sum of W W^vee(diag(y,1) z) d^x y, kept to order |pi|^N.

    Every shell y in pi^n O^x has d^x y-volume 1.  Monomials with Q-exponent
    below -2N are dropped, so the neglected tail is bounded by Q^(-2N).
    """
    total = SymPoly()
    for n in range(0, 3 * N + 3):
        for j in central_reps(d):
            total = total + W(n + j, j) * Wv(n + j, j)
    total = reduce_gauss(rules(total))
    kept = SymPoly({m: c for m, c in total.terms.items() if m[INDEX["Q"]] >= -2 * N})
    return SymRat(kept)


def table_rows(cf: CFunction, window: Window, kind: str = "W") -> list[dict]:
    """Rows (a, b, value) over a window for CLI dumps."""
    amin, amax, bmin, bmax = window
    W = WhittakerTable(cf)
    out = []
    for a in range(amin, amax + 1):
        for b in range(bmin, bmax + 1):
            v = W(a, b) if kind == "W" else cf(a, b)
            out.append({"a": a, "b": b, "value": v.text()})
    return out


def numeric_gauss_magnitudes(qs=(7, 13, 19)) -> list[dict]:
    rows = []
    for q in qs:
        ctx = PrimeContext(q)
        g0 = gauss_sum_numeric(ctx, 0)
        for i in (1, 2):
            g = gauss_sum_numeric(ctx, i)
            rows.append({"q": q, "i": i, "abs2": float(abs(g) ** 2), "g0": g0})
    return rows

