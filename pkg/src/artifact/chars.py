"""Torus characters as symbolic atoms and the substitution-rule compiler.

Character values on the lattice of torus elements eta_{a,b} = s(diag(pi^a, pi^b))
are monomials in the character atoms of :mod:`artifact.symrat`:

* d = 3: the lattice is 3Z^2 with basis (3,0), (0,3); atoms a1p, a2p (sign +)
  and a1m, a2m (sign -) are chi_{+-,1}(pi^3), chi_{+-,2}(pi^3).
* d = 1: the lattice is {a = b mod 3} with basis (1,1), (0,3); atoms wp, wm
  are chi_{+-}(eta_{1,1}) and a2p, a2m as above.

Constraints between atoms are binomial relations ``monomial = coefficient``.
:func:`compile_substitutions` puts them in Hermite normal form over Z and
returns a :class:`RuleSet` whose normal form is canonical on monomial cosets.
"""
from __future__ import annotations

import cmath
import random
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .symrat import (ATOMS, INDEX, NATOMS, ONE, CycloCoeff, SymPoly, SymRat, mono,
                     reduce_gauss)

CHAR_ATOMS = ("a1p", "a2p", "a1m", "a2m", "wp", "wm")
# elimination priority: character atoms first, Q last (Q is never solved for)
DEFAULT_ORDER = CHAR_ATOMS + ("u", "t1", "t2", "X", "Q")


class InconsistentRelations(ValueError):
    """The relation set forces a contradiction such as Q^k = const."""

    def __init__(self, message: str, labels: tuple[str, ...]):
        super().__init__(f"{message}: {', '.join(labels)}")
        self.labels = labels


# torus data ----------------------------------------------------------------

def delta(a: int, b: int) -> SymPoly:
    """Modulus character at eta_{a,b}: |pi^(a-b)| = Q^(-2(a-b))."""
    return SymPoly.atom("Q", -2 * (a - b))


def delta_half(a: int, b: int) -> SymPoly:
    return SymPoly.atom("Q", -(a - b))


def in_lattice(d: int, a: int, b: int) -> bool:
    if d == 3:
        return a % 3 == 0 and b % 3 == 0
    return (a - b) % 3 == 0


def central_reps(d: int) -> tuple[int, ...]:
    """Representatives j of the central classes diag(pi^j, pi^j) modulo Z^(c)."""
    return tuple(range(d))


@dataclass(frozen=True)
class TorusCharSpec:
    """An unramified, normalized exceptional genuine character chi_+ or chi_-.

    ``dual`` selects chi^{-1,w}: h -> chi(h^w)^{-1}, the character of the
    contragredient model.
    """
    sign: int
    d: int
    dual: bool = False
    exceptional: bool = True
    unramified: bool = True
    normalized: bool = True
    unit_exponents: tuple[int, int] = (0, 0)

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        if self.d not in (1, 3):
            raise ValueError("d must be 1 or 3")
        if self.unramified and any(e % 3 for e in self.unit_exponents):
            raise ValueError("unramified character with nonzero unit exponents")

    @property
    def suffix(self) -> str:
        return "p" if self.sign > 0 else "m"

    def dualize(self) -> "TorusCharSpec":
        return TorusCharSpec(self.sign, self.d, not self.dual, self.exceptional,
                             self.unramified, self.normalized, self.unit_exponents)

    def _base_value(self, a: int, b: int) -> SymPoly:
        s = self.suffix
        if not in_lattice(self.d, a, b):
            raise ValueError(f"eta_({a},{b}) is not in the abelian lattice for d={self.d}")
        if self.d == 3:
            return SymPoly.monomial(mono(**{f"a1{s}": a // 3, f"a2{s}": b // 3}))
        return SymPoly.monomial(mono(**{f"w{s}": a, f"a2{s}": (b - a) // 3}))

    def value(self, a: int, b: int) -> SymPoly:
        """chi(eta_{a,b}) as a monomial in the character atoms."""
        if self.dual:
            return self._base_value(b, a).inverse_monomial()
        return self._base_value(a, b)

    def gauss_atom(self, i: int) -> SymPoly | int:
        """Gauss factor g^(i) of the recursion: G_i for chi_+, Gb_i for chi_-,
        swapped in the contragredient; g^(0) = -1."""
        i %= 3
        if i == 0:
            return SymPoly.const(-1)
        conj = (self.sign < 0) != self.dual
        return SymPoly.atom(("Gb" if conj else "G") + str(i))


# relations -----------------------------------------------------------------

@dataclass(frozen=True)
class Relation:
    """monomial(exps) = coeff."""
    label: str
    exps: tuple[int, ...]
    coeff: CycloCoeff = ONE

    @staticmethod
    def of(label: str, poly: SymPoly, coeff=1) -> "Relation":
        m, c = poly.single()
        return Relation(label, m, CycloCoeff.of(coeff) / c)


def _chi_pm(d: int, a: int, b: int, dual: bool = False) -> tuple[SymPoly, SymPoly]:
    return (TorusCharSpec(1, d, dual).value(a, b), TorusCharSpec(-1, d, dual).value(a, b))


def exceptional_relation(spec: TorusCharSpec) -> Relation:
    """chi(s(diag(x^3, x^-3))) = |x| at x = pi."""
    v = spec.value(3, -3) * SymPoly.atom("Q", 2)
    return Relation.of(f"exceptional{'+' if spec.sign > 0 else '-'}", v)


def u_definition(d: int) -> Relation:
    """u = chi_{+,1} chi_{-,2}(pi^3)."""
    cp, _ = _chi_pm(d, 3, 0)
    _, cm = _chi_pm(d, 0, 3)
    return Relation.of("u", cp * cm * SymPoly.atom("u", -1))


def central_relation(d: int) -> Relation:
    """omega * omega_+ * omega_- = 1 on Z^(c), at diag(pi^d, pi^d)."""
    cp, cm = _chi_pm(d, d, d)
    theta = SymPoly.monomial(mono(t1=d, t2=d))
    return Relation.of("central", theta * cp * cm)


def trivial_central(spec: TorusCharSpec) -> Relation:
    """omega_+- = 1."""
    return Relation.of(f"omega{'+' if spec.sign > 0 else '-'}=1", spec.value(spec.d, spec.d))


def fix_atom(name: str, value) -> Relation:
    return Relation.of(f"{name}={value}", SymPoly.atom(name), value)


def eisenstein_relations(d: int) -> list[Relation]:
    """theta = delta^(1/2+s) and theta_1 chi_{+,2} chi_{-,2} = |.|^(1/6) at pi^3."""
    a2p, a2m = _chi_pm(d, 0, 3)
    return [
        Relation.of("theta1=delta^(1/2+s)", SymPoly.monomial(mono(t1=1, Q=1, X=-1))),
        Relation.of("theta2=delta^-(1/2+s)", SymPoly.monomial(mono(t2=1, Q=-1, X=1))),
        # |pi^3|^(1/2) * chi_{+,2} chi_{-,2}(pi^3) = |pi^3|^(1/6)
        Relation.of("petersson-constraint", a2p * a2m * SymPoly.atom("Q", -2)),
    ]


def hypothesis_set(d: int, omega_trivial: bool = False, u: int | None = None,
                   eisenstein: bool = False) -> list[Relation]:
    rels = [exceptional_relation(TorusCharSpec(1, d)), exceptional_relation(TorusCharSpec(-1, d)),
            u_definition(d), central_relation(d)]
    if omega_trivial:
        rels += [trivial_central(TorusCharSpec(1, d)), trivial_central(TorusCharSpec(-1, d))]
    if u is not None:
        rels.append(fix_atom("u", u))
    if eisenstein:
        rels += eisenstein_relations(d)
    return rels


# compiler ------------------------------------------------------------------

@dataclass
class _Row:
    vec: list[int]
    coeff: CycloCoeff
    prov: list[int]

    def combine(self, other: "_Row", k: int) -> "_Row":
        """self - k * other."""
        return _Row([x - k * y for x, y in zip(self.vec, other.vec)],
                    self.coeff * other.coeff ** (-k),
                    [x - k * y for x, y in zip(self.prov, other.prov)])

    def neg(self) -> "_Row":
        return _Row([-x for x in self.vec], self.coeff.inverse(), [-x for x in self.prov])


@dataclass(frozen=True)
class Rule:
    col: int
    pivot: int
    vec: tuple[int, ...]
    coeff: CycloCoeff
    sources: tuple[str, ...]

    @property
    def atom(self) -> str:
        return ATOMS[self.col]

    def text(self) -> str:
        rest = SymPoly.monomial(tuple(-x if i != self.col else 0 for i, x in enumerate(self.vec)),
                                self.coeff)
        lhs = self.atom if self.pivot == 1 else f"{self.atom}^{self.pivot}"
        return f"{lhs} -> {rest.text()}"


@dataclass
class RuleSet:
    rules: list[Rule] = field(default_factory=list)
    order: tuple[str, ...] = DEFAULT_ORDER

    def _apply(self, r: Rule, m: list[int], c: CycloCoeff) -> CycloCoeff:
        k = m[r.col] // r.pivot
        if k:
            for i, x in enumerate(r.vec):
                if x:
                    m[i] -= k * x
            c = c * r.coeff ** k
        return c

    def normal_monomial(self, m, c=ONE) -> tuple[tuple[int, ...], CycloCoeff]:
        v = list(m)
        for r in self.rules:
            c = self._apply(r, v, c)
        return tuple(v), c

    def reduce(self, x: SymPoly) -> SymPoly:
        out: dict = {}
        for m, c in x.terms.items():
            m2, c2 = self.normal_monomial(m, c)
            out[m2] = out.get(m2, CycloCoeff()) + c2
        return SymPoly(out)

    __call__ = reduce

    def reduce_random_order(self, x: SymPoly, rng: random.Random) -> SymPoly:
        """Apply applicable rules in random order until none applies."""
        out: dict = {}
        for m, c in x.terms.items():
            v = list(m)
            while True:
                live = [r for r in self.rules if not 0 <= v[r.col] < r.pivot]
                if not live:
                    break
                c = self._apply(rng.choice(live), v, c)
            out[tuple(v)] = out.get(tuple(v), CycloCoeff()) + c
        return SymPoly(out)

    def reduce_rat(self, x: SymRat) -> SymRat:
        return SymRat(reduce_gauss(self.reduce(x.num)), reduce_gauss(self.reduce(x.den)))

    def pivots(self) -> dict[str, int]:
        return {r.atom: r.pivot for r in self.rules}

    def texts(self) -> list[str]:
        return [r.text() for r in self.rules]

    def numeric_point(self, rng: random.Random, q: int,
                      overrides: Mapping[str, complex] | None = None,
                      gauss: Mapping[str, complex] | None = None) -> dict[str, complex]:
        """A complex point satisfying every relation.

        Free atoms get random unit-circle values (or ``overrides``); pivot atoms
        are back-solved from the last rule upward, taking any root for power rules.
        """
        overrides = dict(overrides or {})
        piv = self.pivots()
        bad = set(overrides) & set(piv)
        if bad:
            raise ValueError(f"cannot override solved atoms {sorted(bad)}; "
                             "compile with a different order")
        vals: dict[str, complex] = {"Q": cmath.sqrt(q)}
        for a in ATOMS:
            if a in overrides:
                vals[a] = complex(overrides[a])
            elif a not in piv and a != "Q":
                vals[a] = cmath.exp(2j * cmath.pi * rng.random())
        if gauss:
            vals.update(gauss)
        for r in reversed(self.rules):
            rhs = r.coeff.to_complex()
            for i, x in enumerate(r.vec):
                if x and i != r.col:
                    rhs /= vals[ATOMS[i]] ** x
            root = cmath.exp(cmath.log(rhs) / r.pivot)
            k = rng.randrange(r.pivot)
            vals[r.atom] = root * cmath.exp(2j * cmath.pi * k / r.pivot)
        return vals


def compile_substitutions(relations: Iterable[Relation],
                          order: Iterable[str] = DEFAULT_ORDER) -> RuleSet:
    """Hermite normal form of the relation lattice with multiplicative coefficients.

    A pivot 1 is a substitution, a pivot p > 1 a power rule (reduce the pivot
    exponent into [0, p)).  A row pivoting on Q, or a zero row whose coefficient
    is not 1, is a contradiction and is reported with its source labels.
    """
    relations = list(relations)
    order = tuple(order)
    n = len(relations)
    labels = [r.label for r in relations]
    rows = [_Row(list(r.exps), r.coeff, [int(i == k) for i in range(n)])
            for k, r in enumerate(relations)]

    def sources(row: _Row) -> tuple[str, ...]:
        return tuple(labels[i] for i, x in enumerate(row.prov) if x)

    cols = [INDEX[a] for a in order] + [i for i in range(NATOMS) if ATOMS[i] not in order]
    pivots: list[tuple[int, int]] = []
    top = 0
    for col in cols:
        while True:
            nz = [i for i in range(top, n) if rows[i].vec[col]]
            if not nz:
                break
            best = min(nz, key=lambda i: abs(rows[i].vec[col]))
            rows[top], rows[best] = rows[best], rows[top]
            done = True
            for i in range(top + 1, n):
                if rows[i].vec[col]:
                    rows[i] = rows[i].combine(rows[top], rows[i].vec[col] // rows[top].vec[col])
                    if rows[i].vec[col]:
                        done = False
            if done:
                break
        if top < n and rows[top].vec[col]:
            if rows[top].vec[col] < 0:
                rows[top] = rows[top].neg()
            p = rows[top].vec[col]
            for i in range(top):
                k = rows[i].vec[col] // p
                if k:
                    rows[i] = rows[i].combine(rows[top], k)
            pivots.append((top, col))
            top += 1
    for i in range(top, n):
        if rows[i].coeff != ONE:
            raise InconsistentRelations("relations force 1 = " + rows[i].coeff.text(),
                                        sources(rows[i]))
    rules = []
    for r, col in pivots:
        row = rows[r]
        if ATOMS[col] == "Q":
            raise InconsistentRelations("relations force a power of q to be constant",
                                        sources(row))
        rules.append(Rule(col, row.vec[col], tuple(row.vec), row.coeff, sources(row)))
    return RuleSet(rules, order)


def compile_for(d: int, **kw) -> RuleSet:
    return compile_substitutions(hypothesis_set(d, **kw))


def statement_combinations(d: int) -> dict[str, SymPoly]:
    """Character combinations that appear in the theorem statement and its proof."""
    c1p, c1m = _chi_pm(d, 3, 0)
    c2p, c2m = _chi_pm(d, 0, 3)
    return {"chi+1 chi-2": c1p * c2m, "chi+1 chi-1": c1p * c1m, "chi+2 chi-2": c2p * c2m}


__all__ = ["CHAR_ATOMS", "DEFAULT_ORDER", "InconsistentRelations", "Relation", "Rule",
           "RuleSet", "TorusCharSpec", "central_reps", "central_relation", "compile_for",
           "compile_substitutions", "delta", "delta_half", "eisenstein_relations",
           "exceptional_relation", "fix_atom", "hypothesis_set", "in_lattice",
           "statement_combinations", "trivial_central", "u_definition"]
