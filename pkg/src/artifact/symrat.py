"""Sparse Laurent polynomials and unreduced rational functions over Q(zeta_3).

Atoms are fixed and ordered (``ATOMS``).  A monomial is an integer exponent
vector over the atoms; a :class:`SymPoly` maps monomials to
:class:`CycloCoeff`.  A :class:`SymRat` is a pair (num, den) with no gcd
cancellation; equality is decided by cross-multiplication after the Gauss
rule ``G_i * Gb_i = Q^2`` (and any extra rewriting) has been applied.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

# Q = q^(1/2); t1, t2 Satake values; u = chi_{+,1} chi_{-,2}(pi^3); X = q^(-s);
# G_i / Gb_i Gauss sums; a1p.. character values at pi^3, wp/wm at the centre.
ATOMS = ("Q", "t1", "t2", "u", "X", "G1", "G2", "Gb1", "Gb2",
         "a1p", "a2p", "a1m", "a2m", "wp", "wm")
INDEX = {a: i for i, a in enumerate(ATOMS)}
NATOMS = len(ATOMS)
ZERO_EXP = (0,) * NATOMS

Mono = tuple  # exponent vector of length NATOMS


@dataclass(frozen=True)
class CycloCoeff:
    """a + b*z with z = zeta_3, z^2 = -1 - z."""
    a: Fraction = Fraction(0)
    b: Fraction = Fraction(0)

    @staticmethod
    def of(x) -> "CycloCoeff":
        if isinstance(x, CycloCoeff):
            return x
        return CycloCoeff(Fraction(x), Fraction(0))

    def __add__(self, o):
        o = CycloCoeff.of(o)
        return CycloCoeff(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return CycloCoeff(-self.a, -self.b)

    def __sub__(self, o):
        return self + (-CycloCoeff.of(o))

    def __mul__(self, o):
        o = CycloCoeff.of(o)
        a, b, c, d = self.a, self.b, o.a, o.b
        return CycloCoeff(a * c - b * d, a * d + b * c - b * d)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.a * self.b + self.b * self.b

    def inverse(self) -> "CycloCoeff":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of 0 in Q(zeta_3)")
        return CycloCoeff((self.a - self.b) / n, -self.b / n)

    def __truediv__(self, o):
        return self * CycloCoeff.of(o).inverse()

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inverse()
        out = CycloCoeff(Fraction(1))
        for _ in range(abs(k)):
            out = out * base
        return out

    def __bool__(self) -> bool:
        return self.a != 0 or self.b != 0

    def __eq__(self, o) -> bool:
        try:
            o = CycloCoeff.of(o)
        except (TypeError, ValueError):
            return NotImplemented
        return self.a == o.a and self.b == o.b

    def __hash__(self):
        return hash((self.a, self.b))

    def to_complex(self) -> complex:
        return complex(self.a) + complex(self.b) * cmath.exp(2j * cmath.pi / 3)

    def text(self) -> str:
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return "z" if self.b == 1 else f"{self.b}*z"
        return f"({self.a}+{self.b}*z)"


ONE = CycloCoeff(Fraction(1))
ZETA3 = CycloCoeff(Fraction(0), Fraction(1))


def mono(**exps: int) -> Mono:
    v = [0] * NATOMS
    for k, e in exps.items():
        v[INDEX[k]] = e
    return tuple(v)


def mono_mul(m1: Mono, m2: Mono) -> Mono:
    return tuple(x + y for x, y in zip(m1, m2))


def mono_text(m: Mono) -> str:
    parts = []
    for a, e in zip(ATOMS, m):
        if e == 1:
            parts.append(a)
        elif e:
            parts.append(f"{a}^{e}")
    return "*".join(parts)


class SymPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Mono, CycloCoeff] | None = None):
        self.terms: dict[Mono, CycloCoeff] = {}
        if terms:
            for m, c in terms.items():
                c = CycloCoeff.of(c)
                if c:
                    self.terms[tuple(m)] = c

    # constructors
    @classmethod
    def const(cls, c) -> "SymPoly":
        return cls({ZERO_EXP: CycloCoeff.of(c)})

    @classmethod
    def atom(cls, name: str, e: int = 1) -> "SymPoly":
        return cls({mono(**{name: e}): ONE})

    @classmethod
    def monomial(cls, m: Mono, c=1) -> "SymPoly":
        return cls({m: CycloCoeff.of(c)})

    # structure
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def single(self) -> tuple[Mono, CycloCoeff]:
        if len(self.terms) != 1:
            raise ValueError("not a monomial")
        return next(iter(self.terms.items()))

    def atoms(self) -> set[str]:
        return {ATOMS[i] for m in self.terms for i, e in enumerate(m) if e}

    # arithmetic
    def __add__(self, o) -> "SymPoly":
        o = _poly(o)
        out = dict(self.terms)
        for m, c in o.terms.items():
            s = out.get(m, CycloCoeff()) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        r = SymPoly()
        r.terms = out
        return r

    __radd__ = __add__

    def __neg__(self) -> "SymPoly":
        r = SymPoly()
        r.terms = {m: -c for m, c in self.terms.items()}
        return r

    def __sub__(self, o) -> "SymPoly":
        return self + (-_poly(o))

    def __rsub__(self, o) -> "SymPoly":
        return _poly(o) - self

    def __mul__(self, o) -> "SymPoly":
        if isinstance(o, SymRat):
            return NotImplemented
        o = _poly(o)
        out: dict[Mono, CycloCoeff] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in o.terms.items():
                m = mono_mul(m1, m2)
                s = out.get(m, CycloCoeff()) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        r = SymPoly()
        r.terms = out
        return r

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "SymPoly":
        if k < 0:
            m, c = self.single()
            return SymPoly({tuple(-e * (-k) for e in m): c ** k})
        out = SymPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def inverse_monomial(self) -> "SymPoly":
        m, c = self.single()
        return SymPoly({tuple(-e for e in m): c.inverse()})

    def __truediv__(self, o):
        return SymRat(self) / o

    def __rtruediv__(self, o):
        return SymRat(_poly(o)) / SymRat(self)

    def __eq__(self, o) -> bool:
        try:
            o = _poly(o)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # transforms
    def map_monomials(self, fn: Callable[[Mono, CycloCoeff], tuple[Mono, CycloCoeff]]) -> "SymPoly":
        out = SymPoly()
        for m, c in self.terms.items():
            m2, c2 = fn(m, c)
            out = out + SymPoly({m2: c2})
        return out

    def by_degree(self, var: str) -> dict[int, "SymPoly"]:
        """Split by the exponent of ``var``; the pieces do not contain ``var``."""
        i = INDEX[var]
        out: dict[int, SymPoly] = {}
        for m, c in self.terms.items():
            k = m[i]
            m0 = m[:i] + (0,) + m[i + 1:]
            out.setdefault(k, SymPoly())
            out[k] = out[k] + SymPoly({m0: c})
        return out

    def truncate(self, var: str, order: int) -> "SymPoly":
        i = INDEX[var]
        return SymPoly({m: c for m, c in self.terms.items() if m[i] <= order})

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        total = 0j
        for m, c in self.terms.items():
            t = c.to_complex()
            for a, e in zip(ATOMS, m):
                if e:
                    t *= complex(values[a]) ** e
            total += t
        return total

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m in sorted(self.terms):
            c = self.terms[m]
            mt = mono_text(m)
            if not mt:
                parts.append(c.text())
            elif c == ONE:
                parts.append(mt)
            elif c == -ONE:
                parts.append("-" + mt)
            else:
                parts.append(f"{c.text()}*{mt}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"SymPoly({self.text()})"


def _poly(x) -> SymPoly:
    if isinstance(x, SymPoly):
        return x
    if isinstance(x, (int, Fraction, CycloCoeff)):
        return SymPoly.const(x)
    raise TypeError(f"cannot coerce {type(x).__name__} to SymPoly")


class SymRat:
    """num/den with no gcd reduction; monomial denominators are absorbed."""
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _poly(num)
        den = SymPoly.const(1) if den is None else _poly(den)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if den.is_monomial():
            num = num * den.inverse_monomial()
            den = SymPoly.const(1)
        self.num, self.den = num, den

    @staticmethod
    def of(x) -> "SymRat":
        return x if isinstance(x, SymRat) else SymRat(_poly(x))

    def __add__(self, o):
        o = SymRat.of(o)
        if self.den == o.den:
            return SymRat(self.num + o.num, self.den)
        return SymRat(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return SymRat(-self.num, self.den)

    def __sub__(self, o):
        return self + (-SymRat.of(o))

    def __rsub__(self, o):
        return SymRat.of(o) - self

    def __mul__(self, o):
        o = SymRat.of(o)
        return SymRat(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "SymRat":
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return SymRat(self.den, self.num)

    def __truediv__(self, o):
        return self * SymRat.of(o).inverse()

    def __rtruediv__(self, o):
        return SymRat.of(o) * self.inverse()

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inverse()
        out = SymRat(SymPoly.const(1))
        for _ in range(abs(k)):
            out = out * base
        return out

    def evaluate(self, values: Mapping[str, complex]) -> complex:
        return self.num.evaluate(values) / self.den.evaluate(values)

    def text(self) -> str:
        if self.den == SymPoly.const(1):
            return self.num.text()
        return f"({self.num.text()})/({self.den.text()})"

    def __repr__(self) -> str:
        return f"SymRat({self.text()})"


Reducer = Callable[[SymPoly], SymPoly]


def reduce_gauss(x: SymPoly) -> SymPoly:
    """Rewrite G_i^e Gb_i^f to G_i^(e-f) Q^(2f) (e >= f) or Gb_i^(f-e) Q^(2e)."""
    iq = INDEX["Q"]
    pairs = ((INDEX["G1"], INDEX["Gb1"]), (INDEX["G2"], INDEX["Gb2"]))

    def fn(m, c):
        v = list(m)
        for ig, ib in pairs:
            e, f = v[ig], v[ib]
            k = min(e, f)
            v[ig] -= k
            v[ib] -= k
            v[iq] += 2 * k
        return tuple(v), c

    return x.map_monomials(fn)


def identify_conjugates(x: SymPoly) -> SymPoly:
    """Replace Gb_1 by G_2 and Gb_2 by G_1 (valid numerically since the cubic
    character is even), then apply the Gauss rule G_1 G_2 = Q^2."""
    g1, g2, b1, b2, iq = (INDEX[k] for k in ("G1", "G2", "Gb1", "Gb2", "Q"))

    def fn(m, c):
        v = list(m)
        v[g2] += v[b1]
        v[g1] += v[b2]
        v[b1] = v[b2] = 0
        k = min(v[g1], v[g2])
        v[g1] -= k
        v[g2] -= k
        v[iq] += 2 * k
        return tuple(v), c

    return x.map_monomials(fn)


def normalize(x: SymPoly, reducer: Reducer | None = None) -> SymPoly:
    x = reduce_gauss(x)
    if reducer is not None:
        x = reduce_gauss(reducer(x))
    return x


def normalize_rat(x: SymRat, reducer: Reducer | None = None) -> SymRat:
    return SymRat(normalize(x.num, reducer), normalize(x.den, reducer))


def eq_crossmul(x, y, reducer: Reducer | None = None) -> bool:
    """x == y as rational functions (modulo the Gauss rule and ``reducer``)."""
    x, y = SymRat.of(x), SymRat.of(y)
    diff = x.num * y.den - y.num * x.den
    return normalize(diff, reducer).is_zero()


def substitute(x, values: Mapping[str, "SymPoly | SymRat | int | Fraction"]):
    """Replace atoms by expressions; returns a SymRat."""
    x = SymRat.of(x)

    def sub_poly(p: SymPoly) -> SymRat:
        total = SymRat(SymPoly())
        for m, c in p.terms.items():
            keep = list(m)
            term = SymRat(SymPoly.const(c))
            for a, v in values.items():
                e = m[INDEX[a]]
                if e:
                    keep[INDEX[a]] = 0
                    term = term * (SymRat.of(v) ** e)
            total = total + term * SymRat(SymPoly.monomial(tuple(keep)))
        return total

    return sub_poly(x.num) / sub_poly(x.den)


def series_expand(x, var: str, order: int) -> SymPoly:
    """Expansion of x in powers of the atom ``var`` up to var^order inclusive.

    The lowest ``var``-degree part of the denominator must be a monomial, so
    that it is invertible in the Laurent ring of the remaining atoms.
    """
    x = SymRat.of(x)
    den = x.den.by_degree(var)
    num = x.num.by_degree(var)
    if not den:
        raise ZeroDivisionError("zero denominator")
    k0 = min(den)
    lead = den[k0]
    if not lead.is_monomial():
        raise ValueError(f"denominator's lowest {var}-degree part is not a monomial; "
                         "series is not defined")
    inv = lead.inverse_monomial()
    d = {k - k0: normalize(v * inv) for k, v in den.items()}
    n = {k - k0: normalize(v * inv) for k, v in num.items()}
    if not n:
        return SymPoly()
    lo = min(n)
    s: dict[int, SymPoly] = {}
    for k in range(lo, order + 1):
        acc = n.get(k, SymPoly())
        for j, dj in d.items():
            if j == 0 or k - j < lo:
                continue
            if k - j in s:
                acc = acc - dj * s[k - j]
        s[k] = normalize(acc)
    out = SymPoly()
    vi = INDEX[var]
    for k, v in s.items():
        shift = tuple(k if i == vi else 0 for i in range(NATOMS))
        out = out + v * SymPoly.monomial(shift)
    return out


def prod(xs: Iterable):
    out = SymRat(SymPoly.const(1))
    for x in xs:
        out = out * x
    return out


def atom(name: str, e: int = 1) -> SymPoly:
    return SymPoly.atom(name, e)
