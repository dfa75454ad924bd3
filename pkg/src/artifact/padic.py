"""Truncated p-adic numbers, cubic residues and the tame cubic Hilbert symbol.

Elements are stored as ``p^val * unit`` where the unit is known modulo
``p^prec`` (relative precision).  Zero is an exact sentinel and never arises
from cancellation: an addition that cancels every known digit raises
:class:`PrecisionError` instead of guessing.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class PrecisionError(ArithmeticError):
    """Raised when an operation would need digits beyond the stored precision."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def primitive_root(p: int) -> int:
    """Smallest generator of (Z/p)^x."""
    phi = p - 1
    fs = _prime_factors(phi)
    for g in range(2, p):
        if all(pow(g, phi // f, p) != 1 for f in fs):
            return g
    return 1  # p == 2


class Mu3(int):
    """An element of mu_3 written additively as a class in Z/3."""

    def __new__(cls, e: int = 0):
        return super().__new__(cls, int(e) % 3)

    def __add__(self, other):
        return Mu3(int(self) + int(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Mu3(int(self) - int(other))

    def __rsub__(self, other):
        return Mu3(int(other) - int(self))

    def __neg__(self):
        return Mu3(-int(self))

    def __mul__(self, k):
        return Mu3(int(self) * int(k))

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"Mu3({int(self)})"


class PrimeContext:
    """Residue field data for Q_p with p = 1 mod 3.

    ``iota`` identifies the cube roots of unity mod p with Z/3 by sending
    gen^((p-1)/3) to 1, where gen is the smallest primitive root.
    """

    def __init__(self, p: int, M: int = 6):
        if not is_prime(p):
            raise ValueError(f"p={p} is not prime")
        if p % 3 != 1:
            raise ValueError(f"p={p} is not 1 mod 3; mu_3 is not in Q_p")
        if M < 1:
            raise ValueError("precision M must be positive")
        self.p = p
        self.q = p
        self.M = M
        self.pM = p**M
        self.gen = primitive_root(p)
        self.omega = pow(self.gen, (p - 1) // 3, p)
        self._iota = {1: 0, self.omega: 1, self.omega * self.omega % p: 2}

    def __repr__(self) -> str:
        return f"PrimeContext(p={self.p}, M={self.M})"

    def __eq__(self, other) -> bool:
        return isinstance(other, PrimeContext) and (self.p, self.M) == (other.p, other.M)

    def __hash__(self) -> int:
        return hash((self.p, self.M))

    def iota(self, r: int) -> Mu3:
        r %= self.p
        if r not in self._iota:
            raise ValueError(f"{r} is not a cube root of unity mod {self.p}")
        return Mu3(self._iota[r])

    def cube_root_of_unity(self, e: int) -> int:
        return pow(self.omega, e % 3, self.p)


def cubic_residue(ctx: PrimeContext, x: int) -> Mu3:
    """iota(x^((q-1)/3)) for x a unit mod p."""
    x %= ctx.p
    if x == 0:
        raise ValueError("cubic residue of a non-unit")
    return ctx.iota(pow(x, (ctx.p - 1) // 3, ctx.p))


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


@dataclass(frozen=True)
class PAdicElem:
    ctx: PrimeContext
    val: int | None  # None marks the exact zero
    unit: int = 0
    prec: int = 0

    # construction
    @classmethod
    def zero(cls, ctx: PrimeContext) -> "PAdicElem":
        return cls(ctx, None, 0, 0)

    @classmethod
    def from_parts(cls, ctx: PrimeContext, val: int, unit: int, prec: int | None = None) -> "PAdicElem":
        prec = ctx.M if prec is None else prec
        if not 1 <= prec <= ctx.M:
            raise PrecisionError(f"precision {prec} outside [1, {ctx.M}]")
        if unit % ctx.p == 0:
            raise ValueError(f"unit part {unit} is divisible by p={ctx.p}")
        return cls(ctx, val, unit % ctx.p**prec, prec)

    @classmethod
    def from_int(cls, ctx: PrimeContext, n: int) -> "PAdicElem":
        if n == 0:
            return cls.zero(ctx)
        v = valuation(n, ctx.p)
        return cls.from_parts(ctx, v, n // ctx.p**v)

    @classmethod
    def from_fraction(cls, ctx: PrimeContext, x: Fraction | int) -> "PAdicElem":
        x = Fraction(x)
        if x == 0:
            return cls.zero(ctx)
        a, b = x.numerator, x.denominator
        va, vb = valuation(a, ctx.p), valuation(b, ctx.p)
        a //= ctx.p**va
        b //= ctx.p**vb
        return cls.from_parts(ctx, va - vb, a * pow(b, -1, ctx.pM))

    @classmethod
    def parse(cls, ctx: PrimeContext, text: str) -> "PAdicElem":
        """Parse a literal ``val:unit`` (for instance ``1:3`` is 3p)."""
        parts = text.strip().split(":")
        if len(parts) != 2:
            raise ValueError(f"malformed p-adic literal {text!r}; expected val:unit")
        try:
            v, u = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise ValueError(f"malformed p-adic literal {text!r}") from exc
        if u % ctx.p == 0:
            raise ValueError(f"literal {text!r}: unit part must be prime to p")
        return cls.from_parts(ctx, v, u)

    # predicates
    @property
    def is_zero(self) -> bool:
        return self.val is None

    def residue(self) -> int:
        """Leading digit of the unit part (the unit mod p)."""
        if self.is_zero:
            raise ValueError("zero has no unit residue")
        return self.unit % self.ctx.p

    def is_integral(self) -> bool:
        return self.is_zero or self.val >= 0

    def is_unit(self) -> bool:
        return not self.is_zero and self.val == 0

    # arithmetic
    def __neg__(self) -> "PAdicElem":
        if self.is_zero:
            return self
        return PAdicElem(self.ctx, self.val, (-self.unit) % self.ctx.p**self.prec, self.prec)

    def __mul__(self, other: "PAdicElem") -> "PAdicElem":
        if self.is_zero or other.is_zero:
            return PAdicElem.zero(self.ctx)
        r = min(self.prec, other.prec)
        return PAdicElem(self.ctx, self.val + other.val, self.unit * other.unit % self.ctx.p**r, r)

    def __add__(self, other: "PAdicElem") -> "PAdicElem":
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        x, y = (self, other) if self.val <= other.val else (other, self)
        p = self.ctx.p
        # absolute precision of the sum, measured from x.val
        span = min(x.prec, y.val - x.val + y.prec)
        if span <= 0:
            # y is below the known digits of x
            return PAdicElem(self.ctx, x.val, x.unit % p**x.prec, x.prec)
        mod = p**span
        s = (x.unit + p ** (y.val - x.val) * y.unit) % mod
        if s == 0:
            raise PrecisionError(f"sum cancels all {span} known digits")
        k = 0
        while s % p == 0:
            s //= p
            k += 1
        return PAdicElem(self.ctx, x.val + k, s % p ** (span - k), span - k)

    def __sub__(self, other: "PAdicElem") -> "PAdicElem":
        return self + (-other)

    def inverse(self) -> "PAdicElem":
        if self.is_zero:
            raise ZeroDivisionError("inverse of the zero sentinel")
        mod = self.ctx.p**self.prec
        return PAdicElem(self.ctx, -self.val, pow(self.unit, -1, mod), self.prec)

    def __truediv__(self, other: "PAdicElem") -> "PAdicElem":
        return self * other.inverse()

    def __pow__(self, k: int) -> "PAdicElem":
        if self.is_zero:
            if k <= 0:
                raise ZeroDivisionError("non-positive power of zero")
            return self
        base = self if k >= 0 else self.inverse()
        mod = self.ctx.p**self.prec
        return PAdicElem(self.ctx, base.val * abs(k), pow(base.unit, abs(k), mod), self.prec)

    def agrees(self, other: "PAdicElem") -> bool:
        """Equality up to the common known precision."""
        if self.is_zero or other.is_zero:
            return self.is_zero and other.is_zero
        if self.val != other.val:
            return False
        mod = self.ctx.p ** min(self.prec, other.prec)
        return (self.unit - other.unit) % mod == 0

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        return f"{self.val}:{self.unit}(+O(p^{self.prec}))"


def hilbert3(a: PAdicElem, b: PAdicElem) -> Mu3:
    """Tame cubic Hilbert symbol (a, b)_3 as a class in Z/3."""
    if a.is_zero or b.is_zero:
        raise ValueError("Hilbert symbol is undefined at 0")
    ctx = a.ctx
    p = ctx.p
    va, vb = a.val, b.val
    r = pow(a.residue(), vb, p) * pow(b.residue(), -va, p)
    if (va * vb) % 2:
        r = -r
    return cubic_residue(ctx, r)


def hilbert3_parts(ctx: PrimeContext, va: int, ua: int, vb: int, ub: int) -> Mu3:
    """Symbol of p^va*ua and p^vb*ub for integer units; convenience for tables."""
    return hilbert3(PAdicElem.from_parts(ctx, va, ua), PAdicElem.from_parts(ctx, vb, ub))


# axiom sweeps -------------------------------------------------------------------

HILBERT_AXIOMS = ("bimultiplicative", "antisymmetric", "steinberg", "cube", "unit_unit")


def random_elem(rng, ctx: PrimeContext, vmin: int = -4, vmax: int = 4) -> PAdicElem:
    while True:
        u = int(rng.integers(1, ctx.pM))
        if u % ctx.p:
            return PAdicElem.from_parts(ctx, int(rng.integers(vmin, vmax + 1)), u)


def hilbert_axiom_sweep(ctx: PrimeContext, n: int, seed: int) -> dict[str, dict]:
    """Failures of each symbol axiom on n seeded samples apiece."""
    import numpy as np

    rng = np.random.default_rng(seed)
    one = PAdicElem.from_int(ctx, 1)
    out = {}
    for name in HILBERT_AXIOMS:
        fails = skipped = 0
        for _ in range(n):
            a, b, c = (random_elem(rng, ctx) for _ in range(3))
            if name == "bimultiplicative":
                bad = (hilbert3(a * b, c) != hilbert3(a, c) + hilbert3(b, c)
                       or hilbert3(a, b * c) != hilbert3(a, b) + hilbert3(a, c))
            elif name == "antisymmetric":
                bad = hilbert3(a, b) != -hilbert3(b, a)
            elif name == "steinberg":
                try:
                    bad = hilbert3(a, one - a) != 0
                except PrecisionError:
                    skipped += 1
                    continue
            elif name == "cube":
                bad = hilbert3(a, b ** 3) != 0 or hilbert3(b ** 3, a) != 0
            else:
                ua = PAdicElem.from_parts(ctx, 0, a.unit, a.prec)
                ub = PAdicElem.from_parts(ctx, 0, b.unit, b.prec)
                bad = hilbert3(ua, ub) != 0
            fails += bool(bad)
        out[name] = {"samples": n, "failures": fails, "skipped": skipped}
    return out
