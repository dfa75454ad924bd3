"""The cubic cover of GL2(Q_p) through the Kubota cocycle.

Entries are :class:`PAdicElem`.  Entries that are exactly zero use the zero
sentinel, so the branch in ``K(g)`` is decided on exact vanishing only.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .padic import Mu3, PAdicElem, PrecisionError, PrimeContext, hilbert3


@dataclass(frozen=True)
class Mat2:
    """A matrix in GL2(Q_p).  The determinant is carried along multiplicatively
    so that products never recompute it through a cancelling difference."""
    a: PAdicElem
    b: PAdicElem
    c: PAdicElem
    d: PAdicElem
    det: PAdicElem

    @classmethod
    def of(cls, a, b, c, d) -> "Mat2":
        det = a * d - b * c
        if det.is_zero:
            raise ZeroDivisionError("singular matrix")
        return cls(a, b, c, d, det)

    def __iter__(self):
        return iter((self.a, self.b, self.c, self.d))

    def __getitem__(self, i: int) -> PAdicElem:
        return (self.a, self.b, self.c, self.d)[i]


@dataclass(frozen=True)
class CocycleParams:
    ctx: PrimeContext
    c: int = 0

    def __post_init__(self):
        if self.c not in (0, 1, 2):
            raise ValueError(f"cover parameter c={self.c} must lie in {{0, 1, 2}}")

    @property
    def d(self) -> int:
        """3 / gcd(1 + 4c, 3): d = 3 for c in {0, 1} and d = 1 for c = 2."""
        return 3 // gcd(1 + 4 * self.c, 3)


def mat(ctx: PrimeContext, a, b, c, d) -> Mat2:
    """Build a matrix from ints, Fractions or PAdicElems."""
    def conv(x):
        if isinstance(x, PAdicElem):
            return x
        return PAdicElem.from_fraction(ctx, x)
    return Mat2.of(conv(a), conv(b), conv(c), conv(d))


def mat_mul(g: Mat2, h: Mat2) -> Mat2:
    a1, b1, c1, d1 = g
    a2, b2, c2, d2 = h
    return Mat2(a1 * a2 + b1 * c2, a1 * b2 + b1 * d2, c1 * a2 + d1 * c2, c1 * b2 + d1 * d2,
                g.det * h.det)


def mat_det(g: Mat2) -> PAdicElem:
    return g.det


def mat_inv(g: Mat2) -> Mat2:
    a, b, c, d = g
    di = g.det.inverse()
    return Mat2(d * di, -(b * di), -(c * di), a * di, di)


def K_entry(g: Mat2) -> PAdicElem:
    """Lower-left entry if nonzero, otherwise lower-right."""
    return g[2] if not g[2].is_zero else g[3]


def kubota_sigma(params: CocycleParams, g1: Mat2, g2: Mat2) -> Mu3:
    g12 = mat_mul(g1, g2)
    k12, k1, k2 = K_entry(g12), K_entry(g1), K_entry(g2)
    det1, det2 = mat_det(g1), mat_det(g2)
    s = hilbert3(k12 / k1, k12 / (k2 * det1))
    if params.c:
        s = s + params.c * hilbert3(det1, det2)
    return s


@dataclass(frozen=True)
class CoverElem:
    g: Mat2
    z: Mu3


def cover_mul(params: CocycleParams, x: CoverElem, y: CoverElem) -> CoverElem:
    return CoverElem(mat_mul(x.g, y.g), x.z + y.z + kubota_sigma(params, x.g, y.g))


def cover_inv(params: CocycleParams, x: CoverElem) -> CoverElem:
    gi = mat_inv(x.g)
    return CoverElem(gi, -x.z - kubota_sigma(params, x.g, gi))


def in_K(g: Mat2) -> bool:
    det = mat_det(g)
    return all(e.is_integral() for e in g) and det.is_unit()


def kappa_twist(params: CocycleParams, k: Mat2) -> Mu3:
    """Twist t(k) with kappa(k) = (k, t(k)): (c, d/det)_3 when 0 < |c| < 1."""
    c, d = k[2], k[3]
    if not c.is_zero and c.val >= 1:
        return hilbert3(c, d / mat_det(k))
    return Mu3(0)


def kappa(params: CocycleParams, k: Mat2) -> CoverElem:
    if not in_K(k):
        raise ValueError("kappa is only defined on GL2(O)")
    return CoverElem(k, kappa_twist(params, k))


# random sampling ------------------------------------------------------------

def _random_entry(rng: np.random.Generator, ctx: PrimeContext, vmin: int, vmax: int,
                  zero_prob: float) -> PAdicElem:
    if rng.random() < zero_prob:
        return PAdicElem.zero(ctx)
    v = int(rng.integers(vmin, vmax + 1))
    while True:
        u = int(rng.integers(1, ctx.pM))
        if u % ctx.p:
            return PAdicElem.from_parts(ctx, v, u)


def random_gl2(rng: np.random.Generator, ctx: PrimeContext, vmin: int = -3, vmax: int = 3,
               zero_prob: float = 0.15) -> Mat2:
    """Entries with valuations uniform in [vmin, vmax]; some exact zeros so both
    branches of K(.) are exercised.  Singular or precision-ambiguous draws are
    rejected."""
    while True:
        entries = [_random_entry(rng, ctx, vmin, vmax, zero_prob) for _ in range(4)]
        try:
            return Mat2.of(*entries)
        except (PrecisionError, ZeroDivisionError):
            continue


def random_K(rng: np.random.Generator, ctx: PrimeContext, vmax: int = 3,
             zero_prob: float = 0.15) -> Mat2:
    while True:
        g = random_gl2(rng, ctx, 0, vmax, zero_prob)
        if mat_det(g).is_unit():
            return g


def random_upper_unipotent(rng: np.random.Generator, ctx: PrimeContext, vmin: int = -3,
                           vmax: int = 3) -> Mat2:
    one, zero = PAdicElem.from_int(ctx, 1), PAdicElem.zero(ctx)
    return Mat2.of(one, _random_entry(rng, ctx, vmin, vmax, 0.1), zero, one)


# sweeps (object route) ------------------------------------------------------

def cocycle_defect(params: CocycleParams, g1: Mat2, g2: Mat2, g3: Mat2) -> Mu3:
    """sigma(g1,g2) + sigma(g1g2,g3) - sigma(g1,g2g3) - sigma(g2,g3); zero for a cocycle."""
    s = kubota_sigma
    return (s(params, g1, g2) + s(params, mat_mul(g1, g2), g3)
            - s(params, g1, mat_mul(g2, g3)) - s(params, g2, g3))


def sample_triples(params: CocycleParams, n: int, seed: int, vmin: int = -3, vmax: int = 3):
    """Seeded triples whose products are all determined at the working precision."""
    rng = np.random.default_rng(seed)
    out, rejected = [], 0
    while len(out) < n:
        t = tuple(random_gl2(rng, params.ctx, vmin, vmax) for _ in range(3))
        try:
            cocycle_defect(params, *t)
        except PrecisionError:
            rejected += 1
            continue
        out.append(t)
    return out, rejected


def cocycle_sweep(params: CocycleParams, n: int, seed: int) -> dict:
    triples, rejected = sample_triples(params, n, seed)
    fails = sum(1 for t in triples if cocycle_defect(params, *t) != 0)
    return {"samples": n, "failures": fails, "rejected": rejected}


def splitting_sweep(params: CocycleParams, n: int, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    fails = rejected = done = 0
    while done < n:
        k1, k2 = random_K(rng, params.ctx), random_K(rng, params.ctx)
        try:
            lhs = cover_mul(params, kappa(params, k1), kappa(params, k2))
            rhs = kappa(params, mat_mul(k1, k2))
        except PrecisionError:
            rejected += 1
            continue
        done += 1
        if lhs.z != rhs.z:
            fails += 1
    return {"samples": n, "failures": fails, "rejected": rejected}


def unipotent_sweep(params: CocycleParams, n: int, seed: int) -> dict:
    rng = np.random.default_rng(seed)
    fails = 0
    for _ in range(n):
        n1 = random_upper_unipotent(rng, params.ctx)
        n2 = random_upper_unipotent(rng, params.ctx)
        if kubota_sigma(params, n1, n2) != 0:
            fails += 1
    return {"samples": n, "failures": fails, "rejected": 0}


# sweeps (batched kernel route) ---------------------------------------------------

def batch_to_mat2(ctx: PrimeContext, A: np.ndarray) -> Mat2:
    """Convert one (5, 3) kernel matrix to a Mat2 (det entry included)."""
    ents = [PAdicElem.zero(ctx) if int(r) == 0 else PAdicElem.from_parts(ctx, int(v), int(u), int(r))
            for v, u, r in A]
    return Mat2(*ents)


def random_triples_batch(params: CocycleParams, n: int, seed: int, vmin: int = -3,
                         vmax: int = 3) -> np.ndarray:
    """(n, 3, 5, 3) array of invertible matrices with determinants filled in."""
    from . import kernels

    ctx = params.ctx
    rng = np.random.default_rng(seed)
    mats = []
    need = 3 * n
    while need > 0:
        G = kernels.random_gl2_batch(rng, max(need * 2, 64), ctx.p, ctx.M, vmin, vmax)
        ok = kernels.fill_det(G, ctx.p, ctx.M)
        mats.append(G[ok][:need])
        need -= len(mats[-1])
    return np.concatenate(mats).reshape(n, 3, 5, 3)


def cocycle_sweep_batch(params: CocycleParams, n: int, seed: int) -> dict:
    """Cocycle identity on n batched triples; precision-ambiguous triples are redrawn."""
    from . import kernels

    ctx = params.ctx
    cls = kernels.cubic_class_table(ctx.p, ctx.gen)
    fails = rejected = done = 0
    round_ = 0
    while done < n:
        T = random_triples_batch(params, n - done, seed + 7919 * round_)
        out = kernels.cocycle_defects(T, params.c, ctx.p, ctx.M, cls)
        rejected += int((out < 0).sum())
        good = out[out >= 0]
        fails += int((good != 0).sum())
        done += len(good)
        round_ += 1
    return {"samples": n, "failures": fails, "rejected": rejected, "backend": kernels.backend()}
