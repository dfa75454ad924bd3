"""Hot loops with a numba path and a plain numpy fallback.

Set ``ARTIFACT_DISABLE_NUMBA=1`` to force the fallback (also used when numba
is not importable).  Both paths are exercised by the test-suite and compared
against each other and against the object-level implementations.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None

DISABLED = os.environ.get("ARTIFACT_DISABLE_NUMBA", "").strip() not in ("", "0")
USE_NUMBA = numba is not None and not DISABLED


def _njit(fn):
    if not USE_NUMBA:
        return fn
    return numba.njit(cache=True)(fn)


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


# residue tables -------------------------------------------------------------

def dlog_table(p: int, gen: int) -> np.ndarray:
    """L[x] = discrete log of x to base gen, for 1 <= x < p (L[0] = -1)."""
    L = np.full(p, -1, dtype=np.int64)
    x = 1
    for k in range(p - 1):
        L[x] = k
        x = x * gen % p
    return L


def cubic_class_table(p: int, gen: int) -> np.ndarray:
    """Cubic residue class of each unit residue, read off the discrete log."""
    L = dlog_table(p, gen)
    out = np.where(L >= 0, L % 3, -1)
    return out.astype(np.int64)


# Hilbert symbol batches -----------------------------------------------------

def _hilbert_loop(va, ua, vb, ub, p, cls):
    n = va.shape[0]
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        out[i] = (vb[i] * cls[ua[i] % p] - va[i] * cls[ub[i] % p]) % 3
    return out


_hilbert_jit = _njit(_hilbert_loop)


def hilbert_batch(va, ua, vb, ub, p: int, cls: np.ndarray) -> np.ndarray:
    """(p^va*ua, p^vb*ub)_3 for arrays of valuations and integer units.

    The sign (-1)^(va*vb) is dropped: -1 is a cube because 3 | (p-1)/2.
    """
    va, ua, vb, ub = (np.ascontiguousarray(x, dtype=np.int64) for x in (va, ua, vb, ub))
    if USE_NUMBA:
        return _hilbert_jit(va, ua, vb, ub, p, cls)
    return (vb * cls[ua % p] - va * cls[ub % p]) % 3


# Gauss sums -----------------------------------------------------------------

def _gauss_loop(p, i, cls):
    re = 0.0
    im = 0.0
    for x in range(1, p):
        ang = 2.0 * np.pi * (x / p + i * (-cls[x]) / 3.0)
        re += np.cos(ang)
        im += np.sin(ang)
    return re, im


_gauss_jit = _njit(_gauss_loop)


def gauss_sum(p: int, i: int, cls: np.ndarray) -> complex:
    """sum_x eps((p, x)_3)^i exp(2 pi i x / p) over x in F_p^x.

    (p, x)_3 = -cls[x] for a unit x, eps(k) = exp(2 pi i k / 3).
    """
    if USE_NUMBA:
        re, im = _gauss_jit(p, i, cls)
        return complex(re, im)
    x = np.arange(1, p)
    ang = 2.0 * np.pi * (x / p + i * (-cls[x]) / 3.0)
    return complex(np.exp(1j * ang).sum())


# coset spaces P^1(Z/p^m) ----------------------------------------------------

def _inv_mod(a, mod):
    # extended Euclid; a is a unit mod `mod`
    r0, r1 = mod, a % mod
    s0, s1 = 0, 1
    while r1 != 0:
        qq = r0 // r1
        r0, r1 = r1, r0 - qq * r1
        s0, s1 = s1, s0 - qq * s1
    return s0 % mod


_inv_mod_jit = _njit(_inv_mod)


def _act_loop(a, b, c, d, p, m):
    pm = p**m
    pm1 = p ** (m - 1)
    n = pm + pm1
    out = np.empty(n, dtype=np.int64)
    for i in range(n):
        if i < pm:
            x, y = 1, i
        else:
            x, y = p * (i - pm), 1
        X = (a * x + b * y) % pm
        Y = (c * x + d * y) % pm
        if X % p != 0:
            out[i] = Y * _inv_mod_jit(X, pm) % pm
        else:
            out[i] = pm + (X * _inv_mod_jit(Y, pm) % pm) // p
    return out


_act_jit = _njit(_act_loop)


def _pow_mod_vec(base: np.ndarray, e: int, mod: int) -> np.ndarray:
    result = np.ones_like(base)
    b = base % mod
    while e:
        if e & 1:
            result = result * b % mod
        b = b * b % mod
        e >>= 1
    return result


def act_on_points(g, p: int, m: int) -> np.ndarray:
    """Image index of every point of P^1(Z/p^m) under the matrix g = (a, b, c, d).

    Point i < p^m is (1 : i); point p^m + j is (p*j : 1).
    """
    a, b, c, d = (int(x) for x in g)
    if USE_NUMBA:
        return _act_jit(a, b, c, d, p, m)
    pm, pm1 = p**m, p ** (m - 1)
    idx = np.arange(pm + pm1, dtype=np.int64)
    top = idx < pm
    x = np.where(top, 1, p * (idx - pm))
    y = np.where(top, idx, 1)
    X = (a * x + b * y) % pm
    Y = (c * x + d * y) % pm
    phi = pm - pm1
    unitX = X % p != 0
    invX = _pow_mod_vec(np.where(unitX, X, 1), phi - 1, pm)
    invY = _pow_mod_vec(np.where(unitX, 1, Y), phi - 1, pm)
    return np.where(unitX, Y * invX % pm, pm + (X * invY % pm) // p)


def _uf_loop(perms):
    k, n = perms.shape
    parent = np.arange(n)
    for g in range(k):
        for i in range(n):
            a = i
            while parent[a] != a:
                a = parent[a]
            b = perms[g, i]
            while parent[b] != b:
                b = parent[b]
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    labels = np.empty(n, dtype=np.int64)
    for i in range(n):
        a = i
        while parent[a] != a:
            a = parent[a]
        labels[i] = a
    return labels


_uf_jit = _njit(_uf_loop)


def orbit_labels(perms: np.ndarray) -> np.ndarray:
    """Label each point by the smallest index in its orbit under the given maps."""
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    if USE_NUMBA:
        return _uf_jit(perms)
    from scipy.sparse import coo_matrix
    from scipy.sparse.csgraph import connected_components

    k, n = perms.shape
    rows = np.repeat(np.arange(n)[None, :], k, axis=0).ravel()
    graph = coo_matrix((np.ones(k * n), (rows, perms.ravel())), shape=(n, n))
    _, comp = connected_components(graph, directed=True, connection="weak")
    first = np.full(comp.max() + 1, n, dtype=np.int64)
    np.minimum.at(first, comp, np.arange(n))
    return first[comp]


# Kubota cocycle on batches ---------------------------------------------------
# A p-adic number is a triple (v, u, r): p^v * u with u known mod p^r; r = 0 is
# the exact zero.  A matrix is 5 such triples: a, b, c, d, det.

def _padd(v1, u1, r1, v2, u2, r2, p, pp):
    if r1 == 0:
        return v2, u2, r2, 0
    if r2 == 0:
        return v1, u1, r1, 0
    if v1 > v2:
        v1, u1, r1, v2, u2, r2 = v2, u2, r2, v1, u1, r1
    delta = v2 - v1
    span = min(r1, delta + r2)
    if span <= 0:
        return v1, u1, r1, 0
    mod = pp[span]
    if delta >= span:
        s = u1 % mod
    else:
        s = (u1 + pp[delta] * (u2 % pp[span - delta])) % mod
    if s == 0:
        return 0, 0, 0, 1
    k = 0
    while s % p == 0:
        s //= p
        k += 1
    return v1 + k, s % pp[span - k], span - k, 0


def _pmul(v1, u1, r1, v2, u2, r2, pp):
    if r1 == 0 or r2 == 0:
        return 0, 0, 0
    r = min(r1, r2)
    mod = pp[r]
    return v1 + v2, (u1 % mod) * (u2 % mod) % mod, r


def _pinv(v, u, r, pp):
    return -v, _inv_mod_jit(u, pp[r]), r


def _matmul(A, B, C, p, pp):
    # A, B, C: (5, 3) arrays; C <- A*B; returns error flag
    err = 0
    for (i, j, k, l, o) in ((0, 0, 1, 2, 0), (0, 1, 1, 3, 1), (2, 0, 3, 2, 2), (2, 1, 3, 3, 3)):
        x = _pmul(A[i, 0], A[i, 1], A[i, 2], B[j, 0], B[j, 1], B[j, 2], pp)
        y = _pmul(A[k, 0], A[k, 1], A[k, 2], B[l, 0], B[l, 1], B[l, 2], pp)
        s = _padd(x[0], x[1], x[2], y[0], y[1], y[2], p, pp)
        err += s[3]
        C[o, 0], C[o, 1], C[o, 2] = s[0], s[1], s[2]
    t = _pmul(A[4, 0], A[4, 1], A[4, 2], B[4, 0], B[4, 1], B[4, 2], pp)
    C[4, 0], C[4, 1], C[4, 2] = t[0], t[1], t[2]
    return err


def _kidx(A):
    return 2 if A[2, 2] != 0 else 3


def _hil(v1, u1, v2, u2, p, cls):
    return (v2 * cls[u1 % p] - v1 * cls[u2 % p]) % 3


def _sigma(A, B, c, p, pp, cls, T):
    # T: scratch (5, 3) for A*B
    err = _matmul(A, B, T, p, pp)
    if err:
        return 0, 1
    i12, i1, i2 = _kidx(T), _kidx(A), _kidx(B)
    k12 = (T[i12, 0], T[i12, 1], T[i12, 2])
    ik1 = _pinv(A[i1, 0], A[i1, 1], A[i1, 2], pp)
    x = _pmul(k12[0], k12[1], k12[2], ik1[0], ik1[1], ik1[2], pp)
    den = _pmul(B[i2, 0], B[i2, 1], B[i2, 2], A[4, 0], A[4, 1], A[4, 2], pp)
    iden = _pinv(den[0], den[1], den[2], pp)
    y = _pmul(k12[0], k12[1], k12[2], iden[0], iden[1], iden[2], pp)
    s = _hil(x[0], x[1], y[0], y[1], p, cls)
    if c != 0:
        s = (s + c * _hil(A[4, 0], A[4, 1], B[4, 0], B[4, 1], p, cls)) % 3
    return s, 0


def _cocycle_loop(G, c, p, pp, cls):
    # G: (n, 3, 5, 3) triples; returns defect per sample (-1 on precision loss)
    n = G.shape[0]
    out = np.empty(n, dtype=np.int64)
    T = np.empty((5, 3), dtype=np.int64)
    P12 = np.empty((5, 3), dtype=np.int64)
    P23 = np.empty((5, 3), dtype=np.int64)
    for t in range(n):
        g1, g2, g3 = G[t, 0], G[t, 1], G[t, 2]
        e = _matmul(g1, g2, P12, p, pp) + _matmul(g2, g3, P23, p, pp)
        s1, e1 = _sigma(g1, g2, c, p, pp, cls, T)
        s2, e2 = _sigma(P12, g3, c, p, pp, cls, T)
        s3, e3 = _sigma(g1, P23, c, p, pp, cls, T)
        s4, e4 = _sigma(g2, g3, c, p, pp, cls, T)
        if e + e1 + e2 + e3 + e4:
            out[t] = -1
        else:
            out[t] = (s1 + s2 - s3 - s4) % 3
    return out


if USE_NUMBA:
    _padd = _njit(_padd)
    _pmul = _njit(_pmul)
    _pinv = _njit(_pinv)
    _matmul = _njit(_matmul)
    _kidx = _njit(_kidx)
    _hil = _njit(_hil)
    _sigma = _njit(_sigma)

_cocycle_jit = _njit(_cocycle_loop)


def random_gl2_batch(rng: np.random.Generator, n: int, p: int, M: int, vmin: int = -3,
                     vmax: int = 3, zero_prob: float = 0.15) -> np.ndarray:
    """(n, 5, 3) array of matrices; det is filled in by :func:`fill_det`."""
    G = np.zeros((n, 5, 3), dtype=np.int64)
    G[:, :4, 0] = rng.integers(vmin, vmax + 1, size=(n, 4))
    G[:, :4, 1] = rng.integers(0, p ** (M - 1), size=(n, 4)) * p + rng.integers(1, p, size=(n, 4))
    G[:, :4, 2] = np.where(rng.random((n, 4)) < zero_prob, 0, M)
    G[:, :4, 0] = np.where(G[:, :4, 2] == 0, 0, G[:, :4, 0])
    G[:, :4, 1] = np.where(G[:, :4, 2] == 0, 0, G[:, :4, 1])
    return G


def _det_loop(G, p, pp):
    # fills G[:, 4]; returns ok flags (0 = singular or ambiguous)
    n = G.shape[0]
    ok = np.ones(n, dtype=np.int64)
    for t in range(n):
        A = G[t]
        x = _pmul(A[0, 0], A[0, 1], A[0, 2], A[3, 0], A[3, 1], A[3, 2], pp)
        y = _pmul(A[1, 0], A[1, 1], A[1, 2], A[2, 0], A[2, 1], A[2, 2], pp)
        if y[2] != 0:
            y = (y[0], (-y[1]) % pp[y[2]], y[2])
        s = _padd(x[0], x[1], x[2], y[0], y[1], y[2], p, pp)
        if s[3] != 0 or s[2] == 0:
            ok[t] = 0
        else:
            A[4, 0], A[4, 1], A[4, 2] = s[0], s[1], s[2]
    return ok


_det_jit = _njit(_det_loop)


def fill_det(G: np.ndarray, p: int, M: int) -> np.ndarray:
    pp = np.array([p**k for k in range(M + 1)], dtype=np.int64)
    return _det_jit(G, p, pp).astype(bool)


def cocycle_defects(G: np.ndarray, c: int, p: int, M: int, cls: np.ndarray) -> np.ndarray:
    """Cocycle defect for each triple in G (shape (n, 3, 5, 3)); -1 flags precision loss."""
    pp = np.array([p**k for k in range(M + 1)], dtype=np.int64)
    G = np.ascontiguousarray(G, dtype=np.int64)
    return _cocycle_jit(G, c, p, pp, cls)
