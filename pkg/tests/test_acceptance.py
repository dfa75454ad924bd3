"""One test per acceptance criterion; each prints a PASS/FAIL line.

Criteria 1 and 9 contain statements that do not hold as written.  Those tests
compute the criterion in full, print FAIL and are marked as strict expected
failures so that an unexpected pass is also reported.
"""
import hashlib
import math
import subprocess
import sys
import time

import pytest

from conftest import ACCEPTANCE


def record(k: int, ok: bool, note: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    ACCEPTANCE[k] = (status, note)
    print(f"criterion {k}: {status} {note}")
    assert ok, note


@pytest.mark.xfail(strict=True, reason="u = -1 specialization as stated is false; the "
                   "quadratic-twist form holds (see notes/decisions.md)")
def test_criterion_1_unramified_calculation():
    from artifact.coperiod import specialization, verify_theorem

    parts = {}
    for c in (0, 1, 2):
        t = time.perf_counter()
        rep = verify_theorem(c, N=20)
        parts[f"identity c={c}"] = rep.identity and time.perf_counter() - t < 10
    for d in (3, 1):
        parts[f"u=+1 d={d}"] = specialization(d, 1)["stated"]
        parts[f"u=-1 d={d}"] = specialization(d, -1)["stated"]
    bad = [k for k, v in parts.items() if not v]
    record(1, not bad, f"failing parts: {bad}" if bad else "theorem identity for c=0,1,2")


def test_criterion_2_series_oracle():
    from artifact.coperiod import PsiModel, series_oracle

    ok = all(series_oracle(PsiModel(d, n_max=63), 20) for d in (3, 1))
    record(2, ok, "psi_series(N=20) equals the expansion of the closed form, d=3 and d=1")


def test_criterion_3_petersson():
    from artifact.chars import compile_for
    from artifact.symrat import SymPoly, atom
    from artifact.whittaker import spherical_pair, whittaker_inner

    N, ok = 30, True
    for d in (3, 1):
        for sign in (1, -1):
            W, Wv = spherical_pair(sign, d, 3 * N + 3)
            r = whittaker_inner(W, Wv, N, d, compile_for(d))
            ok &= r.num == sum((atom("Q", -2 * k) for k in range(N + 1)), SymPoly())
    record(3, ok, "inner product = 1/(1-Q^-2) up to Q^-2N, N=30")


def test_criterion_4_eisenstein():
    from artifact.coperiod import eisenstein_factor

    ok = all(eisenstein_factor(d)["identity"] for d in (3, 1))
    record(4, ok, "zeta(1+s)zeta(2+3s)/zeta(2+2s) exactly in X")


def test_criterion_5_cocycle():
    from artifact.cover import (CocycleParams, cocycle_sweep_batch, splitting_sweep,
                                unipotent_sweep)
    from artifact.padic import PrimeContext

    fails = 0
    for c in (0, 1, 2):
        P = CocycleParams(PrimeContext(7, 6), c)
        fails += cocycle_sweep_batch(P, 10000, 0)["failures"]
        fails += splitting_sweep(P, 10000, 0)["failures"]
        fails += unipotent_sweep(P, 10000, 0)["failures"]
    record(5, fails == 0, f"{fails} failures over 3 x 3 x 10^4 samples")


def test_criterion_6_hilbert():
    from artifact.padic import PrimeContext, hilbert_axiom_sweep

    fails = sum(r["failures"] for q in (7, 13, 19)
                for r in hilbert_axiom_sweep(PrimeContext(q), 1000, 0).values())
    record(6, fails == 0, f"{fails} failures, 5 axioms x 10^3 samples x 3 primes")


def test_criterion_7_gauss():
    from artifact.padic import PrimeContext
    from artifact.symrat import SymPoly, reduce_gauss
    from artifact.whittaker import gauss_sum_numeric, gauss_values

    ok = True
    for q in (7, 13, 19):
        ctx = PrimeContext(q)
        ok &= abs(gauss_sum_numeric(ctx, 0) + 1) < 1e-12
        v = gauss_values(ctx)
        for i in (1, 2):
            ok &= abs(abs(gauss_sum_numeric(ctx, i)) ** 2 - q) < 1e-9
            sym = reduce_gauss(SymPoly.atom(f"G{i}") * SymPoly.atom(f"Gb{i}"))
            ok &= abs(sym.evaluate({"Q": math.sqrt(q)}) - v[f"G{i}"] * v[f"Gb{i}"]) < 1e-9
    record(7, ok, "g0 = -1, |g_i|^2 = q, G_i Gb_i = Q^2 numerically")


def test_criterion_8_ktypes():
    from artifact.ktypes import ktype_report, level_consistency

    t = time.perf_counter()
    rep = ktype_report(7, 3)
    ok = rep["ok"] and level_consistency(4)
    elapsed = time.perf_counter() - t
    record(8, ok and elapsed < 60, f"{len(rep['cases'])} cases, {len(rep['mismatches'])} "
           f"mismatches, {elapsed:.1f}s")


@pytest.mark.xfail(strict=True, reason="the displayed archimedean identity is off by the "
                   "constant 4 pi^2 / 27 (see notes/decisions.md)")
def test_criterion_9_arch():
    from artifact.arch import arch_identity_check, gamma_mult_sweep

    gamma_ok = max(r for _, r in gamma_mult_sweep(20, 0)) < 1e-9
    res = [arch_identity_check(t, l) for t, l in ((0, 0), (0.1, 2), (-0.05, 1))]
    record(9, gamma_ok and max(res) < 1e-8,
           f"Gamma multiplication ok={gamma_ok}; identity residual {max(res):.4f}")


def test_criterion_10_reproducible():
    digests = []
    for _ in range(2):
        out = subprocess.run([sys.executable, "-m", "artifact.cli", "verify", "all", "--seed", "7"],
                             capture_output=True)
        digests.append(hashlib.sha256(out.stdout).hexdigest())
    record(10, digests[0] == digests[1] and out.stdout.startswith(b"{"),
           f"sha256 {digests[0][:16]}")
