import numpy as np
import pytest

from artifact import kernels
from artifact.cover import (CocycleParams, batch_to_mat2, cocycle_defect, cocycle_sweep,
                            cocycle_sweep_batch, cover_inv, cover_mul, kappa, kubota_sigma, mat,
                            random_K, random_triples_batch, splitting_sweep, unipotent_sweep)
from artifact.padic import PrecisionError, PrimeContext

CTX = PrimeContext(7)


@pytest.mark.parametrize("c,d", [(0, 3), (1, 3), (2, 1)])
def test_d(c, d):
    assert CocycleParams(CTX, c).d == d


def test_bad_c():
    with pytest.raises(ValueError):
        CocycleParams(CTX, 3)


@pytest.mark.parametrize("c", [0, 1, 2])
def test_cocycle_object(c):
    r = cocycle_sweep(CocycleParams(CTX, c), 300, c)
    assert r["failures"] == 0


@pytest.mark.parametrize("c", [0, 1, 2])
def test_cocycle_batch(c):
    r = cocycle_sweep_batch(CocycleParams(CTX, c), 10000, 11)
    assert r["failures"] == 0 and r["samples"] == 10000


def test_batch_matches_object_route():
    P = CocycleParams(CTX, 1)
    T = random_triples_batch(P, 200, 3)
    out = kernels.cocycle_defects(T, 1, 7, 6, kernels.cubic_class_table(7, CTX.gen))
    for t, o in zip(T, out):
        ms = [batch_to_mat2(CTX, A) for A in t]
        try:
            ob = int(cocycle_defect(P, *ms))
        except PrecisionError:
            ob = -1
        assert ob == o


def test_sigma_is_not_identically_zero():
    P = CocycleParams(CTX, 0)
    w = mat(CTX, 0, 1, 1, 0)
    g = mat(CTX, 7, 0, 0, 1)
    vals = {int(kubota_sigma(P, mat(CTX, 1, 0, x, 1), mat(CTX, 3, 0, 0, 1))) for x in (7, 14, 21)}
    vals |= {int(kubota_sigma(P, w, g)), int(kubota_sigma(P, g, w))}
    assert vals != {0}


@pytest.mark.parametrize("c", [0, 2])
def test_splitting(c):
    P = CocycleParams(CTX, c)
    assert splitting_sweep(P, 400, 2)["failures"] == 0
    assert unipotent_sweep(P, 400, 2)["failures"] == 0


def test_inverse_product_needs_exact_zero():
    # x * x^-1 cancels every stored digit of the off-diagonal entries
    P = CocycleParams(CTX, 1)
    rng = np.random.default_rng(0)
    x = kappa(P, random_K(rng, CTX, zero_prob=0.0))
    with pytest.raises(PrecisionError):
        cover_mul(P, x, cover_inv(P, x))
