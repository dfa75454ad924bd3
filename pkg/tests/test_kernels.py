import json
import os
import subprocess
import sys

import numpy as np
import pytest

from artifact import kernels
from artifact.padic import PrimeContext, cubic_residue, hilbert3_parts
from artifact.ktypes import act

FINGERPRINT = r"""
import json, numpy as np
from artifact import kernels as K
from artifact.cover import CocycleParams, random_triples_batch
from artifact.padic import PrimeContext
out = {"backend": K.backend()}
cls = K.cubic_class_table(7, 3)
out["cls"] = cls.tolist()
rng = np.random.default_rng(0)
va, vb = rng.integers(-5, 5, 200), rng.integers(-5, 5, 200)
ua, ub = rng.integers(1, 7**6, 200), rng.integers(1, 7**6, 200)
ua, ub = np.where(ua % 7 == 0, 1, ua), np.where(ub % 7 == 0, 1, ub)
out["hilbert"] = K.hilbert_batch(va, ua, vb, ub, 7, cls).tolist()
out["gauss"] = [round(x, 9) for i in range(3) for z in [K.gauss_sum(7, i, cls)] for x in (z.real, z.imag)]
out["act"] = [K.act_on_points(g, 7, m).tolist() for g in [(2, 3, 7, 5), (0, 1, 1, 0), (1, 0, 49, 1)] for m in (1, 2, 3)]
perms = np.array([K.act_on_points(g, 7, 2) for g in [(1, 1, 0, 1), (1, 0, 7, 1), (3, 0, 0, 1)]])
out["orbits"] = K.orbit_labels(perms).tolist()
T = random_triples_batch(CocycleParams(PrimeContext(7), 1), 500, 4)
out["cocycle"] = K.cocycle_defects(T, 1, 7, 6, cls).tolist()
out["triples"] = int(T.sum())
print(json.dumps(out))
"""


def _run(disable: bool) -> dict:
    env = dict(os.environ, ARTIFACT_DISABLE_NUMBA="1" if disable else "0")
    res = subprocess.run([sys.executable, "-c", FINGERPRINT], env=env, capture_output=True,
                         text=True, check=True)
    return json.loads(res.stdout)


def test_backends_agree():
    fast, slow = _run(False), _run(True)
    assert slow["backend"] == "numpy"
    fast.pop("backend")
    slow.pop("backend")
    assert fast == slow


def test_hilbert_batch_matches_scalar():
    ctx = PrimeContext(13)
    cls = kernels.cubic_class_table(13, ctx.gen)
    rng = np.random.default_rng(1)
    va, vb = rng.integers(-3, 4, 100), rng.integers(-3, 4, 100)
    ua, ub = rng.integers(1, 13, 100), rng.integers(1, 13, 100)
    got = kernels.hilbert_batch(va, ua, vb, ub, 13, cls)
    for i in range(100):
        assert got[i] == hilbert3_parts(ctx, int(va[i]), int(ua[i]), int(vb[i]), int(ub[i]))


def test_class_table():
    ctx = PrimeContext(19)
    cls = kernels.cubic_class_table(19, ctx.gen)
    assert all(cls[x] == cubic_residue(ctx, x) for x in range(1, 19))


@pytest.mark.parametrize("m", [1, 2, 3])
def test_act_matches_object_action(m):
    for g in [(2, 3, 7, 5), (1, 7, 0, 1), (0, 1, 1, 0), (5, 1, 14, 3)]:
        perm = kernels.act_on_points(g, 7, m)
        assert all(perm[i] == act(g, i, 7, m) for i in range(len(perm)))
        assert sorted(perm.tolist()) == list(range(len(perm)))


def test_orbit_labels_small():
    perms = np.array([[1, 0, 2, 3], [0, 1, 3, 2]])
    assert kernels.orbit_labels(perms).tolist() == [0, 0, 2, 2]
