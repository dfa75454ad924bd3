import math

import pytest
from hypothesis import given, strategies as st

from artifact.arch import (CORRECTED_CONSTANT, ArchChar, PoleError, arch_identity_check,
                           arch_identity_corrected, arch_ratio, gamma_mult_check,
                           gamma_mult_sweep, l_arch, zeta_C)


def test_l_arch_examples():
    assert abs(zeta_C(1) - 1 / math.pi) < 1e-15
    assert abs(zeta_C(0.5) - math.sqrt(2)) < 1e-14
    assert abs(zeta_C(2) - 1 / (2 * math.pi**2)) < 1e-15
    assert abs(l_arch(1, ArchChar(0.25, 3)) - zeta_C(2.75)) < 1e-15
    with pytest.raises(PoleError):
        l_arch(-1, ArchChar(0, 0))


def test_gamma_multiplication():
    assert gamma_mult_check(1 / 3) < 1e-12
    assert gamma_mult_check(0.37) < 1e-10
    assert max(r for _, r in gamma_mult_sweep(20, 0)) < 1e-9


@pytest.mark.parametrize("t,l", [(0.0, 0), (0.1, 2), (-0.05, 1)])
def test_displayed_identity_is_off_by_constant(t, l):
    # the displayed identity holds only after replacing (2 pi)^2 by 3^3
    assert abs(arch_ratio(t, l) - 4 * math.pi**2 / 27) < 1e-12
    assert abs(arch_identity_check(t, l) - (CORRECTED_CONSTANT - 1)) < 1e-12
    assert arch_identity_corrected(t, l) < 1e-12


@given(st.floats(-0.16, 0.16), st.integers(-6, 6))
def test_corrected_identity_and_symmetry(t, l):
    assert arch_identity_corrected(t, l) < 1e-10
    assert abs(arch_identity_check(t, l) - arch_identity_check(t, -l)) < 1e-12


def test_t_range():
    with pytest.raises(ValueError):
        arch_identity_check(0.2, 0)
