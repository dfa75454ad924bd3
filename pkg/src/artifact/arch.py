"""Complex-place L-factors and the Gamma-function identity behind them."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as _gamma


@dataclass(frozen=True)
class ArchChar:
    """phi = (t, l): r e^(i theta) -> r^(2t) e^(i l theta)."""

    t: float
    l: int

    def __mul__(self, other: "ArchChar") -> "ArchChar":
        return ArchChar(self.t + other.t, self.l + other.l)

    def inverse(self) -> "ArchChar":
        return ArchChar(-self.t, -self.l)


class PoleError(ValueError):
    pass


def gamma(z: complex) -> complex:
    if isinstance(z, (int, float)) or np.isreal(z):
        x = float(np.real(z))
        if x <= 0 and x == math.floor(x):
            raise PoleError(f"Gamma has a pole at {x}")
        return float(_gamma(x))
    return complex(_gamma(complex(z)))


def l_arch(s: complex, phi: ArchChar = ArchChar(0.0, 0)) -> complex:
    """2 (2 pi)^-(s + t + |l|/2) Gamma(s + t + |l|/2)."""
    z = s + phi.t + abs(phi.l) / 2
    return 2 * (2 * math.pi) ** (-z) * gamma(z)


def zeta_C(s: complex) -> complex:
    return l_arch(s)


def gamma_mult_check(z: float) -> float:
    """Relative residual of Gamma(z)Gamma(z+1/3)Gamma(z+2/3) = 2 pi 3^(1/2-3z) Gamma(3z)."""
    lhs = gamma(z) * gamma(z + 1 / 3) * gamma(z + 2 / 3)
    rhs = 2 * math.pi * 3 ** (0.5 - 3 * z) * gamma(3 * z)
    return abs(lhs - rhs) / abs(rhs)


def gamma_mult_sweep(n: int = 20, seed: int = 0) -> list[tuple[float, float]]:
    rng = np.random.default_rng(seed)
    return [(float(z), gamma_mult_check(float(z))) for z in rng.uniform(0.1, 2.0, n)]


# the three factor lists -----------------------------------------------------------

def l_ad_sigma(t: float, l: int) -> complex:
    """L(1, sigma, ad) for theta = ((t, l), (-t, -l)): characters theta1/theta2, 1, theta2/theta1."""
    th = ArchChar(2 * t, 2 * l)
    return zeta_C(1) * l_arch(1, th) * l_arch(1, th.inverse())


def l_ad_exceptional() -> complex:
    """L(1, sigma_+-, ad) = zeta_C(1) zeta_C(4/3) zeta_C(2/3)."""
    return zeta_C(1) * zeta_C(4 / 3) * zeta_C(2 / 3)


def l_sym3_half(t: float, l: int) -> complex:
    a = abs(l) / 2
    return (zeta_C(0.5 + 3 * t + 3 * a) * zeta_C(0.5 - 3 * t + 3 * a)
            * zeta_C(0.5 + t + a) * zeta_C(0.5 - t + a))


def l_triple_half(t: float, l: int) -> complex:
    a = abs(l) / 2
    out = 1.0
    for sg in (1, -1):
        out *= zeta_C(5 / 6 + sg * t + a) * zeta_C(1 / 6 + sg * t + a) * zeta_C(0.5 + sg * t + a) ** 2
    return out


def arch_sides(t: float, l: int) -> tuple[complex, complex]:
    """Both sides of the displayed identity, assembled from l_arch."""
    lad = l_ad_sigma(t, l)
    lhs = (2 * math.pi) ** 2 * l_sym3_half(t, l) / lad
    rhs = (3 ** (3 * abs(l)) * zeta_C(2) ** 2 * l_triple_half(t, l)
           / (lad * l_ad_exceptional() ** 2))
    return lhs, rhs


def arch_identity_check(t: float, l: int) -> float:
    """Relative residual |lhs - rhs| / |rhs| of the identity as displayed."""
    if abs(t) >= 1 / 6:
        raise ValueError("need |t| < 1/6")
    lhs, rhs = arch_sides(t, l)
    return abs(lhs - rhs) / abs(rhs)


def arch_ratio(t: float, l: int) -> float:
    """lhs / rhs; constant in (t, l) and equal to 4 pi^2 / 27 rather than 1."""
    lhs, rhs = arch_sides(t, l)
    return float(np.real(lhs / rhs))


CORRECTED_CONSTANT = 4 * math.pi**2 / 27


def arch_identity_corrected(t: float, l: int) -> float:
    """Residual after replacing (2 pi)^2 on the left by 3^3."""
    lhs, rhs = arch_sides(t, l)
    return abs(lhs / CORRECTED_CONSTANT - rhs) / abs(rhs)
