"""The lemniscatic Weierstrass function (invariants g2 = 1, g3 = 0).

Arguments are first reduced modulo the square lattice 2*omega*Z + 2i*omega*Z
into the cell [-omega, omega]^2 and the Laurent series

    wp(z) = z**-2 + sum_{k>=2} c_k z**(2k-2)

is summed there. Because wp(iz) = -wp(z), only even k survive, so the
series is a stride-4 sum in z. The nearest other lattice points sit at
distance 2*omega, beyond the cell's corner distance omega*sqrt(2), which
bounds the lane ratio by 1/4.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .core_numerics import eval_series, lemniscate_half_period
from .errors import DegenerateFormulaError, DomainError, PoleProximity

__all__ = [
    "POLE_RADIUS",
    "WeierstrassContext",
    "LatticeReduction",
    "make_context",
    "default_context",
    "reduce",
    "nearest_lattice_point",
    "wp",
    "wp_prime",
    "laurent_parts",
    "wp_add",
    "wp_duplicate",
    "wp_translate_half",
]

POLE_RADIUS = 1e-8
DEGENERATE_TOL = 1e-10
DEFAULT_LAURENT_ORDER = 120


@dataclass(frozen=True)
class WeierstrassContext:
    omega: float
    g2: float
    g3: float
    laurent: tuple
    laurent_order: int

    @property
    def periods(self) -> tuple:
        return (2 * self.omega, 2j * self.omega)

    @property
    def wp_lanes(self) -> tuple:
        # c_k for k = 2, 4, 6, ... multiplies z**(4j + 2)
        return self.laurent[2::2]

    @property
    def wp_prime_lanes(self) -> tuple:
        return tuple((2 * k - 2) * self.laurent[k] for k in range(2, self.laurent_order + 1, 2))


@dataclass(frozen=True)
class LatticeReduction:
    z0: complex
    m: int
    n: int


def _laurent_coefficients(order: int, g2: float, g3: float) -> tuple:
    c = [0.0] * (order + 1)
    c[2] = g2 / 20.0
    if order >= 3:
        c[3] = g3 / 28.0
    for k in range(4, order + 1):
        c[k] = 3.0 / ((2 * k + 1) * (k - 3)) * math.fsum(c[m] * c[k - m] for m in range(2, k - 1))
    return tuple(c)


def make_context(laurent_order: int = DEFAULT_LAURENT_ORDER) -> WeierstrassContext:
    if laurent_order < 8:
        raise DomainError("laurent_order must be at least 8")
    return WeierstrassContext(
        omega=lemniscate_half_period(),
        g2=1.0,
        g3=0.0,
        laurent=_laurent_coefficients(laurent_order, 1.0, 0.0),
        laurent_order=laurent_order,
    )


@lru_cache(maxsize=4)
def default_context() -> WeierstrassContext:
    return make_context()


def _round_half_toward_zero(x: float) -> int:
    r = math.ceil(abs(x) - 0.5)
    return int(math.copysign(r, x)) if r else 0


def reduce(ctx: WeierstrassContext, z) -> LatticeReduction:
    z = complex(z)
    period = 2 * ctx.omega
    m = _round_half_toward_zero(z.real / period)
    n = _round_half_toward_zero(z.imag / period)
    z0 = complex(z.real - period * m, z.imag - period * n)
    return LatticeReduction(z0=z0, m=m, n=n)


def nearest_lattice_point(ctx: WeierstrassContext, z) -> complex:
    red = reduce(ctx, z)
    return complex(2 * ctx.omega * red.m, 2 * ctx.omega * red.n)


def _reduced_off_lattice(ctx, z) -> complex:
    red = reduce(ctx, z)
    if abs(red.z0) < POLE_RADIUS:
        nearest = complex(2 * ctx.omega * red.m, 2 * ctx.omega * red.n)
        raise PoleProximity(f"wp has a pole at lattice point {nearest}", point=complex(z), nearest=nearest)
    return red.z0


def wp(ctx: WeierstrassContext, z) -> complex:
    z0 = _reduced_off_lattice(ctx, z)
    return z0**-2 + eval_series(ctx.wp_lanes, 4, 2, z0)


def wp_prime(ctx: WeierstrassContext, z) -> complex:
    z0 = _reduced_off_lattice(ctx, z)
    return -2 * z0**-3 + eval_series(ctx.wp_prime_lanes, 4, 1, z0)


def laurent_parts(ctx: WeierstrassContext, z0: complex) -> tuple:
    """Pole-free factors ``(z0**2 * wp(z0), z0**3 * wp'(z0))`` for a reduced ``z0``.

    Both are entire in the cell and equal ``(1, -2)`` at ``z0 = 0``.
    """
    w = z0**4
    u = 1 + w * eval_series(ctx.wp_lanes, 4, 0, z0)
    v = -2 + w * eval_series(ctx.wp_prime_lanes, 4, 0, z0)
    return u, v


def wp_add(ctx: WeierstrassContext, z, w) -> complex:
    """wp(z + w) from the addition formula."""
    pz, pw = wp(ctx, z), wp(ctx, w)
    if abs(pz - pw) < DEGENERATE_TOL:
        raise DegenerateFormulaError(f"wp({z}) == wp({w}); use wp_duplicate or perturb")
    _reduced_off_lattice(ctx, complex(z) + complex(w))
    q = (wp_prime(ctx, z) - wp_prime(ctx, w)) / (pz - pw)
    return 0.25 * q * q - pz - pw


def wp_duplicate(ctx: WeierstrassContext, z) -> complex:
    """wp(2z) = (wp(z)^2 + 1/4)^2 / wp'(z)^2."""
    dp = wp_prime(ctx, z)
    if abs(dp) < DEGENERATE_TOL:
        raise DegenerateFormulaError(f"wp'({z}) vanishes; 2z is a lattice point")
    _reduced_off_lattice(ctx, 2 * complex(z))
    p = wp(ctx, z)
    num = p * p + 0.25
    return num * num / (dp * dp)


def wp_translate_half(ctx: WeierstrassContext, z) -> complex:
    """wp(z - omega) = (wp(z) + 1/2) / (2 * (wp(z) - 1/2))."""
    p = wp(ctx, z)
    if abs(p - 0.5) < DEGENERATE_TOL:
        nearest = nearest_lattice_point(ctx, complex(z) - ctx.omega) + ctx.omega
        raise PoleProximity(f"wp(z - omega) has a pole: z is near {nearest}", point=complex(z), nearest=nearest)
    return 0.5 * (p + 0.5) / (p - 0.5)
