"""Elliptic closed forms for s^2, c^2 and s*c, plus sl, sd and square-root branches.

With wp the lemniscatic Weierstrass function:

    S = s^2 = wp / (wp^2 + 1/4)
    C = c^2 = (wp^2 - 1/4) / (wp^2 + 1/4)
    P = s*c = -wp' / (2 * (wp^2 + 1/4))

All three are elliptic with simple poles exactly at (+-1 +- i) * omega / 2
modulo the periods 2*omega, 2i*omega. At lattice points of wp the quotients
have removable singularities; near them the module evaluates the forms
obtained by multiplying through by a power of z, which are pole-free.

=====  ======  =========================================
tag    parity  poles
=====  ======  =========================================
S      even    (+-1 +- i) omega/2 + lattice
C      even    (+-1 +- i) omega/2 + lattice
P      odd     (+-1 +- i) omega/2 + lattice
sl     odd     u/sqrt(2) in the pole set of P
sd     odd     u/2 in the pole set of P
=====  ======  =========================================
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

from .core_numerics import agm
from .errors import AccuracyError, DomainError, PoleProximity
from .weierstrass import (
    POLE_RADIUS,
    WeierstrassContext,
    laurent_parts,
    reduce,
    wp,
    wp_prime,
)

__all__ = [
    "EllipticFn",
    "PoleSet",
    "S_eval",
    "C_eval",
    "P_eval",
    "sl_eval",
    "sd_eval",
    "jacobi_sd_agm",
    "jacobi_sn_cn_dn_real",
    "pole_set",
    "base_poles",
    "nearest_pole",
    "s_branch",
    "c_branch",
    "fit_pole_order",
]

# Below this distance from a wp lattice point the rearranged forms are used.
LATTICE_SWITCH = 0.05
BRANCH_FRACTION = 0.98
BRANCH_STEP = 0.02
BRANCH_START = 0.01


class EllipticFn(str, Enum):
    S = "S"
    C = "C"
    P = "P"
    sl = "sl"
    sd = "sd"


@dataclass(frozen=True)
class PoleSet:
    base: tuple
    periods: tuple


def base_poles(ctx: WeierstrassContext) -> tuple:
    h = 0.5 * ctx.omega
    return (complex(h, h), complex(-h, h), complex(-h, -h), complex(h, -h))


def nearest_pole(ctx: WeierstrassContext, z) -> complex:
    """Nearest pole of S, C, P to ``z``."""
    red = reduce(ctx, z)
    shift = complex(2 * ctx.omega * red.m, 2 * ctx.omega * red.n)
    p = min(base_poles(ctx), key=lambda q: abs(red.z0 - q))
    return p + shift


def _reduced_parts(ctx, z):
    """Reduce ``z`` into the cell, raising PoleProximity on the pole set."""
    red = reduce(ctx, z)
    z0 = red.z0
    p = min(base_poles(ctx), key=lambda q: abs(z0 - q))
    if abs(z0 - p) < POLE_RADIUS:
        nearest = p + complex(2 * ctx.omega * red.m, 2 * ctx.omega * red.n)
        raise PoleProximity(f"pole of S, C, P at {nearest}", point=complex(z), nearest=nearest)
    return z0


def S_eval(ctx: WeierstrassContext, z) -> complex:
    z0 = _reduced_parts(ctx, z)
    if abs(z0) < LATTICE_SWITCH:
        u, _ = laurent_parts(ctx, z0)
        z2 = z0 * z0
        return z2 * u / (u * u + 0.25 * z2 * z2)
    p = wp(ctx, z0)
    return p / (p * p + 0.25)


def C_eval(ctx: WeierstrassContext, z) -> complex:
    z0 = _reduced_parts(ctx, z)
    if abs(z0) < LATTICE_SWITCH:
        u, _ = laurent_parts(ctx, z0)
        q = 0.25 * (z0 * z0) ** 2
        uu = u * u
        return (uu - q) / (uu + q)
    p2 = wp(ctx, z0) ** 2
    return (p2 - 0.25) / (p2 + 0.25)


def P_eval(ctx: WeierstrassContext, z) -> complex:
    z0 = _reduced_parts(ctx, z)
    if abs(z0) < LATTICE_SWITCH:
        u, v = laurent_parts(ctx, z0)
        z2 = z0 * z0
        return -0.5 * z0 * v / (u * u + 0.25 * z2 * z2)
    p = wp(ctx, z0)
    return -0.5 * wp_prime(ctx, z0) / (p * p + 0.25)


def sl_eval(ctx: WeierstrassContext, u) -> complex:
    """Lemniscatic sine: sl(u) = sqrt(2) * P(u / sqrt(2))."""
    r2 = math.sqrt(2.0)
    return r2 * P_eval(ctx, complex(u) / r2)


def sd_eval(ctx: WeierstrassContext, u) -> complex:
    """Glaisher quotient sn/dn at modulus 1/sqrt(2): sd(u) = 2 * P(u / 2)."""
    return 2 * P_eval(ctx, complex(u) / 2)


def jacobi_sn_cn_dn_real(x: float, k: float) -> tuple:
    """sn, cn, dn at a real argument by descending Landen (AGM) recursion."""
    kp = math.sqrt((1 - k) * (1 + k))
    if kp == 0:
        raise DomainError("modulus k = 1 is not supported")
    a, b, c = [1.0], [kp], [k]
    while abs(c[-1]) > 4 * math.ulp(a[-1]):
        if len(a) > 40:
            raise AccuracyError("Landen recursion did not converge")
        a.append(0.5 * (a[-1] + b[-1]))
        b.append(math.sqrt(a[-2] * b[-1]))
        c.append(0.5 * (a[-2] - b[-2]))
    n = len(a) - 1
    phi = 2.0**n * a[n] * x
    for j in range(n, 0, -1):
        phi = 0.5 * (phi + math.asin(c[j] / a[j] * math.sin(phi)))
    sn = math.sin(phi)
    cn = math.cos(phi)
    dn = math.sqrt(1 - k * k * sn * sn)
    return sn, cn, dn


def jacobi_sd_agm(u, k: float = 1 / math.sqrt(2.0)) -> complex:
    """sn(u)/dn(u) for complex ``u``, independent of any wp machinery.

    Real and imaginary parts are handled separately (the imaginary part at the
    complementary modulus) and recombined with the Jacobi addition formulas.
    """
    u = complex(u)
    if not 0 < k < 1:
        raise DomainError("modulus must lie in (0, 1)")
    kp = math.sqrt((1 - k) * (1 + k))
    s, c, d = jacobi_sn_cn_dn_real(u.real, k)
    s1, c1, d1 = jacobi_sn_cn_dn_real(u.imag, kp)
    num = complex(s * d1, c * d * s1 * c1)
    den = complex(d * c1 * d1, -k * k * s * c * s1)
    if abs(den) < POLE_RADIUS * max(1.0, abs(num)):
        # zeros of dn: (2m + 1) K + (2n + 1) i K'
        big_k = math.pi / (2 * agm(1.0, kp))
        big_kp = math.pi / (2 * agm(1.0, k))
        m = round((u.real / big_k - 1) / 2)
        n = round((u.imag / big_kp - 1) / 2)
        nearest = complex((2 * m + 1) * big_k, (2 * n + 1) * big_kp)
        raise PoleProximity(f"sd has a pole at {nearest}", point=u, nearest=nearest)
    return num / den


def pole_set(ctx: WeierstrassContext, m_range, n_range) -> list:
    """Poles (+-1 +- i) omega/2 + 2 omega m + 2i omega n for m, n in the ranges."""
    period = 2 * ctx.omega
    seen = set()
    out = []
    for m in m_range:
        for n in n_range:
            for p in base_poles(ctx):
                q = complex(p.real + period * m, p.imag + period * n)
                if q not in seen:
                    seen.add(q)
                    out.append(q)
    return out


def fit_pole_order(ctx: WeierstrassContext, pole: complex, offsets=(1e-2, 1e-3, 1e-4), fn=S_eval) -> float:
    """Least-squares slope of -log|fn(pole + d)| against log d."""
    xs = [math.log(d) for d in offsets]
    ys = [math.log(abs(fn(ctx, pole + d))) for d in offsets]
    mx = sum(xs) / len(xs)
    my = sum(ys) / len(ys)
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
    return -slope


def _continue_root(ctx, fn, z: complex, anchor) -> complex:
    """Continue sqrt(fn) along the ray from BRANCH_START * z/|z| to z.

    ``anchor(w)`` gives the value the root should be near at the ray's start.
    """
    r = abs(z)
    limit = BRANCH_FRACTION * ctx.omega / math.sqrt(2.0)
    if r >= limit:
        raise DomainError(f"|z| = {r:.6g} too close to the branch points (limit {limit:.6g})")
    direction = z / r
    t = min(BRANCH_START, r)
    start = z if t == r else t * direction
    root = cmath.sqrt(fn(ctx, start))
    target = anchor(start)
    prev = root if abs(root - target) <= abs(root + target) else -root
    step = BRANCH_STEP
    while t < r:
        h = min(step, r - t)
        w = z if t + h >= r else (t + h) * direction
        root = cmath.sqrt(fn(ctx, w))
        cand = root if abs(root - prev) <= abs(root + prev) else -root
        if 2 * abs(root) < 4 * abs(cand - prev):
            step = 0.5 * h
            if step < 1e-12:
                raise DomainError(f"branch tracking stalled near {w}")
            continue
        prev = cand
        t += h
        step = min(BRANCH_STEP, 2 * step)
    return prev


def s_branch(ctx: WeierstrassContext, z) -> complex:
    """The holomorphic square root of S with s(w) ~ w at 0."""
    z = complex(z)
    if z == 0:
        return 0j
    return _continue_root(ctx, S_eval, z, lambda w: w)


def c_branch(ctx: WeierstrassContext, z) -> complex:
    """The holomorphic square root of C with c(0) = 1."""
    z = complex(z)
    if z == 0:
        return 1 + 0j
    return _continue_root(ctx, C_eval, z, lambda w: 1.0)
