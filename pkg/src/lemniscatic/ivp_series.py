"""Taylor series of the solution pair of s' = c^3, c' = -s^3, s(0) = 0, c(0) = 1.

Only every fourth coefficient is nonzero: s(z) = z * A(z^4) and
c(z) = B(z^4). The recurrence therefore runs on the two "lanes"
``alpha[j] = a[4j+1]`` and ``beta[j] = b[4j]``:

    (4j + 1) * alpha[j] = [w^j] B(w)^3
    4j * beta[j]        = -[w^(j-1)] A(w)^3

with the cubes built incrementally as (x*x)*x Cauchy products.

The nearest singularities of s and c are the branch points
(+-1 +- i) * omega / 2 at distance omega / sqrt(2); the coefficients decay at
that rate. This radius is inferred from the branch-point geometry and is
not proven here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .core_numerics import eval_series, lemniscate_half_period
from .errors import AccuracyError, BranchPointProximity, DomainError

__all__ = [
    "DEFAULT_ORDER",
    "TaylorPair",
    "PathPolyline",
    "taylor_coefficients",
    "default_pair",
    "eval_s",
    "eval_c",
    "eval_s_prime",
    "truncation_tail",
    "required_order",
    "guard_radius",
    "radius_constants",
    "rk_continue",
    "branch_points_near",
]

DEFAULT_ORDER = 128
GUARD_FRACTION = 0.95
TAIL_TOL = 1e-13


@dataclass(frozen=True)
class TaylorPair:
    """Dense Taylor coefficients ``a`` (of s) and ``b`` (of c), indices 0..order."""

    a: tuple
    b: tuple
    order: int

    @property
    def s_lanes(self) -> tuple:
        return self.a[1::4]

    @property
    def c_lanes(self) -> tuple:
        return self.b[0::4]


@dataclass(frozen=True)
class PathPolyline:
    vertices: tuple
    max_step: float = 1e-3

    def __post_init__(self):
        verts = tuple(complex(v) for v in self.vertices)
        if not verts or verts[0] != 0:
            raise DomainError("path must start exactly at 0")
        for p, q in zip(verts, verts[1:]):
            if p == q:
                raise DomainError(f"consecutive path vertices coincide at {p}")
        if not self.max_step > 0:
            raise DomainError("max_step must be positive")
        object.__setattr__(self, "vertices", verts)


def taylor_coefficients(order: int) -> TaylorPair:
    """Coefficients of s and c through z**order."""
    if order < 1:
        raise DomainError("order must be at least 1")
    n_alpha = (order - 1) // 4 + 1  # a[4j+1] with 4j+1 <= order
    n_beta = order // 4 + 1  # b[4j] with 4j <= order
    n = max(n_alpha, n_beta)
    alpha = [0.0] * n
    beta = [0.0] * n
    a2 = [0.0] * n
    a3 = [0.0] * n
    b2 = [0.0] * n
    b3 = [0.0] * n
    for j in range(n):
        if j == 0:
            beta[0] = 1.0
        else:
            beta[j] = -a3[j - 1] / (4 * j)
        b2[j] = math.fsum(beta[i] * beta[j - i] for i in range(j + 1))
        b3[j] = math.fsum(b2[i] * beta[j - i] for i in range(j + 1))
        alpha[j] = b3[j] / (4 * j + 1)
        a2[j] = math.fsum(alpha[i] * alpha[j - i] for i in range(j + 1))
        a3[j] = math.fsum(a2[i] * alpha[j - i] for i in range(j + 1))
    a = [0.0] * (order + 1)
    b = [0.0] * (order + 1)
    for j in range(n_alpha):
        a[4 * j + 1] = alpha[j]
    for j in range(n_beta):
        b[4 * j] = beta[j]
    return TaylorPair(a=tuple(a), b=tuple(b), order=order)


@lru_cache(maxsize=16)
def default_pair(order: int = DEFAULT_ORDER) -> TaylorPair:
    return taylor_coefficients(order)


def guard_radius() -> float:
    return GUARD_FRACTION * lemniscate_half_period() / math.sqrt(2.0)


def truncation_tail(tp: TaylorPair, z) -> float:
    """Heuristic bound on the omitted tail of the s and c series at ``z``.

    Last retained term of each series times rho^4 / (1 - rho^4), where
    rho = |z| / (omega / sqrt 2).
    """
    r = abs(complex(z))
    if r == 0:
        return 0.0
    rho4 = (r / (lemniscate_half_period() / math.sqrt(2.0))) ** 4
    if rho4 >= 1:
        return math.inf
    sa, sc = tp.s_lanes, tp.c_lanes
    log_r = math.log(r)
    logs = [
        math.log(abs(coef)) + power * log_r
        for coef, power in ((sa[-1], 4 * (len(sa) - 1) + 1), (sc[-1], 4 * (len(sc) - 1)))
        if coef != 0
    ]
    if not logs:
        return 0.0
    return math.exp(min(max(logs), 700.0)) * rho4 / (1 - rho4)


def required_order(radius: float, tail_tol: float = TAIL_TOL) -> int:
    """Smallest multiple of 64 (at least DEFAULT_ORDER) meeting ``tail_tol`` at ``radius``."""
    if radius > guard_radius():
        raise DomainError(f"|z| = {radius:.6g} exceeds the series guard radius {guard_radius():.6g}")
    order = DEFAULT_ORDER
    while truncation_tail(default_pair(order), radius) > tail_tol:
        order += 64
        if order > 4096:
            raise AccuracyError(f"no series order up to 4096 reaches tail {tail_tol} at |z| = {radius}")
    return order


def _check(tp: TaylorPair, z: complex, tail_tol):
    bound = guard_radius()
    if abs(z) > bound:
        raise DomainError(f"|z| = {abs(z):.6g} exceeds the series guard radius {bound:.6g}")
    if tail_tol is not None:
        tail = truncation_tail(tp, z)
        if tail > tail_tol:
            raise AccuracyError(
                f"order {tp.order} leaves an estimated tail {tail:.3g} at |z| = {abs(z):.6g}",
                error=tail,
            )


def eval_s(tp: TaylorPair, z, tail_tol: float | None = TAIL_TOL) -> complex:
    """Truncated Taylor sum for s. Pass ``tail_tol=None`` to skip the tail check."""
    z = complex(z)
    _check(tp, z, tail_tol)
    return eval_series(tp.s_lanes, 4, 1, z)


def eval_c(tp: TaylorPair, z, tail_tol: float | None = TAIL_TOL) -> complex:
    z = complex(z)
    _check(tp, z, tail_tol)
    return eval_series(tp.c_lanes, 4, 0, z)


def eval_s_prime(tp: TaylorPair, z, tail_tol: float | None = TAIL_TOL) -> complex:
    """Termwise derivative of the s series."""
    z = complex(z)
    _check(tp, z, tail_tol)
    lanes = [(4 * j + 1) * x for j, x in enumerate(tp.s_lanes)]
    return eval_series(lanes, 4, 0, z)


def radius_constants() -> dict:
    omega = lemniscate_half_period()
    return {
        "picard_radius": 4.0 / 27.0,
        "scalar_radius": (4.0 / 27.0) ** 0.25,
        "true_radius": omega / math.sqrt(2.0),
    }


def branch_points_near(lo: complex, hi: complex, margin: float) -> list:
    """Branch points of s, c inside the box spanned by ``lo``, ``hi`` grown by ``margin``."""
    omega = lemniscate_half_period()
    period = 2 * omega
    x0, x1 = sorted((lo.real, hi.real))
    y0, y1 = sorted((lo.imag, hi.imag))
    x0, x1, y0, y1 = x0 - margin, x1 + margin, y0 - margin, y1 + margin
    out = []
    for bx in (-0.5 * omega, 0.5 * omega):
        for by in (-0.5 * omega, 0.5 * omega):
            for m in range(math.floor((x0 - bx) / period), math.ceil((x1 - bx) / period) + 1):
                for n in range(math.floor((y0 - by) / period), math.ceil((y1 - by) / period) + 1):
                    p = complex(bx + m * period, by + n * period)
                    if x0 <= p.real <= x1 and y0 <= p.imag <= y1:
                        out.append(p)
    return out


def _segment_distance(p: complex, z0: complex, z1: complex) -> float:
    d = z1 - z0
    t = ((p - z0) * d.conjugate()).real / abs(d) ** 2
    t = min(1.0, max(0.0, t))
    return abs(p - (z0 + t * d))


def _rhs(s, c):
    return c * c * c, -(s * s * s)


def rk_continue(path: PathPolyline) -> list:
    """Integrate the system along ``path`` with fixed-step classical RK4.

    Returns ``(z, s, c)`` at every vertex. Raises BranchPointProximity if a
    segment passes within ``10 * max_step`` of a branch point.
    """
    h_max = path.max_step
    exclusion = 10 * h_max
    verts = path.vertices
    for z0, z1 in zip(verts, verts[1:]):
        for p in branch_points_near(z0, z1, exclusion):
            if _segment_distance(p, z0, z1) < exclusion:
                raise BranchPointProximity(
                    f"path segment {z0}->{z1} passes within {exclusion:g} of branch point {p}",
                    point=z1,
                    nearest=p,
                )
    s, c = 0j, 1 + 0j
    out = [(verts[0], s, c)]
    for z0, z1 in zip(verts, verts[1:]):
        steps = max(1, math.ceil(abs(z1 - z0) / h_max))
        dz = (z1 - z0) / steps
        for _ in range(steps):
            k1s, k1c = _rhs(s, c)
            k2s, k2c = _rhs(s + 0.5 * dz * k1s, c + 0.5 * dz * k1c)
            k3s, k3c = _rhs(s + 0.5 * dz * k2s, c + 0.5 * dz * k2c)
            k4s, k4c = _rhs(s + dz * k3s, c + dz * k3c)
            s = s + dz * (k1s + 2 * k2s + 2 * k3s + k4s) / 6
            c = c + dz * (k1c + 2 * k2c + 2 * k3c + k4c) / 6
        out.append((z1, s, c))
    return out

