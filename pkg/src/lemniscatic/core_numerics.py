"""Scalar building blocks: tolerances, series evaluation, quadrature and AGM.

Everything here works in IEEE double precision and is a pure function of
its inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .errors import AccuracyError, ConsistencyError, DomainError

__all__ = [
    "Tolerance",
    "agm",
    "integrate",
    "eval_series",
    "lemniscate_half_period",
    "half_period_from_agm",
]

# 10-point rule; each panel is compared against its two halves.
_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(10)
_GL_NODES = tuple(float(x) for x in _GL_NODES)
_GL_WEIGHTS = tuple(float(w) for w in _GL_WEIGHTS)

_AGM_MAX_ITER = 64


@dataclass(frozen=True)
class Tolerance:
    """Absolute/relative error target. At least one must be positive."""

    abs_tol: float = 0.0
    rel_tol: float = 0.0

    def __post_init__(self):
        if self.abs_tol < 0 or self.rel_tol < 0:
            raise DomainError("tolerances must be non-negative")
        if not (self.abs_tol > 0 or self.rel_tol > 0):
            raise DomainError("at least one of abs_tol, rel_tol must be positive")

    def allowed(self, magnitude: float) -> float:
        return max(self.abs_tol, self.rel_tol * abs(magnitude))


def agm(a: float, b: float) -> float:
    """Arithmetic-geometric mean of two positive reals.

    The first step is symmetric in floating point (``a + b`` and ``a * b``
    commute exactly), so ``agm(a, b) == agm(b, a)`` bit for bit.
    """
    a = float(a)
    b = float(b)
    if not (a > 0 and b > 0) or math.isinf(a) or math.isinf(b):
        raise DomainError(f"agm requires finite positive arguments, got {a!r}, {b!r}")
    for _ in range(_AGM_MAX_ITER):
        if abs(a - b) <= 4 * math.ulp(max(a, b)):
            break
        a, b = 0.5 * (a + b), math.sqrt(a * b)
    else:
        raise AccuracyError("agm iteration did not converge", estimate=a, error=abs(a - b))
    return 0.5 * (a + b)


def _gauss_panel(f, lo, hi):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    return half * math.fsum(w * f(mid + half * x) for x, w in zip(_GL_NODES, _GL_WEIGHTS))


def integrate(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: Tolerance = Tolerance(abs_tol=1e-14),
    max_panels: int = 4000,
) -> float:
    """Adaptive Gauss-Legendre quadrature of ``f`` over ``[a, b]``.

    A panel is accepted once the 10-point rule on the panel and the sum of the
    rules on its halves agree within the panel's share of the tolerance;
    otherwise both halves are refined. Panels are processed depth-first in a
    fixed order, so the result is deterministic.

    Raises AccuracyError carrying the achieved estimate when more than
    ``max_panels`` panels would be needed.
    """
    a = float(a)
    b = float(b)
    if not a < b:
        raise DomainError(f"integrate requires a < b, got [{a}, {b}]")
    length = b - a
    whole = _gauss_panel(f, a, b)
    allowed_total = tol.allowed(whole)
    accepted = []
    err_total = 0.0
    stack = [(a, b, whole)]
    panels = 1
    while stack:
        lo, hi, coarse = stack.pop()
        mid = 0.5 * (lo + hi)
        left = _gauss_panel(f, lo, mid)
        right = _gauss_panel(f, mid, hi)
        err = abs(left + right - coarse)
        share = allowed_total * (hi - lo) / length
        if err <= share or mid in (lo, hi):
            accepted.append(left + right)
            err_total += err
            continue
        panels += 2
        if panels > max_panels:
            estimate = math.fsum(accepted) + left + right + sum(p[2] for p in stack)
            raise AccuracyError(
                f"quadrature did not converge within {max_panels} panels",
                estimate=estimate,
                error=err_total + err,
            )
        stack.append((mid, hi, right))
        stack.append((lo, mid, left))
    return math.fsum(accepted)


def eval_series(coeffs: Sequence[float], stride: int, offset: int, z) -> complex:
    """Evaluate ``sum(coeffs[k] * z**(offset + k*stride))`` by Horner's rule.

    The highest index is folded in first so results are bit-reproducible.
    Domain policing (convergence, ``z == 0`` with negative offset) is left to
    the caller.
    """
    z = complex(z)
    w = z**stride
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * w + c
    if offset == 0:
        return acc
    return acc * z**offset


def half_period_from_agm() -> float:
    """pi / (sqrt(2) * agm(1, sqrt(2))), the AGM route to the real half-period."""
    return math.pi / (math.sqrt(2.0) * agm(1.0, math.sqrt(2.0)))


@lru_cache(maxsize=1)
def lemniscate_half_period() -> float:
    """Real half-period of the lemniscatic lattice, 2 * int_0^1 (1 + t^4)^(-1/2) dt.

    The quadrature value is the one returned; it must agree with the AGM
    route to 1e-10 or ConsistencyError is raised.
    """
    omega = 2.0 * integrate(lambda t: 1.0 / math.sqrt(1.0 + t**4), 0.0, 1.0, Tolerance(abs_tol=1e-15))
    check = half_period_from_agm()
    if abs(omega - check) > 1e-10:
        raise ConsistencyError(f"half-period mismatch: quadrature {omega!r} vs agm {check!r}")
    return omega
