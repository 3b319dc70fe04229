"""Named identity suites evaluated over deterministic complex grids.

Each suite samples a square grid, drops the samples lying within the
exclusion radius of the singular points that matter to it, evaluates an
absolute residual at the rest and reports the maximum. The one exception is
``wp_ode``, whose two sides grow like |z|**-6 near the pole; there the
difference is divided by max(1, |lhs|, |rhs|). Suites that also
check Taylor coefficients fold the worst coefficient residual into the
maximum and attribute it to the expansion point 0.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core_numerics import Tolerance, eval_series
from .errors import DomainError, LemniscaticError, UnknownSuiteError
from .extensions import (
    BRANCH_FRACTION,
    C_eval,
    P_eval,
    S_eval,
    c_branch,
    jacobi_sd_agm,
    nearest_pole,
    s_branch,
    sd_eval,
    sl_eval,
)
from .ivp_series import (
    DEFAULT_ORDER,
    default_pair,
    eval_c,
    eval_s,
    guard_radius,
    required_order,
)
from .weierstrass import (
    POLE_RADIUS,
    WeierstrassContext,
    default_context,
    reduce,
    wp,
    wp_add,
    wp_duplicate,
    wp_prime,
    wp_translate_half,
)

__all__ = [
    "GridSpec",
    "IdentityReport",
    "SUITE_NAMES",
    "DEFAULT_TOLERANCES",
    "PROFILES",
    "default_grid",
    "run_suite",
    "run_all",
    "reports_to_json",
    "second_order_coefficient_residuals",
    "fourth_order_coefficient_residuals",
]

ADD_PARTNER = complex(0.4, 0.3)
FD_STEP = 1e-5
SECOND_ORDER_THROUGH = 40
FOURTH_ORDER_THROUGH = 32


@dataclass(frozen=True)
class GridSpec:
    center: complex = 0j
    half_width: float = 0.6
    points_per_side: int = 41
    exclusion_radius: float = 0.0

    def __post_init__(self):
        if self.points_per_side < 2:
            raise DomainError("points_per_side must be at least 2")
        if self.exclusion_radius < 0:
            raise DomainError("exclusion_radius must be non-negative")
        if not self.half_width > 0:
            raise DomainError("half_width must be positive")
        object.__setattr__(self, "center", complex(self.center))

    def points(self) -> list:
        """Row-major samples, bottom row first, left to right."""
        n = self.points_per_side
        hw = self.half_width
        ticks = [-hw + 2 * hw * i / (n - 1) for i in range(n)]
        c = self.center
        return [complex(c.real + x, c.imag + y) for y in ticks for x in ticks]

    def summary(self) -> dict:
        return {
            "center": [self.center.real, self.center.imag],
            "half_width": self.half_width,
            "points_per_side": self.points_per_side,
            "exclusion_radius": self.exclusion_radius,
        }


@dataclass(frozen=True)
class IdentityReport:
    suite: str
    grid: GridSpec
    samples_evaluated: int
    samples_excluded: int
    max_residual: float
    argmax_point: complex
    tolerance: float
    passed: bool

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "grid": self.grid.summary(),
            "samples_evaluated": self.samples_evaluated,
            "samples_excluded": self.samples_excluded,
            "max_residual": self.max_residual,
            "argmax": [self.argmax_point.real, self.argmax_point.imag],
            "tolerance": self.tolerance,
            "passed": self.passed,
        }


def reports_to_json(reports) -> str:
    if isinstance(reports, IdentityReport):
        return json.dumps(reports.to_dict())
    return json.dumps([r.to_dict() for r in reports])


# --- singular-point distances ---------------------------------------------


def _lattice_distance(ctx, z, shift=0j):
    return abs(reduce(ctx, z - shift).z0)


def _pole_distance(ctx, z):
    return abs(z - nearest_pole(ctx, z))


# --- coefficient-level checks ----------------------------------------------


def _cauchy(x, y, n):
    return np.convolve(x, y)[:n]


def _squares(through: int):
    tp = default_pair(max(through + 8, 16))
    a = np.array(tp.a)
    b = np.array(tp.b)
    n = len(a)
    return _cauchy(a, a, n), _cauchy(b, b, n)


def second_order_coefficient_residuals(through: int = SECOND_ORDER_THROUGH) -> list:
    """|(n+2)(n+1) F[n+2] - [z^n] RHS| for S'' = 2C^3 - 6S^2 C and C'' = 2S^3 - 6C^2 S."""
    S, C = _squares(through)
    n = len(S)
    S2, C2 = _cauchy(S, S, n), _cauchy(C, C, n)
    rhs_S = 2 * _cauchy(C2, C, n) - 6 * _cauchy(S2, C, n)
    rhs_C = 2 * _cauchy(S2, S, n) - 6 * _cauchy(C2, S, n)
    out = []
    for k in range(through + 1):
        f = (k + 2) * (k + 1)
        out.append(float(max(abs(f * S[k + 2] - rhs_S[k]), abs(f * C[k + 2] - rhs_C[k]))))
    return out


def _fourth_rhs(F, n):
    F2 = _cauchy(F, F, n)
    F3 = _cauchy(F2, F, n)
    F5 = _cauchy(F3, F2, n)
    return -12 * (32 * F5 - 40 * F3 + 9 * F)


def fourth_order_coefficient_residuals(through: int = FOURTH_ORDER_THROUGH) -> list:
    """Coefficient residuals of F'''' = -12 F (32F^4 - 40F^2 + 9) for F in {S, C}."""
    S, C = _squares(through)
    n = len(S)
    rS, rC = _fourth_rhs(S, n), _fourth_rhs(C, n)
    out = []
    for k in range(through + 1):
        f = (k + 4) * (k + 3) * (k + 2) * (k + 1)
        out.append(float(max(abs(f * S[k + 4] - rS[k]), abs(f * C[k + 4] - rC[k]))))
    return out


def _derivative_coeffs(coeffs, times):
    c = list(coeffs)
    for _ in range(times):
        c = [k * c[k] for k in range(1, len(c))]
    return c


class _SeriesSquares:
    """Dense S = s^2, C = c^2 coefficients and their derivatives."""

    def __init__(self, order=DEFAULT_ORDER):
        tp = default_pair(order)
        a = np.array(tp.a)
        b = np.array(tp.b)
        n = len(a)
        self.S = [float(x) for x in _cauchy(a, a, n)]
        self.C = [float(x) for x in _cauchy(b, b, n)]
        self.dS = {k: _derivative_coeffs(self.S, k) for k in (2, 4)}
        self.dC = {k: _derivative_coeffs(self.C, k) for k in (2, 4)}

    @staticmethod
    def ev(coeffs, z):
        return eval_series(coeffs, 1, 0, z)


# --- suite table --------------------------------------------------------------


@dataclass
class _Suite:
    name: str
    anchor: str
    tolerance: float
    grid: Callable[[WeierstrassContext], GridSpec]
    residual: Callable
    singular: tuple = ()
    extra: Callable | None = None
    outside: Callable | None = None


def _series_grid(ctx):
    return GridSpec(0j, 0.6, 41, 0.0)


def _cell_grid(ctx):
    return GridSpec(0j, ctx.omega, 41, 0.05)


def _sp():
    return default_pair(DEFAULT_ORDER)


def _r_quartic(ctx, z):
    tp = _sp()
    s, c = eval_s(tp, z), eval_c(tp, z)
    return abs(s**4 + c**4 - 1)


def _r_i_symmetry(ctx, z):
    tp = _sp()
    iz = complex(-z.imag, z.real)
    return max(abs(eval_s(tp, iz) - 1j * eval_s(tp, z)), abs(eval_c(tp, iz) - eval_c(tp, z)))


def _x_sparsity(ctx):
    tp = _sp()
    ok = all(x == 0 for n, x in enumerate(tp.a) if n % 4 != 1) and all(
        x == 0 for n, x in enumerate(tp.b) if n % 4 != 0
    )
    return 0.0 if ok else math.inf


def _r_reality(ctx, z):
    tp = _sp()
    zc = z.conjugate()
    return max(
        abs(eval_s(tp, zc) - eval_s(tp, z).conjugate()),
        abs(eval_c(tp, zc) - eval_c(tp, z).conjugate()),
    )


def _x_realness(ctx):
    tp = _sp()
    ok = all(isinstance(x, float) and math.isfinite(x) for x in tp.a + tp.b)
    return 0.0 if ok else math.inf


def _mixed(lhs, rhs):
    """Absolute difference, made relative once either side exceeds 1."""
    return abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs))


def _r_wp_ode(ctx, z):
    # both sides grow like |z|**-6 at the pole, so rounding alone produces
    # absolute residuals of order |wp|**3 * eps there
    p, dp = wp(ctx, z), wp_prime(ctx, z)
    return _mixed(dp * dp, 4 * p**3 - p)


def _r_wp_dup(ctx, z):
    return abs(wp_duplicate(ctx, z) - wp(ctx, 2 * z))


def _r_wp_add(ctx, z):
    return abs(wp_add(ctx, z, ADD_PARTNER) - wp(ctx, z + ADD_PARTNER))


def _r_wp_translate(ctx, z):
    w = ctx.omega
    p = wp(ctx, z)
    s_closed = p / (p * p + 0.25)
    q = wp(ctx, z - w)
    qi = wp(ctx, z - 1j * w)
    return max(
        abs(wp_translate_half(ctx, z) - q),
        abs((q * q - 0.25) / (q * q + 0.25) - s_closed),
        abs((qi * qi - 0.25) / (qi * qi + 0.25) + s_closed),
    )


def _r_wp_antisym(ctx, z):
    return abs(wp(ctx, 1j * z) + wp(ctx, z))


def _r_periodicity(ctx, z):
    out = 0.0
    for period in ctx.periods:
        zp = z + period
        out = max(out, abs(wp(ctx, zp) - wp(ctx, z)))
        for fn in (S_eval, C_eval, P_eval):
            out = max(out, abs(fn(ctx, zp) - fn(ctx, z)))
    return out


def _r_thm5(ctx, z):
    tp = _sp()
    sc = eval_s(tp, z) * eval_c(tp, z)
    r2 = math.sqrt(2.0)
    return max(
        abs(sc - 0.5 * sd_eval(ctx, 2 * z)),
        abs(sc - sl_eval(ctx, r2 * z) / r2),
        abs(sc - P_eval(ctx, z)),
    )


def _r_thm6(ctx, z):
    c = eval_c(_sp(), z)
    return abs(C_eval(ctx, z) - c * c)


def _r_thm7(ctx, z):
    s = eval_s(_sp(), z)
    return abs(S_eval(ctx, z) - s * s)


def _r_sd_oracle(ctx, u):
    return abs(sd_eval(ctx, u) - jacobi_sd_agm(u))


def _r_sd_sq(ctx, u):
    d = sd_eval(ctx, u)
    return abs(d * d * wp(ctx, u) - 1)


def _r_pyth(ctx, z):
    S, C = S_eval(ctx, z), C_eval(ctx, z)
    return abs(S * S + C * C - 1)


_SQUARES = {}


def _squares_fn():
    if "sq" not in _SQUARES:
        _SQUARES["sq"] = _SeriesSquares()
    return _SQUARES["sq"]


def _r_second(ctx, z):
    q = _squares_fn()
    S, C = q.ev(q.S, z), q.ev(q.C, z)
    return max(
        abs(q.ev(q.dS[2], z) - (2 * C**3 - 6 * S * S * C)),
        abs(q.ev(q.dC[2], z) - (2 * S**3 - 6 * C * C * S)),
    )


def _x_second(ctx):
    return max(second_order_coefficient_residuals())


def _r_fourth(ctx, z):
    q = _squares_fn()
    out = 0.0
    for F, d4 in ((q.S, q.dS[4]), (q.C, q.dC[4])):
        f = q.ev(F, z)
        out = max(out, abs(q.ev(d4, z) + 12 * f * (32 * f**4 - 40 * f * f + 9)))
    return out


def _x_fourth(ctx):
    return max(fourth_order_coefficient_residuals())


def _central(fn, ctx, z, h=FD_STEP):
    return (fn(ctx, z + h) - fn(ctx, z - h)) / (2 * h)


def _r_briot(ctx, z):
    out = 0.0
    for fn in (C_eval, S_eval):
        F = fn(ctx, z)
        dF = _central(fn, ctx, z)
        out = max(out, abs(dF**4 - 16 * F * F * (1 - F * F) ** 3))
    # scalar reduction s' = (1 - s^4)^(3/4), principal power
    tp = _sp()
    s = eval_s(tp, z)
    ds = (eval_s(tp, z + FD_STEP) - eval_s(tp, z - FD_STEP)) / (2 * FD_STEP)
    out = max(out, abs(ds - cmath.exp(0.75 * cmath.log(1 - s**4))))
    return out


def _r_pole_probe(ctx, z):
    p = nearest_pole(ctx, z)
    return abs(wp(ctx, p) ** 2 + 0.25)


_BRANCH_ORDER = {}


def _r_branch(ctx, z):
    sb, cb = s_branch(ctx, z), c_branch(ctx, z)
    out = abs(sb**4 + cb**4 - 1)
    r = abs(z)
    if r <= guard_radius():
        key = round(r, 2) + 0.01
        if key not in _BRANCH_ORDER:
            _BRANCH_ORDER[key] = required_order(min(key, guard_radius()))
        tp = default_pair(_BRANCH_ORDER[key])
        out = max(out, abs(sb - eval_s(tp, z)), abs(cb - eval_c(tp, z)))
    return out


def _outside_branch_disc(ctx, z):
    return abs(z) >= BRANCH_FRACTION * ctx.omega / math.sqrt(2.0)


def _lat(shift=0j):
    return lambda ctx, z: _lattice_distance(ctx, z, shift(ctx) if callable(shift) else shift)


_LATTICE = _lat()
_POLES = _pole_distance


def _sd_poles(ctx, u):
    return 2 * _pole_distance(ctx, u / 2)


_SUITES = [
    _Suite("quartic", "s^4 + c^4 = 1", 1e-12, _series_grid, _r_quartic, (_POLES,)),
    _Suite("i_symmetry", "s(iz) = i s(z), c(iz) = c(z)", 1e-13, _series_grid, _r_i_symmetry, (_POLES,), _x_sparsity),
    _Suite("reality", "s(conj z) = conj s(z)", 1e-15, _series_grid, _r_reality, (_POLES,), _x_realness),
    _Suite("wp_ode", "wp'^2 = 4 wp^3 - wp", 1e-9, _cell_grid, _r_wp_ode, (_LATTICE,)),
    _Suite(
        "wp_dup",
        "wp(2z) = (wp^2 + 1/4)^2 / wp'^2",
        1e-9,
        _cell_grid,
        _r_wp_dup,
        (_LATTICE, lambda ctx, z: 2 * _lattice_distance(ctx, 2 * z)),
    ),
    _Suite(
        "wp_add",
        "addition formula",
        1e-9,
        _cell_grid,
        _r_wp_add,
        (_LATTICE, _lat(-ADD_PARTNER), _lat(ADD_PARTNER)),
    ),
    _Suite(
        "wp_translate",
        "wp(z - omega) = (wp + 1/2) / (2 (wp - 1/2))",
        1e-9,
        _cell_grid,
        _r_wp_translate,
        (_LATTICE, _lat(lambda ctx: ctx.omega), _lat(lambda ctx: 1j * ctx.omega), _POLES),
    ),
    _Suite("wp_antisym", "wp(iz) = -wp(z)", 1e-11, _cell_grid, _r_wp_antisym, (_LATTICE,)),
    _Suite("periodicity", "periods 2 omega, 2i omega", 1e-10, _cell_grid, _r_periodicity, (_LATTICE, _POLES)),
    _Suite("thm5_sc", "s c = sd(2z)/2 = sl(sqrt2 z)/sqrt2", 1e-10, _series_grid, _r_thm5, (_POLES,)),
    _Suite("thm6_C", "c^2 = (wp^2 - 1/4)/(wp^2 + 1/4)", 1e-10, _series_grid, _r_thm6, (_POLES,)),
    _Suite("thm7_S", "s^2 = wp/(wp^2 + 1/4)", 1e-10, _series_grid, _r_thm7, (_POLES,)),
    _Suite(
        "sd_oracle",
        "sd via wp = sd via Jacobi AGM",
        1e-9,
        lambda ctx: GridSpec(0j, 0.9 * ctx.omega, 10, 0.05),
        _r_sd_oracle,
        (_sd_poles,),
    ),
    _Suite("sd_sq_inv_wp", "sd^2 = 1/wp", 1e-9, _cell_grid, _r_sd_sq, (_LATTICE, _sd_poles)),
    _Suite("pythagorean_squares", "S^2 + C^2 = 1", 1e-10, _cell_grid, _r_pyth, (_POLES,)),
    _Suite(
        "second_order_system",
        "S'' = 2C^3 - 6S^2 C, C'' = 2S^3 - 6C^2 S",
        1e-12,
        _series_grid,
        _r_second,
        (_POLES,),
        _x_second,
    ),
    _Suite(
        "fourth_order_ode",
        "F'''' = -12 F (32F^4 - 40F^2 + 9)",
        1e-12,
        _series_grid,
        _r_fourth,
        (_POLES,),
        _x_fourth,
    ),
    _Suite(
        "briot_bouquet",
        "(C')^4 = 16 C^2 (1 - C^2)^3",
        1e-6,
        lambda ctx: GridSpec(0j, 0.5, 21, 0.0),
        _r_briot,
        (_POLES,),
    ),
    _Suite(
        "pole_probe",
        "wp(p)^2 + 1/4 = 0 at the poles",
        1e-9,
        lambda ctx: GridSpec(0j, 0.5 * ctx.omega, 2, 0.0),
        _r_pole_probe,
    ),
    _Suite(
        "branch_sqrt",
        "sqrt(S), sqrt(C) continue s, c",
        1e-10,
        lambda ctx: GridSpec(0j, 0.6, 21, 0.0),
        _r_branch,
        (_POLES,),
        outside=_outside_branch_disc,
    ),
]

_BY_NAME = {s.name: s for s in _SUITES}
SUITE_NAMES = tuple(s.name for s in _SUITES)
DEFAULT_TOLERANCES = {s.name: s.tolerance for s in _SUITES}
PROFILES = {
    "default": dict(DEFAULT_TOLERANCES),
    "strict": {k: v / 10 for k, v in DEFAULT_TOLERANCES.items()},
}


def _suite(name: str) -> _Suite:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise UnknownSuiteError(f"unknown suite {name!r}; valid suites: {', '.join(SUITE_NAMES)}") from None


def default_grid(name: str, ctx: WeierstrassContext | None = None) -> GridSpec:
    return _suite(name).grid(ctx or default_context())


def _threshold(tol) -> float:
    if isinstance(tol, Tolerance):
        if tol.abs_tol <= 0:
            raise DomainError("suite residuals are absolute; abs_tol must be positive")
        return tol.abs_tol
    tol = float(tol)
    if not tol > 0:
        raise DomainError("tolerance must be positive")
    return tol


def _is_excluded(suite, ctx, grid, z) -> bool:
    if suite.outside is not None and suite.outside(ctx, z):
        return True
    for dist in suite.singular:
        d = dist(ctx, z)
        if d <= grid.exclusion_radius or d < POLE_RADIUS:
            return True
    return False


def run_suite(
    name: str,
    grid: GridSpec | None = None,
    tol: Tolerance | float | None = None,
    ctx: WeierstrassContext | None = None,
) -> IdentityReport:
    suite = _suite(name)
    ctx = ctx or default_context()
    grid = grid or suite.grid(ctx)
    threshold = _threshold(suite.tolerance if tol is None else tol)
    evaluated = excluded = 0
    worst, where = 0.0, 0j
    for z in grid.points():
        if _is_excluded(suite, ctx, grid, z):
            excluded += 1
            continue
        evaluated += 1
        try:
            r = float(suite.residual(ctx, z))
        except LemniscaticError:
            r = math.inf
        if math.isnan(r):
            r = math.inf
        if r > worst:
            worst, where = r, z
    if suite.extra is not None:
        r = float(suite.extra(ctx))
        if r > worst:
            worst, where = r, 0j
    return IdentityReport(
        suite=name,
        grid=grid,
        samples_evaluated=evaluated,
        samples_excluded=excluded,
        max_residual=worst,
        argmax_point=where,
        tolerance=threshold,
        passed=worst <= threshold,
    )


def run_all(
    tol_profile: str = "default",
    overrides: dict | None = None,
    ctx: WeierstrassContext | None = None,
) -> list:
    """Run every suite on its default grid; tolerances from the named profile."""
    if tol_profile not in PROFILES:
        raise DomainError(f"unknown tolerance profile {tol_profile!r}; choose from {sorted(PROFILES)}")
    tolerances = dict(PROFILES[tol_profile])
    for key, value in (overrides or {}).items():
        _suite(key)
        tolerances[key] = value
    ctx = ctx or default_context()
    return [run_suite(name, tol=tolerances[name], ctx=ctx) for name in SUITE_NAMES]
