import math
import random

import pytest

from lemniscatic.errors import AccuracyError, BranchPointProximity, DomainError
from lemniscatic.ivp_series import (
    PathPolyline,
    default_pair,
    eval_c,
    eval_s,
    eval_s_prime,
    guard_radius,
    radius_constants,
    required_order,
    rk_continue,
    taylor_coefficients,
    truncation_tail,
)

from .conftest import OMEGA_REF, S_C_REF


def square_grid(half_width=0.6, n=41):
    ticks = [-half_width + 2 * half_width * i / (n - 1) for i in range(n)]
    return [complex(x, y) for x in ticks for y in ticks]


def test_order_one():
    tp = taylor_coefficients(1)
    assert tp.a == (0.0, 1.0)
    assert tp.b == (1.0, 0.0)


def test_first_nontrivial_coefficients():
    # c' = -s^3 gives 4 b4 = -a1^3; s' = c^3 gives 5 a5 = 3 b4
    assert taylor_coefficients(4).b[4] == -0.25
    assert taylor_coefficients(5).a[5] == pytest.approx(-3 / 20, rel=1e-16)


def test_coefficients_against_hand_recurrence():
    # Independent dense recurrence over all indices, with no lane bookkeeping.
    N = 40
    a = [0.0] * (N + 1)
    b = [0.0] * (N + 1)
    b[0] = 1.0

    def cube(x, n):
        return sum(x[i] * x[j] * x[n - i - j] for i in range(n + 1) for j in range(n + 1 - i))

    for n in range(N):
        a[n + 1] = cube(b, n) / (n + 1)
        b[n + 1] = -cube(a, n) / (n + 1)
    tp = taylor_coefficients(N)
    for n in range(N + 1):
        assert tp.a[n] == pytest.approx(a[n], rel=1e-13, abs=1e-300)
        assert tp.b[n] == pytest.approx(b[n], rel=1e-13, abs=1e-300)


def test_sparsity_and_realness():
    tp = taylor_coefficients(128)
    assert all(x == 0 for n, x in enumerate(tp.a) if n % 4 != 1)
    assert all(x == 0 for n, x in enumerate(tp.b) if n % 4 != 0)
    assert all(isinstance(x, float) for x in tp.a + tp.b)
    assert tp.a[0] == 0 and tp.a[1] == 1 and tp.b[0] == 1 and tp.b[1] == 0


def test_coefficient_decay_matches_branch_point_distance():
    tp = taylor_coefficients(512)
    lanes = tp.s_lanes
    # |a_n|^(-1/n) tends to omega / sqrt(2)
    n = 4 * (len(lanes) - 1) + 1
    estimate = abs(lanes[-1]) ** (-1.0 / n)
    assert estimate == pytest.approx(OMEGA_REF / math.sqrt(2), rel=0.02)


def test_eval_at_origin(tp):
    assert eval_s(tp, 0) == 0
    assert eval_c(tp, 0) == 1


def test_two_term_values(tp):
    assert abs(eval_s(tp, 0.1) - (0.1 - 0.15e-5)) < 1e-9
    assert abs(eval_c(tp, 0.1) - (1 - 0.25e-4)) < 1e-8


@pytest.mark.parametrize("z", [0.1, 0.5, 1.0, 0.3 + 0.4j, -0.5 + 0.2j, 0.8 + 0.8j])
def test_series_against_reference(tp, z):
    s_ref, c_ref = S_C_REF[z]
    order = required_order(abs(z))
    pair = default_pair(order)
    assert abs(eval_s(pair, z) - s_ref) < 1e-13
    assert abs(eval_c(pair, z) - c_ref) < 1e-13


def test_high_order_near_guard_radius():
    pair = default_pair(required_order(1.2))
    s_ref, c_ref = S_C_REF[1.2]
    assert abs(eval_s(pair, 1.2) - s_ref) < 1e-12
    assert abs(eval_c(pair, 1.2) - c_ref) < 1e-12


def test_quartic_identity_on_grid(tp):
    worst = max(abs(eval_s(tp, z) ** 4 + eval_c(tp, z) ** 4 - 1) for z in square_grid())
    assert worst < 1e-12


def test_i_rotation_exact(tp):
    for z in square_grid(n=21):
        iz = complex(-z.imag, z.real)
        assert eval_s(tp, iz) == 1j * eval_s(tp, z)
        assert eval_c(tp, iz) == eval_c(tp, z)


def test_reality_exact(tp):
    for z in square_grid(n=21):
        assert eval_s(tp, z.conjugate()) == eval_s(tp, z).conjugate()
        assert eval_c(tp, z.conjugate()) == eval_c(tp, z).conjugate()


def test_odd_even(tp):
    for z in square_grid(n=11):
        assert eval_s(tp, -z) == -eval_s(tp, z)
        assert eval_c(tp, -z) == eval_c(tp, z)


def test_derivative_series_solves_system(tp):
    worst = max(abs(eval_s_prime(tp, z) - eval_c(tp, z) ** 3) for z in square_grid(n=21))
    assert worst < 1e-12


def test_guard_radius_enforced(tp):
    with pytest.raises(DomainError, match="guard radius"):
        eval_s(tp, 1.3)
    with pytest.raises(DomainError):
        eval_c(tp, 1.25j)


def test_low_order_rejected_by_tail_check():
    with pytest.raises(AccuracyError):
        eval_s(taylor_coefficients(16), 1.0)
    assert eval_s(taylor_coefficients(16), 1.0, tail_tol=None) != 0


def test_truncation_tail_behaviour(tp):
    assert truncation_tail(tp, 0) == 0
    assert truncation_tail(tp, 0.6) < 1e-30
    assert truncation_tail(tp, 1.2) > 1e-13
    assert truncation_tail(tp, 2.0) == math.inf


def test_radius_constants():
    r = radius_constants()
    assert r["picard_radius"] == pytest.approx(4 / 27, rel=1e-15)
    assert r["scalar_radius"] == pytest.approx(0.620403, abs=1e-6)
    assert r["true_radius"] == pytest.approx(1.85407467730 / math.sqrt(2), abs=1e-10)
    assert guard_radius() == pytest.approx(0.95 * r["true_radius"])


def test_rk_degenerate_path():
    assert rk_continue(PathPolyline([0])) == [(0j, 0j, 1 + 0j)]


def test_rk_short_segment_matches_series(tp):
    (_, s, c) = rk_continue(PathPolyline([0, 0.1], 1e-3))[-1]
    assert abs(s - eval_s(tp, 0.1)) < 1e-12
    assert abs(c - eval_c(tp, 0.1)) < 1e-12


def test_rk_imaginary_path_symmetry():
    (_, s_im, c_im) = rk_continue(PathPolyline([0, 0.5j], 1e-3))[-1]
    (_, s_re, c_re) = rk_continue(PathPolyline([0, 0.5], 1e-3))[-1]
    assert abs(s_im - 1j * s_re) < 1e-12
    assert abs(c_im.imag) < 1e-12
    assert abs(c_im - c_re) < 1e-12


def test_rk_agrees_with_series_at_random_points(tp):
    rng = random.Random(20261016)
    for _ in range(20):
        r, t = 0.6 * math.sqrt(rng.random()), 2 * math.pi * rng.random()
        z = r * complex(math.cos(t), math.sin(t))
        (_, s, c) = rk_continue(PathPolyline([0, z], 1e-3))[-1]
        assert abs(s - eval_s(tp, z)) < 1e-9
        assert abs(c - eval_c(tp, z)) < 1e-9


def test_rk_polyline_returns_every_vertex(tp):
    states = rk_continue(PathPolyline([0, 0.3, 0.3 + 0.3j, 0.3j], 1e-3))
    assert [z for z, _, _ in states] == [0, 0.3, 0.3 + 0.3j, 0.3j]
    for z, s, c in states:
        assert abs(s - eval_s(tp, z)) < 1e-10


def test_rk_branch_point_proximity():
    p = complex(OMEGA_REF / 2, OMEGA_REF / 2)
    with pytest.raises(BranchPointProximity) as info:
        rk_continue(PathPolyline([0, p * 1.001], 1e-3))
    assert abs(info.value.nearest - p) < 1e-12


def test_rk_detects_translated_branch_points():
    p = complex(-OMEGA_REF / 2 + 2 * OMEGA_REF, OMEGA_REF / 2)
    with pytest.raises(BranchPointProximity) as info:
        rk_continue(PathPolyline([0, 2.5, p], 1e-2))
    assert abs(info.value.nearest - p) < 1e-12


def test_path_validation():
    with pytest.raises(DomainError):
        PathPolyline([0.1, 0.2])
    with pytest.raises(DomainError):
        PathPolyline([0, 0.2, 0.2])
    with pytest.raises(DomainError):
        PathPolyline([0, 0.2], max_step=0)
