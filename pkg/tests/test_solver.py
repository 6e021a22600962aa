import math

import numpy as np
import pytest

from ksring.field import GridSpec, PeriodicField, norm_h, sample_cosine_sum_dsigma
from ksring.params import ModelParams, SolverConfig, TimeGrid
from ksring.radius import RadiusLaw
from ksring.solver import (
    SchemeContext,
    SolverError,
    check_admissibility,
    cn_residual,
    cn_step,
    extrapolate,
    mean_step_factor,
    newton_first_step,
    newton_iterate,
    run,
    solve_linear_cn,
)

TWO_PI = 2.0 * math.pi
SLOW = ModelParams(delta=4.0, alpha=1.5, v_c=0.001, R0=6.0)


def make_ctx(J=8, k=0.01, N=10, params=SLOW):
    return SchemeContext(params, TimeGrid(k=k, N=N), GridSpec(J))


def random_field(J, seed, scale=1.0):
    rng = np.random.default_rng(seed)
    return PeriodicField(scale * rng.standard_normal(J), TWO_PI / J)


def loop_L(values, coeffs, h):
    J = len(values)
    v = lambda i: values[i % J]
    out = []
    for i in range(J):
        d2 = (v(i - 1) - 2 * v(i) + v(i + 1)) / h**2
        d4 = (v(i - 2) - 4 * v(i - 1) + 6 * v(i) - 4 * v(i + 1) + v(i + 2)) / h**4
        out.append(coeffs.c4 * d4 + coeffs.c2 * d2 + coeffs.c0 * v(i))
    return np.array(out)


def loop_phi(values_v, values_w):
    J = len(values_v)
    v = lambda i: values_v[i % J]
    w = lambda i: values_w[i % J]
    return np.array([(v(i - 1) + v(i) + v(i + 1)) * (w(i + 1) - w(i - 1)) for i in range(J)])


def loop_psi(values_v, values_w):
    J = len(values_v)
    v = lambda i: values_v[i % J]
    w = lambda i: values_w[i % J]
    return np.array(
        [
            -(2 * v(i - 1) + v(i)) * w(i - 1)
            + (v(i + 1) - v(i - 1)) * w(i)
            + (2 * v(i + 1) + v(i)) * w(i + 1)
            for i in range(J)
        ]
    )


def dense_cn_matrix(ctx, n):
    # (1/k) Id + (1/2) L assembled column by column from the loop stencil
    sc = ctx.step_coefficients(n)
    J, h, k = ctx.grid.J, ctx.grid.h, ctx.tgrid.k
    A = np.zeros((J, J))
    for j in range(J):
        e = np.zeros(J)
        e[j] = 1.0
        A[:, j] = 0.5 * loop_L(e, sc.coeffs, h)
    A += np.eye(J) / k
    return A


def test_admissibility_passes_for_reference_setup():
    law = RadiusLaw(SLOW)
    report = check_admissibility(SLOW, TimeGrid(k=0.01, N=100), law)
    assert report.r0_bound == pytest.approx(math.sqrt(8.0), rel=1e-15)
    assert report.r0_pass and report.k_pass and report.passed
    assert report.k_bound > 100.0


def test_admissibility_fails_small_radius():
    p = ModelParams(delta=4.0, alpha=1.5, v_c=0.001, R0=2.0)
    report = check_admissibility(p, TimeGrid(k=0.01, N=10), RadiusLaw(p))
    assert not report.r0_pass
    assert not report.passed


def test_admissibility_fails_large_step():
    p = ModelParams(delta=0.1, alpha=2.5, v_c=0.001, R0=10.0)
    report = check_admissibility(p, TimeGrid(k=0.5, N=4), RadiusLaw(p))
    assert report.r0_pass
    assert not report.k_pass
    assert report.k_bound < 0.5


def test_run_rejects_inadmissible_setup():
    p = ModelParams(delta=4.0, alpha=1.5, v_c=0.001, R0=2.0)
    g = GridSpec(16)
    v0 = sample_cosine_sum_dsigma(g, [(0.01, 2)])
    with pytest.raises(SolverError):
        run(p, TimeGrid(k=0.01, N=5), g, SolverConfig(), v0, law=RadiusLaw(p))
    traj = run(
        p,
        TimeGrid(k=0.01, N=5),
        g,
        SolverConfig(),
        v0,
        law=RadiusLaw(p),
        require_admissible=False,
    )
    assert traj.tgrid.N == 5


def test_cn_residual_matches_loop_assembly():
    ctx = make_ctx(J=8)
    sc = ctx.step_coefficients(0)
    Vn = random_field(8, 0, scale=0.1)
    Vnp1 = random_field(8, 1, scale=0.1)
    mid = 0.5 * (Vn.values + Vnp1.values)
    expected = (
        (Vnp1.values - Vn.values) / ctx.tgrid.k
        + loop_L(mid, sc.coeffs, ctx.grid.h)
        - sc.c_phi * loop_phi(mid, mid)
    )
    got = cn_residual(Vn, Vnp1, 0, ctx).values
    np.testing.assert_allclose(got, expected, rtol=0, atol=1e-13 * np.abs(expected).max())


@pytest.mark.parametrize("m", [1, 2, 3])
def test_solve_linear_cn_divides_cosine_by_symbol(m):
    ctx = make_ctx(J=16)
    sc = ctx.step_coefficients(0)
    g = ctx.grid
    rhs = PeriodicField(np.cos(m * g.sigma), g.h)
    out = solve_linear_cn(rhs, 0, ctx)
    np.testing.assert_allclose(
        out.values, rhs.values / sc.denom[m], rtol=0, atol=1e-12
    )


def test_solve_linear_cn_matches_dense_solve():
    ctx = make_ctx(J=8)
    rhs = random_field(8, 2)
    expected = np.linalg.solve(dense_cn_matrix(ctx, 0), rhs.values)
    np.testing.assert_allclose(
        solve_linear_cn(rhs, 0, ctx).values, expected, rtol=0, atol=1e-12
    )


def test_first_step_matches_dense_solve():
    ctx = make_ctx(J=8)
    sc = ctx.step_coefficients(0)
    v0 = random_field(8, 3, scale=0.1)
    nl = sc.c_phi * loop_phi(v0.values, v0.values)
    nl -= nl.mean()  # the stepper drops the roundoff mean of the stencil
    rhs = v0.values / ctx.tgrid.k - 0.5 * loop_L(v0.values, sc.coeffs, ctx.grid.h) + nl
    expected = np.linalg.solve(dense_cn_matrix(ctx, 0), rhs)
    got = newton_first_step(v0, ctx).values
    np.testing.assert_allclose(got, expected, rtol=0, atol=1e-10)


def test_first_step_of_zero_is_zero():
    ctx = make_ctx(J=16)
    z = PeriodicField(np.zeros(16), ctx.grid.h)
    assert np.abs(newton_first_step(z, ctx).values).max() <= 1e-16


def test_newton_iterate_matches_dense_solve():
    ctx = make_ctx(J=8, N=10)
    n = 2
    sc = ctx.step_coefficients(n)
    Vn = random_field(8, 4, scale=0.1)
    Vhat = random_field(8, 5, scale=0.1)
    Wj = random_field(8, 6, scale=0.1)
    b = Vn.values + Vhat.values
    nl = sc.c_psi * (loop_psi(b, Wj.values - Vhat.values) + loop_phi(b, b))
    nl -= nl.mean()
    rhs = Vn.values / ctx.tgrid.k - 0.5 * loop_L(Vn.values, sc.coeffs, ctx.grid.h) + nl
    expected = np.linalg.solve(dense_cn_matrix(ctx, n), rhs)
    got = newton_iterate(Vn, Vhat, Wj, n, ctx).values
    np.testing.assert_allclose(got, expected, rtol=0, atol=1e-10)


def test_cn_step_reaches_fixed_point():
    ctx = make_ctx(J=64, k=0.01)
    g = ctx.grid
    v0 = sample_cosine_sum_dsigma(g, [(0.1, 2), (0.1, 3)])
    W = cn_step(v0, 0, ctx)
    assert norm_h(cn_residual(v0, W, 0, ctx)) <= 1e-12


@pytest.mark.parametrize("eps, rel", [(1e-6, 1e-3), (1e-8, 1e-4)])
def test_single_mode_growth_factor(eps, rel):
    # a tiny single mode advances by numer/denom; contamination is O(eps)
    ctx = make_ctx(J=64, k=0.01)
    sc = ctx.step_coefficients(0)
    g = ctx.grid
    m = 2
    v0 = PeriodicField(eps * np.cos(m * g.sigma), g.h)
    W = cn_step(v0, 0, ctx)
    amp = (g.h / math.pi) * float(np.dot(W.values, np.cos(m * g.sigma)))
    expected = eps * sc.numer[m] / sc.denom[m]
    assert amp == pytest.approx(expected, rel=rel)


def test_mean_factor_formula():
    assert mean_step_factor(0.01, 6.0, 1.5) == pytest.approx(
        (72.0 - 0.005) / (72.0 + 0.005), rel=1e-15
    )


def test_mean_recursion_with_nonzero_start():
    # constant offset 1/(2 pi) gives S^0 = 1 exactly up to quadrature roundoff
    J, k, N = 64, 0.01, 200
    g = GridSpec(J)
    law = RadiusLaw(SLOW)
    v0 = PeriodicField(0.1 * np.cos(2 * g.sigma) - 0.05 * np.cos(3 * g.sigma) + 1.0 / TWO_PI, g.h)
    with pytest.warns(UserWarning):
        traj = run(SLOW, TimeGrid(k=k, N=N), g, SolverConfig(), v0, law=law)
    S_expected = traj.S[0]
    for n in range(N):
        R_half = law.half_step(n, traj.tgrid)
        S_expected *= mean_step_factor(k, R_half, SLOW.alpha)
        assert traj.S[n + 1] == pytest.approx(S_expected, rel=1e-12)


def test_zero_mean_start_stays_zero():
    g = GridSpec(64)
    v0 = sample_cosine_sum_dsigma(g, [(0.1, 2), (0.1, 5)])
    traj = run(SLOW, TimeGrid(k=0.01, N=100), g, SolverConfig(), v0, law=RadiusLaw(SLOW))
    assert np.max(np.abs(traj.S)) <= 1e-14


def test_extrapolate_formula():
    V = random_field(8, 7)
    W = random_field(8, 8)
    np.testing.assert_array_equal(
        extrapolate(V, W).values, 2.0 * V.values - W.values
    )
    np.testing.assert_array_equal(extrapolate(V, V).values, V.values)


def test_run_is_deterministic():
    g = GridSpec(32)
    v0 = sample_cosine_sum_dsigma(g, [(0.1, 2), (0.1, 3)])
    kwargs = dict(law=RadiusLaw(SLOW), method="newton")
    a = run(SLOW, TimeGrid(k=0.01, N=50), g, SolverConfig(), v0, **kwargs)
    b = run(SLOW, TimeGrid(k=0.01, N=50), g, SolverConfig(), v0, **kwargs)
    np.testing.assert_array_equal(a.final().values, b.final().values)
    np.testing.assert_array_equal(a.S, b.S)
    np.testing.assert_array_equal(a.A, b.A)


def test_snapshot_stride_and_lookup():
    g = GridSpec(16)
    v0 = sample_cosine_sum_dsigma(g, [(0.01, 2)])
    traj = run(
        SLOW, TimeGrid(k=0.01, N=20), g, SolverConfig(), v0, law=RadiusLaw(SLOW), store_stride=7
    )
    assert traj.stored_steps() == [0, 7, 14, 20]
    assert traj.has(14) and not traj.has(3)
    with pytest.raises(KeyError):
        traj.v(3)
    assert traj.final().J == 16


def test_run_validates_inputs():
    g = GridSpec(16)
    v0 = sample_cosine_sum_dsigma(GridSpec(32), [(0.01, 2)])
    with pytest.raises(ValueError):
        run(SLOW, TimeGrid(k=0.01, N=5), g, SolverConfig(), v0)
    v0 = sample_cosine_sum_dsigma(g, [(0.01, 2)])
    with pytest.raises(ValueError):
        run(SLOW, TimeGrid(k=0.01, N=5), g, SolverConfig(), v0, method="euler")


def test_newton_tracks_reference():
    g = GridSpec(64)
    tg = TimeGrid(k=0.01, N=50)
    v0 = sample_cosine_sum_dsigma(g, [(0.1, 2), (0.1, 3)])
    law = RadiusLaw(SLOW)
    newton = run(SLOW, tg, g, SolverConfig(), v0, law=law, method="newton")
    ref = run(SLOW, tg, g, SolverConfig(), v0, law=law, method="reference")
    gap = max(
        norm_h(PeriodicField(newton.snapshots[n] - ref.snapshots[n], g.h))
        for n in range(tg.N + 1)
    )
    assert gap <= 1e-8


def test_perturbation_growth_is_mild():
    # nearby trajectories separate by at most a factor 1 + c k per step
    g = GridSpec(64)
    tg = TimeGrid(k=0.01, N=50)
    law = RadiusLaw(SLOW)
    v0 = sample_cosine_sum_dsigma(g, [(0.1, 2), (0.1, 3)])
    pert = sample_cosine_sum_dsigma(g, [(1e-6, 2), (1e-6, 4)])
    v0p = PeriodicField(v0.values + pert.values, g.h)
    a = run(SLOW, tg, g, SolverConfig(), v0, law=law, method="reference")
    b = run(SLOW, tg, g, SolverConfig(), v0p, law=law, method="reference")
    norms = [
        norm_h(PeriodicField(b.snapshots[n] - a.snapshots[n], g.h))
        for n in range(tg.N + 1)
    ]
    c = 10.0
    for before, after in zip(norms, norms[1:]):
        assert after <= (1.0 + c * tg.k) * before


def test_context_rejects_sign_flipped_denominator():
    # gigantic k drives 1/k + mu/2 negative for the stiff middle modes
    p = ModelParams(delta=4.0, alpha=3.0, v_c=0.001, R0=40.0)
    ctx = SchemeContext(p, TimeGrid(k=2000.0, N=1), GridSpec(64))
    with pytest.raises(SolverError):
        ctx.step_coefficients(0)
