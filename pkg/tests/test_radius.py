import math

import pytest

from ksring.params import ModelParams, TimeGrid
from ksring.radius import FrozenRadiusLaw, RadiusLaw, radius_rate

SLOW = ModelParams(delta=4.0, alpha=1.5, v_c=0.001, R0=6.0)
FAST = ModelParams(delta=4.0, alpha=1.28, v_c=0.1, R0=60.0)


def rk4_radius(params, t, dt):
    # independent reference: classical RK4 on dR/dt = v_c + (alpha - 1)/R
    steps = round(t / dt)
    assert abs(steps * dt - t) < 1e-12 * max(1.0, t)

    def f(R):
        return params.v_c + (params.alpha - 1.0) / R

    R = params.R0
    for _ in range(steps):
        k1 = f(R)
        k2 = f(R + 0.5 * dt * k1)
        k3 = f(R + 0.5 * dt * k2)
        k4 = f(R + dt * k3)
        R += dt * (k1 + 2 * k2 + 2 * k3 + k4) / 6.0
    return R


def test_radius_at_zero():
    assert RadiusLaw(SLOW).radius_at(0.0) == SLOW.R0
    assert RadiusLaw(FAST).radius_at(0.0) == FAST.R0


@pytest.mark.parametrize("params", [SLOW, FAST])
@pytest.mark.parametrize("t", [1.0, 10.0])
def test_radius_matches_rk4(params, t):
    law = RadiusLaw(params)
    assert law.radius_at(t) == pytest.approx(rk4_radius(params, t, 1e-4), abs=1e-8)


@pytest.mark.parametrize("params", [SLOW, FAST])
def test_radius_matches_rk4_long(params):
    law = RadiusLaw(params)
    assert law.radius_at(100.0) == pytest.approx(
        rk4_radius(params, 100.0, 1e-3), abs=1e-8
    )


@pytest.mark.parametrize("params", [SLOW, FAST])
@pytest.mark.parametrize("t", [0.5, 5.0, 50.0])
def test_implicit_residual_small(params, t):
    law = RadiusLaw(params)
    R = law.radius_at(t)
    a = params.alpha - 1.0
    vc = params.v_c
    # log1p form: the naive log of the ratio carries a/v_c^2 noise amplification
    F = (R - params.R0 - (a / vc) * math.log1p(vc * (R - params.R0) / (vc * params.R0 + a))) / vc
    assert abs(F - t) <= 1e-12 * max(1.0, t)


@pytest.mark.parametrize("params", [SLOW, FAST])
def test_rate_matches_central_difference(params):
    # dt balances O(dt^2) truncation against the 1e-12 solve tolerance / dt noise
    law = RadiusLaw(params)
    t, dt = 3.0, 1e-4
    numeric = (law.radius_at(t + dt) - law.radius_at(t - dt)) / (2 * dt)
    assert law.rate_at(t) == pytest.approx(numeric, rel=1e-6)


def test_rate_formula():
    assert radius_rate(6.0, SLOW) == pytest.approx(0.001 + 0.5 / 6.0, rel=1e-15)
    law = RadiusLaw(SLOW)
    assert law.rate(6.0) == radius_rate(6.0, SLOW)
    assert law.rate_at(0.0) == pytest.approx(radius_rate(6.0, SLOW), rel=1e-14)


def test_radius_monotone():
    law = RadiusLaw(SLOW)
    ts = [0.0, 0.1, 1.0, 5.0, 20.0, 100.0, 500.0]
    rs = [law.radius_at(t) for t in ts]
    assert all(b > a for a, b in zip(rs, rs[1:]))


def test_negative_time_rejected():
    with pytest.raises(ValueError):
        RadiusLaw(SLOW).radius_at(-1.0)


def test_half_step_between_nodes():
    law = RadiusLaw(SLOW)
    tg = TimeGrid(k=0.25, N=40)
    for n in [0, 7, 39]:
        mid = law.half_step(n, tg)
        assert law.radius_at(n * tg.k) < mid < law.radius_at((n + 1) * tg.k)
        assert mid == pytest.approx(law.radius_at((n + 0.5) * tg.k), rel=1e-14)


def test_half_step_taylor():
    # R(k/2) = R0 + (k/2) rate(R0) + O(k^2)
    law = RadiusLaw(SLOW)
    k = 1e-4
    tg = TimeGrid(k=k, N=10)
    mid = law.half_step(0, tg)
    assert mid == pytest.approx(SLOW.R0 + 0.5 * k * law.rate(SLOW.R0), abs=1e-9)


def test_half_step_range_checked():
    law = RadiusLaw(SLOW)
    tg = TimeGrid(k=0.25, N=40)
    with pytest.raises(ValueError):
        law.half_step(-1, tg)
    with pytest.raises(ValueError):
        law.half_step(40, tg)


def test_frozen_law_keeps_radius():
    law = FrozenRadiusLaw(SLOW)
    assert law.radius_at(50.0) == SLOW.R0
    assert law.half_step(3, TimeGrid(k=0.5, N=10)) == SLOW.R0
    # the rate stays the formula so reconstruction denominators remain finite
    assert law.rate_at(50.0) == radius_rate(SLOW.R0, SLOW)
