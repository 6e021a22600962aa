"""Periodic grid vectors on the circle and their discrete norms.

A field is J real samples V_0..V_{J-1} on the uniform grid sigma_i = i*h,
h = 2*pi/J, identified periodically (V_{i+J} = V_i).  The discrete L2 norm
is ||V||_h = (h*sum V_i^2)^(1/2); first and second difference seminorms and
the h-weighted inner product follow the same convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .params import TWO_PI


@dataclass(frozen=True)
class GridSpec:
    """Uniform periodic grid: J points, spacing h = 2*pi/J."""

    J: int

    def __post_init__(self):
        if self.J < 8 or self.J % 2:
            raise ValueError(f"J must be even and >= 8, got {self.J}")

    @property
    def h(self) -> float:
        return TWO_PI / self.J

    @property
    def sigma(self) -> np.ndarray:
        return np.arange(self.J) * self.h


class PeriodicField:
    """Immutable real field on a periodic grid.

    Indexing wraps: field[i] is values[i mod J] for any integer i.
    """

    __slots__ = ("values", "h")

    def __init__(self, values, h: float | None = None):
        v = np.array(values, dtype=float)
        if v.ndim != 1:
            raise ValueError("field values must be one dimensional")
        J = v.size
        if J < 8 or J % 2:
            raise ValueError(f"J must be even and >= 8, got {J}")
        if h is None:
            h = TWO_PI / J
        elif abs(h * J - TWO_PI) > 1e-14 * TWO_PI:
            raise ValueError(f"h*J must equal 2*pi, got h={h}, J={J}")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "h", float(h))

    def __setattr__(self, name, value):
        raise AttributeError("PeriodicField is immutable")

    @property
    def J(self) -> int:
        return self.values.size

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, i: int) -> float:
        return float(self.values[i % self.values.size])

    def grid(self) -> GridSpec:
        return GridSpec(self.values.size)


def zeros(grid: GridSpec) -> PeriodicField:
    return PeriodicField(np.zeros(grid.J), grid.h)


def _check_same_grid(V: PeriodicField, W: PeriodicField):
    if V.J != W.J:
        raise ValueError(f"grid size mismatch: {V.J} vs {W.J}")


def norm_h(V: PeriodicField) -> float:
    v = V.values
    return math.sqrt(V.h * float(np.dot(v, v)))


def inner_h(V: PeriodicField, W: PeriodicField) -> float:
    _check_same_grid(V, W)
    return V.h * float(np.dot(V.values, W.values))


def seminorm_1h(V: PeriodicField) -> float:
    # |V|_{1,h}^2 = h * sum ((V_i - V_{i-1})/h)^2
    d = (V.values - np.roll(V.values, 1)) / V.h
    return math.sqrt(V.h * float(np.dot(d, d)))


def seminorm_2h(V: PeriodicField) -> float:
    # |V|_{2,h}^2 = h * sum (second difference / h^2)^2
    v = V.values
    lap = (np.roll(v, 1) - 2.0 * v + np.roll(v, -1)) / V.h**2
    return math.sqrt(V.h * float(np.dot(lap, lap)))


def mode_amplitudes(V: PeriodicField) -> np.ndarray:
    """|u_m| for m = 0..J/2 with u_m = (1/J) sum_i V_i exp(-i m sigma_i)."""
    return np.abs(np.fft.rfft(V.values)) / V.J


def pw_linear_square_integral(values: np.ndarray, h: float) -> float:
    """Exact integral over one period of the square of the piecewise linear
    interpolant through the samples: sum_i (h/3)(a^2 + a b + b^2) with
    a = V_i, b = V_{i+1}."""
    a = np.asarray(values, dtype=float)
    b = np.roll(a, -1)
    return (h / 3.0) * float(np.sum(a * a + a * b + b * b))


def sample_cosine_sum(grid: GridSpec, pairs) -> PeriodicField:
    """Samples u0(sigma) = sum_i p_i cos(m_i sigma) at the grid nodes."""
    s = grid.sigma
    u = np.zeros(grid.J)
    for p, m in pairs:
        u += p * np.cos(m * s)
    return PeriodicField(u, grid.h)


def sample_cosine_sum_dsigma(grid: GridSpec, pairs) -> PeriodicField:
    """Samples the analytic derivative of the cosine sum, -sum p_i m_i sin(m_i sigma)."""
    s = grid.sigma
    v = np.zeros(grid.J)
    for p, m in pairs:
        v -= p * m * np.sin(m * s)
    return PeriodicField(v, grid.h)


def centered_difference(U: PeriodicField) -> PeriodicField:
    """(U_{i+1} - U_{i-1}) / (2h), the second order alternative for v0."""
    u = U.values
    return PeriodicField((np.roll(u, -1) - np.roll(u, 1)) / (2.0 * U.h), U.h)
