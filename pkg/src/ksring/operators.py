"""Discrete spatial operators on periodic fields.

Second difference        (D_h V)_i  = (V_{i-1} - 2 V_i + V_{i+1}) / h^2
Fourth difference        D_h^2      = D_h composed with itself
Linear part              L V        = c4 D_h^2 V + c2 D_h V + c0 V
Quadratic form           phi(V,W)_i = (V_{i-1} + V_i + V_{i+1}) (W_{i+1} - W_{i-1})
Its linearization        psi(V,W)_i = -(2V_{i-1} + V_i) W_{i-1}
                                      + (V_{i+1} - V_{i-1}) W_i
                                      + (2V_{i+1} + V_i) W_{i+1}

phi approximates 6h * v * v_sigma; psi satisfies the exact identity
phi(V,V) - phi(W,W) = psi(W, V-W) + phi(V-W, V-W).

On the circle of radius R the linear coefficients are c4 = delta/R^4,
c2 = (alpha - 1 + delta/R^2)/R^2, c0 = (alpha - 1)/R^2.  All three stencils
are circulant, so L acts diagonally on discrete Fourier modes with symbol
mu_m = c4*s_m^2 - c2*s_m + c0, where s_m = (4/h^2) sin^2(m h / 2) is the
(negated) symbol of the second difference.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .field import PeriodicField, _check_same_grid
from .params import ModelParams


def _lap_values(v: np.ndarray, h: float) -> np.ndarray:
    return (np.roll(v, 1) - 2.0 * v + np.roll(v, -1)) / h**2


def _phi_values(v: np.ndarray, w: np.ndarray) -> np.ndarray:
    return (np.roll(v, 1) + v + np.roll(v, -1)) * (np.roll(w, -1) - np.roll(w, 1))


def _psi_values(v: np.ndarray, w: np.ndarray) -> np.ndarray:
    vm, vp = np.roll(v, 1), np.roll(v, -1)
    wm, wp = np.roll(w, 1), np.roll(w, -1)
    return -(2.0 * vm + v) * wm + (vp - vm) * w + (2.0 * vp + v) * wp


def laplacian_h(V: PeriodicField) -> PeriodicField:
    return PeriodicField(_lap_values(V.values, V.h), V.h)


def bilaplacian_h(V: PeriodicField) -> PeriodicField:
    return PeriodicField(_lap_values(_lap_values(V.values, V.h), V.h), V.h)


def phi(V: PeriodicField, W: PeriodicField) -> PeriodicField:
    _check_same_grid(V, W)
    return PeriodicField(_phi_values(V.values, W.values), V.h)


def psi(V: PeriodicField, W: PeriodicField) -> PeriodicField:
    _check_same_grid(V, W)
    return PeriodicField(_psi_values(V.values, W.values), V.h)


@dataclass(frozen=True)
class LinearOperatorCoefficients:
    """Coefficients of the linear operator at one radius; never reuse across R."""

    c4: float
    c2: float
    c0: float

    @classmethod
    def at_radius(cls, params: ModelParams, R: float) -> "LinearOperatorCoefficients":
        if not (R > 0):
            raise ValueError(f"R must be > 0, got {R}")
        R2 = R * R
        return cls(
            c4=params.delta / (R2 * R2),
            c2=(params.alpha - 1.0 + params.delta / R2) / R2,
            c0=(params.alpha - 1.0) / R2,
        )


def apply_L(coeffs: LinearOperatorCoefficients, V: PeriodicField) -> PeriodicField:
    return PeriodicField(_apply_L_values(coeffs, V.values, V.h), V.h)


def _apply_L_values(coeffs: LinearOperatorCoefficients, v: np.ndarray, h: float) -> np.ndarray:
    # One pass over the combined 5 point stencil; equals the composed form to roundoff.
    vm1, vp1 = np.roll(v, 1), np.roll(v, -1)
    vm2, vp2 = np.roll(v, 2), np.roll(v, -2)
    h2 = h * h
    lap = (vm1 - 2.0 * v + vp1) / h2
    bilap = (vm2 - 4.0 * vm1 + 6.0 * v - 4.0 * vp1 + vp2) / (h2 * h2)
    return coeffs.c4 * bilap + coeffs.c2 * lap + coeffs.c0 * v


def second_difference_symbol(m, h: float):
    """s_m = (4/h^2) sin^2(m h / 2); D_h acting on mode m multiplies by -s_m."""
    m = np.asarray(m, dtype=float)
    s = (4.0 / h**2) * np.sin(m * h / 2.0) ** 2
    return s if s.ndim else float(s)


def modal_symbol(coeffs: LinearOperatorCoefficients, m, h: float):
    """Fourier symbol mu_m of L: mode m of L V equals mu_m times mode m of V."""
    s = second_difference_symbol(m, h)
    return coeffs.c4 * s * s - coeffs.c2 * s + coeffs.c0


def symbol_array(coeffs: LinearOperatorCoefficients, J: int, h: float) -> np.ndarray:
    """mu_m for the rfft mode ordering m = 0..J/2."""
    return modal_symbol(coeffs, np.arange(J // 2 + 1), h)
