"""Time integration of the gradient form of the interface equation.

The unknown v(sigma, t) = u_sigma solves, on the circle of radius R(t),

    v_t + (delta/R^4) v_ssss + (1/R^2)(alpha - 1 + delta/R^2) v_ss
        + ((alpha - 1)/R^2) v - (v_c/R^2) v v_s = 0,

2*pi periodic with zero mean.  The Crank-Nicolson discretization reads

    (V^{n+1} - V^n)/k + L^{n+1/2} V^{n+1/2} = (v_c / (6 h R_{n+1/2}^2)) phi(V^{n+1/2}, V^{n+1/2})

with V^{n+1/2} = (V^n + V^{n+1})/2, L the discrete linear operator at the
half-step radius, and phi the 3 point quadrature of 6h v v_s.  Two step
drivers are provided:

  * the reference driver solves each nonlinear step to convergence by fixed
    point sweeps on the midpoint form (each sweep is one circulant solve);
  * the production driver performs one linear solve for step one,

        (W^1 - v^0)/k + (1/2) L^{1/2} (v^0 + W^1) = (v_c/(6 h R_{1/2}^2)) phi(v^0, v^0),

    then for n >= 2 extrapolates Vhat = 2 V^{n-1} - V^{n-2} and applies j_n
    sweeps of the linearization

        (W^{j+1} - V^n)/k + (1/2) L (W^{j+1} + V^n)
            = (v_c/(24 h R^2)) [ psi(V^n + Vhat, W^j - Vhat) + phi(V^n + Vhat, V^n + Vhat) ],

    seeded with W^0 = Vhat.  The identity phi(V,V) - phi(W,W) =
    psi(W, V-W) + phi(V-W, V-W) makes each sweep a Newton-type correction
    with the quadratic remainder anchored at the predictor.

All linear systems share the matrix (1/k) Id + (1/2) L, symmetric circulant,
and are solved exactly by discrete Fourier diagonalization: mode m is divided
by 1/k + mu_m/2 with mu_m the symbol of L.  Summing the scheme over the grid
shows the discrete mean S^n = h sum_i V_i^n obeys

    S^{n+1} = ((2 R_{n+1/2}^2 - k(alpha - 1)) / (2 R_{n+1/2}^2 + k(alpha - 1))) S^n

exactly (the phi and psi stencils telescope to zero), so a zero-mean start
stays zero mean.  The stepper keeps the state in Fourier space and drops the
roundoff-level mean of the quadratic terms, which makes the recursion hold to
machine precision along the computed trajectory.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field as dc_field

import numpy as np

from .field import GridSpec, PeriodicField, norm_h, pw_linear_square_integral
from .operators import (
    LinearOperatorCoefficients,
    _apply_L_values,
    _phi_values,
    _psi_values,
    symbol_array,
)
from .params import ModelParams, SolverConfig, TimeGrid
from .radius import RadiusLaw


class SolverError(RuntimeError):
    """Step level failure; carries the offending step index."""

    def __init__(self, message: str, step: int | None = None):
        super().__init__(message)
        self.step = step


@dataclass(frozen=True)
class AdmissibilityReport:
    """Existence conditions for the implicit scheme on [0, T]."""

    r0_bound: float
    r0_pass: bool
    k_bound: float
    k_pass: bool
    R_T: float

    @property
    def passed(self) -> bool:
        return self.r0_pass and self.k_pass


def check_admissibility(params: ModelParams, tgrid: TimeGrid, law: RadiusLaw) -> AdmissibilityReport:
    """R0 must exceed sqrt(delta/(alpha-1)) and k must stay below
    8*delta/(alpha - 1 - delta/R(T)^2)^2."""
    a = params.alpha - 1.0
    r0_bound = math.sqrt(params.delta / a)
    R_T = law.radius_at(tgrid.T)
    denom = a - params.delta / R_T**2
    k_bound = math.inf if denom == 0 else 8.0 * params.delta / denom**2
    return AdmissibilityReport(
        r0_bound=r0_bound,
        r0_pass=params.R0 > r0_bound,
        k_bound=k_bound,
        k_pass=tgrid.k < k_bound,
        R_T=R_T,
    )


@dataclass(frozen=True)
class StepCoefficients:
    """Everything the step from t^n to t^{n+1} needs at the half-step radius."""

    R_half: float
    coeffs: LinearOperatorCoefficients
    mu: np.ndarray        # symbol of L for rfft modes 0..J/2
    denom: np.ndarray     # 1/k + mu/2
    numer: np.ndarray     # 1/k - mu/2
    c_phi: float          # v_c / (6 h R^2)
    c_psi: float          # v_c / (24 h R^2)


class SchemeContext:
    """Bundles the model, grids, radius law, and per-step coefficient cache."""

    def __init__(
        self,
        params: ModelParams,
        tgrid: TimeGrid,
        grid: GridSpec,
        law: RadiusLaw | None = None,
        config: SolverConfig | None = None,
    ):
        self.params = params
        self.tgrid = tgrid
        self.grid = grid
        self.law = law if law is not None else RadiusLaw(params)
        self.config = config if config is not None else SolverConfig()
        self._cache: dict[int, StepCoefficients] = {}

    def step_coefficients(self, n: int) -> StepCoefficients:
        sc = self._cache.get(n)
        if sc is not None:
            return sc
        k = self.tgrid.k
        R = self.law.half_step(n, self.tgrid)
        coeffs = LinearOperatorCoefficients.at_radius(self.params, R)
        mu = symbol_array(coeffs, self.grid.J, self.grid.h)
        denom = 1.0 / k + 0.5 * mu
        if denom.min() <= 0.0:
            m_bad = int(np.argmin(denom))
            raise SolverError(
                f"non positive circulant denominator at mode {m_bad}, step {n}; "
                "the time step violates the existence bound",
                step=n,
            )
        sc = StepCoefficients(
            R_half=R,
            coeffs=coeffs,
            mu=mu,
            denom=denom,
            numer=1.0 / k - 0.5 * mu,
            c_phi=self.params.v_c / (6.0 * self.grid.h * R * R),
            c_psi=self.params.v_c / (24.0 * self.grid.h * R * R),
        )
        if len(self._cache) > 64:
            self._cache.clear()
        self._cache[n] = sc
        return sc


def _nl_rfft(values: np.ndarray) -> np.ndarray:
    # The quadratic stencils telescope to zero mean; drop their roundoff there.
    out = np.fft.rfft(values)
    out[0] = 0.0
    return out


def solve_linear_cn(rhs: PeriodicField, n: int, ctx: SchemeContext) -> PeriodicField:
    """Solves ((1/k) Id + (1/2) L^{n+1/2}) X = rhs by Fourier diagonalization."""
    sc = ctx.step_coefficients(n)
    x = np.fft.irfft(np.fft.rfft(rhs.values) / sc.denom, n=ctx.grid.J)
    return PeriodicField(x, ctx.grid.h)


def cn_residual(Vn: PeriodicField, Vnp1: PeriodicField, n: int, ctx: SchemeContext) -> PeriodicField:
    """Pointwise defect of (Vn, Vnp1) in the Crank-Nicolson scheme."""
    sc = ctx.step_coefficients(n)
    k = ctx.tgrid.k
    h = ctx.grid.h
    vmid = 0.5 * (Vn.values + Vnp1.values)
    res = (
        (Vnp1.values - Vn.values) / k
        + _apply_L_values(sc.coeffs, vmid, h)
        - sc.c_phi * _phi_values(vmid, vmid)
    )
    return PeriodicField(res, h)


def cn_step(Vn: PeriodicField, n: int, ctx: SchemeContext, tol: float | None = None) -> PeriodicField:
    """Reference step: iterates the midpoint fixed point to convergence.

    Each sweep solves the circulant system with the quadratic term taken at
    the previous midpoint iterate; the contraction factor is of order
    k * v_c * |v| / R^2, far below one for admissible steps.
    """
    if tol is None:
        tol = ctx.config.reference_tol
    sc = ctx.step_coefficients(n)
    vn = Vn.values
    J = ctx.grid.J
    base = sc.numer * np.fft.rfft(vn)
    w = vn
    for _ in range(50):
        vmid = 0.5 * (vn + w)
        nl = sc.c_phi * _phi_values(vmid, vmid)
        w_new = np.fft.irfft((base + _nl_rfft(nl)) / sc.denom, n=J)
        delta = w_new - w
        w = w_new
        if math.sqrt(ctx.grid.h * float(np.dot(delta, delta))) <= tol * max(
            1.0, math.sqrt(ctx.grid.h * float(np.dot(w, w)))
        ):
            return PeriodicField(w, ctx.grid.h)
    raise SolverError(f"reference step {n} did not converge in 50 sweeps", step=n)


def newton_first_step(v0: PeriodicField, ctx: SchemeContext) -> PeriodicField:
    """Linear first step: quadratic term evaluated at the initial data."""
    sc = ctx.step_coefficients(0)
    nl = sc.c_phi * _phi_values(v0.values, v0.values)
    x = (sc.numer * np.fft.rfft(v0.values) + _nl_rfft(nl)) / sc.denom
    return PeriodicField(np.fft.irfft(x, n=ctx.grid.J), ctx.grid.h)


def extrapolate(Vn: PeriodicField, Vnm1: PeriodicField) -> PeriodicField:
    """Second order predictor 2 V^n - V^{n-1}."""
    return PeriodicField(2.0 * Vn.values - Vnm1.values, Vn.h)


def newton_iterate(
    Vn: PeriodicField,
    Vhat: PeriodicField,
    Wj: PeriodicField,
    n: int,
    ctx: SchemeContext,
) -> PeriodicField:
    """One sweep of the predictor-anchored linearization."""
    sc = ctx.step_coefficients(n)
    b = Vn.values + Vhat.values
    rhs_nl = sc.c_psi * (_psi_values(b, Wj.values - Vhat.values) + _phi_values(b, b))
    x = (sc.numer * np.fft.rfft(Vn.values) + _nl_rfft(rhs_nl)) / sc.denom
    return PeriodicField(np.fft.irfft(x, n=ctx.grid.J), ctx.grid.h)


def mean_step_factor(k: float, R_half: float, alpha: float) -> float:
    """Exact one step multiplier of the discrete mean S^n."""
    a = k * (alpha - 1.0)
    return (2.0 * R_half * R_half - a) / (2.0 * R_half * R_half + a)


@dataclass
class Trajectory:
    """Output of a run: strided v snapshots plus per-step scalar paths.

    S[n] is the discrete mean h*sum V^n, Q[n] the exact integral of the
    squared piecewise linear interpolant of V^n, A[n] the trapezoid
    accumulation of Q/(Rdot R^2) used by the mean height closed form, and
    R_nodes[n] the radius at t^n.
    """

    params: ModelParams
    tgrid: TimeGrid
    grid: GridSpec
    law: RadiusLaw
    method: str
    S: np.ndarray
    Q: np.ndarray
    A: np.ndarray
    R_nodes: np.ndarray
    stride: int
    snapshots: dict[int, np.ndarray] = dc_field(default_factory=dict)

    def has(self, n: int) -> bool:
        return n in self.snapshots

    def v(self, n: int) -> PeriodicField:
        try:
            return PeriodicField(self.snapshots[n], self.grid.h)
        except KeyError:
            raise KeyError(
                f"no snapshot stored for step {n} (stride {self.stride})"
            ) from None

    def stored_steps(self) -> list[int]:
        return sorted(self.snapshots)

    def final(self) -> PeriodicField:
        return self.v(self.tgrid.N)


def run(
    params: ModelParams,
    tgrid: TimeGrid,
    grid: GridSpec,
    config: SolverConfig,
    v0: PeriodicField,
    *,
    law: RadiusLaw | None = None,
    method: str = "newton",
    store_stride: int = 1,
    require_admissible: bool = True,
) -> Trajectory:
    """Integrates from v0 over the whole time grid.

    method "newton" uses the linear first step plus j_n linearization sweeps
    per step; method "reference" solves every step to convergence.  Snapshots
    are stored every store_stride steps (steps 0 and N always).
    """
    if method not in ("newton", "reference"):
        raise ValueError(f"unknown method {method!r}")
    if v0.J != grid.J:
        raise ValueError(f"v0 has J={v0.J}, grid expects {grid.J}")
    ctx = SchemeContext(params, tgrid, grid, law=law, config=config)
    report = check_admissibility(params, tgrid, ctx.law)
    if require_admissible and not report.passed:
        raise SolverError(
            f"admissibility failed: R0 bound {report.r0_bound:.6g} "
            f"(pass={report.r0_pass}), k bound {report.k_bound:.6g} (pass={report.k_pass})"
        )

    h = grid.h
    J = grid.J
    k = tgrid.k
    N = tgrid.N
    mean0 = float(np.sum(v0.values)) * h
    if abs(mean0) > 1e-10 * max(1.0, norm_h(v0)):
        warnings.warn(
            f"initial mean {mean0:.3e} is nonzero; it decays geometrically",
            stacklevel=2,
        )

    S = np.empty(N + 1)
    Q = np.empty(N + 1)
    A = np.empty(N + 1)
    R_nodes = np.empty(N + 1)

    X = np.fft.rfft(v0.values)
    vn = v0.values.copy()
    R_nodes[0] = ctx.law.radius_at(0.0)
    S[0] = h * X[0].real
    Q[0] = pw_linear_square_integral(vn, h)
    A[0] = 0.0
    g_prev = Q[0] / (ctx.law.rate(R_nodes[0]) * R_nodes[0] ** 2)

    snapshots: dict[int, np.ndarray] = {0: vn.copy()}
    j_n = ctx.config.newton_iters
    tol = ctx.config.reference_tol
    X_prev = None

    for n in range(N):
        sc = ctx.step_coefficients(n)
        if method == "reference":
            base = sc.numer * X
            w = vn
            converged = False
            for _ in range(50):
                vmid = 0.5 * (vn + w)
                nl = sc.c_phi * _phi_values(vmid, vmid)
                X_new = (base + _nl_rfft(nl)) / sc.denom
                w_new = np.fft.irfft(X_new, n=J)
                delta = w_new - w
                w = w_new
                if math.sqrt(h * float(np.dot(delta, delta))) <= tol * max(
                    1.0, math.sqrt(h * float(np.dot(w, w)))
                ):
                    converged = True
                    break
            if not converged:
                raise SolverError(f"reference step {n} did not converge", step=n)
            X_next = X_new
            v_next = w
        elif n == 0:
            nl = sc.c_phi * _phi_values(vn, vn)
            X_next = (sc.numer * X + _nl_rfft(nl)) / sc.denom
            v_next = np.fft.irfft(X_next, n=J)
        else:
            X_pred = 2.0 * X - X_prev
            vhat = np.fft.irfft(X_pred, n=J)
            b = vn + vhat
            phi_bb = _phi_values(b, b)
            base = sc.numer * X
            w = vhat
            for _ in range(j_n):
                rhs_nl = sc.c_psi * (_psi_values(b, w - vhat) + phi_bb)
                X_next = (base + _nl_rfft(rhs_nl)) / sc.denom
                w = np.fft.irfft(X_next, n=J)
            v_next = w

        m = n + 1
        R_nodes[m] = ctx.law.radius_at(
            m * k, guess=R_nodes[n] + ctx.law.rate(R_nodes[n]) * k
        )
        S[m] = h * X_next[0].real
        Q[m] = pw_linear_square_integral(v_next, h)
        g = Q[m] / (ctx.law.rate(R_nodes[m]) * R_nodes[m] ** 2)
        A[m] = A[n] + 0.5 * k * (g_prev + g)
        g_prev = g
        if m % store_stride == 0 or m == N:
            snapshots[m] = v_next.copy()
        X_prev, X, vn = X, X_next, v_next

    return Trajectory(
        params=params,
        tgrid=tgrid,
        grid=grid,
        law=ctx.law,
        method=method,
        S=S,
        Q=Q,
        A=A,
        R_nodes=R_nodes,
        stride=store_stride,
        snapshots=snapshots,
    )
