"""Power-type iterations: plain, order-1 momentum, and order-2 momentum.

The order-2 ("deltoid") update

    u_{k+1} = A x_k - (beta / (h_k h_{k-1})) x_{k-2}

is the normalized power iteration of the augmented operator
[[A, 0, -b I], [I, 0, 0], [0, I, 0]]; with beta = 4 lambda_*^3 / 27 the
unnormalized iterates are P_N(A/lambda_*) v_0, so every eigendirection
inside lambda_* times the deltoid region is damped below 1 while the
dominant one grows like (1 + sqrt(|lambda_1/lambda_*| - 1))^N. The
dynamic variant estimates beta on the fly from the residual-decay ratio
via r(rho) = 1/((log rho)^2 + 1) and the Rayleigh quotient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _rng

CONVERGED_RESIDUAL = 1e-15
_RHO_FLOOR = 1e-12


class BreakdownError(ArithmeticError):
    """A normalization norm hit zero during an iteration."""


@dataclass
class MomentumConfig:
    """Run parameters shared by the iteration drivers."""

    iterations: int
    beta: float | None = None
    seed: int = 0
    record_errors: bool = True

    def __post_init__(self):
        if self.iterations < 3:
            raise ValueError("iterations must be at least 3")


@dataclass
class IterationTrace:
    """Per-iteration record of a power-type run.

    Index k (0-based) describes the step that produced x_{k+1}:
    ``h[k]`` is the normalization norm of that step, ``nu[k]`` the Rayleigh
    quotient <v_{k+1}, x_k>, ``d[k]`` the residual ||v_{k+1} - nu_k x_k||,
    ``beta[k]`` the momentum coefficient used (0 where none). ``rel_err``
    is filled when a reference eigenvector was supplied; ``xs``/``vs``
    hold the full iterate history when vector recording was requested
    (``vs[k]`` is v_{k+1}).
    """

    method: str
    h0: float
    h: np.ndarray
    nu: np.ndarray
    d: np.ndarray
    beta: np.ndarray
    rel_err: np.ndarray | None
    x_final: np.ndarray
    converged: bool = False
    xs: list[np.ndarray] | None = None
    vs: list[np.ndarray] | None = None

    @property
    def iterations(self) -> int:
        return len(self.h)


@dataclass
class _Recorder:
    ref: np.ndarray | None
    record_vectors: bool
    h: list[float] = field(default_factory=list)
    nu: list[float] = field(default_factory=list)
    d: list[float] = field(default_factory=list)
    beta: list[float] = field(default_factory=list)
    rel_err: list[float] = field(default_factory=list)
    xs: list[np.ndarray] = field(default_factory=list)
    vs: list[np.ndarray] = field(default_factory=list)

    def start(self, x0: np.ndarray):
        if self.record_vectors:
            self.xs.append(x0.copy())

    def step(self, h, nu, d, beta, x_next, v):
        self.h.append(h)
        self.nu.append(nu)
        self.d.append(d)
        self.beta.append(beta)
        if self.ref is not None:
            self.rel_err.append(relative_error(x_next, self.ref))
        if self.record_vectors:
            self.xs.append(x_next.copy())
            self.vs.append(v.copy())

    def trace(self, method, h0, x_final, converged=False) -> IterationTrace:
        return IterationTrace(
            method=method,
            h0=h0,
            h=np.array(self.h),
            nu=np.array(self.nu),
            d=np.array(self.d),
            beta=np.array(self.beta),
            rel_err=np.array(self.rel_err) if self.ref is not None else None,
            x_final=x_final,
            converged=converged,
            xs=self.xs if self.record_vectors else None,
            vs=self.vs if self.record_vectors else None,
        )


def _norm(v: np.ndarray) -> float:
    return float(np.linalg.norm(v))


def _unit_start(v0) -> tuple[np.ndarray, float]:
    v0 = np.asarray(v0, dtype=np.float64)
    h0 = _norm(v0)
    if h0 == 0.0:
        raise BreakdownError("initial vector has zero norm")
    return v0 / h0, h0


def seeded_unit_vector(dim: int, seed: int) -> np.ndarray:
    """Deterministic unit vector with entries drawn uniformly from [0, 1)."""
    v = _rng.uniforms_at(seed, np.arange(dim))
    n = np.linalg.norm(v)
    if n == 0.0:  # pragma: no cover - probability ~ 2^-53 per entry
        v[0] = 1.0
        n = 1.0
    return v / n


def power_method(A, v0, N: int, *, ref=None, record_vectors=False) -> IterationTrace:
    """Plain power iteration: v_{k+1} = A x_k, x_{k+1} = v_{k+1}/||v_{k+1}||."""
    if N < 1:
        raise ValueError("N must be positive")
    x, h0 = _unit_start(v0)
    rec = _Recorder(ref, record_vectors)
    rec.start(x)
    for k in range(N):
        v = A.apply(x)
        h = _norm(v)
        if h == 0.0:
            raise BreakdownError(f"h_{k + 1} = 0")
        nu = float(v @ x)
        d = _norm(v - nu * x)
        x = v / h
        rec.step(h, nu, d, 0.0, x, v)
    return rec.trace("power", h0, x)


def _momentum_warmup(A, v0, rec: _Recorder):
    """Two plain power iterations on (2/3) A, recording nu and d as usual."""
    x, h0 = _unit_start(v0)
    rec.start(x)
    xs = [x]
    hs = []
    ds = []
    for k in range(2):
        v = (2.0 / 3.0) * A.apply(x)
        h = _norm(v)
        if h == 0.0:
            raise BreakdownError(f"h_{k + 1} = 0 during warmup")
        nu = float(v @ x)
        d = _norm(v - nu * x)
        x = v / h
        rec.step(h, nu, d, 0.0, x, v)
        xs.append(x)
        hs.append(h)
        ds.append(d)
    return h0, xs, hs, ds


def deltoid_momentum(A, v0, beta: float, N: int, *,
                     ref=None, record_vectors=False) -> IterationTrace:
    """Order-2 momentum iteration with a static coefficient.

    After the warmup, each step applies
    u_{k+1} = A x_k - (beta/(h_k h_{k-1})) x_{k-2} and normalizes.
    The optimal coefficient is beta = 4 lambda_2^3 / 27.
    """
    if N < 3:
        raise ValueError("N must be at least 3")
    rec = _Recorder(ref, record_vectors)
    h0, xs, hs, _ = _momentum_warmup(A, v0, rec)
    x_m2, x_m1, x = xs  # x_{k-2}, x_{k-1}, x_k at k = 2
    h_prev, h_cur = hs
    for k in range(2, N):
        v = A.apply(x)
        nu = float(v @ x)
        d = _norm(v - nu * x)
        u = v - (beta / (h_cur * h_prev)) * x_m2
        h = _norm(u)
        if h == 0.0:
            raise BreakdownError(f"h_{k + 1} = 0")
        x_m2, x_m1, x = x_m1, x, u / h
        h_prev, h_cur = h_cur, h
        rec.step(h, nu, d, beta, x, v)
    return rec.trace("deltoid", h0, x)


def dynamic_deltoid(A, v0, N: int, *,
                    ref=None, record_vectors=False) -> IterationTrace:
    """Order-2 momentum with the coefficient estimated on the fly.

    Each step maps the clamped residual-decay ratio rho_{k-1} through
    r(rho) = 1/((log rho)^2 + 1) and sets beta_k = 4 (nu_k r_k)^3 / 27.
    Intended for lambda_1 > lambda_2 > 0 real. Stops early (trace
    truncated, ``converged`` set) once the residual drops to 1e-15.
    """
    if N < 3:
        raise ValueError("N must be at least 3")
    rec = _Recorder(ref, record_vectors)
    h0, xs, hs, ds = _momentum_warmup(A, v0, rec)
    x_m2, x_m1, x = xs
    h_prev, h_cur = hs
    d_prev = ds[1]
    if d_prev <= CONVERGED_RESIDUAL:
        return rec.trace("deltoid-dyn", h0, x, converged=True)
    for k in range(2, N):
        v = A.apply(x)
        nu = float(v @ x)
        d = _norm(v - nu * x)
        if d <= CONVERGED_RESIDUAL:
            return rec.trace("deltoid-dyn", h0, x, converged=True)
        rho = min(d / d_prev, 1.0)
        r = rate_of_rho(max(rho, _RHO_FLOOR))
        beta_k = 4.0 * (nu * r) ** 3 / 27.0
        u = v - (beta_k / (h_cur * h_prev)) * x_m2
        h = _norm(u)
        if h == 0.0:
            raise BreakdownError(f"h_{k + 1} = 0")
        x_m2, x_m1, x = x_m1, x, u / h
        h_prev, h_cur = h_cur, h
        d_prev = d
        rec.step(h, nu, d, beta_k, x, v)
    return rec.trace("deltoid-dyn", h0, x)


def chebyshev_momentum(A, v0, beta: float, N: int, *,
                       ref=None, record_vectors=False) -> IterationTrace:
    """Order-1 momentum baseline: u_{k+1} = A x_k - (beta/h_k) x_{k-1}.

    The first step has no history and reduces to a plain power step. For
    symmetric spectra the optimal coefficient is beta = lambda_2^2 / 4.
    """
    if N < 1:
        raise ValueError("N must be positive")
    x, h0 = _unit_start(v0)
    rec = _Recorder(ref, record_vectors)
    rec.start(x)
    x_prev = None
    h_cur = None
    for k in range(N):
        v = A.apply(x)
        nu = float(v @ x)
        d = _norm(v - nu * x)
        if x_prev is None:
            used_beta = 0.0
            u = v
        else:
            used_beta = beta
            u = v - (beta / h_cur) * x_prev
        h = _norm(u)
        if h == 0.0:
            raise BreakdownError(f"h_{k + 1} = 0")
        x_prev, x = x, u / h
        h_cur = h
        rec.step(h, nu, d, used_beta, x, v)
    return rec.trace("cheb1", h0, x)


def augmented_apply(A, beta: float, y: np.ndarray) -> np.ndarray:
    """Apply the block operator [[A, 0, -beta I], [I, 0, 0], [0, I, 0]]."""
    y = np.asarray(y, dtype=np.float64)
    n = A.dimension
    if y.shape != (3 * n,):
        raise ValueError(f"expected a vector of length {3 * n}, got {y.shape}")
    y1, y2, y3 = y[:n], y[n:2 * n], y[2 * n:]
    return np.concatenate([A.apply(y1) - beta * y3, y1, y2])


def rate_of_rho(rho: float) -> float:
    """Eigenvalue-ratio estimate r(rho) = 1/((log rho)^2 + 1)."""
    if rho <= 0:
        raise ValueError("rho must be positive")
    lg = math.log(rho)
    return 1.0 / (lg * lg + 1.0)


def relative_error(x: np.ndarray, phi1: np.ndarray) -> float:
    """Distance from the line through x to phi1, normalized by ||phi1||.

    Computes (1/||phi1||) ||(sum_i conj(x_i) phi1_i / ||x||^2) x - phi1||;
    the conjugate placement makes the metric invariant under x -> c x for
    any complex c != 0, which is the point of the definition.
    """
    x = np.asarray(x)
    phi1 = np.asarray(phi1)
    nx2 = np.vdot(x, x).real
    np1 = math.sqrt(np.vdot(phi1, phi1).real)
    if nx2 == 0.0 or np1 == 0.0:
        raise ValueError("relative_error requires nonzero vectors")
    coeff = np.vdot(x, phi1)  # sum_i conj(x_i) phi1_i
    return float(np.linalg.norm((coeff / nx2) * x - phi1) / np1)
