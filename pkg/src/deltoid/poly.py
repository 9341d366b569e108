"""The deltoid polynomial family and its region geometry.

The family P_n is defined by P_0 = 1, P_1 = z, P_2 = z^2 and the
three-step-window recurrence

    P_{n+1}(z) = (3/2) z P_n(z) - (1/2) P_{n-2}(z),    n >= 2.

It is bounded by 1 on the closed deltoid region whose boundary is
gamma(t) = (2/3) e^{it} + (1/3) e^{-2it}, and grows at least like
(1/3)(1 + sqrt(eps))^n on the circle |z| = 1 + eps. Everything here is
driven by the characteristic cubic of the recurrence,

    p_z(r) = r^3 - (3/2) z r^2 + 1/2,

whose root moduli decide region membership and whose closed-form roots
and recurrence coefficients are available in trigonometric form on the
real ray z = 1 + eps.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels

RASTER_CLAMP = _kernels.RASTER_CLAMP

_RENORM_HI = 2.0**512
_RENORM_LO = 2.0**-512

_OMEGA = complex(-0.5, math.sqrt(3.0) / 2.0)  # primitive cube root of unity
_CUSPS = (1.0 + 0.0j, cmath.exp(2j * math.pi / 3), cmath.exp(-2j * math.pi / 3))


class ScaledComplex(NamedTuple):
    """A complex value stored as ``mantissa * 2**log2_scale``.

    Nonzero values keep the mantissa magnitude in [0.5, 2); zero is stored
    as (0, 0). This keeps quantities like |P_n(z)| representable far past
    the double-precision exponent range.
    """

    mantissa: complex
    log2_scale: float

    @staticmethod
    def from_complex(value: complex) -> "ScaledComplex":
        return _normalize(complex(value), 0.0)

    def to_complex(self) -> complex:
        """Plain complex value; overflows to inf past the double range."""
        e = int(self.log2_scale)
        return complex(math.ldexp(self.mantissa.real, e),
                       math.ldexp(self.mantissa.imag, e))

    def log2_abs(self) -> float:
        """log2 of the magnitude (-inf for zero)."""
        a = abs(self.mantissa)
        if a == 0.0:
            return -math.inf
        return math.log2(a) + self.log2_scale


def _normalize(m: complex, scale: float) -> ScaledComplex:
    a = abs(m)
    if a == 0.0:
        return ScaledComplex(0j, 0.0)
    e = math.floor(math.log2(a))
    if e != 0:
        m = complex(math.ldexp(m.real, -e), math.ldexp(m.imag, -e))
        scale += e
    return ScaledComplex(m, scale)


@dataclass(frozen=True)
class DeltoidRegion:
    """Parameters of the region-membership test."""

    root_tolerance: float = 1e-9
    boundary_samples: int = 4096

    def __post_init__(self):
        if self.root_tolerance <= 0:
            raise ValueError("root_tolerance must be positive")
        if self.boundary_samples < 64:
            raise ValueError("boundary_samples must be at least 64")


@dataclass(frozen=True)
class GridSpec:
    """Square raster over [xmin, xmax] x [ymin, ymax], sampled at cell centers."""

    resolution: int = 512
    xmin: float = -1.0
    xmax: float = 1.0
    ymin: float = -1.0
    ymax: float = 1.0

    def __post_init__(self):
        if self.resolution < 1:
            raise ValueError("resolution must be at least 1")
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise ValueError("grid bounds must be nonempty")

    def re_centers(self) -> np.ndarray:
        w = (self.xmax - self.xmin) / self.resolution
        return self.xmin + w * (np.arange(self.resolution) + 0.5)

    def im_centers(self) -> np.ndarray:
        w = (self.ymax - self.ymin) / self.resolution
        return self.ymin + w * (np.arange(self.resolution) + 0.5)


@dataclass(frozen=True)
class CubicSolution:
    """Closed-form roots/coefficients of p_z at z = 1 + epsilon.

    Satisfies z = (1+delta)^(1/3) = 1+epsilon with delta = 3e + 3e^2 + e^3,
    p_z(r_i) = 0, the moment system sum(c_i r_i^k) = z^k for k = 0, 1, 2,
    and discriminant (27/4)(z^3 - 1).
    """

    delta: float
    epsilon: float
    z: float
    r1: float
    r2: float
    r3: float
    c1: float
    c2: float
    c3: float
    discriminant: complex


def eval_P(n: int, z: complex) -> complex:
    """P_n(z) by the forward recurrence in plain double precision.

    Raises OverflowError when the unscaled value leaves the representable
    range; use :func:`eval_P_scaled` in that regime.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    z = complex(z)
    if n == 0:
        return 1.0 + 0.0j
    if n == 1:
        return z
    a, b, c = 1.0 + 0.0j, z, z * z
    zz = 1.5 * z
    for _ in range(n - 2):
        a, b, c = b, c, zz * c - 0.5 * a
    if not (math.isfinite(c.real) and math.isfinite(c.imag)):
        raise OverflowError(f"|P_{n}(z)| overflows doubles; use eval_P_scaled")
    return c


def eval_P_scaled(n: int, z: complex) -> ScaledComplex:
    """P_n(z) in scaled form, safe for any growth rate."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return eval_P_sequence(n, z)[n]


def eval_P_sequence(n_max: int, z: complex) -> list[ScaledComplex]:
    """[P_0(z), ..., P_{n_max}(z)] in scaled form, one pass over the recurrence."""
    if n_max < 0:
        raise ValueError("n_max must be nonnegative")
    z = complex(z)
    a, b, c = 1.0 + 0.0j, z, z * z
    out = [_normalize(v, 0.0) for v in (a, b, c)[:n_max + 1]]
    if n_max <= 2:
        return out
    zz = 1.5 * z
    scale = 0.0
    for _ in range(n_max - 2):
        a, b, c = b, c, zz * c - 0.5 * a
        m = max(abs(a), abs(b), abs(c))
        if m > _RENORM_HI or (0.0 < m < _RENORM_LO):
            e = math.floor(math.log2(m))
            a = complex(math.ldexp(a.real, -e), math.ldexp(a.imag, -e))
            b = complex(math.ldexp(b.real, -e), math.ldexp(b.imag, -e))
            c = complex(math.ldexp(c.real, -e), math.ldexp(c.imag, -e))
            scale += e
        out.append(_normalize(c, scale))
    return out


def gamma_point(t: float) -> complex:
    """Boundary point gamma(t) = (2/3) e^{it} + (1/3) e^{-2it}."""
    return (2.0 / 3.0) * cmath.exp(1j * t) + (1.0 / 3.0) * cmath.exp(-2j * t)


def gamma_samples(count: int) -> np.ndarray:
    """`count` boundary points at uniformly spaced parameters in [0, 2pi)."""
    t = 2.0 * math.pi * np.arange(count) / count
    return (2.0 / 3.0) * np.exp(1j * t) + (1.0 / 3.0) * np.exp(-2j * t)


def cubic_roots_general(z: complex) -> tuple[complex, complex, complex]:
    """Roots of p_z(r) = r^3 - (3/2) z r^2 + 1/2 by the depressed-cubic formula.

    The cube-root branch is chosen to maximize |u|, and the second Cardano
    variable is recovered as v = -p/(3u) so that u v = -p/3 holds exactly.
    """
    b = -1.5 * complex(z)
    p = -(b * b) / 3.0
    q = 2.0 * b**3 / 27.0 + 0.5
    s = cmath.sqrt(q * q / 4.0 + p**3 / 27.0)
    u3 = -q / 2.0 + s
    alt = -q / 2.0 - s
    if abs(alt) > abs(u3):
        u3 = alt
    if u3 == 0:
        y0 = y1 = y2 = 0j  # p == q == 0 (unreachable for p_z, kept for safety)
    else:
        u = cmath.exp(cmath.log(u3) / 3.0)
        v = -p / (3.0 * u)
        w = _OMEGA
        wc = w.conjugate()
        y0 = u + v
        y1 = w * u + wc * v
        y2 = wc * u + w * v
    shift = -b / 3.0
    return (y0 + shift, y1 + shift, y2 + shift)


def in_deltoid(z: complex, region: DeltoidRegion | None = None) -> bool:
    """Whether z lies in the closed deltoid region.

    z is exterior iff the exterior map psi(w) = (2/3) w + (1/3) w^{-2}
    reaches it from some |w| > 1, i.e. iff p_z has a root of modulus > 1;
    so membership is "all three root moduli <= 1 + root_tolerance". Points
    within root_tolerance of a cusp (the cube roots of unity, where p_z has
    a double root) are classified interior, since the region is closed.
    """
    if region is None:
        region = DeltoidRegion()
    z = complex(z)
    for cusp in _CUSPS:
        if abs(z - cusp) <= region.root_tolerance:
            return True
    limit = 1.0 + region.root_tolerance
    return all(abs(r) <= limit for r in cubic_roots_general(z))


def sample_interior(count: int, seed: int,
                    region: DeltoidRegion | None = None) -> np.ndarray:
    """`count` points of the open box [-1,1]^2 accepted by :func:`in_deltoid`.

    Rejection sampling with a seeded generator; deterministic per seed.
    """
    rng = np.random.default_rng(seed)
    out: list[complex] = []
    while len(out) < count:
        batch = rng.uniform(-1.0, 1.0, size=(4 * (count - len(out)) + 64, 2))
        for re, im in batch:
            z = complex(re, im)
            if in_deltoid(z, region):
                out.append(z)
                if len(out) == count:
                    break
    return np.array(out)


def cubic_solution_trig(epsilon: float) -> CubicSolution:
    """Roots and recurrence coefficients of p_z at z = 1 + epsilon.

    Uses the arccot/cosine closed forms for the roots and the arccot/sine
    closed forms for the coefficients, with arccot(x) = atan2(1, x).
    """
    epsilon = float(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    delta = epsilon * (3.0 + epsilon * (3.0 + epsilon))
    z = 1.0 + epsilon  # equals (1 + delta)^(1/3) exactly
    theta = math.atan2(1.0, math.sqrt(delta))
    third = 2.0 * math.pi / 3.0

    def root(offset: float) -> float:
        return 0.5 * z * (1.0 + 2.0 * math.cos(2.0 / 3.0 * theta + offset))

    scale = math.sqrt(1.0 + delta)

    def coeff(offset: float) -> float:
        return (1.0 + scale * math.sin(theta / 3.0 + offset)) / 3.0

    return CubicSolution(
        delta=delta,
        epsilon=epsilon,
        z=z,
        r1=root(0.0),
        r2=root(third),
        r3=root(-third),
        c1=coeff(0.0),
        c2=coeff(-third),
        c3=coeff(third),
        discriminant=complex(27.0 / 4.0 * delta, 0.0),
    )


def growth_lower_bound(n: int, epsilon: float) -> float:
    """log2 of the guaranteed magnitude (1/3)(1 + sqrt(eps))^n on |z| = 1+eps."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    return n * math.log2(1.0 + math.sqrt(epsilon)) - math.log2(3.0)


def raster_magnitude(n: int, grid: GridSpec | None = None) -> np.ndarray:
    """Matrix of |P_n| over the grid's cell centers, clamped to 1e6.

    Row i runs over imaginary parts (ascending), column j over real parts.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if grid is None:
        grid = GridSpec()
    return _kernels.raster_magnitudes(grid.re_centers(), grid.im_centers(), n)
