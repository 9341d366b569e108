"""Markov walk behind the monomial expansion z^n = sum_k beta_k P_k(z).

The integer chain starts at 0 and moves by

    0  -> +-1        with probability 1/2 each,
    +-1 -> +-2       with probability 3/4,  -+2 with probability 1/4,
    +-i -> +-(i+1)   with probability 2/3,  +-(i-2) with probability 1/3   (i >= 2).

With P extended to negative indices by symmetry, one step multiplies the
expected polynomial value by z, so beta_k = P(|Y_n| = k) are the exact
expansion coefficients of z^n and the tail bound 2 exp(-t^2/7) controls
the error of truncating at degree floor(t sqrt(n)).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels, _rng
from .poly import eval_P_sequence


@dataclass(frozen=True)
class WalkDistribution:
    """Distribution of the walk after n steps over states -n..n."""

    n: int
    probs: np.ndarray  # length 2n+1; probs[i] = P(Y_n = i - n)

    def __post_init__(self):
        if self.probs.shape != (2 * self.n + 1,):
            raise ValueError("probs must have length 2n+1")

    @property
    def states(self) -> np.ndarray:
        return np.arange(-self.n, self.n + 1)

    def prob(self, state: int) -> float:
        if abs(state) > self.n:
            return 0.0
        return float(self.probs[state + self.n])


@dataclass(frozen=True)
class BetaCoefficients:
    """Expansion coefficients beta_k = P(|Y_n| = k), k = 0..n."""

    n: int
    beta: np.ndarray


def initial_distribution() -> WalkDistribution:
    return WalkDistribution(0, np.array([1.0]))


def step_distribution(d: WalkDistribution) -> WalkDistribution:
    """One exact Markov step; output step count is d.n + 1."""
    n = d.n
    p = d.probs
    c = n
    out = np.zeros(2 * n + 3)
    co = n + 1
    out[co + 1] += 0.5 * p[c]
    out[co - 1] += 0.5 * p[c]
    if n >= 1:
        out[co + 2] += 0.75 * p[c + 1] + 0.25 * p[c - 1]
        out[co - 2] += 0.75 * p[c - 1] + 0.25 * p[c + 1]
    if n >= 2:
        up = p[c + 2:c + n + 1]        # states 2..n
        out[co + 3:co + n + 2] += (2.0 / 3.0) * up
        out[co:co + n - 1] += (1.0 / 3.0) * up
        down = p[c - n:c - 1]          # states -n..-2
        out[co - n - 1:co - 2] += (2.0 / 3.0) * down
        out[co - n + 2:co + 1] += (1.0 / 3.0) * down
    return WalkDistribution(n + 1, out)


def walk_distribution(n: int) -> WalkDistribution:
    """Exact distribution after n steps (dynamic programming, O(n^2))."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    d = initial_distribution()
    for _ in range(n):
        d = step_distribution(d)
    return d


@lru_cache(maxsize=256)
def beta_coeffs(n: int) -> BetaCoefficients:
    """Folded coefficients beta_k = P(|Y_n| = k); cached, array read-only."""
    d = walk_distribution(n)
    p = d.probs
    beta = np.empty(n + 1)
    beta[0] = p[n]
    if n >= 1:
        beta[1:] = p[n + 1:] + p[n - 1::-1]
    beta.flags.writeable = False
    return BetaCoefficients(n, beta)


def approx_monomial(z: complex, n: int, t: float) -> complex:
    """Partial sum sum_{k=0}^{min(floor(t sqrt(n)), n)} beta_k P_k(z)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if t <= 0:
        raise ValueError("t must be positive")
    m = min(int(math.floor(t * math.sqrt(n))), n)
    beta = beta_coeffs(n).beta
    seq = eval_P_sequence(m, z)
    total = 0.0 + 0.0j
    for k in range(m + 1):
        if beta[k] != 0.0:
            total += beta[k] * seq[k].to_complex()
    return total


def tail_bound(t: float) -> float:
    """Two-sided truncation bound 2 exp(-t^2/7)."""
    if t <= 0:
        raise ValueError("t must be positive")
    return 2.0 * math.exp(-t * t / 7.0)


def simulate_walk(n: int, trials: int, seed: int) -> WalkDistribution:
    """Empirical distribution of Y_n over `trials` independent runs.

    Draws come from the counter-based generator, so the result is a pure
    function of (n, trials, seed) regardless of backend or threading.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    if trials < 1:
        raise ValueError("trials must be positive")
    states = _kernels.walk_final_states(n, trials, _rng.seed_base(seed))
    counts = np.bincount(states + n, minlength=2 * n + 1)
    return WalkDistribution(n, counts / trials)
