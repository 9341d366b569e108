"""Parity between the numba kernels and their pure-numpy fallbacks."""

import os
import subprocess
import sys

import numpy as np
import pytest

from deltoid import _rng, barbell_matrix
from deltoid import _kernels as K

needs_numba = pytest.mark.skipif(K.backend() != "numba",
                                 reason="numba backend unavailable")


@needs_numba
def test_raster_parity():
    grid = np.linspace(-1, 1, 64) + 0.5 / 64
    for n in (0, 1, 2, 7, 40, 96):
        a = K.raster_magnitudes_numba(grid, grid, n)
        b = K.raster_magnitudes_numpy(grid, grid, n)
        assert np.allclose(a, b, rtol=1e-12, atol=1e-300)


@needs_numba
def test_walk_parity_bit_identical():
    base = _rng.seed_base(987)
    for n, trials in ((0, 10), (1, 1000), (20, 20_000)):
        a = K.walk_final_states_numba(n, trials, base)
        b = K.walk_final_states_numpy(n, trials, base)
        assert np.array_equal(a, b)


@needs_numba
def test_csr_parity():
    P = barbell_matrix(80, 0.08, seed=6)
    rng = np.random.default_rng(0)
    rows = np.repeat(np.arange(P.dimension), np.diff(P.row_offsets))
    for _ in range(5):
        x = rng.normal(size=P.dimension)
        a = K.csr_matvec_numba(P.row_offsets, P.col_indices, P.values, x)
        b = K.csr_matvec_numpy(rows, P.col_indices, P.values, x, P.dimension)
        assert np.allclose(a, b, rtol=1e-12, atol=1e-15)


def test_csr_public_wrapper_without_row_ids():
    P = barbell_matrix(30, 0.2, seed=1)
    x = np.arange(P.dimension, dtype=float)
    got = K.csr_matvec(P.row_offsets, P.col_indices, P.values, x)
    assert np.allclose(got, P.to_dense() @ x, atol=1e-12)


def test_env_flag_forces_numpy_backend():
    env = dict(os.environ, DELTOID_NO_NUMBA="1")
    code = (
        "import deltoid, numpy as np\n"
        "assert deltoid.backend() == 'numpy'\n"
        "d = deltoid.simulate_walk(5, 1000, seed=3)\n"
        "print(repr(d.probs.tolist()))\n"
    )
    out = subprocess.run([sys.executable, "-c", code], env=env,
                         capture_output=True, text=True, check=True)
    forced = np.array(eval(out.stdout.strip()))
    native = __import__("deltoid").simulate_walk(5, 1000, seed=3).probs
    assert np.array_equal(forced, native)
