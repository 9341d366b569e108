"""Hot numeric kernels: numba-compiled with a pure-numpy fallback.

The backend is fixed at import time. Set ``DELTOID_NO_NUMBA=1`` to force
the numpy path; it is also selected automatically when numba is missing.
Both variants of every kernel stay importable (``*_numba`` is ``None``
without numba) for parity tests and for ``benchmarks/bench_kernels.py``.
"""

from __future__ import annotations

import os

import numpy as np

from ._rng import GOLDEN, INV_2_53, MIX_1, MIX_2, mix64

RASTER_CLAMP = 1.0e6
TWO_THIRDS = 2.0 / 3.0

_SAT_LIMIT = 2.0**500  # window magnitudes past this can never drop below the clamp
_SAT_SCALE = 2.0**-512


def _numba_disabled() -> bool:
    flag = os.environ.get("DELTOID_NO_NUMBA", "").strip().lower()
    return flag not in ("", "0", "false", "no")


_HAVE_NUMBA = False
if not _numba_disabled():
    try:
        import numba

        _HAVE_NUMBA = True
    except ImportError:  # pragma: no cover - environment dependent
        _HAVE_NUMBA = False


def backend() -> str:
    """Name of the active kernel backend: ``"numba"`` or ``"numpy"``."""
    return "numba" if _HAVE_NUMBA else "numpy"


# ---------------------------------------------------------------------------
# |P_n| raster over a rectangular grid of cell centers
# ---------------------------------------------------------------------------

def raster_magnitudes_numpy(re_centers: np.ndarray, im_centers: np.ndarray,
                            n: int) -> np.ndarray:
    z = re_centers[np.newaxis, :] + 1j * im_centers[:, np.newaxis]
    if n == 0:
        return np.ones(z.shape)
    if n == 1:
        return np.minimum(np.abs(z), RASTER_CLAMP)
    a = np.ones_like(z)
    b = z.copy()
    c = z * z
    zz = 1.5 * z
    saturated = np.zeros(z.shape, dtype=bool)
    for _ in range(2, n):
        a, b, c = b, c, zz * c - 0.5 * a
        over = np.abs(c) > _SAT_LIMIT
        if over.any():
            saturated |= over
            a[over] *= _SAT_SCALE
            b[over] *= _SAT_SCALE
            c[over] *= _SAT_SCALE
    return np.where(saturated, RASTER_CLAMP, np.minimum(np.abs(c), RASTER_CLAMP))


raster_magnitudes_numba = None
if _HAVE_NUMBA:

    @numba.njit(cache=True)
    def raster_magnitudes_numba(re_centers, im_centers, n):  # noqa: F811
        rows = im_centers.size
        cols = re_centers.size
        out = np.empty((rows, cols))
        for i in range(rows):
            for j in range(cols):
                z = complex(re_centers[j], im_centers[i])
                if n == 0:
                    val = 1.0
                elif n == 1:
                    val = abs(z)
                else:
                    a = 1.0 + 0.0j
                    b = z
                    c = z * z
                    zz = 1.5 * z
                    saturated = False
                    for _ in range(2, n):
                        a, b, c = b, c, zz * c - 0.5 * a
                        if abs(c) > _SAT_LIMIT:
                            saturated = True
                            a *= _SAT_SCALE
                            b *= _SAT_SCALE
                            c *= _SAT_SCALE
                    val = RASTER_CLAMP if saturated else abs(c)
                out[i, j] = min(val, RASTER_CLAMP)
        return out


def raster_magnitudes(re_centers: np.ndarray, im_centers: np.ndarray,
                      n: int) -> np.ndarray:
    """Grid of |P_n| at the given cell centers, clamped to ``RASTER_CLAMP``."""
    re_centers = np.ascontiguousarray(re_centers, dtype=np.float64)
    im_centers = np.ascontiguousarray(im_centers, dtype=np.float64)
    if _HAVE_NUMBA:
        return raster_magnitudes_numba(re_centers, im_centers, n)
    return raster_magnitudes_numpy(re_centers, im_centers, n)


# ---------------------------------------------------------------------------
# CSR matrix-vector product
# ---------------------------------------------------------------------------

def csr_matvec_numpy(row_ids: np.ndarray, col_indices: np.ndarray,
                     values: np.ndarray, x: np.ndarray, n: int) -> np.ndarray:
    return np.bincount(row_ids, weights=values * x[col_indices], minlength=n)


csr_matvec_numba = None
if _HAVE_NUMBA:

    @numba.njit(cache=True)
    def csr_matvec_numba(row_offsets, col_indices, values, x):  # noqa: F811
        n = row_offsets.size - 1
        out = np.empty(n)
        for i in range(n):
            acc = 0.0
            for k in range(row_offsets[i], row_offsets[i + 1]):
                acc += values[k] * x[col_indices[k]]
            out[i] = acc
        return out


def csr_matvec(row_offsets: np.ndarray, col_indices: np.ndarray,
               values: np.ndarray, x: np.ndarray,
               row_ids: np.ndarray | None = None) -> np.ndarray:
    """y = A x for a CSR matrix; ``row_ids`` is the cached numpy-path helper."""
    if _HAVE_NUMBA:
        return csr_matvec_numba(row_offsets, col_indices, values, x)
    n = row_offsets.size - 1
    if row_ids is None:
        row_ids = np.repeat(np.arange(n), np.diff(row_offsets))
    return csr_matvec_numpy(row_ids, col_indices, values, x, n)


# ---------------------------------------------------------------------------
# Monte-Carlo walk: final states of `trials` independent runs
# ---------------------------------------------------------------------------

def walk_final_states_numpy(n: int, trials: int, base: np.uint64) -> np.ndarray:
    state = np.zeros(trials, dtype=np.int64)
    trial_offsets = np.arange(trials, dtype=np.uint64) * np.uint64(n)
    for step in range(n):
        bits = mix64(base + (trial_offsets + np.uint64(step)) * GOLDEN)
        u = (bits >> np.uint64(11)).astype(np.float64) * INV_2_53
        sig = np.sign(state)
        mag = np.abs(state)
        up = np.where(mag == 0, u < 0.5,
                      np.where(mag == 1, u < 0.75, u < TWO_THIRDS))
        state = np.where(
            mag == 0,
            np.where(up, 1, -1),
            np.where(mag == 1,
                     np.where(up, 2 * sig, -2 * sig),
                     np.where(up, state + sig, state - 2 * sig)),
        )
    return state


walk_final_states_numba = None
if _HAVE_NUMBA:

    @numba.njit(cache=True)
    def _mix64_nb(x):
        x = x + GOLDEN
        x = (x ^ (x >> np.uint64(30))) * MIX_1
        x = (x ^ (x >> np.uint64(27))) * MIX_2
        return x ^ (x >> np.uint64(31))

    @numba.njit(cache=True)
    def walk_final_states_numba(n, trials, base):  # noqa: F811
        out = np.empty(trials, dtype=np.int64)
        for t in range(trials):
            s = 0
            row = np.uint64(t) * np.uint64(n)
            for step in range(n):
                bits = _mix64_nb(base + (row + np.uint64(step)) * GOLDEN)
                u = np.float64(bits >> np.uint64(11)) * INV_2_53
                if s == 0:
                    s = 1 if u < 0.5 else -1
                elif s == 1:
                    s = 2 if u < 0.75 else -2
                elif s == -1:
                    s = -2 if u < 0.75 else 2
                elif s >= 2:
                    s = s + 1 if u < TWO_THIRDS else s - 2
                else:
                    s = s - 1 if u < TWO_THIRDS else s + 2
            out[t] = s
        return out


def walk_final_states(n: int, trials: int, base: np.uint64) -> np.ndarray:
    if _HAVE_NUMBA:
        return walk_final_states_numba(n, trials, base)
    return walk_final_states_numpy(n, trials, base)
