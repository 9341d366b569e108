"""Test matrices and a residual-certified dominant-eigenpair oracle.

Both matrix types satisfy the linear-operator contract used by the
iteration drivers: a ``dimension`` attribute and an ``apply(x) -> y``
matrix-vector product. Instances are immutable and safe to share.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels, _rng
from .iterate import BreakdownError, seeded_unit_vector


class NoConvergenceWarning(UserWarning):
    """The eigenpair oracle hit its iteration cap before certification."""


@dataclass(frozen=True)
class DenseMatrix:
    """Row-major dense real matrix."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2 or v.shape[0] != v.shape[1]:
            raise ValueError("values must be a square 2-D array")
        if not np.all(np.isfinite(v)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "values", v)

    @property
    def dimension(self) -> int:
        return self.values.shape[0]

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.values @ x


@dataclass(frozen=True)
class CsrMatrix:
    """Compressed sparse row matrix (row offsets, column indices, values)."""

    dimension: int
    row_offsets: np.ndarray
    col_indices: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        n = self.dimension
        offsets = np.ascontiguousarray(self.row_offsets, dtype=np.int64)
        cols = np.ascontiguousarray(self.col_indices, dtype=np.int64)
        vals = np.ascontiguousarray(self.values, dtype=np.float64)
        if offsets.shape != (n + 1,) or offsets[0] != 0:
            raise ValueError("row_offsets must have length n+1 and start at 0")
        if np.any(np.diff(offsets) < 0) or offsets[-1] != cols.size:
            raise ValueError("row_offsets must be nondecreasing and end at nnz")
        if cols.size != vals.size:
            raise ValueError("col_indices and values must have equal length")
        if cols.size and (cols.min() < 0 or cols.max() >= n):
            raise ValueError("column indices out of range")
        # columns sorted strictly within each row implies no duplicates
        if cols.size:
            inner = np.ones(cols.size, dtype=bool)
            starts = offsets[:-1]
            inner[starts[starts < cols.size]] = False  # row starts may decrease
            if np.any((np.diff(cols, prepend=cols[0]) <= 0) & inner):
                raise ValueError("columns must be strictly increasing per row")
        object.__setattr__(self, "row_offsets", offsets)
        object.__setattr__(self, "col_indices", cols)
        object.__setattr__(self, "values", vals)

    @property
    def nnz(self) -> int:
        return int(self.row_offsets[-1])

    @cached_property
    def _row_ids(self) -> np.ndarray:
        return np.repeat(np.arange(self.dimension), np.diff(self.row_offsets))

    def apply(self, x: np.ndarray) -> np.ndarray:
        return _kernels.csr_matvec(self.row_offsets, self.col_indices,
                                   self.values, np.asarray(x, dtype=np.float64),
                                   row_ids=self._row_ids)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.dimension, self.dimension))
        out[self._row_ids, self.col_indices] = self.values
        return out


def toy_matrix() -> DenseMatrix:
    """4x4 example with eigenvalues 101/100, 1, i/3, -i/3.

    Diagonal blocks diag(101/100, 1) and the rotation [[0, -1/3], [1/3, 0]];
    the dominant eigenvector is e_1 and the spectral gap is 1/100.
    """
    return DenseMatrix(np.array([
        [1.01, 0.0, 0.0, 0.0],
        [0.0, 1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0 / 3.0],
        [0.0, 0.0, 1.0 / 3.0, 0.0],
    ]))


def barbell_matrix(n: int, p: float, seed: int) -> CsrMatrix:
    """Column-stochastic walk matrix of a random directed barbell graph.

    Two independent n x n Bernoulli(p) adjacency blocks sit on the diagonal
    of a 2n x 2n matrix B, joined by the single bridge pair
    B[n-1, n] = B[n, n-1] = 1. Any all-zero column gets a self-loop, then
    every column is normalized to sum 1. Entries are drawn from the
    counter-based generator, so the result is bit-identical per
    (n, p, seed).
    """
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 0.0 < p < 1.0:
        raise ValueError("p must lie in (0, 1)")
    dim = 2 * n
    base = _rng.seed_base(seed)
    row_cols: list[np.ndarray] = []
    for block in range(2):
        block_start = np.uint64(block) * np.uint64(n) * np.uint64(n)
        col_offset = block * n
        for i in range(n):
            idx = block_start + np.uint64(i) * np.uint64(n) + np.arange(n, dtype=np.uint64)
            bits = _rng.mix64(base + idx * _rng.GOLDEN)
            u = (bits >> np.uint64(11)).astype(np.float64) * _rng.INV_2_53
            row_cols.append(np.nonzero(u < p)[0] + col_offset)
    # bridge entries keep per-row column order sorted
    row_cols[n - 1] = np.append(row_cols[n - 1], n)
    row_cols[n] = np.insert(row_cols[n], 0, n - 1)

    col_sums = np.zeros(dim, dtype=np.int64)
    for cols in row_cols:
        col_sums += np.bincount(cols, minlength=dim)
    for j in np.nonzero(col_sums == 0)[0]:
        pos = np.searchsorted(row_cols[j], j)
        row_cols[j] = np.insert(row_cols[j], pos, j)
        col_sums[j] = 1

    lengths = np.array([c.size for c in row_cols], dtype=np.int64)
    offsets = np.concatenate([[0], np.cumsum(lengths)])
    cols = np.concatenate(row_cols).astype(np.int64)
    values = 1.0 / col_sums[cols]
    return CsrMatrix(dim, offsets, cols, values)


@dataclass(frozen=True)
class EigenpairResult:
    """Dominant eigenpair candidate with its certification residual."""

    value: float
    vector: np.ndarray
    residual: float
    iterations: int
    converged: bool


def reference_eigenpair(A, tol: float = 1e-10, max_iters: int = 100_000, *,
                        seed: int = 1) -> EigenpairResult:
    """Residual-certified dominant eigenpair via the plain power method.

    Iterates until ||A x - nu x|| <= tol |nu| or `max_iters`; the residual,
    not the iteration count, is what certifies the output. On a cap hit
    the best (smallest-residual) iterate is returned with ``converged``
    False and a :class:`NoConvergenceWarning` is emitted.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iters < 1:
        raise ValueError("max_iters must be positive")
    x = seeded_unit_vector(A.dimension, seed)
    best_res = np.inf
    best_x = x
    best_nu = 0.0
    best_iter = 0
    for k in range(1, max_iters + 1):
        v = A.apply(x)
        nu = float(v @ x)
        res = float(np.linalg.norm(v - nu * x))
        if res < best_res:
            best_res, best_x, best_nu, best_iter = res, x, nu, k
        if res <= tol * abs(nu):
            return EigenpairResult(nu, x, res, k, True)
        h = float(np.linalg.norm(v))
        if h == 0.0:
            raise BreakdownError(f"h_{k} = 0 in the eigenpair oracle")
        x = v / h
    warnings.warn(
        f"residual {best_res:.3e} did not reach tol*|nu| in {max_iters} iterations",
        NoConvergenceWarning,
    )
    return EigenpairResult(best_nu, best_x, best_res, best_iter, False)


def save_matrix_text(matrix: CsrMatrix, path) -> None:
    """Write the sparse text format: header ``n nnz``, then ``row col value``."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{matrix.dimension} {matrix.nnz}\n")
        rows = matrix._row_ids
        for r, c, v in zip(rows, matrix.col_indices, matrix.values):
            fh.write(f"{r} {c} {float(v)!r}\n")


def load_matrix_text(path) -> CsrMatrix:
    """Read the sparse text format written by :func:`save_matrix_text`."""
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise ValueError("expected header line 'n nnz'")
        n, nnz = int(header[0]), int(header[1])
        rows = np.empty(nnz, dtype=np.int64)
        cols = np.empty(nnz, dtype=np.int64)
        vals = np.empty(nnz, dtype=np.float64)
        for k in range(nnz):
            parts = fh.readline().split()
            if len(parts) != 3:
                raise ValueError(f"malformed entry line {k + 2}")
            rows[k], cols[k], vals[k] = int(parts[0]), int(parts[1]), float(parts[2])
    order = np.lexsort((cols, rows))
    rows, cols, vals = rows[order], cols[order], vals[order]
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.add.at(offsets, rows + 1, 1)
    offsets = np.cumsum(offsets)
    return CsrMatrix(n, offsets, cols, vals)
