"""Command-line front end.

Subcommands:

* ``region``   -- |P_n| rasters as JSON, one file per n
* ``coeffs``   -- walk expansion coefficients as CSV
* ``approx``   -- truncation error of the monomial approximation as CSV
* ``converge`` -- relative-error traces of the power-type methods as CSV

All outputs are deterministic given the flags (seeds are flags with
defaults) and are written atomically. Exit codes: 0 success, 1 validation
error, 2 numerical breakdown, 3 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from dataclasses import dataclass, field

import numpy as np

from . import iterate, matrices, poly, walk


class CliValidationError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CliValidationError(message)


METHODS = ("power", "cheb1", "deltoid", "deltoid-dyn")


@dataclass
class ExperimentConfig:
    """Validated settings of a `converge` run."""

    matrix_kind: str                 # "toy" | "barbell" | "file"
    methods: list[str]
    iterations: int
    out: str
    beta: float | None = None
    beta_oracle: bool = False
    lambda2: float = 1.0
    barbell_n: int = 2000
    barbell_p: float = 1.0 / 125.0
    seed: int = 0
    v0_seed: int = 0
    ref_seed: int = 1
    ref_tol: float = 1e-10
    ref_max_iters: int = 200_000
    matrix_path: str | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        if not self.methods:
            raise CliValidationError("methods: at least one method required")
        for m in self.methods:
            if m not in METHODS:
                raise CliValidationError(
                    f"methods: unknown method {m!r} (choose from {', '.join(METHODS)})")
        if self.iterations < 3:
            raise CliValidationError("iterations: must be at least 3")
        needs_beta = {"deltoid", "cheb1"} & set(self.methods)
        if needs_beta and self.beta is None and not self.beta_oracle:
            raise CliValidationError(
                f"beta: required for {sorted(needs_beta)} unless --beta-oracle is set")


def _write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_int_list(text: str) -> list[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise CliValidationError(f"n-list: {exc}") from None


def _parse_float_list(text: str) -> list[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip() != ""]
    except ValueError as exc:
        raise CliValidationError(f"t-list: {exc}") from None


def cmd_region(n_list: list[int], resolution: int, out_dir: str) -> list[str]:
    """Write one JSON raster of |P_n| per requested n; returns the paths."""
    grid = poly.GridSpec(resolution=resolution)
    paths = []
    for n in n_list:
        if n < 0:
            raise CliValidationError("n-list: entries must be nonnegative")
        values = poly.raster_magnitude(n, grid)
        payload = {
            "kind": "p-magnitude-raster",
            "n": n,
            "resolution": resolution,
            "xmin": grid.xmin,
            "xmax": grid.xmax,
            "ymin": grid.ymin,
            "ymax": grid.ymax,
            "clamp": poly.RASTER_CLAMP,
            "row_axis": "imag",
            "col_axis": "real",
            "values": [[float(v) for v in row] for row in values],
        }
        path = os.path.join(out_dir, f"region_n{n:04d}.json")
        _write_atomic(path, json.dumps(payload, sort_keys=True,
                                       separators=(",", ":")) + "\n")
        paths.append(path)
    return paths


def cmd_coeffs(n: int, out: str) -> None:
    """Write k, beta_k rows plus a footer row with the coefficient sum."""
    if n < 0:
        raise CliValidationError("n: must be nonnegative")
    beta = walk.beta_coeffs(n).beta
    lines = ["k,beta"]
    for k in range(n + 1):
        lines.append(f"{k},{float(beta[k])!r}")
    lines.append(f"sum,{math.fsum(beta)!r}")
    _write_atomic(out, "\n".join(lines) + "\n")


def _gamma_region_samples(count: int, seed: int) -> np.ndarray:
    boundary = poly.gamma_samples(count // 2)
    interior = poly.sample_interior(count - count // 2, seed)
    return np.concatenate([boundary, interior])


def cmd_approx(n_list: list[int], t_list: list[float], samples: int,
               seed: int, out: str) -> None:
    """Tabulate max truncation error against the theoretical tail bound."""
    if samples < 1:
        raise CliValidationError("samples: must be positive")
    zs = _gamma_region_samples(samples, seed)
    lines = ["n,t,degree,max_err,bound,pass"]
    for n in n_list:
        if n < 1:
            raise CliValidationError("n-list: entries must be positive")
        exact = zs**n
        for t in t_list:
            if t <= 0:
                raise CliValidationError("t-list: entries must be positive")
            degree = min(int(math.floor(t * math.sqrt(n))), n)
            err = float(max(abs(exact[i] - walk.approx_monomial(z, n, t))
                            for i, z in enumerate(zs)))
            bound = walk.tail_bound(t)
            ok = err <= bound
            lines.append(f"{n},{t!r},{degree},{err!r},{bound!r},{str(ok).lower()}")
    _write_atomic(out, "\n".join(lines) + "\n")


def _build_matrix(config: ExperimentConfig):
    if config.matrix_kind == "toy":
        config.meta["matrix"] = "toy"
        return matrices.toy_matrix()
    if config.matrix_kind == "barbell":
        config.meta.update(matrix="barbell", barbell_n=config.barbell_n,
                           barbell_p=config.barbell_p, barbell_seed=config.seed)
        return matrices.barbell_matrix(config.barbell_n, config.barbell_p,
                                       config.seed)
    if config.matrix_kind == "file":
        config.meta.update(matrix="file", matrix_path=config.matrix_path)
        return matrices.load_matrix_text(config.matrix_path)
    raise CliValidationError(f"matrix: unknown kind {config.matrix_kind!r}")


def _run_method(method: str, A, v0, config: ExperimentConfig, ref):
    N = config.iterations
    if method == "power":
        return iterate.power_method(A, v0, N, ref=ref)
    if method == "cheb1":
        beta = config.beta if config.beta is not None else config.lambda2**2 / 4.0
        return iterate.chebyshev_momentum(A, v0, beta, N, ref=ref)
    if method == "deltoid":
        beta = config.beta if config.beta is not None else 4.0 * config.lambda2**3 / 27.0
        return iterate.deltoid_momentum(A, v0, beta, N, ref=ref)
    if method == "deltoid-dyn":
        return iterate.dynamic_deltoid(A, v0, N, ref=ref)
    raise CliValidationError(f"methods: unknown method {method!r}")


def cmd_converge(config: ExperimentConfig) -> None:
    """Run the selected methods and write the long-format trace CSV."""
    A = _build_matrix(config)
    reference = matrices.reference_eigenpair(
        A, config.ref_tol, config.ref_max_iters, seed=config.ref_seed)
    v0 = iterate.seeded_unit_vector(A.dimension, config.v0_seed)

    meta = dict(config.meta)
    meta.update(
        dimension=A.dimension,
        iterations=config.iterations,
        v0_seed=config.v0_seed,
        ref_seed=config.ref_seed,
        ref_tol=config.ref_tol,
        lambda1=reference.value,
        reference_residual=reference.residual,
        reference_converged=str(reference.converged).lower(),
    )
    if config.beta is not None:
        meta["beta"] = config.beta
    if config.beta_oracle or config.beta is None:
        meta["lambda2"] = config.lambda2
        ratio = abs(reference.value / config.lambda2)
        if ratio > 1.0:
            # per-iteration factor of the predicted asymptotic error decay
            meta["theory_rate_base"] = 1.0 / (1.0 + math.sqrt(ratio - 1.0))

    lines = [f"# {key}={value!r}" if isinstance(value, float)
             else f"# {key}={value}" for key, value in meta.items()]
    lines.append("iter,method,h,nu,d,beta_used,rel_err")
    for method in config.methods:
        trace = _run_method(method, A, v0, config, reference.vector)
        for k in range(trace.iterations):
            lines.append(
                f"{k + 1},{method},{float(trace.h[k])!r},{float(trace.nu[k])!r},"
                f"{float(trace.d[k])!r},{float(trace.beta[k])!r},"
                f"{float(trace.rel_err[k])!r}")
    _write_atomic(config.out, "\n".join(lines) + "\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="deltoid",
                     description="Deltoid polynomial family experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p_region = sub.add_parser("region", help="|P_n| raster JSON files")
    p_region.add_argument("--n-list", default="6,12,24,96",
                          help="comma-separated polynomial indices")
    p_region.add_argument("--resolution", type=int, default=512)
    p_region.add_argument("--out", required=True, help="output directory")

    p_coeffs = sub.add_parser("coeffs", help="expansion coefficients CSV")
    p_coeffs.add_argument("--n", type=int, required=True)
    p_coeffs.add_argument("--out", required=True)

    p_approx = sub.add_parser("approx", help="monomial approximation error CSV")
    p_approx.add_argument("--n-list", default="16,64,256")
    p_approx.add_argument("--t-list", default="1,2,3")
    p_approx.add_argument("--samples", type=int, default=500)
    p_approx.add_argument("--seed", type=int, default=0)
    p_approx.add_argument("--out", required=True)

    p_conv = sub.add_parser("converge", help="relative-error traces CSV")
    p_conv.add_argument("--matrix", default="toy",
                        help="toy | barbell | file:<path>")
    p_conv.add_argument("--methods", default="power",
                        help=f"comma-separated subset of {','.join(METHODS)}")
    p_conv.add_argument("--iterations", type=int, default=1000)
    p_conv.add_argument("--beta", type=float, default=None)
    p_conv.add_argument("--beta-oracle", action="store_true",
                        help="derive beta from --lambda2")
    p_conv.add_argument("--lambda2", type=float, default=1.0)
    p_conv.add_argument("--size", type=int, default=2000,
                        help="barbell block size n")
    p_conv.add_argument("--edge-prob", type=float, default=1.0 / 125.0,
                        help="barbell Bernoulli probability p")
    p_conv.add_argument("--seed", type=int, default=0,
                        help="barbell construction seed")
    p_conv.add_argument("--v0-seed", type=int, default=0)
    p_conv.add_argument("--ref-seed", type=int, default=1)
    p_conv.add_argument("--ref-tol", type=float, default=1e-10)
    p_conv.add_argument("--ref-max-iters", type=int, default=200_000)
    p_conv.add_argument("--out", required=True)
    return parser


def _dispatch(args) -> None:
    if args.command == "region":
        cmd_region(_parse_int_list(args.n_list), args.resolution, args.out)
    elif args.command == "coeffs":
        cmd_coeffs(args.n, args.out)
    elif args.command == "approx":
        cmd_approx(_parse_int_list(args.n_list), _parse_float_list(args.t_list),
                   args.samples, args.seed, args.out)
    elif args.command == "converge":
        kind = args.matrix
        path = None
        if kind.startswith("file:"):
            kind, path = "file", args.matrix[len("file:"):]
        config = ExperimentConfig(
            matrix_kind=kind,
            methods=[m.strip() for m in args.methods.split(",") if m.strip()],
            iterations=args.iterations,
            out=args.out,
            beta=args.beta,
            beta_oracle=args.beta_oracle,
            lambda2=args.lambda2,
            barbell_n=args.size,
            barbell_p=args.edge_prob,
            seed=args.seed,
            v0_seed=args.v0_seed,
            ref_seed=args.ref_seed,
            ref_tol=args.ref_tol,
            ref_max_iters=args.ref_max_iters,
            matrix_path=path,
        )
        if kind not in ("toy", "barbell", "file"):
            raise CliValidationError(f"matrix: unknown kind {kind!r}")
        cmd_converge(config)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        _dispatch(args)
    except CliValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except iterate.BreakdownError as exc:
        print(f"numerical breakdown: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
