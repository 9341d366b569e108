import cmath
import math

import numpy as np
import pytest

from deltoid import (
    DeltoidRegion,
    GridSpec,
    ScaledComplex,
    cubic_roots_general,
    cubic_solution_trig,
    eval_P,
    eval_P_scaled,
    eval_P_sequence,
    gamma_point,
    gamma_samples,
    growth_lower_bound,
    in_deltoid,
    raster_magnitude,
    sample_interior,
)
from conftest import distance_to_boundary


def p_z(r, z):
    return r**3 - 1.5 * z * r * r + 0.5


def test_eval_basics():
    for z in (0.0, 1.0, 0.3 + 0.2j, -2.0 + 1.0j):
        assert eval_P(0, z) == 1.0
        assert eval_P(1, z) == complex(z)
        assert eval_P(2, z) == complex(z) ** 2
    assert abs(eval_P(3, 1.0) - 1.0) < 1e-15


def test_eval_recurrence_step():
    # one hand-applied step: P_3 = (3/2) z^3 - 1/2
    rng = np.random.default_rng(1)
    for _ in range(20):
        z = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        assert abs(eval_P(3, z) - (1.5 * z**3 - 0.5)) < 1e-14


def test_eval_cusp_powers():
    for k in range(3):
        w = cmath.exp(2j * math.pi * k / 3)
        for n in range(31):
            assert abs(eval_P(n, w) - w**n) < 1e-12


def test_eval_overflow():
    with pytest.raises(OverflowError):
        eval_P(5000, 2.0)
    with pytest.raises(ValueError):
        eval_P(-1, 0.5)


def test_scaled_initial():
    s = eval_P_scaled(0, 0.2 + 0.1j)
    assert s.mantissa == 1.0 and s.log2_scale == 0.0


def test_scaled_growth_far_out():
    s = eval_P_scaled(500, 2.0)
    assert s.log2_abs() >= growth_lower_bound(500, 1.0)


def test_scaled_matches_unscaled():
    rng = np.random.default_rng(2)
    for _ in range(60):
        n = int(rng.integers(0, 301))
        z = complex(rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
        exact = eval_P(n, z)
        scaled = eval_P_scaled(n, z).to_complex()
        assert abs(scaled - exact) <= 1e-12 * max(abs(exact), 1e-300)


def test_scaled_mantissa_normalized():
    for n, z in ((700, 1.7), (2000, 0.0), (123, 0.9j), (50, 0.0)):
        s = eval_P_scaled(n, z)
        if s.mantissa == 0:
            assert s.log2_scale == 0.0
        else:
            assert 0.5 <= abs(s.mantissa) < 2.0
        # value recoverable in log domain even when far out of double range
        assert math.isfinite(s.log2_abs()) or s.mantissa == 0


def test_sequence_initial_and_length():
    z = 0.4 - 0.7j
    seq = eval_P_sequence(2, z)
    assert len(seq) == 3
    assert seq[0].to_complex() == 1.0
    assert seq[1].to_complex() == z
    assert abs(seq[2].to_complex() - z * z) < 1e-15
    assert len(eval_P_sequence(17, z)) == 18
    assert len(eval_P_sequence(0, z)) == 1


def test_sequence_matches_pointwise():
    z = -0.6 + 0.5j
    seq = eval_P_sequence(40, z)
    for k in (0, 1, 2, 3, 17, 40):
        single = eval_P_scaled(k, z)
        assert seq[k].mantissa == single.mantissa
        assert seq[k].log2_scale == single.log2_scale


def test_gamma_point_values():
    assert abs(gamma_point(0.0) - 1.0) < 1e-15
    assert abs(gamma_point(math.pi) - (-1.0 / 3.0)) < 1e-15
    for t in np.linspace(0, 2 * math.pi, 64, endpoint=False):
        assert abs(gamma_point(t)) <= 1.0 + 1e-12
        assert abs(gamma_point(t + 2 * math.pi) - gamma_point(t)) < 1e-12


def test_gamma_samples_shape():
    pts = gamma_samples(512)
    assert pts.shape == (512,)
    assert abs(pts[0] - 1.0) < 1e-15


def test_in_deltoid_named_points():
    assert in_deltoid(0.0)
    assert in_deltoid(1.0)
    assert not in_deltoid(1.0 + 1e-6)
    assert not in_deltoid(0.9j)
    assert in_deltoid(cmath.exp(2j * math.pi / 3))
    assert in_deltoid(cmath.exp(-2j * math.pi / 3))
    assert in_deltoid(1j / 3)


def test_in_deltoid_region_validation():
    with pytest.raises(ValueError):
        DeltoidRegion(root_tolerance=0.0)
    with pytest.raises(ValueError):
        DeltoidRegion(boundary_samples=8)


def test_in_deltoid_matches_polygon_oracle(deltoid_polygon):
    rng = np.random.default_rng(3)
    pts = rng.uniform(-1, 1, size=(10_000, 2))
    inside_poly = deltoid_polygon.contains_points(pts)
    for (x, y), expected in zip(pts, inside_poly):
        z = complex(x, y)
        if in_deltoid(z) != bool(expected):
            assert distance_to_boundary(z) <= 1e-6, (
                f"oracle disagreement at {z} away from the boundary")


def test_interior_sampler(deltoid_polygon):
    pts = sample_interior(200, seed=5)
    assert pts.shape == (200,)
    assert all(in_deltoid(z) for z in pts)
    # deterministic per seed
    again = sample_interior(200, seed=5)
    assert np.array_equal(pts, again)


def test_cubic_roots_cusp_multiset():
    roots = sorted(cubic_roots_general(1.0), key=lambda r: r.real)
    expected = [-0.5, 1.0, 1.0]
    for r, e in zip(roots, expected):
        assert abs(r - e) < 1e-10


def test_cubic_roots_on_boundary():
    for j in range(32):
        t = (j + 0.5) * 2.0 * math.pi / 32
        roots = cubic_roots_general(gamma_point(t))
        target = cmath.exp(1j * t)
        assert min(abs(r - target) for r in roots) < 1e-10


def test_cubic_roots_vieta():
    rng = np.random.default_rng(4)
    for _ in range(100):
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        r1, r2, r3 = cubic_roots_general(z)
        assert abs(r1 * r2 * r3 - (-0.5)) < 1e-11
        assert abs(r1 + r2 + r3 - 1.5 * z) < 1e-11


def test_trig_solution_fixed_point():
    sol = cubic_solution_trig(1.0)
    assert abs(sol.delta - 7.0) < 1e-12
    expected_r1 = 0.5 * 8.0 ** (1 / 3) * (
        1.0 + 2.0 * math.cos(2.0 / 3.0 * math.atan2(1.0, math.sqrt(7.0))))
    assert abs(sol.r1 - expected_r1) < 1e-12


def test_trig_solution_invariants():
    rng = np.random.default_rng(5)
    for _ in range(200):
        eps = float(rng.uniform(0, 10)) or 1e-3
        sol = cubic_solution_trig(eps)
        assert abs((1.0 + sol.delta) ** (1 / 3) - sol.z) < 1e-12 * sol.z
        assert abs(3 * eps + 3 * eps**2 + eps**3 - sol.delta) < 1e-12 * sol.delta
        for r in (sol.r1, sol.r2, sol.r3):
            assert abs(p_z(r, sol.z)) < 1e-11
        assert abs(sol.c1 + sol.c2 + sol.c3 - 1.0) < 1e-11
        assert abs(sol.c1 * sol.r1 + sol.c2 * sol.r2 + sol.c3 * sol.r3 - sol.z) < 1e-11
        assert abs(sol.c1 * sol.r1**2 + sol.c2 * sol.r2**2 + sol.c3 * sol.r3**2
                   - sol.z**2) < 1e-11
        expected_disc = 6.75 * (sol.z**3 - 1.0)
        assert abs(sol.discriminant - expected_disc) < 1e-11 * abs(expected_disc)


def test_trig_matches_general_solver():
    rng = np.random.default_rng(6)
    for _ in range(200):
        eps = float(rng.uniform(0, 10)) or 1e-3
        sol = cubic_solution_trig(eps)
        mine = sorted((sol.r1, sol.r2, sol.r3))
        general = sorted(r.real for r in cubic_roots_general(sol.z))
        for a, b in zip(mine, general):
            assert abs(a - b) < 1e-10


def test_trig_order_facts():
    rng = np.random.default_rng(7)
    for _ in range(300):
        eps = float(rng.uniform(0, 10)) or 1e-3
        sol = cubic_solution_trig(eps)
        assert sol.c1 >= 1.0 / 3.0
        assert sol.r3 > -sol.r2 > 0.0
        assert sol.c3 > -sol.c2 > 0.0
        assert sol.r1 >= 1.0 + math.sqrt(eps)
    for eps in np.linspace(1e-4, 0.25, 50):
        sol = cubic_solution_trig(float(eps))
        assert 1.0 + math.sqrt(eps) <= sol.r1 <= 1.0 + math.sqrt(eps) + 2.0 * eps


def test_trig_domain_error():
    with pytest.raises(ValueError):
        cubic_solution_trig(0.0)
    with pytest.raises(ValueError):
        cubic_solution_trig(-0.5)


def test_closed_form_matches_recurrence():
    rng = np.random.default_rng(8)
    for _ in range(40):
        eps = float(rng.uniform(0, 2)) or 1e-3
        sol = cubic_solution_trig(eps)
        n = int(rng.integers(0, 61))
        closed = (sol.c1 * sol.r1**n + sol.c2 * sol.r2**n + sol.c3 * sol.r3**n)
        direct = eval_P(n, sol.z).real
        assert abs(closed - direct) < 1e-9 * max(abs(direct), 1.0)


def test_growth_lower_bound_values():
    assert abs(growth_lower_bound(0, 0.5) - math.log2(1.0 / 3.0)) < 1e-15
    expected = 100 * math.log2(1.1) + math.log2(1.0 / 3.0)
    assert abs(growth_lower_bound(100, 0.01) - expected) < 1e-12
    with pytest.raises(ValueError):
        growth_lower_bound(3, 0.0)


def test_growth_bound_holds_on_real_axis():
    for eps in (0.01, 0.1, 1.0, 2.0):
        seq = eval_P_sequence(200, 1.0 + eps)
        for n in range(201):
            assert seq[n].log2_abs() >= growth_lower_bound(n, eps) - 1e-9


def test_boundedness_inside_region():
    zs = np.concatenate([gamma_samples(128), sample_interior(200, seed=9)])
    worst = 0.0
    for z in zs:
        seq = eval_P_sequence(100, z)
        worst = max(worst, max(abs(s.to_complex()) for s in seq))
    assert worst <= 1.0 + 1e-9


def test_angular_minimum_at_cube_root_directions():
    thetas = np.linspace(0, 2 * math.pi, 720, endpoint=False)
    # grid indices within one step of theta in {0, 2pi/3, 4pi/3}
    near_special = np.array([-1, 0, 1, 239, 240, 241, 479, 480, 481]) % 720
    for eps in (0.05, 0.2, 1.0):
        mags = np.empty((101, 720))
        for j, th in enumerate(thetas):
            seq = eval_P_sequence(100, (1 + eps) * cmath.exp(1j * th))
            mags[:, j] = [s.log2_abs() for s in seq]
        for n in range(101):
            global_min = mags[n].min()
            special_min = mags[n, near_special].min()
            assert special_min <= global_min + 1e-9, (
                f"minimum misplaced at n={n}, eps={eps}")


def test_raster_trivial_and_matches_eval():
    grid = GridSpec(resolution=16)
    assert np.array_equal(raster_magnitude(0, grid), np.ones((16, 16)))
    out = raster_magnitude(7, grid)
    res = grid.re_centers()
    ims = grid.im_centers()
    for i in (0, 5, 15):
        for j in (2, 9):
            z = complex(res[j], ims[i])
            assert abs(out[i, j] - abs(eval_P(7, z))) < 1e-12


def test_raster_converges_to_region():
    out = raster_magnitude(96, GridSpec(resolution=512))
    grid = GridSpec(resolution=512)
    res, ims = grid.re_centers(), grid.im_centers()
    ii, jj = np.nonzero(out <= 1.0)
    region = DeltoidRegion(root_tolerance=0.05)
    inside = sum(1 for i, j in zip(ii, jj) if in_deltoid(complex(res[j], ims[i]), region))
    assert inside >= 0.99 * ii.size


def test_raster_zeros_on_rays():
    # moderate n: the <= 1e-3 cells are the zero basins, not yet the
    # geometrically-decayed interior, so away from the origin (which sits
    # on all three rays at once) they must hug the rays arg(z^3) = 0
    grid = GridSpec(resolution=512)
    res, ims = grid.re_centers(), grid.im_centers()
    for n in (24, 27):
        out = raster_magnitude(n, grid)
        ii, jj = np.nonzero(out <= 1e-3)
        checked = 0
        for i, j in zip(ii, jj):
            z = complex(res[j], ims[i])
            if abs(z) < 0.25:
                continue
            checked += 1
            assert abs(cmath.phase(z**3)) <= 0.2
        assert checked > 0


def test_raster_clamp():
    out = raster_magnitude(600, GridSpec(resolution=24))
    assert out.max() <= 1e6


def test_grid_validation():
    with pytest.raises(ValueError):
        GridSpec(resolution=0)
    with pytest.raises(ValueError):
        GridSpec(xmin=1.0, xmax=-1.0)
    with pytest.raises(ValueError):
        raster_magnitude(-1)


def test_scaled_complex_roundtrip():
    s = ScaledComplex.from_complex(3.5 - 2.25j)
    assert abs(s.to_complex() - (3.5 - 2.25j)) < 1e-15
    assert 0.5 <= abs(s.mantissa) < 2.0
    zero = ScaledComplex.from_complex(0.0)
    assert zero.mantissa == 0 and zero.log2_scale == 0.0
    assert zero.log2_abs() == -math.inf
