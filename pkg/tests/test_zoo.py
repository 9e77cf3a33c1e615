import math

import numpy as np
import pytest

from godbersen_lab.errors import BadSpec
from godbersen_lab.kernel import contains_point, same_vertex_set, v_to_h, volume
from godbersen_lab.zoo import (
    BodySpec,
    centroid,
    default_zoo,
    generate,
    recenter,
    spec_from_dict,
    spec_to_dict,
)


def test_simplex_volume():
    assert volume(generate(BodySpec("SIMPLEX", 3))) == pytest.approx(
        1 / 6, rel=1e-12)


def test_cube_volume():
    assert volume(generate(BodySpec("CUBE", 4))) == pytest.approx(
        1.0, rel=1e-12)


def test_cross_volume():
    # vol = 2^n / n!
    assert volume(generate(BodySpec("CROSS", 3))) == pytest.approx(
        4 / 3, rel=1e-12)


def test_random_sphere_bit_reproducible():
    a = generate(BodySpec("RANDOM_SPHERE", 3, m=20, seed=42))
    b = generate(BodySpec("RANDOM_SPHERE", 3, m=20, seed=42))
    assert np.array_equal(a.vertices, b.vertices)
    assert a.n_vertices == 20  # sphere points are in convex position


def test_random_gauss_hull_reproducible_and_full_dim():
    a = generate(BodySpec("RANDOM_GAUSS_HULL", 4, m=15, seed=3))
    b = generate(BodySpec("RANDOM_GAUSS_HULL", 4, m=15, seed=3))
    assert np.array_equal(a.vertices, b.vertices)
    assert a.dim == 4


def test_different_seeds_differ():
    a = generate(BodySpec("RANDOM_SPHERE", 3, m=10, seed=1))
    b = generate(BodySpec("RANDOM_SPHERE", 3, m=10, seed=2))
    assert not np.array_equal(a.vertices, b.vertices)


def test_reuleaux_polygon():
    R = generate(BodySpec("REULEAUX_POLY", 2, k=3))
    assert R.n_vertices == 24  # 8 samples on each of 3 arcs, all extreme
    # inscribed approximation: area below the true Reuleaux triangle's,
    # which is (pi - sqrt(3)) / 2 for width 1
    true_area = (math.pi - math.sqrt(3)) / 2
    assert 0.95 * true_area < volume(R) < true_area
    # constant width 1 approximately: support widths along axes
    H = v_to_h(R)
    for direction in (np.array([1.0, 0.0]), np.array([0.0, 1.0])):
        from godbersen_lab import lp
        w = (lp.support_value(H.normals, H.offsets, direction)
             + lp.support_value(H.normals, H.offsets, -direction))
        assert w == pytest.approx(1.0, abs=0.02)


def test_reuleaux_spec_validation():
    with pytest.raises(BadSpec):
        generate(BodySpec("REULEAUX_POLY", 3, k=3))
    with pytest.raises(BadSpec):
        generate(BodySpec("REULEAUX_POLY", 2, k=4))


def test_unknown_generator_and_missing_seed():
    with pytest.raises(BadSpec):
        generate(BodySpec("BALL", 3))
    with pytest.raises(BadSpec):
        generate(BodySpec("RANDOM_SPHERE", 3, m=10))


def test_transform_scales_volume_by_det():
    rng = np.random.default_rng(77)
    A = rng.standard_normal((3, 3)) + 2 * np.eye(3)
    t = rng.standard_normal(3)
    spec = BodySpec("SIMPLEX", 3)
    base = generate(spec)
    moved = generate(BodySpec("SIMPLEX", 3,
                              transform=(A.tolist(), t.tolist())))
    assert volume(moved) == pytest.approx(
        abs(np.linalg.det(A)) * volume(base), rel=1e-9)


def test_transform_must_be_invertible():
    singular = np.zeros((2, 2)).tolist()
    with pytest.raises(BadSpec):
        generate(BodySpec("CUBE", 2, transform=(singular, [0.0, 0.0])))


def test_spec_json_round_trip():
    spec = BodySpec("RANDOM_SPHERE", 3, m=12, seed=9,
                    transform=(np.eye(3).tolist(), [1.0, 0.0, 0.0]))
    back = spec_from_dict(spec_to_dict(spec))
    assert same_vertex_set(generate(spec), generate(back))


def test_centroid_examples():
    assert np.allclose(centroid(generate(BodySpec("CUBE", 3))), 0.5)
    S = generate(BodySpec("SIMPLEX", 4))
    assert np.allclose(centroid(S), 1 / 5)


def test_recenter_centroid():
    K = generate(BodySpec("RANDOM_GAUSS_HULL", 3, m=12, seed=5))
    centered = recenter(K)
    assert np.abs(centroid(centered)).max() <= 1e-10


def test_recenter_chebyshev_gives_interior_origin():
    K = generate(BodySpec("RANDOM_GAUSS_HULL", 3, m=12, seed=6))
    centered = recenter(K, "CHEBYSHEV")
    assert contains_point(centered, np.zeros(3))
    H = v_to_h(centered)
    assert H.offsets.min() > 0.01  # deepest point: healthy margin


def test_default_zoo_covers_generators_and_dims():
    specs = default_zoo()
    dims = {s.dim for s in specs}
    gens = {s.generator for s in specs}
    assert dims == {2, 3, 4, 5}
    assert {"SIMPLEX", "CUBE", "CROSS", "RANDOM_SPHERE",
            "RANDOM_GAUSS_HULL"} <= gens
    labels = [s.label() for s in specs]
    assert len(labels) == len(set(labels))
