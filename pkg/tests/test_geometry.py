"""Orthocentric parameterization, curvature bounds, vertex realization."""

import math

import numpy as np
import pytest

from simplexvol.errors import GeometryDomainError
from simplexvol.geometry import (
    Curvature, OrthocentricParams, RegularSimplexSpec, VertexRealization,
    cosh_ratio, euclidean_volume, min_curvature, realize_vertices,
    regular_parameters, side_length,
)


def test_min_curvature_equilateral():
    assert min_curvature(OrthocentricParams((1.0, 1.0, 1.0))) == pytest.approx(-1.5)


def test_min_curvature_skewed():
    # tau = (1, 2, 2): s = 9, minimum at the smallest tau: -1*9/(9-1) = -9/8
    assert min_curvature(OrthocentricParams((1.0, 2.0, 2.0))) == pytest.approx(-9.0 / 8.0)


def test_min_curvature_homogeneity():
    rng = np.random.default_rng(0)
    for _ in range(20):
        taus = tuple(rng.uniform(0.3, 3.0, int(rng.integers(3, 8))))
        c = float(rng.uniform(0.2, 5.0))
        k0 = min_curvature(OrthocentricParams(taus))
        k0c = min_curvature(OrthocentricParams(tuple(c * t for t in taus)))
        assert k0c == pytest.approx(c * c * k0, rel=1e-13)


def test_side_length_equilateral_value():
    # equal tau = 1, kappa = -1, d = 2: arccosh((s-k)/(s+kd)) = arccosh(4)
    p = OrthocentricParams((1.0, 1.0, 1.0))
    got = side_length(p, 0, 1, -1.0)
    assert got == pytest.approx(math.acosh(4.0), abs=1e-14)


def test_side_length_symmetric_and_equal():
    p = OrthocentricParams((0.8, 0.8, 0.8, 0.8))
    vals = [side_length(p, j, k, -0.7) for j in range(4) for k in range(4) if j != k]
    assert max(vals) / min(vals) == 1.0


def test_side_length_blows_up_at_curvature_bound():
    p = OrthocentricParams((0.5, 1.5, 1.5))
    k0 = min_curvature(p)
    near = side_length(p, 0, 1, k0 * (1 - 1e-12))
    assert near > 10.0


def test_side_length_rejects_bad_kappa():
    p = OrthocentricParams((1.0, 1.0, 1.0))
    with pytest.raises(GeometryDomainError):
        side_length(p, 0, 1, -2.0)
    with pytest.raises(GeometryDomainError):
        side_length(p, 0, 0, -1.0)


def test_regular_parameters_round_trip_grid():
    # The equal parameter approaches its ideal limit like exp(-ell*sqrt(-kappa)),
    # so recovering large ell from double-precision parameters is limited to
    # ~eps*cosh(ell*sqrt(-kappa)) absolute by conditioning alone; the 1e-10
    # round-trip is asserted wherever that floor allows it.
    eps = np.finfo(float).eps
    for d in range(2, 11):
        for kappa in (-0.5, -1.0, -2.0):
            for ell in np.geomspace(1e-3, 20.0, 7):
                spec = RegularSimplexSpec(d=d, side_length=float(ell), kappa=kappa)
                p = regular_parameters(spec)
                got = side_length(p, 0, 1, kappa)
                floor = 50.0 * eps * math.cosh(min(ell * math.sqrt(-kappa), 30.0))
                tol = max(ell * 1e-10, 1e-12, floor)
                assert abs(got - ell) <= tol, (d, kappa, ell)


def test_regular_parameters_ideal_limit():
    spec = RegularSimplexSpec(d=4, side_length=math.inf, kappa=-2.0)
    p = regular_parameters(spec)
    assert p.taus[0] ** 2 == pytest.approx(2.0 * 4 / 5, rel=1e-14)


def test_regular_parameters_small_side_blows_up():
    spec = RegularSimplexSpec(d=3, side_length=1e-8, kappa=-1.0)
    assert regular_parameters(spec).taus[0] > 1e7


def test_cosh_ratio_limits():
    assert cosh_ratio(RegularSimplexSpec(4, math.inf, -1.0)) == 0.25
    assert cosh_ratio(RegularSimplexSpec(3, 1e-9, -1.0)) == pytest.approx(0.25, abs=1e-9)
    spec = RegularSimplexSpec(2, math.acosh(2.0), -1.0)
    assert cosh_ratio(spec) == pytest.approx(0.4, abs=1e-14)
    # overflow-safe routing to the ideal value
    assert cosh_ratio(RegularSimplexSpec(3, 800.0, -1.0)) == pytest.approx(1/3)


def test_realize_vertices_equilateral():
    p = OrthocentricParams((1.0, 1.0, 1.0))
    r = realize_vertices(p)
    v = r.vertices
    assert v.shape == (3, 2)
    for j in range(3):
        assert v[j] @ v[j] == pytest.approx(2.0 / 3.0, abs=1e-13)
        for k in range(3):
            if j != k:
                assert v[j] @ v[k] == pytest.approx(-1.0 / 3.0, abs=1e-13)
                assert (v[j] - v[k]) @ (v[j] - v[k]) == pytest.approx(2.0, abs=1e-13)


def test_gram_residuals_random():
    rng = np.random.default_rng(6)
    for _ in range(100):
        taus = tuple(rng.uniform(0.2, 4.0, int(rng.integers(3, 9))))
        p = OrthocentricParams(taus)
        assert realize_vertices(p).gram_residual(p) < 1e-12


def test_euclidean_volume_equilateral():
    # edge sqrt(2) equilateral triangle: area = sqrt(3)/2
    p = OrthocentricParams((1.0, 1.0, 1.0))
    vol = euclidean_volume(realize_vertices(p))
    assert vol == pytest.approx(math.sqrt(3.0) / 2.0, rel=1e-13)


def test_euclidean_volume_unit_right_simplex():
    r = VertexRealization(vertices=np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]))
    assert euclidean_volume(r) == pytest.approx(0.5)


def test_euclidean_volume_degenerate():
    r = VertexRealization(vertices=np.zeros((3, 2)))
    assert euclidean_volume(r) == 0.0


def test_type_validation():
    with pytest.raises(GeometryDomainError):
        OrthocentricParams((1.0, 2.0))  # d = 1 not supported
    with pytest.raises(GeometryDomainError):
        OrthocentricParams((1.0, -1.0, 1.0))
    with pytest.raises(GeometryDomainError):
        Curvature(0.0)
    assert Curvature(-1.0).is_hyperbolic
    assert Curvature(2.0).is_spherical
    with pytest.raises(GeometryDomainError):
        RegularSimplexSpec(1, 1.0, -1.0)
    with pytest.raises(GeometryDomainError):
        RegularSimplexSpec(3, 1.0, 1.0)  # spherical regular specs not supported
    with pytest.raises(GeometryDomainError):
        RegularSimplexSpec(3, 0.0, -1.0)
