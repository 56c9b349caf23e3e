#!/usr/bin/env python3
"""
Test script for submanifold point data.

Covers frame construction, validation reports, tangency data of invariant
and anti-invariant points, re-framing and the dictionary round trip used by
`fixtures --show`.
"""

import sys
import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

# Add the src directory to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from core.curvature_engine import scalar_tau
from core.errors import (
    DegenerateFrameError,
    DegeneratePlaneError,
    InvalidTangentError,
    PointValidationError,
    ShapeError,
)
from core.point_model import (
    AmbientModel,
    SubmanifoldPoint,
    complete_frame,
    complete_normal_frame,
    orthonormal_plane,
    orthonormalize,
    point_from_dict,
    point_to_dict,
    require_valid,
    rotate_tangent_frame,
    tangency_decomposition,
    to_tangent_coordinates,
    validate_point,
)
from core.quat_structure import build_standard
from core.scenario_lab import build_fixture, build_point, random_spec


def test_orthonormalize_keeps_span_and_order():
    vectors = np.array([[1.0, 1.0, 0.0], [1.0, 0.0, 0.0]])
    basis = orthonormalize(vectors)

    assert np.allclose(basis @ basis.T, np.eye(2))
    assert np.allclose(basis[0], np.array([1.0, 1.0, 0.0]) / np.sqrt(2.0))


def test_orthonormalize_rejects_dependent_vectors():
    with pytest.raises(DegenerateFrameError):
        orthonormalize([[1.0, 2.0, 0.0], [2.0, 4.0, 0.0]])


def test_normal_frame_completes_a_basis():
    rng = np.random.default_rng(3)
    tangent = orthonormalize(rng.standard_normal((3, 8)))
    normal = complete_normal_frame(tangent)
    basis = np.vstack([tangent, normal])

    assert normal.shape == (5, 8)
    assert np.max(np.abs(basis @ basis.T - np.eye(8))) < 1e-12


def test_canonical_axes_come_back_unchanged():
    tangent = np.eye(8)[:4]
    normal = complete_normal_frame(tangent)
    assert np.array_equal(normal, np.eye(8)[4:])


def test_fixture_validates():
    report = validate_point(build_fixture("S1"))

    assert report['passed']
    assert report['dimension_ok']
    assert report['structure_ok']
    assert report['gram_residual'] < 1e-12


def test_asymmetric_h_fails_validation():
    point = build_fixture("S0")
    h = np.zeros_like(point.h)
    h[0, 0, 1] = 1.0
    broken = point.replace(h=h)

    report = validate_point(broken)
    assert not report['passed']
    assert report['h_symmetry_residual'] == 1.0
    with pytest.raises(PointValidationError) as excinfo:
        require_valid(broken)
    assert excinfo.value.report['h_symmetry_residual'] == 1.0


def test_non_orthonormal_frame_fails_validation():
    point = build_fixture("S0")
    frame = np.array(point.tangent_frame)
    frame[0] *= 1.01
    report = validate_point(point.replace(tangent_frame=frame))
    assert not report['passed']
    assert report['gram_residual'] > 1e-3


def test_wrong_array_shape_rejected():
    ambient = AmbientModel(structure=build_standard(1), c=1.0)
    with pytest.raises(ShapeError):
        SubmanifoldPoint.from_tangent_frame(ambient, np.eye(4)[:2], h=np.zeros((2, 3, 3)))


def test_invariant_tangency_data():
    """A quaternionic line is preserved by every psi_k."""
    data = tangency_decomposition(build_fixture("S0"))

    assert np.allclose(data.normP2, [4.0, 4.0, 4.0])
    assert data.total == pytest.approx(12.0)
    assert np.allclose(data.F, 0.0)


def test_anti_invariant_tangency_data():
    data = tangency_decomposition(build_fixture("AI"))

    assert np.allclose(data.normP2, 0.0)
    # every psi_k e_i is normal and of unit length
    assert np.allclose(np.einsum('kai,kai->ki', data.F, data.F), 1.0)


def test_tangent_coordinates():
    point = build_fixture("S1")
    ambient_vector = 2.0 * point.tangent_frame[1] - point.tangent_frame[3]

    assert np.allclose(to_tangent_coordinates(point, ambient_vector), [0.0, 2.0, 0.0, -1.0])
    assert np.allclose(to_tangent_coordinates(point, [1.0, 0.0, 0.0, 0.0]), [1.0, 0.0, 0.0, 0.0])
    with pytest.raises(InvalidTangentError):
        to_tangent_coordinates(point, point.normal_frame[0])
    with pytest.raises(ShapeError):
        to_tangent_coordinates(point, np.ones(5))


def test_rotation_preserves_scalar_curvature():
    point = build_point(random_spec(n=4, m=2, c=0.5, seed=11))
    q, _ = np.linalg.qr(np.random.default_rng(5).standard_normal((4, 4)))
    rotated = rotate_tangent_frame(point, q)

    assert validate_point(rotated)['passed']
    assert scalar_tau(rotated) == pytest.approx(scalar_tau(point), rel=1e-12, abs=1e-12)
    assert np.trace(rotated.Mmat) == pytest.approx(np.trace(point.Mmat), abs=1e-12)


def test_rotation_rejects_non_orthogonal():
    with pytest.raises(ShapeError):
        rotate_tangent_frame(build_fixture("S0"), 2.0 * np.eye(4))


def test_dictionary_round_trip():
    point = build_fixture("QU")
    data = point_to_dict(point)
    restored = point_from_dict(data)

    assert set(data) == {'m', 'c', 'n', 'tangent_frame', 'normal_frame', 'h', 'M'}
    assert restored.n == point.n
    assert restored.c == point.c
    assert np.array_equal(restored.h, point.h)
    assert np.array_equal(restored.tangent_frame, point.tangent_frame)
    assert validate_point(restored)['passed']


@st.composite
def random_points(draw):
    m = draw(st.integers(min_value=1, max_value=3))
    n = draw(st.integers(min_value=2, max_value=4 * m - 1))
    c = draw(st.floats(min_value=-2.0, max_value=2.0, allow_nan=False))
    seed = draw(st.integers(min_value=0, max_value=2 ** 32 - 1))
    return build_point(random_spec(n=n, m=m, c=c, seed=seed))


def test_complete_frame_keeps_the_direction_first():
    x = np.array([3.0, 0.0, 4.0])
    frame = complete_frame(x)

    assert np.allclose(frame[0], [0.6, 0.0, 0.8])
    assert np.max(np.abs(frame @ frame.T - np.eye(3))) < 1e-12
    assert np.allclose(complete_frame(np.eye(4)[2]), np.eye(4)[[2, 0, 1, 3]])


def test_complete_frame_agrees_with_normal_completion():
    x = np.random.default_rng(8).standard_normal(6)
    assert np.array_equal(complete_frame(x)[1:], complete_normal_frame(x[None, :] / np.linalg.norm(x)))


def test_orthonormal_plane():
    point = build_fixture("S1")
    u, v = orthonormal_plane(point, ([2.0, 0.0, 0.0, 0.0], [1.0, 1.0, 0.0, 0.0]))

    assert np.allclose(u, [1.0, 0.0, 0.0, 0.0])
    assert np.allclose(v, [0.0, 1.0, 0.0, 0.0])
    with pytest.raises(DegeneratePlaneError):
        orthonormal_plane(point, ([1.0, 0.0, 0.0, 0.0], [-2.0, 0.0, 0.0, 0.0]))
    with pytest.raises(DegeneratePlaneError):
        orthonormal_plane(point, (np.zeros(4), [0.0, 1.0, 0.0, 0.0]))


@settings(max_examples=60, deadline=None)
@given(point=random_points())
def test_tangency_data_reconstructs_the_structure(point):
    """psi_k e_i = sum_j P_k[j, i] e_j + sum_alpha F_k[alpha, i] e_alpha."""
    data = tangency_decomposition(point)
    T, N = point.tangent_frame, point.normal_frame
    n = point.n

    for k, Jk in enumerate(point.ambient.structure.J):
        images = Jk @ T.T
        assert np.max(np.abs(images - (T.T @ data.P[k] + N.T @ data.F[k]))) < 1e-12
        gram = data.P[k].T @ data.P[k] + data.F[k].T @ data.F[k]
        assert np.max(np.abs(gram - np.eye(n))) < 1e-12
        assert np.max(np.abs(data.P[k] + data.P[k].T)) < 1e-12


@settings(max_examples=60, deadline=None)
@given(point=random_points())
def test_tangential_norms_are_bounded(point):
    data = tangency_decomposition(point)
    assert np.all(data.normP2 >= -1e-12)
    assert np.all(data.normP2 <= point.n + 1e-12)
    assert -1e-12 <= data.total <= 3 * point.n + 1e-12


@settings(max_examples=40, deadline=None)
@given(point=random_points(), rotation_seed=st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_tangential_norms_do_not_depend_on_the_frame(point, rotation_seed):
    q, _ = np.linalg.qr(np.random.default_rng(rotation_seed).standard_normal((point.n, point.n)))
    rotated = rotate_tangent_frame(point, q)

    before = tangency_decomposition(point).normP2
    after = tangency_decomposition(rotated).normP2
    assert np.allclose(after, before, rtol=0.0, atol=1e-12)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
