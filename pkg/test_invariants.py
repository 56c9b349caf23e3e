#!/usr/bin/env python3
"""
Test script for the curvature invariants.

Mean curvature, Casorati curvatures and their hyperplane extrema, the
delta-Casorati family, the Chen invariant, plane data and the two algebraic
lemmas, checked on fixtures with hand-computed values.
"""

import sys
import os

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

# Add the src directory to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from core.curvature_engine import sectional_K
from core.errors import IndexRangeError, InvalidDimensionError, ShapeError
from core.invariants import (
    a2_slack_decomposition,
    casorati_C,
    casorati_CV,
    casorati_coefficient,
    chen_delta,
    delta_C_generalized,
    delta_C_normalized,
    hyperplane_extrema,
    hyperplane_value,
    lemma1_check,
    lemma2_bound,
    mean_curvature,
    norm_h2,
    plane_data,
    relative_null_space,
)
from core.scenario_lab import build_fixture, build_point, random_spec


def test_mean_curvature_of_fixtures():
    umbilical = mean_curvature(build_fixture("S1"))
    assert np.allclose(umbilical.H, [1.0, 0.0, 0.0, 0.0])
    assert umbilical.normH2 == pytest.approx(1.0)

    quasi = mean_curvature(build_fixture("QU"))
    assert quasi.normH2 == pytest.approx(25.0 / 16.0)


def test_casorati_curvature_of_fixtures():
    assert casorati_C(build_fixture("S0")) == 0.0
    assert casorati_C(build_fixture("S1")) == pytest.approx(1.0)
    assert norm_h2(build_fixture("QU")) == pytest.approx(7.0)
    assert casorati_C(build_fixture("QU")) == pytest.approx(1.75)


def test_subspace_casorati_of_whole_frame_is_C():
    point = build_point(random_spec(n=4, m=2, c=1.0, seed=2))
    assert casorati_CV(point, list(np.eye(4))) == pytest.approx(casorati_C(point), rel=1e-12)


def test_subspace_casorati_matches_hyperplane_formula():
    point = build_point(random_spec(n=4, m=2, c=1.0, seed=6))
    u = np.array([0.0, 0.0, 0.6, 0.8])
    basis = [np.eye(4)[0], np.eye(4)[1], np.array([0.0, 0.0, 0.8, -0.6])]
    assert casorati_CV(point, basis) == pytest.approx(hyperplane_value(point, u), rel=1e-12)


def test_subspace_casorati_rejects_bad_basis():
    point = build_fixture("S1")
    with pytest.raises(ShapeError):
        casorati_CV(point, [np.eye(4)[0], np.array([1.0, 1.0, 0.0, 0.0])])
    with pytest.raises(ShapeError):
        casorati_CV(point, [np.eye(4)[0]])


def test_hyperplane_extrema_of_quasi_umbilical_fixture():
    """For h = diag(1,1,1,2): inf C(V) = 1 at V = e4^perp, sup C(V) = 2."""
    point = build_fixture("QU")
    low = hyperplane_extrema(point, 'inf')
    high = hyperplane_extrema(point, 'sup')

    assert low.C == pytest.approx(1.75)
    assert low.extremal_value == pytest.approx(1.0, abs=1e-9)
    assert abs(low.extremal_normal[3]) == pytest.approx(1.0, abs=1e-6)
    assert high.extremal_value == pytest.approx(2.0, abs=1e-9)
    assert abs(high.extremal_normal[3]) < 1e-4


def test_hyperplane_extrema_of_umbilical_fixture_are_flat():
    point = build_fixture("S1")
    assert hyperplane_extrema(point, 'inf').extremal_value == pytest.approx(1.0, abs=1e-9)
    assert hyperplane_extrema(point, 'sup').extremal_value == pytest.approx(1.0, abs=1e-9)


def test_hyperplane_extrema_is_deterministic():
    point = build_point(random_spec(n=5, m=2, c=1.0, seed=21))
    first = hyperplane_extrema(point, 'inf', seed=3)
    again = hyperplane_extrema(build_point(random_spec(n=5, m=2, c=1.0, seed=21)), 'inf', seed=3)
    assert first.extremal_value == again.extremal_value
    assert np.array_equal(first.extremal_normal, again.extremal_normal)


def test_hyperplane_extrema_rejects_bad_input():
    with pytest.raises(ValueError):
        hyperplane_extrema(build_fixture("S1"), 'median')
    with pytest.raises(InvalidDimensionError):
        hyperplane_extrema(build_point(random_spec(n=2, m=1, c=1.0, seed=0)), 'inf')


def test_casorati_coefficient_changes_sign_at_boundary():
    assert casorati_coefficient(4, 6) == pytest.approx(7.5)
    assert casorati_coefficient(4, 12) == 0.0
    assert casorati_coefficient(4, 24) < 0.0


def test_delta_casorati_of_umbilical_fixture():
    point = build_fixture("S1")

    low = delta_C_generalized(point, 6)
    assert low['variant'] == 'low'
    assert low['delta'] == pytest.approx(13.5)
    assert low['result'].delta_value == pytest.approx(13.5)

    high = delta_C_generalized(point, 24)
    assert high['variant'] == 'high'
    assert high['delta'] == pytest.approx(13.5)

    boundary = delta_C_generalized(point, 12)
    assert boundary['variant'] == 'low'
    assert boundary['delta'] == pytest.approx(12.0)

    normalized = delta_C_normalized(point)
    assert normalized['deltaC'] == pytest.approx(1.125)
    assert normalized['deltaC_hat'] == pytest.approx(1.125)


def test_delta_casorati_rejects_non_positive_r():
    with pytest.raises(ValueError):
        delta_C_generalized(build_fixture("S1"), 0.0)


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_normalized_delta_casorati_scaling(seed):
    """n(n-1) delta_C(n-1) = delta_C(n(n-1)/2; n-1), and likewise for the hat version at 2n(n-1)."""
    point = build_point(random_spec(n=4, m=2, c=1.0, seed=seed))
    normalized = delta_C_normalized(point)

    assert 12 * normalized['deltaC'] == pytest.approx(delta_C_generalized(point, 6)['delta'], rel=1e-10)
    assert 12 * normalized['deltaC_hat'] == pytest.approx(delta_C_generalized(point, 24)['delta'], rel=1e-10)


@pytest.mark.parametrize("name,delta,inf_K", [("S0", 20.0, 4.0), ("S1", 25.0, 5.0), ("AI", -2.0, -1.0)])
def test_chen_invariant_of_fixtures(name, delta, inf_K):
    chen = chen_delta(build_fixture(name))

    assert chen.delta_M == pytest.approx(delta, abs=1e-9)
    assert chen.inf_K == pytest.approx(inf_K, abs=1e-9)
    assert chen.argmin_plane.shape == (2, build_fixture(name).n)


def test_chen_invariant_argmin_plane_attains_the_infimum():
    point = build_point(random_spec(n=5, m=2, c=1.0, seed=17))
    chen = chen_delta(point)
    u, v = chen.argmin_plane

    assert np.allclose(chen.argmin_plane @ chen.argmin_plane.T, np.eye(2), atol=1e-9)
    assert sectional_K(point, (u, v)) == pytest.approx(chen.inf_K, abs=1e-9)
    assert chen.inf_K <= chen.coordinate_min + 1e-12


def test_chen_invariant_needs_three_dimensions():
    with pytest.raises(InvalidDimensionError):
        chen_delta(build_point(random_spec(n=2, m=1, c=1.0, seed=0)))


def test_plane_data_on_quaternionic_and_totally_real_planes():
    eye = np.eye(4)
    invariant = build_fixture("S0")
    assert np.allclose(plane_data(invariant, (eye[0], eye[1])).beta, [1.0, 0.0, 0.0])
    assert np.allclose(plane_data(invariant, (eye[0], eye[2])).beta, [0.0, 1.0, 0.0])

    anti = build_fixture("AI")
    assert np.allclose(plane_data(anti, (np.eye(3)[0], np.eye(3)[1])).beta, 0.0)


def test_plane_data_connection_trace():
    data = plane_data(build_fixture("S2"), (np.eye(4)[0], np.eye(4)[1]))
    assert data.trace_m_perp == pytest.approx(0.2)


def test_lemma1_equality_instance():
    result = lemma1_check([1.0, 1.0, 2.0, 2.0], 2)
    assert result['a_star'] == pytest.approx(2.0)
    assert result['lhs'] == pytest.approx(2.0)
    assert result['holds']
    assert result['equality']


def test_lemma1_strict_instance():
    result = lemma1_check([1.0, 2.0, 3.0, 4.0], 2)
    assert result['holds']
    assert not result['equality']


def test_lemma1_rejects_bad_split():
    with pytest.raises(IndexRangeError):
        lemma1_check([1.0, 2.0, 3.0], 3)
    with pytest.raises(IndexRangeError):
        lemma1_check([1.0, 2.0, 3.0], 1)


@settings(max_examples=200, deadline=None)
@given(a=arrays(np.float64, st.integers(min_value=3, max_value=7),
                elements=st.floats(min_value=-100, max_value=100)),
       data=st.data())
def test_lemma1_always_holds(a, data):
    k = data.draw(st.integers(min_value=2, max_value=a.shape[0] - 1))
    assert lemma1_check(a, k)['holds']


def test_lemma2_instances():
    strict = lemma2_bound([2.0, 1.0, 1.0, 2.0])
    assert strict['zeta'] == pytest.approx(8.0)
    assert strict['bound'] == pytest.approx(9.0)
    assert strict['holds'] and not strict['equality']

    equal = lemma2_bound([3.0, 1.0, 1.0, 1.0])
    assert equal['zeta'] == pytest.approx(equal['bound'])
    assert equal['equality']


@settings(max_examples=200, deadline=None)
@given(x=arrays(np.float64, st.integers(min_value=2, max_value=8),
                elements=st.floats(min_value=-100, max_value=100)))
def test_lemma2_always_holds(x):
    assert lemma2_bound(x)['holds']


def test_relative_null_space():
    assert relative_null_space(build_fixture("S0")).shape == (4, 4)
    assert relative_null_space(build_fixture("S1")).shape == (0, 4)

    point = build_fixture("S0")
    h = np.zeros_like(point.h)
    h[0, 0, 0] = 1.0
    kernel = relative_null_space(point.replace(h=h))
    assert kernel.shape == (3, 4)
    assert np.allclose(kernel[:, 0], 0.0)


def test_ricci_slack_decomposition_of_umbilical_fixture():
    assert a2_slack_decomposition(build_fixture("S1"), np.eye(4)[0]) == pytest.approx(1.0)
    assert a2_slack_decomposition(build_fixture("S0"), np.eye(4)[2]) == 0.0


@pytest.mark.parametrize("seed", range(10))
def test_hyperplane_values_lie_between_the_extrema(seed):
    """Every sampled hyperplane gives inf C(V) <= C(V) <= sup C(V)."""
    rng = np.random.default_rng(1000 + seed)
    m = int(rng.integers(1, 4))
    n = int(rng.integers(3, 4 * m))
    point = build_point(random_spec(n=n, m=m, c=float(rng.uniform(-2.0, 2.0)), seed=seed))
    low = hyperplane_extrema(point, 'inf', seed=seed)
    high = hyperplane_extrema(point, 'sup', seed=seed)
    tol = 1e-9 * max(1.0, high.extremal_value)

    assert hyperplane_value(point, low.extremal_normal) == pytest.approx(low.extremal_value, abs=tol)
    assert hyperplane_value(point, high.extremal_normal) == pytest.approx(high.extremal_value, abs=tol)
    for u in rng.standard_normal((100, n)):
        value = hyperplane_value(point, u)
        assert low.extremal_value - tol <= value <= high.extremal_value + tol


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
