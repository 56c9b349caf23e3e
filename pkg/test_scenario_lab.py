#!/usr/bin/env python3
"""
Test script for the scenario generators and named fixtures.
"""

import sys
import os

import numpy as np
import pytest

# Add the src directory to Python path
sys.path.insert(0, os.path.join(os.path.dirname(__file__), 'src'))

from core.errors import InvalidDimensionError, ShapeError
from core.point_model import tangency_decomposition, validate_point
from core.scenario_lab import (
    ScenarioKind,
    ScenarioSpec,
    build_fixture,
    build_point,
    describe_fixtures,
    fixture_names,
    fixture_spec,
    make_quasi_umbilical_h,
    random_spec,
)


def test_fixture_catalogue():
    assert fixture_names() == ['S0', 'S1', 'S2', 'S0_neg', 'QU', 'AI']
    assert [name for name, _ in describe_fixtures()] == fixture_names()
    assert all(description for _, description in describe_fixtures())


@pytest.mark.parametrize("name", ['S0', 'S1', 'S2', 'S0_neg', 'QU', 'AI'])
def test_every_fixture_builds_a_valid_point(name):
    point = build_fixture(name)
    assert validate_point(point)['passed']
    assert fixture_spec(name).name == name


def test_unknown_fixture():
    with pytest.raises(KeyError):
        fixture_spec("S9")


def test_fixture_kind_dispatches_by_name():
    point = build_point(ScenarioSpec(kind='fixture', name='QU'))
    assert np.array_equal(point.h, build_fixture('QU').h)


def test_kind_is_coerced_to_enum():
    assert ScenarioSpec(kind='random').kind is ScenarioKind.RANDOM
    with pytest.raises(ValueError):
        ScenarioSpec(kind='hyperbolic')


def test_quasi_umbilical_form():
    h = make_quasi_umbilical_h(4, 4, 1.0, 6.0)
    assert h.shape == (4, 4, 4)
    assert np.array_equal(h[0], np.diag([1.0, 1.0, 1.0, 2.0]))
    assert not np.any(h[1:])

    with pytest.raises(ValueError):
        make_quasi_umbilical_h(4, 4, 1.0, 0.0)
    with pytest.raises(InvalidDimensionError):
        make_quasi_umbilical_h(4, 0, 1.0, 6.0)


def test_invariant_generator_checks_dimensions():
    with pytest.raises(InvalidDimensionError):
        build_point(ScenarioSpec(kind='invariant', n=3, m=2))
    with pytest.raises(InvalidDimensionError):
        build_point(ScenarioSpec(kind='invariant', n=8, m=2))


def test_invariant_generator_with_two_quaternionic_lines():
    point = build_point(ScenarioSpec(kind='invariant', n=8, m=3, c=0.5))
    assert np.allclose(tangency_decomposition(point).normP2, 8.0)


def test_anti_invariant_generator_checks_dimensions():
    with pytest.raises(InvalidDimensionError):
        build_point(ScenarioSpec(kind='anti_invariant', n=4, m=3))
    with pytest.raises(InvalidDimensionError):
        build_point(ScenarioSpec(kind='anti_invariant', n=1, m=3))


def test_random_generator_checks_dimensions():
    with pytest.raises(InvalidDimensionError):
        build_point(random_spec(n=8, m=2, c=1.0, seed=0))


def test_random_generator_is_deterministic():
    first = build_point(random_spec(n=4, m=2, c=1.0, seed=123))
    second = build_point(random_spec(n=4, m=2, c=1.0, seed=123))
    other = build_point(random_spec(n=4, m=2, c=1.0, seed=124))

    assert np.array_equal(first.tangent_frame, second.tangent_frame)
    assert np.array_equal(first.h, second.h)
    assert np.array_equal(first.Mmat, second.Mmat)
    assert not np.array_equal(first.h, other.h)


def test_random_entries_respect_their_scales():
    point = build_point(random_spec(n=5, m=3, c=-1.0, seed=9, h_scale=0.5, M_scale=0.1))

    assert np.max(np.abs(point.h)) <= 0.5
    assert np.max(np.abs(point.Mmat)) <= 0.1
    assert np.array_equal(point.h, point.h.transpose(0, 2, 1))
    assert np.array_equal(point.Mmat, point.Mmat.T)


def test_random_spec_default_name():
    assert random_spec(n=3, m=2, c=1.0, seed=7).name == 'random-n3-m2-s7'
    assert random_spec(n=3, m=2, c=1.0, seed=7, name='mine').name == 'mine'


def test_h_recipe_errors():
    with pytest.raises(ShapeError):
        build_point(ScenarioSpec(kind='invariant', n=4, m=2,
                                 h_spec={'type': 'umbilical', 'lambda': [1, 1, 1, 1, 1]}))
    with pytest.raises(ShapeError):
        build_point(ScenarioSpec(kind='invariant', n=4, m=2,
                                 h_spec={'type': 'explicit', 'value': np.zeros((4, 3, 3)).tolist()}))
    with pytest.raises(ValueError):
        build_point(ScenarioSpec(kind='invariant', n=4, m=2, h_spec={'type': 'spiral'}))


def test_M_recipe_errors():
    with pytest.raises(ShapeError):
        build_point(ScenarioSpec(kind='invariant', n=4, m=2,
                                 M_spec={'type': 'explicit', 'value': np.eye(3).tolist()}))
    with pytest.raises(ValueError):
        build_point(ScenarioSpec(kind='invariant', n=4, m=2, M_spec={'type': 'spiral'}))


def test_explicit_recipes():
    M = [[0.1, 0.2], [0.2, -0.1]]
    h = np.zeros((2, 2, 2))
    h[1] = [[1.0, 0.5], [0.5, 0.0]]
    point = build_point(ScenarioSpec(kind='anti_invariant', n=2, m=2, c=-1.0,
                                     h_spec={'type': 'explicit', 'value': np.concatenate(
                                         [h, np.zeros((4, 2, 2))]).tolist()},
                                     M_spec={'type': 'explicit', 'value': M}))
    assert point.codim == 6
    assert np.array_equal(point.Mmat, np.array(M))
    assert point.h[1, 0, 1] == 0.5


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
