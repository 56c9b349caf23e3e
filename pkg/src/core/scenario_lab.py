"""
Scenario Lab Module

Deterministic construction of submanifold point data: invariant,
anti-invariant and random tangent frames in a quaternionic space form,
second fundamental forms (zero, umbilical, quasi-umbilical, explicit,
random) and connection tensors M, plus the named fixtures.

Usage:
    from core.scenario_lab import ScenarioSpec, build_point, build_fixture

    spec = ScenarioSpec(kind="random", n=3, m=2, c=1.0, seed=42)
    point = build_point(spec)
    s1 = build_fixture("S1")
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from .errors import DegenerateFrameError, InvalidDimensionError, ShapeError
from .point_model import (
    AmbientModel,
    SubmanifoldPoint,
    orthonormalize,
    require_valid,
    tangency_decomposition,
)
from .quat_structure import build_standard

# Configure logging
logger = logging.getLogger(__name__)

DEFAULT_H_SCALE = 1.0
DEFAULT_M_SCALE = 0.3

H_TYPES = ('zero', 'umbilical', 'quasi_umbilical', 'explicit', 'random')
M_TYPES = ('zero', 'scaled_identity', 'explicit', 'random')


class ScenarioKind(Enum):
    """How the tangent frame is chosen."""
    INVARIANT = 'invariant'
    ANTI_INVARIANT = 'anti_invariant'
    RANDOM = 'random'
    FIXTURE = 'fixture'


@dataclass(frozen=True)
class ScenarioSpec:
    """
    Recipe for one submanifold point.

    h_spec and M_spec are dicts with a 'type' key:
        h: zero | umbilical {lambda: [..]} | quasi_umbilical {u, r}
           | explicit {value} | random {scale}
        M: zero | scaled_identity {s} | explicit {value} | random {scale}

    Attributes:
        kind (ScenarioKind): Frame construction
        n (int): Submanifold dimension
        m (int): Quaternionic dimension of the ambient space
        c (float): Space form constant
        h_spec (Dict[str, Any]): Second fundamental form recipe
        M_spec (Dict[str, Any]): Connection tensor recipe
        seed (int): Seed for every random draw
        name (str): Scenario id (fixture name for kind 'fixture')
    """

    kind: ScenarioKind
    n: int = 0
    m: int = 0
    c: float = 1.0
    h_spec: Dict[str, Any] = field(default_factory=lambda: {'type': 'zero'})
    M_spec: Dict[str, Any] = field(default_factory=lambda: {'type': 'zero'})
    seed: int = 0
    name: str = ''

    def __post_init__(self):
        object.__setattr__(self, 'kind', ScenarioKind(self.kind))


def make_quasi_umbilical_h(n: int, codim: int, u: float, r: float) -> np.ndarray:
    """
    Second fundamental form with h^1 = diag(u, ..., u, (n(n-1)/r) u), h^alpha = 0 otherwise.

    Args:
        n (int): Submanifold dimension
        codim (int): Number of normal directions (>= 1)
        u (float): Repeated eigenvalue
        r (float): Positive Casorati parameter

    Returns:
        np.ndarray: codim x n x n array
    """
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    if codim < 1:
        raise InvalidDimensionError(f"Quasi-umbilical form needs a normal direction, codim = {codim}")
    h = np.zeros((codim, n, n))
    diagonal = np.full(n, float(u))
    diagonal[-1] = n * (n - 1) / r * u
    h[0] = np.diag(diagonal)
    return h


def _random_symmetric(rng: np.random.Generator, shape: Tuple[int, ...], scale: float) -> np.ndarray:
    """Symmetric matrices (last two axes) with upper-triangle entries uniform in [-scale, scale]."""
    values = rng.uniform(-scale, scale, size=shape)
    upper = np.triu(values)
    return upper + np.swapaxes(np.triu(values, 1), -1, -2)


def _build_h(h_spec: Dict[str, Any], n: int, codim: int, rng: np.random.Generator) -> np.ndarray:
    kind = h_spec.get('type')
    if kind == 'zero':
        return np.zeros((codim, n, n))
    if kind == 'umbilical':
        lambdas = list(h_spec.get('lambda', []))
        if len(lambdas) > codim:
            raise ShapeError(f"{len(lambdas)} umbilical factors for {codim} normal directions")
        h = np.zeros((codim, n, n))
        for alpha, value in enumerate(lambdas):
            h[alpha] = float(value) * np.eye(n)
        return h
    if kind == 'quasi_umbilical':
        return make_quasi_umbilical_h(n, codim, float(h_spec['u']), float(h_spec['r']))
    if kind == 'explicit':
        h = np.array(h_spec['value'], dtype=float)
        if h.shape != (codim, n, n):
            raise ShapeError(f"explicit h has shape {h.shape}, expected {(codim, n, n)}")
        return h
    if kind == 'random':
        return _random_symmetric(rng, (codim, n, n), float(h_spec.get('scale', DEFAULT_H_SCALE)))
    raise ValueError(f"Unknown h type '{kind}', expected one of {H_TYPES}")


def _build_M(M_spec: Dict[str, Any], n: int, rng: np.random.Generator) -> np.ndarray:
    kind = M_spec.get('type')
    if kind == 'zero':
        return np.zeros((n, n))
    if kind == 'scaled_identity':
        return float(M_spec['s']) * np.eye(n)
    if kind == 'explicit':
        M = np.array(M_spec['value'], dtype=float)
        if M.shape != (n, n):
            raise ShapeError(f"explicit M has shape {M.shape}, expected {(n, n)}")
        return M
    if kind == 'random':
        return _random_symmetric(rng, (n, n), float(M_spec.get('scale', DEFAULT_M_SCALE)))
    raise ValueError(f"Unknown M type '{kind}', expected one of {M_TYPES}")


def _assemble(spec: ScenarioSpec, tangent_frame: np.ndarray,
              rng: np.random.Generator) -> SubmanifoldPoint:
    ambient = AmbientModel(structure=build_standard(spec.m), c=float(spec.c))
    n = spec.n
    codim = ambient.dim - n
    h = _build_h(spec.h_spec, n, codim, rng)
    M = _build_M(spec.M_spec, n, rng)
    point = SubmanifoldPoint.from_tangent_frame(ambient, tangent_frame, h=h, Mmat=M)
    require_valid(point)
    return point


def make_invariant_point(spec: ScenarioSpec) -> SubmanifoldPoint:
    """
    Point whose tangent space is a sum of quaternionic lines {v, J1 v, J2 v, J3 v}.

    Base vectors are the first real axes of the first n/4 quaternionic blocks.

    Args:
        spec (ScenarioSpec): n divisible by 4, n < 4m

    Returns:
        SubmanifoldPoint: Validated point with ||P_k||^2 = n for all k

    Raises:
        InvalidDimensionError: If n is not a positive multiple of 4 or n >= 4m
    """
    n, m = spec.n, spec.m
    if n < 4 or n % 4 != 0:
        raise InvalidDimensionError(f"Invariant tangent space needs n divisible by 4, got {n}")
    if n >= 4 * m:
        raise InvalidDimensionError(f"Invariant tangent space needs n < 4m, got n={n}, m={m}")
    Q = build_standard(m)
    rows = []
    for block in range(n // 4):
        v = np.zeros(4 * m)
        v[4 * block] = 1.0
        rows.extend([v, Q.J[0] @ v, Q.J[1] @ v, Q.J[2] @ v])
    point = _assemble(spec, np.array(rows), np.random.default_rng(spec.seed))

    normP2 = tangency_decomposition(point).normP2
    if not np.allclose(normP2, n, atol=1e-10):
        raise DegenerateFrameError(f"Invariant frame has ||P_k||^2 = {normP2}, expected {n}")
    return point


def make_anti_invariant_point(spec: ScenarioSpec) -> SubmanifoldPoint:
    """
    Point whose tangent space is spanned by real axes of n distinct quaternionic blocks.

    Args:
        spec (ScenarioSpec): n <= m

    Returns:
        SubmanifoldPoint: Validated point with ||P_k||^2 = 0 for all k

    Raises:
        InvalidDimensionError: If n > m or n < 2
    """
    n, m = spec.n, spec.m
    if n < 2 or n > m:
        raise InvalidDimensionError(f"Anti-invariant tangent space needs 2 <= n <= m, got n={n}, m={m}")
    rows = np.zeros((n, 4 * m))
    for block in range(n):
        rows[block, 4 * block] = 1.0
    point = _assemble(spec, rows, np.random.default_rng(spec.seed))

    normP2 = tangency_decomposition(point).normP2
    if not np.allclose(normP2, 0.0, atol=1e-10):
        raise DegenerateFrameError(f"Anti-invariant frame has ||P_k||^2 = {normP2}, expected 0")
    return point


def make_random_point(spec: ScenarioSpec) -> SubmanifoldPoint:
    """
    Point with a seeded Gaussian tangent frame.

    Draw order from default_rng(seed): frame, then h, then M.

    Args:
        spec (ScenarioSpec): 2 <= n < 4m

    Returns:
        SubmanifoldPoint: Validated point, bit-identical for a given seed

    Raises:
        InvalidDimensionError: If n is out of range
    """
    n, m = spec.n, spec.m
    if m < 1 or n < 2 or n >= 4 * m:
        raise InvalidDimensionError(f"Random point needs 2 <= n < 4m, got n={n}, m={m}")
    rng = np.random.default_rng(spec.seed)
    frame = orthonormalize(rng.standard_normal((n, 4 * m)))
    return _assemble(spec, frame, rng)


# name -> (description, recipe)
FIXTURES: Dict[str, Tuple[str, ScenarioSpec]] = {
    'S0': ('invariant, totally geodesic (n=4, m=2, c=1, h=0, M=0)',
           ScenarioSpec(kind='invariant', n=4, m=2, c=1.0, name='S0')),
    'S1': ('S0 with umbilical h = I along the first normal',
           ScenarioSpec(kind='invariant', n=4, m=2, c=1.0,
                        h_spec={'type': 'umbilical', 'lambda': [1.0]}, name='S1')),
    'S2': ('S0 with M = 0.1 I',
           ScenarioSpec(kind='invariant', n=4, m=2, c=1.0,
                        M_spec={'type': 'scaled_identity', 's': 0.1}, name='S2')),
    'S0_neg': ('S0 with c = -1',
               ScenarioSpec(kind='invariant', n=4, m=2, c=-1.0, name='S0_neg')),
    'QU': ('invariant, quasi-umbilical h = diag(1,1,1,2) (equality at r=6)',
           ScenarioSpec(kind='invariant', n=4, m=2, c=1.0,
                        h_spec={'type': 'quasi_umbilical', 'u': 1.0, 'r': 6.0}, name='QU')),
    'AI': ('anti-invariant, totally geodesic (n=3, m=3, c=-1)',
           ScenarioSpec(kind='anti_invariant', n=3, m=3, c=-1.0, name='AI')),
}


def fixture_names() -> List[str]:
    return list(FIXTURES)


def describe_fixtures() -> List[Tuple[str, str]]:
    """(name, one-line description) for every fixture."""
    return [(name, description) for name, (description, _) in FIXTURES.items()]


def fixture_spec(name: str) -> ScenarioSpec:
    """
    Recipe of a named fixture.

    Raises:
        KeyError: If the name is unknown
    """
    if name not in FIXTURES:
        raise KeyError(f"Unknown fixture '{name}', expected one of {fixture_names()}")
    return FIXTURES[name][1]


def build_point(spec: ScenarioSpec) -> SubmanifoldPoint:
    """
    Dispatch a recipe to its generator.

    Args:
        spec (ScenarioSpec): Any recipe; kind 'fixture' looks up spec.name

    Returns:
        SubmanifoldPoint: Validated point
    """
    if spec.kind is ScenarioKind.FIXTURE:
        return build_fixture(spec.name)
    builders = {
        ScenarioKind.INVARIANT: make_invariant_point,
        ScenarioKind.ANTI_INVARIANT: make_anti_invariant_point,
        ScenarioKind.RANDOM: make_random_point,
    }
    point = builders[spec.kind](spec)
    logger.debug(f"Built {spec.kind.value} point n={spec.n}, m={spec.m}, c={spec.c}, seed={spec.seed}")
    return point


def build_fixture(name: str) -> SubmanifoldPoint:
    """
    Build a named fixture (S0, S1, S2, S0_neg, QU, AI).

    Args:
        name (str): Fixture name

    Returns:
        SubmanifoldPoint: The fixture point
    """
    return build_point(fixture_spec(name))


def random_spec(n: int, m: int, c: float, seed: int,
                h_scale: float = DEFAULT_H_SCALE, M_scale: float = DEFAULT_M_SCALE,
                name: Optional[str] = None) -> ScenarioSpec:
    """Recipe of a random scenario with uniform h and M."""
    return ScenarioSpec(
        kind='random', n=n, m=m, c=c,
        h_spec={'type': 'random', 'scale': h_scale},
        M_spec={'type': 'random', 'scale': M_scale},
        seed=seed, name=name or f"random-n{n}-m{m}-s{seed}",
    )
