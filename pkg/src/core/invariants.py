"""
Invariants Module

Mean curvature, Casorati curvatures (whole tangent space, subspaces and
extremal hyperplanes), the generalized and normalized delta-Casorati
curvatures, the Chen invariant with 2-plane extremization, plane data and
the two algebraic lemmas behind the Chen-type inequalities.

Hyperplanes V of the tangent space are parameterized by their unit normal u.
For V = u^perp,

    C(V) = (1/(n-1)) sum_alpha (||h^alpha||_F^2 - 2 |h^alpha u|^2 + (u^T h^alpha u)^2).

Usage:
    from core.invariants import casorati_C, hyperplane_extrema, chen_delta

    C = casorati_C(point)
    low = hyperplane_extrema(point, mode="inf", seed=0)
    chen = chen_delta(point, seed=0)
"""

import logging
import weakref
from dataclasses import dataclass, replace
from itertools import combinations
from typing import Any, Dict, Optional, Sequence

import numpy as np

from .curvature_engine import curvature_tensor, scalar_tau, unit_tangent
from .errors import IndexRangeError, InvalidDimensionError, ShapeError
from .manifold_search import (
    plane_grid,
    polish_best,
    random_sphere_starts,
    random_stiefel_starts,
    sphere_grid,
    sphere_minimize,
    stiefel_minimize,
)
from .point_model import (
    SubmanifoldPoint,
    complete_frame,
    orthonormal_plane,
    require_valid,
    tangency_decomposition,
    to_tangent_coordinates,
)

# Configure logging
logger = logging.getLogger(__name__)

DEFAULT_STARTS = 64
ORTHONORMAL_TOL = 1e-10

_SEARCH_CACHE: 'weakref.WeakKeyDictionary' = weakref.WeakKeyDictionary()


@dataclass(frozen=True, eq=False)
class MeanCurvature:
    """
    Mean curvature vector in normal-frame coordinates.

    Attributes:
        H (np.ndarray): H_alpha = (1/n) sum_i h^alpha_ii
        normH2 (float): ||H||^2
    """

    H: np.ndarray
    normH2: float


@dataclass(frozen=True, eq=False)
class CasoratiResult:
    """
    Casorati curvature with an extremal hyperplane.

    Attributes:
        C (float): Casorati curvature of the tangent space
        extremal_value (float): inf or sup of C(V) over hyperplanes V
        extremal_normal (np.ndarray): Unit normal (tangent coordinates) of the extremal V
        mode (str): 'inf' or 'sup'
        delta_value (Optional[float]): delta-Casorati value for a given r, when computed
    """

    C: float
    extremal_value: float
    extremal_normal: np.ndarray
    mode: str
    delta_value: Optional[float] = None


@dataclass(frozen=True, eq=False)
class PlaneData:
    """
    Structure and connection data of a tangent 2-plane.

    Attributes:
        beta (np.ndarray): beta_k(pi) = <P_k e1, e2>^2 for k = 1, 2, 3
        trace_m_perp (float): m_M - M(e1, e1) - M(e2, e2)
    """

    beta: np.ndarray
    trace_m_perp: float


@dataclass(frozen=True, eq=False)
class ChenResult:
    """
    Chen invariant with the minimizing plane.

    Attributes:
        delta_M (float): tau - inf K
        inf_K (float): Minimum sectional curvature found
        argmin_plane (np.ndarray): 2 x n orthonormal rows (tangent coordinates)
        tau (float): Scalar curvature
        coordinate_min (float): Minimum over coordinate planes alone
    """

    delta_M: float
    inf_K: float
    argmin_plane: np.ndarray
    tau: float
    coordinate_min: float


def norm_h2(point: SubmanifoldPoint) -> float:
    """||h||^2 = sum_alpha ||h^alpha||_F^2."""
    return float(np.sum(point.h ** 2))


def mean_curvature(point: SubmanifoldPoint) -> MeanCurvature:
    """
    Mean curvature vector H = (1/n) sum_i h(e_i, e_i).

    Args:
        point (SubmanifoldPoint): A valid point

    Returns:
        MeanCurvature: H in normal coordinates and ||H||^2
    """
    require_valid(point)
    H = np.trace(point.h, axis1=1, axis2=2) / point.n
    return MeanCurvature(H=H, normH2=float(np.dot(H, H)))


def casorati_C(point: SubmanifoldPoint) -> float:
    """
    Casorati curvature C = (1/n) sum_alpha sum_{i,j} (h^alpha_ij)^2.

    Args:
        point (SubmanifoldPoint): A valid point

    Returns:
        float: C >= 0
    """
    require_valid(point)
    return norm_h2(point) / point.n


def _subspace_coordinates(point: SubmanifoldPoint, subspace: Sequence[np.ndarray]) -> np.ndarray:
    """Rows of tangent coordinates, checked orthonormal."""
    rows = np.array([to_tangent_coordinates(point, v) for v in subspace])
    if rows.ndim != 2 or rows.shape[0] < 1:
        raise ShapeError("Subspace must be given by at least one vector")
    residual = np.max(np.abs(rows @ rows.T - np.eye(rows.shape[0])))
    if residual > ORTHONORMAL_TOL:
        raise ShapeError(f"Subspace basis is not orthonormal (Gram residual {residual:.3e})")
    return rows


def casorati_CV(point: SubmanifoldPoint, subspace: Sequence[np.ndarray]) -> float:
    """
    Casorati curvature of a subspace V with orthonormal basis f_1..f_r.

    Args:
        point (SubmanifoldPoint): A valid point
        subspace (Sequence[np.ndarray]): Orthonormal tangent vectors (r >= 2)

    Returns:
        float: C(V) = (1/r) sum_alpha sum_{a,b} h^alpha(f_a, f_b)^2

    Raises:
        ShapeError: If the basis is not orthonormal or r < 2
    """
    require_valid(point)
    B = _subspace_coordinates(point, subspace)
    r = B.shape[0]
    if r < 2:
        raise ShapeError(f"Subspace dimension must be at least 2, got {r}")
    restricted = np.einsum('ai,kij,bj->kab', B, point.h, B)
    return float(np.sum(restricted ** 2) / r)


def _hyperplane_functions(point: SubmanifoldPoint, sign: float):
    """Batched C(u^perp) and its gradient, multiplied by sign."""
    h = point.h
    n = point.n
    total = norm_h2(point)

    def f(U):
        HU = np.einsum('aij,sj->sai', h, U)
        q = np.einsum('si,sai->sa', U, HU)
        values = (total - 2.0 * np.sum(HU ** 2, axis=(1, 2)) + np.sum(q ** 2, axis=1)) / (n - 1)
        return sign * values

    def grad(U):
        HU = np.einsum('aij,sj->sai', h, U)
        q = np.einsum('si,sai->sa', U, HU)
        HHU = np.einsum('aij,saj->si', h, HU)
        g = (-4.0 * HHU + 4.0 * np.einsum('sa,sai->si', q, HU)) / (n - 1)
        return sign * g

    return f, grad


def hyperplane_value(point: SubmanifoldPoint, u: np.ndarray) -> float:
    """C(V) for the hyperplane with unit normal u (tangent coordinates)."""
    u = np.asarray(u, dtype=float)
    f, _ = _hyperplane_functions(point, 1.0)
    return float(f(u[None, :] / np.linalg.norm(u))[0])


def _hyperplane_starts(point: SubmanifoldPoint, seed: int, starts: int) -> np.ndarray:
    """Canonical axes, eigenvectors of every h^alpha and of sum h^alpha h^alpha, plus random starts."""
    n = point.n
    candidates = [np.eye(n)]
    for h_alpha in point.h:
        if np.any(h_alpha):
            candidates.append(np.linalg.eigh(h_alpha)[1].T)
    candidates.append(np.linalg.eigh(np.einsum('aij,ajk->ik', point.h, point.h))[1].T)
    rng = np.random.default_rng(seed)
    candidates.append(random_sphere_starts(n, starts, rng))
    return np.vstack(candidates)


def hyperplane_extrema(point: SubmanifoldPoint, mode: str = 'inf', seed: int = 0,
                       starts: int = DEFAULT_STARTS) -> CasoratiResult:
    """
    inf or sup of C(V) over tangent hyperplanes V.

    Multi-start projected gradient on the unit normal; results are cached per
    point, mode, seed and start count.

    Args:
        point (SubmanifoldPoint): A valid point with n >= 3
        mode (str): 'inf' or 'sup'
        seed (int): Seed of the random starts
        starts (int): Number of random starts

    Returns:
        CasoratiResult: C, the extremal value and the extremal normal

    Raises:
        InvalidDimensionError: If n < 3
        ValueError: If mode is not 'inf' or 'sup'
    """
    if mode not in ('inf', 'sup'):
        raise ValueError(f"mode must be 'inf' or 'sup', got {mode!r}")
    if point.n < 3:
        raise InvalidDimensionError(f"Hyperplane extremization needs n >= 3, got {point.n}")
    require_valid(point)

    key = ('hyperplane', mode, int(seed), int(starts))
    cache = _SEARCH_CACHE.setdefault(point, {})
    if key in cache:
        return cache[key]

    sign = 1.0 if mode == 'inf' else -1.0
    f, grad = _hyperplane_functions(point, sign)
    value, u = sphere_minimize(f, grad, _hyperplane_starts(point, seed, starts))
    extremal = max(0.0, sign * value)
    result = CasoratiResult(C=casorati_C(point), extremal_value=extremal,
                            extremal_normal=u, mode=mode)
    cache[key] = result
    logger.debug(f"Hyperplane {mode}: C(V) = {extremal:.15g} at u = {u}")
    return result


def casorati_coefficient(n: int, r: float) -> float:
    """(n-1)(n+r)(n^2-n-r)/(r n); positive below r = n^2 - n, negative above."""
    return (n - 1) * (n + r) * (n * n - n - r) / (r * n)


def delta_C_generalized(point: SubmanifoldPoint, r: float, seed: int = 0,
                        starts: int = DEFAULT_STARTS) -> Dict[str, Any]:
    """
    Generalized normalized delta-Casorati curvature for a positive real r.

    For 0 < r < n^2 - n the low variant uses inf C(V); for r > n^2 - n the
    high variant uses sup C(V). At r = n^2 - n the coefficient vanishes and
    the value r C is returned as the low variant.

    Args:
        point (SubmanifoldPoint): A valid point with n >= 3
        r (float): Positive parameter
        seed (int): Seed for the hyperplane search
        starts (int): Random starts for the hyperplane search

    Returns:
        Dict[str, Any]: 'delta', 'variant' ('low' or 'high') and 'result'
            (CasoratiResult with delta_value set)

    Raises:
        ValueError: If r <= 0
    """
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    n = point.n
    C = casorati_C(point)
    boundary = n * n - n
    if r > boundary:
        extremal = hyperplane_extrema(point, 'sup', seed, starts)
        variant = 'high'
        delta = r * C - (n - 1) * (n + r) * (r - boundary) / (r * n) * extremal.extremal_value
    else:
        extremal = hyperplane_extrema(point, 'inf', seed, starts)
        variant = 'low'
        delta = r * C + casorati_coefficient(n, r) * extremal.extremal_value
    return {
        'delta': float(delta),
        'variant': variant,
        'result': replace(extremal, delta_value=float(delta)),
    }


def delta_C_normalized(point: SubmanifoldPoint, seed: int = 0,
                       starts: int = DEFAULT_STARTS) -> Dict[str, float]:
    """
    Normalized delta-Casorati curvatures delta_C(n-1) and its hat version.

    Args:
        point (SubmanifoldPoint): A valid point with n >= 3

    Returns:
        Dict[str, float]: 'deltaC' = C/2 + ((n+1)/(2n)) inf C(V) and
            'deltaC_hat' = 2C - ((2n-1)/(2n)) sup C(V)
    """
    n = point.n
    C = casorati_C(point)
    low = hyperplane_extrema(point, 'inf', seed, starts).extremal_value
    high = hyperplane_extrema(point, 'sup', seed, starts).extremal_value
    return {
        'deltaC': C / 2.0 + (n + 1) / (2.0 * n) * low,
        'deltaC_hat': 2.0 * C - (2.0 * n - 1) / (2.0 * n) * high,
    }


def _sectional_functions(point: SubmanifoldPoint):
    """Batched K(u, v) = R(u, v; v, u) on orthonormal pairs and its gradient."""
    R = curvature_tensor(point)

    def f(X):
        u, v = X[:, :, 0], X[:, :, 1]
        return np.einsum('ijkl,si,sj,sk,sl->s', R, u, v, v, u, optimize=True)

    def grad(X):
        u, v = X[:, :, 0], X[:, :, 1]
        gu = (np.einsum('ijkl,sj,sk,sl->si', R, v, v, u, optimize=True)
              + np.einsum('ijkl,si,sj,sk->sl', R, u, v, v, optimize=True))
        gv = (np.einsum('ijkl,si,sk,sl->sj', R, u, v, u, optimize=True)
              + np.einsum('ijkl,si,sj,sl->sk', R, u, v, u, optimize=True))
        return np.stack([gu, gv], axis=2)

    return f, grad


def chen_delta(point: SubmanifoldPoint, seed: int = 0,
               starts: int = DEFAULT_STARTS) -> ChenResult:
    """
    Chen invariant delta_M = tau - inf K over all tangent 2-planes.

    The infimum combines every coordinate plane with a multi-start search
    over orthonormal pairs (coordinate planes are also used as starts).

    Args:
        point (SubmanifoldPoint): A valid point with n >= 3
        seed (int): Seed of the random starts
        starts (int): Number of random starts

    Returns:
        ChenResult: delta_M, inf K and the minimizing plane

    Raises:
        InvalidDimensionError: If n < 3
    """
    n = point.n
    if n < 3:
        raise InvalidDimensionError(f"Chen invariant needs n >= 3, got {n}")
    require_valid(point)

    key = ('chen', int(seed), int(starts))
    cache = _SEARCH_CACHE.setdefault(point, {})
    if key in cache:
        return cache[key]

    eye = np.eye(n)
    pairs = np.array([np.stack([eye[i], eye[j]], axis=1) for i, j in combinations(range(n), 2)])
    f, grad = _sectional_functions(point)
    coordinate_values = f(pairs)
    coordinate_min = float(np.min(coordinate_values))

    rng = np.random.default_rng(seed)
    all_starts = np.concatenate([pairs, random_stiefel_starts(n, 2, starts, rng)], axis=0)
    value, X = stiefel_minimize(f, grad, all_starts)
    if coordinate_min < value:
        best = int(np.argmin(coordinate_values))
        value, X = coordinate_min, pairs[best]

    tau = scalar_tau(point)
    result = ChenResult(delta_M=tau - value, inf_K=value, argmin_plane=X.T.copy(),
                        tau=tau, coordinate_min=coordinate_min)
    cache[key] = result
    logger.debug(f"Chen invariant: tau={tau:.15g}, inf K={value:.15g}")
    return result


def plane_data(point: SubmanifoldPoint, plane) -> PlaneData:
    """
    beta_k(pi) and trace(m_{pi^perp}) for a tangent plane.

    The diagonal terms g(P_k e_i, e_i)^2 vanish by skewness, so beta_k is the
    single square <P_k e1, e2>^2.

    Args:
        point (SubmanifoldPoint): A valid point
        plane: Pair of spanning tangent vectors (orthonormalized internally)

    Returns:
        PlaneData: beta and trace_m_perp

    Raises:
        DegeneratePlaneError: If the vectors do not span a plane
    """
    u, v = orthonormal_plane(point, plane)
    P = tangency_decomposition(point).P
    beta = np.array([np.dot(v, Pk @ u) ** 2 for Pk in P])
    M = point.Mmat
    trace_m_perp = point.m_M - float(u @ M @ u) - float(v @ M @ v)
    return PlaneData(beta=beta, trace_m_perp=trace_m_perp)


def lemma1_check(a: Sequence[float], k: int) -> Dict[str, Any]:
    """
    Chen's algebraic lemma for n reals and 2 <= k < n.

    With a* = (sum a_i)^2 / (n-k+1) - sum a_i^2, the lemma states
    2 sum_{i<j<=k} a_i a_j >= a*, with equality iff
    a_1 + ... + a_k = a_{k+1} = ... = a_n.

    Args:
        a (Sequence[float]): The reals a_1..a_n
        k (int): Split index

    Returns:
        Dict[str, Any]: 'a_star', 'lhs', 'holds', 'equality'

    Raises:
        IndexRangeError: If k is outside 2..n-1
    """
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if not (2 <= k < n):
        raise IndexRangeError(f"k must satisfy 2 <= k < n = {n}, got {k}")
    total = float(np.sum(a))
    squares = float(np.dot(a, a))
    a_star = total ** 2 / (n - k + 1) - squares
    head = a[:k]
    lhs = float(np.sum(head) ** 2 - np.dot(head, head))
    tol = 1e-12 * max(1.0, squares, abs(total) ** 2)
    holds = lhs >= a_star - tol

    block = float(np.sum(head))
    tail_equal = bool(np.all(np.abs(a[k:] - block) <= 1e-10))
    equality = bool(abs(lhs - a_star) <= 1e-10 and tail_equal)
    return {'a_star': a_star, 'lhs': lhs, 'holds': bool(holds), 'equality': equality}


def lemma2_bound(x: Sequence[float]) -> Dict[str, Any]:
    """
    zeta(x) = x_1 sum_{i>=2} x_i is at most mu^2 where 2 mu = sum x_i.

    Args:
        x (Sequence[float]): The reals x_1..x_n (n >= 2)

    Returns:
        Dict[str, Any]: 'zeta', 'bound' (mu^2), 'mu', 'holds', 'equality' (x_1 = mu)
    """
    x = np.asarray(x, dtype=float)
    if x.shape[0] < 2:
        raise IndexRangeError(f"Lemma needs at least two reals, got {x.shape[0]}")
    mu = float(np.sum(x)) / 2.0
    zeta = float(x[0] * np.sum(x[1:]))
    bound = mu * mu
    return {
        'zeta': zeta,
        'bound': bound,
        'mu': mu,
        'holds': bool(zeta <= bound + 1e-12 * max(1.0, bound)),
        'equality': bool(abs(x[0] - mu) <= 1e-10),
    }


def relative_null_space(point: SubmanifoldPoint, tol: float = 1e-10) -> np.ndarray:
    """
    Orthonormal basis of N(p) = {X : h(X, Y) = 0 for all Y}.

    Args:
        point (SubmanifoldPoint): A valid point

    Returns:
        np.ndarray: k x n rows (tangent coordinates); k = 0 when N(p) is trivial
    """
    require_valid(point)
    stacked = point.h.reshape(-1, point.n)
    if not stacked.size:
        return np.eye(point.n)
    _, singular, Vt = np.linalg.svd(stacked)
    scale = max(1.0, float(singular[0]) if singular.size else 0.0)
    rank = int(np.sum(singular > tol * scale))
    return Vt[rank:].copy()


def a2_slack_decomposition(point: SubmanifoldPoint, X) -> float:
    """
    sum_alpha (h^alpha_11 - mu_alpha)^2 + sum_alpha sum_{j>=2} (h^alpha_1j)^2.

    Evaluated in the frame completing X, with mu_alpha = (trace h^alpha)/2;
    this is the gap left by the Ricci curvature bound.

    Args:
        point (SubmanifoldPoint): A valid point
        X: Unit tangent vector

    Returns:
        float: The non-negative slack
    """
    x = unit_tangent(point, X)
    frame = complete_frame(x)
    h = np.einsum('ai,kij,bj->kab', frame, point.h, frame)
    slack = 0.0
    for h_alpha in h:
        lemma = lemma2_bound(np.diag(h_alpha))
        slack += (h_alpha[0, 0] - lemma['mu']) ** 2 + float(np.sum(h_alpha[0, 1:] ** 2))
    return float(slack)


def hyperplane_grid_oracle(point: SubmanifoldPoint, mode: str = 'inf', grid: int = 10000,
                           polish: int = 8) -> Dict[str, Any]:
    """
    Dense-grid oracle for hyperplane extrema, polished by local descent.

    Args:
        point (SubmanifoldPoint): A valid point with n >= 3
        mode (str): 'inf' or 'sup'
        grid (int): Target number of grid normals
        polish (int): Number of best grid points refined locally

    Returns:
        Dict[str, Any]: 'grid_value' (raw grid extremum) and 'value' (polished)
    """
    require_valid(point)
    sign = 1.0 if mode == 'inf' else -1.0
    f, grad = _hyperplane_functions(point, sign)
    normals = sphere_grid(point.n, grid)
    values = f(normals)
    polished, _ = sphere_minimize(f, grad, polish_best(values, normals, polish))
    return {
        'grid_value': float(sign * np.min(values)),
        'value': float(sign * min(polished, float(np.min(values)))),
        'grid_size': int(normals.shape[0]),
    }


def plane_grid_oracle(point: SubmanifoldPoint, grid: int = 10000, polish: int = 8) -> Dict[str, Any]:
    """
    Dense-grid oracle for inf K over 2-planes, polished by local descent.

    Args:
        point (SubmanifoldPoint): A valid point with n >= 3
        grid (int): Target number of grid planes
        polish (int): Number of best grid planes refined locally

    Returns:
        Dict[str, Any]: 'grid_value' (raw grid minimum) and 'value' (polished)
    """
    require_valid(point)
    f, grad = _sectional_functions(point)
    frames = plane_grid(point.n, grid)
    values = f(frames)
    polished, _ = stiefel_minimize(f, grad, polish_best(values, frames, polish))
    return {
        'grid_value': float(np.min(values)),
        'value': float(min(polished, float(np.min(values)))),
        'grid_size': int(frames.shape[0]),
    }
