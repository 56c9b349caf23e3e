"""
Curvature Engine Module

This module evaluates the curvature tensors of a submanifold point:

- the ambient space-form tensor R*,
- the curvature R'' of the Ricci quarter-symmetric metric connection in its
  Einstein-reduced form,
- the induced curvature R obtained from the Gauss equation,

plus the sectional, scalar, normalized scalar and Ricci curvatures and the
contractions tau', S'' and tau''.

Conventions:
    R(X, Y; Z, W) is the scalar <R(X, Y)Z, W>; the sectional curvature of the
    plane spanned by orthonormal u, v is R(u, v; v, u).

    tau' is the FULL double contraction over i != j, so it carries n(n-1),
    while the scalar curvature tau of the submanifold is the half sum over
    i < j. Both follow the printed definitions.

    Tangent indices are 0-based (0..n-1) in this API.

Usage:
    from core.curvature_engine import curvature_summary, sectional_K, ricci

    summary = curvature_summary(point)
    K = sectional_K(point, (u, v))
    Ric = ricci(point, X)
"""

import logging
import weakref
from dataclasses import dataclass
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from .errors import DegeneratePlaneError, IndexRangeError, InvalidTangentError, ShapeError
from .point_model import (
    AmbientModel,
    SubmanifoldPoint,
    complete_frame,
    require_valid,
    tangency_decomposition,
    to_tangent_coordinates,
)

# Configure logging
logger = logging.getLogger(__name__)

PLANE_TOL = 1e-12
UNIT_TOL = 1e-10

_TENSOR_CACHE: 'weakref.WeakKeyDictionary' = weakref.WeakKeyDictionary()


@dataclass(frozen=True, eq=False)
class CurvatureSummary:
    """
    Scalar curvature data of a point.

    Attributes:
        tau (float): Scalar curvature, sum of K_ij over i < j
        rho (float): Normalized scalar curvature 2 tau / (n (n - 1))
        tau_prime (float): Ambient contraction c{n(n-1) + 3 sum_k ||P_k||^2}
        tau_dprime (float): Trace of the connection Ricci tensor S''
        K (np.ndarray): n x n coordinate-plane sectional curvatures (diagonal zero)
    """

    tau: float
    rho: float
    tau_prime: float
    tau_dprime: float
    K: np.ndarray


def ambient_R_star(ambient: AmbientModel, X: np.ndarray, Y: np.ndarray,
                   Z: np.ndarray, W: np.ndarray) -> float:
    """
    Evaluate <R*(X, Y)Z, W> of the quaternionic space form.

    Args:
        ambient (AmbientModel): Structure and constant c
        X, Y, Z, W (np.ndarray): Vectors of R^{4m}

    Returns:
        float: The curvature component

    Raises:
        ShapeError: If any vector has the wrong length
    """
    vectors = [np.asarray(v, dtype=float) for v in (X, Y, Z, W)]
    for v in vectors:
        if v.shape != (ambient.dim,):
            raise ShapeError(f"Vector has shape {v.shape}, expected ({ambient.dim},)")
    X, Y, Z, W = vectors

    value = np.dot(Y, Z) * np.dot(X, W) - np.dot(X, Z) * np.dot(Y, W)
    for Jk in ambient.structure.J:
        JX, JY, JZ = Jk @ X, Jk @ Y, Jk @ Z
        value += (np.dot(JY, Z) * np.dot(JX, W)
                  - np.dot(JX, Z) * np.dot(JY, W)
                  - 2.0 * np.dot(JX, Y) * np.dot(JZ, W))
    return float(ambient.c * value)


def _ambient_tensor(point: SubmanifoldPoint) -> np.ndarray:
    """R*_{ijkl} on the stored tangent frame."""
    n = point.n
    delta = np.eye(n)
    # A[k][a, b] = <psi_k e_a, e_b>
    A = tangency_decomposition(point).P.transpose(0, 2, 1)
    tensor = np.einsum('jk,il->ijkl', delta, delta) - np.einsum('ik,jl->ijkl', delta, delta)
    tensor = tensor + (
        np.einsum('xjk,xil->ijkl', A, A)
        - np.einsum('xik,xjl->ijkl', A, A)
        - 2.0 * np.einsum('xij,xkl->ijkl', A, A)
    )
    return point.c * tensor


def _connection_correction(point: SubmanifoldPoint, tau_p: float) -> np.ndarray:
    """(tau'/n) {M_jk d_il - M_ik d_jl + d_jk M_il - d_ik M_jl}."""
    n = point.n
    delta = np.eye(n)
    M = point.Mmat
    tensor = (np.einsum('jk,il->ijkl', M, delta)
              - np.einsum('ik,jl->ijkl', M, delta)
              + np.einsum('jk,il->ijkl', delta, M)
              - np.einsum('ik,jl->ijkl', delta, M))
    return (tau_p / n) * tensor


def _gauss_term(point: SubmanifoldPoint) -> np.ndarray:
    """sum_alpha (h_ik h_jl - h_il h_jk)."""
    h = point.h
    return np.einsum('aik,ajl->ijkl', h, h) - np.einsum('ail,ajk->ijkl', h, h)


def tau_prime(point: SubmanifoldPoint) -> float:
    """
    Ambient scalar contraction tau' = c{n(n-1) + 3 sum_k ||P_k||^2}.

    Args:
        point (SubmanifoldPoint): A valid point

    Returns:
        float: tau'
    """
    n = point.n
    return float(point.c * (n * (n - 1) + 3.0 * tangency_decomposition(point).total))


def tau_prime_direct(point: SubmanifoldPoint) -> float:
    """
    tau' as the double contraction sum_{i != j} R*(e_i, e_j; e_j, e_i).

    Args:
        point (SubmanifoldPoint): A valid point

    Returns:
        float: Direct contraction (diagonal terms vanish)
    """
    R = _ambient_tensor(point)
    return float(np.einsum('ijji->', R))


def connection_tensor(point: SubmanifoldPoint) -> np.ndarray:
    """
    R''_{ijkl} on the tangent frame.

    Args:
        point (SubmanifoldPoint): A valid point

    Returns:
        np.ndarray: n x n x n x n array
    """
    return _ambient_tensor(point) - _connection_correction(point, tau_prime(point))


def curvature_tensor(point: SubmanifoldPoint) -> np.ndarray:
    """
    Induced curvature R_{ijkl} of the submanifold on the stored frame.

    R = R'' - sum_alpha (h_ik h_jl - h_il h_jk). The array is cached per
    point object and returned read-only.

    Args:
        point (SubmanifoldPoint): A valid point

    Returns:
        np.ndarray: n x n x n x n array
    """
    cached = _TENSOR_CACHE.get(point)
    if cached is not None:
        return cached
    require_valid(point)
    R = connection_tensor(point) - _gauss_term(point)
    R.setflags(write=False)
    _TENSOR_CACHE[point] = R
    return R


def _check_indices(point: SubmanifoldPoint, indices: Sequence[int]) -> None:
    for index in indices:
        if not (0 <= int(index) < point.n):
            raise IndexRangeError(f"Tangent index {index} outside 0..{point.n - 1}")


def connection_R_dprime(point: SubmanifoldPoint, i: int, j: int, k: int, l: int) -> float:
    """
    Component <R''(e_i, e_j)e_k, e_l> of the connection curvature.

    Args:
        point (SubmanifoldPoint): A valid point
        i, j, k, l (int): Tangent indices (0-based)

    Returns:
        float: The component

    Raises:
        IndexRangeError: If an index is outside 0..n-1
    """
    _check_indices(point, (i, j, k, l))
    return float(connection_tensor(point)[i, j, k, l])


def induced_R(point: SubmanifoldPoint, i: int, j: int, k: int, l: int) -> float:
    """
    Component R(e_i, e_j; e_k, e_l) of the induced curvature (Gauss equation).

    Args:
        point (SubmanifoldPoint): A valid point
        i, j, k, l (int): Tangent indices (0-based)

    Returns:
        float: The component

    Raises:
        IndexRangeError: If an index is outside 0..n-1
    """
    _check_indices(point, (i, j, k, l))
    return float(curvature_tensor(point)[i, j, k, l])


def evaluate_R(point: SubmanifoldPoint, X, Y, Z, W) -> float:
    """
    Bilinear extension of the induced curvature to arbitrary tangent vectors.

    Args:
        point (SubmanifoldPoint): A valid point
        X, Y, Z, W: Tangent coordinates or ambient tangent vectors

    Returns:
        float: R(X, Y; Z, W)
    """
    x, y, z, w = (to_tangent_coordinates(point, v) for v in (X, Y, Z, W))
    return float(np.einsum('ijkl,i,j,k,l->', curvature_tensor(point), x, y, z, w))


def sectional_K(point: SubmanifoldPoint, plane: Tuple[np.ndarray, np.ndarray]) -> float:
    """
    Sectional curvature of the plane spanned by two tangent vectors.

    Args:
        point (SubmanifoldPoint): A valid point
        plane (Tuple[np.ndarray, np.ndarray]): Spanning vectors (any scale)

    Returns:
        float: K = R(u, v; v, u) / (<u,u><v,v> - <u,v>^2)

    Raises:
        DegeneratePlaneError: If the vectors are (numerically) parallel
    """
    u, v = (to_tangent_coordinates(point, w) for w in plane)
    denominator = np.dot(u, u) * np.dot(v, v) - np.dot(u, v) ** 2
    if denominator < PLANE_TOL:
        raise DegeneratePlaneError(f"Plane is degenerate (area^2 = {denominator:.3e})")
    R = curvature_tensor(point)
    return float(np.einsum('ijkl,i,j,k,l->', R, u, v, v, u) / denominator)


def coordinate_sectional_matrix(point: SubmanifoldPoint) -> np.ndarray:
    """
    K_ij = R(e_i, e_j; e_j, e_i) for all coordinate planes.

    Args:
        point (SubmanifoldPoint): A valid point

    Returns:
        np.ndarray: Symmetric n x n matrix with zero diagonal
    """
    K = np.array(np.einsum('ijji->ij', curvature_tensor(point)))
    np.fill_diagonal(K, 0.0)
    return K


def scalar_tau(point: SubmanifoldPoint) -> float:
    """
    Scalar curvature tau = sum_{i<j} K_ij over the stored frame.

    Args:
        point (SubmanifoldPoint): A valid point

    Returns:
        float: tau
    """
    K = coordinate_sectional_matrix(point)
    return float(np.sum(np.triu(K, 1)))


def normalized_rho(point: SubmanifoldPoint) -> float:
    """Normalized scalar curvature rho = 2 tau / (n(n-1))."""
    n = point.n
    return 2.0 * scalar_tau(point) / (n * (n - 1))


def unit_tangent(point: SubmanifoldPoint, X) -> np.ndarray:
    """
    Convert X to tangent coordinates and check it is a unit vector.

    Raises:
        InvalidTangentError: If X is not tangent or not of unit length
    """
    x = to_tangent_coordinates(point, X)
    if abs(np.linalg.norm(x) - 1.0) > UNIT_TOL:
        raise InvalidTangentError(f"Expected a unit vector, got length {np.linalg.norm(x):.12f}")
    return x


def ricci(point: SubmanifoldPoint, X) -> float:
    """
    Ricci curvature Ric(X) = sum_{j>=2} R(X, e_j; e_j, X) over a frame completing X.

    Args:
        point (SubmanifoldPoint): A valid point
        X: Unit tangent vector (tangent coordinates or ambient)

    Returns:
        float: Ric(X)

    Raises:
        InvalidTangentError: If X is not a unit tangent vector
    """
    x = unit_tangent(point, X)
    frame = complete_frame(x)
    R = curvature_tensor(point)
    return float(sum(
        np.einsum('ijkl,i,j,k,l->', R, x, e, e, x) for e in frame[1:]
    ))


def S_dprime_matrix(point: SubmanifoldPoint) -> np.ndarray:
    """
    Ricci tensor of the connection, S''_ij = (tau'/n)[d_ij - {(n-2) M_ij + m_M d_ij}].

    Args:
        point (SubmanifoldPoint): A valid point

    Returns:
        np.ndarray: n x n symmetric matrix
    """
    n = point.n
    delta = np.eye(n)
    return (tau_prime(point) / n) * (delta - ((n - 2) * point.Mmat + point.m_M * delta))


def S_dprime(point: SubmanifoldPoint, i: int, j: int) -> float:
    """Component S''_ij (0-based indices)."""
    _check_indices(point, (i, j))
    return float(S_dprime_matrix(point)[i, j])


def tau_dprime(point: SubmanifoldPoint) -> float:
    """
    tau'' = (tau'/n)[n - 2 m_M (n-1)].

    Args:
        point (SubmanifoldPoint): A valid point

    Returns:
        float: tau''
    """
    n = point.n
    return float((tau_prime(point) / n) * (n - 2.0 * point.m_M * (n - 1)))


def tau_dprime_trace_residual(point: SubmanifoldPoint) -> float:
    """Relative residual between trace(S'') and the closed form of tau''."""
    closed = tau_dprime(point)
    traced = float(np.trace(S_dprime_matrix(point)))
    return abs(traced - closed) / max(1.0, abs(closed))


def einstein_ricci_check(point: SubmanifoldPoint) -> Dict[str, Any]:
    """
    Compare the ambient Ricci contraction with the Einstein form (tau'/n) delta.

    sum_i R*(e_i, e_j; e_k, e_i) = (tau'/n) delta_jk is the reduction under
    which S'' is the contraction of R''. It holds on invariant and
    anti-invariant tangent spaces.

    Args:
        point (SubmanifoldPoint): A valid point

    Returns:
        Dict[str, Any]: 'residual' (max-norm) and 'einstein' flag
    """
    R_star = _ambient_tensor(point)
    contraction = np.einsum('ijki->jk', R_star)
    target = (tau_prime(point) / point.n) * np.eye(point.n)
    residual = float(np.max(np.abs(contraction - target)))
    return {'residual': residual, 'einstein': residual <= 1e-9 * max(1.0, abs(tau_prime(point)))}


def curvature_summary(point: SubmanifoldPoint) -> CurvatureSummary:
    """
    Collect tau, rho, tau', tau'' and the coordinate sectional curvatures.

    Args:
        point (SubmanifoldPoint): A valid point

    Returns:
        CurvatureSummary: Scalar curvature data
    """
    K = coordinate_sectional_matrix(point)
    tau = float(np.sum(np.triu(K, 1)))
    n = point.n
    summary = CurvatureSummary(
        tau=tau,
        rho=2.0 * tau / (n * (n - 1)),
        tau_prime=tau_prime(point),
        tau_dprime=tau_dprime(point),
        K=K,
    )
    logger.debug(f"Curvature summary: tau={summary.tau}, rho={summary.rho}, "
                 f"tau'={summary.tau_prime}, tau''={summary.tau_dprime}")
    return summary
