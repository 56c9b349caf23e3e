"""
Point Model Module

This module holds the complete pointwise state of a submanifold N' of a
quaternionic space form: the ambient model (structure + constant c), the
orthonormal tangent and normal frames, the second fundamental form h and the
connection deformation tensor M restricted to the tangent space.

The trace of M is called m_M throughout (the quaternionic dimension already
owns the letter m). The operator Q of the connection curvature is the metric
raise of M; in an orthonormal frame its matrix is M itself.

Usage:
    from core.point_model import AmbientModel, SubmanifoldPoint, tangency_decomposition

    ambient = AmbientModel(structure=build_standard(2), c=1.0)
    point = SubmanifoldPoint.from_tangent_frame(ambient, frame, h=h, Mmat=M)
    data = tangency_decomposition(point)
"""

import logging
import weakref
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from .errors import (
    DegenerateFrameError,
    DegeneratePlaneError,
    InvalidTangentError,
    PointValidationError,
    ShapeError,
)
from .quat_structure import QuaternionicStructure, build_standard, verify_structure

# Configure logging
logger = logging.getLogger(__name__)

FRAME_TOL = 1e-10
PIVOT_TOL = 1e-10

_VALIDATED: 'weakref.WeakKeyDictionary' = weakref.WeakKeyDictionary()


@dataclass(frozen=True, eq=False)
class AmbientModel:
    """
    Quaternionic space form model at a point.

    Attributes:
        structure (QuaternionicStructure): psi_1, psi_2, psi_3 on R^{4m}
        c (float): Quaternionic curvature parameter; quaternionic planes have
            sectional curvature 4c
    """

    structure: QuaternionicStructure
    c: float

    @property
    def dim(self) -> int:
        return self.structure.dim


@dataclass(frozen=True, eq=False)
class SubmanifoldPoint:
    """
    Pointwise datum of an n-dimensional submanifold.

    Frames are stored as rows. h is indexed [alpha, i, j] with alpha running
    over the normal frame and i, j over the tangent frame.

    Attributes:
        ambient (AmbientModel): Ambient space form
        n (int): Submanifold dimension
        tangent_frame (np.ndarray): n x 4m matrix, rows e_1..e_n
        normal_frame (np.ndarray): (4m - n) x 4m matrix, rows e_{n+1}..e_{4m}
        h (np.ndarray): (4m - n) x n x n second fundamental form components
        Mmat (np.ndarray): n x n connection tensor M on the tangent space
    """

    ambient: AmbientModel
    n: int
    tangent_frame: np.ndarray
    normal_frame: np.ndarray
    h: np.ndarray
    Mmat: np.ndarray

    def __post_init__(self):
        dim = self.ambient.dim
        n = int(self.n)
        arrays = {
            'tangent_frame': (n, dim),
            'normal_frame': (dim - n, dim),
            'h': (dim - n, n, n),
            'Mmat': (n, n),
        }
        for name, shape in arrays.items():
            value = np.array(getattr(self, name), dtype=float)
            if value.shape != shape:
                raise ShapeError(f"{name} has shape {value.shape}, expected {shape}")
            value.setflags(write=False)
            object.__setattr__(self, name, value)
        object.__setattr__(self, 'n', n)

    @classmethod
    def from_tangent_frame(cls, ambient: AmbientModel, tangent_frame: np.ndarray,
                           h: np.ndarray = None, Mmat: np.ndarray = None,
                           normal_frame: np.ndarray = None) -> 'SubmanifoldPoint':
        """
        Build a point from its tangent frame, completing the normal frame.

        Args:
            ambient (AmbientModel): Ambient space form
            tangent_frame (np.ndarray): n x 4m orthonormal rows
            h (np.ndarray): Second fundamental form (default: zero)
            Mmat (np.ndarray): Connection tensor (default: zero)
            normal_frame (np.ndarray): Explicit normal frame (default: canonical completion)

        Returns:
            SubmanifoldPoint: The assembled point (not yet validated)
        """
        tangent_frame = np.asarray(tangent_frame, dtype=float)
        n, dim = tangent_frame.shape
        if normal_frame is None:
            normal_frame = complete_normal_frame(tangent_frame)
        if h is None:
            h = np.zeros((dim - n, n, n))
        if Mmat is None:
            Mmat = np.zeros((n, n))
        return cls(ambient=ambient, n=n, tangent_frame=tangent_frame,
                   normal_frame=normal_frame, h=h, Mmat=Mmat)

    @property
    def dim(self) -> int:
        return self.ambient.dim

    @property
    def codim(self) -> int:
        return self.ambient.dim - self.n

    @property
    def c(self) -> float:
        return float(self.ambient.c)

    @property
    def m_M(self) -> float:
        """Trace of M."""
        return float(np.trace(self.Mmat))

    @property
    def Q_operator(self) -> np.ndarray:
        """Metric raise of M, g(QX, W) = M(X, W); equals Mmat in an orthonormal frame."""
        return np.array(self.Mmat)

    def replace(self, **changes) -> 'SubmanifoldPoint':
        """Return a copy with some fields replaced."""
        fields = {
            'ambient': self.ambient,
            'n': self.n,
            'tangent_frame': self.tangent_frame,
            'normal_frame': self.normal_frame,
            'h': self.h,
            'Mmat': self.Mmat,
        }
        fields.update(changes)
        return SubmanifoldPoint(**fields)


@dataclass(frozen=True, eq=False)
class TangencyData:
    """
    Tangential and normal parts of psi_k restricted to the tangent space.

    Attributes:
        P (np.ndarray): 3 x n x n, P[k][j, i] = <psi_k e_i, e_j>
        F (np.ndarray): 3 x (4m - n) x n, F[k][alpha, i] = <psi_k e_i, e_alpha>
        normP2 (np.ndarray): Three values ||P_k||^2
    """

    P: np.ndarray
    F: np.ndarray
    normP2: np.ndarray

    @property
    def total(self) -> float:
        """Sum over k of ||P_k||^2."""
        return float(np.sum(self.normP2))


def _gram_schmidt(vectors: np.ndarray, basis: List[np.ndarray]) -> np.ndarray:
    """Project out the span of basis twice (classical GS with reorthogonalization)."""
    w = np.array(vectors, dtype=float)
    for _ in range(2):
        for b in basis:
            w = w - np.dot(b, w) * b
    return w


def orthonormalize(vectors: Sequence[np.ndarray]) -> np.ndarray:
    """
    Gram-Schmidt orthonormalization.

    Args:
        vectors (Sequence[np.ndarray]): Linearly independent vectors of equal length

    Returns:
        np.ndarray: Orthonormal rows spanning the same subspace, in input order

    Raises:
        DegenerateFrameError: If a vector lies in the span of the previous ones
    """
    vectors = np.atleast_2d(np.asarray(vectors, dtype=float))
    basis: List[np.ndarray] = []
    for index, v in enumerate(vectors):
        w = _gram_schmidt(v, basis)
        norm = np.linalg.norm(w)
        if norm <= PIVOT_TOL * max(1.0, np.linalg.norm(v)):
            raise DegenerateFrameError(
                f"Vector {index} is linearly dependent on the previous ones (pivot {norm:.3e})"
            )
        basis.append(w / norm)
    return np.array(basis)


def _adjoin_axes(basis: List[np.ndarray], dim: int, count: int) -> List[np.ndarray]:
    """
    Greedily adjoin canonical axes of R^dim, in order, orthonormalized against
    basis; returns the accepted directions (at most count).
    """
    basis = list(basis)
    added: List[np.ndarray] = []
    # greedy acceptance always completes when threshold^2 <= 1 / (2 dim)
    threshold = 0.5 / np.sqrt(dim)
    for index in range(dim):
        if len(added) == count:
            break
        w = _gram_schmidt(np.eye(dim)[index], basis)
        norm = np.linalg.norm(w)
        if norm >= threshold:
            w = w / norm
            basis.append(w)
            added.append(w)
    return added


def complete_normal_frame(tangent_frame: np.ndarray) -> np.ndarray:
    """
    Complete an orthonormal tangent frame to a basis of R^{4m}.

    Canonical basis vectors are tried in order and kept when their component
    orthogonal to everything accepted so far is large enough, so the result
    is deterministic and canonical axes outside the tangent space come back
    unchanged.

    Args:
        tangent_frame (np.ndarray): n x 4m orthonormal rows

    Returns:
        np.ndarray: (4m - n) x 4m orthonormal rows orthogonal to the tangent frame
    """
    tangent_frame = np.atleast_2d(np.asarray(tangent_frame, dtype=float))
    n, dim = tangent_frame.shape
    normal = _adjoin_axes([row for row in tangent_frame], dim, dim - n)
    if len(normal) != dim - n:
        raise DegenerateFrameError(
            f"Could only complete {len(normal)} of {dim - n} normal directions"
        )
    return np.array(normal).reshape(dim - n, dim)


def complete_frame(x: np.ndarray) -> np.ndarray:
    """
    Extend a vector of R^n to an orthonormal basis with x/|x| as first row.

    Uses the same canonical-axis completion as complete_normal_frame.

    Args:
        x (np.ndarray): Non-zero vector of R^n

    Returns:
        np.ndarray: n x n orthogonal matrix whose first row is x/|x|
    """
    x = np.asarray(x, dtype=float)
    first = x / np.linalg.norm(x)
    return np.array([first] + _adjoin_axes([first], x.shape[0], x.shape[0] - 1))


def orthonormal_plane(point: SubmanifoldPoint, plane) -> Tuple[np.ndarray, np.ndarray]:
    """
    Gram-Schmidt a spanning pair of tangent vectors.

    Args:
        point (SubmanifoldPoint): The point
        plane: Pair of vectors (tangent or ambient coordinates)

    Returns:
        Tuple[np.ndarray, np.ndarray]: Orthonormal pair in tangent coordinates

    Raises:
        DegeneratePlaneError: If the vectors do not span a plane
    """
    u, v = (to_tangent_coordinates(point, w) for w in plane)
    nu = np.linalg.norm(u)
    if nu < 1e-12:
        raise DegeneratePlaneError("First plane vector is zero")
    u = u / nu
    v = v - np.dot(u, v) * u
    nv = np.linalg.norm(v)
    if nv < 1e-12:
        raise DegeneratePlaneError("Plane vectors are parallel")
    return u, v / nv


def tangency_decomposition(point: SubmanifoldPoint) -> TangencyData:
    """
    Split psi_k e_i into tangential part P_k and normal part F_k.

    Args:
        point (SubmanifoldPoint): A valid point

    Returns:
        TangencyData: P, F and ||P_k||^2 for k = 1, 2, 3

    Raises:
        PointValidationError: If the point does not validate
    """
    require_valid(point)
    T = point.tangent_frame
    N = point.normal_frame
    P = np.array([T @ Jk @ T.T for Jk in point.ambient.structure.J])
    F = np.array([N @ Jk @ T.T for Jk in point.ambient.structure.J])
    normP2 = np.einsum('kij,kij->k', P, P)
    return TangencyData(P=P, F=F, normP2=normP2)


def validate_point(point: SubmanifoldPoint) -> Dict[str, Any]:
    """
    Diagnose a point: frame orthonormality, symmetry of h and M, dimensions.

    Args:
        point (SubmanifoldPoint): Point to check

    Returns:
        Dict[str, Any]: Residuals and flags; 'passed' is True iff all
            residuals are within FRAME_TOL and dimensions are consistent
    """
    dim = point.dim
    basis = np.vstack([point.tangent_frame, point.normal_frame])
    gram = basis @ basis.T - np.eye(dim)
    tangent_gram = point.tangent_frame @ point.tangent_frame.T - np.eye(point.n)

    h = point.h
    h_residual = float(np.max(np.abs(h - h.transpose(0, 2, 1)))) if h.size else 0.0
    M = point.Mmat
    M_residual = float(np.max(np.abs(M - M.T))) if M.size else 0.0

    finite = bool(
        np.all(np.isfinite(basis)) and np.all(np.isfinite(h))
        and np.all(np.isfinite(M)) and np.isfinite(point.c)
    )
    dimension_ok = 2 <= point.n < dim
    structure_ok = verify_structure(point.ambient.structure)['passed']

    report = {
        'n': point.n,
        'dim': dim,
        'gram_residual': float(np.max(np.abs(gram))),
        'tangent_gram_residual': float(np.max(np.abs(tangent_gram))),
        'h_symmetry_residual': h_residual,
        'M_symmetry_residual': M_residual,
        'dimension_ok': dimension_ok,
        'structure_ok': structure_ok,
        'finite': finite,
    }
    report['passed'] = bool(
        finite and dimension_ok and structure_ok
        and report['gram_residual'] <= FRAME_TOL
        and h_residual <= FRAME_TOL
        and M_residual <= FRAME_TOL
    )
    return report


def require_valid(point: SubmanifoldPoint) -> None:
    """
    Raise if the point does not validate. Successful checks are remembered
    per point object (points are immutable).

    Raises:
        PointValidationError: With the diagnostic report attached
    """
    if point in _VALIDATED:
        return
    report = validate_point(point)
    if not report['passed']:
        raise PointValidationError(f"Invalid submanifold point: {report}", report)
    _VALIDATED[point] = True


def to_tangent_coordinates(point: SubmanifoldPoint, X: np.ndarray) -> np.ndarray:
    """
    Express a tangent vector in the stored tangent frame.

    Args:
        point (SubmanifoldPoint): The point
        X (np.ndarray): Tangent coordinates (length n) or an ambient vector (length 4m)

    Returns:
        np.ndarray: Coordinates in R^n

    Raises:
        InvalidTangentError: If an ambient vector is not tangent
        ShapeError: If the length is neither n nor 4m
    """
    X = np.asarray(X, dtype=float)
    if X.shape == (point.n,):
        return X.copy()
    if X.shape == (point.dim,):
        coords = point.tangent_frame @ X
        residual = np.linalg.norm(X - point.tangent_frame.T @ coords)
        if residual > FRAME_TOL * max(1.0, np.linalg.norm(X)):
            raise InvalidTangentError(f"Vector is not tangent (normal component {residual:.3e})")
        return coords
    raise ShapeError(f"Vector has shape {X.shape}, expected ({point.n},) or ({point.dim},)")


def rotate_tangent_frame(point: SubmanifoldPoint, O: np.ndarray) -> SubmanifoldPoint:
    """
    Re-frame the tangent space by an orthogonal n x n matrix.

    The new frame is e'_a = sum_i O[a, i] e_i; h and M transform covariantly.

    Args:
        point (SubmanifoldPoint): Point to re-frame
        O (np.ndarray): Orthogonal n x n matrix

    Returns:
        SubmanifoldPoint: The same geometric point in the rotated frame

    Raises:
        ShapeError: If O is not an orthogonal n x n matrix
    """
    O = np.asarray(O, dtype=float)
    if O.shape != (point.n, point.n) or np.max(np.abs(O @ O.T - np.eye(point.n))) > FRAME_TOL:
        raise ShapeError("Re-framing matrix must be orthogonal n x n")
    h = np.einsum('ai,kij,bj->kab', O, point.h, O)
    return point.replace(
        tangent_frame=O @ point.tangent_frame,
        h=h,
        Mmat=O @ point.Mmat @ O.T,
    )


def point_to_dict(point: SubmanifoldPoint) -> Dict[str, Any]:
    """
    Serialize a point to plain lists (standard structure assumed to be rebuilt on load).

    Args:
        point (SubmanifoldPoint): Point to serialize

    Returns:
        Dict[str, Any]: JSON-ready dictionary
    """
    return {
        'm': point.ambient.structure.m,
        'c': point.c,
        'n': point.n,
        'tangent_frame': point.tangent_frame.tolist(),
        'normal_frame': point.normal_frame.tolist(),
        'h': point.h.tolist(),
        'M': point.Mmat.tolist(),
    }


def point_from_dict(data: Dict[str, Any]) -> SubmanifoldPoint:
    """
    Rebuild a point serialized by point_to_dict.

    Args:
        data (Dict[str, Any]): Serialized point

    Returns:
        SubmanifoldPoint: The point on the standard structure
    """
    ambient = AmbientModel(structure=build_standard(int(data['m'])), c=float(data['c']))
    return SubmanifoldPoint(
        ambient=ambient,
        n=int(data['n']),
        tangent_frame=np.asarray(data['tangent_frame'], dtype=float),
        normal_frame=np.asarray(data['normal_frame'], dtype=float),
        h=np.asarray(data['h'], dtype=float),
        Mmat=np.asarray(data['M'], dtype=float),
    )
