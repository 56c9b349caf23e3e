"""
Quaternionic Structure Module

This module builds and checks the local almost-quaternionic structure
(psi_1, psi_2, psi_3) on Euclidean R^{4m}. The standard structure is left
multiplication by the quaternion units i, j, k acting on every block of four
coordinates.

Usage:
    from core.quat_structure import build_standard, verify_structure, apply

    Q = build_standard(2)
    report = verify_structure(Q)
    w = apply(Q, 1, v)
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Tuple

import numpy as np

from .errors import IndexRangeError, InvalidDimensionError, ShapeError

# Configure logging
logger = logging.getLogger(__name__)

STRUCTURE_TOL = 1e-12

# Left multiplication by i, j, k on a quaternion (a, b, c, d) = a + bi + cj + dk
_UNIT_BLOCKS = (
    np.array([[0, -1, 0, 0],
              [1, 0, 0, 0],
              [0, 0, 0, -1],
              [0, 0, 1, 0]], dtype=float),
    np.array([[0, 0, -1, 0],
              [0, 0, 0, 1],
              [1, 0, 0, 0],
              [0, -1, 0, 0]], dtype=float),
    np.array([[0, 0, 0, -1],
              [0, 0, -1, 0],
              [0, 1, 0, 0],
              [1, 0, 0, 0]], dtype=float),
)


@dataclass(frozen=True)
class QuaternionicStructure:
    """
    Three anticommuting orthogonal complex structures on R^{4m}.

    Attributes:
        dim (int): Real dimension 4m of the ambient space
        J (Tuple[np.ndarray, np.ndarray, np.ndarray]): Dense dim x dim matrices
            of psi_1, psi_2, psi_3
    """

    dim: int
    J: Tuple[np.ndarray, np.ndarray, np.ndarray]

    @property
    def m(self) -> int:
        """Quaternionic dimension."""
        return self.dim // 4

    def __post_init__(self):
        if len(self.J) != 3:
            raise ShapeError(f"Expected three structure maps, got {len(self.J)}")
        maps = []
        for k, Jk in enumerate(self.J, 1):
            Jk = np.array(Jk, dtype=float)
            if Jk.shape != (self.dim, self.dim):
                raise ShapeError(
                    f"psi_{k} has shape {Jk.shape}, expected ({self.dim}, {self.dim})"
                )
            Jk.setflags(write=False)
            maps.append(Jk)
        object.__setattr__(self, 'J', tuple(maps))


def build_standard(m: int) -> QuaternionicStructure:
    """
    Build the left-quaternion-multiplication structure on R^{4m}.

    Args:
        m (int): Quaternionic dimension (m >= 1)

    Returns:
        QuaternionicStructure: Block-diagonal structure with entries in {-1, 0, 1}

    Raises:
        InvalidDimensionError: If m < 1
    """
    if int(m) != m or m < 1:
        raise InvalidDimensionError(f"Quaternionic dimension must be a positive integer, got {m}")
    m = int(m)
    eye = np.eye(m)
    J = tuple(np.kron(eye, block) for block in _UNIT_BLOCKS)
    logger.debug(f"Built standard quaternionic structure on R^{4 * m}")
    return QuaternionicStructure(dim=4 * m, J=J)


def conjugate_structure(Q: QuaternionicStructure, O: np.ndarray) -> QuaternionicStructure:
    """
    Conjugate a structure by an orthogonal map: J_k -> O J_k O^T.

    Args:
        Q (QuaternionicStructure): Structure to transform
        O (np.ndarray): Orthogonal dim x dim matrix

    Returns:
        QuaternionicStructure: The conjugated structure (still quaternionic)

    Raises:
        ShapeError: If O has the wrong shape or is not orthogonal
    """
    O = np.asarray(O, dtype=float)
    if O.shape != (Q.dim, Q.dim):
        raise ShapeError(f"Conjugating matrix has shape {O.shape}, expected ({Q.dim}, {Q.dim})")
    if np.max(np.abs(O.T @ O - np.eye(Q.dim))) > 1e-10:
        raise ShapeError("Conjugating matrix is not orthogonal")
    return QuaternionicStructure(dim=Q.dim, J=tuple(O @ Jk @ O.T for Jk in Q.J))


def verify_structure(Q: QuaternionicStructure) -> Dict[str, Any]:
    """
    Measure how far Q is from satisfying the quaternionic relations.

    Checks J_k^2 = -I, the cyclic products J1J2 = J3, J2J3 = J1, J3J1 = J2,
    the anticommutators J_iJ_j + J_jJ_i = 0, orthogonality and skewness.
    All residuals are max-norm.

    Args:
        Q (QuaternionicStructure): Structure to verify

    Returns:
        Dict[str, Any]: Residuals per identity family plus 'passed'
    """
    dim = Q.dim
    eye = np.eye(dim)
    J1, J2, J3 = Q.J

    def max_norm(A: np.ndarray) -> float:
        return float(np.max(np.abs(A))) if A.size else 0.0

    square = max(max_norm(Jk @ Jk + eye) for Jk in Q.J)
    cyclic = max(
        max_norm(J1 @ J2 - J3),
        max_norm(J2 @ J3 - J1),
        max_norm(J3 @ J1 - J2),
    )
    anticommutator = max(
        max_norm(J1 @ J2 + J2 @ J1),
        max_norm(J2 @ J3 + J3 @ J2),
        max_norm(J3 @ J1 + J1 @ J3),
    )
    orthogonality = max(max_norm(Jk.T @ Jk - eye) for Jk in Q.J)
    skewness = max(max_norm(Jk.T + Jk) for Jk in Q.J)

    residuals = {
        'square': square,
        'cyclic': cyclic,
        'anticommutator': anticommutator,
        'orthogonality': orthogonality,
        'skewness': skewness,
    }
    passed = all(value <= STRUCTURE_TOL for value in residuals.values())
    if not passed:
        logger.warning(f"Quaternionic structure failed verification: {residuals}")

    return {'dim': dim, 'residuals': residuals, 'passed': passed}


def apply(Q: QuaternionicStructure, k: int, v: np.ndarray) -> np.ndarray:
    """
    Apply psi_k to a vector of R^{4m}.

    Args:
        Q (QuaternionicStructure): The structure
        k (int): Structure index in {1, 2, 3}
        v (np.ndarray): Vector of length 4m

    Returns:
        np.ndarray: psi_k v

    Raises:
        IndexRangeError: If k is not 1, 2 or 3
        ShapeError: If v has the wrong length or is not finite
    """
    if k not in (1, 2, 3):
        raise IndexRangeError(f"Structure index must be 1, 2 or 3, got {k}")
    v = np.asarray(v, dtype=float)
    if v.shape != (Q.dim,):
        raise ShapeError(f"Vector has shape {v.shape}, expected ({Q.dim},)")
    if not np.all(np.isfinite(v)):
        raise ShapeError("Vector has non-finite entries")
    return Q.J[k - 1] @ v
