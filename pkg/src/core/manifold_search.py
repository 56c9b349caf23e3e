"""
Manifold Search Module

Multi-start local optimization on the unit sphere S^{n-1} (hyperplanes by
their unit normal) and on the Stiefel set of orthonormal pairs (2-planes),
plus dense-grid oracles used to cross-check the optimizers.

All starts are advanced together as one batch: projected (Riemannian)
gradient steps, Armijo backtracking per start, normalization or polar (SVD)
retraction. Results are deterministic given the starts.

Usage:
    from core.manifold_search import sphere_minimize, stiefel_minimize

    value, u = sphere_minimize(f, grad, starts)
    value, X = stiefel_minimize(f, grad, starts)
"""

import logging
import math
from typing import Callable, Tuple

import numpy as np

# Configure logging
logger = logging.getLogger(__name__)

VALUE_TOL = 1e-12
GRAD_TOL = 1e-9
ARMIJO_C = 1e-4
MAX_ITER = 3000
MAX_BACKTRACK = 60

BatchFunction = Callable[[np.ndarray], np.ndarray]


def _normalize_rows(U: np.ndarray) -> np.ndarray:
    return U / np.linalg.norm(U, axis=1, keepdims=True)


def _polar(X: np.ndarray) -> np.ndarray:
    """Closest matrix with orthonormal columns, batched over the first axis."""
    U, _, Vt = np.linalg.svd(X, full_matrices=False)
    return U @ Vt


def _canonical_sign(u: np.ndarray) -> np.ndarray:
    """Flip u so its largest-magnitude entry (first one on ties) is positive."""
    index = int(np.argmax(np.abs(u)))
    return -u if u[index] < 0 else u


def _select_best(values: np.ndarray, points: np.ndarray) -> int:
    """Index of the smallest value; ties broken by lexicographic point."""
    order = sorted(range(len(values)), key=lambda s: (values[s], tuple(np.ravel(points[s]))))
    return order[0]


def _descend(f: BatchFunction, grad: BatchFunction, X0: np.ndarray,
             project: Callable[[np.ndarray, np.ndarray], np.ndarray],
             retract: Callable[[np.ndarray], np.ndarray]) -> Tuple[np.ndarray, np.ndarray]:
    """
    Batched Riemannian gradient descent with Armijo backtracking.

    Args:
        f (BatchFunction): Maps a batch of points to values
        grad (BatchFunction): Maps a batch of points to Euclidean gradients
        X0 (np.ndarray): Batch of starting points on the manifold
        project (Callable): Projects Euclidean gradients onto tangent spaces
        retract (Callable): Maps ambient points back onto the manifold

    Returns:
        Tuple[np.ndarray, np.ndarray]: Final values and points
    """
    X = retract(np.array(X0, dtype=float))
    F = f(X)
    batch = X.shape[0]
    axes = tuple(range(1, X.ndim))
    step = np.ones(batch)
    active = np.ones(batch, dtype=bool)
    scale = max(1.0, float(np.max(np.abs(F))))

    for iteration in range(MAX_ITER):
        if not active.any():
            break
        idx = np.flatnonzero(active)
        G = project(X[idx], grad(X[idx]))
        gn2 = np.sum(G * G, axis=axes)

        small = np.sqrt(gn2) <= GRAD_TOL * scale
        active[idx[small]] = False
        keep = ~small
        idx, G, gn2 = idx[keep], G[keep], gn2[keep]
        if idx.size == 0:
            break

        t = step[idx].copy()
        accepted = np.zeros(idx.size, dtype=bool)
        X_new = X[idx].copy()
        F_new = F[idx].copy()
        for _ in range(MAX_BACKTRACK):
            pending = ~accepted
            if not pending.any():
                break
            shape = (-1,) + (1,) * (X.ndim - 1)
            trial = retract(X[idx[pending]] - t[pending].reshape(shape) * G[pending])
            f_trial = f(trial)
            ok = f_trial <= F[idx[pending]] - ARMIJO_C * t[pending] * gn2[pending]
            pending_idx = np.flatnonzero(pending)
            X_new[pending_idx[ok]] = trial[ok]
            F_new[pending_idx[ok]] = f_trial[ok]
            accepted[pending_idx[ok]] = True
            t[pending_idx[~ok]] *= 0.5

        decrease = F[idx] - F_new
        X[idx] = X_new
        F[idx] = F_new
        step[idx] = np.minimum(2.0 * t, 1e3)

        converged = (~accepted) | ((decrease <= VALUE_TOL * scale) & (np.sqrt(gn2) <= 1e-6 * scale))
        active[idx[converged]] = False

    if active.any():
        logger.debug(f"{int(active.sum())} of {batch} starts hit the iteration limit")
    return F, X


def sphere_minimize(f: BatchFunction, grad: BatchFunction,
                    starts: np.ndarray) -> Tuple[float, np.ndarray]:
    """
    Minimize a function on the unit sphere from several starts.

    Args:
        f (BatchFunction): Values for a (S, n) batch of unit vectors
        grad (BatchFunction): Euclidean gradients for a (S, n) batch
        starts (np.ndarray): (S, n) starting vectors (normalized internally)

    Returns:
        Tuple[float, np.ndarray]: Best value and its unit vector (sign-canonical)
    """
    def project(U, G):
        return G - np.sum(U * G, axis=1, keepdims=True) * U

    F, U = _descend(f, grad, starts, project, _normalize_rows)
    best = _select_best(F, U)
    logger.debug(f"Sphere search over {len(starts)} starts: best value {F[best]:.15g}")
    return float(F[best]), _canonical_sign(U[best])


def stiefel_minimize(f: BatchFunction, grad: BatchFunction,
                     starts: np.ndarray) -> Tuple[float, np.ndarray]:
    """
    Minimize a function of orthonormal n x p frames from several starts.

    Args:
        f (BatchFunction): Values for an (S, n, p) batch of frames
        grad (BatchFunction): Euclidean gradients for an (S, n, p) batch
        starts (np.ndarray): (S, n, p) starting frames (polar-retracted internally)

    Returns:
        Tuple[float, np.ndarray]: Best value and its n x p frame
    """
    def project(X, G):
        XtG = np.transpose(X, (0, 2, 1)) @ G
        return G - X @ (0.5 * (XtG + np.transpose(XtG, (0, 2, 1))))

    F, X = _descend(f, grad, starts, project, _polar)
    best = _select_best(F, X)
    logger.debug(f"Stiefel search over {len(starts)} starts: best value {F[best]:.15g}")
    return float(F[best]), X[best]


def random_sphere_starts(n: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Seeded Gaussian starts on S^{n-1}."""
    return _normalize_rows(rng.standard_normal((count, n)))


def random_stiefel_starts(n: int, p: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Seeded Gaussian starts polar-retracted onto orthonormal n x p frames."""
    return _polar(rng.standard_normal((count, n, p)))


def sphere_grid(n: int, count: int) -> np.ndarray:
    """
    Deterministic grid of roughly `count` points on S^{n-1}.

    S^1 uses equally spaced angles, S^2 a Fibonacci lattice, higher spheres a
    tensor grid in hyperspherical coordinates.

    Args:
        n (int): Ambient dimension of the sphere
        count (int): Target number of points

    Returns:
        np.ndarray: (N, n) unit vectors
    """
    if n == 1:
        return np.array([[1.0]])
    if n == 2:
        theta = np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)
        return np.stack([np.cos(theta), np.sin(theta)], axis=1)
    if n == 3:
        index = np.arange(count) + 0.5
        z = 1.0 - 2.0 * index / count
        radius = np.sqrt(1.0 - z * z)
        phi = np.pi * (3.0 - np.sqrt(5.0)) * index
        return np.stack([radius * np.cos(phi), radius * np.sin(phi), z], axis=1)

    per_angle = max(2, int(math.ceil(count ** (1.0 / (n - 1)))))
    polar_angles = [np.linspace(0.0, np.pi, per_angle)] * (n - 2)
    azimuth = np.linspace(0.0, 2.0 * np.pi, per_angle, endpoint=False)
    mesh = np.meshgrid(*polar_angles, azimuth, indexing='ij')
    angles = np.stack([grid.ravel() for grid in mesh], axis=1)

    points = np.ones((angles.shape[0], n))
    for axis in range(n - 1):
        points[:, axis] *= np.cos(angles[:, axis])
        points[:, axis + 1:] *= np.sin(angles[:, axis])[:, None]
    return _normalize_rows(points)


def plane_grid(n: int, count: int) -> np.ndarray:
    """
    Deterministic grid of roughly `count` orthonormal pairs in R^n.

    The first vector runs over a sphere grid; the second over a sphere grid
    of its orthogonal complement.

    Args:
        n (int): Dimension (n >= 2)
        count (int): Target number of planes

    Returns:
        np.ndarray: (N, n, 2) orthonormal frames
    """
    if n == 2:
        return np.eye(2)[None, :, :]
    first_count = max(4, int(round(count ** 0.6)))
    second_count = max(2, count // first_count)
    first = sphere_grid(n, first_count)
    second = sphere_grid(n - 1, second_count)
    frames = []
    for u in first:
        # rows 1.. of a Householder reflector mapping e_1 to u span u^perp
        w = np.eye(n)[0] - u
        if np.linalg.norm(w) < 1e-12:
            H = np.eye(n)
        else:
            w = w / np.linalg.norm(w)
            H = np.eye(n) - 2.0 * np.outer(w, w)
        complement = H[:, 1:]
        V = second @ complement.T
        frames.append(np.stack([np.broadcast_to(u, V.shape), V], axis=2))
    return np.concatenate(frames, axis=0)


def polish_best(values: np.ndarray, points: np.ndarray, keep: int) -> np.ndarray:
    """Return the `keep` points with the smallest values, best first."""
    order = np.argsort(values, kind='stable')[:keep]
    return points[order]
