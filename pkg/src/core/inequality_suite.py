"""
Inequality Suite Module

Checks the Chen-type curvature inequalities (scalar, Ricci, sectional and
Chen invariant bounds) and the delta-Casorati inequalities at a submanifold
point, cross-validates every slack against an independent identity, detects
equality configurations of the second fundamental form and analyses the
Hessian of the quadratic form behind the Casorati bound.

Two shorthands recur:
    structure factor  s = c{(n-1) + 3 sum_k ||P_k||^2 / n}  (= tau'/n)
    M bracket         b = n - 2 m_M (n-1)

Typo repairs applied consistently: "(n^2-m-r)" is read as (n^2-n-r) and
"r(n)" as r n.

Usage:
    from core.inequality_suite import check_A1, check_B1, hessian_spectrum

    report = check_A1(point)
    report = check_B1(point, r=6)
    spectrum = hessian_spectrum(4, 6)
"""

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional

import numpy as np

from .curvature_engine import (
    ricci,
    scalar_tau,
    sectional_K,
    tau_dprime_trace_residual,
    tau_prime,
    tau_prime_direct,
    unit_tangent,
)
from .errors import InvalidDimensionError, PreconditionError
from .invariants import (
    DEFAULT_STARTS,
    a2_slack_decomposition,
    casorati_C,
    casorati_CV,
    casorati_coefficient,
    chen_delta,
    delta_C_generalized,
    delta_C_normalized,
    hyperplane_value,
    mean_curvature,
    norm_h2,
    plane_data,
)
from .point_model import SubmanifoldPoint, complete_frame, orthonormal_plane, require_valid, tangency_decomposition

# Configure logging
logger = logging.getLogger(__name__)

THEOREM_TOL = 1e-8
IDENTITY_TOL = 1e-9
HESSIAN_TOL = 1e-9


class EqualityCase(Enum):
    """Shape-operator patterns that attain equality."""
    TOTALLY_GEODESIC = 'totally_geodesic'
    TOTALLY_UMBILICAL = 'totally_umbilical'
    QUASI_UMBILICAL = 'quasi_umbilical'
    NONE = 'none'


@dataclass(frozen=True)
class EqualityClassification:
    """
    Result of equality-case detection.

    Attributes:
        case (EqualityCase): Detected pattern
        r (Optional[float]): Parameter of a quasi-umbilical pattern
    """

    case: EqualityCase
    r: Optional[float] = None

    @property
    def label(self) -> str:
        if self.case is EqualityCase.QUASI_UMBILICAL:
            return f"quasi_umbilical({self.r:.17g})"
        return self.case.value


@dataclass
class InequalityReport:
    """
    Outcome of one inequality (or identity) check.

    Attributes:
        name (str): Check identifier, e.g. 'A1' or 'IDENT.gauss_trace'
        lhs (float): Left-hand side
        rhs_canonical (float): Right-hand side used for the verdict
        rhs_variant (Optional[float]): Alternative right-hand side where the
            statement and its derivation differ
        slack (float): rhs_canonical - lhs
        holds (bool): slack >= -tol * scale (identities: |slack| <= tol * scale)
        equality (bool): |slack| <= tol * scale
        equality_case (str): Label of the detected equality pattern, or 'none'
        tol (float): Relative tolerance
        asserted (bool): Whether a failure counts as a violation
        cross_check_residual (Optional[float]): Relative mismatch against the
            independent slack identity
        notes (str): Free text
    """

    name: str
    lhs: float
    rhs_canonical: float
    rhs_variant: Optional[float] = None
    slack: float = 0.0
    holds: bool = True
    equality: bool = False
    equality_case: str = EqualityCase.NONE.value
    tol: float = THEOREM_TOL
    asserted: bool = True
    cross_check_residual: Optional[float] = None
    notes: str = ''

    @property
    def violated(self) -> bool:
        return self.asserted and not self.holds


@dataclass
class HessianSpectrum:
    """
    Spectrum of the Hessian of the Casorati quadratic form at its critical point.

    Attributes:
        n (int): Submanifold dimension
        r (float): Casorati parameter
        H1 (np.ndarray): n x n Hessian block
        eigenvalues (List[float]): Ascending eigenvalues
        psd (bool): Minimum eigenvalue >= -tol * scale
        zero_multiplicity (int): Number of (numerically) zero eigenvalues
        closed_form (List[float]): Closed-form eigenvalues, ascending
        matches (List[bool]): Per-eigenvalue agreement with the closed forms
        kernel_residual (float): |H1 (1, ..., 1, n(n-1)/r)|
    """

    n: int
    r: float
    H1: np.ndarray
    eigenvalues: List[float]
    psd: bool
    zero_multiplicity: int
    closed_form: List[float] = field(default_factory=list)
    matches: List[bool] = field(default_factory=list)
    kernel_residual: float = 0.0


def _scale(*values: float) -> float:
    return max([1.0] + [abs(v) for v in values])


def _report(name: str, lhs: float, rhs: float, point: Optional[SubmanifoldPoint] = None,
            r: Optional[float] = None, rhs_variant: Optional[float] = None,
            tol: float = THEOREM_TOL, asserted: bool = True,
            cross_check: Optional[float] = None, notes: str = '') -> InequalityReport:
    """Assemble an inequality report and classify equality when it is attained."""
    slack = rhs - lhs
    scale = _scale(lhs, rhs)
    holds = slack >= -tol * scale
    equality = holds and abs(slack) <= tol * scale
    case = EqualityCase.NONE.value
    if equality and point is not None:
        case = detect_equality_case(point, r).label
    if cross_check is not None and cross_check > IDENTITY_TOL:
        logger.warning(f"{name}: slack disagrees with its identity (relative residual {cross_check:.3e})")
    return InequalityReport(
        name=name, lhs=float(lhs), rhs_canonical=float(rhs), rhs_variant=rhs_variant,
        slack=float(slack), holds=bool(holds), equality=bool(equality), equality_case=case,
        tol=tol, asserted=asserted, cross_check_residual=cross_check, notes=notes,
    )


def _identity_report(name: str, lhs: float, rhs: float, tol: float = IDENTITY_TOL) -> InequalityReport:
    """Report for an identity: holds and equality both mean |rhs - lhs| small."""
    slack = rhs - lhs
    agrees = abs(slack) <= tol * _scale(lhs, rhs)
    return InequalityReport(name=name, lhs=float(lhs), rhs_canonical=float(rhs),
                            slack=float(slack), holds=bool(agrees), equality=bool(agrees),
                            tol=tol, notes='identity')


def _relative(a: float, b: float) -> float:
    return abs(a - b) / _scale(a, b)


def structure_factor(point: SubmanifoldPoint) -> float:
    """c{(n-1) + 3 sum_k ||P_k||^2 / n}."""
    n = point.n
    return float(point.c * ((n - 1) + 3.0 * tangency_decomposition(point).total / n))


def m_bracket(point: SubmanifoldPoint) -> float:
    """n - 2 m_M (n-1)."""
    n = point.n
    return float(n - 2.0 * point.m_M * (n - 1))


def detect_equality_case(point: SubmanifoldPoint, r: Optional[float] = None) -> EqualityClassification:
    """
    Classify the second fundamental form against the equality patterns.

    Order of tests: totally geodesic (h = 0), totally umbilical (every shape
    operator a multiple of the identity), quasi-umbilical: a single normal
    direction carries all of h and its shape operator has eigenvalues
    {u (n-1 times), (n(n-1)/r) u}. Without r, the ratio is inferred.

    Args:
        point (SubmanifoldPoint): A valid point
        r (Optional[float]): Casorati parameter to match

    Returns:
        EqualityClassification: Detected case (and r for quasi-umbilical)
    """
    require_valid(point)
    n = point.n
    h = point.h
    norm = float(np.sqrt(np.sum(h ** 2)))
    if norm <= 1e-10:
        return EqualityClassification(EqualityCase.TOTALLY_GEODESIC)

    tol = 1e-8 * max(1.0, norm)
    eye = np.eye(n)
    umbilic_residual = max(
        float(np.linalg.norm(A - (np.trace(A) / n) * eye)) for A in h
    )
    if umbilic_residual <= tol:
        return EqualityClassification(EqualityCase.TOTALLY_UMBILICAL)

    # all of h along one normal direction <=> rank one as a map normal -> Sym(n)
    _, singular, Vt = np.linalg.svd(h.reshape(h.shape[0], n * n), full_matrices=False)
    if singular.size > 1 and singular[1] > tol:
        return EqualityClassification(EqualityCase.NONE)
    A = singular[0] * Vt[0].reshape(n, n)
    eigenvalues = np.linalg.eigvalsh(0.5 * (A + A.T))

    for lone, rest in ((eigenvalues[-1], eigenvalues[:-1]), (eigenvalues[0], eigenvalues[1:])):
        if np.max(rest) - np.min(rest) > tol:
            continue
        u = float(np.mean(rest))
        if abs(u) <= tol:
            continue
        if r is not None:
            if abs(lone - (n * (n - 1) / r) * u) <= tol:
                return EqualityClassification(EqualityCase.QUASI_UMBILICAL, float(r))
        elif lone / u > 0:
            return EqualityClassification(EqualityCase.QUASI_UMBILICAL, float(n * (n - 1) * u / lone))
    return EqualityClassification(EqualityCase.NONE)


def check_A1(point: SubmanifoldPoint) -> InequalityReport:
    """
    Scalar curvature bound tau <= ((n-1)/2)(n ||H||^2 + s b / (n-1)).

    The slack is cross-checked against (||h||^2 - n ||H||^2) / 2.

    Args:
        point (SubmanifoldPoint): A valid point

    Returns:
        InequalityReport: The A1 report
    """
    n = point.n
    tau = scalar_tau(point)
    normH2 = mean_curvature(point).normH2
    rhs = ((n - 1) / 2.0) * (n * normH2 + structure_factor(point) * m_bracket(point) / (n - 1))
    expected_slack = (norm_h2(point) - n * normH2) / 2.0
    cross = abs((rhs - tau) - expected_slack) / _scale(tau, rhs)
    return _report('A1', tau, rhs, point, cross_check=cross)


def a2_equality_conditions(point: SubmanifoldPoint, X) -> Dict[str, Any]:
    """
    Pointwise equality conditions of the Ricci bound in the frame completing X.

    Args:
        point (SubmanifoldPoint): A valid point
        X: Unit tangent vector

    Returns:
        Dict[str, Any]: residuals of h^alpha_1i = 0 (i != 1) and of
            h^alpha_11 = sum_{j>=2} h^alpha_jj, and 'satisfied'
    """
    x = unit_tangent(point, X)
    frame = complete_frame(x)
    h = np.einsum('ai,kij,bj->kab', frame, point.h, frame)
    off_diagonal = float(np.max(np.abs(h[:, 0, 1:]))) if h.size else 0.0
    balance = float(np.max(np.abs(h[:, 0, 0] - np.trace(h[:, 1:, 1:], axis1=1, axis2=2)))) if h.size else 0.0
    tol = 1e-8 * max(1.0, float(np.sqrt(np.sum(h ** 2))))
    return {
        'off_diagonal_residual': off_diagonal,
        'balance_residual': balance,
        'satisfied': off_diagonal <= tol and balance <= tol,
    }


def check_A2(point: SubmanifoldPoint, X) -> InequalityReport:
    """
    Ricci curvature bound for a unit tangent vector X.

    Ric(X) <= c{(n-1) + 3 sum_k sum_{j>=2} <P_k X, e_j>^2} - s [m_M + (n-2) M(X, X)]
              + n^2 ||H||^2 / 4,
    with e_2..e_n completing X. The slack is cross-checked against
    a2_slack_decomposition.

    Args:
        point (SubmanifoldPoint): A valid point
        X: Unit tangent vector (tangent coordinates or ambient)

    Returns:
        InequalityReport: The A2 report
    """
    n = point.n
    x = unit_tangent(point, X)
    frame = complete_frame(x)
    P = tangency_decomposition(point).P
    structure_sum = float(sum(np.sum((frame[1:] @ (Pk @ x)) ** 2) for Pk in P))
    normH2 = mean_curvature(point).normH2

    lhs = ricci(point, x)
    rhs = (point.c * ((n - 1) + 3.0 * structure_sum)
           - structure_factor(point) * (point.m_M + (n - 2) * float(x @ point.Mmat @ x))
           + n * n * normH2 / 4.0)
    cross = abs((rhs - lhs) - a2_slack_decomposition(point, x)) / _scale(lhs, rhs)
    conditions = a2_equality_conditions(point, x)
    notes = 'equality conditions satisfied' if conditions['satisfied'] else ''
    return _report('A2', lhs, rhs, point, cross_check=cross, notes=notes)


def check_A3(point: SubmanifoldPoint, plane) -> InequalityReport:
    """
    Bound on tau - K(pi) for a tangent plane pi.

    Canonical right-hand side (final form of the derivation):
        n^2(n-2)/(2(n-1)) ||H||^2 + (s/2) b - c{1 + 3 sum_k beta_k} - s (trace_m_perp - m_M)
    Variant (as stated):
        n^2(n-2)/(2(n-1)) ||H||^2 + (s/2)[n + 2 m_M n - 2 trace_m_perp] - c{3 sum_k beta_k + 1}

    Args:
        point (SubmanifoldPoint): A valid point with n >= 3
        plane: Pair of spanning tangent vectors

    Returns:
        InequalityReport: The A3 report (verdict on the canonical form)
    """
    n = point.n
    if n < 3:
        raise InvalidDimensionError(f"Sectional bound needs n >= 3, got {n}")
    u, v = orthonormal_plane(point, plane)
    tau = scalar_tau(point)
    K = sectional_K(point, (u, v))
    data = plane_data(point, (u, v))
    normH2 = mean_curvature(point).normH2
    s = structure_factor(point)
    c = point.c
    chen_term = n * n * (n - 2) / (2.0 * (n - 1)) * normH2
    beta_term = c * (1.0 + 3.0 * float(np.sum(data.beta)))

    rhs = chen_term + 0.5 * s * m_bracket(point) - beta_term - s * (data.trace_m_perp - point.m_M)
    variant = chen_term + 0.5 * s * (n + 2.0 * point.m_M * n - 2.0 * data.trace_m_perp) - beta_term
    return _report('A3', tau - K, rhs, point, rhs_variant=float(variant))


def _chen_bound(point: SubmanifoldPoint, plane, factor: float, name: str, seed: int, starts: int,
                proxy_norm: float) -> InequalityReport:
    """Shared body of the Chen invariant bounds; factor is (n+8) or (n-1)."""
    n = point.n
    c = point.c
    chen = chen_delta(point, seed, starts)
    if plane is None:
        u, v = chen.argmin_plane
    else:
        u, v = orthonormal_plane(point, plane)
    data = plane_data(point, (u, v))
    normH2 = mean_curvature(point).normH2
    chen_term = n * n * (n - 2) / (2.0 * (n - 1)) * normH2

    rhs = chen_term + 0.5 * c * factor * (n + 2.0 * point.m_M * n - 2.0 * data.trace_m_perp) - c
    variant = (chen_term + 0.5 * c * factor * m_bracket(point) - c
               - c * factor * (data.trace_m_perp - point.m_M))

    normP2 = tangency_decomposition(point).normP2
    proxy = bool(np.all(np.abs(normP2 - proxy_norm) <= 1e-8 * max(1.0, n))
                 and np.all(data.beta <= 1e-8))
    notes = 'invariance proxy satisfied' if proxy else 'invariance proxy not satisfied; reported only'
    report = _report(name, chen.delta_M, rhs, point, rhs_variant=float(variant),
                     asserted=proxy, notes=notes)
    if not report.holds:
        logger.warning(f"{name} bound exceeded ({notes}): lhs={report.lhs:.6g}, rhs={report.rhs_canonical:.6g}")
    return report


def check_A4(point: SubmanifoldPoint, plane=None, seed: int = 0,
             starts: int = DEFAULT_STARTS) -> InequalityReport:
    """
    Chen invariant bound for c > 0:
        delta <= n^2(n-2)/(2(n-1)) ||H||^2 + (c/2)(n+8)(n + 2 m_M n - 2 trace_m_perp) - c.

    Asserted only when ||P_k||^2 = n and beta_k = 0 at the plane.

    Args:
        point (SubmanifoldPoint): A valid point with n >= 3
        plane: Plane for trace_m_perp and beta (default: the minimizing plane)

    Returns:
        InequalityReport: The A4 report

    Raises:
        PreconditionError: If c <= 0
    """
    if not point.c > 0:
        raise PreconditionError(f"Bound for positive c called with c = {point.c}")
    return _chen_bound(point, plane, point.n + 8.0, 'A4', seed, starts, proxy_norm=float(point.n))


def check_A5(point: SubmanifoldPoint, plane=None, seed: int = 0,
             starts: int = DEFAULT_STARTS) -> InequalityReport:
    """
    Chen invariant bound for c < 0, with (n-1) in place of (n+8).

    Asserted only when ||P_k||^2 = 0 and beta_k = 0 at the plane.

    Raises:
        PreconditionError: If c >= 0
    """
    if not point.c < 0:
        raise PreconditionError(f"Bound for negative c called with c = {point.c}")
    return _chen_bound(point, plane, point.n - 1.0, 'A5', seed, starts, proxy_norm=0.0)


def quadratic_T(point: SubmanifoldPoint, r: float, hyperplane: np.ndarray) -> float:
    """
    T = r C + ((n-1)(n+r)(n^2-n-r)/(r n)) C(L) - 2 tau + s b.

    Args:
        point (SubmanifoldPoint): A valid point
        r (float): Positive parameter
        hyperplane (np.ndarray): Unit normal of L (tangent coordinates)

    Returns:
        float: Value of the quadratic form
    """
    n = point.n
    return float(
        r * casorati_C(point)
        + casorati_coefficient(n, r) * hyperplane_value(point, hyperplane)
        - 2.0 * scalar_tau(point)
        + structure_factor(point) * m_bracket(point)
    )


def check_B1(point: SubmanifoldPoint, r: float, seed: int = 0,
             starts: int = DEFAULT_STARTS) -> InequalityReport:
    """
    Generalized normalized delta-Casorati bound:
        delta_C(r; n-1) >= n(n-1) rho - s b     (hat version for r > n^2 - n).

    The slack is cross-checked against T at the extremal hyperplane.

    Args:
        point (SubmanifoldPoint): A valid point with n >= 3
        r (float): Positive parameter
        seed (int): Seed for the hyperplane search

    Returns:
        InequalityReport: The B1 report (lhs and rhs swapped into the
            rhs - lhs >= 0 convention: lhs is the curvature side)
    """
    n = point.n
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    delta = delta_C_generalized(point, r, seed, starts)
    rho = 2.0 * scalar_tau(point) / (n * (n - 1))
    bound = n * (n - 1) * rho - structure_factor(point) * m_bracket(point)
    T = quadratic_T(point, r, delta['result'].extremal_normal)
    # delta_C >= bound, reported with lhs = bound and rhs = delta_C so slack >= 0
    slack = delta['delta'] - bound
    cross = abs(slack - T) / _scale(bound, delta['delta'])
    notes = f"variant={delta['variant']}"
    return _report('B1', bound, delta['delta'], point, r=r, cross_check=cross, notes=notes)


def check_corollary_11(point: SubmanifoldPoint, seed: int = 0,
                       starts: int = DEFAULT_STARTS) -> List[InequalityReport]:
    """
    Normalized delta-Casorati bounds delta_C(n-1), hat delta_C(n-1) >= rho - s b / (n(n-1)).

    The scaling identities n(n-1) delta_C(n-1) = delta_C(n(n-1)/2; n-1) and
    n(n-1) hat delta_C(n-1) = hat delta_C(2n(n-1); n-1) are recorded as
    cross-check residuals.

    Args:
        point (SubmanifoldPoint): A valid point with n >= 3

    Returns:
        List[InequalityReport]: Reports 'COR.low' and 'COR.high'
    """
    n = point.n
    scale = n * (n - 1)
    normalized = delta_C_normalized(point, seed, starts)
    rho = 2.0 * scalar_tau(point) / scale
    bound = rho - structure_factor(point) * m_bracket(point) / scale

    low_general = delta_C_generalized(point, scale / 2.0, seed, starts)['delta']
    high_general = delta_C_generalized(point, 2.0 * scale, seed, starts)['delta']
    low_residual = _relative(scale * normalized['deltaC'], low_general)
    high_residual = _relative(scale * normalized['deltaC_hat'], high_general)

    r_low = scale / 2.0
    r_high = 2.0 * scale
    return [
        _report('COR.low', bound, normalized['deltaC'], point, r=r_low, cross_check=low_residual),
        _report('COR.high', bound, normalized['deltaC_hat'], point, r=r_high, cross_check=high_residual),
    ]


def check_identities(point: SubmanifoldPoint, seed: int = 0,
                     starts: int = DEFAULT_STARTS) -> List[InequalityReport]:
    """
    Consistency identities of the engine at one point.

    Args:
        point (SubmanifoldPoint): A valid point (n >= 3 for the Casorati scalings)

    Returns:
        List[InequalityReport]: One identity report per relation
    """
    n = point.n
    tau = scalar_tau(point)
    normH2 = mean_curvature(point).normH2
    h2 = norm_h2(point)
    s = structure_factor(point)
    b = m_bracket(point)

    reports = [
        _identity_report('IDENT.gauss_trace', 2.0 * tau, s * b + n * n * normH2 - h2),
        _identity_report('IDENT.tau_prime', tau_prime(point), tau_prime_direct(point)),
        _identity_report('IDENT.tau_dprime_trace', 0.0, tau_dprime_trace_residual(point), tol=1e-10),
        _identity_report('IDENT.casorati_norm', casorati_C(point),
                         casorati_CV(point, list(np.eye(n))), tol=1e-12),
    ]
    reports.append(_report('IDENT.cauchy_schwarz', n * n * normH2, n * h2, notes='inequality'))

    if n >= 3:
        scale = n * (n - 1)
        normalized = delta_C_normalized(point, seed, starts)
        reports.append(_identity_report(
            'IDENT.scaling_low', scale * normalized['deltaC'],
            delta_C_generalized(point, scale / 2.0, seed, starts)['delta'], tol=1e-10))
        reports.append(_identity_report(
            'IDENT.scaling_high', scale * normalized['deltaC_hat'],
            delta_C_generalized(point, 2.0 * scale, seed, starts)['delta'], tol=1e-10))
    return reports


def hessian_spectrum(n: int, r: float) -> HessianSpectrum:
    """
    Hessian block of the Casorati quadratic form and its spectrum.

    Diagonal 2(n-1)(n+r)/r - 2 on the first n-1 entries, 2r/n last,
    off-diagonal -2. The closed-form eigenvalues are 0,
    2((n-1)n^2 + r^2)/(r n) and 2(n-1)(n+r)/r with multiplicity n-2.

    Args:
        n (int): Submanifold dimension (n >= 3)
        r (float): Positive parameter

    Returns:
        HessianSpectrum: Matrix, eigenvalues and comparison with the closed forms

    Raises:
        InvalidDimensionError: If n < 3
        ValueError: If r <= 0
    """
    if int(n) != n or n < 3:
        raise InvalidDimensionError(f"Hessian analysis needs an integer n >= 3, got {n}")
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    n = int(n)
    H1 = np.full((n, n), -2.0)
    diagonal = np.full(n, 2.0 * (n - 1) * (n + r) / r - 2.0)
    diagonal[-1] = 2.0 * r / n
    np.fill_diagonal(H1, diagonal)

    eigenvalues = np.linalg.eigvalsh(H1)
    scale = max(1.0, float(np.max(np.abs(eigenvalues))))
    psd = bool(eigenvalues[0] >= -1e-10 * scale)
    zero_multiplicity = int(np.sum(np.abs(eigenvalues) <= HESSIAN_TOL * scale))

    closed = sorted([0.0, 2.0 * ((n - 1) * n * n + r * r) / (r * n)]
                   + [2.0 * (n - 1) * (n + r) / r] * (n - 2))
    matches = [bool(abs(a - b) <= HESSIAN_TOL * max(1.0, abs(b))) for a, b in zip(eigenvalues, closed)]

    kernel = np.ones(n)
    kernel[-1] = n * (n - 1) / r
    kernel_residual = float(np.max(np.abs(H1 @ kernel)))

    if not psd or zero_multiplicity != 1:
        logger.warning(f"Hessian at n={n}, r={r}: psd={psd}, zero multiplicity {zero_multiplicity}")
    return HessianSpectrum(
        n=n, r=float(r), H1=H1, eigenvalues=[float(x) for x in eigenvalues], psd=psd,
        zero_multiplicity=zero_multiplicity, closed_form=closed, matches=matches,
        kernel_residual=kernel_residual,
    )
