"""Quasi-Hermitian observables and the shared-metric compatibility test.

Every Hermitian generator M yields an observable A = Theta^{-1} M that is
quasi-Hermitian with respect to Theta and therefore has real spectrum; the
converse direction, deciding whether two Hamiltonians admit one common metric,
reduces to a real-linear null-space computation plus a positivity search.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dyson import DysonMap, Metric, metric_from_theta
from .errors import NotHermitianGenerator
from .linalg import DEFAULT_TOL, Tolerances, as_square_matrix, fro, herm_part

__all__ = [
    "ObservableCandidate",
    "SharedMetricResult",
    "observable_from_M",
    "is_quasi_hermitian",
    "avatar_of_observable",
    "check_diagonal_center",
    "shared_metric",
]


@dataclass(frozen=True)
class ObservableCandidate:
    """Operator A = Theta^{-1} M together with its generator and residual."""

    a_matrix: np.ndarray
    m_matrix: np.ndarray
    residual: float


@dataclass(frozen=True)
class SharedMetricResult:
    """Outcome of the common-metric search for a pair of Hamiltonians.

    status is "Found", "NoSharedMetric", or "Inconclusive".  theta is present
    exactly when status is "Found".  solution_space_dim counts the real
    dimension of the Hermitian solution space of the intertwining constraints,
    before positivity is imposed.
    """

    status: str
    theta: Metric | None
    solution_space_dim: int


def is_quasi_hermitian(a, metric) -> float:
    """Residual of A† Theta = Theta A, normalized by ||A|| ||Theta||."""
    am = as_square_matrix(a)
    theta = metric.theta if isinstance(metric, Metric) else as_square_matrix(metric)
    denom = fro(am) * fro(theta)
    if denom == 0:
        return 0.0
    return fro(am.conj().T @ theta - theta @ am) / denom


def observable_from_M(metric: Metric, m, tol: Tolerances = DEFAULT_TOL) -> ObservableCandidate:
    """Build the observable Theta^{-1} M from a Hermitian generator M."""
    mm = as_square_matrix(m)
    scale = fro(mm)
    if scale > 0 and fro(mm - mm.conj().T) > tol.residual_rel * scale:
        raise NotHermitianGenerator("generator M must be Hermitian")
    mm = herm_part(mm)
    a = np.linalg.solve(metric.theta, mm)
    return ObservableCandidate(a_matrix=a, m_matrix=mm, residual=is_quasi_hermitian(a, metric))


def avatar_of_observable(a, dyson_map: DysonMap) -> np.ndarray:
    """Hermitian counterpart Omega A Omega^{-1} of an observable."""
    am = as_square_matrix(a)
    return dyson_map.omega @ am @ dyson_map.omega_inv


def check_diagonal_center(a, map_i: DysonMap, tol: Tolerances = DEFAULT_TOL) -> bool:
    """True when Omega_I A Omega_I^{-1} is diagonal, i.e. A commutes with H.

    Off-diagonal Frobenius mass is compared against ``tol.residual_rel`` times
    the norm of A.
    """
    if map_i.family != "I":
        raise ValueError("check_diagonal_center expects the reference family 'I' map")
    am = as_square_matrix(a)
    c = map_i.omega @ am @ map_i.omega_inv
    off = c - np.diag(np.diag(c))
    return fro(off) <= tol.residual_rel * (fro(am) or 1.0)


def _hermitian_basis(n: int) -> list[np.ndarray]:
    # Orthonormal under Re tr(A† B): diagonal units, then symmetric and
    # antisymmetric off-diagonal pairs scaled by 1/sqrt(2).
    basis = []
    for i in range(n):
        b = np.zeros((n, n), dtype=np.complex128)
        b[i, i] = 1.0
        basis.append(b)
    r = 1.0 / np.sqrt(2.0)
    for i in range(n):
        for j in range(i + 1, n):
            b = np.zeros((n, n), dtype=np.complex128)
            b[i, j] = r
            b[j, i] = r
            basis.append(b)
            b = np.zeros((n, n), dtype=np.complex128)
            b[i, j] = 1j * r
            b[j, i] = -1j * r
            basis.append(b)
    return basis


def _combine(basis, coeffs) -> np.ndarray:
    out = np.zeros_like(basis[0])
    for c, b in zip(coeffs, basis):
        out = out + c * b
    return herm_part(out)


def _definite_sign(candidate: np.ndarray, tol: Tolerances) -> int:
    """+1 / -1 when the candidate is definite of that sign, 0 otherwise."""
    scale = fro(candidate)
    if scale == 0:
        return 0
    lam = np.linalg.eigvalsh(candidate)
    gate = tol.positivity_rel * scale
    if lam[0] > gate:
        return 1
    if lam[-1] < -gate:
        return -1
    return 0


def shared_metric(h1, h2, tol: Tolerances = DEFAULT_TOL, seed: int = 0) -> SharedMetricResult:
    """Search for one metric Theta serving both h1 and h2.

    The constraints Theta = Theta†, h1† Theta = Theta h1, h2† Theta = Theta h2
    are real-linear in Theta, so the Hermitian solution space is the null space
    of a real matrix assembled over an orthonormal Hermitian basis (singular
    values below 1e-10 times the largest count as zero).  Positivity is then
    probed deterministically first, projecting the identity into the space and
    scanning the signed null-space directions, and finally with 1000 random
    unit combinations drawn from a generator seeded by ``seed``.

    NoSharedMetric is declared only when the solution space is empty or is
    one-dimensional with an indefinite generator; a failed random search on a
    higher-dimensional space returns Inconclusive.  A returned metric is
    normalized to trace n and certified against both residual checks.
    """
    a1 = as_square_matrix(h1)
    a2 = as_square_matrix(h2)
    if a1.shape != a2.shape:
        raise ValueError("h1 and h2 must have the same dimension")
    n = a1.shape[0]
    basis = _hermitian_basis(n)

    columns = []
    for b in basis:
        parts = []
        for h in (a1, a2):
            c = h.conj().T @ b - b @ h
            parts.append(c.real.ravel())
            parts.append(c.imag.ravel())
        columns.append(np.concatenate(parts))
    constraint = np.column_stack(columns)

    _u, svals, vt = np.linalg.svd(constraint)
    if svals.size and svals[0] > 0:
        rank = int(np.sum(svals > 1e-10 * svals[0]))
    else:
        rank = 0
    null_dim = len(basis) - rank
    if null_dim == 0:
        return SharedMetricResult(status="NoSharedMetric", theta=None, solution_space_dim=0)
    null_vecs = vt[rank:].T  # orthonormal columns spanning the coefficient space

    def certify(candidate: np.ndarray) -> SharedMetricResult | None:
        sign = _definite_sign(candidate, tol)
        if sign == 0:
            return None
        theta = sign * candidate
        theta = theta * (n / np.trace(theta).real)
        if is_quasi_hermitian(a1, theta) > tol.residual_rel:
            return None
        if is_quasi_hermitian(a2, theta) > tol.residual_rel:
            return None
        return SharedMetricResult(
            status="Found",
            theta=metric_from_theta(theta, tol),
            solution_space_dim=null_dim,
        )

    # Identity projection first: coefficients of I are 1 on the diagonal units.
    coeff_eye = np.zeros(len(basis))
    coeff_eye[:n] = 1.0
    proj = null_vecs @ (null_vecs.T @ coeff_eye)
    if np.linalg.norm(proj) > 1e-12:
        found = certify(_combine(basis, proj))
        if found is not None:
            return found

    for k in range(null_dim):
        found = certify(_combine(basis, null_vecs[:, k]))
        if found is not None:
            return found

    if null_dim == 1:
        return SharedMetricResult(status="NoSharedMetric", theta=None, solution_space_dim=1)

    rng = np.random.default_rng(seed)
    for _ in range(1000):
        x = rng.standard_normal(null_dim)
        x /= np.linalg.norm(x)
        found = certify(_combine(basis, null_vecs @ x))
        if found is not None:
            return found

    return SharedMetricResult(status="Inconclusive", theta=None, solution_space_dim=null_dim)
