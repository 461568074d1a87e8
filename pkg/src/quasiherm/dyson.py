"""Dyson maps, physical metrics, and Hermitian avatars for quasi-Hermitian Hamiltonians.

A Hamiltonian H with real spectrum but H != H† admits maps Omega with
h = Omega H Omega^{-1} Hermitian; Theta = Omega† Omega then satisfies
H† Theta = Theta H and defines the physical inner product.  Three families are
built here: Omega_I from the biorthogonal eigensystem (diagonal avatar),
Omega_K = K† Omega_I for invertible diagonal K (same avatar, new metric), and
Omega_KU = U K† Omega_I for unitary U (rotated avatar, same metric).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import (
    AvatarNotHermitian,
    ComplexSpectrum,
    NotPositiveDefinite,
    NotQuasiHermitian,
    NotUnitary,
    SingularScaling,
)
from .linalg import (
    DEFAULT_TOL,
    Tolerances,
    as_square_matrix,
    eig_general,
    fro,
    herm_part,
    herm_sqrt,
    polar_decompose,
)

__all__ = [
    "BiorthogonalSystem",
    "DysonMap",
    "Metric",
    "HermitizationReport",
    "solve_schrodinger_pair",
    "build_omega_I",
    "build_omega_K",
    "build_omega_KU",
    "metric_of",
    "metric_from_theta",
    "hermitian_avatar",
    "quasi_hermiticity_residual",
    "hermitian_dyson",
    "phys_inner",
    "evolve_norm_check",
    "build_report",
    "hermitize",
]


@dataclass(frozen=True)
class BiorthogonalSystem:
    """Right and left eigenvector systems of H, normalized to mutual identity overlap."""

    energies: np.ndarray
    right_kets: np.ndarray
    left_kets: np.ndarray

    @property
    def dimension(self) -> int:
        return self.energies.size


@dataclass(frozen=True)
class DysonMap:
    """An invertible map Omega together with its inverse and family tag.

    family is "I", "K", or "KU".  k_diag carries the diagonal of K for the K
    and KU families; u_matrix carries the unitary for the KU family.
    """

    omega: np.ndarray
    omega_inv: np.ndarray
    family: str
    k_diag: np.ndarray | None = None
    u_matrix: np.ndarray | None = None

    @property
    def dimension(self) -> int:
        return self.omega.shape[0]


@dataclass(frozen=True)
class Metric:
    """Physical metric Theta = Omega† Omega with its principal square root."""

    theta: np.ndarray
    sqrt_theta: np.ndarray
    min_eigenvalue: float


@dataclass(frozen=True)
class HermitizationReport:
    """Residual summary for one Hamiltonian/Dyson-map pair."""

    energies: np.ndarray
    family: str
    residual_quasi_herm: float
    residual_avatar_herm: float
    residual_isospectral: float
    metric_condition: float
    passed: bool


def solve_schrodinger_pair(h, tol: Tolerances = DEFAULT_TOL) -> BiorthogonalSystem:
    """Solve H psi = E psi and H† phi = E phi jointly.

    Energies come out ascending; each imaginary part must stay below
    ``tol.reality_rel`` times the norm of H, else ComplexSpectrum is raised.
    The left system is scaled so that left† right is the identity, which makes
    the outer-product resolution of the identity exact.
    """
    a = as_square_matrix(h)
    w, right, left = eig_general(a, tol)
    scale = fro(a) or 1.0
    worst = float(np.max(np.abs(w.imag))) if w.size else 0.0
    if worst > tol.reality_rel * scale:
        raise ComplexSpectrum(
            f"largest imaginary part {worst:.3e} exceeds {tol.reality_rel:g} * {scale:.3e}"
        )
    return BiorthogonalSystem(energies=w.real, right_kets=right, left_kets=left)


def build_omega_I(system: BiorthogonalSystem) -> DysonMap:
    """Reference map whose rows are the left bras; it diagonalizes H exactly."""
    omega = system.left_kets.conj().T
    return DysonMap(omega=omega, omega_inv=system.right_kets, family="I")


def build_omega_K(base: DysonMap, k_diag) -> DysonMap:
    """Rescale the reference map row-wise by the conjugated diagonal of K.

    The avatar is unchanged (K commutes with the diagonal avatar of Omega_I)
    while the metric picks up |k_n|^2 weights.  Raises SingularScaling when any
    entry of K is smaller in magnitude than the positivity threshold.
    """
    if base.family != "I":
        raise ValueError("build_omega_K expects the reference family 'I' map")
    k = np.asarray(k_diag, dtype=np.complex128).ravel()
    if k.size != base.dimension:
        raise ValueError(f"k_diag has {k.size} entries for dimension {base.dimension}")
    if np.any(np.abs(k) <= DEFAULT_TOL.positivity_rel):
        raise SingularScaling("k_diag entries must be bounded away from zero")
    omega = k.conj()[:, None] * base.omega
    omega_inv = base.omega_inv / k.conj()[None, :]
    return DysonMap(omega=omega, omega_inv=omega_inv, family="K", k_diag=k)


def build_omega_KU(base: DysonMap, u, tol: Tolerances = DEFAULT_TOL) -> DysonMap:
    """Left-multiply by a unitary U; the metric is untouched, the avatar rotates."""
    if base.family not in ("I", "K"):
        raise ValueError("build_omega_KU expects a family 'I' or 'K' map")
    um = as_square_matrix(u)
    if um.shape[0] != base.dimension:
        raise ValueError("u has the wrong dimension for this map")
    eye = np.eye(base.dimension)
    if fro(um.conj().T @ um - eye) > tol.residual_rel:
        raise NotUnitary("u fails the unitarity residual check")
    return DysonMap(
        omega=um @ base.omega,
        omega_inv=base.omega_inv @ um.conj().T,
        family="KU",
        k_diag=base.k_diag,
        u_matrix=um,
    )


def metric_from_theta(theta, tol: Tolerances = DEFAULT_TOL) -> Metric:
    """Certify a candidate metric: Hermitian, positive definite, with square root."""
    t = as_square_matrix(theta)
    sym = herm_part(t)
    scale = fro(sym)
    lam = np.linalg.eigvalsh(sym) if scale > 0 else np.zeros(t.shape[0])
    if scale == 0 or lam[0] <= tol.positivity_rel * scale:
        raise NotPositiveDefinite("candidate metric is not positive definite")
    return Metric(theta=sym, sqrt_theta=herm_sqrt(sym, tol), min_eigenvalue=float(lam[0]))


def metric_of(dyson_map: DysonMap, tol: Tolerances = DEFAULT_TOL) -> Metric:
    """Metric Theta = Omega† Omega of a Dyson map."""
    return metric_from_theta(dyson_map.omega.conj().T @ dyson_map.omega, tol)


def hermitian_avatar(h, dyson_map: DysonMap, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Similarity transform Omega H Omega^{-1}, certified Hermitian.

    Raises AvatarNotHermitian when the result deviates from Hermiticity by more
    than ``tol.residual_rel`` relative to its norm, which means the supplied
    map does not hermitize this Hamiltonian.
    """
    a = as_square_matrix(h)
    avatar = dyson_map.omega @ a @ dyson_map.omega_inv
    scale = fro(avatar) or 1.0
    if fro(avatar - avatar.conj().T) > tol.residual_rel * scale:
        raise AvatarNotHermitian("map does not produce a Hermitian counterpart for this input")
    return avatar


def _theta_of(metric) -> np.ndarray:
    return metric.theta if isinstance(metric, Metric) else as_square_matrix(metric)


def quasi_hermiticity_residual(h, metric) -> float:
    """Relative size of H† Theta - Theta H, the metric intertwining defect."""
    a = as_square_matrix(h)
    theta = _theta_of(metric)
    denom = fro(a) * fro(theta)
    if denom == 0:
        return 0.0
    return fro(a.conj().T @ theta - theta @ a) / denom


def hermitian_dyson(dyson_map: DysonMap, tol: Tolerances = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray]:
    """Unitary u and Hermitian map omega_herm = u Omega solving u Omega u = Omega†.

    Writing Omega = W P by right polar decomposition, u = W† does the job:
    u Omega u = P W† = (W P)† and u Omega = P, the square root of the metric of
    Omega.  Returns (u, omega_herm).
    """
    w, _p = polar_decompose(dyson_map.omega)
    u = w.conj().T
    return u, u @ dyson_map.omega


def phys_inner(metric, psi, phi) -> complex:
    """Physical inner product <psi, Theta phi>."""
    theta = _theta_of(metric)
    pv = np.asarray(psi, dtype=np.complex128).ravel()
    qv = np.asarray(phi, dtype=np.complex128).ravel()
    if pv.size != theta.shape[0] or qv.size != theta.shape[0]:
        raise ValueError("vector length does not match the metric dimension")
    return complex(pv.conj() @ theta @ qv)


def evolve_norm_check(h, metric, psi0, times, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Theta-norms <psi(t), Theta psi(t)> along exp(-iHt) psi0 for each requested time.

    Requires (H, Theta) to be a quasi-Hermitian pair within ``tol.residual_rel``,
    else NotQuasiHermitian is raised; under that condition the returned norms
    are constant up to roundoff.  Propagation goes through the eigenbasis of H.
    """
    a = as_square_matrix(h)
    theta = _theta_of(metric)
    if quasi_hermiticity_residual(a, theta) > tol.residual_rel:
        raise NotQuasiHermitian("H† Theta - Theta H residual exceeds tolerance")
    w, v = scipy.linalg.eig(a)
    coeff = np.linalg.solve(v, np.asarray(psi0, dtype=np.complex128).ravel())
    out = np.empty(len(times), dtype=float)
    for i, t in enumerate(times):
        psi_t = v @ (np.exp(-1j * w * t) * coeff)
        out[i] = float((psi_t.conj() @ theta @ psi_t).real)
    return out


def build_report(h, system, dyson_map, metric, avatar, tol: Tolerances) -> HermitizationReport:
    a = as_square_matrix(h)
    r_quasi = quasi_hermiticity_residual(a, metric)
    scale_av = fro(avatar) or 1.0
    r_avatar = fro(avatar - avatar.conj().T) / scale_av
    avatar_spec = np.linalg.eigvalsh(herm_part(avatar))
    scale_h = fro(a) or 1.0
    r_iso = float(np.max(np.abs(avatar_spec - system.energies))) / scale_h
    lam = np.linalg.eigvalsh(metric.theta)
    passed = (
        r_quasi <= tol.residual_rel
        and r_avatar <= tol.residual_rel
        and r_iso <= tol.reality_rel
    )
    return HermitizationReport(
        energies=system.energies.copy(),
        family=dyson_map.family,
        residual_quasi_herm=r_quasi,
        residual_avatar_herm=r_avatar,
        residual_isospectral=r_iso,
        metric_condition=float(lam[-1] / lam[0]),
        passed=passed,
    )


def hermitize(h, k_diag=None, hermitian_map: bool = False, tol: Tolerances = DEFAULT_TOL):
    """Full pipeline from a Hamiltonian to (system, map, metric, avatar, report).

    Builds Omega_I from the biorthogonal eigensystem, optionally rescales by
    k_diag, and optionally rotates by the polar unitary so the final map is
    Hermitian positive definite.
    """
    system = solve_schrodinger_pair(h, tol)
    dmap = build_omega_I(system)
    if k_diag is not None:
        dmap = build_omega_K(dmap, k_diag)
    if hermitian_map:
        u, _omega_herm = hermitian_dyson(dmap, tol)
        dmap = build_omega_KU(dmap, u, tol)
    metric = metric_of(dmap, tol)
    avatar = hermitian_avatar(h, dmap, tol)
    report = build_report(h, system, dmap, metric, avatar, tol)
    return system, dmap, metric, avatar, report
