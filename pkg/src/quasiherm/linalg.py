"""Dense complex linear algebra: general eigensystems with biorthogonal left vectors,
Hermitian square roots and exponentials, and the right polar decomposition."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DefectiveMatrix, NotHermitian, NotPositiveDefinite, SingularInput

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "eig_general",
    "herm_sqrt",
    "polar_decompose",
    "herm_exp",
]


@dataclass(frozen=True)
class Tolerances:
    """Thresholds shared by every residual, reality, and positivity check.

    residual_rel and reality_rel are relative to the norm of the matrix under
    test, positivity_rel is relative to the metric scale, and defective_cond
    bounds the condition number of an acceptable eigenvector basis.
    """

    residual_rel: float = 1e-10
    reality_rel: float = 1e-9
    positivity_rel: float = 1e-12
    defective_cond: float = 1e8

    def __post_init__(self) -> None:
        for name in ("residual_rel", "reality_rel", "positivity_rel", "defective_cond"):
            value = getattr(self, name)
            if not value > 0:
                raise ValueError(f"{name} must be strictly positive, got {value}")


DEFAULT_TOL = Tolerances()


def as_square_matrix(m) -> np.ndarray:
    """Coerce to a square complex128 array, rejecting non-finite entries."""
    a = np.asarray(m, dtype=np.complex128)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix entries must be finite")
    return a


def fro(m: np.ndarray) -> float:
    return float(np.linalg.norm(m))


def herm_part(m: np.ndarray) -> np.ndarray:
    return 0.5 * (m + m.conj().T)


def _require_hermitian(a: np.ndarray, rel: float, what: str) -> np.ndarray:
    scale = fro(a)
    if scale > 0 and fro(a - a.conj().T) > rel * scale:
        raise NotHermitian(f"{what} deviates from Hermiticity beyond {rel:g} relative")
    return herm_part(a)


def _normalize_columns(v: np.ndarray) -> np.ndarray:
    # Unit columns with the largest-magnitude component rotated to the positive
    # real axis; ties resolve to the first maximal index, so the output is a
    # deterministic function of the input matrix.
    v = v.copy()
    for j in range(v.shape[1]):
        col = v[:, j] / np.linalg.norm(v[:, j])
        lead = col[np.argmax(np.abs(col))]
        v[:, j] = col * (lead.conjugate() / abs(lead))
    return v


def eig_general(m, tol: Tolerances = DEFAULT_TOL) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Eigendecomposition of a general complex matrix with a matched left system.

    Parameters
    ----------
    m : array_like
        Square matrix, assumed diagonalizable.
    tol : Tolerances
        Only ``defective_cond`` is consulted here.

    Returns
    -------
    eigenvalues : ndarray
        Sorted ascending by real part, ties broken by imaginary part.
    right : ndarray
        Right eigenvectors as columns, each of unit Euclidean norm with its
        largest-magnitude component real and positive.
    left : ndarray
        Left eigenvectors as columns, rescaled so that ``left.conj().T @ right``
        is the identity.

    Raises
    ------
    DefectiveMatrix
        If the right eigenvector basis has a 2-norm condition number above
        ``tol.defective_cond``, which signals an exceptional point.
    """
    a = as_square_matrix(m)
    w, v = scipy.linalg.eig(a)
    order = np.lexsort((w.imag, w.real))
    w = w[order]
    v = _normalize_columns(v[:, order])
    cond = np.linalg.cond(v)
    if not np.isfinite(cond) or cond > tol.defective_cond:
        raise DefectiveMatrix(
            f"eigenvector basis condition {cond:.3e} exceeds {tol.defective_cond:.1e}"
        )
    # Inverting the right basis biorthonormalizes exactly, degenerate blocks included.
    left = np.linalg.inv(v).conj().T
    return w, v, left


def herm_sqrt(p, tol: Tolerances = DEFAULT_TOL) -> np.ndarray:
    """Principal square root of a Hermitian positive definite matrix.

    Raises NotHermitian if the input is not Hermitian within ``tol.residual_rel``
    and NotPositiveDefinite if any eigenvalue falls at or below
    ``tol.positivity_rel`` times the matrix norm.
    """
    a = as_square_matrix(p)
    scale = fro(a)
    if scale == 0:
        raise NotPositiveDefinite("zero matrix has no positive definite square root")
    sym = _require_hermitian(a, tol.residual_rel, "herm_sqrt input")
    lam, u = np.linalg.eigh(sym)
    if lam[0] <= tol.positivity_rel * scale:
        raise NotPositiveDefinite(
            f"smallest eigenvalue {lam[0]:.3e} at or below {tol.positivity_rel:g} * {scale:.3e}"
        )
    root = (u * np.sqrt(lam)) @ u.conj().T
    return herm_part(root)


def polar_decompose(m) -> tuple[np.ndarray, np.ndarray]:
    """Right polar decomposition M = W P with W unitary and P Hermitian positive definite.

    P is the Hermitian square root of M†M and W = M P^{-1}.  Raises
    SingularInput when M†M is numerically singular.
    """
    a = as_square_matrix(m)
    gram = herm_part(a.conj().T @ a)
    try:
        p = herm_sqrt(gram)
    except NotPositiveDefinite as exc:
        raise SingularInput("polar factor undefined: matrix is numerically singular") from exc
    w = np.linalg.solve(p, a.conj().T).conj().T
    return w, p


def herm_exp(s, scale: float = 1.0) -> np.ndarray:
    """exp(scale * S) for Hermitian S, evaluated through the spectral decomposition."""
    a = as_square_matrix(s)
    sym = _require_hermitian(a, DEFAULT_TOL.residual_rel, "herm_exp generator")
    lam, u = np.linalg.eigh(sym)
    return (u * np.exp(scale * lam)) @ u.conj().T
