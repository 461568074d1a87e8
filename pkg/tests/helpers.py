"""Shared generators for randomized test suites."""

import numpy as np


def random_real_spectrum(rng, n, cond_cap=100.0):
    """Diagonalizable matrix with distinct real eigenvalues and a tame eigenbasis.

    Returns (matrix, sorted_energies, similarity).  Eigenvalue gaps stay above
    0.4 so no draw sits anywhere near an exceptional point.
    """
    energies = np.arange(n) * 0.7 + rng.uniform(0.0, 0.3, n)
    energies = energies - energies.mean()
    while True:
        s = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        if np.linalg.cond(s) <= cond_cap:
            break
    h = s @ np.diag(energies) @ np.linalg.inv(s)
    return h, energies, s


def random_k_diag(rng, n):
    """Diagonal of K with magnitudes in [0.5, 2] and random phases."""
    return rng.uniform(0.5, 2.0, n) * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, n))


def random_unitary(rng, n):
    """Haar-ish unitary from a QR factorization with the phase ambiguity fixed."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n)))
    d = np.diag(r)
    return q * (d.conj() / np.abs(d))


def random_hermitian(rng, n):
    g = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (g + g.conj().T)


def dimer_hamiltonian(kappa, gamma):
    return np.array([[1j * gamma, kappa], [kappa, -1j * gamma]], dtype=np.complex128)
