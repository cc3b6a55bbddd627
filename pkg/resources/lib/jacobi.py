"""Cyclic Jacobi eigensolver for small complex Hermitian matrices.

Each rotation first removes the phase of the pivot element a[p, q] and then
applies the classic real rotation, so the combined similarity transform is
unitary and zeroes a[p, q] and a[q, p] at once. The matrices handled here are
at most a few dozen rows, so the O(n^3) cost per sweep does not matter.
"""
import math
import numpy as np
from typing import Tuple
from .errors import DimensionMismatch

DEFAULT_EPS = 1e-14
MAX_SWEEPS = 64


def jacobi_eigh(
    matrix: np.ndarray,
    eps: float = DEFAULT_EPS,
    max_sweeps: int = MAX_SWEEPS
) -> Tuple[np.ndarray, np.ndarray, int]:
    """Diagonalize a Hermitian matrix.

    Returns (eigenvalues, eigenvectors, sweeps). The eigenvalues are real and
    unsorted; column i of the eigenvector matrix belongs to eigenvalue i.
    The input is not checked for Hermiticity, only the upper triangle
    drives the rotations.
    """
    a = np.array(matrix, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f'Expected a square matrix, got shape {a.shape}')

    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = float(np.linalg.norm(a))
    threshold = eps * scale / max(n, 1)

    sweeps = 0
    while sweeps < max_sweeps and _off_diagonal_norm(a) > eps * scale:
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) > threshold:
                    _rotate(a, v, p, q)
        sweeps += 1

    return np.real(np.diag(a)).copy(), v, sweeps


def top_eigenpair(matrix: np.ndarray) -> Tuple[float, np.ndarray]:
    """Largest eigenvalue and a unit eigenvector for it."""
    values, vectors, _ = jacobi_eigh(matrix)
    i = int(np.argmax(values))
    return float(values[i]), vectors[:, i]


def _off_diagonal_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    r = abs(apq)
    phase = apq / r
    theta = 0.5 * math.atan2(2.0 * r, (a[q, q] - a[p, p]).real)
    c, s = math.cos(theta), math.sin(theta)

    # Columns p and q of the unitary are c e_p - s e^{-i phi} e_q and
    # s e_p + c e^{-i phi} e_q.
    w = s * np.conj(phase)
    wc = c * np.conj(phase)

    col_p = a[:, p].copy()
    col_q = a[:, q].copy()
    a[:, p] = c * col_p - w * col_q
    a[:, q] = s * col_p + wc * col_q

    row_p = a[p, :].copy()
    row_q = a[q, :].copy()
    a[p, :] = c * row_p - np.conj(w) * row_q
    a[q, :] = s * row_p + np.conj(wc) * row_q

    a[p, q] = 0.0
    a[q, p] = 0.0
    a[p, p] = a[p, p].real
    a[q, q] = a[q, q].real

    vp = v[:, p].copy()
    vq = v[:, q].copy()
    v[:, p] = c * vp - w * vq
    v[:, q] = s * vp + wc * vq
