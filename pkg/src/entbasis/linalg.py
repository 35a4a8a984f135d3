"""Small dense complex linear algebra for 2x2 / 4x4 matrices and 2/4/8 state vectors.

Everything is a plain ``numpy`` complex128 array.  Functions never mutate their
inputs and return fresh arrays.
"""

from __future__ import annotations

import numpy as np

SINGULAR_TOL = 1e-12


class SingularMatrix(ValueError):
    """Raised when a matrix that must be inverted has ``|det| <= 1e-12``."""


def as_matrix(m, shape: tuple[int, int] | None = None) -> np.ndarray:
    arr = np.array(m, dtype=np.complex128)
    if arr.ndim != 2 or (shape is not None and arr.shape != shape):
        raise ValueError(f"expected matrix of shape {shape}, got {arr.shape}")
    return arr


def as_state(v) -> np.ndarray:
    arr = np.array(v, dtype=np.complex128).reshape(-1)
    if arr.shape[0] not in (2, 4, 8):
        raise ValueError(f"state dimension must be 2, 4 or 8, got {arr.shape[0]}")
    return arr


def adjoint(m) -> np.ndarray:
    """Conjugate transpose."""
    return np.conj(as_matrix(m)).T.copy()


def det2(m) -> complex:
    a = as_matrix(m, (2, 2))
    return complex(a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0])


def mat_mul(a, b) -> np.ndarray:
    return as_matrix(a) @ as_matrix(b)


def kron2(a, b) -> np.ndarray:
    """Kronecker product of two 2x2 matrices (left factor acts on the leading qubit)."""
    a = as_matrix(a, (2, 2))
    b = as_matrix(b, (2, 2))
    out = np.empty((4, 4), dtype=np.complex128)
    for i in range(2):
        for j in range(2):
            out[2 * i:2 * i + 2, 2 * j:2 * j + 2] = a[i, j] * b
    return out


def mat_vec(m, v) -> np.ndarray:
    m = as_matrix(m)
    v = as_state(v)
    if m.shape[1] != v.shape[0]:
        raise ValueError(f"cannot apply {m.shape} matrix to dimension-{v.shape[0]} state")
    return m @ v


def inverse2(m) -> np.ndarray:
    a = as_matrix(m, (2, 2))
    d = det2(a)
    if abs(d) <= SINGULAR_TOL:
        raise SingularMatrix(f"|det| = {abs(d):.3e} is below {SINGULAR_TOL}")
    return np.array([[a[1, 1], -a[0, 1]], [-a[1, 0], a[0, 0]]], dtype=np.complex128) / d


def frobenius_inner(a, b) -> complex:
    """``Tr(a^dagger b)``."""
    a = as_matrix(a)
    b = as_matrix(b)
    return complex(np.sum(np.conj(a) * b))


def unitarity_error(m) -> float:
    """``max |m m^dagger - I|`` elementwise."""
    m = as_matrix(m)
    return float(np.max(np.abs(m @ adjoint(m) - np.eye(m.shape[0]))))


def polar_unitary(m) -> np.ndarray:
    """Unitary polar factor of an invertible 2x2 matrix.

    Equal to ``W @ Vh`` for any SVD ``m = W diag(s) Vh`` and to the unitary
    closest to ``m`` in Frobenius norm.  Uses the 2x2 closed form

        sqrt(m^dagger m) = (m^dagger m + |det m| I) / s,   s = sqrt(||m||_F^2 + 2 |det m|)

    which gives ``U = m sqrt(m^dagger m)^-1 = (m + |det m| (m^-1)^dagger) / s``.
    No global phase normalisation is applied.
    """
    a = as_matrix(m, (2, 2))
    d = abs(det2(a))
    if d <= SINGULAR_TOL:
        raise SingularMatrix(f"|det| = {d:.3e} is below {SINGULAR_TOL}; polar factor not unique")
    s = np.sqrt(np.sum(np.abs(a) ** 2) + 2.0 * d)
    u = (a + d * adjoint(inverse2(a))) / s
    # one Newton step u <- (u + u^-dagger)/2 removes residual rounding
    return 0.5 * (u + adjoint(inverse2(u)))
