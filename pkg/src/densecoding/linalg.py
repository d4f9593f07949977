"""Small dense complex matrix helpers and a Hermitian Jacobi eigensolver.

Matrices are plain ``numpy`` arrays of dtype ``complex128``. Nothing here is
meant for matrices larger than a handful of rows.
"""

import numpy as np

from .exceptions import ConvergenceError, DimensionError, NotHermitianError

HERMITIAN_TOL = 1e-10
CONVERGENCE_TOL = 1e-12
MAX_SWEEPS = 100

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = (IDENTITY2, SIGMA_X, SIGMA_Y, SIGMA_Z)

for _m in PAULIS:
    _m.setflags(write=False)


def as_matrix(a):
    """Coerce ``a`` to a finite square complex array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] == 0:
        raise DimensionError(f"expected a non-empty square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise DimensionError("matrix contains NaN or infinite entries")
    return m


def matmul(a, b):
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimensionError(f"dimension mismatch: {a.shape} vs {b.shape}")
    return a @ b


def kron(a, b):
    """Kronecker product; block ``(i, j)`` of the result is ``a[i, j] * b``."""
    return np.kron(as_matrix(a), as_matrix(b))


def adjoint(a):
    return as_matrix(a).conj().T


def hermiticity_residual(a):
    a = as_matrix(a)
    return float(np.max(np.abs(a - a.conj().T)))


def _off_norm(a):
    off = a[~np.eye(a.shape[0], dtype=bool)]
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def hermitian_eigenvalues(a, tol=HERMITIAN_TOL, max_sweeps=MAX_SWEEPS):
    """Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations.

    Each pivot ``(p, q)`` is annihilated by a unitary that first removes the
    phase of ``a[p, q]`` and then applies the real symmetric Jacobi rotation.
    Sweeps continue until the off-diagonal Frobenius norm drops to
    ``CONVERGENCE_TOL`` (scaled by the matrix norm when that exceeds one).

    Parameters
    ----------
    a : array_like
        Square Hermitian matrix.
    tol : float
        Hermiticity tolerance, ``max |a[i, j] - conj(a[j, i])|``.
    max_sweeps : int
        Upper bound on full cyclic sweeps.

    Returns
    -------
    list of float
        Eigenvalues in descending order.

    Raises
    ------
    NotHermitianError
        If the Hermiticity residual exceeds ``tol``.
    ConvergenceError
        If the iteration has not converged after ``max_sweeps`` sweeps.
    """
    a = as_matrix(a)
    residual = hermiticity_residual(a)
    if residual > tol:
        raise NotHermitianError(residual)
    # symmetrize so the rotations see an exactly Hermitian matrix
    a = 0.5 * (a + a.conj().T)
    n = a.shape[0]
    target = CONVERGENCE_TOL * max(1.0, float(np.linalg.norm(a)))

    skip = target / n
    off = _off_norm(a)
    sweeps = 0
    while off > target:
        if sweeps >= max_sweeps:
            raise ConvergenceError(sweeps, off)
        for p in range(n - 1):
            for q in range(p + 1, n):
                g = a[p, q]
                mag = abs(g)
                # entries this small cannot hold the off-norm above target
                if mag < skip:
                    continue
                phase = g / mag
                app = a[p, p].real
                aqq = a[q, q].real
                theta = (aqq - app) / (2.0 * mag)
                if abs(theta) > 1e100:
                    t = 0.5 / theta
                else:
                    t = 1.0 / (abs(theta) + np.sqrt(theta * theta + 1.0))
                    if theta < 0.0:
                        t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                # columns p, q of J = diag(1, conj(phase)) @ [[c, s], [-s, c]]
                col_p = a[:, p].copy()
                col_q = a[:, q].copy()
                qc = col_q * np.conj(phase)
                a[:, p] = c * col_p - s * qc
                a[:, q] = s * col_p + c * qc
                row_p = a[p, :].copy()
                row_q = a[q, :].copy()
                qr = row_q * phase
                a[p, :] = c * row_p - s * qr
                a[q, :] = s * row_p + c * qr
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = app - t * mag
                a[q, q] = aqq + t * mag
        sweeps += 1
        off = _off_norm(a)

    return sorted((float(x) for x in np.diag(a).real), reverse=True)
