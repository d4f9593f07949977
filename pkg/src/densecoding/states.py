"""Density matrices, the Bell-like resource state and von Neumann entropy.

Two-qubit basis ordering is ``|00>, |01>, |10>, |11>`` (indices 0..3).
"""

from dataclasses import dataclass, field
import math

import numpy as np

from .exceptions import InvalidStateError, ParameterError
from .linalg import HERMITIAN_TOL, as_matrix, hermitian_eigenvalues, hermiticity_residual

TRACE_TOL = 1e-10
PSD_FLOOR = 1e-9


@dataclass(frozen=True)
class DensityMatrix:
    """A validated density matrix.

    Construct through :func:`validate`; the wrapped array is read-only.
    """

    mat: np.ndarray
    eigenvalues: tuple = field(repr=False, compare=False)

    @property
    def dim(self):
        return self.mat.shape[0]

    def __array__(self, dtype=None, copy=None):
        if dtype is None:
            return self.mat.copy()
        return self.mat.astype(dtype)


def validate(rho):
    """Check Hermiticity, unit trace and positivity.

    Parameters
    ----------
    rho : array_like or DensityMatrix

    Returns
    -------
    DensityMatrix

    Raises
    ------
    InvalidStateError
        Naming the violated invariant together with its numeric residual.
    """
    if isinstance(rho, DensityMatrix):
        return rho
    try:
        m = as_matrix(rho).copy()
    except ValueError as exc:
        raise InvalidStateError("shape", float("nan"), str(exc)) from exc

    residual = hermiticity_residual(m)
    if residual > HERMITIAN_TOL:
        raise InvalidStateError("hermitian", residual)
    tr = np.trace(m)
    if abs(tr - 1.0) > TRACE_TOL:
        raise InvalidStateError("trace", abs(tr - 1.0), f"trace is {tr.real:.12g}")
    eigs = hermitian_eigenvalues(m)
    if eigs[-1] < -PSD_FLOOR:
        raise InvalidStateError("psd", eigs[-1], "negative eigenvalue")
    m.setflags(write=False)
    return DensityMatrix(m, tuple(eigs))


@dataclass(frozen=True)
class BellLikeParams:
    """Amplitudes of ``alpha|00> + beta|11>``; ``beta`` is derived."""

    alpha: float

    def __post_init__(self):
        if not (0.0 <= self.alpha <= 1.0) or math.isnan(self.alpha):
            raise ParameterError(f"alpha must lie in [0, 1], got {self.alpha}")

    @property
    def beta(self):
        return math.sqrt(1.0 - self.alpha * self.alpha)


def bell_like_state(params):
    """Pure state ``|Phi><Phi|`` with ``Phi = alpha|00> + beta|11>``.

    ``params`` may be a :class:`BellLikeParams` or a bare ``alpha``.
    """
    if not isinstance(params, BellLikeParams):
        params = BellLikeParams(float(params))
    a, b = params.alpha, params.beta
    m = np.zeros((4, 4), dtype=complex)
    m[0, 0] = a * a
    m[3, 3] = b * b
    m[0, 3] = m[3, 0] = a * b
    return validate(m)


def von_neumann_entropy(rho):
    """Entropy ``-sum(l * log2(l))`` in bits, with ``0 log 0 = 0``.

    Eigenvalues in ``[-1e-9, 0)`` are treated as zero; anything more
    negative raises :class:`InvalidStateError`.
    """
    rho = validate(rho)
    s = 0.0
    for lam in rho.eigenvalues:
        if lam < -PSD_FLOOR:
            raise InvalidStateError("psd", lam, "negative eigenvalue")
        if lam > 0.0:
            s -= lam * math.log2(lam)
    return max(s, 0.0)
