"""Unitary encoding ensemble, average signal state and capacity."""

from dataclasses import dataclass

import numpy as np

from .exceptions import NumericalError, ParameterError
from .linalg import IDENTITY2, SIGMA_X, SIGMA_Z, as_matrix
from .states import PSD_FLOOR, validate, von_neumann_entropy

UNITARY_TOL = 1e-12


@dataclass(frozen=True)
class EncoderSet:
    """Four mutually orthogonal single-qubit unitaries ``U00, U10, U01, U11``."""

    ops: tuple

    def __post_init__(self):
        if len(self.ops) != 4:
            raise ParameterError("dense coding on qubits needs exactly four encoders")
        for i, u in enumerate(self.ops):
            u = as_matrix(u)
            if u.shape != (2, 2):
                raise ParameterError("encoders act on a single qubit")
            for j, v in enumerate(self.ops):
                overlap = np.trace(u.conj().T @ np.asarray(v))
                expected = 2.0 if i == j else 0.0
                if abs(overlap - expected) > UNITARY_TOL:
                    raise ParameterError(f"encoders {i} and {j} are not orthogonal")
            if np.max(np.abs(u.conj().T @ u - IDENTITY2)) > UNITARY_TOL:
                raise ParameterError(f"encoder {i} is not unitary")


def standard_encoders():
    # U10 = phase flip, U01 = bit flip, U11 = bit flip after phase flip
    u00 = IDENTITY2.copy()
    u10 = SIGMA_Z.copy()
    u01 = SIGMA_X.copy()
    u11 = SIGMA_X @ SIGMA_Z
    return EncoderSet((u00, u10, u01, u11))


_ENCODERS = standard_encoders()


def average_signal_state(rho, slot=0, encoders=None):
    """Equal-prior mixture of the four encoded states.

    Parameters
    ----------
    rho : array_like or DensityMatrix
        Two-qubit state shared by sender and receiver.
    slot : {0, 1}
        Which tensor factor the sender encodes on. The sender's qubit is
        the first one by default.
    encoders : EncoderSet, optional
    """
    rho = validate(rho)
    if rho.dim != 4:
        raise ParameterError("average_signal_state expects a two-qubit state")
    if slot not in (0, 1):
        raise ParameterError("slot must be 0 or 1")
    encoders = encoders or _ENCODERS
    out = np.zeros((4, 4), dtype=complex)
    for u in encoders.ops:
        op = np.kron(u, IDENTITY2) if slot == 0 else np.kron(IDENTITY2, u)
        out += op @ rho.mat @ op.conj().T
    return validate(out / 4.0)


@dataclass(frozen=True)
class CapacityResult:
    chi: float
    chi_raw: float
    entropy_avg: float
    entropy_state: float


def capacity_report(rho, slot=0):
    """Capacity together with both entropies and the unclamped value."""
    rho = validate(rho)
    s_avg = von_neumann_entropy(average_signal_state(rho, slot=slot))
    s_rho = von_neumann_entropy(rho)
    raw = s_avg - s_rho
    if raw < -PSD_FLOOR or raw > 2.0 + PSD_FLOOR:
        raise NumericalError(f"capacity {raw!r} outside [0, 2] bits")
    return CapacityResult(min(max(raw, 0.0), 2.0), raw, s_avg, s_rho)


def capacity(rho, slot=0):
    """Dense-coding capacity ``S(avg) - S(rho)`` in bits, clamped to ``[0, 2]``."""
    return capacity_report(rho, slot=slot).chi
