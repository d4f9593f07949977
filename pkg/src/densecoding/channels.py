"""Single-qubit Kraus families and the two-use correlated channel.

A correlated channel acting on two consecutive qubits is the convex mixture

    rho -> (1 - mu) * sum_{k1 k2} E_{k1 k2} rho E_{k1 k2}^+  +  mu * sum_k E_kk rho E_kk^+

where ``E_{k1 k2}`` are tensor products of the single-qubit operators and
``E_kk`` are the full-memory operators. Operator ordering inside every
Kraus set is fixed, identity-like operator first.
"""

from dataclasses import dataclass
import enum
import math

import numpy as np

from .exceptions import ParameterError, PostSelectionError
from .linalg import IDENTITY2, SIGMA_X, SIGMA_Y, SIGMA_Z, as_matrix, kron
from .states import validate

COMPLETENESS_TOL = 1e-12
POSTSELECTION_FLOOR = 1e-15


class ChannelKind(enum.Enum):
    AMPLITUDE_DAMPING = "ad"
    PHASE_DAMPING = "pd"
    DEPOLARIZING = "depol"

    @classmethod
    def parse(cls, value):
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            choices = ", ".join(k.value for k in cls)
            raise ParameterError(f"unknown channel {value!r}; choose one of {choices}") from None


def check_unit_interval(name, value):
    value = float(value)
    if not 0.0 <= value <= 1.0:
        raise ParameterError(f"{name} must lie in [0, 1], got {value}")
    return value


@dataclass(frozen=True)
class ChannelParams:
    """Decay parameter ``lam`` (``exp(-Gamma t)``) and memory strength ``mu``."""

    lam: float
    mu: float

    def __post_init__(self):
        check_unit_interval("lambda", self.lam)
        check_unit_interval("mu", self.mu)


class KrausSet:
    """An ordered tuple of equally sized Kraus operators.

    With ``complete=True`` (the default) the constructor certifies
    ``sum E^+ E = I`` to within ``COMPLETENESS_TOL``. Measurement sets that
    are deliberately trace decreasing pass ``complete=False``.
    """

    def __init__(self, ops, complete=True):
        ops = tuple(as_matrix(op) for op in ops)
        if not ops:
            raise ParameterError("a Kraus set needs at least one operator")
        dim = ops[0].shape[0]
        if any(op.shape != (dim, dim) for op in ops):
            raise ParameterError("Kraus operators must share one dimension")
        for op in ops:
            op.setflags(write=False)
        self.ops = ops
        self.dim = dim
        self.completeness_residual = float(
            np.max(np.abs(sum(op.conj().T @ op for op in ops) - np.eye(dim)))
        )
        self.complete = complete
        if complete and self.completeness_residual > COMPLETENESS_TOL:
            raise ParameterError(
                f"Kraus set is not complete (residual {self.completeness_residual:.3e})"
            )

    def __len__(self):
        return len(self.ops)

    def __iter__(self):
        return iter(self.ops)

    def __repr__(self):
        return f"KrausSet(dim={self.dim}, n_ops={len(self)}, complete={self.complete})"


def kraus_sum(ops, rho):
    """Un-normalized ``sum E rho E^+`` as a raw array."""
    rho = np.asarray(rho, dtype=complex)
    return sum(op @ rho @ op.conj().T for op in ops)


def apply_kraus_set(kraus, rho, normalize=False):
    """Apply a Kraus set and return ``(matrix, weight)``.

    ``weight`` is the trace of the un-normalized output. With
    ``normalize=True`` the matrix is divided by it, which is how
    post-selected measurement branches are handled.
    """
    out = kraus_sum(kraus.ops, rho)
    weight = float(np.trace(out).real)
    if normalize:
        if weight <= POSTSELECTION_FLOOR:
            raise PostSelectionError(weight)
        out = out / weight
    return out, weight


def _pauli_weights(kind, lam):
    if kind is ChannelKind.PHASE_DAMPING:
        return ((1 + lam) / 2, (1 - lam) / 2), (IDENTITY2, SIGMA_Z)
    p = (1 - lam) / 6
    return ((1 + lam) / 2, p, p, p), (IDENTITY2, SIGMA_X, SIGMA_Y, SIGMA_Z)


def single_qubit_kraus(kind, lam):
    """Single-qubit Kraus operators for one channel use.

    Amplitude damping uses ``diag(1, sqrt(lam))`` and the decay operator
    ``sqrt(1 - lam)|0><1|``. Phase damping and depolarizing are Pauli
    channels with ``p0 = (1 + lam)/2`` and the remaining weight split
    evenly over ``Z`` (phase damping) or ``X, Y, Z`` (depolarizing).
    """
    kind = ChannelKind.parse(kind)
    lam = check_unit_interval("lambda", lam)
    if kind is ChannelKind.AMPLITUDE_DAMPING:
        b0 = np.diag([1.0, math.sqrt(lam)]).astype(complex)
        b1 = np.array([[0.0, math.sqrt(1.0 - lam)], [0.0, 0.0]], dtype=complex)
        return KrausSet((b0, b1))
    weights, paulis = _pauli_weights(kind, lam)
    return KrausSet(tuple(math.sqrt(w) * s for w, s in zip(weights, paulis)))


def uncorrelated_pair_kraus(kind, lam):
    single = single_qubit_kraus(kind, lam)
    return KrausSet(tuple(kron(a, b) for a in single for b in single))


def correlated_pair_kraus(kind, lam):
    """Full-memory two-qubit operators: both qubits suffer the same event."""
    kind = ChannelKind.parse(kind)
    lam = check_unit_interval("lambda", lam)
    if kind is ChannelKind.AMPLITUDE_DAMPING:
        e00 = np.eye(4, dtype=complex)
        e00[3, 3] = math.sqrt(lam)
        e11 = np.zeros((4, 4), dtype=complex)
        e11[0, 3] = math.sqrt(1.0 - lam)
        return KrausSet((e00, e11))
    weights, paulis = _pauli_weights(kind, lam)
    return KrausSet(tuple(math.sqrt(w) * kron(s, s) for w, s in zip(weights, paulis)))


@dataclass(frozen=True)
class CorrelatedChannel:
    kind: ChannelKind
    uncorrelated: KrausSet
    correlated: KrausSet
    mu: float

    def raw_apply(self, rho):
        """The channel map on an arbitrary (possibly un-normalized) matrix."""
        rho = np.asarray(rho, dtype=complex)
        out = np.zeros((4, 4), dtype=complex)
        if self.mu < 1.0:
            out += (1.0 - self.mu) * kraus_sum(self.uncorrelated.ops, rho)
        if self.mu > 0.0:
            out += self.mu * kraus_sum(self.correlated.ops, rho)
        return out


def build_channel(kind, params):
    kind = ChannelKind.parse(kind)
    return CorrelatedChannel(
        kind=kind,
        uncorrelated=uncorrelated_pair_kraus(kind, params.lam),
        correlated=correlated_pair_kraus(kind, params.lam),
        mu=params.mu,
    )


def apply(channel, rho):
    """Send a validated two-qubit state through ``channel``.

    The output is re-validated; a failure here means a bug in the Kraus
    construction rather than bad input.
    """
    rho = validate(rho)
    if rho.dim != 4:
        raise ParameterError(f"correlated channels act on two qubits, got dim {rho.dim}")
    return validate(channel.raw_apply(rho.mat))

