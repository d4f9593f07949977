"""Closed-form output states for the Bell-like input ``alpha|00> + beta|11>``.

Every channel here maps the input to an X-state: four populations on the
diagonal and a single real coherence between ``|00>`` and ``|11>``. The
expressions are transcribed term by term, sign factors such as ``(-1 + lam)``
included, so that a transcription slip shows up in cross-validation against
the Kraus pipeline instead of being hidden by algebraic tidying.

The ``*_wm_elements`` variants include the weak measurement before the channel
and the reversal measurement after it; their output is un-normalized and the
success probability is the sum of the populations.
"""

from dataclasses import dataclass
import math

import numpy as np

from .channels import ChannelKind, check_unit_interval
from .exceptions import InvalidStateError, ParameterError, PostSelectionError

POPULATION_FLOOR = 1e-12
X_STATE_TOL = 1e-10
POSTSELECTION_FLOOR = 1e-15


@dataclass(frozen=True)
class ClosedFormElements:
    """Populations at ``|00>, |01>, |10>, |11>`` plus the ``|00><11|`` coherence."""

    populations: tuple
    coherence: complex
    normalized: bool

    def __post_init__(self):
        p = self.populations
        if len(p) != 4:
            raise ParameterError("an X-state has four populations")
        if min(p) < -POPULATION_FLOOR:
            raise InvalidStateError("psd", min(p), "negative population")
        if self.normalized and abs(sum(p) - 1.0) > POPULATION_FLOOR:
            raise InvalidStateError("trace", abs(sum(p) - 1.0))
        bound = math.sqrt(max(p[0], 0.0) * max(p[3], 0.0))
        if abs(self.coherence) > bound + X_STATE_TOL:
            raise InvalidStateError("psd", bound - abs(self.coherence), "coherence too large")

    @property
    def trace(self):
        return float(sum(self.populations))

    def to_matrix(self, normalize=True):
        m = np.diag(np.asarray(self.populations, dtype=complex))
        m[0, 3] = self.coherence
        m[3, 0] = np.conj(self.coherence)
        if normalize and not self.normalized:
            t = self.trace
            if t <= POSTSELECTION_FLOOR:
                raise PostSelectionError(t)
            m /= t
        return m


def _check(lam, mu, alpha, m=0.0, n=0.0):
    check_unit_interval("lambda", lam)
    check_unit_interval("mu", mu)
    check_unit_interval("alpha", alpha)
    for name, v in (("m", m), ("n", n)):
        if not 0.0 <= v < 1.0:
            raise ParameterError(f"{name} must lie in [0, 1), got {v}")
    return math.sqrt(1.0 - alpha * alpha)


def _unnormalized(populations, coherence):
    t = sum(populations)
    if t <= POSTSELECTION_FLOOR:
        raise PostSelectionError(t)
    return ClosedFormElements(tuple(populations), coherence, normalized=False)


def ad_elements(lam, mu, alpha):
    b = _check(lam, mu, alpha)
    a = alpha
    r11 = a**2 - (-1 + lam) * b**2 * (1 + lam * (-1 + mu))
    r22 = (-1 + lam) * lam * b**2 * (-1 + mu)
    r33 = (-1 + lam) * lam * b**2 * (-1 + mu)
    r44 = lam * b**2 * (lam + mu - lam * mu)
    r14 = -lam * a * b * (-1 + mu) + math.sqrt(lam) * a * b * mu
    return ClosedFormElements((r11, r22, r33, r44), r14, normalized=True)


def ad_wm_elements(lam, mu, alpha, m, n):
    b = _check(lam, mu, alpha, m, n)
    a = alpha
    r11 = (-1 + n) ** 2 * (a**2 + (-1 + lam) * (-1 + m) ** 2 * b**2 * (-1 + lam - lam * mu))
    r22 = -(-1 + lam) * lam * (-1 + m) ** 2 * (-1 + n) * b**2 * (-1 + mu)
    r44 = lam * (b - m * b) ** 2 * (lam + mu - lam * mu)
    r14 = math.sqrt(lam) * (1 - m) * (1 - n) * a * b * (-math.sqrt(lam) * (-1 + mu) + mu)
    return _unnormalized((r11, r22, r22, r44), r14)


def pd_elements(lam, mu, alpha):
    # dephasing leaves populations alone; the |11> population is beta^2
    b = _check(lam, mu, alpha)
    a = alpha
    r14 = a * b * (-(lam**2) * (-1 + mu) + mu)
    return ClosedFormElements((a**2, 0.0, 0.0, b**2), r14, normalized=True)


def pd_wm_elements(lam, mu, alpha, m, n):
    b = _check(lam, mu, alpha, m, n)
    a = alpha
    r11 = (-1 + n) ** 2 * a**2
    r44 = (-1 + m) ** 2 * b**2
    r14 = (-1 + m) * (1 - n) * a * b * (lam**2 * (-1 + mu) - mu)
    return _unnormalized((r11, 0.0, 0.0, r44), r14)


def depol_elements(lam, mu, alpha):
    b = _check(lam, mu, alpha)
    a = alpha
    r11 = (
        -(2 + lam) * a**2 * (-2 + lam * (-1 + mu) - mu)
        - (-1 + lam) * b**2 * (1 + lam * (-1 + mu) + 2 * mu)
    ) / 9
    r22 = (-2 + lam + lam**2) * (-1 + mu) / 9
    r44 = (
        -(-1 + lam) * a**2 * (1 + lam * (-1 + mu) + 2 * mu)
        + b**2 * ((2 + lam) ** 2 - (-2 + lam + lam**2) * mu)
    ) / 9
    r14 = a * b * (1 - 4 * lam * (1 + lam) * (-1 + mu) + 8 * mu) / 9
    return ClosedFormElements((r11, r22, r22, r44), r14, normalized=True)


def depol_wm_elements(lam, mu, alpha, m, n):
    b = _check(lam, mu, alpha, m, n)
    a = alpha
    r11 = (-1 + n) ** 2 * (
        -(2 + lam) * a**2 * (-2 + lam * (-1 + mu) - mu) / 9
        - (-1 + lam) * (-1 + m) ** 2 * b**2 * (1 + lam * (-1 + mu) + 2 * mu) / 9
    )
    r22 = -(-2 + lam + lam**2) * (-1 + n) * (a**2 + (-1 + m) ** 2 * b**2) * (-1 + mu) / 9
    r44 = (
        (1 - lam) * a**2 * (1 + lam * (-1 + mu) + 2 * mu)
        + (-1 + m) ** 2 * b**2 * ((2 + lam) ** 2 - (-2 + lam + lam**2) * mu)
    ) / 9
    r14 = -(1 - m) * (1 - n) * a * b * (-1 + 4 * lam * (1 + lam) * (-1 + mu) - 8 * mu) / 9
    return _unnormalized((r11, r22, r22, r44), r14)


UNPROTECTED = {
    ChannelKind.AMPLITUDE_DAMPING: ad_elements,
    ChannelKind.PHASE_DAMPING: pd_elements,
    ChannelKind.DEPOLARIZING: depol_elements,
}

PROTECTED = {
    ChannelKind.AMPLITUDE_DAMPING: ad_wm_elements,
    ChannelKind.PHASE_DAMPING: pd_wm_elements,
    ChannelKind.DEPOLARIZING: depol_wm_elements,
}


def closed_form_state(kind, lam, mu, alpha, m=None, n=None):
    """Normalized closed-form output matrix.

    With ``m`` and ``n`` both ``None`` the unprotected formula is used;
    otherwise the protected one (missing strengths default to zero).
    """
    kind = ChannelKind.parse(kind)
    if m is None and n is None:
        return UNPROTECTED[kind](lam, mu, alpha).to_matrix()
    return PROTECTED[kind](lam, mu, alpha, m or 0.0, n or 0.0).to_matrix()
