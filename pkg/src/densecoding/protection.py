"""Weak measurement before the channel, reversal measurement after it.

The protocol keeps only the no-click branch of both measurements. Capacity
is evaluated on the renormalized post-selected state; the success
probability is reported alongside but never folded into the capacity.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import itertools
import math

import numpy as np

from .channels import (
    ChannelKind,
    KrausSet,
    apply_kraus_set,
    build_channel,
    check_unit_interval,
)
from .closed_form import PROTECTED
from .coding import capacity_report
from .exceptions import ParameterError, PostSelectionError
from .states import DensityMatrix, bell_like_state, validate

STRENGTH_CAP = 1.0 - 1e-3
TIE_TOL = 1e-12


@dataclass(frozen=True)
class MeasurementStrengths:
    """Weak (``m``) and reversal (``n``) strengths, equal on both qubits."""

    m: float
    n: float

    def __post_init__(self):
        for name in ("m", "n"):
            v = getattr(self, name)
            if not 0.0 <= v < 1.0:
                raise ParameterError(f"{name} must lie in [0, 1), got {v}")


@dataclass(frozen=True)
class ProtocolResult:
    chi: float
    entropy_avg: float
    entropy_state: float
    success_prob: float
    rho_out: DensityMatrix
    chi_raw: float = float("nan")


def _check_strength(name, v):
    v = float(v)
    if not 0.0 <= v < 1.0:
        raise ParameterError(f"{name} must lie in [0, 1), got {v}")
    return v


def weak_measure_op(m):
    """``diag(1, sqrt(1-m)) (x) diag(1, sqrt(1-m))``: damps the ``|1>`` amplitude."""
    m = _check_strength("m", m)
    s = math.sqrt(1.0 - m)
    return np.diag([1.0, s, s, 1.0 - m]).astype(complex)


def reversal_op(n):
    """``diag(sqrt(1-n), 1) (x) diag(sqrt(1-n), 1)``: damps the ``|0>`` amplitude."""
    n = _check_strength("n", n)
    s = math.sqrt(1.0 - n)
    return np.diag([1.0 - n, s, s, 1.0]).astype(complex)


def _result(rho, success_prob):
    report = capacity_report(rho)
    return ProtocolResult(
        chi=report.chi,
        entropy_avg=report.entropy_avg,
        entropy_state=report.entropy_state,
        success_prob=success_prob,
        rho_out=rho,
        chi_raw=report.chi_raw,
    )


def unprotected_state(kind, params, alpha):
    channel = build_channel(kind, params)
    return validate(channel.raw_apply(bell_like_state(alpha).mat))


def protocol_state(kind, params, strengths, alpha):
    """Post-selected output state and its success probability ``T``.

    ``T`` is the trace of the pipeline output before renormalization, i.e.
    the joint probability of both no-click outcomes.
    """
    rho0 = bell_like_state(alpha)
    channel = build_channel(kind, params)
    weak = KrausSet((weak_measure_op(strengths.m),), complete=False)
    rev = KrausSet((reversal_op(strengths.n),), complete=False)
    rho, _ = apply_kraus_set(weak, rho0.mat)
    rho = channel.raw_apply(rho)
    rho, t = apply_kraus_set(rev, rho, normalize=True)
    return validate(rho), t


def run_unprotected(kind, params, alpha):
    """Channel followed directly by dense coding (success probability 1)."""
    return _result(unprotected_state(kind, params, alpha), 1.0)


def run_protocol(kind, params, strengths, alpha):
    """Weak measurement, correlated channel, reversal, then dense coding.

    Parameters
    ----------
    kind : ChannelKind or str
    params : ChannelParams
    strengths : MeasurementStrengths
    alpha : float
        Amplitude of ``|00>`` in the resource state.

    Returns
    -------
    ProtocolResult

    Raises
    ------
    PostSelectionError
        If the success probability is below ``1e-15``.
    """
    return _result(*protocol_state(kind, params, strengths, alpha))


def evaluate(kind, params, alpha, strengths=None):
    """Unprotected pipeline when ``strengths`` is None, protected otherwise."""
    if strengths is None:
        return run_unprotected(kind, params, alpha)
    return run_protocol(kind, params, strengths, alpha)


def protected_state_elements(kind, params, strengths, alpha):
    """Normalized protected output assembled from the closed forms."""
    kind = ChannelKind.parse(kind)
    elements = PROTECTED[kind](params.lam, params.mu, alpha, strengths.m, strengths.n)
    return validate(elements.to_matrix(normalize=True))


def _chi_at(kind, params, alpha, point):
    try:
        return run_protocol(kind, params, MeasurementStrengths(*point), alpha).chi
    except PostSelectionError:
        return -math.inf


def _better(candidate, incumbent):
    (chi_c, pt_c), (chi_i, pt_i) = candidate, incumbent
    if chi_c > chi_i + TIE_TOL:
        return True
    return abs(chi_c - chi_i) <= TIE_TOL and pt_c < pt_i


def _best_of(kind, params, alpha, points, threads, incumbent=None):
    points = sorted(set(points))
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            values = list(pool.map(lambda p: _chi_at(kind, params, alpha, p), points))
    else:
        values = [_chi_at(kind, params, alpha, p) for p in points]
    best = incumbent
    for chi, pt in zip(values, points):
        if best is None or _better((chi, pt), best):
            best = (chi, pt)
    return best


def optimize_strengths(kind, params, alpha, grid=21, refine_iters=5, threads=None):
    """Grid search over ``(m, n)`` followed by local refinement.

    The coarse grid spans ``[0, 1 - 1e-3]`` in both strengths. Each
    refinement round halves the spacing and re-evaluates a 5x5 stencil
    centred on the incumbent. Values within ``1e-12`` count as ties, which
    go to the smaller ``m`` and then the smaller ``n``, so the result is
    deterministic regardless of ``threads``.

    Returns
    -------
    (MeasurementStrengths, ProtocolResult)
    """
    kind = ChannelKind.parse(kind)
    if int(grid) < 2:
        raise ParameterError("grid must be at least 2")
    if int(refine_iters) < 0:
        raise ParameterError("refine_iters must be non-negative")
    check_unit_interval("alpha", alpha)
    axis = np.linspace(0.0, STRENGTH_CAP, int(grid))
    best = _best_of(kind, params, alpha, itertools.product(axis.tolist(), repeat=2), threads)
    h = STRENGTH_CAP / (int(grid) - 1)
    for _ in range(int(refine_iters)):
        h /= 2.0
        m0, n0 = best[1]
        offsets = [k * h for k in (-2, -1, 0, 1, 2)]
        stencil = [
            (min(max(m0 + dm, 0.0), STRENGTH_CAP), min(max(n0 + dn, 0.0), STRENGTH_CAP))
            for dm in offsets
            for dn in offsets
        ]
        best = _best_of(kind, params, alpha, stencil, threads, incumbent=best)
    strengths = MeasurementStrengths(*best[1])
    return strengths, run_protocol(kind, params, strengths, alpha)
