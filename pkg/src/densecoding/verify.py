"""Cross-check the closed-form states against the generic Kraus pipeline."""

from dataclasses import dataclass
import itertools
import math

import numpy as np

from . import closed_form
from .channels import ChannelKind, ChannelParams
from .protection import MeasurementStrengths, protocol_state, unprotected_state

RESIDUAL_TOL = 1e-10
DEFAULT_CHANNEL_GRID = (0.0, 0.25, 0.5, 0.75, 1.0)
DEFAULT_STRENGTH_GRID = (0.0, 0.5, 0.9, 0.95, 0.99)
DEFAULT_ALPHAS = (math.sqrt(0.5), 0.6)


@dataclass(frozen=True)
class CrossValidation:
    kind: ChannelKind
    lam: float
    mu: float
    alpha: float
    m: float
    n: float
    residual: float
    passed: bool


def cross_validate(kind, lam, mu, alpha, m=0.0, n=0.0, tol=RESIDUAL_TOL):
    """Max entrywise difference between closed form and pipeline.

    ``m = n = 0`` compares the unprotected formulas against the bare
    channel; any other strengths compare the protected formulas against
    the full measurement protocol. Failures are reported, not raised.
    """
    kind = ChannelKind.parse(kind)
    params = ChannelParams(lam, mu)
    if m == 0.0 and n == 0.0:
        expected = closed_form.UNPROTECTED[kind](lam, mu, alpha).to_matrix()
        actual = unprotected_state(kind, params, alpha).mat
    else:
        expected = closed_form.PROTECTED[kind](lam, mu, alpha, m, n).to_matrix()
        actual = protocol_state(kind, params, MeasurementStrengths(m, n), alpha)[0].mat
    residual = float(np.max(np.abs(expected - actual)))
    return CrossValidation(kind, lam, mu, alpha, m, n, residual, residual <= tol)


def verification_grid(
    kinds=tuple(ChannelKind),
    channel_grid=DEFAULT_CHANNEL_GRID,
    strength_grid=DEFAULT_STRENGTH_GRID,
    alphas=DEFAULT_ALPHAS,
):
    """Yield a :class:`CrossValidation` for every grid point, in a fixed order."""
    for kind in kinds:
        for lam, mu, m, n, alpha in itertools.product(
            channel_grid, channel_grid, strength_grid, strength_grid, alphas
        ):
            yield cross_validate(kind, lam, mu, alpha, m, n)


def worst_residuals(reports):
    worst = {}
    for r in reports:
        prev = worst.get(r.kind)
        if prev is None or r.residual > prev.residual:
            worst[r.kind] = r
    return worst
