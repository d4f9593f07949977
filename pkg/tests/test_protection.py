import itertools
import math

import numpy as np
import pytest

from densecoding.channels import ChannelKind, ChannelParams, apply, build_channel
from densecoding.coding import capacity_report
from densecoding.exceptions import ParameterError
from densecoding.protection import (
    STRENGTH_CAP,
    MeasurementStrengths,
    optimize_strengths,
    protected_state_elements,
    reversal_op,
    run_protocol,
    run_unprotected,
    weak_measure_op,
)
from densecoding.states import bell_like_state

from conftest import ALPHA

POINT = ChannelParams(0.5, 0.5)


def test_weak_measure_op():
    np.testing.assert_array_equal(weak_measure_op(0.0), np.eye(4))
    np.testing.assert_allclose(weak_measure_op(0.9), np.diag([1, math.sqrt(0.1), math.sqrt(0.1), 0.1]))
    np.testing.assert_allclose(weak_measure_op(0.75), np.diag([1, 0.5, 0.5, 0.25]))


def test_reversal_op():
    np.testing.assert_array_equal(reversal_op(0.0), np.eye(4))
    np.testing.assert_allclose(reversal_op(0.95), np.diag([0.05, math.sqrt(0.05), math.sqrt(0.05), 1]))
    np.testing.assert_allclose(reversal_op(0.75), np.diag([0.25, 0.5, 0.5, 1]))


def test_operators_are_tensor_products():
    m = 0.37
    single = np.diag([1, math.sqrt(1 - m)])
    np.testing.assert_allclose(weak_measure_op(m), np.kron(single, single), atol=1e-15)
    single = np.diag([math.sqrt(1 - m), 1])
    np.testing.assert_allclose(reversal_op(m), np.kron(single, single), atol=1e-15)


@pytest.mark.parametrize("bad", [-0.1, 1.0, 1.2])
def test_strength_range(bad):
    with pytest.raises(ParameterError):
        weak_measure_op(bad)
    with pytest.raises(ParameterError):
        reversal_op(bad)
    with pytest.raises(ParameterError):
        MeasurementStrengths(bad, 0.5)


def test_protected_ad_reference_point():
    r = run_protocol("ad", POINT, MeasurementStrengths(0.9, 0.95), ALPHA)
    assert r.chi == pytest.approx(1.7494, abs=5e-4)
    assert r.success_prob == pytest.approx(0.0031921875, abs=1e-15)
    assert r.chi == pytest.approx(r.entropy_avg - r.entropy_state, abs=1e-12)


@pytest.mark.parametrize("kind", list(ChannelKind))
@pytest.mark.parametrize("lam,mu", [(0.5, 0.5), (0.1, 0.0), (0.9, 1.0), (0.0, 0.3)])
def test_zero_strengths_match_unprotected(kind, lam, mu):
    params = ChannelParams(lam, mu)
    protected = run_protocol(kind, params, MeasurementStrengths(0.0, 0.0), ALPHA)
    plain = apply(build_channel(kind, params), bell_like_state(ALPHA))
    assert np.max(np.abs(protected.rho_out.mat - plain.mat)) <= 1e-12
    assert abs(protected.chi - capacity_report(plain).chi) <= 1e-12
    assert protected.success_prob == pytest.approx(1.0, abs=1e-12)


def test_unprotected_ad_point():
    assert run_unprotected("ad", POINT, ALPHA).chi == pytest.approx(0.8842, abs=5e-4)


@pytest.mark.parametrize("m", [0.0, 0.3, 0.9, 0.99])
def test_matched_strengths_undo_each_other_without_noise(m):
    r = run_protocol("ad", ChannelParams(1.0, 0.4), MeasurementStrengths(m, m), ALPHA)
    np.testing.assert_allclose(r.rho_out.mat, bell_like_state(ALPHA).mat, atol=1e-12)
    assert r.chi == pytest.approx(2.0, abs=1e-9)


def test_success_probability_monotone_on_ad():
    grid = [0.0, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99]
    for lam, mu in itertools.product((0.25, 0.5, 0.75), (0.0, 0.5, 1.0)):
        params = ChannelParams(lam, mu)
        t = {(m, n): run_protocol("ad", params, MeasurementStrengths(m, n), ALPHA).success_prob
             for m in grid for n in grid}
        for m, n in t:
            i, j = grid.index(m), grid.index(n)
            if i + 1 < len(grid):
                assert t[grid[i + 1], n] <= t[m, n] + 1e-15
            if j + 1 < len(grid):
                assert t[m, grid[j + 1]] <= t[m, n] + 1e-15


@pytest.mark.parametrize("kind", list(ChannelKind))
def test_closed_form_matches_pipeline(kind):
    grid = (0.0, 0.25, 0.5, 0.75)
    strengths = grid + (0.9, 0.95, 0.99)
    for lam, mu, m, n in itertools.product(grid, grid, strengths, strengths):
        params = ChannelParams(lam, mu)
        s = MeasurementStrengths(m, n)
        r = run_protocol(kind, params, s, ALPHA)
        closed = protected_state_elements(kind, params, s, ALPHA)
        assert np.max(np.abs(closed.mat - r.rho_out.mat)) <= 1e-10
        assert 0.0 < r.success_prob <= 1.0 + 1e-12
        assert min(r.rho_out.eigenvalues) >= -1e-9


def test_protected_elements_reference_point():
    rho = protected_state_elements("ad", POINT, MeasurementStrengths(0.9, 0.95), ALPHA).mat
    np.testing.assert_allclose(np.diag(rho).real, [0.3931, 0.0098, 0.0098, 0.5874], atol=1e-4)
    assert rho[0, 3].real == pytest.approx(0.4727, abs=1e-4)


def test_optimizer_ad_beats_reference_point():
    s, r = optimize_strengths("ad", POINT, ALPHA, grid=21, refine_iters=5)
    assert r.chi >= 1.7494
    assert 0.0 <= s.m <= STRENGTH_CAP and 0.0 <= s.n <= STRENGTH_CAP


def test_optimizer_pd_marginal():
    base = run_unprotected("pd", POINT, ALPHA).chi
    _, r = optimize_strengths("pd", POINT, ALPHA)
    assert -1e-12 <= r.chi - base <= 0.05


@pytest.mark.parametrize("kind", list(ChannelKind))
def test_optimizer_identity_channel(kind):
    s, r = optimize_strengths(kind, ChannelParams(1.0, 0.5), ALPHA, grid=6, refine_iters=2)
    assert (s.m, s.n) == (0.0, 0.0)
    assert r.chi == pytest.approx(2.0, abs=1e-9)


def test_optimizer_deterministic_across_threads():
    a = optimize_strengths("ad", ChannelParams(0.3, 0.7), 0.6, grid=7, refine_iters=3)
    b = optimize_strengths("ad", ChannelParams(0.3, 0.7), 0.6, grid=7, refine_iters=3, threads=4)
    assert a[0] == b[0]
    assert a[1].chi == b[1].chi


def test_optimizer_argument_checks():
    with pytest.raises(ParameterError):
        optimize_strengths("ad", POINT, ALPHA, grid=1)
    with pytest.raises(ParameterError):
        optimize_strengths("ad", POINT, ALPHA, refine_iters=-1)
