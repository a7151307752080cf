import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hgineq import (
    InvalidParameterError,
    annulus_cutoff,
    constant_profile,
    exp_power_profile,
    gaussian_profile,
    log_gaussian_profile,
    power_profile,
    smooth_step_profile,
)

R = np.geomspace(0.01, 100.0, 257)


def fd_derivative(prof, r, h_rel=1e-6):
    h = h_rel * r
    return (prof(r + h) - prof(r - h)) / (2 * h)


def test_constant_profile():
    p = constant_profile(3.5)
    stack = p.derivatives(R, 3)
    assert np.all(stack[0] == 3.5)
    assert np.all(stack[1:] == 0.0)


def test_power_profile_closed_form():
    p = power_profile(-2.5, coeff=2.0)
    r = np.array([0.5, 1.0, 4.0])
    stack = p.derivatives(r, 3)
    assert np.allclose(stack[0], 2.0 * r**-2.5, rtol=1e-14)
    assert np.allclose(stack[1], 2.0 * -2.5 * r**-3.5, rtol=1e-14)
    assert np.allclose(stack[2], 2.0 * -2.5 * -3.5 * r**-4.5, rtol=1e-14)
    assert np.allclose(stack[3], 2.0 * -2.5 * -3.5 * -4.5 * r**-5.5, rtol=1e-14)


def test_gaussian_profile_closed_form():
    g = gaussian_profile(1.0)  # exp(-r^2/2)
    r = np.array([0.3, 1.0, 2.2])
    stack = g.derivatives(r, 2)
    v = np.exp(-(r**2) / 2)
    assert np.allclose(stack[0], v, rtol=1e-14)
    assert np.allclose(stack[1], -r * v, rtol=1e-14)
    assert np.allclose(stack[2], (r**2 - 1) * v, rtol=1e-13)


def test_exp_power_profile_derivatives_vs_fd():
    p = exp_power_profile(0.7, -1.3, r_ref=1.0)
    r = np.geomspace(0.5, 5.0, 41)
    assert np.allclose(p.derivative(1)(r), fd_derivative(p, r), rtol=1e-7, atol=1e-12)
    with pytest.raises(InvalidParameterError):
        exp_power_profile(1.0, 0.0)


def test_log_gaussian_profile_vs_fd():
    p = log_gaussian_profile(2.0, 0.5, 0.3)
    r = np.geomspace(0.2, 10.0, 41)
    v = 2.0 * np.exp(-((np.log(r) - 0.5) ** 2) / (2 * 0.3**2))
    assert np.allclose(p(r), v, rtol=1e-13)
    assert np.allclose(p.derivative(1)(r), fd_derivative(p, r), rtol=1e-6, atol=1e-12)
    # complex amplitude flows through the whole stack
    pc = log_gaussian_profile(1.0 + 2.0j, 0.0, 0.4)
    stack = pc.derivatives(r, 2)
    assert stack.dtype == complex
    assert np.allclose(stack[0], (1.0 + 2.0j) * np.exp(-np.log(r) ** 2 / 0.32), rtol=1e-12)


def test_smooth_step_plateaus_are_exact():
    s = smooth_step_profile(1.0, 2.0)
    stack_lo = s.derivatives(np.array([0.5, 0.9999, 1.0]), 4)
    stack_hi = s.derivatives(np.array([2.0, 2.0001, 7.0]), 4)
    assert np.all(stack_lo[0] == 0.0)
    assert np.all(stack_hi[0] == 1.0)
    assert np.all(stack_lo[1:] == 0.0)
    assert np.all(stack_hi[1:] == 0.0)
    mid = s(np.array([1.5]))
    assert 0.0 < mid[0] < 1.0


def test_smooth_step_falling():
    s = smooth_step_profile(1.0, 2.0, rising=False)
    assert s(np.array([0.5]))[0] == 1.0
    assert s(np.array([3.0]))[0] == 0.0


@settings(max_examples=40, deadline=None)
@given(t=st.floats(0.01, 0.99))
def test_smooth_step_monotone(t):
    s = smooth_step_profile(0.0, 1.0)
    h = 1e-4
    lo, hi = max(t - h, 0.0), min(t + h, 1.0)
    a, b = s(np.array([lo]))[0], s(np.array([hi]))[0]
    assert b >= a - 1e-15


def test_annulus_cutoff_shape():
    chi = annulus_cutoff(0.5, 1.0, 4.0, 8.0)
    r = np.array([0.4, 0.5, 0.75, 1.0, 2.0, 4.0, 6.0, 8.0, 9.0])
    v = chi(r)
    assert v[0] == 0.0 and v[1] == 0.0
    assert 0.0 < v[2] < 1.0
    assert v[3] == 1.0 and v[4] == 1.0 and v[5] == 1.0
    assert 0.0 < v[6] < 1.0
    assert v[7] == 0.0 and v[8] == 0.0
    assert chi.support == (0.5, 8.0)
    # all derivatives vanish identically on the plateau and outside
    stack = chi.derivatives(np.array([0.4, 2.0, 9.0]), 3)
    assert np.all(stack[1:] == 0.0)


def test_annulus_cutoff_validation():
    with pytest.raises(InvalidParameterError):
        annulus_cutoff(0.0, 1.0, 2.0, 3.0)
    with pytest.raises(InvalidParameterError):
        annulus_cutoff(1.0, 0.5, 2.0, 3.0)
    with pytest.raises(InvalidParameterError):
        annulus_cutoff(0.5, 1.0, 3.5, 3.0)


def test_product_rule_leibniz():
    f = gaussian_profile(1.0)
    g = power_profile(1.5)
    fg = f * g
    r = np.geomspace(0.3, 3.0, 17)
    sf, sg, sfg = f.derivatives(r, 2), g.derivatives(r, 2), fg.derivatives(r, 2)
    assert np.allclose(sfg[0], sf[0] * sg[0], rtol=1e-14)
    assert np.allclose(sfg[1], sf[1] * sg[0] + sf[0] * sg[1], rtol=1e-13)
    assert np.allclose(
        sfg[2], sf[2] * sg[0] + 2 * sf[1] * sg[1] + sf[0] * sg[2], rtol=1e-13
    )


def test_scalar_multiples_and_sums():
    f = gaussian_profile(1.0)
    r = np.array([0.7, 1.4])
    assert np.allclose((2.5 * f)(r), 2.5 * f(r))
    assert np.allclose((f + f)(r), 2.0 * f(r))
    assert np.allclose((-f)(r), -f(r))
    assert np.allclose((f - 0.5 * f)(r), 0.5 * f(r))


def test_scale_argument_chain_rule():
    f = log_gaussian_profile(1.0, 0.0, 0.5)
    lam = 1.7
    g = f.scale_argument(lam)
    r = np.geomspace(0.5, 2.0, 9)
    assert np.allclose(g(r), f(lam * r), rtol=1e-14)
    assert np.allclose(g.derivative(1)(r), lam * f.derivative(1)(lam * r), rtol=1e-13)
    assert np.allclose(
        g.derivative(2)(r), lam**2 * f.derivative(2)(lam * r), rtol=1e-13
    )


def test_support_metadata_propagates():
    chi = annulus_cutoff(0.5, 1.0, 2.0, 4.0)
    f = gaussian_profile(1.0)  # support None: everywhere
    prod = chi * f
    assert prod.support == (0.5, 4.0)
    # with_support narrows the declared window (masking happens at the
    # field layer, not here)
    clipped = prod.with_support((1.0, 2.0))
    assert clipped.support == (1.0, 2.0)
    assert prod.support == (0.5, 4.0)  # original untouched
    narrower = annulus_cutoff(1.0, 1.5, 2.0, 3.0)
    assert (chi * narrower).support == (1.0, 3.0)
