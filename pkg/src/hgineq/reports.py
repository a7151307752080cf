"""Inequality and identity verification reports.

Each ``*_report`` routine evaluates both sides of one functional
inequality (or exact identity) for a concrete field and returns an
:class:`InequalityReport`.  Margins are twice the sum of the propagated
quadrature error estimates plus a floating-point cushion, so ``satisfied``
means "holds within the numerics", never "holds by fiat".
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .calculus import nth_radial_derivative, weighted_combo_l2, weighted_lp_norm
from .constants import (
    ckn_constant,
    combined_first_constant,
    combined_high_constant,
    hardy_step_constant,
    iterated_hardy_constant,
    l2_iterated_constant,
    ladder_constant_alpha,
    ladder_constant_beta,
    uncertainty_constant,
)
from .errors import InvalidParameterError
from .quadrature import DEFAULT_CONFIG

_EPS_CUSHION = 32.0 * np.finfo(float).eps


@dataclass
class InequalityReport:
    """Outcome of one verified inequality or identity.

    ``kind`` is ``"inequality"`` (checks ``lhs <= rhs + margin``) or
    ``"identity"`` (checks ``|lhs - rhs| <= margin``).  ``trivial`` marks
    parameter points where the constant vanishes and the bound holds for
    free.  ``detail`` carries the raw norm values and error estimates.
    """

    check_id: str
    group: str
    norm: str
    field_id: str
    kind: str
    params: dict
    constant: float
    lhs: float
    rhs: float
    margin: float
    satisfied: bool
    trivial: bool = False
    config_digest: str = ""
    detail: dict = field(default_factory=dict)

    def __post_init__(self):
        # numpy scalars sneak in from the quadrature layer; pin the
        # comparison fields to builtins so serialization stays plain
        self.constant = float(self.constant)
        self.lhs = float(self.lhs)
        self.rhs = float(self.rhs)
        self.margin = float(self.margin)
        self.satisfied = bool(self.satisfied)
        self.trivial = bool(self.trivial)

    @property
    def ratio(self):
        if self.rhs > 0:
            return self.lhs / self.rhs
        return 0.0 if self.lhs == 0 else float("inf")

    @property
    def residual(self):
        return abs(self.lhs - self.rhs)


def _check_p(p):
    if not (np.isfinite(p) and p > 1.0):
        raise InvalidParameterError("p must be a finite number > 1")


def _cushion(lhs, rhs):
    return _EPS_CUSHION * (abs(lhs) + abs(rhs) + 1e-300)


def _product_pow_margin(b, be, c, ce, p):
    """Error of ``b * c**(p-1)`` from the errors of ``b`` and ``c``."""
    if c <= 0:
        return be * (ce ** (p - 1.0) if ce > 0 else 0.0)
    return be * c ** (p - 1.0) + b * (p - 1.0) * c ** (p - 2.0) * ce


def ckn_report(group, norm, f, p, alpha, beta, config=None, mode="auto", check_id="ckn",
               extra_params=None):
    """Main weighted inequality: ``(|Q-gamma|/p) ||f N^(-gamma/p)||_p^p <=
    ||Rf N^(-alpha)||_p * ||f N^(-beta/(p-1))||_p^(p-1)`` with
    ``gamma = alpha + beta + 1``."""
    _check_p(p)
    config = config or DEFAULT_CONFIG
    q_dim = group.homogeneous_dimension
    gamma = alpha + beta + 1.0
    const = ckn_constant(q_dim, gamma, p)
    rf = nth_radial_derivative(group, norm, f, 1, mode=mode)
    a_val, a_err = weighted_lp_norm(group, norm, f, gamma / p, p, config)
    b_val, b_err = weighted_lp_norm(group, norm, rf, alpha, p, config)
    c_val, c_err = weighted_lp_norm(group, norm, f, beta / (p - 1.0), p, config)
    lhs = const * a_val**p
    rhs = b_val * c_val ** (p - 1.0)
    d_lhs = const * p * a_val ** (p - 1.0) * a_err if a_val > 0 else const * a_err
    d_rhs = _product_pow_margin(b_val, b_err, c_val, c_err, p)
    margin = 2.0 * (d_lhs + d_rhs) + _cushion(lhs, rhs)
    params = {"p": p, "alpha": alpha, "beta": beta}
    if extra_params:
        params.update(extra_params)
    return InequalityReport(
        check_id=check_id,
        group=group.name,
        norm=norm.kind,
        field_id=f.field_id,
        kind="inequality",
        params=params,
        constant=const,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        satisfied=lhs <= rhs + margin,
        trivial=(gamma == q_dim),
        config_digest=config.digest(),
        detail={
            "gamma": gamma,
            "norm_lhs": (a_val, a_err),
            "norm_deriv": (b_val, b_err),
            "norm_dual": (c_val, c_err),
        },
    )


def hardy_report(group, norm, f, p, alpha=0.0, config=None, mode="auto"):
    """Weighted first-order bound: ``||f N^-(alpha+1)||_p <=
    (p/|Q - p(alpha+1)|) ||Rf N^-alpha||_p``."""
    _check_p(p)
    config = config or DEFAULT_CONFIG
    q_dim = group.homogeneous_dimension
    const = hardy_step_constant(q_dim, p, alpha)
    rf = nth_radial_derivative(group, norm, f, 1, mode=mode)
    lhs, lhs_err = weighted_lp_norm(group, norm, f, alpha + 1.0, p, config)
    b_val, b_err = weighted_lp_norm(group, norm, rf, alpha, p, config)
    rhs = const * b_val
    margin = 2.0 * (lhs_err + const * b_err) + _cushion(lhs, rhs)
    return InequalityReport(
        check_id="hardy",
        group=group.name,
        norm=norm.kind,
        field_id=f.field_id,
        kind="inequality",
        params={"p": p, "alpha": alpha},
        constant=const,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        satisfied=lhs <= rhs + margin,
        config_digest=config.digest(),
        detail={"norm_deriv": (b_val, b_err)},
    )


def uncertainty_report(group, norm, f, p, variant="up1p", alpha=0.0, config=None, mode="auto"):
    """Uncertainty-type bounds.

    ``up1p``: ``||f||_2^2 <= (p/(Q-p)) ||Rf||_p ||N f||_{p/(p-1)}`` for
    ``1 < p < Q``.  ``hpw1`` / ``hpw2`` are the two classical weighted
    corollaries of the main inequality (``beta = alpha(p-1) - 1`` and
    ``(alpha, beta) = (-p, p-1)`` respectively).
    """
    if variant == "hpw1":
        return ckn_report(
            group, norm, f, p, alpha, alpha * (p - 1.0) - 1.0, config=config, mode=mode,
            check_id="hpw1",
        )
    if variant == "hpw2":
        return ckn_report(
            group, norm, f, p, -p, p - 1.0, config=config, mode=mode, check_id="hpw2"
        )
    if variant != "up1p":
        raise InvalidParameterError(f"unknown uncertainty variant {variant!r}")
    _check_p(p)
    config = config or DEFAULT_CONFIG
    q_dim = group.homogeneous_dimension
    const = uncertainty_constant(q_dim, p)
    rf = nth_radial_derivative(group, norm, f, 1, mode=mode)
    a_val, a_err = weighted_lp_norm(group, norm, f, 0.0, 2.0, config)
    b_val, b_err = weighted_lp_norm(group, norm, rf, 0.0, p, config)
    c_val, c_err = weighted_lp_norm(group, norm, f, -1.0, p / (p - 1.0), config)
    lhs = a_val**2
    rhs = const * b_val * c_val
    margin = 2.0 * (2.0 * a_val * a_err + const * (b_err * c_val + b_val * c_err)) + _cushion(
        lhs, rhs
    )
    return InequalityReport(
        check_id="up1p",
        group=group.name,
        norm=norm.kind,
        field_id=f.field_id,
        kind="inequality",
        params={"p": p},
        constant=const,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        satisfied=lhs <= rhs + margin,
        config_digest=config.digest(),
        detail={
            "norm_l2": (a_val, a_err),
            "norm_deriv": (b_val, b_err),
            "norm_moment": (c_val, c_err),
        },
    )


def higher_order_report(group, norm, f, p, theta, k, config=None, mode="auto"):
    """Iterated bound ``||f N^-(theta+1)||_p <= A_(theta,k)
    ||R^k f N^-(theta+1-k)||_p``."""
    _check_p(p)
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    config = config or DEFAULT_CONFIG
    q_dim = group.homogeneous_dimension
    const = iterated_hardy_constant(q_dim, p, theta, k)
    rkf = nth_radial_derivative(group, norm, f, k, mode=mode)
    lhs, lhs_err = weighted_lp_norm(group, norm, f, theta + 1.0, p, config)
    b_val, b_err = weighted_lp_norm(group, norm, rkf, theta + 1.0 - k, p, config)
    rhs = const * b_val
    margin = 2.0 * (lhs_err + const * b_err) + _cushion(lhs, rhs)
    return InequalityReport(
        check_id="higher",
        group=group.name,
        norm=norm.kind,
        field_id=f.field_id,
        kind="inequality",
        params={"p": p, "theta": theta, "k": k},
        constant=const,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        satisfied=lhs <= rhs + margin,
        config_digest=config.digest(),
        detail={"norm_deriv": (b_val, b_err)},
    )


def higher_order_pair_report(group, norm, f, p, alpha, beta, k=0, m=0, config=None, mode="auto"):
    """Two-sided iterated bound: derivatives of order ``m+1`` and ``k``
    paired against the main inequality's left-hand side.

    ``k = m = 0`` reproduces the main inequality exactly.
    """
    _check_p(p)
    if k < 0 or m < 0:
        raise InvalidParameterError("k and m must be >= 0")
    config = config or DEFAULT_CONFIG
    q_dim = group.homogeneous_dimension
    gamma = alpha + beta + 1.0
    base = ckn_constant(q_dim, gamma, p)
    c_alpha = ladder_constant_alpha(q_dim, p, alpha, m)
    c_beta = ladder_constant_beta(q_dim, p, beta, k)
    const = c_alpha * c_beta
    f_hi = nth_radial_derivative(group, norm, f, m + 1, mode=mode)
    f_lo = nth_radial_derivative(group, norm, f, k, mode=mode)
    a_val, a_err = weighted_lp_norm(group, norm, f, gamma / p, p, config)
    b_val, b_err = weighted_lp_norm(group, norm, f_hi, alpha - m, p, config)
    c_val, c_err = weighted_lp_norm(group, norm, f_lo, beta / (p - 1.0) - k, p, config)
    lhs = base * a_val**p
    rhs = const * b_val * c_val ** (p - 1.0)
    d_lhs = base * p * a_val ** (p - 1.0) * a_err if a_val > 0 else base * a_err
    d_rhs = const * _product_pow_margin(b_val, b_err, c_val, c_err, p)
    margin = 2.0 * (d_lhs + d_rhs) + _cushion(lhs, rhs)
    return InequalityReport(
        check_id="pair",
        group=group.name,
        norm=norm.kind,
        field_id=f.field_id,
        kind="inequality",
        params={"p": p, "alpha": alpha, "beta": beta, "k": k, "m": m},
        constant=const,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        satisfied=lhs <= rhs + margin,
        trivial=(gamma == q_dim),
        config_digest=config.digest(),
        detail={
            "gamma": gamma,
            "base_constant": base,
            "norm_lhs": (a_val, a_err),
            "norm_high": (b_val, b_err),
            "norm_low": (c_val, c_err),
        },
    )


def l2_identity_report(group, norm, f, alpha=0.0, k=1, config=None, mode="auto",
                       extra_rel_margin=0.0):
    """Exact L^2 decomposition of ``||R^k f N^-alpha||_2^2``.

    The squared norm equals a weighted norm of ``f`` plus an explicit sum
    of nonnegative remainders — an identity, valid for every ``alpha`` and
    ``k >= 1`` (complex fields included).  ``extra_rel_margin`` widens the
    tolerance for finite-difference evaluation modes.
    """
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    config = config or DEFAULT_CONFIG
    q_dim = group.homogeneous_dimension
    # signed partial products prod_{j<l} ((Q-2)/2 - (alpha+j)), l = 0..k
    partial = [1.0]
    for j in range(k):
        partial.append(partial[-1] * (0.5 * (q_dim - 2.0) - (alpha + j)))

    rkf = nth_radial_derivative(group, norm, f, k, mode=mode)
    lhs_val, lhs_err = weighted_lp_norm(group, norm, rkf, alpha, 2.0, config)
    lhs = lhs_val**2
    err_sum = 2.0 * lhs_val * lhs_err

    base_val, base_err = weighted_lp_norm(group, norm, f, k + alpha, 2.0, config)
    rhs = partial[k] ** 2 * base_val**2
    err_sum += partial[k] ** 2 * 2.0 * base_val * base_err

    remainders = []
    for ell in range(k):
        coeff = 0.5 * (q_dim - 2.0 * (ell + 1.0 + alpha))
        terms = [(1.0, k - ell, ell + alpha), (coeff, k - ell - 1, ell + 1.0 + alpha)]
        cb_val, cb_err = weighted_combo_l2(group, norm, f, terms, config, mode=mode)
        rhs += partial[ell] ** 2 * cb_val**2
        err_sum += partial[ell] ** 2 * 2.0 * cb_val * cb_err
        remainders.append((cb_val, cb_err))

    margin = 2.0 * err_sum + _cushion(lhs, rhs) + extra_rel_margin * max(abs(lhs), abs(rhs))
    return InequalityReport(
        check_id="l2-identity",
        group=group.name,
        norm=norm.kind,
        field_id=f.field_id,
        kind="identity",
        params={"p": 2.0, "alpha": alpha, "k": k},
        constant=partial[k] ** 2,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        satisfied=abs(lhs - rhs) <= margin,
        config_digest=config.digest(),
        detail={
            "partial_products": partial,
            "base_norm": (base_val, base_err),
            "remainders": remainders,
        },
    )


def l2_sharp_report(group, norm, f, alpha=0.0, k=1, config=None, mode="auto"):
    """Sharp L^2 iterated bound ``||f N^-(k+alpha)||_2 <=
    C ||R^k f N^-alpha||_2`` (needs ``Q >= 3``)."""
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    config = config or DEFAULT_CONFIG
    q_dim = group.homogeneous_dimension
    if q_dim < 3.0:
        raise InvalidParameterError("sharp L^2 iterated bound needs Q >= 3")
    const = l2_iterated_constant(q_dim, alpha, k)
    rkf = nth_radial_derivative(group, norm, f, k, mode=mode)
    lhs, lhs_err = weighted_lp_norm(group, norm, f, k + alpha, 2.0, config)
    b_val, b_err = weighted_lp_norm(group, norm, rkf, alpha, 2.0, config)
    rhs = const * b_val
    margin = 2.0 * (lhs_err + const * b_err) + _cushion(lhs, rhs)
    return InequalityReport(
        check_id="l2-sharp",
        group=group.name,
        norm=norm.kind,
        field_id=f.field_id,
        kind="inequality",
        params={"p": 2.0, "alpha": alpha, "k": k},
        constant=const,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        satisfied=lhs <= rhs + margin,
        config_digest=config.digest(),
        detail={"norm_deriv": (b_val, b_err)},
    )


def combined_report(group, norm, f, alpha, beta, k=1, variant="first", config=None, mode="auto"):
    """L^2 bounds mixing two derivative orders (``p = 2`` throughout).

    ``variant="first"`` pairs ``Rf`` with ``R^k f``; ``variant="high"``
    pairs ``R^(k+1) f`` with ``f`` itself.
    """
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    config = config or DEFAULT_CONFIG
    q_dim = group.homogeneous_dimension
    gamma = alpha + beta + 1.0
    base = ckn_constant(q_dim, gamma, 2.0)
    a_val, a_err = weighted_lp_norm(group, norm, f, gamma / 2.0, 2.0, config)
    lhs = base * a_val**2
    d_lhs = base * 2.0 * a_val * a_err

    if variant == "first":
        const = combined_first_constant(q_dim, beta, k)
        hi = nth_radial_derivative(group, norm, f, 1, mode=mode)
        lo = nth_radial_derivative(group, norm, f, k, mode=mode)
        b_val, b_err = weighted_lp_norm(group, norm, hi, alpha, 2.0, config)
        c_val, c_err = weighted_lp_norm(group, norm, lo, beta - k, 2.0, config)
        check_id = "combined-first"
    elif variant == "high":
        const = combined_high_constant(q_dim, alpha, k)
        hi = nth_radial_derivative(group, norm, f, k + 1, mode=mode)
        b_val, b_err = weighted_lp_norm(group, norm, hi, alpha - k, 2.0, config)
        c_val, c_err = weighted_lp_norm(group, norm, f, beta, 2.0, config)
        check_id = "combined-high"
    else:
        raise InvalidParameterError(f"unknown combined variant {variant!r}")

    rhs = const * b_val * c_val
    margin = 2.0 * (d_lhs + const * (b_err * c_val + b_val * c_err)) + _cushion(lhs, rhs)
    return InequalityReport(
        check_id=check_id,
        group=group.name,
        norm=norm.kind,
        field_id=f.field_id,
        kind="inequality",
        params={"p": 2.0, "alpha": alpha, "beta": beta, "k": k},
        constant=const,
        lhs=lhs,
        rhs=rhs,
        margin=margin,
        satisfied=lhs <= rhs + margin,
        trivial=(gamma == q_dim),
        config_digest=config.digest(),
        detail={
            "gamma": gamma,
            "base_constant": base,
            "norm_lhs": (a_val, a_err),
            "norm_high": (b_val, b_err),
            "norm_low": (c_val, c_err),
        },
    )
