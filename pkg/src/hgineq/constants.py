"""Closed-form constants for the weighted radial inequalities.

Every constant is assembled from first-order factors so that iterated
constants are *bit-identical* to the product of their single-step
counterparts.  A vanishing factor raises
:class:`~hgineq.errors.DegenerateConstantError` carrying the 0-based index
of the offending factor.
"""

from __future__ import annotations

import math

from .errors import DegenerateConstantError, InvalidParameterError


def validate_p(p, upper=None):
    """Require ``1 < p`` finite (and optionally ``p < upper``), else raise."""
    if not (isinstance(p, (int, float)) and math.isfinite(p) and p > 1.0):
        raise InvalidParameterError("p must be a finite number > 1")
    if upper is not None and not p < upper:
        raise InvalidParameterError(f"p must satisfy p < {upper}")


_check_p = validate_p


def ckn_constant(q_dim, gamma, p):
    """``|Q - gamma| / p`` — the sharp constant of the main inequality.

    Zero (``gamma == Q``) is allowed: the inequality degenerates to the
    trivial statement ``0 <= rhs``.
    """
    _check_p(p)
    return abs(q_dim - gamma) / p


def hardy_step_constant(q_dim, p, alpha):
    """``p / |Q - p (alpha + 1)|`` — one weighted first-order step."""
    _check_p(p)
    d = q_dim - p * (alpha + 1.0)
    if d == 0.0:
        raise DegenerateConstantError(
            f"Q - p(alpha+1) vanishes at alpha={alpha:g}", factor_index=0
        )
    return p / abs(d)


def iterated_hardy_constant(q_dim, p, theta, k):
    """Order-``k`` constant: the literal product of ``k`` first-order steps
    at shifted weights ``theta, theta - 1, ..., theta - k + 1``."""
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    out = 1.0
    for j in range(k):
        try:
            out *= hardy_step_constant(q_dim, p, theta - j)
        except DegenerateConstantError:
            raise DegenerateConstantError(
                f"factor j={j} vanishes: Q = p(theta+1-j) at theta={theta:g}",
                factor_index=j,
            ) from None
    return out


def ladder_constant_alpha(q_dim, p, alpha, m):
    """``p^m / prod_{j<m} |Q - p(alpha - j)|`` (first factor of the
    two-sided iterated bound); ``m = 0`` gives 1."""
    _check_p(p)
    if m < 0:
        raise InvalidParameterError("m must be >= 0")
    out = 1.0
    for j in range(m):
        d = q_dim - p * (alpha - j)
        if d == 0.0:
            raise DegenerateConstantError(
                f"factor j={j} vanishes: Q = p(alpha - j)", factor_index=j
            )
        out *= p / abs(d)
    return out


def ladder_constant_beta(q_dim, p, beta, k):
    """``[p^k / prod_{j<k} |Q - p(beta/(p-1) - j)|]^(p-1)`` (second factor
    of the two-sided iterated bound); ``k = 0`` gives 1."""
    _check_p(p)
    if k < 0:
        raise InvalidParameterError("k must be >= 0")
    base = 1.0
    for j in range(k):
        d = q_dim - p * (beta / (p - 1.0) - j)
        if d == 0.0:
            raise DegenerateConstantError(
                f"factor j={j} vanishes: Q = p(beta/(p-1) - j)", factor_index=j
            )
        base *= p / abs(d)
    return base ** (p - 1.0)


def uncertainty_constant(q_dim, p):
    """``p / (Q - p)`` for the L^2 uncertainty bound; needs ``1 < p < Q``."""
    _check_p(p, upper=q_dim)
    return p / (q_dim - p)


def l2_iterated_constant(q_dim, alpha, k):
    """``prod_{j<k} |(Q-2)/2 - (alpha + j)|^{-1}`` from the exact L^2
    remainder identity."""
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    out = 1.0
    for j in range(k):
        d = 0.5 * (q_dim - 2.0) - (alpha + j)
        if d == 0.0:
            raise DegenerateConstantError(
                f"factor j={j} vanishes: (Q-2)/2 = alpha + j", factor_index=j
            )
        out /= abs(d)
    return out


def combined_first_constant(q_dim, beta, k):
    """``prod_{j<k} |(Q-2)/2 - (beta - k + j)|^{-1}`` — pairs one radial
    derivative against order ``k``."""
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    out = 1.0
    for j in range(k):
        d = 0.5 * (q_dim - 2.0) - (beta - k + j)
        if d == 0.0:
            raise DegenerateConstantError(
                f"factor j={j} vanishes: (Q-2)/2 = beta - k + j", factor_index=j
            )
        out /= abs(d)
    return out


def combined_high_constant(q_dim, alpha, k):
    """``prod_{j<k} |(Q-2)/2 - (alpha - k + j)|^{-1}`` — pairs order
    ``k + 1`` against the undifferentiated field."""
    if k < 1:
        raise InvalidParameterError("k must be >= 1")
    out = 1.0
    for j in range(k):
        d = 0.5 * (q_dim - 2.0) - (alpha - k + j)
        if d == 0.0:
            raise DegenerateConstantError(
                f"factor j={j} vanishes: (Q-2)/2 = alpha - k + j", factor_index=j
            )
        out /= abs(d)
    return out


def constant_table(q_dim, p, alpha=None, beta=None, theta=None, k=None, m=None):
    """All constants computable from the given parameters.

    Returns a dict mapping constant name to ``{"value": v}`` or, when the
    defining product degenerates, ``{"degenerate": True, "factor_index": j,
    "reason": ...}``.
    """
    jobs = {}
    if alpha is not None and beta is not None:
        jobs["ckn"] = lambda: ckn_constant(q_dim, alpha + beta + 1.0, p)
    if alpha is not None:
        jobs["hardy_step"] = lambda: hardy_step_constant(q_dim, p, alpha)
    if p is not None and p < q_dim:
        jobs["uncertainty"] = lambda: uncertainty_constant(q_dim, p)
    if theta is not None and k is not None:
        jobs["iterated_hardy"] = lambda: iterated_hardy_constant(q_dim, p, theta, k)
    if alpha is not None and m is not None:
        jobs["ladder_alpha"] = lambda: ladder_constant_alpha(q_dim, p, alpha, m)
    if beta is not None and k is not None:
        jobs["ladder_beta"] = lambda: ladder_constant_beta(q_dim, p, beta, k)
    if alpha is not None and k is not None and k >= 1:
        jobs["l2_iterated"] = lambda: l2_iterated_constant(q_dim, alpha, k)
        jobs["combined_high"] = lambda: combined_high_constant(q_dim, alpha, k)
    if beta is not None and k is not None and k >= 1:
        jobs["combined_first"] = lambda: combined_first_constant(q_dim, beta, k)
    table = {}
    for name, job in jobs.items():
        try:
            table[name] = {"value": job()}
        except DegenerateConstantError as exc:
            table[name] = {
                "degenerate": True,
                "factor_index": exc.factor_index,
                "reason": str(exc),
            }
    return table
