"""Homogeneous quasi-norms on dilation groups.

Every norm ``N`` here satisfies ``N(D_lam x) = lam * N(x)`` exactly (up to
floating point) and vanishes only at the origin.  Smooth norms expose an
analytic Euclidean gradient away from the origin; ``max_scaled`` does not.

Catalog
-------
- ``euclidean``       isotropic groups only; the usual 2-norm.
- ``aniso_power``     ``(sum_i |x_i|**(2M/w_i))**(1/(2M))`` with
                      ``M = max(w)``; smooth away from 0 whenever every
                      exponent ``2M/w_i`` exceeds 1 (always true here since
                      ``2M/w_i >= 2``).
- ``max_scaled``      ``max_i |x_i|**(1/w_i)``; homogeneous but non-smooth.
- ``koranyi``         Heisenberg only: ``((x1^2+x2^2)^2 + 16 x3^2)**(1/4)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import IncompatibleNormError, InvalidParameterError, MissingDerivativeError
from .groups import GroupSpec, dilate

NORM_KINDS = ("euclidean", "aniso_power", "max_scaled", "koranyi")

_NORM_ALIASES = {
    "euclid": "euclidean",
    "euclidean": "euclidean",
    "aniso": "aniso_power",
    "aniso_power": "aniso_power",
    "max": "max_scaled",
    "max_scaled": "max_scaled",
    "koranyi": "koranyi",
}


@dataclass(frozen=True)
class QuasiNormSpec:
    """A homogeneous quasi-norm bound to a specific group.

    Instances are callable: ``norm(x)`` returns the norm of points with
    shape ``(..., n)``.
    """

    kind: str
    group: GroupSpec = field(repr=False)
    name: str = ""

    def __post_init__(self):
        if self.kind not in NORM_KINDS:
            raise IncompatibleNormError(f"unknown norm kind {self.kind!r}")
        if not self.name:
            object.__setattr__(self, "name", self.kind)

    @property
    def smooth(self):
        """Whether an analytic gradient is available away from the origin."""
        return self.kind != "max_scaled"

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        w = self.group.weight_array()
        if self.kind == "euclidean":
            return np.sqrt(np.sum(x * x, axis=-1))
        if self.kind == "koranyi":
            u = x[..., 0] ** 2 + x[..., 1] ** 2
            return (u * u + 16.0 * x[..., 2] ** 2) ** 0.25
        if self.kind == "aniso_power":
            m2 = 2.0 * max(w)
            s = np.sum(np.abs(x) ** (m2 / w), axis=-1)
            return s ** (1.0 / m2)
        # max_scaled
        return np.max(np.abs(x) ** (1.0 / w), axis=-1)

    def gradient(self, x):
        """Euclidean gradient of the norm, shape ``(..., n)``.

        Raises
        ------
        MissingDerivativeError
            For the non-smooth ``max_scaled`` norm.
        """
        if not self.smooth:
            raise MissingDerivativeError("max_scaled norm has no gradient")
        x = np.asarray(x, dtype=float)
        if self.kind == "euclidean":
            r = self(x)
            return x / r[..., None]
        if self.kind == "koranyi":
            u = x[..., 0] ** 2 + x[..., 1] ** 2
            v = u * u + 16.0 * x[..., 2] ** 2
            f = v ** (-0.75)
            g = np.empty_like(x)
            g[..., 0] = u * x[..., 0] * f
            g[..., 1] = u * x[..., 1] * f
            g[..., 2] = 8.0 * x[..., 2] * f
            return g
        # aniso_power
        w = self.group.weight_array()
        m2 = 2.0 * max(w)
        q = m2 / w
        s = np.sum(np.abs(x) ** q, axis=-1)
        front = (1.0 / m2) * s ** (1.0 / m2 - 1.0)
        return front[..., None] * q * np.abs(x) ** (q - 1.0) * np.sign(x)

    def bounding_halfwidths(self, r):
        """Per-coordinate halfwidths of a box containing ``{N(x) <= r}``.

        The returned box is tight for ``max_scaled`` / ``aniso_power`` and
        for the Koranyi ball (``|x3| <= r^2/4``); for ``euclidean`` it is
        the circumscribed cube.
        """
        if r <= 0:
            raise InvalidParameterError("radius must be positive")
        w = self.group.weight_array()
        if self.kind == "koranyi":
            return np.array([r, r, r * r / 4.0])
        return np.asarray(r) ** w


def make_norm(group, kind):
    """Build a quasi-norm on ``group``, validating compatibility."""
    kind = _NORM_ALIASES.get(kind, kind)
    if kind not in NORM_KINDS:
        raise IncompatibleNormError(f"unknown norm kind {kind!r}")
    if kind == "euclidean" and any(w != 1.0 for w in group.weights):
        raise IncompatibleNormError("euclidean norm requires isotropic weights")
    if kind == "koranyi" and group.kind != "heisenberg":
        raise IncompatibleNormError("koranyi norm is defined on the Heisenberg group only")
    return QuasiNormSpec(kind=kind, group=group)


def default_norm(group):
    """Canonical norm per group kind (euclidean / aniso_power / koranyi)."""
    if group.kind == "abelian_isotropic":
        return make_norm(group, "euclidean")
    if group.kind == "heisenberg":
        return make_norm(group, "koranyi")
    return make_norm(group, "aniso_power")


def homogeneity_deviation(norm, samples=256, seed=0, lam_range=(1e-3, 1e3)):
    """Max relative violation of ``N(D_lam x) = lam N(x)`` over random draws.

    Used as a self-test; for all catalog norms this is at floating-point
    level (``<= ~1e-12``).
    """
    if samples < 1:
        raise InvalidParameterError("samples must be >= 1")
    rng = np.random.default_rng(seed)
    n = norm.group.dim
    x = rng.uniform(-2.0, 2.0, size=(samples, n))
    x[np.all(np.abs(x) < 1e-3, axis=-1)] += 1.0
    lam = np.exp(rng.uniform(np.log(lam_range[0]), np.log(lam_range[1]), size=samples))
    lhs = norm(dilate(norm.group, lam, x))
    rhs = lam * norm(x)
    return float(np.max(np.abs(lhs - rhs) / rhs))
