"""
A tour of the group catalog
===========================

Walks the built-in dilation structures, shows how each quasi-norm scales,
and computes the unit-sphere areas that every polar-coordinate integral
in the library leans on.
"""

import numpy as np

from hgineq import default_norm, dilate, homogeneity_deviation, parse_group, sphere_measure

# The catalog ids: isotropic R^n, anisotropic R^n with explicit weights,
# and the first Heisenberg group (weights 1, 1, 2 -> Q = 4).
for name in ("r:2", "r:3", "aniso:1,2", "heis1"):
    group = parse_group(name)
    norm = default_norm(group)
    print(f"{name:10s} dim={group.dim}  weights={group.weights}  "
          f"Q={group.homogeneous_dimension:g}  norm={norm.kind}")

print()

# Dilations act coordinate-wise: x_i -> lam^{w_i} x_i.  On the Heisenberg
# group the central coordinate scales quadratically.
heis = parse_group("heis1")
x = np.array([1.0, 2.0, 3.0])
for lam in (0.5, 2.0):
    print(f"D_{lam:g}(1, 2, 3) = {dilate(heis, lam, x)}")

print()

# Every catalog norm is exactly 1-homogeneous for its dilations; the
# deviation over random (x, lam) draws sits at rounding level.
for name in ("r:3", "aniso:1,2", "heis1"):
    group = parse_group(name)
    norm = default_norm(group)
    dev = homogeneity_deviation(norm, samples=2000, seed=0)
    print(f"{name:10s} max |N(D_lam x) - lam N(x)| / lam N(x) = {dev:.3e}")

print()

# The sphere measure |sigma| turns n-dimensional integrals of quasi-radial
# functions into 1-D ones: int f(N(x)) dx = |sigma| int f(r) r^{Q-1} dr.
# For the euclidean norms it reproduces the classical surface areas.
for name, reference in (("r:2", "2 pi"), ("r:3", "4 pi"), ("heis1", "pi^2 / 2")):
    group = parse_group(name)
    norm = default_norm(group)
    sm = sphere_measure(group, norm)
    print(f"{name:10s} |sigma| = {sm.value:.10f}   ({reference}, {sm.method})")
