"""Gravity as geometry: trajectories of falling particles develop straight.

The gravity structure on the (t, x) spacetime chart is built so that the
development of a trajectory into the fibre over its starting event is a
straight line exactly when x'' = V + W x'. With constant V = 9.81 and
W = 0 that is ordinary free fall.
"""

import numpy as np

from cartanconn import GravityField, SmoothPath, galilean_gravity

g0 = 9.81
structure = galilean_gravity(GravityField.constant(g0))

# a particle dropped from rest: x(t) = g t^2 / 2
freefall = SmoothPath(
    0.0, 1.0,
    lambda t: np.array([t, 0.5 * g0 * t * t]),
    lambda t: np.array([1.0, g0 * t]),
)
dev = structure.develop_base_path(freefall, step=1e-3)
print("free fall:")
print(f"  max |second derivative| of the development: {dev.max_second_difference():.3e}")
print(f"  development runs from {dev.values[0]} to {dev.values[-1]}")

# the same trajectory with a wobble no gravity field can explain
perturbed = SmoothPath(
    0.0, 1.0,
    lambda t: np.array([t, 0.5 * g0 * t * t + 0.1 * np.sin(5 * t)]),
    lambda t: np.array([1.0, g0 * t + 0.5 * np.cos(5 * t)]),
)
dev2 = structure.develop_base_path(perturbed, step=1e-3)
print("perturbed trajectory:")
print(f"  max |second derivative| of the development: {dev2.max_second_difference():.3e}")

# the initial velocity of any development is the soldering image of the
# initial base velocity; here the soldering map is the identity
sigma_w = structure.soldering(perturbed.point(0.0), perturbed.velocity(0.0))
print("tangency at the start:")
print(f"  development velocity  {dev2.initial_tangent}")
print(f"  soldered base velocity {sigma_w}")
