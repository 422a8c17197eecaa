"""The Mobius space: the homogeneous model of conformal geometry.

Points are null rays of the quadratic form x1^2 + ... + x_{n+1}^2 - x0^2.
The unit sphere embeds on the slice x0 = 1 and the flat plane through
((1 + |z|^2)/2, z, (1 - |z|^2)/2); composing the two charts gives
stereographic projection. Rotations act linearly and equivariantly, and
one ray (x0 + x_{n+1} = 0) plays the point at infinity of the plane chart.
"""

import numpy as np

from cartanconn import mobius_embed_plane, mobius_embed_sphere, mobius_to_plane
from cartanconn.errors import PointAtInfinityError
from cartanconn.models import (
    MobiusPoint,
    mobius_homogeneous_spec,
    mobius_quadratic_form,
    mobius_rotation,
)

z = np.array([1.2, -0.7])
p = mobius_embed_plane(z)
print(f"plane point {z} embeds as the ray {p.ray}")
print(f"  Q(ray) = {mobius_quadratic_form(p.ray):.2e}")
print(f"  chart roundtrip: {mobius_to_plane(p)}")

y = np.array([0.6, 0.0, 0.8])
print(f"sphere point {y} embeds as {mobius_embed_sphere(y).ray}")
print(f"  its plane chart (stereographic from the south pole): {mobius_to_plane(mobius_embed_sphere(y))}")
print(f"  direct formula y'/(1 + y_last): {y[:2] / (1 + y[2])}")

theta = 0.7
rot = np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
lhs = mobius_embed_plane(rot @ z)
rhs = MobiusPoint(mobius_rotation(rot).mat @ p.ray)
print(f"rotation equivariance gap: {np.max(np.abs(lhs.ray - rhs.ray)):.2e}")

try:
    mobius_to_plane(MobiusPoint([1.0, 0.0, 0.0, -1.0]))
except PointAtInfinityError as exc:
    print(f"the excluded ray: {exc}")

spec = mobius_homogeneous_spec(2)
print(f"group {spec.tag.name}: dim algebra = {len(spec.stabilizer_basis) + spec.fiber_dim}, "
      f"stabilizer dim = {len(spec.stabilizer_basis)}, fibre dim = {spec.fiber_dim}")
