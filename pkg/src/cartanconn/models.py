"""Ready-made geometries.

* flat homogeneous structures over any of the shipped homogeneous spaces
  (the base equals the fibre, the connection has zero local coefficients,
  parallel transport is the identity in the trivialization)
* affine structures on R^n built from a linear connection and an
  endomorphism field; the structure is Cartan exactly when the endomorphism
  is invertible, and the endomorphism is recovered as the soldering map
* Galilean gravity on the (t, x) spacetime chart: the connection whose
  straight developments are exactly the trajectories with x'' = V + W x',
  plus the componentwise extension to a (t, x, y) spacetime suitable for
  central-force fields (Kepler orbits develop straight)
* the projective model space P(n, R) with its PGL action and the embedding
  of GL(n) as a point stabilizer
* the Mobius space: the projectivized null cone of the quadratic form
  x1^2 + ... + x_{n+1}^2 - x0^2, with the sphere and plane embeddings, the
  stereographic chart, and the O(n) equivariance

A string registry (:data:`MODEL_BUILDERS`, :func:`build_model`) exposes the
models to the scenario runner.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import liegroup as lg
from .cartan import CartanStructure, HomogeneousSpec
from .errors import (
    GeometryError,
    InvalidElementError,
    PointAtInfinityError,
    SingularFieldError,
)
from .principal import ChartDomain, LocalConnection, zero_connection
from .transport import SmoothPath


# ---------------------------------------------------------------------------
# Homogeneous space data
# ---------------------------------------------------------------------------

def galileo_homogeneous_spec(spacetime_dim: int = 2) -> HomogeneousSpec:
    """Galileo group modulo boosts: the fibre carries coordinates (a, b)."""
    tag = lg.galileo_tag(spacetime_dim)
    s = spacetime_dim - 1
    dim = spacetime_dim

    def act(g, point):
        a, b = point[0], point[1:]
        v = g.mat[1:-1, 0]
        return np.concatenate([[g.mat[0, -1] + a], g.mat[1:-1, -1] + b + v * a])

    def project(g):
        return np.concatenate([[g.mat[0, -1]], g.mat[1:-1, -1]])

    def coset_section(point):
        return lg.galileo_element(np.zeros(s), point[0], point[1:], tag)

    def act_jacobian(g, point):
        jac = np.eye(dim)
        jac[1:, 0] = g.mat[1:-1, 0]
        return jac

    # algebra coordinates are ordered (boosts, time shift, space shifts);
    # the quotient projection strips the boosts
    fiber_map = np.hstack([np.zeros((dim, s)), np.eye(dim)])
    stabilizer = tuple(lg.algebra_basis(tag)[:s])
    return HomogeneousSpec(
        name=f"galileo{spacetime_dim}/boosts",
        tag=tag,
        fiber_dim=dim,
        origin=np.zeros(dim),
        act=act,
        project=project,
        coset_section=coset_section,
        stabilizer_basis=stabilizer,
        fiber_map=fiber_map,
        act_jacobian=act_jacobian,
    )


def affine_homogeneous_spec(n: int) -> HomogeneousSpec:
    """Affine group of R^n modulo the linear group: the fibre is R^n."""
    tag = lg.aff_tag(n)

    def act(g, point):
        return g.mat[:n, :n] @ point + g.mat[:n, n]

    def project(g):
        return g.mat[:n, n].copy()

    def coset_section(point):
        mat = np.eye(n + 1)
        mat[:n, n] = point
        return lg.GroupElement(tag, mat)

    def act_jacobian(g, point):
        return g.mat[:n, :n].copy()

    # algebra coordinates are (linear block entries, translations)
    fiber_map = np.hstack([np.zeros((n, n * n)), np.eye(n)])
    stabilizer = tuple(lg.algebra_basis(tag)[: n * n])
    return HomogeneousSpec(
        name=f"affine{n}/linear",
        tag=tag,
        fiber_dim=n,
        origin=np.zeros(n),
        act=act,
        project=project,
        coset_section=coset_section,
        stabilizer_basis=stabilizer,
        fiber_map=fiber_map,
        act_jacobian=act_jacobian,
    )


def projective_homogeneous_spec(n: int) -> HomogeneousSpec:
    """Projective space P(n, R) as PGL(n) modulo the stabilizer of
    o = [1, 0, ..., 0], on the affine chart z -> [1, z]."""
    tag = lg.pgl_tag(n)

    def act(g, point):
        w = g.mat @ np.concatenate([[1.0], point])
        if abs(w[0]) <= 1e-12 * np.max(np.abs(w)):
            raise PointAtInfinityError("projective action left the affine chart")
        return w[1:] / w[0]

    def project(g):
        col = g.mat[:, 0]
        if abs(col[0]) <= 1e-12 * np.max(np.abs(col)):
            raise PointAtInfinityError("projection left the affine chart")
        return col[1:] / col[0]

    def coset_section(point):
        mat = np.eye(n + 1)
        mat[1:, 0] = point
        return lg.group_element(tag, mat, project=True)

    def act_jacobian(g, point):
        w = g.mat @ np.concatenate([[1.0], point])
        return (g.mat[1:, 1:] * w[0] - np.outer(w[1:], g.mat[0, 1:])) / w[0] ** 2

    basis = lg.algebra_basis(tag)
    fiber_map = np.column_stack([b.mat[1:, 0] for b in basis])
    stabilizer = tuple(b for b in basis if np.all(b.mat[1:, 0] == 0.0))
    return HomogeneousSpec(
        name=f"projective{n}",
        tag=tag,
        fiber_dim=n,
        origin=np.zeros(n),
        act=act,
        project=project,
        coset_section=coset_section,
        stabilizer_basis=stabilizer,
        fiber_map=fiber_map,
        act_jacobian=act_jacobian,
    )


# -- Mobius space -----------------------------------------------------------

def mobius_quadratic_form(vec) -> float:
    """Q(x0, ..., x_{n+1}) = x1^2 + ... + x_{n+1}^2 - x0^2."""
    vec = np.asarray(vec, dtype=float)
    return float(np.sum(vec[1:] ** 2) - vec[0] ** 2)


def _normalize_ray(vec: np.ndarray) -> np.ndarray:
    idx = int(np.argmax(np.abs(vec)))
    pivot = vec[idx]
    if pivot == 0.0:
        raise InvalidElementError("zero vector does not span a ray")
    return vec / pivot


@dataclass(frozen=True, eq=False)
class MobiusPoint:
    """Point of the Mobius space: a null ray of the quadratic form,
    stored as a representative normalized so its largest-|entry| is +1."""

    ray: np.ndarray

    def __post_init__(self):
        vec = _normalize_ray(np.asarray(self.ray, dtype=float))
        q = mobius_quadratic_form(vec)
        if abs(q) > 1e-10 * float(np.sum(vec**2)):
            raise InvalidElementError(f"vector is not on the null cone: Q = {q:.3e}")
        vec.setflags(write=False)
        object.__setattr__(self, "ray", vec)

    @property
    def dim(self) -> int:
        return self.ray.size - 2

    def close_to(self, other: "MobiusPoint", tol: float = 1e-10) -> bool:
        return np.max(np.abs(self.ray - other.ray)) <= tol


def mobius_embed_sphere(y) -> MobiusPoint:
    """Embed a unit sphere point y as the ray through (1, y)."""
    y = np.asarray(y, dtype=float)
    if abs(np.dot(y, y) - 1.0) > 1e-10:
        raise InvalidElementError("sphere embedding needs a unit vector")
    return MobiusPoint(np.concatenate([[1.0], y]))


def mobius_embed_plane(z) -> MobiusPoint:
    """Embed a plane point z as the ray through
    ((1 + |z|^2)/2, z, (1 - |z|^2)/2); the origin maps to the base point o."""
    z = np.asarray(z, dtype=float)
    s = float(np.dot(z, z))
    return MobiusPoint(np.concatenate([[(1.0 + s) / 2.0], z, [(1.0 - s) / 2.0]]))


def mobius_to_plane(p: MobiusPoint) -> np.ndarray:
    """Inverse of the plane embedding: z_i = x_i / (x0 + x_{n+1}).

    Composed with the sphere chart this is stereographic projection from
    the south pole. The ray with x0 + x_{n+1} = 0 has no chart image.
    """
    x = p.ray
    den = x[0] + x[-1]
    if abs(den) <= 1e-12 * np.max(np.abs(x)):
        raise PointAtInfinityError("point at infinity: the ray x0 + x_{n+1} = 0 has no plane image")
    return x[1:-1] / den


def mobius_origin(n: int) -> MobiusPoint:
    return mobius_embed_plane(np.zeros(n))


def mobius_rotation(rot) -> lg.GroupElement:
    """Embed an orthogonal matrix of R^n as the Mobius transformation fixing
    the x0 and x_{n+1} coordinates."""
    rot = np.asarray(rot, dtype=float)
    n = rot.shape[0]
    mat = np.eye(n + 2)
    mat[1:-1, 1:-1] = rot
    return lg.group_element(lg.orthogonal_tag(n + 1, 1), mat)


def _mobius_translation(c: np.ndarray) -> np.ndarray:
    """Null translation by c: maps the ray of embed_plane(z) to that of
    embed_plane(z + c); built in light-cone coordinates
    (u, x, w) = (x0 + x_{n+1}, x, x0 - x_{n+1})."""
    n = c.size
    to_cone = np.zeros((n + 2, n + 2))
    to_cone[0, 0] = 1.0
    to_cone[0, -1] = 1.0
    to_cone[1:-1, 1:-1] = np.eye(n)
    to_cone[-1, 0] = 1.0
    to_cone[-1, -1] = -1.0
    from_cone = np.linalg.inv(to_cone)
    mid = np.eye(n + 2)
    mid[1:-1, 0] = c
    mid[-1, 0] = float(np.dot(c, c))
    mid[-1, 1:-1] = 2.0 * c
    return from_cone @ mid @ to_cone


def mobius_homogeneous_spec(n: int) -> HomogeneousSpec:
    """Mobius space of dimension n as O(n+1, 1) modulo the stabilizer of the
    null ray o, on the plane (stereographic) chart."""
    tag = lg.orthogonal_tag(n + 1, 1)

    def stereo_jacobian(vec):
        den = vec[0] + vec[-1]
        jac = np.zeros((n, n + 2))
        jac[:, 1:-1] = np.eye(n) / den
        jac[:, 0] = -vec[1:-1] / den**2
        jac[:, -1] = -vec[1:-1] / den**2
        return jac

    def embed_jacobian(z):
        jac = np.zeros((n + 2, n))
        jac[0, :] = z
        jac[1:-1, :] = np.eye(n)
        jac[-1, :] = -z
        return jac

    def act(g, point):
        vec = g.mat @ mobius_embed_plane(point).ray
        den = vec[0] + vec[-1]
        if abs(den) <= 1e-12 * np.max(np.abs(vec)):
            raise PointAtInfinityError("Mobius action left the plane chart")
        return vec[1:-1] / den

    def project(g):
        return act(g, np.zeros(n))

    def coset_section(point):
        return lg.group_element(tag, _mobius_translation(np.asarray(point, dtype=float)))

    def act_jacobian(g, point):
        vec = g.mat @ mobius_embed_plane(point).ray
        return stereo_jacobian(vec) @ g.mat @ embed_jacobian(np.asarray(point, dtype=float))

    basis = lg.algebra_basis(tag)
    p0 = np.zeros(n + 2)
    p0[0] = 1.0
    p0[-1] = 1.0
    # infinitesimal action on the chart at the origin
    fiber_map = np.column_stack([stereo_jacobian(p0) @ (b.mat @ p0) for b in basis])
    # stabilizer of the ray: xi p0 proportional to p0, i.e. the null space of
    # the infinitesimal motion transverse to the ray
    ray_complement = np.eye(n + 2) - np.outer(p0, p0) / float(np.dot(p0, p0))
    motion = np.column_stack([ray_complement @ (b.mat @ p0) for b in basis])
    _, svals, vt = np.linalg.svd(motion)
    rank = int(np.sum(svals > 1e-10 * svals[0]))
    stabilizer = tuple(lg.algebra_from_coords(tag, vt[i]) for i in range(rank, len(basis)))
    return HomogeneousSpec(
        name=f"mobius{n}",
        tag=tag,
        fiber_dim=n,
        origin=np.zeros(n),
        act=act,
        project=project,
        coset_section=coset_section,
        stabilizer_basis=stabilizer,
        fiber_map=fiber_map,
        act_jacobian=act_jacobian,
    )


# ---------------------------------------------------------------------------
# Projective space points and actions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class ProjectivePoint:
    """Point of P(n, R): a homogeneous vector normalized so its
    largest-|entry| is +1."""

    vec: np.ndarray

    def __post_init__(self):
        v = _normalize_ray(np.asarray(self.vec, dtype=float))
        v.setflags(write=False)
        object.__setattr__(self, "vec", v)

    @property
    def dim(self) -> int:
        return self.vec.size - 1

    def close_to(self, other: "ProjectivePoint", tol: float = 1e-10) -> bool:
        return np.max(np.abs(self.vec - other.vec)) <= tol


def projective_origin(n: int) -> ProjectivePoint:
    vec = np.zeros(n + 1)
    vec[0] = 1.0
    return ProjectivePoint(vec)


def projective_action(g: lg.GroupElement, p: ProjectivePoint) -> ProjectivePoint:
    """Action [x] -> [g x] with renormalization of the representative."""
    if g.tag.kind is not lg.GroupKind.PGL:
        raise GeometryError("projective action needs a PGL element")
    return ProjectivePoint(g.mat @ p.vec)


def gl_embed(mat) -> lg.GroupElement:
    """Injective homomorphism of GL(n) into PGL(n) fixing o = [1, 0, ..., 0]
    and preserving the hyperplane at infinity:
    [x0, x1, ..., xn] -> [x0, g(x1, ..., xn)]."""
    mat = np.asarray(mat, dtype=float)
    n = mat.shape[0]
    if abs(np.linalg.det(mat)) <= np.finfo(float).tiny:
        raise InvalidElementError("embedding needs an invertible matrix")
    big = np.zeros((n + 1, n + 1))
    big[0, 0] = 1.0
    big[1:, 1:] = mat
    return lg.group_element(lg.pgl_tag(n), big, project=True)


def tangent_embed(v) -> ProjectivePoint:
    """Embed a tangent vector v of R^n as the projective class of (1, v);
    the image is the affine chart, dense in P(n, R)."""
    v = np.asarray(v, dtype=float)
    return ProjectivePoint(np.concatenate([[1.0], v]))


def riemannian_quadratic_form(vec, metric=None) -> float:
    """Fibre-model quadratic form Q(v0, v, v_{n+1}) = g(v, v) + v_{n+1}^2 - v0^2
    for a (constant) metric g; flat metric by default."""
    vec = np.asarray(vec, dtype=float)
    v = vec[1:-1]
    s = float(np.dot(v, v)) if metric is None else float(v @ np.asarray(metric, float) @ v)
    return s + vec[-1] ** 2 - vec[0] ** 2


def conformal_tangent_embed(v, metric=None) -> np.ndarray:
    """Embed a tangent vector into the conformal fibre model as the
    normalized ray through ((1 + g(v, v))/2, v, (1 - g(v, v))/2).

    The image lies on the null cone of the metric-weighted quadratic form;
    for the flat default it can be wrapped as a :class:`MobiusPoint`.
    """
    v = np.asarray(v, dtype=float)
    if metric is None:
        s = float(np.dot(v, v))
    else:
        s = float(v @ np.asarray(metric, dtype=float) @ v)
    return _normalize_ray(np.concatenate([[(1.0 + s) / 2.0], v, [(1.0 - s) / 2.0]]))


# ---------------------------------------------------------------------------
# Flat homogeneous structures
# ---------------------------------------------------------------------------

def homogeneous_flat(spec: HomogeneousSpec, domain: ChartDomain | None = None) -> CartanStructure:
    """Flat structure over the homogeneous space itself: base = fibre,
    zero local coefficients, diagonal section x -> (x, x).

    Parallel transport is the identity in the trivialization, the
    development of any base path is the path itself read in the fibre over
    its starting point, and the induced form on the reduction is the
    Maurer-Cartan form.
    """
    domain = domain or ChartDomain.unbounded(spec.fiber_dim)
    if domain.dim != spec.fiber_dim:
        raise GeometryError("flat structure needs base dimension = fibre dimension")
    return CartanStructure(
        name=f"flat-{spec.name}",
        spec=spec,
        conn=zero_connection(domain, spec.tag),
        section=lambda x: np.asarray(x, dtype=float),
        frame_section=spec.coset_section,
        frame_jacobian=_coset_jacobian(spec),
    )


def _coset_jacobian(spec: HomogeneousSpec):
    """Exact derivative of the coset section for the homogeneous spaces
    that have a simple one; None falls back to finite differences."""
    kind = spec.tag.kind
    if kind is lg.GroupKind.GALILEO:
        size = spec.tag.size

        def deriv(x, w):
            out = np.zeros((size, size))
            out[0, -1] = w[0]
            out[1:-1, -1] = w[1:]
            return out

        return deriv
    if kind is lg.GroupKind.AFF:
        size = spec.tag.size

        def deriv(x, w):
            out = np.zeros((size, size))
            out[:-1, -1] = w
            return out

        return deriv
    if kind is lg.GroupKind.ORTHOGONAL:
        n = spec.fiber_dim
        to_cone = np.zeros((n + 2, n + 2))
        to_cone[0, 0] = 1.0
        to_cone[0, -1] = 1.0
        to_cone[1:-1, 1:-1] = np.eye(n)
        to_cone[-1, 0] = 1.0
        to_cone[-1, -1] = -1.0
        from_cone = np.linalg.inv(to_cone)

        def deriv(x, w):
            mid = np.zeros((n + 2, n + 2))
            mid[1:-1, 0] = w
            mid[-1, 0] = 2.0 * float(np.dot(x, w))
            mid[-1, 1:-1] = 2.0 * w
            return from_cone @ mid @ to_cone

        return deriv
    return None


# ---------------------------------------------------------------------------
# Affine structures
# ---------------------------------------------------------------------------

def affine_structure(
    n: int,
    gamma=None,
    sigma0=None,
    domain: ChartDomain | None = None,
) -> CartanStructure:
    """Affine structure on R^n from a linear connection and an endomorphism.

    ``gamma`` holds the linear-connection coefficients, constant as an
    (n, n, n) array or as a function of the base point, contributing the
    linear part ``sum_k gamma[i, j, k] w_k``; ``sigma0`` is the endomorphism
    field contributing the translation part, and is recovered by the
    soldering map. The structure is Cartan exactly when ``sigma0`` is
    invertible (identity endomorphism by default).
    """
    domain = domain or ChartDomain.unbounded(n)
    if domain.dim != n:
        raise GeometryError("domain dimension must equal n")
    tag = lg.aff_tag(n)

    if gamma is None:
        gamma_fn = lambda x: np.zeros((n, n, n))
    elif callable(gamma):
        gamma_fn = gamma
    else:
        gamma_const = np.asarray(gamma, dtype=float)
        if gamma_const.shape != (n, n, n):
            raise GeometryError(f"gamma must have shape {(n, n, n)}")
        gamma_fn = lambda x: gamma_const

    if sigma0 is None:
        sigma_fn = lambda x: np.eye(n)
    elif callable(sigma0):
        sigma_fn = sigma0
    else:
        sigma_const = np.asarray(sigma0, dtype=float) * np.eye(n) if np.isscalar(sigma0) else np.asarray(sigma0, dtype=float)
        if sigma_const.shape != (n, n):
            raise GeometryError(f"sigma0 must have shape {(n, n)}")
        sigma_fn = lambda x: sigma_const

    def coeff(x, w):
        mat = np.zeros((n + 1, n + 1))
        mat[:n, :n] = np.tensordot(gamma_fn(x), np.asarray(w, dtype=float), axes=([2], [0]))
        mat[:n, n] = sigma_fn(x) @ np.asarray(w, dtype=float)
        return lg.AlgebraElement(tag, mat)

    return CartanStructure(
        name="affine",
        spec=affine_homogeneous_spec(n),
        conn=LocalConnection(domain, tag, coeff),
    )


# ---------------------------------------------------------------------------
# Galilean gravity
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GravityField:
    """Scalar gravity data on the (t, x) chart: acceleration V and the
    optional velocity coupling W."""

    V: Callable[[float, float], float]
    W: Callable[[float, float], float] | None = None

    @staticmethod
    def constant(g0: float) -> "GravityField":
        return GravityField(lambda t, x: g0)

    def v(self, t: float, x: float) -> float:
        return float(self.V(t, x))

    def w(self, t: float, x: float) -> float:
        return 0.0 if self.W is None else float(self.W(t, x))


def galilean_gravity(field: GravityField, domain: ChartDomain | None = None) -> CartanStructure:
    """Gravity structure on two-dimensional spacetime.

    The local coefficients are
    ``A(dt, dx) = (-V dt - W dx) eps_v + dt eps_a + dx eps_b``;
    the reconstructed form at a frame (v, a, b) works out to

        (-V dt - W dx + dv) eps_v + (dt + da) eps_a
        + (-(v + a V) dt + (1 - a W) dx - v da + db) eps_b,

    the soldering map is the identity, and the development of a trajectory
    (t, x(t)) is a straight line exactly when V + W x' - x'' = 0.
    """
    domain = domain or ChartDomain.unbounded(2)
    tag = lg.GALILEO2

    def coeff(p, d):
        t, x = p
        return lg.galileo_algebra(
            -field.v(t, x) * d[0] - field.w(t, x) * d[1], d[0], d[1]
        )

    return CartanStructure(
        name="galilean-gravity",
        spec=galileo_homogeneous_spec(2),
        conn=LocalConnection(domain, tag, coeff),
    )


def galilean_gravity_3d(accel: Callable[[float, float, float], np.ndarray],
                        domain: ChartDomain | None = None) -> CartanStructure:
    """Componentwise extension of the gravity structure to a (t, x, y)
    spacetime: trajectories with (x'', y'') = accel(t, x, y) develop
    straight. ``accel`` may raise ``SingularFieldError`` on an excluded set
    (e.g. the center of a Kepler field)."""
    domain = domain or ChartDomain.unbounded(3)
    tag = lg.galileo_tag(3)

    def coeff(p, d):
        a = np.asarray(accel(p[0], p[1], p[2]), dtype=float)
        return lg.galileo_algebra(-a * d[0], d[0], d[1:], tag)

    return CartanStructure(
        name="galilean-gravity-3d",
        spec=galileo_homogeneous_spec(3),
        conn=LocalConnection(domain, tag, coeff),
    )


def kepler_acceleration(mu: float = 1.0, min_radius: float = 1e-3):
    """Central attraction -mu r / |r|^3 toward the origin of the (x, y)
    plane, raising inside the excluded disk around the singular center."""

    def accel(t, x, y):
        r2 = x * x + y * y
        if r2 < min_radius * min_radius:
            raise SingularFieldError("trajectory entered the excluded disk around the Kepler center")
        return -mu * np.array([x, y]) / r2 ** 1.5

    return accel


def kepler_orbit(mu: float = 1.0, a: float = 1.0, e: float = 0.6,
                 t0: float = 0.0, t1: float | None = None) -> SmoothPath:
    """Closed-form elliptical orbit (t, x(t), y(t)) with gravitational
    parameter mu, semi-major axis a and eccentricity e, starting at
    perihelion; spans half a period by default.

    Positions come from the eccentric anomaly E(t) solving
    M = E - e sin E (Newton iteration), so the trajectory satisfies
    (x'', y'') = -mu r / |r|^3 to round-off.
    """
    if not 0 <= e < 1:
        raise ValueError("eccentricity must lie in [0, 1)")
    n_mean = np.sqrt(mu / a**3)
    b = a * np.sqrt(1.0 - e * e)
    if t1 is None:
        t1 = t0 + np.pi / n_mean  # half a period

    def anomaly(t: float) -> float:
        m = n_mean * (t - t0)
        ecc = m if e < 0.8 else np.pi
        for _ in range(50):
            delta = (ecc - e * np.sin(ecc) - m) / (1.0 - e * np.cos(ecc))
            ecc -= delta
            if abs(delta) < 1e-15:
                break
        return ecc

    def x(t):
        ecc = anomaly(t)
        return np.array([t, a * (np.cos(ecc) - e), b * np.sin(ecc)])

    def xdot(t):
        ecc = anomaly(t)
        rate = n_mean / (1.0 - e * np.cos(ecc))
        return np.array([1.0, -a * np.sin(ecc) * rate, b * np.cos(ecc) * rate])

    return SmoothPath(t0, t1, x, xdot)


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

def _build_homogeneous(space: str = "galileo", n: int = 2, **_) -> CartanStructure:
    specs = {
        "galileo": lambda: galileo_homogeneous_spec(2),
        "affine": lambda: affine_homogeneous_spec(n),
        "mobius": lambda: mobius_homogeneous_spec(n),
        "projective": lambda: projective_homogeneous_spec(n),
    }
    if space not in specs:
        raise GeometryError(f"unknown homogeneous space '{space}'")
    return homogeneous_flat(specs[space]())


def _build_galilean(V=9.81, W=None, **_) -> CartanStructure:
    v_fn = V if callable(V) else (lambda t, x, v0=float(V): v0)
    w_fn = None if W is None else (W if callable(W) else (lambda t, x, w0=float(W): w0))
    return galilean_gravity(GravityField(v_fn, w_fn))


def _build_galilean3d(accel=None, **_) -> CartanStructure:
    if accel is None:
        accel = lambda t, x, y: np.array([0.0, -9.81])
    return galilean_gravity_3d(accel)


MODEL_BUILDERS: dict[str, Callable[..., CartanStructure]] = {
    "homogeneous": _build_homogeneous,
    "affine": lambda n=2, gamma=None, sigma0=None, **_: affine_structure(n, gamma, sigma0),
    "galilean": _build_galilean,
    "galilean3d": _build_galilean3d,
    "mobius": lambda n=2, **_: homogeneous_flat(mobius_homogeneous_spec(n)),
    "projective": lambda n=2, **_: homogeneous_flat(projective_homogeneous_spec(n)),
}


def build_model(name: str, **params) -> CartanStructure:
    """Build a registered model by name."""
    if name not in MODEL_BUILDERS:
        raise GeometryError(
            f"unknown model '{name}'; available: {', '.join(sorted(MODEL_BUILDERS))}"
        )
    return MODEL_BUILDERS[name](**params)
