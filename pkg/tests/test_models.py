"""Tests for the shipped geometries."""

import numpy as np
import pytest

from cartanconn import liegroup as lg
from cartanconn import models
from cartanconn import principal as pr
from cartanconn import transport as tp
from cartanconn.errors import (
    GeometryError,
    InvalidElementError,
    PointAtInfinityError,
    SingularFieldError,
)

from conftest import trig_path


# ---------------------------------------------------------------------------
# Axioms on every shipped model
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("name", sorted(models.MODEL_BUILDERS))
def test_every_model_passes_axiom_audit(name):
    cs = models.build_model(name)
    report = pr.check_axioms(cs.conn, samples=200, seed=0)
    assert report.passed, (name, report)


def test_homogeneous_specs_validate():
    # projection of the identity, stabilizer fixing the base point, coset
    # sections as right inverses, and the dimension count
    rng = np.random.default_rng(0)
    specs = [
        models.galileo_homogeneous_spec(2),
        models.galileo_homogeneous_spec(3),
        models.affine_homogeneous_spec(2),
        models.affine_homogeneous_spec(3),
        models.projective_homogeneous_spec(2),
        models.mobius_homogeneous_spec(2),
        models.mobius_homogeneous_spec(3),
    ]
    for spec in specs:
        spec.validate(rng)


# ---------------------------------------------------------------------------
# Galilean gravity
# ---------------------------------------------------------------------------

def printed_gravity_form(V, W, state, velocity):
    """Closed-form connection form of the gravity structure at the frame
    (t, x, v, a, b) on (dt, dx, dv, da, db): the oracle for full_form."""
    t, x, v, a, b = state
    dt, dx, dv, da, db = velocity
    cv = -V(t, x) * dt - W(t, x) * dx + dv
    ca = dt + da
    cb = -(v + a * V(t, x)) * dt + (1.0 - a * W(t, x)) * dx - v * da + db
    return np.array([cv, ca, cb])


def test_gravity_full_form_matches_printed_formula():
    V = lambda t, x: 9.81 + 0.3 * x + 0.1 * t
    W = lambda t, x: 0.2 * np.sin(x)
    cs = models.galilean_gravity(models.GravityField(V, W))
    rng = np.random.default_rng(0)
    for _ in range(200):
        t, x, v, a, b = rng.uniform(-2, 2, size=5)
        dt, dx, dv, da, db = rng.uniform(-2, 2, size=5)
        p = pr.PrincipalPoint([t, x], lg.galileo_element(v, a, b))
        dg = np.zeros((3, 3))
        dg[1, 0], dg[0, 2], dg[1, 2] = dv, da, db
        got = lg.algebra_coords(pr.full_form(cs.conn, p, pr.PrincipalTangent([dt, dx], dg)))
        want = printed_gravity_form(V, W, (t, x, v, a, b), (dt, dx, dv, da, db))
        assert np.max(np.abs(got - want)) < 1e-12


def test_gravity_straightness_criterion_both_directions():
    # development is straight exactly when V + W x' - x'' vanishes
    V = lambda t, x: 2.0 + 0.5 * x
    W = lambda t, x: 0.3
    cs = models.galilean_gravity(models.GravityField(V, W))

    from scipy.integrate import solve_ivp

    sol = solve_ivp(
        lambda t, y: [y[1], V(t, y[0]) + W(t, y[0]) * y[1]],
        (0.0, 1.0),
        [0.1, 0.2],
        rtol=1e-12,
        atol=1e-12,
        dense_output=True,
    )
    path = tp.SmoothPath(
        0.0,
        1.0,
        lambda t: np.array([t, sol.sol(t)[0]]),
        lambda t: np.array([1.0, sol.sol(t)[1]]),
    )
    dev = cs.develop_base_path(path, step=1e-3)
    assert dev.max_second_difference() < 1e-5

    crooked = tp.SmoothPath(
        0.0,
        1.0,
        lambda t: np.array([t, sol.sol(t)[0] + 0.05 * np.sin(4 * t)]),
        lambda t: np.array([1.0, sol.sol(t)[1] + 0.2 * np.cos(4 * t)]),
    )
    dev2 = cs.develop_base_path(crooked, step=1e-3)
    assert dev2.max_second_difference() > 1e-2


def test_constant_gravity_curvature_vanishes():
    cs = models.galilean_gravity(models.GravityField.constant(9.81))
    f = pr.curvature(cs.conn, [0.3, 0.7], [1, 0], [0, 1])
    assert f.norm() < 1e-8


# ---------------------------------------------------------------------------
# Three-dimensional gravity and the Kepler field
# ---------------------------------------------------------------------------

def test_uniform_motion_develops_straight_3d():
    cs = models.galilean_gravity_3d(lambda t, x, y: np.array([0.0, 0.0]))
    path = tp.SmoothPath(
        0.0,
        1.0,
        lambda t: np.array([t, 0.3 * t, -0.2 * t + 0.5]),
        lambda t: np.array([1.0, 0.3, -0.2]),
    )
    dev = cs.develop_base_path(path, step=1e-3)
    assert dev.max_second_difference() < 1e-9


def test_projectile_parabola_develops_straight():
    g = 9.81
    cs = models.galilean_gravity_3d(lambda t, x, y: np.array([0.0, -g]))
    path = tp.SmoothPath(
        0.0,
        1.0,
        lambda t: np.array([t, 2.0 * t, 3.0 * t - 0.5 * g * t * t]),
        lambda t: np.array([1.0, 2.0, 3.0 - g * t]),
    )
    dev = cs.develop_base_path(path, step=1e-3)
    assert dev.max_second_difference() < 1e-6


def test_kepler_orbit_satisfies_equation_of_motion():
    # finite-difference second derivative against the field: the oracle
    # for the closed-form ellipse
    mu = 1.0
    orbit = models.kepler_orbit(mu=mu, a=1.0, e=0.6)
    accel = models.kepler_acceleration(mu)
    h = 1e-5
    for t in np.linspace(orbit.t0 + 0.1, orbit.t1 - 0.1, 7):
        xpp = (orbit.point(t + h) - 2 * orbit.point(t) + orbit.point(t - h)) / h**2
        expected = accel(t, *orbit.point(t)[1:])
        assert np.max(np.abs(xpp[1:] - expected)) < 1e-4
        assert abs(xpp[0]) < 1e-4


def test_kepler_development_straight_coarse():
    # coarse-step version of the orbit development (the fine-step run lives
    # in the acceptance suite)
    cs = models.galilean_gravity_3d(models.kepler_acceleration(1.0))
    orbit = models.kepler_orbit(mu=1.0, a=1.0, e=0.6)
    dev = cs.develop_base_path(orbit, step=1e-3)
    assert dev.max_second_difference() < 1e-4


def test_kepler_excluded_disk_raises():
    accel = models.kepler_acceleration(1.0, min_radius=1e-3)
    with pytest.raises(SingularFieldError):
        accel(0.0, 1e-4, 0.0)


# ---------------------------------------------------------------------------
# Flat homogeneous structures
# ---------------------------------------------------------------------------

def test_flat_transport_is_identity_and_holonomy_trivial():
    cs = models.build_model("homogeneous")
    action = cs.spec.fiber_action()
    rng = np.random.default_rng(1)
    path = trig_path(rng, 2)
    z0 = rng.standard_normal(2)
    out = tp.parallel_transport(cs.conn, path, action, z0, step=1e-2)
    assert np.max(np.abs(out - z0)) < 1e-10
    loop = tp.square_loop([0.2, -0.1], 0.8)
    hol = tp.holonomy(cs.conn, loop, step=1e-2)
    assert np.max(np.abs(hol.mat - np.eye(3))) < 1e-8


def test_flat_development_is_base_path_in_fibre():
    for space in ("galileo", "affine", "projective"):
        cs = models._build_homogeneous(space=space)
        rng = np.random.default_rng(2)
        path = trig_path(rng, cs.base_dim, amp=0.3)
        dev = cs.develop_base_path(path, step=1e-2)
        expected = np.array([path.point(t) for t in dev.ts])
        assert np.max(np.abs(dev.values - expected)) < 1e-8


# ---------------------------------------------------------------------------
# Affine structures
# ---------------------------------------------------------------------------

def test_affine_flat_development_translates_segments():
    cs = models.affine_structure(2)
    seg = tp.line_segment([0.5, 1.0], [1.5, 0.0], 0.0, 1.0)
    dev = cs.develop_base_path(seg, step=1e-2)
    expected = np.array([seg.point(t) - seg.point(0.0) for t in dev.ts])
    assert np.max(np.abs(dev.values - expected)) < 1e-9


def test_affine_scaled_endomorphism_soldering():
    cs = models.affine_structure(2, sigma0=2.0)
    w = np.array([0.7, -0.4])
    assert np.allclose(cs.soldering([0.0, 0.0], w), 2.0 * w, atol=1e-12)


def test_affine_classification_matches_invertibility():
    assert models.affine_structure(2).is_cartan(samples=10).kind == "cartan"
    assert models.affine_structure(2, sigma0=np.zeros((2, 2))).is_cartan(samples=10).kind == "neither"
    singular = np.array([[1.0, 0.0], [0.0, 0.0]])
    assert models.affine_structure(2, sigma0=singular).is_cartan(samples=10).kind == "neither"


def test_affine_with_linear_connection_coefficients():
    gamma = np.zeros((2, 2, 2))
    gamma[0, 1, 0] = 0.4
    cs = models.affine_structure(2, gamma=gamma)
    assert cs.is_cartan(samples=10).kind == "cartan"
    report = pr.check_axioms(cs.conn, samples=100, seed=3)
    assert report.passed


# ---------------------------------------------------------------------------
# Mobius space
# ---------------------------------------------------------------------------

def test_plane_embedding_lands_on_null_cone():
    rng = np.random.default_rng(4)
    for _ in range(100):
        z = rng.standard_normal(3)
        p = models.mobius_embed_plane(z)
        assert abs(models.mobius_quadratic_form(p.ray)) < 1e-10 * np.sum(p.ray**2)


def test_plane_embedding_of_origin_is_base_point():
    p = models.mobius_embed_plane(np.zeros(2))
    # normalized representative of the ray through (1/2, 0, 0, 1/2)
    assert np.allclose(p.ray, [1.0, 0.0, 0.0, 1.0], atol=1e-15)
    assert p.close_to(models.mobius_origin(2))


def test_sphere_embedding_requires_unit_vector():
    models.mobius_embed_sphere([1.0, 0.0, 0.0])
    with pytest.raises(InvalidElementError):
        models.mobius_embed_sphere([1.1, 0.0, 0.0])


def test_stereographic_roundtrip():
    rng = np.random.default_rng(5)
    for _ in range(100):
        z = 3.0 * rng.standard_normal(2)
        back = models.mobius_to_plane(models.mobius_embed_plane(z))
        assert np.max(np.abs(back - z)) < 1e-10
    assert np.max(np.abs(models.mobius_to_plane(models.mobius_origin(2)))) == 0.0


def test_excluded_ray_raises_point_at_infinity():
    p = models.MobiusPoint([1.0, 0.0, 0.0, -1.0])
    with pytest.raises(PointAtInfinityError):
        models.mobius_to_plane(p)


def test_plane_chart_is_south_pole_stereographic_projection():
    rng = np.random.default_rng(6)
    for _ in range(20):
        y = rng.standard_normal(3)
        y /= np.linalg.norm(y)
        if abs(1.0 + y[-1]) < 1e-6:
            continue
        z = models.mobius_to_plane(models.mobius_embed_sphere(y))
        assert np.allclose(z, y[:-1] / (1.0 + y[-1]), atol=1e-12)


def test_rotation_equivariance_of_plane_embedding():
    rng = np.random.default_rng(7)
    for _ in range(30):
        raw = rng.standard_normal((2, 2))
        q, _ = np.linalg.qr(raw)
        z = rng.standard_normal(2)
        lhs = models.mobius_embed_plane(q @ z)
        rhs_vec = models.mobius_rotation(q).mat @ models.mobius_embed_plane(z).ray
        assert lhs.close_to(models.MobiusPoint(rhs_vec), tol=1e-10)


def test_orthogonal_action_preserves_null_cone():
    rng = np.random.default_rng(8)
    tag = lg.orthogonal_tag(3, 1)
    for _ in range(100):
        g = lg.random_element(tag, rng)
        p = models.mobius_embed_plane(rng.standard_normal(2))
        moved = g.mat @ p.ray
        assert abs(models.mobius_quadratic_form(moved)) < 1e-9 * np.sum(moved**2)


def test_mobius_point_validates_null_condition():
    with pytest.raises(InvalidElementError):
        models.MobiusPoint([1.0, 0.5, 0.0, 0.0])


# ---------------------------------------------------------------------------
# Projective space
# ---------------------------------------------------------------------------

def test_projective_identity_action():
    p = models.ProjectivePoint([0.2, 1.0, -0.4])
    q = models.projective_action(lg.identity(lg.pgl_tag(2)), p)
    assert q.close_to(p, tol=1e-15)


def test_gl_embedding_fixes_origin_and_infinity_hyperplane():
    g = models.gl_embed(2.0 * np.eye(2))
    o = models.projective_origin(2)
    assert models.projective_action(g, o).close_to(o, tol=1e-15)
    rng = np.random.default_rng(9)
    for _ in range(10):
        v = rng.standard_normal(2)
        at_infinity = models.ProjectivePoint(np.concatenate([[0.0], v]))
        image = models.projective_action(g, at_infinity)
        assert image.vec[0] == 0.0


def test_gl_embedding_is_homomorphism():
    rng = np.random.default_rng(10)
    for _ in range(100):
        a = np.eye(2) + 0.4 * rng.standard_normal((2, 2))
        b = np.eye(2) + 0.4 * rng.standard_normal((2, 2))
        lhs = models.gl_embed(a @ b)
        rhs = lg.compose(models.gl_embed(a), models.gl_embed(b))
        assert np.max(np.abs(lhs.mat - rhs.mat)) < 1e-10


def test_projective_action_is_homomorphism():
    rng = np.random.default_rng(11)
    tag = lg.pgl_tag(2)
    for _ in range(100):
        g1 = lg.random_element(tag, rng)
        g2 = lg.random_element(tag, rng)
        p = models.ProjectivePoint(rng.standard_normal(3))
        lhs = models.projective_action(lg.compose(g1, g2), p)
        rhs = models.projective_action(g1, models.projective_action(g2, p))
        assert lhs.close_to(rhs, tol=1e-10)


def test_tangent_embedding_hits_affine_chart():
    rng = np.random.default_rng(13)
    for _ in range(20):
        v = 2.0 * rng.standard_normal(2)
        p = models.tangent_embed(v)
        # chart coordinates recover the tangent vector
        assert np.allclose(p.vec[1:] / p.vec[0], v, atol=1e-12)


def test_conformal_tangent_embedding_on_null_cone():
    rng = np.random.default_rng(12)
    metric = np.diag([2.0, 0.5])
    for _ in range(20):
        v = rng.standard_normal(2)
        flat = models.conformal_tangent_embed(v)
        assert abs(models.mobius_quadratic_form(flat)) < 1e-12 * np.sum(flat**2)
        assert models.MobiusPoint(flat).close_to(models.mobius_embed_plane(v))
        weighted = models.conformal_tangent_embed(v, metric=metric)
        assert abs(models.riemannian_quadratic_form(weighted, metric)) < 1e-12 * np.sum(weighted**2)


# ---------------------------------------------------------------------------
# Registry
# ---------------------------------------------------------------------------

def test_registry_rejects_unknown_model():
    with pytest.raises(GeometryError):
        models.build_model("nonexistent")


def test_registry_builds_all_models():
    for name in models.MODEL_BUILDERS:
        cs = models.build_model(name)
        assert cs.conn.domain.dim == cs.spec.fiber_dim
