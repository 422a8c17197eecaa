"""Tests for Cartan structures: reductions, induced forms, soldering,
classification, development, parallelization."""

import numpy as np
import pytest

from cartanconn import liegroup as lg
from cartanconn import models
from cartanconn import principal as pr
from cartanconn.cartan import CartanStructure
from cartanconn.errors import GeometryError, NotCartanError

from conftest import freefall_path, perturbed_freefall_path, trig_path


@pytest.fixture(scope="module")
def gravity():
    return models.galilean_gravity(models.GravityField.constant(9.81))


@pytest.fixture(scope="module")
def gradient_gravity():
    return models.galilean_gravity(models.GravityField(lambda t, x: 9.81 + 0.3 * x))


@pytest.fixture(scope="module")
def flat_galileo():
    return models.homogeneous_flat(models.galileo_homogeneous_spec(2))


# ---------------------------------------------------------------------------
# Reduction membership and induced form
# ---------------------------------------------------------------------------

def test_reduction_membership_default_section(gravity):
    rng = np.random.default_rng(0)
    x = rng.standard_normal(2)
    boost = lg.exp(gravity.spec.random_stabilizer_algebra(rng))
    assert gravity.in_reduction(pr.PrincipalPoint(x, boost))
    mover = lg.galileo_element(0.0, 0.5, 0.0)  # moves the fibre base point
    assert not gravity.in_reduction(pr.PrincipalPoint(x, mover))


def test_induced_form_on_stabilizer_vertical_returns_generator(gravity):
    # vertical tangents from the subgroup algebra are reproduced exactly
    rng = np.random.default_rng(1)
    for _ in range(20):
        x = rng.standard_normal(2)
        gp = gravity.spec.random_stabilizer_element(rng)
        p = pr.PrincipalPoint(x, gp)
        eta = gravity.spec.random_stabilizer_algebra(rng)
        v = pr.fundamental_vector(eta, p)
        assert (gravity.induced_form(p, v) - eta).norm() < 1e-10


def test_induced_form_values_leave_subalgebra(gravity):
    # on base directions the induced form picks up time/space translations
    p = pr.PrincipalPoint([0.0, 0.0], lg.identity(lg.GALILEO2))
    v = pr.PrincipalTangent([1.0, 0.0], np.zeros((3, 3)))
    out = gravity.induced_form(p, v)
    coords = lg.algebra_coords(out)
    assert abs(coords[1]) > 0.5  # time-translation component present


def test_induced_form_zero_tangent(gravity):
    p = pr.PrincipalPoint([0.2, 0.1], lg.identity(lg.GALILEO2))
    v = pr.PrincipalTangent(np.zeros(2), np.zeros((3, 3)))
    assert gravity.induced_form(p, v).norm() == 0.0


def test_induced_form_is_maurer_cartan_on_flat_structure(flat_galileo):
    # the reduction of the flat structure is a copy of the group and the
    # induced form is the left-invariant pairing: tangent g xi evaluates to xi
    cs = flat_galileo
    rng = np.random.default_rng(2)
    for _ in range(20):
        g = lg.random_element(cs.spec.tag, rng)
        x = cs.spec.act(g, cs.spec.origin)
        xi = lg.random_algebra(cs.spec.tag, rng)
        dx = cs.spec.jacobian(g, cs.spec.origin) @ cs.spec.algebra_to_fiber(xi)
        v = pr.PrincipalTangent(dx, g.mat @ xi.mat)
        p = pr.PrincipalPoint(x, g)
        assert cs.in_reduction(p)
        assert (cs.induced_form(p, v) - xi).norm() < 1e-9


def test_induced_form_rejects_nonmember(gravity):
    p = pr.PrincipalPoint([0.0, 0.0], lg.galileo_element(0.0, 1.0, 2.0))
    v = pr.PrincipalTangent(np.zeros(2), np.zeros((3, 3)))
    with pytest.raises(GeometryError):
        gravity.induced_form(p, v)


def test_induced_form_rejects_nontangent(gravity):
    p = pr.PrincipalPoint([0.0, 0.0], lg.identity(lg.GALILEO2))
    # group velocity along eps_a leaves the reduction
    v = pr.PrincipalTangent(np.zeros(2), lg.galileo_algebra(0.0, 1.0, 0.0).mat)
    with pytest.raises(GeometryError):
        gravity.induced_form(p, v)


# ---------------------------------------------------------------------------
# Classification
# ---------------------------------------------------------------------------

def test_gravity_classifies_cartan(gradient_gravity):
    report = gradient_gravity.is_cartan(samples=20, seed=0)
    assert report.kind == "cartan"
    assert report.min_singular_value > 1e-8


def test_flat_structures_classify_cartan(flat_galileo):
    assert flat_galileo.is_cartan(samples=20, seed=1).kind == "cartan"


def test_zero_endomorphism_classifies_neither():
    cs = models.affine_structure(2, sigma0=np.zeros((2, 2)))
    report = cs.is_cartan(samples=10, seed=2)
    assert report.kind == "neither"
    assert report.min_singular_value < 1e-8


def test_generalized_structure_flagged():
    # base of dimension 1 inside a fibre of dimension 2: kernel-free but
    # not dimension-matched
    spec = models.galileo_homogeneous_spec(2)
    domain = pr.ChartDomain.unbounded(1)
    conn = pr.LocalConnection(
        domain,
        spec.tag,
        lambda x, d: lg.galileo_algebra(0.0, d[0], 0.3 * d[0]),
    )
    cs = CartanStructure("thin-base", spec, conn)
    assert cs.is_cartan(samples=10, seed=3).kind == "generalized"


def test_classification_stable_under_refinement():
    for name in models.MODEL_BUILDERS:
        cs = models.build_model(name)
        kinds = {cs.is_cartan(samples=s, seed=4).kind for s in (10, 20)}
        assert len(kinds) == 1


# ---------------------------------------------------------------------------
# Soldering
# ---------------------------------------------------------------------------

def test_gravity_soldering_is_identity(gradient_gravity):
    rng = np.random.default_rng(5)
    for _ in range(10):
        x = rng.standard_normal(2)
        assert np.allclose(gradient_gravity.soldering_matrix(x), np.eye(2), atol=1e-10)


def test_affine_soldering_reproduces_endomorphism():
    sigma = np.array([[2.0, 0.5], [-0.3, 1.5]])
    cs = models.affine_structure(2, sigma0=sigma)
    rng = np.random.default_rng(6)
    for _ in range(10):
        assert np.allclose(cs.soldering_matrix(rng.standard_normal(2)), sigma, atol=1e-9)


def test_soldering_linear_and_zero(gravity):
    x = np.array([0.4, -0.1])
    assert np.max(np.abs(gravity.soldering(x, np.zeros(2)))) == 0.0
    w1, w2 = np.array([1.0, 2.0]), np.array([-0.5, 0.3])
    lhs = gravity.soldering(x, 2.0 * w1 + w2)
    rhs = 2.0 * gravity.soldering(x, w1) + gravity.soldering(x, w2)
    assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_soldering_matrix_invertible_on_cartan_models():
    rng = np.random.default_rng(12)
    for name in models.MODEL_BUILDERS:
        cs = models.build_model(name)
        for _ in range(5):
            matrix = cs.soldering_matrix(cs.conn.domain.sample(rng, scale=0.5))
            smallest = np.linalg.svd(matrix, compute_uv=False)[-1]
            assert smallest > 1e-8, name


@pytest.mark.parametrize("model", ["galilean", "affine", "homogeneous", "mobius"])
def test_soldering_independent_of_choices(model):
    # the defining formula uses an arbitrary reduction point and an
    # arbitrary lift of the base tangent; all choices must agree
    cs = models.build_model(model)
    rng = np.random.default_rng(7)
    for _ in range(25):
        x = cs.conn.domain.sample(rng, scale=0.5)
        w = rng.standard_normal(cs.base_dim)
        reference = cs.soldering(x, w)
        for _ in range(5):
            gp = cs.spec.random_stabilizer_element(rng, scale=0.4)
            eta = cs.spec.random_stabilizer_algebra(rng, scale=0.4)
            value = cs.soldering_with_choices(x, w, gp, eta)
            assert np.max(np.abs(value - reference)) < 1e-9


# ---------------------------------------------------------------------------
# Development of base paths
# ---------------------------------------------------------------------------

def test_freefall_develops_straight(gravity):
    dev = gravity.develop_base_path(freefall_path(), step=1e-3)
    assert dev.max_second_difference() < 1e-6


def test_perturbed_freefall_develops_crooked(gravity):
    dev = gravity.develop_base_path(perturbed_freefall_path(), step=1e-3)
    assert dev.max_second_difference() > 1e-2


def test_tangency_identity(gradient_gravity):
    # the initial velocity of the development equals the soldering image of
    # the initial base velocity
    path = perturbed_freefall_path()
    dev = gradient_gravity.develop_base_path(path, step=1e-3)
    sigma_w = gradient_gravity.soldering(path.point(0.0), path.velocity(0.0))
    assert np.max(np.abs(dev.initial_tangent - sigma_w)) < 1e-6


def test_flat_development_reproduces_base_path(flat_galileo):
    rng = np.random.default_rng(8)
    for _ in range(5):
        path = trig_path(rng, 2)
        dev = flat_galileo.develop_base_path(path, step=1e-2)
        expected = np.array([path.point(t) for t in dev.ts])
        assert np.max(np.abs(dev.values - expected)) < 1e-8


def test_shipped_models_match_dimension_condition():
    for name in models.MODEL_BUILDERS:
        cs = models.build_model(name)
        assert cs.base_dim == cs.spec.fiber_dim


def test_shipped_fiber_actions_satisfy_action_laws():
    rng = np.random.default_rng(11)
    for name in models.MODEL_BUILDERS:
        models.build_model(name).spec.fiber_action().validate(rng, samples=10)


# ---------------------------------------------------------------------------
# Parallelization
# ---------------------------------------------------------------------------

def test_parallelization_frame_roundtrip(flat_galileo):
    cs = flat_galileo
    rng = np.random.default_rng(9)
    basis = lg.algebra_basis(cs.spec.tag)
    for _ in range(10):
        g = lg.random_element(cs.spec.tag, rng)
        p = pr.PrincipalPoint(cs.spec.act(g, cs.spec.origin), g)
        frame = cs.parallelization_frame(p)
        assert len(frame) == len(basis)
        for vec, eta in zip(frame, basis):
            out = pr.full_form(cs.conn, p, vec, check_domain=False)
            assert (out - eta).norm() < 1e-9


def test_parallelization_frame_invertible_at_many_points(gradient_gravity):
    cs = gradient_gravity
    rng = np.random.default_rng(10)
    for _ in range(50):
        x = rng.standard_normal(2)
        gp = cs.spec.random_stabilizer_element(rng)
        p = pr.PrincipalPoint(x, gp)
        matrix = cs.reduced_form_matrix(x, gp)
        assert abs(np.linalg.det(matrix)) > 1e-8


def test_parallelization_requires_cartan():
    cs = models.affine_structure(2, sigma0=np.zeros((2, 2)))
    p = pr.PrincipalPoint(np.zeros(2), lg.identity(cs.spec.tag))
    with pytest.raises(NotCartanError):
        cs.parallelization_frame(p)
