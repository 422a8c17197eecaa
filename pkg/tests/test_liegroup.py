"""Tests for the matrix Lie group kernel."""

import numpy as np
import pytest

from cartanconn import liegroup as lg
from cartanconn.errors import (
    InvalidElementError,
    NoPrincipalLogarithmError,
    TagMismatchError,
)

TAGS = [
    lg.gl_tag(3),
    lg.so_tag(3),
    lg.orthogonal_tag(2, 1),
    lg.orthogonal_tag(3, 1),
    lg.aff_tag(2),
    lg.galileo_tag(2),
    lg.galileo_tag(3),
    lg.pgl_tag(2),
    lg.product_tag(lg.galileo_tag(2), lg.so_tag(2)),
]


def series_exp(mat, terms=60):
    """Term-by-term exponential series, the oracle for exp."""
    total = np.eye(len(mat))
    term = np.eye(len(mat))
    for k in range(1, terms):
        term = term @ mat / k
        total = total + term
    return total


# ---------------------------------------------------------------------------
# Galileo group: the composition law, inverse, exponential
# ---------------------------------------------------------------------------

def test_galileo_composition_law():
    g1 = lg.galileo_element(1.0, 2.0, 3.0)
    g2 = lg.galileo_element(4.0, 5.0, 6.0)
    # (v2, a2, b2)(v1, a1, b1) = (v2 + v1, a2 + a1, b2 + b1 + v2 a1)
    assert lg.galileo_triple(lg.compose(g1, g2)) == (5.0, 7.0, 14.0)


def test_galileo_composition_matches_matrix_product():
    rng = np.random.default_rng(1)
    for _ in range(50):
        v1, a1, b1, v2, a2, b2 = rng.uniform(-2, 2, size=6)
        g = lg.compose(lg.galileo_element(v2, a2, b2), lg.galileo_element(v1, a1, b1))
        v, a, b = lg.galileo_triple(g)
        assert v == v2 + v1
        assert a == a2 + a1
        # summation order in the matrix product may differ by one rounding step
        assert np.isclose(b, b2 + b1 + v2 * a1, rtol=1e-15, atol=1e-15)


def test_compose_identity_is_neutral():
    g = lg.galileo_element(0.3, -1.0, 2.0)
    e = lg.identity(lg.GALILEO2)
    assert np.array_equal(lg.compose(g, e).mat, g.mat)
    assert np.array_equal(lg.compose(e, g).mat, g.mat)


def test_orthogonal_product_preserves_eta():
    rng = np.random.default_rng(2)
    tag = lg.orthogonal_tag(2, 1)
    eta = lg.eta_matrix(tag)
    for _ in range(20):
        a = lg.random_element(tag, rng)
        b = lg.random_element(tag, rng)
        m = lg.compose(a, b).mat
        assert np.max(np.abs(m.T @ eta @ m - eta)) < 1e-10


def test_compose_rejects_tag_mismatch():
    with pytest.raises(TagMismatchError):
        lg.compose(lg.identity(lg.GALILEO2), lg.identity(lg.so_tag(3)))


def test_galileo_inverse_triple():
    g = lg.galileo_element(1.0, 2.0, 3.0)
    # solve (v, a, b)(v', a', b') = (0, 0, 0)
    assert lg.galileo_triple(lg.inverse(g)) == (-1.0, -2.0, -1.0)
    assert np.allclose(lg.compose(g, lg.inverse(g)).mat, np.eye(3), atol=1e-12)


def test_identity_inverse_is_identity():
    for tag in TAGS:
        e = lg.identity(tag)
        assert np.allclose(lg.inverse(e).mat, e.mat, atol=1e-14)


def test_random_gl_inverse():
    rng = np.random.default_rng(3)
    tag = lg.gl_tag(3)
    for _ in range(20):
        g = lg.random_element(tag, rng, scale=1.0)
        assert np.max(np.abs(g.mat @ lg.inverse(g).mat - np.eye(3))) < 1e-10


# ---------------------------------------------------------------------------
# exp / log
# ---------------------------------------------------------------------------

def test_exp_zero_is_identity():
    for tag in TAGS:
        assert np.array_equal(lg.exp(lg.zero_algebra(tag)).mat, np.eye(tag.size))


def test_galileo_exp_closed_form():
    rng = np.random.default_rng(4)
    for _ in range(50):
        av, aa, ab = rng.uniform(-2, 2, size=3)
        g = lg.exp(lg.galileo_algebra(av, aa, ab))
        v, a, b = lg.galileo_triple(g)
        # two-step nilpotent algebra: series terminates at the quadratic term
        assert np.isclose(v, av, atol=1e-14)
        assert np.isclose(a, aa, atol=1e-14)
        assert np.isclose(b, ab + av * aa / 2.0, atol=1e-14)


def test_exp_matches_series_oracle():
    rng = np.random.default_rng(5)
    for tag in TAGS:
        for _ in range(5):
            xi = lg.random_algebra(tag, rng, scale=0.8)
            oracle = series_exp(xi.mat)
            if tag.kind is lg.GroupKind.PGL:
                oracle = lg.normalize_projective(oracle)
            assert np.max(np.abs(lg.exp(xi).mat - oracle)) < 1e-12


def test_exp_log_roundtrip():
    rng = np.random.default_rng(6)
    for tag in TAGS:
        for _ in range(100):
            xi = lg.random_algebra(tag, rng, scale=0.5 * rng.uniform(0.1, 1.0))
            back = lg.log(lg.exp(xi))
            assert (back - xi).norm() < 1e-9


def test_log_exp_roundtrip_inside_radius():
    rng = np.random.default_rng(7)
    for tag in TAGS:
        for _ in range(20):
            g = lg.random_element(tag, rng, scale=0.4)
            if np.max(np.abs(np.linalg.eigvals(g.mat - np.eye(tag.size)))) >= 0.9:
                continue
            again = lg.exp(lg.log(g))
            assert np.max(np.abs(again.mat - g.mat)) < 1e-9


def test_log_rejects_negative_real_spectrum():
    tag = lg.orthogonal_tag(2, 1)
    mat = np.diag([1.0, -1.0, -1.0])  # preserves eta, eigenvalue -1
    g = lg.group_element(tag, mat)
    with pytest.raises(NoPrincipalLogarithmError):
        lg.log(g)


# ---------------------------------------------------------------------------
# Adjoint action and brackets
# ---------------------------------------------------------------------------

def test_ad_identity_fixes_algebra():
    rng = np.random.default_rng(8)
    for tag in TAGS:
        xi = lg.random_algebra(tag, rng)
        assert (lg.Ad(lg.identity(tag), xi) - xi).norm() < 1e-14


def test_ad_boost_on_time_translation():
    # conjugating eps_a by a pure boost picks up a space translation
    g = lg.galileo_element(1.7, 0.0, 0.0)
    out = lg.Ad(g, lg.galileo_algebra(0.0, 1.0, 0.0))
    expected = lg.galileo_algebra(0.0, 1.0, 1.7)
    assert (out - expected).norm() < 1e-14


def test_ad_is_bracket_homomorphism():
    rng = np.random.default_rng(9)
    for tag in TAGS:
        for _ in range(10):
            g = lg.random_element(tag, rng)
            xi = lg.random_algebra(tag, rng)
            eta = lg.random_algebra(tag, rng)
            lhs = lg.Ad(g, lg.bracket(xi, eta))
            rhs = lg.bracket(lg.Ad(g, xi), lg.Ad(g, eta))
            assert (lhs - rhs).norm() < 1e-10


def test_bracket_galileo_structure():
    ev = lg.galileo_algebra(1.0, 0.0, 0.0)
    ea = lg.galileo_algebra(0.0, 1.0, 0.0)
    eb = lg.galileo_algebra(0.0, 0.0, 1.0)
    assert (lg.bracket(ev, ea) - eb).norm() == 0.0
    assert lg.bracket(ev, eb).norm() == 0.0
    assert lg.bracket(ea, eb).norm() == 0.0


def test_bracket_antisymmetry():
    rng = np.random.default_rng(10)
    for tag in TAGS:
        xi = lg.random_algebra(tag, rng)
        assert lg.bracket(xi, xi).norm() == 0.0


def test_jacobi_identity():
    rng = np.random.default_rng(11)
    for tag in TAGS:
        for _ in range(10):
            x = lg.random_algebra(tag, rng)
            y = lg.random_algebra(tag, rng)
            z = lg.random_algebra(tag, rng)
            total = (
                lg.bracket(x, lg.bracket(y, z))
                + lg.bracket(y, lg.bracket(z, x))
                + lg.bracket(z, lg.bracket(x, y))
            )
            assert total.norm() < 1e-12


# ---------------------------------------------------------------------------
# Maurer-Cartan pairing
# ---------------------------------------------------------------------------

def test_maurer_cartan_at_identity():
    rng = np.random.default_rng(12)
    for tag in TAGS:
        xi = lg.random_algebra(tag, rng)
        out = lg.maurer_cartan(lg.identity(tag), xi.mat)
        assert (out - xi).norm() < 1e-14


def test_maurer_cartan_along_one_parameter_group():
    # along g(t) = exp(t xi) the pairing of the velocity is constant = xi;
    # the velocity is checked against a finite-difference oracle at t = 0.3
    rng = np.random.default_rng(13)
    for tag in TAGS:
        xi = lg.random_algebra(tag, rng, scale=0.4)
        t, h = 0.3, 1e-6
        g = lg.exp(t * xi)
        gdot_fd = (lg.exp((t + h) * xi).mat - lg.exp((t - h) * xi).mat) / (2 * h)
        if tag.kind is not lg.GroupKind.PGL:
            assert np.max(np.abs(gdot_fd - g.mat @ xi.mat)) < 1e-6
        # for PGL the normalized representatives differ from exp(t xi) by a
        # scalar family; the traceless projection inside the pairing removes it
        assert (lg.maurer_cartan(g, gdot_fd) - xi).norm() < 1e-6


def test_maurer_cartan_left_invariance():
    rng = np.random.default_rng(14)
    tag = lg.gl_tag(3)
    g = lg.random_element(tag, rng)
    h = lg.random_element(tag, rng)
    dg = rng.standard_normal((3, 3))
    a = lg.maurer_cartan(g, dg)
    b = lg.maurer_cartan(lg.compose(h, g), h.mat @ dg)
    assert (a - b).norm() < 1e-10


# ---------------------------------------------------------------------------
# Structural invariants
# ---------------------------------------------------------------------------

def test_group_closure_mass_sampling():
    rng = np.random.default_rng(15)
    for tag in TAGS:
        for _ in range(1000):
            a = lg.random_element(tag, rng, scale=0.6)
            b = lg.random_element(tag, rng, scale=0.6)
            assert lg.group_defect(tag, lg.compose(a, b).mat) < 1e-9


def test_galileo_triple_roundtrip_bit_exact():
    rng = np.random.default_rng(16)
    for _ in range(100):
        v, a, b = rng.uniform(-10, 10, size=3)
        g = lg.galileo_element(v, a, b)
        assert lg.galileo_triple(g) == (v, a, b)
        rebuilt = lg.galileo_element(*lg.galileo_triple(g))
        assert np.array_equal(rebuilt.mat, g.mat)


def test_pgl_normalization_deterministic():
    mat = np.array([[2.0, 0.0, 0.0], [0.0, -4.0, 0.0], [0.0, 0.0, 1.0]])
    g = lg.group_element(lg.pgl_tag(2), mat, project=True)
    # largest-magnitude entry is -4; dividing by it makes that entry +1
    assert g.mat[1, 1] == 1.0
    assert np.max(np.abs(g.mat)) == 1.0


def test_algebra_coords_roundtrip():
    rng = np.random.default_rng(17)
    for tag in TAGS:
        xi = lg.random_algebra(tag, rng)
        coords = lg.algebra_coords(xi)
        back = lg.algebra_from_coords(tag, coords)
        assert (back - xi).norm() < 1e-12


def test_invalid_element_rejected():
    bad = np.array([[1.0, 0.5, 0.0], [0.0, 1.0, 0.0], [0.3, 0.0, 1.0]])
    with pytest.raises(InvalidElementError):
        lg.group_element(lg.GALILEO2, bad)


def test_orthogonal_projection_restores_group():
    rng = np.random.default_rng(18)
    tag = lg.orthogonal_tag(3, 1)
    g = lg.random_element(tag, rng)
    drifted = g.mat + 1e-6 * rng.standard_normal(g.mat.shape)
    fixed = lg.project_to_group(tag, drifted)
    assert lg.group_defect(tag, fixed) < 1e-12
    assert np.max(np.abs(fixed - g.mat)) < 1e-4
