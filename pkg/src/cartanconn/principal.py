"""Trivialized principal bundles over a single chart.

A principal bundle with structure group ``G`` over a chart domain
``U`` in R^m is realized as the product ``U x G``. A connection is stored
through its local coefficient map ``A(x, dx)``: the pullback of the
connection form by the identity section ``g = e``, linear in ``dx`` and
valued in the Lie algebra of ``G``.

The full connection form at an arbitrary point ``(x, g)`` is reconstructed
from the local data by

    omega(dx, dg) = Ad_{g^{-1}} A(x, dx) + g^{-1} dg

which is the unique extension of ``A`` that reproduces generators on
fundamental vertical fields and transforms by ``Ad_{g^{-1}}`` under right
translation. :func:`check_axioms` audits both properties on random samples,
and :func:`curvature` evaluates ``dA + [A, A]`` with the exterior derivative
taken by central finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import liegroup as lg
from .errors import DomainError, TagMismatchError
from .settings import DEFAULT_TOLERANCES, Tolerances


@dataclass(frozen=True)
class ChartDomain:
    """Axis-aligned box (or all of R^m) on which a chart is valid."""

    dim: int
    lower: tuple[float, ...] | None = None
    upper: tuple[float, ...] | None = None

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError("chart domain needs dimension >= 1")

    @staticmethod
    def unbounded(dim: int) -> "ChartDomain":
        return ChartDomain(dim)

    @staticmethod
    def box(lower, upper) -> "ChartDomain":
        lower = tuple(float(v) for v in lower)
        upper = tuple(float(v) for v in upper)
        if len(lower) != len(upper):
            raise ValueError("box bounds must have equal lengths")
        if any(lo >= hi for lo, hi in zip(lower, upper)):
            raise ValueError("box lower bounds must be below upper bounds")
        return ChartDomain(len(lower), lower, upper)

    def contains(self, x, margin: float = 0.0) -> bool:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            return False
        if not np.all(np.isfinite(x)):
            return False
        if self.lower is None:
            return True
        lo = np.asarray(self.lower) + margin
        hi = np.asarray(self.upper) - margin
        return bool(np.all(x >= lo) and np.all(x <= hi))

    def sample(self, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
        """Random point of the domain (normal for unbounded domains)."""
        if self.lower is None:
            return scale * rng.standard_normal(self.dim)
        lo = np.asarray(self.lower)
        hi = np.asarray(self.upper)
        return rng.uniform(lo, hi)


@dataclass(frozen=True, eq=False)
class LocalConnection:
    """Chart-level connection data: ``A(x, dx)``, linear in ``dx``.

    ``coeff`` maps a base point and a base tangent to an algebra element of
    ``tag``. The map must be linear in the tangent slot; this is audited by
    the test-suite rather than enforced per call.
    """

    domain: ChartDomain
    tag: lg.GroupTag
    coeff: Callable[[np.ndarray, np.ndarray], lg.AlgebraElement]

    def __call__(self, x, dx) -> lg.AlgebraElement:
        x = np.asarray(x, dtype=float)
        dx = np.asarray(dx, dtype=float)
        if not self.domain.contains(x):
            raise DomainError(f"base point {x} lies outside the chart domain")
        return self.coeff(x, dx)


def zero_connection(domain: ChartDomain, tag: lg.GroupTag) -> LocalConnection:
    """The connection with ``A = 0`` (Maurer-Cartan only)."""
    return LocalConnection(domain, tag, lambda x, dx: lg.zero_algebra(tag))


@dataclass(frozen=True, eq=False)
class PrincipalPoint:
    """Point ``(x, g)`` of the trivialized bundle ``U x G``."""

    x: np.ndarray
    g: lg.GroupElement

    def __post_init__(self):
        object.__setattr__(self, "x", np.asarray(self.x, dtype=float))


@dataclass(frozen=True, eq=False)
class PrincipalTangent:
    """Tangent ``(dx, dg)`` attached at a bundle point; ``dg`` is a raw
    matrix tangent at the group component."""

    dx: np.ndarray
    dg: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "dx", np.asarray(self.dx, dtype=float))
        object.__setattr__(self, "dg", np.asarray(self.dg, dtype=float))


FormFunction = Callable[[PrincipalPoint, PrincipalTangent], lg.AlgebraElement]


def full_form(
    conn: LocalConnection,
    p: PrincipalPoint,
    v: PrincipalTangent,
    *,
    check_domain: bool = True,
) -> lg.AlgebraElement:
    """Connection form at ``p`` applied to ``v``:
    ``Ad_{g^{-1}} A(x, dx) + g^{-1} dg``."""
    if check_domain and not conn.domain.contains(p.x):
        raise DomainError(f"base point {p.x} lies outside the chart domain")
    # one shared inverse: g^{-1} (A g + dg)
    inv = lg.inverse_matrix(p.g.tag, p.g.mat)
    combined = inv @ (conn.coeff(p.x, v.dx).mat @ p.g.mat + v.dg)
    return lg.algebra_element(p.g.tag, combined, project=True)


def fundamental_vector(eta: lg.AlgebraElement, p: PrincipalPoint) -> PrincipalTangent:
    """Value at ``p`` of the fundamental vertical field of ``eta``:
    zero base velocity and group velocity ``g eta``."""
    if eta.tag != p.g.tag:
        raise TagMismatchError(
            f"algebra element of {eta.tag.name} cannot act on a {p.g.tag.name} bundle point"
        )
    return PrincipalTangent(np.zeros_like(p.x), p.g.mat @ eta.mat)


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of a connection-form audit.

    ``residual_fundamental`` is the worst gap in ``omega(eta-hat) = eta``;
    ``residual_equivariance`` the worst gap in the ``Ad_{g^{-1}}``
    transformation rule under right translation.
    """

    samples: int
    residual_fundamental: float
    residual_equivariance: float
    tolerance: float
    worst_fundamental: tuple = field(repr=False, default=())
    worst_equivariance: tuple = field(repr=False, default=())

    @property
    def passed(self) -> bool:
        return (
            self.residual_fundamental < self.tolerance
            and self.residual_equivariance < self.tolerance
        )


def check_axioms(
    conn: LocalConnection,
    samples: int = 200,
    seed: int = 0,
    *,
    form: FormFunction | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
    point_scale: float = 1.0,
    group_scale: float = 0.6,
) -> AxiomReport:
    """Audit the two defining properties of a connection form on random
    (point, tangent, translation) triples.

    ``form`` defaults to the form reconstructed from ``conn``; passing a
    different callable lets callers audit externally supplied (possibly
    corrupted) forms against the same contract.
    """
    tag = conn.tag
    omega = form if form is not None else (lambda p, v: full_form(conn, p, v, check_domain=False))
    rng = np.random.default_rng(seed)

    worst_i, worst_i_witness = 0.0, ()
    worst_ii, worst_ii_witness = 0.0, ()
    for _ in range(samples):
        x = conn.domain.sample(rng, scale=point_scale)
        g = lg.random_element(tag, rng, scale=group_scale)
        p = PrincipalPoint(x, g)

        # (i) the form reproduces generators on fundamental fields
        eta = lg.random_algebra(tag, rng)
        res_i = (omega(p, fundamental_vector(eta, p)) - eta).norm()
        if res_i > worst_i:
            worst_i, worst_i_witness = res_i, (x, g, eta)

        # (ii) right translation by g0 transforms the form by Ad_{g0^{-1}}
        dx = rng.standard_normal(conn.domain.dim)
        zeta = lg.random_algebra(tag, rng)
        v = PrincipalTangent(dx, g.mat @ zeta.mat)
        g0 = lg.random_element(tag, rng, scale=group_scale)
        translated_p = PrincipalPoint(x, lg.compose(g, g0))
        # the stored representative of g g0 may be a rescaling of the raw
        # product (projective normalization); the translated tangent must be
        # expressed at the stored representative
        raw = g.mat @ g0.mat
        stored = translated_p.g.mat
        scale = float(np.vdot(stored, raw) / np.vdot(stored, stored))
        translated_v = PrincipalTangent(dx, v.dg @ g0.mat / scale)
        lhs = omega(translated_p, translated_v)
        inv0 = lg.inverse_matrix(tag, g0.mat)
        rhs = lg.algebra_element(tag, inv0 @ omega(p, v).mat @ g0.mat, project=True)
        res_ii = (lhs - rhs).norm()
        if res_ii > worst_ii:
            worst_ii, worst_ii_witness = res_ii, (x, g, g0)

    return AxiomReport(
        samples=samples,
        residual_fundamental=worst_i,
        residual_equivariance=worst_ii,
        tolerance=tol.axiom,
        worst_fundamental=worst_i_witness,
        worst_equivariance=worst_ii_witness,
    )


def curvature(
    conn: LocalConnection,
    x,
    dx1,
    dx2,
    fd_step: float = 1e-5,
) -> lg.AlgebraElement:
    """Curvature two-form ``dA(dx1, dx2) + [A(dx1), A(dx2)]`` at ``x``.

    ``dA`` is evaluated by central finite differences of the coefficient
    map along the two directions; ``x`` must sit at least one step inside
    the chart domain along both.
    """
    x = np.asarray(x, dtype=float)
    dx1 = np.asarray(dx1, dtype=float)
    dx2 = np.asarray(dx2, dtype=float)
    if fd_step <= 0:
        raise ValueError("fd_step must be positive")
    probes = [x + fd_step * dx1, x - fd_step * dx1, x + fd_step * dx2, x - fd_step * dx2]
    if not all(conn.domain.contains(p) for p in probes):
        raise DomainError("point too close to the chart boundary for the requested step")

    d1 = (conn.coeff(probes[0], dx2).mat - conn.coeff(probes[1], dx2).mat) / (2 * fd_step)
    d2 = (conn.coeff(probes[2], dx1).mat - conn.coeff(probes[3], dx1).mat) / (2 * fd_step)
    a1 = conn.coeff(x, dx1)
    a2 = conn.coeff(x, dx2)
    commutator = a1.mat @ a2.mat - a2.mat @ a1.mat
    return lg.algebra_element(conn.tag, d1 - d2 + commutator, project=True)


def horizontal_space_dimension(
    conn: LocalConnection,
    p: PrincipalPoint,
    *,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> int:
    """Dimension of the kernel of the form at ``p``.

    The form is assembled as a linear map from (base tangent, algebra
    coordinates of the vertical part) to algebra coordinates; kernel
    dimension is counted with a relative singular-value threshold.
    """
    tag = conn.tag
    m = conn.domain.dim
    k = lg.algebra_dim(tag)
    columns = []
    for i in range(m):
        dx = np.zeros(m)
        dx[i] = 1.0
        v = PrincipalTangent(dx, np.zeros_like(p.g.mat))
        columns.append(lg.algebra_coords(full_form(conn, p, v, check_domain=False)))
    for eta in lg.algebra_basis(tag):
        v = PrincipalTangent(np.zeros(m), p.g.mat @ eta.mat)
        columns.append(lg.algebra_coords(full_form(conn, p, v, check_domain=False)))
    matrix = np.column_stack(columns)
    svals = np.linalg.svd(matrix, compute_uv=False)
    threshold = tol.rank * svals[0]
    rank = int(np.sum(svals > threshold))
    return (m + k) - rank
