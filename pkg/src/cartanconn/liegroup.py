"""Matrix Lie group kernel.

Every group used by this library is realized as a closed subgroup of
``GL(k, R)`` for a size ``k`` fixed by its tag, so group and algebra elements
are plain square numpy arrays together with a tag naming the defining
relations they satisfy.

Supported families:

* ``GL(n)``        invertible ``n x n`` matrices
* ``SO(n)``        rotations
* ``O(p,q)``       matrices preserving the indefinite form
                   ``eta = diag(-1 (q times), +1 (p times))``; the minus
                   block comes first so that for signature ``(n+1, 1)`` the
                   preserved quadratic form is ``-x0^2 + x1^2 + ...``,
                   matching the conformal models in :mod:`cartanconn.models`
* ``Aff(n)``       affine maps of R^n as ``(n+1) x (n+1)`` matrices whose
                   last row is ``(0, ..., 0, 1)``
* ``Galileo(m)``   boosts and translations of m-dimensional spacetime,
                   ``(t, x) -> (t + a, x + b + v t)``; ``Galileo(2)`` is the
                   3 x 3 realization ``[[1, 0, a], [v, 1, b], [0, 0, 1]]``
                   acting on column vectors ``(t, x, 1)``
* ``PGL(n)``       projective transformations, stored as ``(n+1) x (n+1)``
                   representatives normalized so that the entry of largest
                   magnitude equals ``+1`` (first such entry in row-major
                   order when tied), which fixes a deterministic pick from
                   the homothety class
* ``Product``      direct products of the above, realized block-diagonally

Elements are produced by the factories :func:`group_element` and
:func:`algebra_element`, which validate the defining relations and can
re-project matrices that drifted off the group under floating arithmetic
(generalized polar projection for ``O(p,q)``, pattern rebuilds for the
structured groups).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable

import numpy as np
import scipy.linalg

from .errors import (
    InvalidElementError,
    NoPrincipalLogarithmError,
    TagMismatchError,
)
from .settings import DEFAULT_TOLERANCES, Tolerances


class GroupKind(Enum):
    GL = "GL"
    SO = "SO"
    ORTHOGONAL = "O"
    AFF = "Aff"
    GALILEO = "Galileo"
    PGL = "PGL"
    PRODUCT = "Product"


@dataclass(frozen=True)
class GroupTag:
    """Name of a matrix group together with its dimension parameters."""

    kind: GroupKind
    dims: tuple[int, ...] = ()
    factors: tuple["GroupTag", ...] = ()

    @property
    def size(self) -> int:
        """Size of the square matrices realizing this group."""
        if self.kind is GroupKind.GL or self.kind is GroupKind.SO:
            return self.dims[0]
        if self.kind is GroupKind.ORTHOGONAL:
            return self.dims[0] + self.dims[1]
        if self.kind is GroupKind.AFF or self.kind is GroupKind.PGL:
            return self.dims[0] + 1
        if self.kind is GroupKind.GALILEO:
            return self.dims[0] + 1
        return sum(f.size for f in self.factors)

    @property
    def name(self) -> str:
        if self.kind is GroupKind.PRODUCT:
            return " x ".join(f.name for f in self.factors)
        if self.kind is GroupKind.ORTHOGONAL:
            return f"O({self.dims[0]},{self.dims[1]})"
        if self.kind is GroupKind.GALILEO:
            return f"Galileo{self.dims[0]}"
        return f"{self.kind.value}({self.dims[0]})"

    def __str__(self) -> str:  # pragma: no cover - cosmetic
        return self.name


def gl_tag(n: int) -> GroupTag:
    return GroupTag(GroupKind.GL, (n,))


def so_tag(n: int) -> GroupTag:
    return GroupTag(GroupKind.SO, (n,))


def orthogonal_tag(p: int, q: int) -> GroupTag:
    """Tag of O(p, q); matrices preserve eta = diag(-1 x q, +1 x p)."""
    return GroupTag(GroupKind.ORTHOGONAL, (p, q))


def aff_tag(n: int) -> GroupTag:
    return GroupTag(GroupKind.AFF, (n,))


def galileo_tag(spacetime_dim: int = 2) -> GroupTag:
    """Galileo group of ``spacetime_dim``-dimensional spacetime (no rotations).

    ``spacetime_dim = 2`` is the group of maps (t, x) -> (t + a, x + b + v t)
    with one space dimension; higher values add space dimensions, each with
    its own boost and translation parameter.
    """
    if spacetime_dim < 2:
        raise ValueError("Galileo group needs spacetime dimension >= 2")
    return GroupTag(GroupKind.GALILEO, (spacetime_dim,))


def pgl_tag(n: int) -> GroupTag:
    return GroupTag(GroupKind.PGL, (n,))


def product_tag(*factors: GroupTag) -> GroupTag:
    if len(factors) < 2:
        raise ValueError("product tag needs at least two factors")
    return GroupTag(GroupKind.PRODUCT, (), tuple(factors))


GALILEO2 = galileo_tag(2)


@dataclass(frozen=True, eq=False)
class GroupElement:
    """An element of the matrix group named by ``tag``.

    Build instances through :func:`group_element`, which validates the
    defining relations; the raw constructor performs no checks. Matrices
    are made read-only, so elements are immutable and safe to share.
    """

    tag: GroupTag
    mat: np.ndarray

    def __post_init__(self):
        m = np.array(self.mat, dtype=float)
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        return compose(self, other)

    def inv(self) -> "GroupElement":
        return inverse(self)

    def __repr__(self):  # pragma: no cover - cosmetic
        return f"GroupElement({self.tag.name}, {np.array2string(self.mat, precision=6)})"


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    """An element of the Lie algebra of the group named by ``tag``."""

    tag: GroupTag
    mat: np.ndarray

    def __post_init__(self):
        m = np.array(self.mat, dtype=float)
        m.setflags(write=False)
        object.__setattr__(self, "mat", m)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _require_same_tag(self.tag, other.tag)
        return AlgebraElement(self.tag, self.mat + other.mat)

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        _require_same_tag(self.tag, other.tag)
        return AlgebraElement(self.tag, self.mat - other.mat)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.tag, -self.mat)

    def __rmul__(self, scalar: float) -> "AlgebraElement":
        return AlgebraElement(self.tag, float(scalar) * self.mat)

    def norm(self) -> float:
        return float(np.linalg.norm(self.mat))

    def __repr__(self):  # pragma: no cover - cosmetic
        return f"AlgebraElement({self.tag.name}, {np.array2string(self.mat, precision=6)})"


def _require_same_tag(tag1: GroupTag, tag2: GroupTag) -> None:
    if tag1 != tag2:
        raise TagMismatchError(f"cannot combine elements of {tag1.name} and {tag2.name}")


@lru_cache(maxsize=None)
def eta_matrix(tag: GroupTag) -> np.ndarray:
    """Indefinite form preserved by O(p, q): diag(-1 x q, +1 x p)."""
    if tag.kind is not GroupKind.ORTHOGONAL:
        raise ValueError("eta is only defined for O(p, q) tags")
    p, q = tag.dims
    eta = np.diag(np.concatenate([-np.ones(q), np.ones(p)]))
    eta.setflags(write=False)
    return eta


def _product_slices(tag: GroupTag) -> list[tuple[slice, GroupTag]]:
    out, start = [], 0
    for f in tag.factors:
        out.append((slice(start, start + f.size), f))
        start += f.size
    return out


# ---------------------------------------------------------------------------
# Defining relations, projections, factories
# ---------------------------------------------------------------------------

def group_defect(tag: GroupTag, mat: np.ndarray) -> float:
    """Max-norm residual of the tag's defining relations at ``mat``."""
    mat = np.asarray(mat, dtype=float)
    n = tag.size
    if mat.shape != (n, n):
        raise InvalidElementError(f"expected a {n} x {n} matrix for {tag.name}, got {mat.shape}")
    if not np.all(np.isfinite(mat)):
        return np.inf
    kind = tag.kind
    if kind is GroupKind.GL:
        return 0.0 if abs(np.linalg.det(mat)) > np.finfo(float).tiny else np.inf
    if kind is GroupKind.SO:
        d = np.max(np.abs(mat.T @ mat - np.eye(n)))
        return max(d, abs(np.linalg.det(mat) - 1.0))
    if kind is GroupKind.ORTHOGONAL:
        eta = eta_matrix(tag)
        return float(np.max(np.abs(mat.T @ eta @ mat - eta)))
    if kind is GroupKind.AFF:
        last = np.zeros(n)
        last[-1] = 1.0
        return float(np.max(np.abs(mat[-1] - last)))
    if kind is GroupKind.GALILEO:
        return float(np.max(np.abs(mat - _galileo_rebuild(mat))))
    if kind is GroupKind.PGL:
        if abs(np.linalg.det(mat)) <= np.finfo(float).tiny:
            return np.inf
        return float(np.max(np.abs(mat - normalize_projective(mat))))
    # product: block defects plus off-block mass
    total = 0.0
    mask = np.ones_like(mat, dtype=bool)
    for sl, f in _product_slices(tag):
        total = max(total, group_defect(f, mat[sl, sl]))
        mask[sl, sl] = False
    off = float(np.max(np.abs(mat[mask]))) if mask.any() else 0.0
    return max(total, off)


def _galileo_rebuild(mat: np.ndarray) -> np.ndarray:
    """Exact Galileo pattern with the boost/translation entries of ``mat``."""
    n = mat.shape[0]
    out = np.eye(n)
    out[1:-1, 0] = mat[1:-1, 0]      # boosts v
    out[0, -1] = mat[0, -1]          # time translation a
    out[1:-1, -1] = mat[1:-1, -1]    # space translations b
    return out


def normalize_projective(mat: np.ndarray) -> np.ndarray:
    """Scale a projective representative so its largest-|entry| equals +1.

    Ties are broken by the first occurrence in row-major order, so the
    representative of a homothety class is deterministic.
    """
    flat = np.abs(mat).ravel()
    idx = int(np.argmax(flat))
    pivot = mat.ravel()[idx]
    if pivot == 0.0:
        raise InvalidElementError("zero matrix cannot represent a projective element")
    return mat / pivot


def project_to_group(tag: GroupTag, mat: np.ndarray) -> np.ndarray:
    """Re-project a matrix that drifted off the group under floating arithmetic.

    O(p, q) uses the generalized polar (Newton) iteration with respect to
    eta; SO(n) the orthogonal polar factor; the structured groups rebuild
    their exact patterns; PGL normalizes the representative.
    """
    mat = np.asarray(mat, dtype=float)
    if not np.all(np.isfinite(mat)):
        raise InvalidElementError(f"non-finite matrix cannot lie in {tag.name}")
    kind = tag.kind
    if kind is GroupKind.GL:
        return mat
    if kind is GroupKind.SO:
        u, _, vt = np.linalg.svd(mat)
        r = u @ vt
        if np.linalg.det(r) < 0:
            u[:, -1] *= -1.0
            r = u @ vt
        return r
    if kind is GroupKind.ORTHOGONAL:
        eta = eta_matrix(tag)
        x = mat
        for _ in range(50):
            residual = np.max(np.abs(x.T @ eta @ x - eta))
            if residual < 1e-15:
                break
            x = 0.5 * (x + eta @ np.linalg.inv(x).T @ eta)
        return x
    if kind is GroupKind.AFF:
        out = mat.copy()
        out[-1, :] = 0.0
        out[-1, -1] = 1.0
        return out
    if kind is GroupKind.GALILEO:
        return _galileo_rebuild(mat)
    if kind is GroupKind.PGL:
        return normalize_projective(mat)
    out = np.zeros_like(mat)
    for sl, f in _product_slices(tag):
        out[sl, sl] = project_to_group(f, mat[sl, sl])
    return out


def group_element(
    tag: GroupTag,
    mat: np.ndarray,
    *,
    project: bool = False,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> GroupElement:
    """Validated construction of a group element.

    With ``project=True`` the matrix is first re-projected onto the group,
    which is the right call whenever it comes out of non-exact arithmetic.
    """
    mat = np.asarray(mat, dtype=float)
    if project:
        mat = project_to_group(tag, mat)
    defect = group_defect(tag, mat)
    if not defect <= tol.structural:
        raise InvalidElementError(
            f"matrix violates the defining relations of {tag.name}: residual {defect:.3e}"
        )
    return GroupElement(tag, mat)


def identity(tag: GroupTag) -> GroupElement:
    return GroupElement(tag, np.eye(tag.size))


def algebra_defect(tag: GroupTag, mat: np.ndarray) -> float:
    mat = np.asarray(mat, dtype=float)
    return float(np.max(np.abs(mat - project_to_algebra(tag, mat))))


def project_to_algebra(tag: GroupTag, mat: np.ndarray) -> np.ndarray:
    """Project a matrix onto the linear pattern of the tag's Lie algebra."""
    mat = np.asarray(mat, dtype=float)
    kind = tag.kind
    if kind is GroupKind.GL:
        return mat
    if kind is GroupKind.SO:
        return 0.5 * (mat - mat.T)
    if kind is GroupKind.ORTHOGONAL:
        eta = eta_matrix(tag)
        return 0.5 * (mat - eta @ mat.T @ eta)
    if kind is GroupKind.AFF:
        out = mat.copy()
        out[-1, :] = 0.0
        return out
    if kind is GroupKind.GALILEO:
        out = np.zeros_like(mat)
        out[1:-1, 0] = mat[1:-1, 0]
        out[0, -1] = mat[0, -1]
        out[1:-1, -1] = mat[1:-1, -1]
        return out
    if kind is GroupKind.PGL:
        n = tag.size
        return mat - (np.trace(mat) / n) * np.eye(n)
    out = np.zeros_like(mat)
    for sl, f in _product_slices(tag):
        out[sl, sl] = project_to_algebra(f, mat[sl, sl])
    return out


def algebra_element(
    tag: GroupTag,
    mat: np.ndarray,
    *,
    project: bool = False,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> AlgebraElement:
    mat = np.asarray(mat, dtype=float)
    if project:
        mat = project_to_algebra(tag, mat)
    defect = algebra_defect(tag, mat)
    if not defect <= tol.structural:
        raise InvalidElementError(
            f"matrix violates the algebra pattern of {tag.name}: residual {defect:.3e}"
        )
    return AlgebraElement(tag, mat)


def zero_algebra(tag: GroupTag) -> AlgebraElement:
    return AlgebraElement(tag, np.zeros((tag.size, tag.size)))


# ---------------------------------------------------------------------------
# Group operations
# ---------------------------------------------------------------------------

def compose(g1: GroupElement, g2: GroupElement) -> GroupElement:
    """Group product ``g1 g2``, re-projected onto the group manifold."""
    _require_same_tag(g1.tag, g2.tag)
    return group_element(g1.tag, g1.mat @ g2.mat, project=True)


def inverse_matrix(tag: GroupTag, mat: np.ndarray) -> np.ndarray:
    """Matrix inverse, using the cheap closed forms where the tag has one."""
    kind = tag.kind
    if kind is GroupKind.SO:
        return mat.T.copy()
    if kind is GroupKind.ORTHOGONAL:
        eta = eta_matrix(tag)
        return eta @ mat.T @ eta
    if kind is GroupKind.PRODUCT:
        out = np.zeros_like(mat)
        for sl, f in _product_slices(tag):
            out[sl, sl] = inverse_matrix(f, mat[sl, sl])
        return out
    try:
        return np.linalg.inv(mat)
    except np.linalg.LinAlgError as exc:
        raise InvalidElementError(f"singular matrix has no inverse in {tag.name}") from exc


def inverse(g: GroupElement) -> GroupElement:
    return group_element(g.tag, inverse_matrix(g.tag, g.mat), project=True)


def _expm_taylor(mat: np.ndarray) -> np.ndarray:
    """Matrix exponential by scaling-and-squaring with a 13-term series."""
    norm = np.linalg.norm(mat, 1)
    squarings = 0
    if norm > 0.5:
        squarings = int(math.ceil(math.log2(norm / 0.5)))
    b = mat / (2.0 ** squarings)
    n = mat.shape[0]
    total = np.eye(n)
    term = np.eye(n)
    for k in range(1, 14):
        term = term @ b / k
        total = total + term
    for _ in range(squarings):
        total = total @ total
    return total


def _expm_nilpotent(mat: np.ndarray) -> np.ndarray:
    """Exact exponential of a nilpotent matrix (terminating series)."""
    n = mat.shape[0]
    total = np.eye(n)
    term = np.eye(n)
    for k in range(1, n):
        term = term @ mat / k
        if not term.any():
            break
        total = total + term
    return total


def exp(xi: AlgebraElement) -> GroupElement:
    """Exponential map onto the group.

    Exact (terminating series) for the nilpotent Galileo algebras; elsewhere
    scaling-and-squaring with a truncated series, followed by re-projection.
    """
    tag = xi.tag
    if tag.kind is GroupKind.GALILEO:
        return group_element(tag, _expm_nilpotent(xi.mat), project=True)
    if tag.kind is GroupKind.PRODUCT:
        out = np.zeros_like(xi.mat)
        for sl, f in _product_slices(tag):
            out[sl, sl] = exp(AlgebraElement(f, xi.mat[sl, sl])).mat
        return group_element(tag, out, project=True)
    return group_element(tag, _expm_taylor(xi.mat), project=True)


def _logm_principal(mat: np.ndarray) -> np.ndarray:
    """Principal matrix logarithm, raising when the branch cut is hit."""
    eigvals = np.linalg.eigvals(mat)
    for lam in eigvals:
        if lam.real <= 0 and abs(lam.imag) <= 1e-12 * max(1.0, abs(lam)):
            raise NoPrincipalLogarithmError(
                f"no principal logarithm: eigenvalue {lam:.6g} lies on the closed negative real axis"
            )
    log = scipy.linalg.logm(mat)
    if np.iscomplexobj(log):
        if np.max(np.abs(log.imag)) > 1e-9:
            raise NoPrincipalLogarithmError("no real principal logarithm for this element")
        log = log.real
    return log


def log(g: GroupElement) -> AlgebraElement:
    """Principal logarithm into the algebra; inverse of :func:`exp` for
    elements with spectral radius of ``g - identity`` below the declared
    log radius.

    Raises :class:`NoPrincipalLogarithmError` outside the principal branch
    (e.g. for an O(p, q) element with an eigenvalue on the negative real
    axis).
    """
    tag = g.tag
    if tag.kind is GroupKind.GALILEO:
        x = g.mat - np.eye(tag.size)
        return algebra_element(tag, x - 0.5 * (x @ x), project=True)
    if tag.kind is GroupKind.PRODUCT:
        out = np.zeros_like(g.mat)
        for sl, f in _product_slices(tag):
            out[sl, sl] = log(GroupElement(f, g.mat[sl, sl])).mat
        return algebra_element(tag, out, project=True)
    if tag.kind is GroupKind.PGL:
        # M and -M represent the same projective element; pick the branch
        # that admits a principal logarithm.
        try:
            raw = _logm_principal(g.mat)
        except NoPrincipalLogarithmError:
            raw = _logm_principal(-g.mat)
        return algebra_element(tag, raw, project=True)
    return algebra_element(tag, _logm_principal(g.mat), project=True)


def Ad(g: GroupElement, xi: AlgebraElement) -> AlgebraElement:
    """Adjoint action ``g xi g^{-1}``, projected back to the algebra pattern."""
    _require_same_tag(g.tag, xi.tag)
    conj = g.mat @ xi.mat @ inverse_matrix(g.tag, g.mat)
    return algebra_element(g.tag, conj, project=True)


def bracket(xi: AlgebraElement, eta: AlgebraElement) -> AlgebraElement:
    """Lie bracket ``xi eta - eta xi``."""
    _require_same_tag(xi.tag, eta.tag)
    return algebra_element(xi.tag, xi.mat @ eta.mat - eta.mat @ xi.mat, project=True)


def maurer_cartan(g: GroupElement, dg: np.ndarray) -> AlgebraElement:
    """Left Maurer-Cartan pairing ``g^{-1} dg`` of a tangent matrix at ``g``."""
    dg = np.asarray(dg, dtype=float)
    if dg.shape != g.mat.shape:
        raise InvalidElementError(
            f"tangent matrix shape {dg.shape} does not match element shape {g.mat.shape}"
        )
    return algebra_element(g.tag, inverse_matrix(g.tag, g.mat) @ dg, project=True)


# ---------------------------------------------------------------------------
# Algebra bases and coordinates
# ---------------------------------------------------------------------------

def _single_entry(n: int, i: int, j: int) -> np.ndarray:
    m = np.zeros((n, n))
    m[i, j] = 1.0
    return m


@lru_cache(maxsize=None)
def algebra_basis(tag: GroupTag) -> tuple[AlgebraElement, ...]:
    """Fixed ordered basis of the tag's Lie algebra.

    Galileo ordering is (boosts, time translation, space translations),
    i.e. ``(eps_v..., eps_a, eps_b...)`` with ``eps_v = E_{1,0}``,
    ``eps_a = E_{0,last}`` and ``eps_b = E_{1,last}`` in the 2-dimensional
    case, so coefficient extraction on this basis is exact.
    """
    n = tag.size
    kind = tag.kind
    mats: list[np.ndarray] = []
    if kind is GroupKind.GL:
        mats = [_single_entry(n, i, j) for i in range(n) for j in range(n)]
    elif kind is GroupKind.SO:
        mats = [
            _single_entry(n, i, j) - _single_entry(n, j, i)
            for i in range(n)
            for j in range(i + 1, n)
        ]
    elif kind is GroupKind.ORTHOGONAL:
        eta = eta_matrix(tag)
        mats = [
            eta @ (_single_entry(n, i, j) - _single_entry(n, j, i))
            for i in range(n)
            for j in range(i + 1, n)
        ]
    elif kind is GroupKind.AFF:
        d = tag.dims[0]
        mats = [_single_entry(n, i, j) for i in range(d) for j in range(d)]
        mats += [_single_entry(n, i, d) for i in range(d)]
    elif kind is GroupKind.GALILEO:
        s = tag.dims[0] - 1
        mats = [_single_entry(n, 1 + i, 0) for i in range(s)]       # boosts
        mats += [_single_entry(n, 0, n - 1)]                         # time translation
        mats += [_single_entry(n, 1 + i, n - 1) for i in range(s)]   # space translations
    elif kind is GroupKind.PGL:
        mats = [_single_entry(n, i, j) for i in range(n) for j in range(n) if i != j]
        mats += [
            _single_entry(n, i, i) - _single_entry(n, i + 1, i + 1)
            for i in range(n - 1)
        ]
    else:
        for sl, f in _product_slices(tag):
            for b in algebra_basis(f):
                m = np.zeros((n, n))
                m[sl, sl] = b.mat
                mats.append(m)
    return tuple(AlgebraElement(tag, m) for m in mats)


def algebra_dim(tag: GroupTag) -> int:
    return len(algebra_basis(tag))


@lru_cache(maxsize=None)
def _coords_operator(tag: GroupTag) -> np.ndarray:
    stacked = np.stack([b.mat.ravel() for b in algebra_basis(tag)])  # (k, n*n)
    return np.linalg.pinv(stacked.T)  # (k, n*n)


def algebra_coords(xi: AlgebraElement) -> np.ndarray:
    """Coefficients of ``xi`` on :func:`algebra_basis` (exact for Galileo)."""
    tag = xi.tag
    if tag.kind is GroupKind.GALILEO:
        s = tag.dims[0] - 1
        m = xi.mat
        return np.concatenate([m[1:-1, 0], [m[0, -1]], m[1:-1, -1]])
    return _coords_operator(tag) @ xi.mat.ravel()


def algebra_from_coords(tag: GroupTag, coords: Iterable[float]) -> AlgebraElement:
    coords = np.asarray(list(coords), dtype=float)
    basis = algebra_basis(tag)
    if coords.shape != (len(basis),):
        raise InvalidElementError(
            f"expected {len(basis)} coefficients for {tag.name}, got {coords.shape}"
        )
    mat = np.zeros((tag.size, tag.size))
    for c, b in zip(coords, basis):
        mat += c * b.mat
    return AlgebraElement(tag, mat)


# ---------------------------------------------------------------------------
# Random sampling (tests, audits)
# ---------------------------------------------------------------------------

def random_algebra(tag: GroupTag, rng: np.random.Generator, scale: float = 0.5) -> AlgebraElement:
    """Random algebra element with Frobenius norm ``scale``."""
    xi = algebra_from_coords(tag, rng.standard_normal(algebra_dim(tag)))
    n = xi.norm()
    if n > 0:
        xi = (scale / n) * xi
    return xi


def random_element(tag: GroupTag, rng: np.random.Generator, scale: float = 0.5) -> GroupElement:
    """Random group element, sampled as ``exp`` of a random algebra element."""
    return exp(random_algebra(tag, rng, scale))


# ---------------------------------------------------------------------------
# Galileo conveniences
# ---------------------------------------------------------------------------

def galileo_element(v, a: float, b, tag: GroupTag = GALILEO2) -> GroupElement:
    """Galileo element with boost ``v``, time shift ``a``, space shift ``b``.

    ``v`` and ``b`` are scalars for ``Galileo(2)`` and arrays of length
    ``spacetime_dim - 1`` in general.
    """
    s = tag.dims[0] - 1
    v = np.atleast_1d(np.asarray(v, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    if v.shape != (s,) or b.shape != (s,):
        raise InvalidElementError(f"{tag.name} needs {s} boost and {s} translation entries")
    mat = np.eye(tag.size)
    mat[1:-1, 0] = v
    mat[0, -1] = a
    mat[1:-1, -1] = b
    return GroupElement(tag, mat)


def galileo_triple(g: GroupElement):
    """Extract ``(v, a, b)`` from a Galileo element (bit-exact reads)."""
    if g.tag.kind is not GroupKind.GALILEO:
        raise TagMismatchError("galileo_triple needs a Galileo element")
    s = g.tag.dims[0] - 1
    v = g.mat[1:-1, 0]
    b = g.mat[1:-1, -1]
    a = g.mat[0, -1]
    if s == 1:
        return float(v[0]), float(a), float(b[0])
    return v.copy(), float(a), b.copy()


def galileo_algebra(cv, ca: float, cb, tag: GroupTag = GALILEO2) -> AlgebraElement:
    """Algebra element ``cv . eps_v + ca eps_a + cb . eps_b``."""
    s = tag.dims[0] - 1
    cv = np.atleast_1d(np.asarray(cv, dtype=float))
    cb = np.atleast_1d(np.asarray(cb, dtype=float))
    if cv.shape != (s,) or cb.shape != (s,):
        raise InvalidElementError(f"{tag.name} needs {s} boost and {s} translation coefficients")
    mat = np.zeros((tag.size, tag.size))
    mat[1:-1, 0] = cv
    mat[0, -1] = ca
    mat[1:-1, -1] = cb
    return AlgebraElement(tag, mat)
