"""Maxwell's equations as exterior calculus on (t, x1, x2, x3).

Two-forms are stored by their coefficients on the ordered basis

    [dx2^dx3, dx3^dx1, dx1^dx2, dx1^dt, dx2^dt, dx3^dt]

and three-forms on

    [dx1^dx2^dx3, dx2^dx3^dt, dx3^dx1^dt, dx1^dx2^dt],

so antisymmetry is structural. The field strength and excitation forms are

    F = B1 dx2^dx3 + B2 dx3^dx1 + B3 dx1^dx2 + (E1 dx1 + E2 dx2 + E3 dx3) ^ dt
    G = D1 dx2^dx3 + D2 dx3^dx1 + D3 dx1^dx2 - (H1 dx1 + H2 dx2 + H3 dx3) ^ dt
    J = rho dx1^dx2^dx3 - (j1 dx2^dx3 + j2 dx3^dx1 + j3 dx1^dx2) ^ dt

and the classical equations become ``dF = 0`` and ``dG = 4 pi J``: expanding
the exterior derivative componentwise gives the dictionary

    dF = (div B) dx1^dx2^dx3 + (rot E + dB/dt)_i dxj^dxk^dt
    dG - 4 pi J = (div D - 4 pi rho) dx1^dx2^dx3
                  + (dD/dt - rot H + 4 pi j)_i dxj^dxk^dt .

The Hodge star uses the diagonal metric diag(-alpha, 1, 1, 1) with
orientation dt^dx1^dx2^dx3. The normalization alpha is calibrated by the
constitutive relations D = eps0 E, H = B / mu0: requiring
``G = sqrt(eps0/mu0) * (star F)`` forces ``alpha = c^2`` with
``c = 1/sqrt(eps0 mu0)`` (see docs/hodge-calibration.md for the expansion
over the six-dimensional basis). With that normalization the star squares
to minus the identity on two-forms, as the Lorentzian signature demands.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import GeometryError

BASIS_2FORMS = ("dx2^dx3", "dx3^dx1", "dx1^dx2", "dx1^dt", "dx2^dt", "dx3^dt")
BASIS_3FORMS = ("dx1^dx2^dx3", "dx2^dx3^dt", "dx3^dx1^dt", "dx1^dx2^dt")


@dataclass(frozen=True)
class EMConstants:
    """Vacuum permittivity and permeability (SI values by default)."""

    eps0: float = 8.8541878128e-12
    mu0: float = 1.25663706212e-6

    @property
    def c(self) -> float:
        """Wave speed 1 / sqrt(eps0 mu0)."""
        return 1.0 / math.sqrt(self.eps0 * self.mu0)

    @property
    def alpha(self) -> float:
        """Calibrated time-time metric coefficient (c squared)."""
        return self.c ** 2

    @property
    def impedance_ratio(self) -> float:
        return math.sqrt(self.eps0 / self.mu0)


SI = EMConstants()

ScalarField = Callable[[float, float, float, float], float]


def as_field(value) -> ScalarField:
    """Lift constants to constant fields; callables pass through."""
    if callable(value):
        return value
    const = float(value)
    return lambda t, x1, x2, x3: const


def _triple(fields) -> tuple[ScalarField, ScalarField, ScalarField]:
    if len(fields) != 3:
        raise GeometryError("vector field needs exactly three components")
    return tuple(as_field(f) for f in fields)


@dataclass(frozen=True, eq=False)
class Form2Field:
    """Two-form with callable coefficients on :data:`BASIS_2FORMS`."""

    coeffs: tuple[ScalarField, ...]

    def __post_init__(self):
        if len(self.coeffs) != 6:
            raise GeometryError("a two-form needs six coefficient functions")

    def __call__(self, point) -> np.ndarray:
        t, x1, x2, x3 = point
        return np.array([c(t, x1, x2, x3) for c in self.coeffs])


@dataclass(frozen=True, eq=False)
class Form3Field:
    """Three-form with callable coefficients on :data:`BASIS_3FORMS`."""

    coeffs: tuple[ScalarField, ...]

    def __post_init__(self):
        if len(self.coeffs) != 4:
            raise GeometryError("a three-form needs four coefficient functions")

    def __call__(self, point) -> np.ndarray:
        t, x1, x2, x3 = point
        return np.array([c(t, x1, x2, x3) for c in self.coeffs])


def build_F(E, B) -> Form2Field:
    """Field-strength two-form from the electric field and the magnetic
    induction (note the +E ^ dt placement)."""
    e1, e2, e3 = _triple(E)
    b1, b2, b3 = _triple(B)
    return Form2Field((b1, b2, b3, e1, e2, e3))


def build_G(D, Hm) -> Form2Field:
    """Excitation two-form from the displacement and the magnetic field
    (note the -H ^ dt placement)."""
    d1, d2, d3 = _triple(D)
    h1, h2, h3 = _triple(Hm)
    neg = lambda f: (lambda t, x1, x2, x3: -f(t, x1, x2, x3))
    return Form2Field((d1, d2, d3, neg(h1), neg(h2), neg(h3)))


def build_J(rho, j) -> Form3Field:
    """Source three-form from the charge and current densities."""
    r = as_field(rho)
    j1, j2, j3 = _triple(j)
    neg = lambda f: (lambda t, x1, x2, x3: -f(t, x1, x2, x3))
    return Form3Field((r, neg(j1), neg(j2), neg(j3)))


# ---------------------------------------------------------------------------
# Numerical exterior derivative
# ---------------------------------------------------------------------------

def _partial(f: ScalarField, point, axis: int, h: float) -> float:
    plus = list(point)
    minus = list(point)
    plus[axis] += h
    minus[axis] -= h
    return (f(*plus) - f(*minus)) / (2.0 * h)


def d_numeric(form: Form2Field, point, h: float = 1e-4) -> np.ndarray:
    """Exterior derivative of a two-form at a point, as coefficients on
    :data:`BASIS_3FORMS`; central differences, O(h^2) and exact for
    polynomial coefficients of degree at most two."""
    c = form.coeffs
    d = lambda i, axis: _partial(c[i], point, axis, h)
    return np.array(
        [
            d(0, 1) + d(1, 2) + d(2, 3),
            d(0, 0) + d(5, 2) - d(4, 3),
            d(1, 0) + d(3, 3) - d(5, 1),
            d(2, 0) + d(4, 1) - d(3, 2),
        ]
    )


def d3_numeric(form: Form3Field, point, h: float = 1e-4) -> float:
    """Exterior derivative of a three-form: the coefficient of
    dt^dx1^dx2^dx3."""
    c = form.coeffs
    d = lambda i, axis: _partial(c[i], point, axis, h)
    return d(0, 0) - d(1, 1) - d(2, 2) - d(3, 3)


# ---------------------------------------------------------------------------
# Hodge star
# ---------------------------------------------------------------------------

def hodge_matrix(alpha: float) -> np.ndarray:
    """Matrix of the star on two-form coefficients for the metric
    diag(-alpha, 1, 1, 1) and orientation dt^dx1^dx2^dx3."""
    root = math.sqrt(alpha)
    mat = np.zeros((6, 6))
    for i in range(3):
        mat[i + 3, i] = -root       # dxj^dxk -> -sqrt(alpha) dxi^dt
        mat[i, i + 3] = 1.0 / root  # dxi^dt  ->  dxj^dxk / sqrt(alpha)
    return mat


def hodge2(form: Form2Field, point, constants: EMConstants = SI) -> np.ndarray:
    """Star of a two-form at a point (coefficients on the two-form basis)."""
    return hodge_matrix(constants.alpha) @ form(point)


# ---------------------------------------------------------------------------
# Residual report
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MaxwellReport:
    """Worst-case residuals of dF = 0 and dG = 4 pi J over the probe points,
    together with the classical vector-calculus residuals and the gap of
    the component dictionary identifying the two."""

    points: int
    max_dF: float
    max_dG_minus_4piJ: float
    max_curl_E_plus_dBdt: float
    max_div_B: float
    max_curl_H_minus_dDdt_minus_4pij: float
    max_div_D_minus_4pirho: float
    identification_gap: float
    continuity_residual: float

    def rows(self) -> list[tuple[str, float]]:
        return [
            ("dF", self.max_dF),
            ("dG_minus_4piJ", self.max_dG_minus_4piJ),
            ("curl_E_plus_dBdt", self.max_curl_E_plus_dBdt),
            ("div_B", self.max_div_B),
            ("curl_H_minus_dDdt_minus_4pij", self.max_curl_H_minus_dDdt_minus_4pij),
            ("div_D_minus_4pirho", self.max_div_D_minus_4pirho),
            ("identification_gap", self.identification_gap),
            ("continuity", self.continuity_residual),
        ]

    @property
    def satisfied(self) -> bool:
        return max(self.max_dF, self.max_dG_minus_4piJ) < 1e-5


def _curl(fields, point, h):
    f1, f2, f3 = fields
    p = lambda f, axis: _partial(f, point, axis, h)
    return np.array(
        [p(f3, 2) - p(f2, 3), p(f1, 3) - p(f3, 1), p(f2, 1) - p(f1, 2)]
    )


def _div(fields, point, h):
    f1, f2, f3 = fields
    return _partial(f1, point, 1, h) + _partial(f2, point, 2, h) + _partial(f3, point, 3, h)


def _dt(fields, point, h):
    return np.array([_partial(f, point, 0, h) for f in fields])


def maxwell_check(
    E,
    B,
    D,
    Hm,
    rho,
    j,
    points: Sequence,
    h: float = 1e-4,
) -> MaxwellReport:
    """Evaluate both faces of the reformulation over the probe points.

    Reports the form residuals (dF, dG - 4 pi J), the classical residuals
    (rot E + dB/dt, div B, rot H - dD/dt - 4 pi j, div D - 4 pi rho), the
    worst gap of the componentwise identification between the two, and the
    charge-continuity residual d(4 pi J) / 4 pi.
    """
    E, B, D, Hm, j = map(_triple, (E, B, D, Hm, j))
    rho = as_field(rho)
    form_F = build_F(E, B)
    form_G = build_G(D, Hm)
    form_J = build_J(rho, j)

    worst = dict.fromkeys(
        ("dF", "dG", "curlE", "divB", "curlH", "divD", "ident", "cont"), 0.0
    )
    for point in points:
        df = d_numeric(form_F, point, h)
        dg = d_numeric(form_G, point, h)
        jj = form_J(point)
        dg_src = dg - 4.0 * math.pi * jj

        curl_e = _curl(E, point, h) + _dt(B, point, h)
        div_b = _div(B, point, h)
        curl_h = _curl(Hm, point, h) - _dt(D, point, h) - 4.0 * math.pi * np.array(
            [f(*point) for f in j]
        )
        div_d = _div(D, point, h) - 4.0 * math.pi * rho(*point)

        worst["dF"] = max(worst["dF"], float(np.max(np.abs(df))))
        worst["dG"] = max(worst["dG"], float(np.max(np.abs(dg_src))))
        worst["curlE"] = max(worst["curlE"], float(np.max(np.abs(curl_e))))
        worst["divB"] = max(worst["divB"], abs(div_b))
        worst["curlH"] = max(worst["curlH"], float(np.max(np.abs(curl_h))))
        worst["divD"] = max(worst["divD"], abs(div_d))

        # componentwise identification of the form residuals with the
        # classical ones
        ident = max(
            abs(df[0] - div_b),
            float(np.max(np.abs(df[1:] - curl_e))),
            abs(dg_src[0] - div_d),
            float(np.max(np.abs(dg_src[1:] - (-curl_h)))),
        )
        worst["ident"] = max(worst["ident"], ident)
        worst["cont"] = max(worst["cont"], abs(d3_numeric(form_J, point, h)))

    return MaxwellReport(
        points=len(points),
        max_dF=worst["dF"],
        max_dG_minus_4piJ=worst["dG"],
        max_curl_E_plus_dBdt=worst["curlE"],
        max_div_B=worst["divB"],
        max_curl_H_minus_dDdt_minus_4pij=worst["curlH"],
        max_div_D_minus_4pirho=worst["divD"],
        identification_gap=worst["ident"],
        continuity_residual=worst["cont"],
    )


# ---------------------------------------------------------------------------
# Closed-form presets
# ---------------------------------------------------------------------------

def preset_plane_wave(constants: EMConstants = SI, k=(1.0, 0.0, 0.0), e0=(0.0, 1.0, 0.0)):
    """Vacuum plane wave: E = e0 cos(k.x - w t), B = (k x e0)/w cos(...),
    w = c |k|; the constitutive fields and zero sources complete the set."""
    k = np.asarray(k, dtype=float)
    e0 = np.asarray(e0, dtype=float)
    if abs(float(np.dot(k, e0))) > 1e-12:
        raise GeometryError("plane wave needs e0 orthogonal to k")
    omega = constants.c * float(np.linalg.norm(k))
    b0 = np.cross(k, e0) / omega

    def phase(t, x1, x2, x3):
        return k[0] * x1 + k[1] * x2 + k[2] * x3 - omega * t

    E = tuple((lambda t, x1, x2, x3, a=a: a * math.cos(phase(t, x1, x2, x3))) for a in e0)
    B = tuple((lambda t, x1, x2, x3, a=a: a * math.cos(phase(t, x1, x2, x3))) for a in b0)
    D = tuple((lambda t, x1, x2, x3, f=f: constants.eps0 * f(t, x1, x2, x3)) for f in E)
    Hm = tuple((lambda t, x1, x2, x3, f=f: f(t, x1, x2, x3) / constants.mu0) for f in B)
    return E, B, D, Hm, 0.0, (0.0, 0.0, 0.0)


def preset_coulomb(constants: EMConstants = SI, q: float = 1.0):
    """Static field q r / |r|^3 with its constitutive partners; sources
    vanish away from the origin, where the probe grids must stay."""

    def component(i):
        def f(t, x1, x2, x3):
            r = math.sqrt(x1 * x1 + x2 * x2 + x3 * x3)
            return q * (x1, x2, x3)[i] / r ** 3

        return f

    E = tuple(component(i) for i in range(3))
    D = tuple((lambda t, x1, x2, x3, f=f: constants.eps0 * f(t, x1, x2, x3)) for f in E)
    zero = (0.0, 0.0, 0.0)
    return E, zero, D, zero, 0.0, zero


def preset_polynomial(constants: EMConstants = SI):
    """Linear static solution E = (x1, x2, x3) with the uniform charge
    density div D = 4 pi rho demands; exact for the finite differences."""
    E = (
        lambda t, x1, x2, x3: x1,
        lambda t, x1, x2, x3: x2,
        lambda t, x1, x2, x3: x3,
    )
    D = tuple((lambda t, x1, x2, x3, f=f: constants.eps0 * f(t, x1, x2, x3)) for f in E)
    rho = 3.0 * constants.eps0 / (4.0 * math.pi)
    zero = (0.0, 0.0, 0.0)
    return E, zero, D, zero, rho, zero


PRESETS = {
    "plane-wave": preset_plane_wave,
    "coulomb": preset_coulomb,
    "polynomial": preset_polynomial,
}


def probe_grid(t_values, x_values) -> list[tuple[float, float, float, float]]:
    """Cartesian probe grid from one time axis and one shared space axis."""
    return [
        (t, x1, x2, x3)
        for t in t_values
        for x1 in x_values
        for x2 in x_values
        for x3 in x_values
    ]


# ---------------------------------------------------------------------------
# Grid-sampled fields (CSV interface)
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class GridSampledField:
    """Scalar field sampled on a full regular lattice in (t, x1, x2, x3)."""

    axes: tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]
    values: np.ndarray

    @classmethod
    def from_csv(cls, path) -> "GridSampledField":
        """Load from a CSV file with header ``t,x1,x2,x3,value``; the rows
        must fill a complete lattice."""
        rows = []
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader)
            if [h.strip() for h in header] != ["t", "x1", "x2", "x3", "value"]:
                raise GeometryError(f"{path}: expected header t,x1,x2,x3,value")
            for row in reader:
                if row:
                    rows.append([float(v) for v in row])
        if not rows:
            raise GeometryError(f"{path}: no samples")
        data = np.asarray(rows)
        axes = tuple(np.unique(data[:, i]) for i in range(4))
        shape = tuple(len(a) for a in axes)
        if len(rows) != int(np.prod(shape)):
            raise GeometryError(f"{path}: samples do not fill a complete lattice")
        values = np.full(shape, np.nan)
        indexers = [
            {float(v): i for i, v in enumerate(axis)} for axis in axes
        ]
        for t, x1, x2, x3, v in data:
            idx = tuple(indexers[i][c] for i, c in enumerate((t, x1, x2, x3)))
            values[idx] = v
        if np.any(np.isnan(values)):
            raise GeometryError(f"{path}: duplicate or missing lattice points")
        return cls(axes, values)

    def partial(self, axis: int) -> np.ndarray:
        """Central-difference derivative array along the given axis."""
        if len(self.axes[axis]) < 3:
            raise GeometryError("need at least three samples along each axis")
        return np.gradient(self.values, self.axes[axis], axis=axis, edge_order=2)


def maxwell_check_sampled(E, B, D, Hm, rho, j) -> MaxwellReport:
    """Residuals of the reformulation for grid-sampled fields, evaluated on
    interior lattice points with grid-spacing central differences."""
    fields = [*E, *B, *D, *Hm, rho, *j]
    axes = fields[0].axes
    for f in fields:
        if any(len(a) != len(b) or np.max(np.abs(a - b)) > 0 for a, b in zip(f.axes, axes)):
            raise GeometryError("all sampled fields must share one lattice")

    interior = tuple(slice(1, -1) for _ in range(4))
    div_b = sum(B[i].partial(1 + i) for i in range(3))[interior]
    div_d = sum(D[i].partial(1 + i) for i in range(3))[interior] - 4 * math.pi * rho.values[interior]
    curl_e = [
        (E[2].partial(2) - E[1].partial(3) + B[0].partial(0))[interior],
        (E[0].partial(3) - E[2].partial(1) + B[1].partial(0))[interior],
        (E[1].partial(1) - E[0].partial(2) + B[2].partial(0))[interior],
    ]
    curl_h = [
        (Hm[2].partial(2) - Hm[1].partial(3) - D[0].partial(0))[interior] - 4 * math.pi * j[0].values[interior],
        (Hm[0].partial(3) - Hm[2].partial(1) - D[1].partial(0))[interior] - 4 * math.pi * j[1].values[interior],
        (Hm[1].partial(1) - Hm[0].partial(2) - D[2].partial(0))[interior] - 4 * math.pi * j[2].values[interior],
    ]
    max_curl_e = float(max(np.max(np.abs(c)) for c in curl_e))
    max_curl_h = float(max(np.max(np.abs(c)) for c in curl_h))
    max_div_b = float(np.max(np.abs(div_b)))
    max_div_d = float(np.max(np.abs(div_d)))
    n_interior = int(np.prod([max(s - 2, 0) for s in rho.values.shape]))
    return MaxwellReport(
        points=n_interior,
        max_dF=max(max_div_b, max_curl_e),
        max_dG_minus_4piJ=max(max_div_d, max_curl_h),
        max_curl_E_plus_dBdt=max_curl_e,
        max_div_B=max_div_b,
        max_curl_H_minus_dDdt_minus_4pij=max_curl_h,
        max_div_D_minus_4pirho=max_div_d,
        identification_gap=0.0,
        continuity_residual=float(
            np.max(
                np.abs(
                    rho.partial(0)[interior]
                    + sum(j[i].partial(1 + i) for i in range(3))[interior]
                )
            )
        ),
    )
