"""Horizontal lifts, parallel transport, holonomy and development.

Lifting a base path ``t -> x(t)`` through a connection means solving the
group-valued initial value problem obtained from horizontality of the
lifted tangent,

    Ad_{g^{-1}} A(x, x') + g^{-1} g' = 0   i.e.   g' = -A(x(t), x'(t)) g,

with classical fixed-step RK4 on the matrix representation, re-projecting
onto the group after every step. Dense output between accepted nodes uses
group-logarithm geodesic interpolation, which stays on the group exactly.

Accuracy is controlled two ways: the stored node velocities satisfy the
horizontality contract (audited against the full connection form at every
accepted sample) and a Richardson step-halving estimate is exposed through
:func:`lift_error_estimate` rather than driving automatic adaptivity.

Orientation and sign conventions used by loop computations: a loop is
traversed in the direction of increasing parameter; with the ODE above, the
holonomy of a small coordinate square of side ``d`` spanned by directions
``(e1, e2)`` (first leg along ``e1``) satisfies
``log(holonomy) = -d^2 F(e1, e2) + O(d^3)`` where ``F`` is
:func:`cartanconn.principal.curvature`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import liegroup as lg
from .errors import (
    DomainError,
    GeometryError,
    LiftDivergedError,
    LoopNotClosedError,
)
from .principal import LocalConnection, PrincipalPoint, PrincipalTangent, full_form
from .settings import DEFAULT_TOLERANCES, Tolerances


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SmoothPath:
    """Time-parameterized curve in the base with caller-supplied derivative.

    The derivative is sanity-checked against central finite differences at
    ten probe times on construction.
    """

    t0: float
    t1: float
    x: Callable[[float], np.ndarray]
    xdot: Callable[[float], np.ndarray]

    def __post_init__(self):
        if not self.t0 < self.t1:
            raise ValueError("path needs t0 < t1")
        self._validate()

    def _validate(self, tol: Tolerances = DEFAULT_TOLERANCES):
        h = 1e-6 * (1.0 + abs(self.t0) + abs(self.t1))
        probes = np.linspace(self.t0 + 2 * h, self.t1 - 2 * h, 10)
        for t in probes:
            value = np.asarray(self.x(t), dtype=float)
            deriv = np.asarray(self.xdot(t), dtype=float)
            if not (np.all(np.isfinite(value)) and np.all(np.isfinite(deriv))):
                raise ValueError(f"path is not finite at t = {t}")
            fd = (np.asarray(self.x(t + h)) - np.asarray(self.x(t - h))) / (2 * h)
            if np.max(np.abs(fd - deriv)) > tol.path_check:
                raise ValueError(
                    f"declared derivative disagrees with finite differences at t = {t}"
                )

    @property
    def segments(self) -> tuple["SmoothPath", ...]:
        return (self,)

    def point(self, t: float) -> np.ndarray:
        return np.asarray(self.x(t), dtype=float)

    def velocity(self, t: float) -> np.ndarray:
        return np.asarray(self.xdot(t), dtype=float)

    def reverse(self) -> "SmoothPath":
        """Time reversal on the same parameter interval."""
        t0, t1, x, xdot = self.t0, self.t1, self.x, self.xdot
        return SmoothPath(
            t0,
            t1,
            lambda t: np.asarray(x(t0 + t1 - t), dtype=float),
            lambda t: -np.asarray(xdot(t0 + t1 - t), dtype=float),
        )


class PiecewisePath:
    """Concatenation of time-contiguous smooth pieces.

    Lifts and transports treat each piece exactly, so corners cost no
    integration accuracy.
    """

    def __init__(self, segments: Sequence[SmoothPath]):
        segments = tuple(segments)
        if not segments:
            raise ValueError("need at least one segment")
        for a, b in zip(segments, segments[1:]):
            if abs(a.t1 - b.t0) > 1e-12:
                raise ValueError("segments must be contiguous in time")
            if np.max(np.abs(a.point(a.t1) - b.point(b.t0))) > 1e-9:
                raise ValueError("segments must be continuous in space")
        self.pieces = segments
        self.t0 = segments[0].t0
        self.t1 = segments[-1].t1

    @property
    def segments(self) -> tuple[SmoothPath, ...]:
        return self.pieces

    def point(self, t: float) -> np.ndarray:
        for seg in self.pieces:
            if t <= seg.t1 or seg is self.pieces[-1]:
                return seg.point(t)
        raise ValueError("time outside path interval")

    def reverse(self) -> "PiecewisePath":
        total0, total1 = self.t0, self.t1
        out = []
        for seg in reversed(self.pieces):
            r = seg.reverse()
            # remap [seg.t0, seg.t1] reversed onto the mirrored slot
            a = total0 + (total1 - seg.t1)
            b = total0 + (total1 - seg.t0)
            out.append(_retimed(r, a, b))
        return PiecewisePath(out)


Path = SmoothPath | PiecewisePath


def _retimed(path: SmoothPath, a: float, b: float) -> SmoothPath:
    """Affine reparameterization of ``path`` onto the interval [a, b]."""
    scale = (path.t1 - path.t0) / (b - a)
    t0, x, xdot = path.t0, path.x, path.xdot
    return SmoothPath(
        a,
        b,
        lambda t: np.asarray(x(t0 + (t - a) * scale), dtype=float),
        lambda t: scale * np.asarray(xdot(t0 + (t - a) * scale), dtype=float),
    )


def line_segment(p, q, t0: float, t1: float) -> SmoothPath:
    """Straight segment from ``p`` to ``q`` over [t0, t1]."""
    p = np.asarray(p, dtype=float)
    q = np.asarray(q, dtype=float)
    rate = (q - p) / (t1 - t0)
    return SmoothPath(t0, t1, lambda t: p + (t - t0) * rate, lambda t: rate)


def concat(*paths: Path) -> PiecewisePath:
    pieces: list[SmoothPath] = []
    for p in paths:
        pieces.extend(p.segments)
    return PiecewisePath(pieces)


def square_loop(corner, side: float, axes=(0, 1), dim: int | None = None, t0: float = 0.0) -> PiecewisePath:
    """Closed square loop of side ``side`` in the coordinate plane spanned by
    ``axes``, starting at ``corner`` and traversing the ``axes[0]`` leg first.

    Parameter time equals arc length, so the loop closes at
    ``t0 + 4 side``; closure is exact.
    """
    corner = np.asarray(corner, dtype=float)
    dim = corner.size if dim is None else dim
    e1 = np.zeros(dim)
    e1[axes[0]] = 1.0
    e2 = np.zeros(dim)
    e2[axes[1]] = 1.0
    c0 = corner
    c1 = corner + side * e1
    c2 = corner + side * (e1 + e2)
    c3 = corner + side * e2
    ts = [t0 + k * side for k in range(5)]
    return PiecewisePath(
        [
            line_segment(c0, c1, ts[0], ts[1]),
            line_segment(c1, c2, ts[1], ts[2]),
            line_segment(c2, c3, ts[2], ts[3]),
            line_segment(c3, c0, ts[3], ts[4]),
        ]
    )


# ---------------------------------------------------------------------------
# Fibre actions
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class FiberAction:
    """Left action of the structure group on a chart of the standard fibre."""

    tag: lg.GroupTag
    dim: int
    origin: np.ndarray
    act: Callable[[lg.GroupElement, np.ndarray], np.ndarray]

    def __post_init__(self):
        o = np.asarray(self.origin, dtype=float)
        o.setflags(write=False)
        object.__setattr__(self, "origin", o)

    def __call__(self, g: lg.GroupElement, point) -> np.ndarray:
        return np.asarray(self.act(g, np.asarray(point, dtype=float)), dtype=float)

    def validate(self, rng: np.random.Generator, samples: int = 20, tol: float = 1e-10) -> None:
        """Check act(e, .) = id and the composition law on random samples."""
        e = lg.identity(self.tag)
        for _ in range(samples):
            xi = self.origin + 0.5 * rng.standard_normal(self.dim)
            if np.max(np.abs(self(e, xi) - xi)) > tol:
                raise GeometryError("fibre action does not fix points under the identity")
            g1 = lg.random_element(self.tag, rng, scale=0.4)
            g2 = lg.random_element(self.tag, rng, scale=0.4)
            lhs = self(lg.compose(g1, g2), xi)
            rhs = self(g1, self(g2, xi))
            if np.max(np.abs(lhs - rhs)) > tol:
                raise GeometryError("fibre action violates the composition law")


# ---------------------------------------------------------------------------
# Horizontal lift
# ---------------------------------------------------------------------------

class LiftedPath:
    """Sampled horizontal lift of a base path.

    Stores the accepted nodes ``(t_i, g_i)`` together with the matrix
    velocities ``g_i' = -A(x_i, x_i') g_i``; evaluation between nodes uses
    geodesic interpolation ``g(t) = g_i exp(theta log(g_i^{-1} g_{i+1}))``.
    """

    def __init__(self, base: Path, conn: LocalConnection, ts, elements, velocities):
        self.base = base
        self.conn = conn
        self.ts = np.asarray(ts, dtype=float)
        self.elements: list[lg.GroupElement] = list(elements)
        self.velocities: list[np.ndarray] = list(velocities)

    @property
    def start(self) -> lg.GroupElement:
        return self.elements[0]

    @property
    def end(self) -> lg.GroupElement:
        return self.elements[-1]

    def at(self, t: float) -> lg.GroupElement:
        ts = self.ts
        if t <= ts[0]:
            return self.elements[0]
        if t >= ts[-1]:
            return self.elements[-1]
        i = int(np.searchsorted(ts, t, side="right") - 1)
        theta = (t - ts[i]) / (ts[i + 1] - ts[i])
        gi = self.elements[i]
        step = lg.compose(lg.inverse(gi), self.elements[i + 1])
        return lg.compose(gi, lg.exp(theta * lg.log(step)))

    def horizontality_residuals(self) -> np.ndarray:
        """Norm of the connection form on the stored node tangents."""
        out = np.empty(len(self.ts))
        segments = self.base.segments
        j = 0
        for i, t in enumerate(self.ts):
            while j < len(segments) - 1 and t > segments[j].t1 + 1e-15:
                j += 1
            seg = segments[j]
            tt = min(max(t, seg.t0), seg.t1)
            p = PrincipalPoint(seg.point(tt), self.elements[i])
            v = PrincipalTangent(seg.velocity(tt), self.velocities[i])
            out[i] = full_form(self.conn, p, v, check_domain=False).norm()
        return out

    def group_defects(self) -> np.ndarray:
        return np.array([lg.group_defect(g.tag, g.mat) for g in self.elements])


def _rk4_segment(conn, seg: SmoothPath, g0_mat: np.ndarray, step: float):
    """Fixed-step RK4 on g' = -A(x(t), x'(t)) g over one smooth segment."""
    tag = conn.tag
    span = seg.t1 - seg.t0
    n_steps = max(1, int(round(span / step)))
    h = span / n_steps

    def rhs(t: float, g_mat: np.ndarray) -> np.ndarray:
        x = seg.point(t)
        if not conn.domain.contains(x):
            raise DomainError(f"path left the chart domain at t = {t}")
        return -conn.coeff(x, seg.velocity(t)).mat @ g_mat

    ts = [seg.t0]
    g = lg.project_to_group(tag, g0_mat)
    mats = [g]
    vels = [rhs(seg.t0, g)]
    t = seg.t0
    for k in range(n_steps):
        k1 = rhs(t, g)
        k2 = rhs(t + h / 2, g + (h / 2) * k1)
        k3 = rhs(t + h / 2, g + (h / 2) * k2)
        k4 = rhs(t + h, g + h * k3)
        g = g + (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4)
        if not np.all(np.isfinite(g)):
            raise LiftDivergedError(f"lift diverged near t = {t + h}")
        g = lg.project_to_group(tag, g)
        t = seg.t0 + (k + 1) * h
        ts.append(t)
        mats.append(g)
        vels.append(rhs(t, g))
    return ts, mats, vels


def horizontal_lift(
    conn: LocalConnection,
    path: Path,
    g0: lg.GroupElement | None = None,
    step: float = 1e-3,
    *,
    tol: Tolerances = DEFAULT_TOLERANCES,
    max_refinements: int = 2,
) -> LiftedPath:
    """Horizontal lift of ``path`` starting at ``g0`` (identity by default).

    The step is halved up to ``max_refinements`` times if the horizontality
    residual of the result exceeds the tolerance; persistent failure raises
    ``LiftDivergedError``.
    """
    if step <= 0:
        raise ValueError("step must be positive")
    if g0 is None:
        g0 = lg.identity(conn.tag)
    if g0.tag != conn.tag:
        raise lg.TagMismatchError("initial element tag does not match the connection")

    current = step
    last_residual = math.inf
    for _ in range(max_refinements + 1):
        try:
            ts_all: list[float] = []
            mats_all: list[np.ndarray] = []
            vels_all: list[np.ndarray] = []
            g_mat = g0.mat
            for seg in path.segments:
                ts, mats, vels = _rk4_segment(conn, seg, g_mat, current)
                offset = 1 if ts_all else 0
                ts_all.extend(ts[offset:])
                mats_all.extend(mats[offset:])
                vels_all.extend(vels[offset:])
                g_mat = mats[-1]
            lifted = LiftedPath(
                path,
                conn,
                ts_all,
                [lg.GroupElement(conn.tag, m) for m in mats_all],
                vels_all,
            )
        except LiftDivergedError:
            current /= 2
            continue
        residuals = lifted.horizontality_residuals()
        last_residual = float(np.max(residuals))
        if last_residual < tol.horizontality:
            defects = lifted.group_defects()
            if np.max(defects) > tol.roundtrip:
                raise LiftDivergedError(
                    f"lift left the group manifold: defect {np.max(defects):.3e}"
                )
            return lifted
        current /= 2
    raise LiftDivergedError(
        f"lift diverged: horizontality residual {last_residual:.3e} "
        f"exceeds {tol.horizontality:.1e} after refinement"
    )


def lift_error_estimate(
    conn: LocalConnection,
    path: Path,
    g0: lg.GroupElement | None = None,
    step: float = 1e-3,
) -> float:
    """Richardson step-halving estimate of the endpoint error of a lift."""
    full = horizontal_lift(conn, path, g0, step)
    half = horizontal_lift(conn, path, g0, step / 2)
    gap = np.max(np.abs(full.end.mat - half.end.mat))
    return float(gap / (2 ** 4 - 1))


# ---------------------------------------------------------------------------
# Transport, holonomy, development
# ---------------------------------------------------------------------------

def parallel_transport(
    conn: LocalConnection,
    path: Path,
    action: FiberAction,
    z0,
    step: float = 1e-3,
    *,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """Parallel transport of the fibre point ``z0`` along ``path``.

    In the trivialization the transport map is ``act(g(t1) g(t0)^{-1}, .)``
    where ``g`` is any horizontal lift; the lift from the identity is used.
    """
    lifted = horizontal_lift(conn, path, None, step, tol=tol)
    mover = lg.compose(lifted.end, lg.inverse(lifted.start))
    return action(mover, z0)


def holonomy(
    conn: LocalConnection,
    loop: Path,
    step: float = 1e-3,
    *,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> lg.GroupElement:
    """Holonomy ``g(t0)^{-1} g(t1)`` of a closed loop, lifted from identity."""
    segs = loop.segments
    start = segs[0].point(segs[0].t0)
    end = segs[-1].point(segs[-1].t1)
    if np.max(np.abs(start - end)) > tol.loop_closure:
        raise LoopNotClosedError(
            f"loop endpoints differ by {np.max(np.abs(start - end)):.3e}"
        )
    lifted = horizontal_lift(conn, loop, None, step, tol=tol)
    return lg.compose(lg.inverse(lifted.start), lifted.end)


@dataclass(eq=False)
class DevelopedPath:
    """Development of a path, sampled in the fibre over the starting base point.

    ``values[i]`` are fibre-chart coordinates at time ``ts[i]``;
    ``initial_tangent`` is a one-sided fourth-order finite-difference
    estimate of the development's velocity at ``t0``.
    """

    ts: np.ndarray
    values: np.ndarray
    base_point: np.ndarray

    @property
    def initial_tangent(self) -> np.ndarray:
        y, h = self.values, self.ts[1] - self.ts[0]
        if len(y) >= 5:
            return (-25 * y[0] + 48 * y[1] - 36 * y[2] + 16 * y[3] - 3 * y[4]) / (12 * h)
        return (y[1] - y[0]) / h

    def second_differences(self) -> np.ndarray:
        """Discrete second derivative ``(y_{i+1} - 2 y_i + y_{i-1}) / h^2``,
        rowwise over interior samples (empty when spacing is nonuniform)."""
        ts, y = self.ts, self.values
        h = np.diff(ts)
        if len(ts) < 3 or np.max(np.abs(h - h[0])) > 1e-9 * h[0]:
            return np.empty((0, y.shape[1]))
        return (y[2:] - 2 * y[1:-1] + y[:-2]) / h[0] ** 2

    def max_second_difference(self) -> float:
        sd = self.second_differences()
        return float(np.max(np.linalg.norm(sd, axis=1))) if len(sd) else 0.0

    def is_straight(self, tol: float) -> bool:
        return self.max_second_difference() < tol


def develop_total_path(
    conn: LocalConnection,
    action: FiberAction,
    base_path: Path,
    fiber_path: Callable[[float], np.ndarray],
    step: float = 1e-3,
    *,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> DevelopedPath:
    """Development of the total-space path ``t -> (x(t), zeta(t))`` into the
    fibre over ``x(t0)``: inverse parallel transport applied sample-wise,
    ``t -> act(g(t)^{-1}, zeta(t))`` for the lift ``g`` from the identity.

    The development is constant exactly when the input path is horizontal.
    """
    lifted = horizontal_lift(conn, base_path, None, step, tol=tol)
    values = np.array(
        [
            action(lg.inverse(g), fiber_path(t))
            for t, g in zip(lifted.ts, lifted.elements)
        ]
    )
    start = base_path.segments[0]
    return DevelopedPath(lifted.ts.copy(), values, start.point(start.t0))
