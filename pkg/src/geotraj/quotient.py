"""Gauge sections of the trajectory space and the conformal co-symplectic structure.

Every trajectory is represented by a gauge-fixed geodesic on one of these charts:

* ``NonNullAxis(i, ±)`` for space-like and time-like lines: Vᵢ = ±1 and
  g(V, X) = 0.  Chart coordinates are the remaining velocity components
  followed by the remaining position components (2n − 2 numbers).
* ``NullTimeSlice(±)`` for light rays: V_time = ±1 and X_time = 0.  The
  spatial velocity lies on the unit quadric and is parametrized by the
  rational stereographic map

      u ↦ (2u, Q(u) − 1) / (Q(u) + 1),    Q(u) = Σ Gⱼ uⱼ²,

  with the last space-like axis as projection axis.  Chart coordinates are
  (u₁, …, u_{n−2}, x₁, …, x_{n−1}), 2n − 3 numbers.

All gauge solves are rational, so exact arithmetic survives end to end.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .action import AffineElement, VerificationError, act, action_differential, orbit_frame
from .linalg import (
    LinAlgError,
    Mat,
    Rational,
    Scalar,
    Subspace,
    Vec,
    dot,
    image,
    inverse,
    is_antisymmetric,
    products_identity,
    is_zero,
    mat_mul,
    mat_vec,
    mats_equal,
    identity,
    rank,
    solve,
    subspace_annihilator,
    subspace_intersect,
    symplectic_orthogonal,
    transpose,
    unit,
)
from .minkowski import CausalKind, Metric, classify, inner, lower
from .phase import Geodesic, PhaseTangent, hamiltonian_differential, omega_matrix

AXIS = "NonNullAxis"
NULL = "NullTimeSlice"


class ChartDomainError(ValueError):
    """The geodesic is not in the domain of the requested chart."""


class DecompositionError(LinAlgError):
    """A phase vector does not split as section tangent + orbit tangent."""


@dataclass(frozen=True)
class GaugeChart:
    kind: str
    sign: int
    axis: int | None = None  # 1-based, NonNullAxis only

    def __post_init__(self):
        if self.kind not in (AXIS, NULL):
            raise ValueError(f"unknown chart kind {self.kind!r}")
        if self.sign not in (1, -1):
            raise ValueError("chart sign must be +1 or -1")
        if (self.kind == AXIS) != (self.axis is not None):
            raise ValueError("NonNullAxis charts need an axis, NullTimeSlice charts must not have one")

    @classmethod
    def non_null(cls, axis: int, sign: int) -> "GaugeChart":
        return cls(AXIS, sign, axis)

    @classmethod
    def null(cls, sign: int) -> "GaugeChart":
        return cls(NULL, sign)

    @property
    def is_null(self) -> bool:
        return self.kind == NULL

    def __str__(self) -> str:
        s = "+" if self.sign > 0 else "-"
        if self.kind == AXIS:
            return f"{AXIS}({self.axis},{s})"
        return f"{NULL}({s})"


def atlas(g: Metric) -> tuple[GaugeChart, ...]:
    """2n axis charts plus the two null charts (when the signature has light rays)."""
    charts = [GaugeChart.non_null(i, s) for i in range(1, g.n + 1) for s in (1, -1)]
    if g.p >= 1 and g.q >= 1:
        charts += [GaugeChart.null(1), GaugeChart.null(-1)]
    return tuple(charts)


def chart_dimension(g: Metric, chart: GaugeChart) -> int:
    return 2 * g.n - 3 if chart.is_null else 2 * g.n - 2


@dataclass(frozen=True)
class ChartPoint:
    metric: Metric
    chart: GaugeChart
    gamma: Geodesic
    coords: Vec


@dataclass(frozen=True)
class QuotientStructure:
    point: ChartPoint
    F_up: Subspace
    F_down: Subspace
    sigma: Mat
    sigma_rank: int
    image: Subspace


# ---------------------------------------------------------------------------
# stereographic parametrization of null directions


def _null_axes(g: Metric) -> tuple[int, list[int]]:
    """(projection axis, u-coordinate indices) among the spatial slots 0..n-2."""
    if g.p < 1 or g.q < 1:
        raise ChartDomainError(f"signature {g} has no null directions")
    axis = g.p - 1
    others = [k for k in range(g.n - 1) if k != axis]
    return axis, others


def _div(x, y):
    if isinstance(x, float) or isinstance(y, float):
        return x / y
    return Rational(x) / y


def stereo(g: Metric, u: Sequence[Scalar]) -> Vec:
    """Spatial unit-quadric point w(u), a vector of length n − 1."""
    axis, others = _null_axes(g)
    G = g.diagonal
    Q = sum((G[k] * x * x for k, x in zip(others, u)), 0)
    D = Q + 1
    if is_zero(D):
        raise ChartDomainError("stereographic parameter on the singular set Q(u) = -1")
    w = [0] * (g.n - 1)
    for k, x in zip(others, u):
        w[k] = _div(2 * x, D)
    w[axis] = _div(Q - 1, D)
    return tuple(w)


def stereo_jacobian(g: Metric, u: Sequence[Scalar]) -> tuple[Vec, ...]:
    """∂w/∂u_j for each j, each a vector of length n − 1."""
    axis, others = _null_axes(g)
    G = g.diagonal
    Q = sum((G[k] * x * x for k, x in zip(others, u)), 0)
    D = Q + 1
    D2 = D * D
    cols = []
    for j, uj in zip(others, u):
        dQ = 2 * G[j] * uj
        col = [0] * (g.n - 1)
        for k, uk in zip(others, u):
            col[k] = _div((2 if k == j else 0) * D - 2 * uk * dQ, D2)
        col[axis] = _div(2 * dQ, D2)
        cols.append(tuple(col))
    return tuple(cols)


def inverse_stereo(g: Metric, w: Sequence[Scalar]) -> Vec:
    axis, others = _null_axes(g)
    denom = 1 - w[axis]
    if is_zero(denom):
        raise ChartDomainError("direction is the stereographic pole of the null chart")
    return tuple(_div(w[k], denom) for k in others)


# ---------------------------------------------------------------------------
# gauge fixing


def in_domain(g: Metric, gamma: Geodesic, chart: GaugeChart) -> bool:
    try:
        gauge_element(g, gamma, chart)
    except ChartDomainError:
        return False
    return True


def gauge_element(g: Metric, gamma: Geodesic, chart: GaugeChart) -> AffineElement:
    """The unique φ with act(φ, γ) on the chart's gauge surface."""
    V, X = gamma.V, gamma.X
    if len(V) != g.n:
        raise LinAlgError("geodesic dimension does not match the metric")
    kind = classify(g, V).kind
    if chart.is_null:
        if kind != CausalKind.NULL:
            raise ChartDomainError(f"{chart} only accepts null geodesics, got {kind.value}")
        t = g.time_index
        if not V[t] * chart.sign > 0 or is_zero(V[t]):
            raise ChartDomainError(f"{chart} needs sign(V_time) = {chart.sign}")
        w = tuple(_div(V[k], V[t] * chart.sign) for k in range(g.n - 1))
        axis, _ = _null_axes(g)
        if is_zero(1 - w[axis]):
            raise ChartDomainError("direction is the stereographic pole of the null chart")
        return AffineElement(_div(chart.sign, V[t]), -_div(X[t], V[t]))
    if kind == CausalKind.NULL:
        raise ChartDomainError(f"{chart} only accepts non-null geodesics")
    k = chart.axis - 1
    if not 0 <= k < g.n:
        raise ChartDomainError(f"axis {chart.axis} out of range for dimension {g.n}")
    if not V[k] * chart.sign > 0 or is_zero(V[k]):
        raise ChartDomainError(f"{chart} needs sign(V_{chart.axis}) = {chart.sign}")
    return AffineElement(_div(chart.sign, V[k]), -_div(inner(g, V, X), inner(g, V, V)))


def chart_coordinates(g: Metric, chart: GaugeChart, gamma: Geodesic) -> Vec:
    """Intrinsic coordinates of an already gauge-fixed geodesic."""
    X, V = gamma.X, gamma.V
    if chart.is_null:
        return inverse_stereo(g, tuple(V[: g.n - 1])) + tuple(X[: g.n - 1])
    k = chart.axis - 1
    return tuple(V[j] for j in range(g.n) if j != k) + tuple(X[j] for j in range(g.n) if j != k)


def chart_embedding(g: Metric, chart: GaugeChart, coords: Sequence[Scalar]) -> Geodesic:
    """The gauge-fixed geodesic with the given chart coordinates."""
    coords = tuple(coords)
    if len(coords) != chart_dimension(g, chart):
        raise LinAlgError(f"{chart} has {chart_dimension(g, chart)} coordinates, got {len(coords)}")
    n = g.n
    if chart.is_null:
        u, x = coords[: n - 2], coords[n - 2 :]
        V = stereo(g, u) + (chart.sign,)
        X = tuple(x) + (0,)
        return Geodesic(X, V)
    k = chart.axis - 1
    G = g.diagonal
    v_rest, x_rest = coords[: n - 1], coords[n - 1 :]
    others = [j for j in range(n) if j != k]
    V = [0] * n
    X = [0] * n
    for j, a, b in zip(others, v_rest, x_rest):
        V[j] = a
        X[j] = b
    V[k] = chart.sign
    # g(V, X) = 0 solved for X_k; 1/(G_k V_k) = G_k·sign
    X[k] = -G[k] * chart.sign * sum((G[j] * V[j] * X[j] for j in others), 0)
    return Geodesic(tuple(X), tuple(V))


def gauge_fix(g: Metric, gamma: Geodesic, chart: GaugeChart) -> ChartPoint:
    phi = gauge_element(g, gamma, chart)
    fixed = act(phi, gamma)
    return ChartPoint(g, chart, fixed, chart_coordinates(g, chart, fixed))


def gauge_conditions_hold(cp: ChartPoint) -> bool:
    g, chart, gamma = cp.metric, cp.chart, cp.gamma
    if chart.is_null:
        t = g.time_index
        return (
            is_zero(gamma.V[t] - chart.sign)
            and is_zero(gamma.X[t])
            and is_zero(inner(g, gamma.V, gamma.V))
        )
    k = chart.axis - 1
    return is_zero(gamma.V[k] - chart.sign) and is_zero(inner(g, gamma.V, gamma.X))


def default_chart(g: Metric, gamma: Geodesic) -> GaugeChart:
    """A chart containing γ: the null chart of the right time orientation, or the
    axis chart of the largest velocity component."""
    V = gamma.V
    if classify(g, V).kind == CausalKind.NULL:
        chart = GaugeChart.null(1 if V[g.time_index] > 0 else -1)
        if in_domain(g, gamma, chart):
            return chart
        raise ChartDomainError("null direction sits on the stereographic pole of its chart")
    k = max(range(g.n), key=lambda j: abs(V[j]))
    return GaugeChart.non_null(k + 1, 1 if V[k] > 0 else -1)


def unit_speed_gauge(g: Metric, gamma: Geodesic) -> Geodesic:
    """The float-mode representative with g(V, V) = ±1 and g(V, X) = 0."""
    nn = inner(g, gamma.V, gamma.V)
    if is_zero(nn):
        raise ChartDomainError("unit-speed gauge is undefined on null geodesics")
    a = 1 / math.sqrt(abs(float(nn)))
    b = -float(inner(g, gamma.V, gamma.X)) / float(nn)
    return act(AffineElement(a, b), gamma)


# ---------------------------------------------------------------------------
# tangent spaces and the projection Dπ


def chart_tangent_basis(cp: ChartPoint) -> tuple[PhaseTangent, ...]:
    """Phase vectors ∂γ/∂cᵢ of the chart embedding, in chart-coordinate order."""
    g, chart, gamma = cp.metric, cp.chart, cp.gamma
    n = g.n
    G = g.diagonal
    zero = (0,) * n
    basis = []
    if chart.is_null:
        u = cp.coords[: n - 2]
        for col in stereo_jacobian(g, u):
            basis.append(PhaseTangent(zero, tuple(col) + (0,)))
        for j in range(n - 1):
            basis.append(PhaseTangent(unit(n, j), zero))
        return tuple(basis)
    k = chart.axis - 1
    others = [j for j in range(n) if j != k]
    X, V = gamma.X, gamma.V
    for j in others:
        dX = [0] * n
        dX[k] = -G[k] * chart.sign * G[j] * X[j]
        basis.append(PhaseTangent(tuple(dX), unit(n, j)))
    for j in others:
        dX = list(unit(n, j))
        dX[k] = -G[k] * chart.sign * G[j] * V[j]
        basis.append(PhaseTangent(tuple(dX), zero))
    return tuple(basis)


def gauge_constraint_differentials(cp: ChartPoint) -> tuple[Vec, ...]:
    """Differentials (as phase-space rows) of the equations cutting out the section."""
    g, chart, gamma = cp.metric, cp.chart, cp.gamma
    n = g.n
    zero = (0,) * n
    if chart.is_null:
        t = g.time_index
        return (
            zero + unit(n, t),
            unit(n, t) + zero,
            zero + lower(g, gamma.V),
        )
    k = chart.axis - 1
    return (zero + unit(n, k), lower(g, gamma.V) + lower(g, gamma.X))


def section_tangent(cp: ChartPoint) -> Subspace:
    return Subspace.span((t.stacked for t in chart_tangent_basis(cp)), 2 * cp.metric.n)


def _frame_columns(cp: ChartPoint, gamma: Geodesic, basis: Sequence[Vec]) -> list[Vec]:
    g = cp.metric
    frame = orbit_frame(gamma)
    cols = list(basis) + [frame.xi_t.stacked, frame.xi_s.stacked]
    if cp.chart.is_null:
        # any vector off ker dH completes the frame; dH(0, e_time) = −V_time ≠ 0
        cols.append((0,) * g.n + unit(g.n, g.time_index))
    return cols


def projection_matrix(cp: ChartPoint) -> Mat:
    """Dπ at the gauge point as an m × 2n matrix.

    On null charts Dπ is only defined on ker dH; the matrix extends it by
    sending a fixed vector off ker dH to zero.  The extension is invisible to
    σ because ω⁻¹(dH) lies along the orbit.
    """
    basis = [t.stacked for t in chart_tangent_basis(cp)]
    return _projection_from_frame(_frame_columns(cp, cp.gamma, basis), len(basis))


def _projection_from_frame(cols: list[Vec], m: int) -> Mat:
    try:
        inv = inverse(transpose(cols))
    except LinAlgError:
        raise DecompositionError("section is not transverse to the orbit") from None
    return inv[:m]


def project_to_chart(cp: ChartPoint, v: PhaseTangent | Vec) -> Vec:
    """Chart coordinates of Dπ(v): split v = w + r, w ∈ T_γΣ, r ∈ T_γ𝒪, return w's coordinates."""
    xi = v.stacked if isinstance(v, PhaseTangent) else tuple(v)
    g = cp.metric
    if len(xi) != 2 * g.n:
        raise LinAlgError("phase vector has the wrong length")
    basis = [t.stacked for t in chart_tangent_basis(cp)]
    frame = orbit_frame(cp.gamma)
    cols = basis + [frame.xi_t.stacked, frame.xi_s.stacked]
    if rank(cols) != len(cols):
        raise DecompositionError("section is not transverse to the orbit")
    try:
        c = solve(transpose(cols), xi)
    except LinAlgError:
        raise DecompositionError("vector is not tangent to the gauge-fixed sector (v ∉ T_γΣ ⊕ T_γ𝒪)") from None
    return c[: len(basis)]


# ---------------------------------------------------------------------------
# F, σ and their comparison


def compute_F(g: Metric, gamma: Geodesic) -> Subspace:
    """F_γ, the symplectic orthogonal of the orbit tangent."""
    return symplectic_orthogonal(orbit_frame(gamma).orbit_tangent, omega_matrix(g).Omega)


def _sigma_from_rows(rows: Sequence[Vec], OmegaInv: Mat) -> Mat:
    # sigma[i][j] = βⱼ Ω⁻¹ βᵢᵀ
    images = [mat_vec(OmegaInv, r) for r in rows]
    return tuple(tuple(dot(rj, images[i]) for rj in rows) for i in range(len(rows)))


def pulled_back_dual_basis(cp: ChartPoint) -> tuple[Vec, ...]:
    """π*(dcᵢ) for the chart coordinates cᵢ, built from the orbit annihilator.

    Each row lies in (T_γ𝒪)° and takes the value δᵢₖ on the k-th section
    tangent vector.
    """
    g = cp.metric
    ann = subspace_annihilator(orbit_frame(cp.gamma).orbit_tangent)
    basis = [t.stacked for t in chart_tangent_basis(cp)]
    m = len(basis)
    # C[a][k] = βₐ(tₖ): annihilator basis in chart-dual coordinates
    C = tuple(tuple(dot(beta, t) for t in basis) for beta in ann.basis)
    Ct = transpose(C)
    rows = []
    for i in range(m):
        try:
            d = solve(Ct, unit(m, i))
        except LinAlgError:
            raise DecompositionError("annihilator does not surject onto the chart cotangent space") from None
        rows.append(tuple(sum((d[a] * ann.basis[a][c] for a in range(len(d))), 0) for c in range(2 * g.n)))
    return tuple(rows)


def compute_sigma(g: Metric, cp: ChartPoint, check: bool = True) -> QuotientStructure:
    """σ at the trajectory of ``cp`` in chart coordinates, plus F and its pushforward.

    With ``check`` the image of σ is compared with Dπ(F_γ) and a
    VerificationError is raised on mismatch.
    """
    OmegaInv = omega_matrix(g).OmegaInv
    rows = pulled_back_dual_basis(cp)
    sigma = _sigma_from_rows(rows, OmegaInv)
    F_up = compute_F(g, cp.gamma)
    m = chart_dimension(g, cp.chart)
    P = projection_matrix(cp)
    F_down = Subspace.span((mat_vec(P, f) for f in F_up.basis), m)
    im = image(sigma)
    qs = QuotientStructure(cp, F_up, F_down, sigma, len(im.basis), im)
    if check:
        if not is_antisymmetric(sigma):
            raise VerificationError(f"σ is not antisymmetric at {cp.chart}")
        if im != F_down:
            raise VerificationError(f"Im(σ) != Dπ(F) at {cp.chart}, coords {cp.coords}")
    return qs


def sigma_at_fiber_point(g: Metric, cp: ChartPoint, gamma: Geodesic) -> Mat:
    """σ in the chart of ``cp`` computed from ω⁻¹ at another point ``gamma`` of the same orbit.

    Dπ at γ′ = φ(γ) sends Dφ(tₖ) to the k-th coordinate vector and kills the
    orbit tangent at γ′; the rows of its matrix pull back the chart covectors.
    """
    phi = _relating_element(cp.gamma, gamma)
    M = action_differential(phi, n=g.n)
    basis = [mat_vec(M, t.stacked) for t in chart_tangent_basis(cp)]
    rows = _projection_from_frame(_frame_columns(cp, gamma, basis), len(basis))
    return _sigma_from_rows(rows, omega_matrix(g).OmegaInv)


def _relating_element(gamma: Geodesic, other: Geodesic) -> AffineElement:
    """φ with act(φ, gamma) == other; both must lie on one orbit."""
    k = max(range(gamma.n), key=lambda j: abs(gamma.V[j]))
    a = _div(other.V[k], gamma.V[k])
    # X' = X + bV
    b = _div(other.X[k] - gamma.X[k], gamma.V[k])
    phi = AffineElement(a, b)
    moved = act(phi, gamma)
    if not all(is_zero(p - q) for p, q in zip(moved.X + moved.V, other.X + other.V)):
        raise ChartDomainError("geodesics are not on the same reparametrization orbit")
    return phi


def proportionality_factor(a: Mat, b: Mat) -> Scalar:
    """c with a = c·b entrywise; raises VerificationError if there is none."""
    entries = [(x, y) for ra, rb in zip(a, b) for x, y in zip(ra, rb)]
    x0, y0 = max(entries, key=lambda e: abs(e[1]))
    if is_zero(y0):
        raise VerificationError("reference matrix is zero")
    c = _div(x0, y0)
    if not mats_equal(a, tuple(tuple(c * y for y in row) for row in b)):
        raise VerificationError("matrices are not proportional")
    return c


def check_conformal_class(g: Metric, cp: ChartPoint, phi: AffineElement) -> Scalar:
    """Factor c > 0 with σ computed at act(φ, γ) equal to c·σ computed at γ.

    Since ω⁻¹ at φ(γ) is (1/a)·φ_*(ω⁻¹ at γ), the factor is c = 1/a.
    """
    moved = act(phi, cp.gamma)
    sigma = _sigma_from_rows(pulled_back_dual_basis(cp), omega_matrix(g).OmegaInv)
    sigma_moved = sigma_at_fiber_point(g, cp, moved)
    c = proportionality_factor(sigma_moved, sigma)
    if not c > 0:
        raise VerificationError(f"conformal factor {c} is not positive")
    return c


def symplectic_inverse_on_massive(qs: QuotientStructure) -> Mat:
    """Inverse of a full-rank σ representative: a symplectic form on the chart."""
    m = len(qs.sigma)
    if qs.point.chart.is_null or qs.sigma_rank != m:
        raise VerificationError(f"σ has rank {qs.sigma_rank} < {m}; no symplectic inverse")
    inv = inverse(qs.sigma)
    if not products_identity(inv, qs.sigma) or not is_antisymmetric(inv):
        raise VerificationError("σ inverse failed its sanity checks")
    return inv


def chart_transition_jacobian(g: Metric, cp1: ChartPoint, cp2: ChartPoint) -> Mat:
    """∂(chart-2 coordinates)/∂(chart-1 coordinates) at a trajectory in both charts."""
    phi = _relating_element(cp1.gamma, cp2.gamma)
    M = action_differential(phi, n=g.n)
    P2 = projection_matrix(cp2)
    T1 = transpose([t.stacked for t in chart_tangent_basis(cp1)])
    return mat_mul(mat_mul(P2, M), T1)


def check_chart_overlap(g: Metric, gamma: Geodesic, chart1: GaugeChart, chart2: GaugeChart) -> Scalar:
    """Positive c with σ₂ = c · J σ₁ Jᵀ, J the transition Jacobian."""
    cp1 = gauge_fix(g, gamma, chart1)
    cp2 = gauge_fix(g, gamma, chart2)
    OmegaInv = omega_matrix(g).OmegaInv
    s1 = _sigma_from_rows(pulled_back_dual_basis(cp1), OmegaInv)
    s2 = _sigma_from_rows(pulled_back_dual_basis(cp2), OmegaInv)
    J = chart_transition_jacobian(g, cp1, cp2)
    c = proportionality_factor(s2, mat_mul(mat_mul(J, s1), transpose(J)))
    if not c > 0:
        raise VerificationError(f"chart overlap factor {c} is not positive")
    return c


def section_meets_orbit_transversally(cp: ChartPoint) -> bool:
    """T_γΣ ∩ T_γ𝒪 = 0 and ξ_T = (V, 0) ∉ T_γΣ."""
    T = section_tangent(cp)
    frame = orbit_frame(cp.gamma)
    return subspace_intersect(T, frame.orbit_tangent).dim == 0 and not T.contains(frame.xi_t.stacked)


def hamiltonian_kernel(g: Metric, gamma: Geodesic) -> Subspace:
    """ker dH ⊂ T_γ𝒢_curv."""
    return subspace_annihilator(Subspace.span([hamiltonian_differential(g, gamma)], 2 * g.n))


def closed_representative(g: Metric, cp: ChartPoint) -> Mat:
    """Inverse of σ pushed from the unit-speed point of the orbit (float mode).

    The raw gauge representative is not closed; rescaling to unit speed gives
    |g(V, V)|^(-1/2) · σ⁻¹, which is.
    """
    sigma = sigma_at_fiber_point(g, cp, unit_speed_gauge(g, cp.gamma))
    return inverse(sigma)


def closedness_defect(g: Metric, cp: ChartPoint, steps: Sequence[float] = (1e-4, 3e-5)) -> float:
    """max |dβ| over coordinate triples for β = closed_representative, relative to max |β|.

    Derivatives use the fourth-order five-point stencil.  Near the null cone
    β curves sharply, so the smallest estimate over ``steps`` is returned.
    """
    if cp.chart.is_null:
        raise ChartDomainError("closedness applies to non-null charts")
    base = tuple(float(c) for c in cp.coords)
    m = len(base)

    def beta(coords):
        gamma = chart_embedding(g, cp.chart, coords)
        return closed_representative(g, ChartPoint(g, cp.chart, gamma, tuple(coords)))

    scale = max([1.0] + [abs(x) for row in beta(base) for x in row])

    def defect(step):
        def shifted(i, s):
            return beta(tuple(c + (s * step if k == i else 0) for k, c in enumerate(base)))

        deriv = []
        for i in range(m):
            p2, p1, m1, m2 = (shifted(i, s) for s in (2, 1, -1, -2))
            deriv.append(
                [
                    [(-a + 8 * b - 8 * c + d) / (12 * step) for a, b, c, d in zip(*rows)]
                    for rows in zip(p2, p1, m1, m2)
                ]
            )
        worst = 0.0
        for i in range(m):
            for j in range(i + 1, m):
                for k in range(j + 1, m):
                    worst = max(worst, abs(deriv[i][j][k] + deriv[j][k][i] + deriv[k][i][j]))
        return worst / scale

    return min(defect(h) for h in steps)
