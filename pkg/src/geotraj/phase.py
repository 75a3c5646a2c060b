"""Phase space of parametrized geodesics γ(t) = X + tV and the Cartan space TM × R.

Phase vectors stack the position block before the velocity block:
(dX, dV) ↦ (dX₁, ..., dXₙ, dV₁, ..., dVₙ).  With that ordering the symplectic
form ω(a, b) = g(a.dV, b.dX) − g(b.dV, a.dX) has the matrix [[0, −G], [G, 0]].
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .linalg import (
    LinAlgError,
    Mat,
    Rational,
    Scalar,
    Subspace,
    Vec,
    block,
    dot,
    inverse,
    is_zero_vec,
    mat_mul,
    mat_vec,
    mats_equal,
    identity,
    nullspace,
    scalars_equal,
    zero_mat,
)
from .minkowski import Metric, inner, lower


@dataclass(frozen=True)
class Geodesic:
    X: Vec
    V: Vec

    def __post_init__(self):
        if len(self.X) != len(self.V):
            raise LinAlgError("position and velocity must have the same length")
        if is_zero_vec(self.V):
            raise ValueError("zero velocity: not a point of 𝒢_curv")

    @property
    def n(self) -> int:
        return len(self.X)

    def at(self, t: Scalar) -> Vec:
        return tuple(x + t * v for x, v in zip(self.X, self.V))


@dataclass(frozen=True)
class PhaseTangent:
    dX: Vec
    dV: Vec

    def __post_init__(self):
        if len(self.dX) != len(self.dV):
            raise LinAlgError("dX and dV must have the same length")

    @classmethod
    def from_stacked(cls, xi: Vec) -> "PhaseTangent":
        if len(xi) % 2:
            raise LinAlgError("stacked phase vector must have even length")
        n = len(xi) // 2
        return cls(tuple(xi[:n]), tuple(xi[n:]))

    @property
    def stacked(self) -> Vec:
        return tuple(self.dX) + tuple(self.dV)


@dataclass(frozen=True)
class FormMatrix:
    Omega: Mat
    OmegaInv: Mat


@dataclass(frozen=True)
class CartanPoint:
    x: Vec
    v: Vec
    t: Scalar = 0


def _check(g: Metric, *tangents: PhaseTangent) -> None:
    for a in tangents:
        if len(a.dX) != g.n:
            raise LinAlgError(f"phase tangent of half-length {len(a.dX)} for metric of dimension {g.n}")


def omega_eval(g: Metric, a: PhaseTangent, b: PhaseTangent) -> Scalar:
    _check(g, a, b)
    return inner(g, a.dV, b.dX) - inner(g, b.dV, a.dX)


def omega_matrix(g: Metric) -> FormMatrix:
    G = g.matrix
    neg_G = tuple(tuple(-x for x in row) for row in G)
    Z = zero_mat(g.n, g.n)
    Omega = block([[Z, neg_G], [G, Z]])
    return FormMatrix(Omega, inverse(Omega))


def liouville_eval(g: Metric, gamma: Geodesic, a: PhaseTangent) -> Scalar:
    _check(g, a)
    return inner(g, gamma.V, a.dX)


def liouville_covector(g: Metric, gamma: Geodesic) -> Vec:
    return lower(g, gamma.V) + (0,) * g.n


def hamiltonian_differential(g: Metric, gamma: Geodesic) -> Vec:
    """dH at γ as a row covector: dH(δγ) = g(V, δV)."""
    return (0,) * g.n + lower(g, gamma.V)


def exterior_derivative_1form(
    form: Callable[[Vec, Vec], Scalar], point: Vec, dim: int, step: Scalar = 1
) -> Mat:
    """Matrix of dθ at ``point`` for a 1-form field θ given as ``form(point, vector)``.

    Uses dθ(a, b) = ∂_a θ(b) − ∂_b θ(a) with central differences.  For fields
    whose coefficients are polynomial of degree ≤ 2 in the point, an exact step
    gives the exact answer.
    """
    basis = [tuple(1 if k == i else 0 for k in range(dim)) for i in range(dim)]

    def shifted(s: Scalar, d: Vec) -> Vec:
        return tuple(p + s * x for p, x in zip(point, d))

    def directional(a: Vec, b: Vec) -> Scalar:
        return (form(shifted(step, a), b) - form(shifted(-step, a), b)) / (2 * step)

    return tuple(
        tuple(directional(basis[i], basis[j]) - directional(basis[j], basis[i]) for j in range(dim))
        for i in range(dim)
    )


def liouville_field(g: Metric) -> Callable[[Vec, Vec], Scalar]:
    n = g.n

    def form(point: Vec, xi: Vec) -> Scalar:
        return inner(g, point[n:], xi[:n])

    return form


def check_d_liouville(g: Metric, gamma: Geodesic, step: Scalar | None = None) -> bool:
    """Does dϖ reproduce Ω at γ?

    Exact scalars use the step 1 (exact for this bilinear field); floats use a
    central difference with step 2⁻²⁰ compared under the active tolerance.
    """
    if step is None:
        step = 2.0**-20 if isinstance(gamma.V[0], float) else Rational(1)
    point = tuple(gamma.X) + tuple(gamma.V)
    d = exterior_derivative_1form(liouville_field(g), point, 2 * g.n, step)
    return mats_equal(d, omega_matrix(g).Omega)


# ---------------------------------------------------------------------------
# Cartan space Y = TM × R, coordinates (x, v, t)


def cartan_form_eval(g: Metric, y: CartanPoint, dy: tuple[Vec, Vec, Scalar]) -> Scalar:
    dx, dv, dt = dy
    if len(dx) != g.n or len(dv) != g.n or len(y.x) != g.n or len(y.v) != g.n:
        raise LinAlgError("Cartan point and tangent must match the metric dimension")
    h = inner(g, y.v, y.v)
    h = h / 2 if isinstance(h, float) else Rational(h) / 2
    return inner(g, y.v, dx) - h * dt


def cartan_differential(g: Metric, y: CartanPoint) -> Mat:
    """Matrix A of dϖ at y, dϖ(a, b) = aᵀ A b, in coordinates (x, v, t).

    dϖ = Σ Gᵢ dvᵢ ∧ dxᵢ − Σ Gᵢ vᵢ dvᵢ ∧ dt.
    """
    n = g.n
    m = [[0] * (2 * n + 1) for _ in range(2 * n + 1)]
    t = 2 * n
    for i, s in enumerate(g.diagonal):
        m[n + i][i] = s
        m[i][n + i] = -s
        m[n + i][t] = -s * y.v[i]
        m[t][n + i] = s * y.v[i]
    return tuple(tuple(r) for r in m)


def cartan_kernel(g: Metric, y: CartanPoint) -> Subspace:
    if is_zero_vec(y.v):
        raise ValueError("zero velocity: dϖ has a degenerate kernel at v = 0")
    A = cartan_differential(g, y)
    return Subspace.span(nullspace(A), 2 * g.n + 1)


def geodesic_generator(y: CartanPoint) -> Vec:
    """(v, 0, 1): the tangent of t ↦ (x + tv, v, t)."""
    return tuple(y.v) + (0,) * len(y.v) + (1,)


def check_omega_matrix(g: Metric, fm: FormMatrix) -> bool:
    """Ω Ω⁻¹ = I and ξᵀΩξ′ = ω(ξ, ξ′) on every pair of basis vectors."""
    N = 2 * g.n
    if not mats_equal(mat_mul(fm.Omega, fm.OmegaInv), identity(N)):
        return False
    basis = [PhaseTangent.from_stacked(tuple(1 if k == i else 0 for k in range(N))) for i in range(N)]
    for i, a in enumerate(basis):
        for j, b in enumerate(basis):
            if not scalars_equal(fm.Omega[i][j], omega_eval(g, a, b)):
                return False
    return True


def bilinear(m: Mat, a: Vec, b: Vec) -> Scalar:
    return dot(a, mat_vec(m, b))
