"""The contact structure on the space of light rays, computed in a null chart.

On the null section Σ = {V_time = ±1, X_time = 0} the Liouville form restricts
to α = Σⱼ Gⱼ vⱼ(u) dxⱼ, and dα = Σⱼ Gⱼ dvⱼ(u) ∧ dxⱼ.  Chart basis order is
(∂u₁, …, ∂u_{n−2}, ∂x₁, …, ∂x_{n−1}) throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .action import VerificationError, orbit_frame
from .kforms import MAX_DEGREE, covector_form, kform_wedge, two_form_from_matrix
from .linalg import (
    Mat,
    Scalar,
    Subspace,
    Vec,
    det,
    is_zero,
    is_zero_vec,
    mat_vec,
    nullspace,
    subspace_intersect,
)
from .minkowski import Metric, inner
from .phase import exterior_derivative_1form
from .quotient import (
    ChartDomainError,
    ChartPoint,
    chart_embedding,
    chart_tangent_basis,
    compute_F,
    compute_sigma,
    projection_matrix,
    section_tangent,
    stereo_jacobian,
)


@dataclass(frozen=True)
class ContactData:
    point: ChartPoint
    alpha: Vec
    d_alpha: Mat
    kernel: Subspace
    volume_value: Scalar


def _require_null(cp: ChartPoint) -> None:
    if not cp.chart.is_null:
        raise ChartDomainError(f"contact data lives on null charts, got {cp.chart}")


def contact_form(g: Metric, cp: ChartPoint) -> Vec:
    """α in chart coordinates: αₖ = g(V, tₖ.dX) on the chart tangent basis."""
    _require_null(cp)
    alpha = tuple(inner(g, cp.gamma.V, t.dX) for t in chart_tangent_basis(cp))
    if is_zero_vec(alpha):
        raise VerificationError(f"α vanishes at {cp.coords}")
    return alpha


def contact_exterior_derivative(g: Metric, cp: ChartPoint) -> Mat:
    """dα as an antisymmetric matrix A, dα(a, b) = aᵀ A b, from the stereographic differential."""
    _require_null(cp)
    n = g.n
    m = 2 * n - 3
    nu = n - 2
    G = g.diagonal
    jac = stereo_jacobian(g, cp.coords[:nu])
    A = [[0] * m for _ in range(m)]
    # Gⱼ (∂vⱼ/∂uₖ) duₖ ∧ dxⱼ
    for k, col in enumerate(jac):
        for j in range(n - 1):
            c = G[j] * col[j]
            A[k][nu + j] += c
            A[nu + j][k] -= c
    return tuple(tuple(r) for r in A)


def contact_exterior_derivative_fd(g: Metric, cp: ChartPoint, step: float = 2.0**-20) -> Mat:
    """Finite-difference dα, using α as a field over chart coordinates."""
    _require_null(cp)
    chart = cp.chart
    m = len(cp.coords)

    def alpha_at(coords: Vec, xi: Vec) -> Scalar:
        gamma = chart_embedding(g, chart, coords)
        point = ChartPoint(g, chart, gamma, tuple(coords))
        basis = chart_tangent_basis(point)
        return sum((c * inner(g, gamma.V, t.dX) for c, t in zip(xi, basis)), 0)

    return exterior_derivative_1form(alpha_at, tuple(float(c) for c in cp.coords), m, step)


def contact_volume(g: Metric, cp: ChartPoint) -> Scalar:
    """α ∧ (dα)^k on the ordered chart basis."""
    alpha = covector_form(contact_form(g, cp))
    dalpha = two_form_from_matrix(contact_exterior_derivative(g, cp))
    top = alpha
    for _ in range((len(cp.coords) - 1) // 2):
        top = kform_wedge(top, dalpha)
    m = len(cp.coords)
    value = top(*(tuple(1 if i == j else 0 for i in range(m)) for j in range(m)))
    if is_zero(value):
        raise VerificationError(f"α ∧ (dα)^k vanishes at {cp.coords}")
    return value


def contact_volume_squared(g: Metric, cp: ChartPoint) -> Scalar:
    """(α ∧ (dα)^k)² via the bordered matrix B = [[0, α], [−αᵀ, dα]].

    Pf(B) = ± (α ∧ (dα)^k)/k!, so the square is (k!)² det B.  This works past
    the degree cap of the dense k-form representation.
    """
    alpha = contact_form(g, cp)
    A = contact_exterior_derivative(g, cp)
    m = len(alpha)
    B = [(0,) + tuple(alpha)] + [(-alpha[i],) + tuple(A[i]) for i in range(m)]
    return math.factorial((m - 1) // 2) ** 2 * det(B)


def contact_volume_nonzero(g: Metric, cp: ChartPoint) -> bool:
    if len(cp.coords) <= MAX_DEGREE:
        return not is_zero(contact_volume(g, cp))
    return not is_zero(contact_volume_squared(g, cp))


def contact_kernel(g: Metric, cp: ChartPoint) -> Subspace:
    alpha = contact_form(g, cp)
    return Subspace.span(nullspace((alpha,)), len(alpha))


def d_F(g: Metric, cp: ChartPoint) -> Subspace:
    """D_F = F_γ ∩ T_γΣ in chart coordinates."""
    _require_null(cp)
    DF_up = subspace_intersect(compute_F(g, cp.gamma), section_tangent(cp))
    # on T_γΣ the projection returns chart coordinates
    P = projection_matrix(cp)
    return Subspace.span((mat_vec(P, v) for v in DF_up.basis), len(cp.coords))


def check_kernel_equals_DF(g: Metric, cp: ChartPoint) -> bool:
    """ker α = D_F, and both equal Im σ after projection."""
    ker = contact_kernel(g, cp)
    if ker.dim != len(cp.coords) - 1:
        return False
    if ker != d_F(g, cp):
        return False
    return ker == compute_sigma(g, cp).image


def check_characteristic_triviality(g: Metric, cp: ChartPoint) -> bool:
    """ker α ∩ ker dα = {0}."""
    ker_alpha = contact_kernel(g, cp)
    dalpha = contact_exterior_derivative(g, cp)
    ker_dalpha = Subspace.span(nullspace(dalpha), len(cp.coords))
    return subspace_intersect(ker_alpha, ker_dalpha).dim == 0


def xi_t_transverse(cp: ChartPoint) -> bool:
    return not section_tangent(cp).contains(orbit_frame(cp.gamma).xi_t.stacked)


def contact_data(g: Metric, cp: ChartPoint) -> ContactData:
    return ContactData(
        cp,
        contact_form(g, cp),
        contact_exterior_derivative(g, cp),
        contact_kernel(g, cp),
        contact_volume(g, cp),
    )

