"""Why Hamiltonian reduction gives the wrong dimension for light rays.

At a null point the level set H = 0 has dimension 2n − 1, the reduced space
(level set modulo its characteristic direction) has 2n − 2, while the space
of unparametrized null lines has only 2n − 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .action import VerificationError
from .linalg import Subspace, is_zero, rank, subspace_intersect, symplectic_orthogonal
from .minkowski import Metric, inner
from .phase import Geodesic, hamiltonian_differential, omega_matrix
from .quotient import chart_tangent_basis, default_chart, gauge_fix, hamiltonian_kernel


@dataclass(frozen=True)
class DimensionAudit:
    level_set_dim: int
    reduced_dim: int
    trajectory_dim: int

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.level_set_dim, self.reduced_dim, self.trajectory_dim)


def _default_null_points(g: Metric) -> list[Geodesic]:
    n = g.n
    pts = []
    for j in range(g.p):
        V = [0] * n
        V[j] = -1  # away from the stereographic pole w_axis = 1
        V[n - 1] = 1
        X = tuple((k + 1) * (-1) ** k for k in range(n))
        pts.append(Geodesic(X, tuple(V)))
    return pts


def audit_point(g: Metric, gamma: Geodesic) -> DimensionAudit:
    if not is_zero(inner(g, gamma.V, gamma.V)):
        raise ValueError("the audit is taken at null geodesics")
    N = 2 * g.n
    dH = hamiltonian_differential(g, gamma)
    level = N - rank((dH,))
    T = hamiltonian_kernel(g, gamma)
    characteristic = subspace_intersect(T, symplectic_orthogonal(T, omega_matrix(g).Omega))
    reduced = T.dim - characteristic.dim
    cp = gauge_fix(g, gamma, default_chart(g, gamma))
    traj = Subspace.span((t.stacked for t in chart_tangent_basis(cp)), N).dim
    if level != T.dim:
        raise VerificationError("rank of dH disagrees with dim ker dH")
    return DimensionAudit(level, reduced, traj)


def reduction_dimension_audit(g: Metric, points: Iterable[Geodesic] | None = None) -> tuple[int, int, int]:
    """(level set dim, reduced dim, null trajectory dim); (7, 6, 5) for Minkowski R⁴."""
    if g.p < 1 or g.q < 1:
        raise ValueError(f"signature {g} has no null geodesics")
    results = {audit_point(g, gamma).as_tuple() for gamma in (points or _default_null_points(g))}
    if len(results) != 1:
        raise VerificationError(f"dimension audit is not constant across points: {sorted(results)}")
    return results.pop()
