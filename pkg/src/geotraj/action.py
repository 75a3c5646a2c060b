"""The reparametrization group Aff⁺(R) acting on geodesics by γ(t) ↦ γ(at + b)."""

from __future__ import annotations

from dataclasses import dataclass

from .linalg import (
    Mat,
    Rational,
    Scalar,
    Subspace,
    block,
    diag,
    identity,
    is_zero,
    mat_mul,
    mat_scale,
    mats_equal,
    rank,
    transpose,
    zero_mat,
)
from .minkowski import Metric, inner
from .phase import Geodesic, PhaseTangent, omega_eval, omega_matrix


class VerificationError(AssertionError):
    """An identity that must hold exactly did not."""


@dataclass(frozen=True)
class AffineElement:
    """t ↦ a t + b with a > 0."""

    a: Scalar
    b: Scalar = 0

    def __post_init__(self):
        if not self.a > 0 or is_zero(self.a):
            raise ValueError(f"Aff⁺(R) needs a > 0, got a = {self.a}")

    def __mul__(self, other: "AffineElement") -> "AffineElement":
        # (a₂,b₂)·(a₁,b₁) = (a₂a₁, a₂b₁ + b₂)
        return AffineElement(self.a * other.a, self.a * other.b + self.b)

    def inverse(self) -> "AffineElement":
        a = self.a if isinstance(self.a, float) else Rational(self.a)
        return AffineElement(1 / a, -self.b / a)

    @classmethod
    def identity(cls) -> "AffineElement":
        return cls(1, 0)


@dataclass(frozen=True)
class OrbitFrame:
    xi_t: PhaseTangent
    xi_s: PhaseTangent
    orbit_tangent: Subspace


def act(phi: AffineElement, gamma: Geodesic) -> Geodesic:
    """(X, V) ↦ (X + bV, aV), i.e. γ ↦ γ∘φ.

    Reparametrization composes on the right:
    ``act(φ₂, act(φ₁, γ)) == act(φ₁ * φ₂, γ)``.
    """
    a, b = phi.a, phi.b
    return Geodesic(
        tuple(x + b * v for x, v in zip(gamma.X, gamma.V)),
        tuple(a * v for v in gamma.V),
    )


def action_differential(phi: AffineElement, gamma: Geodesic | None = None, n: int | None = None) -> Mat:
    """M = Dφ, the block matrix (dX, dV) ↦ (dX + b dV, a dV).  It does not depend on γ."""
    if n is None:
        if gamma is None:
            raise ValueError("need a geodesic or the dimension n")
        n = gamma.n
    I = identity(n)
    return block(
        [
            [I, diag((phi.b,) * n)],
            [zero_mat(n, n), diag((phi.a,) * n)],
        ]
    )


def orbit_frame(gamma: Geodesic) -> OrbitFrame:
    n = gamma.n
    zero = (0,) * n
    xi_t = PhaseTangent(tuple(gamma.V), zero)
    xi_s = PhaseTangent(zero, tuple(gamma.V))
    return OrbitFrame(xi_t, xi_s, Subspace.span([xi_t.stacked, xi_s.stacked], 2 * n))


def orbit_pullback(g: Metric, gamma: Geodesic) -> Scalar:
    """Coefficient of da ∧ db in the pullback of ω along the orbit map (a, b) ↦ (a, b)·γ."""
    frame = orbit_frame(gamma)
    # ∂/∂a = (0, V) = ξ_s, ∂/∂b = (V, 0) = ξ_t
    return omega_eval(g, frame.xi_s, frame.xi_t)


def orbit_gram(g: Metric, gamma: Geodesic) -> Mat:
    frame = orbit_frame(gamma)
    gens = (frame.xi_s, frame.xi_t)
    return tuple(tuple(omega_eval(g, u, v) for v in gens) for u in gens)


def orbit_gram_rank(g: Metric, gamma: Geodesic) -> int:
    return rank(orbit_gram(g, gamma))


def check_pullback_scaling(g: Metric, phi: AffineElement) -> Scalar:
    """Verify Mᵀ Ω M = a Ω and return a."""
    Omega = omega_matrix(g).Omega
    M = action_differential(phi, n=g.n)
    if not mats_equal(mat_mul(mat_mul(transpose(M), Omega), M), mat_scale(phi.a, Omega)):
        raise VerificationError(f"Mᵀ Ω M != a Ω for {phi}")
    return phi.a


def check_pushforward_scaling(g: Metric, phi: AffineElement) -> Scalar:
    """Verify M Ω⁻¹ Mᵀ = a Ω⁻¹ and return a."""
    OmegaInv = omega_matrix(g).OmegaInv
    M = action_differential(phi, n=g.n)
    if not mats_equal(mat_mul(mat_mul(M, OmegaInv), transpose(M)), mat_scale(phi.a, OmegaInv)):
        raise VerificationError(f"M Ω⁻¹ Mᵀ != a Ω⁻¹ for {phi}")
    return phi.a


def is_fixed(phi: AffineElement, gamma: Geodesic) -> bool:
    moved = act(phi, gamma)
    return all(is_zero(x - y) for x, y in zip(moved.X + moved.V, gamma.X + gamma.V))


def metric_norm(g: Metric, gamma: Geodesic) -> Scalar:
    return inner(g, gamma.V, gamma.V)

