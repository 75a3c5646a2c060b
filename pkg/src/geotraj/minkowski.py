"""Flat pseudo-Euclidean metrics and the causal classification of velocities."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .linalg import LinAlgError, Mat, Rational, Scalar, Vec, diag, is_zero, is_zero_vec


class CausalKind(str, enum.Enum):
    SPACE_LIKE = "SpaceLike"
    TIME_LIKE = "TimeLike"
    NULL = "Null"


@dataclass(frozen=True)
class Metric:
    """diag(+1 × p, −1 × q); the time coordinates come last."""

    p: int = 3
    q: int = 1

    def __post_init__(self):
        # n = 2 has a one-dimensional space of light rays on which σ vanishes
        if self.p < 0 or self.q < 0 or self.p + self.q < 3:
            raise ValueError(f"invalid signature ({self.p},{self.q}): need p, q >= 0 and p + q >= 3")

    @property
    def n(self) -> int:
        return self.p + self.q

    @property
    def diagonal(self) -> tuple[int, ...]:
        return (1,) * self.p + (-1,) * self.q

    @property
    def matrix(self) -> Mat:
        return diag(self.diagonal)

    @property
    def time_index(self) -> int:
        """Index of the last coordinate, the time axis of the null charts."""
        return self.n - 1

    @classmethod
    def parse(cls, text: str) -> "Metric":
        """Parse ``"p,q"``."""
        try:
            p, q = (int(s) for s in text.split(","))
        except ValueError:
            raise ValueError(f"signature must look like 'p,q', got {text!r}") from None
        return cls(p, q)

    def __str__(self) -> str:
        return f"({self.p},{self.q})"


MINKOWSKI = Metric(3, 1)


@dataclass(frozen=True)
class CausalClass:
    h: Scalar
    kind: CausalKind


def inner(g: Metric, u: Vec, v: Vec) -> Scalar:
    if len(u) != g.n or len(v) != g.n:
        raise LinAlgError(f"expected vectors of length {g.n}, got {len(u)} and {len(v)}")
    return sum((s * a * b for s, a, b in zip(g.diagonal, u, v)), 0)


def lower(g: Metric, v: Vec) -> Vec:
    """The covector g(v, ·) as a coordinate row."""
    return tuple(s * a for s, a in zip(g.diagonal, v))


def hamiltonian(g: Metric, v: Vec) -> Scalar:
    h = inner(g, v, v)
    return h / 2 if isinstance(h, float) else Rational(h) / 2


def classify(g: Metric, v: Vec) -> CausalClass:
    if len(v) != g.n:
        raise LinAlgError(f"expected a vector of length {g.n}")
    if is_zero_vec(v):
        raise ValueError("zero velocity has no causal class")
    h = hamiltonian(g, v)
    if is_zero(h):
        kind = CausalKind.NULL
    elif h > 0:
        kind = CausalKind.SPACE_LIKE
    else:
        kind = CausalKind.TIME_LIKE
    return CausalClass(h, kind)
