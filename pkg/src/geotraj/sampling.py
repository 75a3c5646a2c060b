"""Seeded random rational samples: geodesics by causal class, chart-interior points,
affine elements and random subspaces.

Components are p/q with p in [-20, 20] and q in [1, 10].  Every suite gets its
own ``random.Random`` derived from (seed, suite name), so suites are
independent of each other and of execution order.
"""

from __future__ import annotations

import random

from .action import AffineElement
from .linalg import RATIONAL_TYPES, Rational, Scalar, Vec
from .minkowski import CausalKind, Metric, classify, inner
from .phase import Geodesic
from .quotient import GaugeChart, _null_axes, stereo

NUM = 20
DEN = 10


def stream(seed: int, name: str) -> random.Random:
    return random.Random(f"{seed}:{name}")


def rational(rng: random.Random) -> Rational:
    return Rational(rng.randint(-NUM, NUM), rng.randint(1, DEN))


def positive_rational(rng: random.Random) -> Rational:
    return Rational(rng.randint(1, NUM), rng.randint(1, DEN))


def vector(rng: random.Random, n: int) -> Vec:
    return tuple(rational(rng) for _ in range(n))


def nonzero_vector(rng: random.Random, n: int) -> Vec:
    while True:
        v = vector(rng, n)
        if any(v):
            return v


def null_velocity(rng: random.Random, g: Metric, sign: int | None = None) -> Vec:
    """a · (w(u), ±1) with w the stereographic point of a random rational u."""
    if sign is None:
        sign = rng.choice((1, -1))
    _null_axes(g)
    while True:
        u = vector(rng, g.n - 2)
        try:
            w = stereo(g, u)
        except ValueError:
            continue
        a = positive_rational(rng)
        return tuple(a * x for x in w) + (a * sign,)


def velocity(rng: random.Random, g: Metric, kind: CausalKind) -> Vec:
    if kind == CausalKind.NULL:
        return null_velocity(rng, g)
    while True:
        v = nonzero_vector(rng, g.n)
        if classify(g, v).kind == kind:
            return v


def geodesic(rng: random.Random, g: Metric, kind: CausalKind) -> Geodesic:
    return Geodesic(vector(rng, g.n), velocity(rng, g, kind))


def any_geodesic(rng: random.Random, g: Metric) -> Geodesic:
    return Geodesic(vector(rng, g.n), nonzero_vector(rng, g.n))


def geodesic_in_chart(rng: random.Random, g: Metric, chart: GaugeChart) -> Geodesic:
    """A random geodesic strictly inside the chart's domain."""
    X = vector(rng, g.n)
    if chart.is_null:
        return Geodesic(X, null_velocity(rng, g, chart.sign))
    k = chart.axis - 1
    while True:
        V = list(vector(rng, g.n))
        V[k] = chart.sign * positive_rational(rng)
        if inner(g, V, V) != 0:
            return Geodesic(X, tuple(V))


def well_conditioned(g: Metric, V: Vec, ratio: Scalar = Rational(1, 100)) -> bool:
    """Float-safe velocity: away from the null cone, or null and away from the stereographic pole.

    Non-null V needs |g(V, V)| ≥ ratio · |V|² (Euclidean norm); null V needs
    |V_time|² ≥ ratio · |V|².  Float mode loses roughly log10 of the inverse
    ratio in digits, so its cross-check draws skip the rest.
    """
    h = inner(g, V, V)
    norm2 = sum(x * x for x in V)
    if h == 0:
        return V[-1] * V[-1] >= ratio * norm2
    return abs(h) >= ratio * norm2


def affine_element(rng: random.Random) -> AffineElement:
    return AffineElement(positive_rational(rng), rational(rng))


def subspace_vectors(rng: random.Random, dim: int, ambient: int) -> list[Vec]:
    return [vector(rng, ambient) for _ in range(dim)]


def to_float(x):
    """Recursively convert rationals inside tuples/geodesics/affine elements to floats."""
    if isinstance(x, RATIONAL_TYPES):
        return float(x)
    if isinstance(x, int) and not isinstance(x, bool):
        return float(x)
    if isinstance(x, tuple):
        return tuple(to_float(y) for y in x)
    if isinstance(x, list):
        return [to_float(y) for y in x]
    if isinstance(x, Geodesic):
        return Geodesic(to_float(x.X), to_float(x.V))
    if isinstance(x, AffineElement):
        return AffineElement(float(x.a), float(x.b))
    return x
