import random

import pytest
from hypothesis import given, strategies as st

from conftest import Q, positive_rationals, rationals
from geotraj import sampling
from geotraj.action import AffineElement, VerificationError, act, orbit_frame
from geotraj.linalg import (
    LinAlgError,
    Rational,
    Subspace,
    float_mode,
    inverse,
    is_antisymmetric,
    mat_mul,
    mat_vec,
    identity,
    subspace_intersect,
)
from geotraj.minkowski import MINKOWSKI, Metric, inner
from geotraj.phase import Geodesic
import geotraj.quotient as quotient
from geotraj.quotient import (
    ChartDomainError,
    ChartPoint,
    GaugeChart,
    atlas,
    chart_coordinates,
    chart_embedding,
    chart_tangent_basis,
    check_chart_overlap,
    check_conformal_class,
    closedness_defect,
    compute_F,
    compute_sigma,
    default_chart,
    gauge_conditions_hold,
    gauge_constraint_differentials,
    gauge_element,
    gauge_fix,
    in_domain,
    inverse_stereo,
    project_to_chart,
    projection_matrix,
    section_meets_orbit_transversally,
    stereo,
    stereo_jacobian,
    symplectic_inverse_on_massive,
    unit_speed_gauge,
)

g = MINKOWSKI
CHARTS = atlas(g)
chart_indices = st.integers(0, len(CHARTS) - 1)
seeds = st.integers(0, 2**32)


def point(seed, chart):
    rng = random.Random(seed)
    gamma = sampling.geodesic_in_chart(rng, g, chart)
    return gauge_fix(g, gamma, chart)


def test_atlas_has_ten_charts():
    names = [str(c) for c in CHARTS]
    assert len(names) == 10
    assert "NonNullAxis(4,+)" in names and "NullTimeSlice(-)" in names
    assert len(atlas(Metric(4, 0))) == 8


def test_gauge_fix_null_example():
    gamma = Geodesic(Q(1, 2, 3, 4), Q(2, 0, 0, 2))
    cp = gauge_fix(g, gamma, GaugeChart.null(1))
    assert cp.gamma == Geodesic(Q(-3, 2, 3, 0), Q(1, 0, 0, 1))
    assert gauge_element(g, gamma, GaugeChart.null(1)) == AffineElement(Rational(1, 2), -2)
    assert gauge_conditions_hold(cp)


def test_gauge_fix_time_like_example_is_unchanged():
    gamma = Geodesic(Q(1, -2, 5, 0), Q(0, 0, 0, 1))
    cp = gauge_fix(g, gamma, GaugeChart.non_null(4, 1))
    assert cp.gamma == gamma
    assert cp.coords == Q(0, 0, 0, 1, -2, 5)


@given(seeds, chart_indices, positive_rationals(), rationals())
def test_gauge_invariance(seed, k, a, b):
    chart = CHARTS[k]
    cp = point(seed, chart)
    again = gauge_fix(g, act(AffineElement(a, b), cp.gamma), chart)
    assert again == cp
    assert gauge_conditions_hold(cp)
    assert chart_embedding(g, chart, cp.coords) == cp.gamma
    assert chart_coordinates(g, chart, cp.gamma) == cp.coords


def test_chart_domains():
    null = Geodesic(Q(0, 0, 0, 0), Q(1, 0, 0, 1))
    timelike = Geodesic(Q(0, 0, 0, 0), Q(0, 0, 0, 1))
    assert in_domain(g, null, GaugeChart.null(1))
    assert not in_domain(g, null, GaugeChart.null(-1))
    assert not in_domain(g, null, GaugeChart.non_null(1, 1))
    assert not in_domain(g, timelike, GaugeChart.null(1))
    assert not in_domain(g, timelike, GaugeChart.non_null(1, 1))
    pole = Geodesic(Q(0, 0, 0, 0), Q(0, 0, 1, 1))
    with pytest.raises(ChartDomainError, match="pole"):
        gauge_fix(g, pole, GaugeChart.null(1))
    with pytest.raises(ValueError):
        GaugeChart("Somewhere", 1)
    with pytest.raises(ValueError):
        GaugeChart.null(2)


def test_default_chart():
    assert default_chart(g, Geodesic(Q(0, 0, 0, 0), Q(1, -5, 0, 2))) == GaugeChart.non_null(2, -1)
    assert default_chart(g, Geodesic(Q(0, 0, 0, 0), Q(3, 4, 0, -5))) == GaugeChart.null(-1)


# ---------------------------------------------------------------------------
# stereographic map


@given(st.tuples(rationals(), rationals()))
def test_stereo_lands_on_the_sphere_and_inverts(u):
    w = stereo(g, u)
    assert sum(x * x for x in w) == 1
    assert inner(g, w + (1,), w + (1,)) == 0
    assert inverse_stereo(g, w) == u


def test_stereo_jacobian_matches_finite_differences():
    u = (0.3, -0.7)
    h = 1e-6
    for j, col in enumerate(stereo_jacobian(g, u)):
        up = list(u)
        dn = list(u)
        up[j] += h
        dn[j] -= h
        fd = [(a - b) / (2 * h) for a, b in zip(stereo(g, up), stereo(g, dn))]
        assert all(abs(x - y) < 1e-8 for x, y in zip(col, fd))


def test_stereo_other_signature_is_null():
    h = Metric(2, 2)
    u = Q("1/3", 2)
    w = stereo(h, u)
    assert inner(h, w + (1,), w + (1,)) == 0


# ---------------------------------------------------------------------------
# tangent spaces and Dπ


def test_null_chart_basis_at_origin():
    chart = GaugeChart.null(1)
    cp = ChartPoint(g, chart, chart_embedding(g, chart, Q(0, 0, 0, 0, 0)), Q(0, 0, 0, 0, 0))
    assert cp.gamma.V == Q(0, 0, -1, 1)
    basis = chart_tangent_basis(cp)
    assert [b.dV for b in basis[:2]] == [Q(2, 0, 0, 0), Q(0, 2, 0, 0)]
    assert all(b.dX == Q(0, 0, 0, 0) for b in basis[:2])
    assert [b.dX for b in basis[2:]] == [Q(1, 0, 0, 0), Q(0, 1, 0, 0), Q(0, 0, 1, 0)]


@given(seeds, chart_indices)
def test_basis_is_tangent_to_the_gauge_surface(seed, k):
    cp = point(seed, CHARTS[k])
    basis = chart_tangent_basis(cp)
    assert len(basis) == (5 if CHARTS[k].is_null else 6)
    for d in gauge_constraint_differentials(cp):
        for t in basis:
            assert sum(x * y for x, y in zip(d, t.stacked)) == 0
    assert section_meets_orbit_transversally(cp)


@given(seeds, chart_indices, st.tuples(*[rationals()] * 8))
def test_projection_kernel_is_the_orbit(seed, k, v):
    cp = point(seed, CHARTS[k])
    frame = orbit_frame(cp.gamma)
    m = len(cp.coords)
    assert project_to_chart(cp, frame.xi_t) == (0,) * m
    assert project_to_chart(cp, frame.xi_s) == (0,) * m
    for i, t in enumerate(chart_tangent_basis(cp)):
        assert project_to_chart(cp, t) == tuple(int(i == j) for j in range(m))
    P = projection_matrix(cp)
    if CHARTS[k].is_null:
        # Dπ is only defined on ker dH there; move v into it along (0, e_time)
        dH = (0,) * 4 + tuple(s * x for s, x in zip(g.diagonal, cp.gamma.V))
        c = sum(x * y for x, y in zip(dH, v)) / dH[-1]
        v = v[:-1] + (v[-1] - c,)
    assert project_to_chart(cp, v) == mat_vec(P, v)


def test_projection_rejects_vectors_off_the_null_sector():
    cp = point(1, GaugeChart.null(1))
    with pytest.raises(quotient.DecompositionError):
        project_to_chart(cp, (0,) * 7 + (1,))


def test_projection_matches_finite_differences_of_gauge_fixing():
    # Dπ is the derivative of γ ↦ chart coordinates of gauge_fix(γ)
    gamma = Geodesic((0.5, -1.0, 2.0, 0.25), (0.5, 0.3, -0.2, 1.5))
    chart = GaugeChart.non_null(4, 1)

    def shifted(cp, v, h):
        p = tuple(a + h * x for a, x in zip(cp.gamma.X + cp.gamma.V, v))
        return Geodesic(p[:4], p[4:])

    with float_mode(1e-9):
        cp = gauge_fix(g, gamma, chart)
        P = projection_matrix(cp)
        rng = random.Random(5)
        h = 1e-6
        for _ in range(5):
            v = [rng.uniform(-1, 1) for _ in range(8)]
            plus = gauge_fix(g, shifted(cp, v, h), chart).coords
            minus = gauge_fix(g, shifted(cp, v, -h), chart).coords
            fd = [(a - b) / (2 * h) for a, b in zip(plus, minus)]
            assert mat_vec(P, v) == pytest.approx(fd, abs=1e-6)
        # gauge fixing is constant along the fiber
        moved = act(AffineElement(1.7, -0.4), cp.gamma)
        assert gauge_fix(g, moved, chart).coords == pytest.approx(cp.coords)


# ---------------------------------------------------------------------------
# F and σ


@given(seeds, chart_indices)
def test_F_dichotomy(seed, k):
    cp = point(seed, CHARTS[k])
    F = compute_F(g, cp.gamma)
    O = orbit_frame(cp.gamma).orbit_tangent
    assert F.dim == 6
    if CHARTS[k].is_null:
        assert F.contains_subspace(O)
    else:
        assert subspace_intersect(F, O).dim == 0
        assert (F + O).dim == 8


@given(seeds, chart_indices)
def test_sigma_image_is_F(seed, k):
    cp = point(seed, CHARTS[k])
    qs = compute_sigma(g, cp)
    assert is_antisymmetric(qs.sigma)
    assert qs.image == qs.F_down
    assert qs.sigma_rank == (4 if CHARTS[k].is_null else 6)


def test_sigma_frozen_time_like():
    cp = gauge_fix(g, Geodesic(Q(0, 0, 0, 0), Q(0, 0, 0, 1)), GaugeChart.non_null(4, 1))
    qs = compute_sigma(g, cp)
    I3 = identity(3)
    expected = tuple(
        tuple(0 for _ in range(3)) + I3[i] for i in range(3)
    ) + tuple(tuple(-x for x in I3[i]) + (0, 0, 0) for i in range(3))
    assert qs.sigma == expected


def test_sigma_mismatch_is_reported(monkeypatch):
    cp = point(3, GaugeChart.non_null(1, 1))
    monkeypatch.setattr(quotient, "image", lambda m: Subspace.zero(6))
    with pytest.raises(VerificationError):
        compute_sigma(g, cp)


@given(seeds, st.integers(0, 7))
def test_symplectic_inverse(seed, k):
    qs = compute_sigma(g, point(seed, CHARTS[k]))
    inv = symplectic_inverse_on_massive(qs)
    assert mat_mul(inv, qs.sigma) == identity(6)
    assert is_antisymmetric(inv)


def test_symplectic_inverse_refuses_null():
    qs = compute_sigma(g, point(3, GaugeChart.null(-1)))
    with pytest.raises(VerificationError):
        symplectic_inverse_on_massive(qs)


@given(seeds, chart_indices, positive_rationals(), rationals())
def test_conformal_factor_is_inverse_of_a(seed, k, a, b):
    cp = point(seed, CHARTS[k])
    assert check_conformal_class(g, cp, AffineElement(a, b)) == 1 / a


def test_conformal_identity():
    cp = point(11, GaugeChart.non_null(2, -1))
    assert check_conformal_class(g, cp, AffineElement.identity()) == 1


@given(seeds)
def test_chart_overlap_is_positive_congruence(seed):
    rng = random.Random(seed)
    gamma = Geodesic(sampling.vector(rng, 4), Q(1, -2, "1/2", 3))
    c1, c2 = GaugeChart.non_null(1, 1), GaugeChart.non_null(2, -1)
    assert check_chart_overlap(g, gamma, c1, c2) > 0


# ---------------------------------------------------------------------------
# float-mode representatives


def test_unit_speed_gauge():
    with float_mode(1e-9):
        gamma = Geodesic((0.5, -1.0, 2.0, 0.25), (0.5, 0.3, -0.2, 1.5))
        u = unit_speed_gauge(g, gamma)
        assert abs(inner(g, u.V, u.V) + 1) < 1e-12
        assert abs(inner(g, u.V, u.X)) < 1e-12
        chart = GaugeChart.non_null(4, 1)
        assert gauge_fix(g, u, chart).coords == pytest.approx(gauge_fix(g, gamma, chart).coords)


def test_unit_speed_representative_is_closed_and_raw_is_not(monkeypatch):
    gamma = Geodesic((0.5, -1.0, 2.0, 0.25), (0.5, 0.3, -0.2, 1.5))
    with float_mode(1e-9):
        cp = gauge_fix(g, gamma, GaugeChart.non_null(4, 1))
        assert closedness_defect(g, cp) < 1e-8
        monkeypatch.setattr(
            quotient, "closed_representative", lambda g, cp: inverse(compute_sigma(g, cp, check=False).sigma)
        )
        assert closedness_defect(g, cp) > 1e-2


def test_closedness_requires_non_null_chart():
    with float_mode(1e-9):
        cp = gauge_fix(g, Geodesic((0.0,) * 4, (1.0, 0.0, 0.0, 1.0)), GaugeChart.null(1))
        with pytest.raises(ChartDomainError):
            closedness_defect(g, cp)


def test_chart_embedding_wrong_length():
    with pytest.raises(LinAlgError):
        chart_embedding(g, GaugeChart.null(1), Q(0, 0))
