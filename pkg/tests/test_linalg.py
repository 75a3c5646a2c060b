from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from conftest import Q, rationals
from geotraj.linalg import (
    LinAlgError,
    Rational,
    Subspace,
    det,
    float_mode,
    identity,
    image,
    inverse,
    is_antisymmetric,
    is_zero,
    mat_mul,
    mat_vec,
    mats_equal,
    nullspace,
    products_identity,
    rank,
    rref,
    scalars_equal,
    solve,
    subspace_annihilator,
    subspace_intersect,
    symplectic_orthogonal,
    tolerance,
)


def matrices(rows, cols):
    return st.lists(st.lists(rationals(), min_size=cols, max_size=cols), min_size=rows, max_size=rows).map(
        lambda m: tuple(tuple(r) for r in m)
    )


def to_sympy(m):
    return sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in r] for r in m])


@given(matrices(4, 5))
def test_rank_matches_sympy(m):
    assert rank(m) == to_sympy(m).rank()


@given(matrices(4, 4))
def test_det_matches_sympy(m):
    assert det(m) == Rational(str(to_sympy(m).det()))


@given(matrices(3, 6))
def test_nullspace_vectors_are_killed(m):
    ns = nullspace(m)
    assert len(ns) == 6 - rank(m)
    for v in ns:
        assert all(x == 0 for x in mat_vec(m, v))


@given(matrices(4, 4))
def test_inverse_round_trip(m):
    if det(m) == 0:
        with pytest.raises(LinAlgError):
            inverse(m)
        return
    inv = inverse(m)
    assert mat_mul(m, inv) == identity(4)
    assert to_sympy(inv) == to_sympy(m).inv()


def test_solve_particular_and_inconsistent():
    a = (Q(1, 2), Q(2, 4))
    x = solve(a, Q(3, 6))
    assert mat_vec(a, x) == Q(3, 6)
    with pytest.raises(LinAlgError):
        solve(a, Q(3, 7))


def test_exact_mode_never_produces_floats():
    red, piv = rref(((1, 3), (2, 7)))
    assert piv == (0, 1)
    assert all(not isinstance(x, float) for r in red for x in r)
    assert det(((1, 2), (3, 4))) == -2
    assert isinstance(inverse(((2, 0), (0, 3)))[1][1], type(Rational(1)))


def test_fraction_inputs_are_accepted():
    assert rank(((Fraction(1, 2), Fraction(1, 3)), (Fraction(3, 2), 1))) == 1


def test_float_mode_is_scoped():
    assert tolerance() == 0
    with float_mode(1e-6):
        assert tolerance() == 1e-6
        assert is_zero(1e-7)
        assert scalars_equal(1e6, 1e6 + 0.5)  # relative for large magnitudes
    assert tolerance() == 0
    assert not is_zero(Rational(1, 10**12))
    with pytest.raises(ValueError):
        with float_mode(0):
            pass


def test_float_rank_ignores_comparison_tolerance():
    # a legitimate pivot of 1e-7 is smaller than tol but must count
    m = ((1.0, 0.0), (0.0, 1e-7))
    with float_mode(1e-6):
        assert rank(m) == 2
    with float_mode(1e-6):
        assert rank(((1.0, 2.0), (2.0, 4.0 + 1e-14))) == 1


def test_float_subspace_equality_is_scale_aware():
    a = Subspace.span([(1.0, 0.0, -6860.0), (0.0, 1.0, -7000.0)], 3)
    b = Subspace.span([(1.0, 0.0, -6860.00001), (0.0, 1.0, -7000.00001)], 3)
    with float_mode(1e-6):
        assert a == b
    with float_mode(1e-12):
        assert a != b


def test_matrix_predicates():
    A = ((0, 1), (-1, 0))
    assert is_antisymmetric(A)
    assert not is_antisymmetric(((1, 1), (-1, 0)))
    assert products_identity(A, ((0, -1), (1, 0)))
    assert mats_equal(A, ((0, Rational(1)), (Rational(-1), 0)))


# ---------------------------------------------------------------------------
# subspaces


@given(matrices(2, 5))
def test_subspace_canonical_basis_is_independent_of_spanning_set(rows):
    W = Subspace.span(rows, 5)
    shuffled = Subspace.span([tuple(a + 2 * b for a, b in zip(rows[0], rows[1])), rows[1]], 5)
    assert W == shuffled
    assert W.dim == rank(rows)


def test_subspace_basics():
    W = Subspace.span([Q(1, 1, 0), Q(2, 2, 0)], 3)
    assert W.dim == 1
    assert W.contains(Q(-3, -3, 0))
    assert not W.contains(Q(1, 0, 0))
    assert (W + Subspace.span([Q(0, 0, 1)], 3)).dim == 2
    assert Subspace.zero(3).dim == 0 and Subspace.full(3).dim == 3
    with pytest.raises(TypeError):
        hash(W)


@given(matrices(2, 4), matrices(2, 4))
def test_intersection_against_sympy(a, b):
    A, B = Subspace.span(a, 4), Subspace.span(b, 4)
    C = subspace_intersect(A, B)
    # dim(A ∩ B) = dim A + dim B − dim(A + B)
    assert C.dim == A.dim + B.dim - (A + B).dim
    assert A.contains_subspace(C) and B.contains_subspace(C)


@given(matrices(3, 5))
def test_annihilator_is_dual(rows):
    W = Subspace.span(rows, 5)
    ann = subspace_annihilator(W)
    assert ann.dim == 5 - W.dim
    for f in ann.basis:
        for w in W.basis:
            assert sum(x * y for x, y in zip(f, w)) == 0
    assert subspace_annihilator(ann) == W


def test_symplectic_orthogonal_rejects_bad_forms():
    W = Subspace.span([Q(1, 0)], 2)
    with pytest.raises(LinAlgError):
        symplectic_orthogonal(W, ((1, 0), (0, 1)))
    with pytest.raises(LinAlgError):
        symplectic_orthogonal(W, ((0, 0), (0, 0)))
    # a line in a symplectic plane is its own orthogonal
    assert symplectic_orthogonal(W, ((0, 1), (-1, 0))) == W


def test_image_of_subspace():
    m = ((1, 0, 0), (0, 0, 0))
    assert image(m).dim == 1
    assert image(m, Subspace.span([Q(0, 1, 0)], 3)).dim == 0
