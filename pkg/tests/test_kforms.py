import itertools
import math

import pytest
from hypothesis import given, strategies as st

from conftest import Q, rationals
from geotraj.kforms import (
    KForm,
    basis_form,
    covector_form,
    kform_wedge,
    pullback,
    two_form_from_matrix,
    two_form_matrix,
)
from geotraj.linalg import LinAlgError


def forms(dim, degree):
    n = math.comb(dim, degree)
    return st.tuples(*[rationals()] * n).map(lambda c: KForm(dim, degree, c))


def vecs(dim, count):
    return st.tuples(*[st.tuples(*[rationals()] * dim)] * count)


def perm_sign(p):
    sign = 1
    p = list(p)
    for i in range(len(p)):
        while p[i] != i:
            j = p[i]
            p[i], p[j] = p[j], p[i]
            sign = -sign
    return sign


def wedge_by_antisymmetrization(a, b, vectors):
    # (α∧β)(v) = 1/(k! l!) Σ_σ sgn σ α(v_σ(1..k)) β(v_σ(k+1..k+l))
    k, l = a.degree, b.degree
    total = 0
    for p in itertools.permutations(range(k + l)):
        vs = [vectors[i] for i in p]
        total += perm_sign(p) * a(*vs[:k]) * b(*vs[k:])
    return total / (math.factorial(k) * math.factorial(l))


@given(forms(5, 1), forms(5, 2), vecs(5, 3))
def test_wedge_matches_antisymmetrization_oracle(a, b, vs):
    assert kform_wedge(a, b)(*vs) == wedge_by_antisymmetrization(a, b, vs)


@given(forms(5, 2), forms(5, 2), vecs(5, 4))
def test_wedge_of_two_forms_matches_oracle(a, b, vs):
    assert (a ^ b)(*vs) == wedge_by_antisymmetrization(a, b, vs)


@given(forms(4, 1), forms(4, 1))
def test_one_forms_anticommute(a, b):
    assert (a ^ b) == (b ^ a).scaled(-1)
    assert (a ^ a).is_zero()


@given(forms(5, 1), forms(5, 2), forms(5, 2))
def test_wedge_is_associative(a, b, c):
    assert (a ^ b) ^ c == a ^ (b ^ c)


def test_determinant_convention():
    e = [tuple(1 if i == j else 0 for i in range(3)) for j in range(3)]
    assert basis_form(3, 0, 1)(e[0], e[1]) == 1
    assert basis_form(3, 1, 0)(e[0], e[1]) == -1
    assert basis_form(3, 0, 1, 2)(*e) == 1
    assert basis_form(3, 0, 0).is_zero()


def test_two_form_matrix_round_trip():
    A = ((0, 2, -1), (-2, 0, 3), (1, -3, 0))
    form = two_form_from_matrix(A)
    assert two_form_matrix(form) == A
    u, v = Q(1, 2, 3), Q(-1, 0, 4)
    assert form(u, v) == sum(u[i] * A[i][j] * v[j] for i in range(3) for j in range(3))
    with pytest.raises(LinAlgError):
        two_form_from_matrix(((1, 0), (0, 0)))


def test_pullback_restricts_to_span():
    form = basis_form(4, 0, 2)
    restricted = pullback(form, [Q(1, 0, 0, 0), Q(0, 0, 1, 0)])
    assert restricted.coeffs == (1,)
    assert pullback(covector_form(Q(1, 2, 3, 4)), [Q(0, 0, 0, 1)]).coeffs == (4,)


def test_degree_overflow_and_mismatch():
    with pytest.raises(LinAlgError):
        basis_form(3, 0, 1) ^ basis_form(3, 1, 2)
    with pytest.raises(LinAlgError):
        basis_form(3, 0) ^ basis_form(4, 0)
    with pytest.raises(LinAlgError):
        basis_form(3, 0)(Q(1, 2))
