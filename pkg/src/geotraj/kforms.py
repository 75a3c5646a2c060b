"""Constant-coefficient alternating k-forms on a coordinate space.

A form of degree k on R^d is stored densely as one coefficient per increasing
index tuple I = (i1 < ... < ik), so that

    form = sum_I c_I dx_I,   dx_I(v1, ..., vk) = det[v_j[i_r]].

This is the determinant convention: (dx ∧ dy)(e_x, e_y) = 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .linalg import LinAlgError, Mat, Scalar, Vec, det, is_antisymmetric, is_zero, shape

MAX_DEGREE = 5


@dataclass(frozen=True)
class KForm:
    dim: int
    degree: int
    coeffs: tuple  # aligned with combinations(range(dim), degree)

    def __post_init__(self):
        if not 0 <= self.degree <= min(self.dim, MAX_DEGREE):
            raise LinAlgError(f"degree {self.degree} unsupported in dimension {self.dim}")
        if len(self.coeffs) != len(index_tuples(self.dim, self.degree)):
            raise LinAlgError("coefficient array has the wrong size")

    @classmethod
    def from_dict(cls, dim: int, degree: int, coeffs: Mapping[tuple[int, ...], Scalar]) -> "KForm":
        """Build from ``{index tuple: coefficient}``; unsorted tuples are reordered with sign."""
        acc = {}
        for idx, c in coeffs.items():
            sgn, key = _sort_with_sign(idx)
            if sgn == 0:
                continue
            acc[key] = acc.get(key, 0) + sgn * c
        return cls(dim, degree, tuple(acc.get(I, 0) for I in index_tuples(dim, degree)))

    def coefficient(self, idx: Sequence[int]) -> Scalar:
        sgn, key = _sort_with_sign(tuple(idx))
        if sgn == 0:
            return 0
        return sgn * self.coeffs[index_tuples(self.dim, self.degree).index(key)]

    def __call__(self, *vectors: Vec) -> Scalar:
        if len(vectors) != self.degree:
            raise LinAlgError(f"{self.degree}-form evaluated on {len(vectors)} vectors")
        for v in vectors:
            if len(v) != self.dim:
                raise LinAlgError("argument has the wrong length")
        if self.degree == 0:
            return self.coeffs[0]
        total = 0
        for I, c in zip(index_tuples(self.dim, self.degree), self.coeffs):
            if c != 0:
                total += c * det(tuple(tuple(v[i] for v in vectors) for i in I))
        return total

    def __add__(self, other: "KForm") -> "KForm":
        _compatible(self, other)
        return KForm(self.dim, self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "KForm") -> "KForm":
        return self + other.scaled(-1)

    def scaled(self, c: Scalar) -> "KForm":
        return KForm(self.dim, self.degree, tuple(c * a for a in self.coeffs))

    def __xor__(self, other: "KForm") -> "KForm":
        return kform_wedge(self, other)

    def is_zero(self) -> bool:
        return all(is_zero(c) for c in self.coeffs)


def index_tuples(dim: int, degree: int) -> tuple[tuple[int, ...], ...]:
    return _INDEX_CACHE.setdefault((dim, degree), tuple(itertools.combinations(range(dim), degree)))


_INDEX_CACHE: dict = {}


def _sort_with_sign(idx: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    if len(set(idx)) != len(idx):
        return 0, idx
    sgn = 1
    items = list(idx)
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j] > items[j + 1]:
                items[j], items[j + 1] = items[j + 1], items[j]
                sgn = -sgn
    return sgn, tuple(items)


def _compatible(a: KForm, b: KForm) -> None:
    if a.dim != b.dim or a.degree != b.degree:
        raise LinAlgError("forms of different dimension or degree")


def covector_form(coeffs: Sequence[Scalar]) -> KForm:
    """The 1-form with the given coordinate coefficients."""
    return KForm(len(coeffs), 1, tuple(coeffs))


def basis_form(dim: int, *idx: int) -> KForm:
    """dx_{i1} ∧ ... ∧ dx_{ik}."""
    return KForm.from_dict(dim, len(idx), {tuple(idx): 1})


def two_form_from_matrix(a: Mat) -> KForm:
    """The 2-form (u, v) ↦ uᵀ A v of an antisymmetric matrix."""
    n, _ = shape(a)
    if not is_antisymmetric(a):
        raise LinAlgError("matrix is not antisymmetric")
    return KForm(n, 2, tuple(a[i][j] for i, j in index_tuples(n, 2)))


def two_form_matrix(form: KForm) -> Mat:
    if form.degree != 2:
        raise LinAlgError("not a 2-form")
    n = form.dim
    m = [[0] * n for _ in range(n)]
    for (i, j), c in zip(index_tuples(n, 2), form.coeffs):
        m[i][j] = c
        m[j][i] = -c
    return tuple(tuple(r) for r in m)


def kform_wedge(a: KForm, b: KForm) -> KForm:
    if a.dim != b.dim:
        raise LinAlgError("forms live on different spaces")
    k = a.degree + b.degree
    if k > min(a.dim, MAX_DEGREE):
        raise LinAlgError(f"wedge of degree {k} overflows dimension {a.dim}")
    acc: dict[tuple[int, ...], Scalar] = {}
    for I, ca in zip(index_tuples(a.dim, a.degree), a.coeffs):
        if ca == 0:
            continue
        for J, cb in zip(index_tuples(b.dim, b.degree), b.coeffs):
            if cb == 0:
                continue
            sgn, key = _sort_with_sign(I + J)
            if sgn:
                acc[key] = acc.get(key, 0) + sgn * ca * cb
    return KForm(a.dim, k, tuple(acc.get(K, 0) for K in index_tuples(a.dim, k)))


def pullback(form: KForm, basis: Sequence[Vec]) -> KForm:
    """Restrict ``form`` to the span of ``basis``, in the coordinates of that basis."""
    m = len(basis)
    coeffs = tuple(form(*(basis[i] for i in I)) for I in index_tuples(m, form.degree))
    return KForm(m, form.degree, coeffs)
