"""Dense linear algebra over exact rationals (or floats) and subspace calculus.

Vectors are tuples of scalars and matrices are tuples of row tuples.  Scalars
are exact rationals (``gmpy2.mpq``; ``Fraction`` also works) in exact mode; in
float mode they are ``float`` and every comparison goes through the tolerance
installed with :func:`float_mode`.
Subspaces are stored by the reduced row echelon form of a spanning set.  In
exact mode two subspaces are equal exactly when those canonical bases agree
entrywise; in float mode equality and membership are decided by residuals.
"""

from __future__ import annotations

import contextlib
import contextvars
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Union

from gmpy2 import mpq as Rational

Scalar = Union[Rational, Fraction, float, int]
RATIONAL_TYPES = (type(Rational()), Fraction)
Vec = tuple
Mat = tuple

_TOL: contextvars.ContextVar[float] = contextvars.ContextVar("geotraj_tol", default=0.0)

# Float elimination treats a pivot as zero below this fraction of the largest
# entry.  It is a rank decision, kept separate from the comparison tolerance.
PIVOT_EPS = 1e-11


class LinAlgError(ValueError):
    """Raised on dimension mismatches and singular systems."""


@contextlib.contextmanager
def float_mode(tol: float) -> Iterator[float]:
    """Install a comparison tolerance for the current context.

    Inside the block comparisons use ``tol`` (scaled by magnitude where noted)
    and elimination switches to the relative pivot threshold ``PIVOT_EPS``.
    Outside of it the tolerance is 0, which is the right thing for rational
    arithmetic.
    """
    if not tol > 0:
        raise ValueError("float tolerance must be positive")
    token = _TOL.set(float(tol))
    try:
        yield tol
    finally:
        _TOL.reset(token)


def tolerance() -> float:
    return _TOL.get()


def is_zero(x: Scalar) -> bool:
    tol = _TOL.get()
    if tol == 0:
        return x == 0
    return abs(x) <= tol


def scalars_equal(x: Scalar, y: Scalar) -> bool:
    """Exact equality, or in float mode agreement to tol relative to max(1, |x|, |y|)."""
    tol = _TOL.get()
    if tol == 0:
        return x == y
    return abs(x - y) <= tol * max(1.0, abs(x), abs(y))


def to_scalar(x, exact: bool = True) -> Scalar:
    """Convert ``x`` (int, str, Fraction, float) to the scalar type of the mode."""
    if exact:
        return Rational(x)
    return float(Rational(x)) if isinstance(x, str) else float(x)


# ---------------------------------------------------------------------------
# vectors and matrices


def vec(*xs) -> Vec:
    return tuple(xs)


def zeros(n: int) -> Vec:
    return (0,) * n


def unit(n: int, i: int) -> Vec:
    return tuple(1 if k == i else 0 for k in range(n))


def add(u: Vec, v: Vec) -> Vec:
    _check_len(u, v)
    return tuple(a + b for a, b in zip(u, v))


def sub(u: Vec, v: Vec) -> Vec:
    _check_len(u, v)
    return tuple(a - b for a, b in zip(u, v))


def scale(c: Scalar, u: Vec) -> Vec:
    return tuple(c * a for a in u)


def dot(u: Vec, v: Vec) -> Scalar:
    _check_len(u, v)
    return sum((a * b for a, b in zip(u, v)), 0)


def is_zero_vec(u: Vec) -> bool:
    return all(is_zero(a) for a in u)


def vecs_equal(u: Vec, v: Vec) -> bool:
    return len(u) == len(v) and all(scalars_equal(a, b) for a, b in zip(u, v))


def _check_len(u: Sequence, v: Sequence) -> None:
    if len(u) != len(v):
        raise LinAlgError(f"length mismatch: {len(u)} != {len(v)}")


def mat(rows: Iterable[Iterable]) -> Mat:
    return tuple(tuple(r) for r in rows)


def identity(n: int) -> Mat:
    return tuple(unit(n, i) for i in range(n))


def zero_mat(r: int, c: int) -> Mat:
    return tuple((0,) * c for _ in range(r))


def shape(m: Mat) -> tuple[int, int]:
    return len(m), (len(m[0]) if m else 0)


def transpose(m: Mat) -> Mat:
    return tuple(zip(*m))


def mat_mul(a: Mat, b: Mat) -> Mat:
    if shape(a)[1] != len(b):
        raise LinAlgError(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def mat_vec(m: Mat, v: Vec) -> Vec:
    return tuple(dot(row, v) for row in m)


def vec_mat(v: Vec, m: Mat) -> Vec:
    """Row vector times matrix."""
    return mat_vec(transpose(m), v)


def mat_add(a: Mat, b: Mat) -> Mat:
    return tuple(add(r, s) for r, s in zip(a, b))


def mat_scale(c: Scalar, m: Mat) -> Mat:
    return tuple(scale(c, r) for r in m)


def _entry_scale(*ms: Mat) -> float:
    return max([1.0] + [float(abs(x)) for m in ms for row in m for x in row])


def mats_equal(a: Mat, b: Mat) -> bool:
    """Entrywise equality; float mode scales the tolerance by the largest entry."""
    if shape(a) != shape(b):
        return False
    tol = _TOL.get()
    if tol == 0:
        return all(x == y for r, s in zip(a, b) for x, y in zip(r, s))
    bound = tol * _entry_scale(a, b)
    return all(abs(x - y) <= bound for r, s in zip(a, b) for x, y in zip(r, s))


def products_identity(a: Mat, b: Mat) -> bool:
    """a·b = I; in float mode the tolerance grows with max|a| · max|b| (conditioning)."""
    prod = mat_mul(a, b)
    n, c = shape(prod)
    if n != c:
        return False
    tol = _TOL.get()
    if tol == 0:
        return mats_equal(prod, identity(n))
    bound = tol * _entry_scale(a) * _entry_scale(b) * n
    return all(abs(prod[i][j] - (1 if i == j else 0)) <= bound for i in range(n) for j in range(n))


def is_antisymmetric(m: Mat) -> bool:
    n, c = shape(m)
    if n != c:
        return False
    return mats_equal(m, tuple(tuple(-m[j][i] for j in range(n)) for i in range(n)))


def block(blocks: Sequence[Sequence[Mat]]) -> Mat:
    """Assemble a block matrix from a grid of equally sized blocks."""
    rows = []
    for brow in blocks:
        for i in range(len(brow[0])):
            rows.append(tuple(x for b in brow for x in b[i]))
    return tuple(rows)


def diag(entries: Sequence[Scalar]) -> Mat:
    n = len(entries)
    return tuple(tuple(entries[i] if i == j else 0 for j in range(n)) for i in range(n))


# ---------------------------------------------------------------------------
# elimination


def _lift(row: Sequence[Scalar]) -> list:
    # ints must not reach true division in exact mode (1/2 would become a float)
    if _TOL.get() == 0:
        return [Rational(x) if isinstance(x, int) else x for x in row]
    return list(row)


def rref(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> tuple[Mat, tuple[int, ...]]:
    """Reduced row echelon form and pivot columns.

    Zero rows are dropped.  Pivots are chosen by largest magnitude, which is a
    no-op for exact arithmetic and partial pivoting for floats.
    """
    m = [_lift(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    floating = _TOL.get() != 0
    if floating:
        # the pivot threshold is relative to the largest entry once that exceeds 1
        big = max([1.0] + [abs(x) for r in m for x in r])
        m = [[x / big for x in r] for r in m]

    def negligible(x):
        return abs(x) <= PIVOT_EPS if floating else x == 0

    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        best = max(range(r, len(m)), key=lambda i: abs(m[i][c]))
        if negligible(m[best][c]):
            continue
        m[r], m[best] = m[best], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        m[r][c] = 1
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f != 0:
                    m[i] = [x - f * y for x, y in zip(m[i], m[r])]
                    m[i][c] = 0
        pivots.append(c)
        r += 1
    out = []
    for row in m[:r]:
        # flush float noise so canonical bases compare cleanly
        out.append(tuple(0 if negligible(x) else x for x in row))
    return tuple(out), tuple(pivots)


def rank(m: Sequence[Sequence[Scalar]]) -> int:
    if not m:
        return 0
    return len(rref(m)[1])


def nullspace(m: Mat, ncols: int | None = None) -> tuple[Vec, ...]:
    """Basis of {x : m x = 0}, one vector per free column."""
    if ncols is None:
        ncols = shape(m)[1]
    red, pivots = rref(m, ncols) if m else ((), ())
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for row, pc in zip(red, pivots):
            x[pc] = -row[f]
        basis.append(tuple(x))
    return tuple(basis)


def solve(a: Mat, b: Vec) -> Vec:
    """A particular solution of ``a x = b`` (free variables set to zero).

    Raises LinAlgError when the system is inconsistent.
    """
    nr, nc = shape(a)
    if len(b) != nr:
        raise LinAlgError("right-hand side has wrong length")
    aug = [tuple(row) + (rhs,) for row, rhs in zip(a, b)]
    red, pivots = rref(aug, nc + 1)
    if pivots and pivots[-1] == nc:
        raise LinAlgError("inconsistent linear system")
    x = [0] * nc
    for row, pc in zip(red, pivots):
        x[pc] = row[nc]
    return tuple(x)


def inverse(m: Mat) -> Mat:
    n, c = shape(m)
    if n != c:
        raise LinAlgError("inverse of a non-square matrix")
    aug = [tuple(row) + unit(n, i) for i, row in enumerate(m)]
    red, pivots = rref(aug, n)
    if pivots != tuple(range(n)):
        raise LinAlgError("singular matrix")
    return tuple(tuple(row[n:]) for row in red)


def det(m: Mat) -> Scalar:
    """Determinant by fraction-preserving Gaussian elimination."""
    n, c = shape(m)
    if n != c:
        raise LinAlgError("determinant of a non-square matrix")
    a = [_lift(r) for r in m]
    sign = 1
    result = 1
    for col in range(n):
        piv = max(range(col, n), key=lambda i: abs(a[i][col]))
        if is_zero(a[piv][col]):
            return 0
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            sign = -sign
        p = a[col][col]
        result *= p
        for i in range(col + 1, n):
            f = a[i][col] / p
            if f != 0:
                a[i] = [x - f * y for x, y in zip(a[i], a[col])]
    return sign * result


# ---------------------------------------------------------------------------
# subspaces


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace of an ``ambient_dim``-dimensional coordinate space.

    ``basis`` is always in reduced row echelon form; build instances with
    :meth:`span` rather than the constructor.
    """

    ambient_dim: int
    basis: Mat

    @classmethod
    def span(cls, vectors: Iterable[Sequence[Scalar]], ambient_dim: int) -> "Subspace":
        rows = [tuple(v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise LinAlgError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        if not rows:
            return cls(ambient_dim, ())
        red, _ = rref(rows, ambient_dim)
        return cls(ambient_dim, red)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, identity(ambient_dim))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        if _TOL.get() != 0:
            # canonical bases can have large entries; compare spans by residuals instead
            return self.contains_subspace(other)
        return (
            all(a == b for a, b in zip(self.basis, other.basis))
        )

    def __hash__(self):
        raise TypeError("Subspace is not hashable")

    def contains(self, v: Sequence[Scalar]) -> bool:
        if len(v) != self.ambient_dim:
            raise LinAlgError("vector has wrong length")
        if _TOL.get() == 0:
            return rank(self.basis + (tuple(v),)) == self.dim
        # canonical basis rows have unit pivots, so v's pivot entries are its coordinates
        parts = [tuple(v)] + [scale(v[p], b) for p, b in zip(self.pivots, self.basis)]
        residual = tuple(v)
        for part in parts[1:]:
            residual = sub(residual, part)
        bound = _TOL.get() * max([1.0] + [float(abs(x)) for part in parts for x in part])
        return all(abs(x) <= bound for x in residual)

    @property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(i for i, x in enumerate(b) if x != 0) for b in self.basis)

    def contains_subspace(self, other: "Subspace") -> bool:
        _same_ambient(self, other)
        return all(self.contains(b) for b in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        _same_ambient(self, other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"


def _same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise LinAlgError(f"ambient dimension mismatch: {a.ambient_dim} != {b.ambient_dim}")


def subspace_annihilator(w: Subspace) -> Subspace:
    """Covectors (as coordinate rows) vanishing on ``w``."""
    if w.dim == 0:
        return Subspace.full(w.ambient_dim)
    return Subspace.span(nullspace(w.basis, w.ambient_dim), w.ambient_dim)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    _same_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    # A ∩ B = (A° + B°)°
    return subspace_annihilator(subspace_annihilator(a) + subspace_annihilator(b))


def symplectic_orthogonal(w: Subspace, omega: Mat) -> Subspace:
    """{u : uᵀ Ω w = 0 for all w in W} for an invertible antisymmetric Ω."""
    n, c = shape(omega)
    if n != c or n != w.ambient_dim:
        raise LinAlgError("form and subspace dimensions disagree")
    if not is_antisymmetric(omega):
        raise LinAlgError("form is not antisymmetric")
    if rank(omega) != n:
        raise LinAlgError("singular form")
    if w.dim == 0:
        return Subspace.full(n)
    # u ⟂ w  ⟺  (Ω w)·u = 0
    conditions = tuple(mat_vec(omega, b) for b in w.basis)
    return Subspace.span(nullspace(conditions, n), n)


def image(m: Mat, w: Subspace | None = None) -> Subspace:
    """Image of ``w`` (default: whole domain) under the linear map ``m``."""
    nr, nc = shape(m)
    if w is None:
        return Subspace.span(transpose(m), nr)
    if w.ambient_dim != nc:
        raise LinAlgError("subspace does not live in the domain of the map")
    return Subspace.span((mat_vec(m, b) for b in w.basis), nr)
