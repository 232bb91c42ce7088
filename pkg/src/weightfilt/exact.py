"""Exact linear algebra over the rationals and the Gaussian rationals.

Everything in this package reduces to subspace-lattice computations in a
finite-dimensional vector space, and every verdict the library emits is an
exact certificate.  Floating point is therefore banned from this module (and
from everything built on it): scalars are `fractions.Fraction` or
:class:`GaussianRational`, subspaces are canonicalized by reduced row echelon
bases so that equality is structural, and positivity of symmetric forms is
decided by exact pivoting rather than eigenvalues.

Vectors are plain tuples of scalars.  Operators act on column vectors, i.e.
``M.apply(v)`` computes ``M @ v``; bilinear forms pair as ``x^T K y``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, List, Optional, Sequence, Tuple, Union

Rational = Fraction
ScalarLike = Union[int, Fraction, "GaussianRational", str]


class GaussianRational:
    """A Gaussian rational ``re + im*i`` with exact `Fraction` parts.

    The class interoperates with `int` and `Fraction` in either operand
    position, so generic row-reduction code can mix the two scalar types.

    >>> z = GaussianRational(Fraction(1, 2), Fraction(-3, 4))
    >>> z + 1
    GaussianRational(3/2, -3/4)
    >>> z * z.conjugate()
    GaussianRational(13/16, 0)
    >>> (z / z) == 1
    True
    >>> bool(GaussianRational(0, 0))
    False
    """

    __slots__ = ("re", "im")

    def __init__(self, re: ScalarLike = 0, im: ScalarLike = 0) -> None:
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("GaussianRational is immutable")

    # -- helpers ---------------------------------------------------------

    @staticmethod
    def _coerce(x: object) -> Optional["GaussianRational"]:
        if isinstance(x, GaussianRational):
            return x
        if isinstance(x, (int, Fraction)):
            return GaussianRational(x, 0)
        return None

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    @property
    def is_rational(self) -> bool:
        return self.im == 0

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: object) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: object) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: object) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(o.re - self.re, o.im - self.im)

    def __mul__(self, other: object) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if n == 0:
            raise ZeroDivisionError("division by zero Gaussian rational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other: object) -> "GaussianRational":
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__truediv__(self)

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __pow__(self, n: int) -> "GaussianRational":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only nonnegative integer powers are supported")
        out = GaussianRational(1, 0)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # -- comparison / hashing -------------------------------------------

    def __eq__(self, other: object) -> bool:
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __repr__(self) -> str:
        return f"GaussianRational({self.re}, {self.im})"


Scalar = Union[Fraction, GaussianRational]
Vector = Tuple[Scalar, ...]

I = GaussianRational(0, 1)


def as_scalar(x: ScalarLike) -> Scalar:
    """Coerce ints/strings to `Fraction`; pass Gaussian rationals through."""
    if isinstance(x, GaussianRational):
        return x
    return Fraction(x)


def _as_vector(v: Iterable[ScalarLike]) -> Vector:
    return tuple(as_scalar(x) for x in v)


def rref(rows: Sequence[Sequence[Scalar]]) -> Tuple[List[List[Scalar]], List[int]]:
    """Reduced row echelon form.  Returns (nonzero reduced rows, pivot columns).

    Works over any exact field whose elements support +,-,*,/ and truthiness.

    >>> reduced, pivots = rref([[Fraction(2), Fraction(4)], [Fraction(1), Fraction(2)]])
    >>> reduced
    [[Fraction(1, 1), Fraction(2, 1)]]
    >>> pivots
    [0]
    """
    work = [list(r) for r in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(work)):
            if work[i][c]:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = work[r][c]
        if inv != 1:
            work[r] = [x / inv for x in work[r]]
        for i in range(len(work)):
            if i != r and work[i][c]:
                f = work[i][c]
                ri = work[i]
                rr = work[r]
                work[i] = [a - f * b for a, b in zip(ri, rr)]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work[:r], pivots


def rank_of_rows(rows: Sequence[Sequence[Scalar]]) -> int:
    """Rank of a list of row vectors.

    Rational rows are scaled to integers and eliminated fraction-free
    (Bareiss), which is much faster than Fraction arithmetic on the hot
    paths (Koszul homology sweeps).  Gaussian rows fall back to generic rref.
    """
    mat: List[List[int]] = []
    for row in rows:
        ints: List[int] = []
        scale = 1
        for x in row:
            if isinstance(x, GaussianRational):
                return len(rref(rows)[0])
            scale = scale * x.denominator // _gcd(scale, x.denominator)
        for x in row:
            ints.append(x.numerator * (scale // x.denominator))
        if any(ints):
            mat.append(ints)
    if not mat:
        return 0
    n, ncols = len(mat), len(mat[0])
    rank = 0
    prev = 1
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, n):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        pr = mat[r]
        p = pr[c]
        for i in range(r + 1, n):
            ri = mat[i]
            e = ri[c]
            for j in range(c + 1, ncols):
                ri[j] = (p * ri[j] - e * pr[j]) // prev
            ri[c] = 0
        prev = p
        rank += 1
        r += 1
        if r == n:
            break
    return rank


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def solve_columns(
    cols: Sequence[Vector], target: Vector
) -> Optional[Tuple[Scalar, ...]]:
    """Solve ``sum_i c_i * cols[i] == target`` exactly; None if inconsistent.

    Free coefficients are set to zero, so the answer is deterministic.
    """
    if not cols:
        return () if not any(target) else None
    n = len(target)
    aug = [[col[i] for col in cols] + [target[i]] for i in range(n)]
    reduced, pivots = rref(aug)
    m = len(cols)
    coeffs: List[Scalar] = [Fraction(0)] * m
    for row, p in zip(reduced, pivots):
        if p == m:
            return None  # pivot in the augmented column: inconsistent
        coeffs[p] = row[m]
    return tuple(coeffs)


class Matrix:
    """An immutable exact matrix.

    >>> m = Matrix.from_rows([[0, 1], [0, 0]])
    >>> m.apply((1, 2))
    (Fraction(2, 1), Fraction(0, 1))
    >>> (m * m).is_zero()
    True
    >>> m.rank()
    1
    """

    __slots__ = ("rows", "cols", "entries", "_hash")

    def __init__(self, entries: Sequence[Sequence[ScalarLike]], rows: Optional[int] = None, cols: Optional[int] = None) -> None:
        grid = tuple(tuple(as_scalar(x) for x in row) for row in entries)
        nrows = len(grid) if rows is None else rows
        ncols = (len(grid[0]) if grid else 0) if cols is None else cols
        for row in grid:
            if len(row) != ncols:
                raise ValueError("ragged matrix rows")
        object.__setattr__(self, "rows", nrows)
        object.__setattr__(self, "cols", ncols)
        object.__setattr__(self, "entries", grid)
        object.__setattr__(self, "_hash", hash((nrows, ncols, grid)))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Matrix is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[ScalarLike]]) -> "Matrix":
        return cls(rows)

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        z = Fraction(0)
        return cls([[z] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(
            [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)],
            n,
            n,
        )

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence[ScalarLike]], nrows: int) -> "Matrix":
        if not cols:
            return cls.zero(nrows, 0)
        return cls(
            [[as_scalar(col[i]) for col in cols] for i in range(nrows)],
            nrows,
            len(cols),
        )

    # -- structure -------------------------------------------------------

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)],
            self.cols,
            self.rows,
        )

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def rank(self) -> int:
        return rank_of_rows(self.entries)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("matrix shape mismatch in addition")
        return Matrix(
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.entries, other.entries)
            ],
            self.rows,
            self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix([[-x for x in row] for row in self.entries], self.rows, self.cols)

    def __mul__(self, other: object) -> "Matrix":
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError("matrix shape mismatch in product")
            bt = other.transpose().entries
            return Matrix(
                [
                    [
                        sum((a * b for a, b in zip(row, col) if a and b), Fraction(0))
                        for col in bt
                    ]
                    for row in self.entries
                ],
                self.rows,
                other.cols,
            )
        if isinstance(other, (int, Fraction, GaussianRational)):
            s = as_scalar(other)
            return Matrix(
                [[x * s for x in row] for row in self.entries], self.rows, self.cols
            )
        return NotImplemented

    def __rmul__(self, other: object) -> "Matrix":
        if isinstance(other, (int, Fraction, GaussianRational)):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> "Matrix":
        if not self.is_square():
            raise ValueError("only square matrices have powers")
        if n < 0:
            raise ValueError("negative matrix powers are not supported")
        out = Matrix.identity(self.rows)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def apply(self, v: Sequence[ScalarLike]) -> Vector:
        vec = _as_vector(v)
        if len(vec) != self.cols:
            raise ValueError("vector length does not match matrix columns")
        return tuple(
            sum((a * b for a, b in zip(row, vec) if a and b), Fraction(0))
            for row in self.entries
        )

    def commutes_with(self, other: "Matrix") -> bool:
        return self * other == other * self

    def inverse(self) -> "Matrix":
        if not self.is_square():
            raise ValueError("only square matrices are invertible")
        n = self.rows
        aug = [list(row) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
               for i, row in enumerate(self.entries)]
        reduced, pivots = rref(aug)
        if pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return Matrix([row[n:] for row in reduced], n, n)

    # -- identity --------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Matrix({[[str(x) for x in row] for row in self.entries]})"


class Subspace:
    """A linear subspace with a canonical reduced-row-echelon basis.

    Canonicalization makes equality (and hashing) structural: two subspaces
    are equal iff their stored bases are identical tuples.

    >>> u = Subspace.span([(1, 1, 0), (0, 0, 1)], 3)
    >>> w = Subspace.span([(2, 2, 2), (0, 0, -5)], 3)
    >>> u == w
    True
    >>> u.dim
    2
    >>> u.contains_vector((3, 3, 7))
    True
    """

    __slots__ = ("ambient_dim", "basis", "_pivots", "_hash")

    def __init__(self, ambient_dim: int, basis: Sequence[Sequence[ScalarLike]]) -> None:
        vecs = [_as_vector(b) for b in basis]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("basis vector length does not match ambient dimension")
        reduced, pivots = rref(vecs)
        canon = tuple(tuple(row) for row in reduced)
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "basis", canon)
        object.__setattr__(self, "_pivots", tuple(pivots))
        object.__setattr__(self, "_hash", hash((ambient_dim, canon)))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Subspace is immutable")

    # -- constructors ----------------------------------------------------

    @classmethod
    def span(cls, vectors: Sequence[Sequence[ScalarLike]], ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, vectors)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, [])

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(
            ambient_dim,
            [
                [Fraction(1) if i == j else Fraction(0) for j in range(ambient_dim)]
                for i in range(ambient_dim)
            ],
        )

    # -- basic queries ----------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    def reduce_vector(self, v: Sequence[ScalarLike]) -> Vector:
        """Canonical residue of ``v`` after eliminating basis components."""
        vec = list(_as_vector(v))
        if len(vec) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        for row, p in zip(self.basis, self._pivots):
            f = vec[p]
            if f:
                for j in range(self.ambient_dim):
                    if row[j]:
                        vec[j] = vec[j] - f * row[j]
        return tuple(vec)

    def contains_vector(self, v: Sequence[ScalarLike]) -> bool:
        return not any(self.reduce_vector(v))

    def contains(self, other: "Subspace") -> bool:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        return all(self.contains_vector(b) for b in other.basis)

    def __le__(self, other: "Subspace") -> bool:
        return other.contains(self)

    # -- lattice operations ------------------------------------------------

    def sum(self, other: "Subspace") -> "Subspace":
        return _sum_and_intersection(self, other)[0]

    def intersect(self, other: "Subspace") -> "Subspace":
        return _sum_and_intersection(self, other)[1]

    def coordinates_of(self, v: Sequence[ScalarLike]) -> Optional[Tuple[Scalar, ...]]:
        """Coefficients of ``v`` in the stored basis, or None if outside."""
        return solve_columns([b for b in self.basis], _as_vector(v))

    def rref_coordinates(self, v: Sequence[ScalarLike]) -> Tuple[Scalar, ...]:
        """Coefficients of a vector *known to lie in the subspace*.

        For a reduced-row-echelon basis the coefficient of the j-th basis
        vector is just the entry of ``v`` at its pivot column, so this skips
        the linear solve.  Garbage in, garbage out when ``v`` is outside.
        """
        vec = _as_vector(v)
        return tuple(vec[p] for p in self._pivots)

    def extend_to(self, larger: "Subspace") -> List[Vector]:
        """Vectors of ``larger`` extending this basis (deterministic choice)."""
        if not larger.contains(self):
            raise ValueError("can only extend inside a containing subspace")
        stack = [list(b) for b in self.basis]
        out: List[Vector] = []
        reduced, _ = rref(stack) if stack else ([], [])
        current = Subspace(self.ambient_dim, self.basis)
        for v in larger.basis:
            r = current.reduce_vector(v)
            if any(r):
                out.append(r)
                current = Subspace(self.ambient_dim, list(current.basis) + [r])
        return out

    # -- images under operators --------------------------------------------

    def image_under(self, m: Matrix) -> "Subspace":
        if m.cols != self.ambient_dim:
            raise ValueError("operator does not act on this ambient space")
        return Subspace(m.rows, [m.apply(b) for b in self.basis])

    def preimage_under(self, m: Matrix) -> "Subspace":
        """Largest subspace U with ``m(U)`` inside self (i.e. m^{-1}(self))."""
        if m.rows != self.ambient_dim:
            raise ValueError("operator does not land in this ambient space")
        # v is in the preimage iff  m(v)  reduces to zero against our basis.
        cols = []
        for j in range(m.cols):
            cols.append(self.reduce_vector(m.column(j)))
        residue = Matrix.from_columns(cols, self.ambient_dim)
        return kernel_of(residue)

    # -- identity -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


@lru_cache(maxsize=1 << 16)
def _sum_and_intersection(u: Subspace, w: Subspace) -> Tuple[Subspace, Subspace]:
    """Zassenhaus: one elimination yields both the sum and the intersection."""
    if u.ambient_dim != w.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    n = u.ambient_dim
    z = Fraction(0)
    block: List[List[Scalar]] = []
    for b in u.basis:
        block.append(list(b) + list(b))
    for b in w.basis:
        block.append(list(b) + [z] * n)
    reduced, _ = rref(block)
    sum_rows: List[Vector] = []
    int_rows: List[Vector] = []
    for row in reduced:
        left, right = tuple(row[:n]), tuple(row[n:])
        if any(left):
            sum_rows.append(left)
        elif any(right):
            int_rows.append(right)
    return Subspace(n, sum_rows), Subspace(n, int_rows)


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    """Smallest subspace containing both summands.

    >>> e1 = Subspace.span([(1, 0)], 2)
    >>> e2 = Subspace.span([(0, 1)], 2)
    >>> subspace_sum(e1, e2).is_full()
    True
    """
    return u.sum(w)


def subspace_intersect(u: Subspace, w: Subspace) -> Subspace:
    """Largest subspace contained in both operands.

    >>> a = Subspace.span([(1, 0, 0), (0, 1, 0)], 3)
    >>> b = Subspace.span([(0, 1, 0), (0, 0, 1)], 3)
    >>> subspace_intersect(a, b) == Subspace.span([(0, 1, 0)], 3)
    True
    """
    return u.intersect(w)


def sum_of(spaces: Sequence[Subspace], ambient_dim: int) -> Subspace:
    out = Subspace.zero(ambient_dim)
    for s in spaces:
        out = out.sum(s)
    return out


def intersection_of(spaces: Sequence[Subspace], ambient_dim: int) -> Subspace:
    out = Subspace.full(ambient_dim)
    for s in spaces:
        out = out.intersect(s)
    return out


def kernel_of(m: Matrix) -> Subspace:
    """Exact null space of ``m`` (solutions of ``m v = 0``)."""
    reduced, pivots = rref(m.entries)
    pivot_set = set(pivots)
    free = [j for j in range(m.cols) if j not in pivot_set]
    basis: List[List[Scalar]] = []
    for f in free:
        v: List[Scalar] = [Fraction(0)] * m.cols
        v[f] = Fraction(1)
        for row, p in zip(reduced, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(v)
    return Subspace(m.cols, basis)


def image_of(m: Matrix) -> Subspace:
    """Column space of ``m``."""
    return Subspace(m.rows, [m.column(j) for j in range(m.cols)])


def map_kernel_image(m: Matrix) -> Tuple[Subspace, Subspace]:
    """Kernel and image of a matrix; rank-nullity is checked on the way out.

    >>> j3 = Matrix.from_rows([[0, 1, 0], [0, 0, 1], [0, 0, 0]])
    >>> ker, im = map_kernel_image(j3)
    >>> ker.dim, im.dim
    (1, 2)
    """
    ker = kernel_of(m)
    im = image_of(m)
    if ker.dim + im.dim != m.cols:
        raise AssertionError("rank-nullity violated; elimination bug")
    return ker, im


class QuotientPresentation:
    """A subquotient ``sub/den`` presented by explicit coset representatives.

    Representatives are chosen deterministically (reduced against the
    denominator and earlier representatives), so equal subquotients get
    equal presentations.

    >>> V = Subspace.full(2)
    >>> L = Subspace.span([(1, 1)], 2)
    >>> q = QuotientPresentation(V, L)
    >>> q.dim
    1
    >>> q.reduce((1, 0)) == tuple(-x for x in q.reduce((0, 1)))
    True
    """

    __slots__ = ("sub", "den", "reps", "ambient_dim", "_solver_rows")

    def __init__(self, sub: Subspace, den: Subspace) -> None:
        if sub.ambient_dim != den.ambient_dim:
            raise ValueError("ambient dimension mismatch")
        if not sub.contains(den):
            raise ValueError("denominator is not contained in the numerator")
        reps: List[Vector] = []
        current = den
        for v in sub.basis:
            r = current.reduce_vector(v)
            if any(r):
                reps.append(r)
                current = Subspace(sub.ambient_dim, list(current.basis) + [r])
        object.__setattr__(self, "sub", sub)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "reps", tuple(reps))
        object.__setattr__(self, "ambient_dim", sub.ambient_dim)
        object.__setattr__(self, "_solver_rows", tuple(reps) + den.basis)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("QuotientPresentation is immutable")

    @property
    def dim(self) -> int:
        return len(self.reps)

    def reduce(self, v: Sequence[ScalarLike]) -> Tuple[Scalar, ...]:
        """Coordinates of ``v + den`` in the representative basis."""
        coeffs = solve_columns(list(self._solver_rows), _as_vector(v))
        if coeffs is None:
            raise ValueError("vector is not in the numerator subspace")
        return coeffs[: len(self.reps)]

    def lift(self, coords: Sequence[ScalarLike]) -> Vector:
        cs = _as_vector(coords)
        if len(cs) != self.dim:
            raise ValueError("coordinate length mismatch")
        n = self.ambient_dim
        out: List[Scalar] = [Fraction(0)] * n
        for c, rep in zip(cs, self.reps):
            if c:
                for j in range(n):
                    if rep[j]:
                        out[j] = out[j] + c * rep[j]
        return tuple(out)

    def induced_matrix(self, m: Matrix, target: "QuotientPresentation") -> Matrix:
        """Matrix of the map induced by ``m`` into ``target`` (rep bases).

        The caller promises that ``m`` maps sub into target.sub and den into
        target.den; `reduce` raises if the first promise is broken.
        """
        cols = [target.reduce(m.apply(rep)) for rep in self.reps]
        return Matrix.from_columns(cols, target.dim)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, QuotientPresentation):
            return NotImplemented
        return self.sub == other.sub and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.sub, self.den))

    def __repr__(self) -> str:
        return f"QuotientPresentation(dim={self.dim}, ambient={self.ambient_dim})"


def quotient_presentation(v_sub: Subspace, u: Subspace) -> QuotientPresentation:
    """Present ``v_sub/u``; raises if ``u`` is not inside ``v_sub``."""
    return QuotientPresentation(v_sub, u)


def restrict_operator(m: Matrix, s: Subspace) -> Matrix:
    """Matrix of ``m`` restricted to an invariant subspace, in its basis."""
    cols = []
    for b in s.basis:
        w = m.apply(b)
        c = s.coordinates_of(w)
        if c is None:
            raise ValueError("subspace is not invariant under the operator")
        cols.append(c)
    return Matrix.from_columns(cols, s.dim)


def operator_on_quotient(m: Matrix, q: QuotientPresentation) -> Matrix:
    """Matrix induced by ``m`` on a subquotient that it preserves."""
    return q.induced_matrix(m, q)


def exp_nilpotent(m: Matrix) -> Matrix:
    """Exact exponential of a nilpotent matrix (the series terminates)."""
    if not m.is_square():
        raise ValueError("exponential of a non-square matrix")
    out = Matrix.identity(m.rows)
    power = Matrix.identity(m.rows)
    k = 1
    while True:
        power = power * m
        if power.is_zero():
            return out
        if k > m.rows:
            raise ValueError("matrix is not nilpotent")
        out = out + power * Fraction(1, factorial(k))
        k += 1


def is_symmetric(m: Matrix) -> bool:
    return m.is_square() and m == m.transpose()


class PositivityCertificate:
    """Outcome of an exact positive-definiteness test.

    ``witness`` is the 0-based pivot index at which definiteness failed
    (None on success); ``pivots`` are the Schur-complement pivots seen.
    """

    __slots__ = ("positive", "witness", "pivots")

    def __init__(self, positive: bool, witness: Optional[int], pivots: Tuple[Fraction, ...]) -> None:
        object.__setattr__(self, "positive", positive)
        object.__setattr__(self, "witness", witness)
        object.__setattr__(self, "pivots", pivots)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("PositivityCertificate is immutable")

    def __bool__(self) -> bool:
        return self.positive

    def __repr__(self) -> str:
        state = "positive-definite" if self.positive else f"fails at pivot {self.witness}"
        return f"PositivityCertificate({state})"


def is_positive_definite(m: Matrix) -> PositivityCertificate:
    """Exact PD test by symmetric Gaussian elimination (no eigenvalues).

    A symmetric rational matrix is positive definite iff elimination without
    row exchange produces a strictly positive pivot at every step.

    >>> bool(is_positive_definite(Matrix.from_rows([[2, -1], [-1, 2]])))
    True
    >>> cert = is_positive_definite(Matrix.from_rows([[1, 2], [2, 1]]))
    >>> (cert.positive, cert.witness)
    (False, 1)
    """
    if not is_symmetric(m):
        raise ValueError("positivity is only defined for symmetric matrices")
    n = m.rows
    work = [list(row) for row in m.entries]
    pivots: List[Fraction] = []
    for k in range(n):
        p = work[k][k]
        if not isinstance(p, Fraction):
            raise ValueError("positivity test requires rational entries")
        if p <= 0:
            return PositivityCertificate(False, k, tuple(pivots))
        pivots.append(p)
        for i in range(k + 1, n):
            f = work[i][k] / p
            if f:
                for j in range(k, n):
                    work[i][j] = work[i][j] - f * work[k][j]
    return PositivityCertificate(True, None, tuple(pivots))


def hermitian_transpose(m: Matrix) -> Matrix:
    """Conjugate transpose for Gaussian-rational matrices."""
    def conj(x: Scalar) -> Scalar:
        return x.conjugate() if isinstance(x, GaussianRational) else x

    t = m.transpose()
    return Matrix([[conj(x) for x in row] for row in t.entries], t.rows, t.cols)
