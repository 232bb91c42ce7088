"""Increasing filtrations, multifiltrations, and the compatibility test.

A filtration here is an increasing, exhaustive family of subspaces of a fixed
ambient space, indexed by rational numbers and constant between finitely many
jumps.  A family of filtrations (a multifiltration) is *compatible* when, for
every tuple of index values, the lattice generated by the selected subspaces
behaves additively; operationally we test exactness of every three-term row
of a hypercomplex of subquotients attached to each tuple of values, which is
the condition actually used downstream (induced gradings commute, Rees-type
modules are flat, and so on).

The row test is a genuine certificate: a failure comes with the lattice point
and direction at which exactness breaks.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import floor
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .exact import (
    Matrix,
    QuotientPresentation,
    Subspace,
    intersection_of,
    sum_of,
)


class IndexLattice:
    """The index set ``S + Z`` for a finite set ``S`` of fractional offsets.

    ``S`` always contains 0, and the order-preserving enumeration ``phi``
    is normalized by ``phi(0) == 0``.

    >>> lat = IndexLattice([Fraction(0), Fraction(1, 2)])
    >>> [str(lat.phi(k)) for k in range(-2, 3)]
    ['-1', '-1/2', '0', '1/2', '1']
    >>> lat.phi_inv(Fraction(3, 2))
    3
    """

    __slots__ = ("fracs",)

    def __init__(self, fracs: Iterable[Fraction]) -> None:
        fs = sorted(set(Fraction(f) for f in fracs) | {Fraction(0)})
        for f in fs:
            if not 0 <= f < 1:
                raise ValueError("fractional offsets must lie in [0, 1)")
        object.__setattr__(self, "fracs", tuple(fs))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("IndexLattice is immutable")

    def __len__(self) -> int:
        return len(self.fracs)

    def phi(self, k: int) -> Fraction:
        q, r = divmod(k, len(self.fracs))
        return q + self.fracs[r]

    def phi_inv(self, x: Fraction) -> int:
        x = Fraction(x)
        q = floor(x)
        frac = x - q
        try:
            r = self.fracs.index(frac)
        except ValueError:
            raise ValueError(f"{x} is not in the index lattice") from None
        return q * len(self.fracs) + r

    def succ(self, x: Fraction) -> Fraction:
        return self.phi(self.phi_inv(x) + 1)

    def pred(self, x: Fraction) -> Fraction:
        return self.phi(self.phi_inv(x) - 1)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IndexLattice):
            return NotImplemented
        return self.fracs == other.fracs

    def __hash__(self) -> int:
        return hash(self.fracs)

    def __repr__(self) -> str:
        return f"IndexLattice({[str(f) for f in self.fracs]})"


class Filtration:
    """An increasing exhaustive filtration with finitely many jumps.

    Only the strict jumps are stored: ``steps`` is a sorted tuple of
    ``(index, subspace)`` pairs with strictly growing subspaces, the value
    below the first jump is the zero subspace, and the last value must be
    the full ambient space.

    >>> line = Subspace.span([(1, 0)], 2)
    >>> f = Filtration.from_jumps(2, [(Fraction(0), line), (Fraction(1), Subspace.full(2))])
    >>> f.value_at(Fraction(1, 2)) == line
    True
    >>> f.value_below(Fraction(0)).dim
    0
    >>> f.jumps()
    (Fraction(0, 1), Fraction(1, 1))
    """

    __slots__ = ("ambient_dim", "steps", "_hash")

    def __init__(self, ambient_dim: int, steps: Sequence[Tuple[Fraction, Subspace]]) -> None:
        pairs = sorted(((Fraction(x), s) for x, s in steps), key=lambda p: p[0])
        canon: List[Tuple[Fraction, Subspace]] = []
        prev = Subspace.zero(ambient_dim)
        for x, s in pairs:
            if s.ambient_dim != ambient_dim:
                raise ValueError("filtration value has wrong ambient dimension")
            if canon and canon[-1][0] == x:
                raise ValueError(f"duplicate filtration index {x}")
            if not s.contains(prev):
                raise ValueError(f"filtration is not increasing at index {x}")
            if s != prev:
                canon.append((x, s))
                prev = s
        if ambient_dim > 0:
            if not canon or not canon[-1][1].is_full():
                raise ValueError("filtration is not exhaustive (top value must be full)")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "steps", tuple(canon))
        object.__setattr__(self, "_hash", hash((ambient_dim, tuple(canon))))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Filtration is immutable")

    @classmethod
    def from_jumps(cls, ambient_dim: int, steps: Sequence[Tuple[Fraction, Subspace]]) -> "Filtration":
        return cls(ambient_dim, steps)

    @classmethod
    def trivial(cls, ambient_dim: int, at: Fraction = Fraction(0)) -> "Filtration":
        """The one-jump filtration 0 -> V at the given index."""
        if ambient_dim == 0:
            return cls(0, [])
        return cls(ambient_dim, [(Fraction(at), Subspace.full(ambient_dim))])

    # -- values -----------------------------------------------------------

    def value_at(self, x: Fraction) -> Subspace:
        x = Fraction(x)
        out = Subspace.zero(self.ambient_dim)
        for idx, s in self.steps:
            if idx <= x:
                out = s
            else:
                break
        return out

    def value_below(self, x: Fraction) -> Subspace:
        """The value just under ``x``: sup of the filtration at indices < x."""
        x = Fraction(x)
        out = Subspace.zero(self.ambient_dim)
        for idx, s in self.steps:
            if idx < x:
                out = s
            else:
                break
        return out

    def jumps(self) -> Tuple[Fraction, ...]:
        return tuple(x for x, _ in self.steps)

    def fractional_offsets(self) -> Tuple[Fraction, ...]:
        return tuple(sorted({x - floor(x) for x in self.jumps()} | {Fraction(0)}))

    def graded_at(self, x: Fraction) -> QuotientPresentation:
        return QuotientPresentation(self.value_at(x), self.value_below(x))

    def graded_dims(self) -> Dict[Fraction, int]:
        return {x: self.graded_at(x).dim for x in self.jumps()}

    def shift(self, offset: Fraction) -> "Filtration":
        return Filtration(self.ambient_dim, [(x + Fraction(offset), s) for x, s in self.steps])

    # -- induced filtrations ------------------------------------------------

    def induced_on(self, piece: QuotientPresentation) -> "Filtration":
        """The filtration induced on a subquotient of the ambient space."""
        steps: List[Tuple[Fraction, Subspace]] = []
        for x, s in self.steps:
            inter = s.intersect(piece.sub)
            vecs = [piece.reduce(b) for b in inter.basis]
            steps.append((x, Subspace.span(vecs, piece.dim)))
        if piece.dim > 0 and (not steps or not steps[-1][1].is_full()):
            raise AssertionError("induced filtration lost exhaustiveness")
        return Filtration(piece.dim, steps)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Filtration):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.steps == other.steps

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        parts = ", ".join(f"{x}:{s.dim}" for x, s in self.steps)
        return f"Filtration(ambient={self.ambient_dim}, jumps=[{parts}])"


class MultiFiltration:
    """A finite family of filtrations of one ambient space."""

    __slots__ = ("ambient_dim", "filtrations", "_hash")

    def __init__(self, filtrations: Sequence[Filtration]) -> None:
        fs = tuple(filtrations)
        if not fs:
            raise ValueError("a multifiltration needs at least one filtration")
        n = fs[0].ambient_dim
        for f in fs:
            if f.ambient_dim != n:
                raise ValueError("all filtrations must share the ambient space")
        object.__setattr__(self, "ambient_dim", n)
        object.__setattr__(self, "filtrations", fs)
        object.__setattr__(self, "_hash", hash(fs))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("MultiFiltration is immutable")

    def __len__(self) -> int:
        return len(self.filtrations)

    def __getitem__(self, i: int) -> Filtration:
        return self.filtrations[i]

    def jump_lattice(self) -> List[Tuple[Fraction, ...]]:
        """All tuples of per-coordinate jump indices."""
        return list(product(*(f.jumps() for f in self.filtrations)))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiFiltration):
            return NotImplemented
        return self.filtrations == other.filtrations

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"MultiFiltration(n={len(self)}, ambient={self.ambient_dim})"


def graded_piece(mf: MultiFiltration, point: Sequence[Fraction]) -> QuotientPresentation:
    """Closed-form multigraded piece at an index tuple.

    Numerator: intersection of the selected values.  Denominator: sum over
    coordinates of the same intersection with the j-th value lowered one
    notch.

    >>> line = Subspace.span([(1, 0)], 2)
    >>> f = Filtration.from_jumps(2, [(Fraction(0), line), (Fraction(1), Subspace.full(2))])
    >>> mf = MultiFiltration([f, f])
    >>> graded_piece(mf, (Fraction(0), Fraction(0))).dim
    1
    >>> graded_piece(mf, (Fraction(0), Fraction(1))).dim
    0
    """
    if len(point) != len(mf):
        raise ValueError("index tuple length does not match the family")
    n = mf.ambient_dim
    values = [f.value_at(x) for f, x in zip(mf.filtrations, point)]
    num = intersection_of(values, n)
    terms = []
    for j in range(len(mf)):
        lowered = list(values)
        lowered[j] = mf.filtrations[j].value_below(point[j])
        terms.append(intersection_of(lowered, n))
    den = sum_of(terms, n)
    return QuotientPresentation(num, den)


class HypercomplexCell:
    """One cell of the compatibility hypercomplex of a family of subspaces.

    The cell at a point of ``{-1, 0, +1}^n`` is the subquotient whose
    numerator intersects the subspaces marked ``-1`` and whose denominator
    sums the numerator's intersections with the subspaces marked ``+1``.
    """

    __slots__ = ("point", "presentation")

    def __init__(self, point: Tuple[int, ...], presentation: QuotientPresentation) -> None:
        object.__setattr__(self, "point", point)
        object.__setattr__(self, "presentation", presentation)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("HypercomplexCell is immutable")

    @property
    def dim(self) -> int:
        return self.presentation.dim

    def __repr__(self) -> str:
        return f"HypercomplexCell(point={self.point}, dim={self.dim})"


class SubobjectCompatibility:
    """Verdict of the hypercomplex row-exactness test for a subspace family.

    ``witness`` is None on success; otherwise it is the lexicographically
    smallest failing lattice point together with the direction whose row
    breaks (ties resolved by smaller direction index).
    """

    __slots__ = ("compatible", "witness", "cell_dims")

    def __init__(
        self,
        compatible: bool,
        witness: Optional[Tuple[Tuple[int, ...], int]],
        cell_dims: Dict[Tuple[int, ...], int],
    ) -> None:
        object.__setattr__(self, "compatible", compatible)
        object.__setattr__(self, "witness", witness)
        object.__setattr__(self, "cell_dims", cell_dims)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("SubobjectCompatibility is immutable")

    def __bool__(self) -> bool:
        return self.compatible

    def __repr__(self) -> str:
        if self.compatible:
            return "SubobjectCompatibility(compatible)"
        return f"SubobjectCompatibility(witness={self.witness})"


def _inclusion_induced(src: QuotientPresentation, dst: QuotientPresentation) -> Matrix:
    """Matrix of the map induced by the identity between nested subquotients."""
    cols = [dst.reduce(rep) for rep in src.reps]
    return Matrix.from_columns(cols, dst.dim)


def _row_is_exact(
    left: QuotientPresentation,
    mid: QuotientPresentation,
    right: QuotientPresentation,
) -> bool:
    """Exactness of 0 -> left -> mid -> right -> 0 with inclusion-induced maps."""
    if mid.dim != left.dim + right.dim:
        return False
    f = _inclusion_induced(left, mid)
    g = _inclusion_induced(mid, right)
    if not (g * f).is_zero():
        return False
    if f.rank() != left.dim:
        return False
    if g.rank() != right.dim:
        return False
    return True


@lru_cache(maxsize=1 << 14)
def _subobject_compatibility_cached(
    subspaces: Tuple[Subspace, ...], ambient_dim: int
) -> SubobjectCompatibility:
    n = len(subspaces)
    full = Subspace.full(ambient_dim)

    inter: Dict[frozenset, Subspace] = {frozenset(): full}
    for size in range(1, n + 1):
        for combo in _subsets_of_size(n, size):
            base = frozenset(combo[:-1])
            inter[frozenset(combo)] = inter[base].intersect(subspaces[combo[-1]])

    cells: Dict[Tuple[int, ...], QuotientPresentation] = {}
    for point in product((-1, 0, 1), repeat=n):
        neg = frozenset(i for i, k in enumerate(point) if k == -1)
        pos = [j for j, k in enumerate(point) if k == 1]
        num = inter[neg]
        den = Subspace.zero(ambient_dim)
        for j in pos:
            den = den.sum(inter[neg | {j}])
        cells[point] = QuotientPresentation(num, den)

    witness: Optional[Tuple[Tuple[int, ...], int]] = None
    for point in sorted(cells):
        for i in range(n):
            if point[i] != -1:
                continue
            mid = point[:i] + (0,) + point[i + 1 :]
            right = point[:i] + (1,) + point[i + 1 :]
            if not _row_is_exact(cells[point], cells[mid], cells[right]):
                witness = (point, i)
                break
        if witness is not None:
            break

    dims = {p: c.dim for p, c in cells.items()}
    return SubobjectCompatibility(witness is None, witness, dims)


def _subsets_of_size(n: int, size: int) -> List[Tuple[int, ...]]:
    from itertools import combinations

    return list(combinations(range(n), size))


def compatible_subobjects(
    subspaces: Sequence[Subspace], ambient_dim: Optional[int] = None
) -> SubobjectCompatibility:
    """Test compatibility of a family of subspaces of one ambient space.

    >>> a = Subspace.span([(1, 0)], 2)
    >>> b = Subspace.span([(0, 1)], 2)
    >>> c = Subspace.span([(1, 1)], 2)
    >>> bool(compatible_subobjects([a, b]))
    True
    >>> report = compatible_subobjects([a, b, c])
    >>> report.compatible
    False
    >>> report.witness is not None
    True
    """
    subs = tuple(subspaces)
    if not subs:
        raise ValueError("need at least one subspace")
    dim = subs[0].ambient_dim if ambient_dim is None else ambient_dim
    for s in subs:
        if s.ambient_dim != dim:
            raise ValueError("ambient dimension mismatch")
    return _subobject_compatibility_cached(subs, dim)


class FiltrationCompatibility:
    """Verdict for a multifiltration: compatible at every jump lattice point.

    On failure, ``witness`` carries the failing index tuple plus the cell
    point and direction returned by the subspace-family test.
    """

    __slots__ = ("compatible", "witness")

    def __init__(
        self,
        compatible: bool,
        witness: Optional[Tuple[Tuple[Fraction, ...], Tuple[int, ...], int]],
    ) -> None:
        object.__setattr__(self, "compatible", compatible)
        object.__setattr__(self, "witness", witness)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("FiltrationCompatibility is immutable")

    def __bool__(self) -> bool:
        return self.compatible

    def __repr__(self) -> str:
        if self.compatible:
            return "FiltrationCompatibility(compatible)"
        return f"FiltrationCompatibility(witness={self.witness})"


def compatible_filtrations(mf: MultiFiltration) -> FiltrationCompatibility:
    """Compatibility of a family of filtrations.

    The family is compatible iff the selected values form a compatible
    subspace family at every tuple of jump indices; index tuples between
    jumps repeat these values, so the jump lattice is exhaustive.
    """
    for point in sorted(mf.jump_lattice()):
        values = tuple(f.value_at(x) for f, x in zip(mf.filtrations, point))
        report = compatible_subobjects(values, mf.ambient_dim)
        if not report.compatible:
            assert report.witness is not None
            cell_point, direction = report.witness
            return FiltrationCompatibility(False, (point, cell_point, direction))
    return FiltrationCompatibility(True, None)


class IteratedGradedMismatch(AssertionError):
    """Raised when nested graded pieces disagree with the closed form."""


def iterated_graded(
    mf: MultiFiltration,
    order: Optional[Sequence[int]] = None,
    check: bool = True,
) -> Dict[Tuple[Fraction, ...], int]:
    """Dimensions of iterated graded pieces, taken one filtration at a time.

    The filtration ``order[0]`` is graded first; the remaining filtrations
    are induced on each piece and the process recurses.  Keys of the result
    are index tuples in the *original* coordinate order.  With ``check``
    set, the dimensions are compared against the closed-form multigraded
    pieces and a mismatch raises :class:`IteratedGradedMismatch`.
    """
    n = len(mf)
    if order is None:
        order = tuple(range(n))
    order = tuple(order)
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of the filtration indices")

    dims: Dict[Tuple[Fraction, ...], int] = {}

    def recurse(filts: Tuple[Filtration, ...], positions: Tuple[int, ...], prefix: Dict[int, Fraction]) -> None:
        f0 = filts[0]
        for x in f0.jumps():
            piece = f0.graded_at(x)
            if piece.dim == 0:
                continue
            new_prefix = dict(prefix)
            new_prefix[positions[0]] = x
            if len(filts) == 1:
                key = tuple(new_prefix[i] for i in range(n))
                dims[key] = dims.get(key, 0) + piece.dim
            else:
                induced = tuple(g.induced_on(piece) for g in filts[1:])
                recurse(induced, positions[1:], new_prefix)

    ordered = tuple(mf.filtrations[i] for i in order)
    recurse(ordered, order, {})

    if check:
        closed: Dict[Tuple[Fraction, ...], int] = {}
        for point in mf.jump_lattice():
            d = graded_piece(mf, point).dim
            if d:
                closed[tuple(point)] = d
        if closed != dims:
            raise IteratedGradedMismatch(
                f"iterated graded dims {dims} differ from closed form {closed} (order={order})"
            )
    return dims


def total_graded_dimension(f: Filtration) -> int:
    """Sum of graded dimensions; always the ambient dimension."""
    return sum(f.graded_at(x).dim for x in f.jumps())
