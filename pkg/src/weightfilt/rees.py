"""Multigraded Rees-type modules, Koszul complexes, and flatness.

A family of filtrations gives rise to a multigraded module over a polynomial
ring in one variable per filtration: the graded piece at a lattice point is
the intersection of the selected filtration values, and each variable acts
by the inclusion into the piece one notch higher.  Compatibility of the
family is equivalent to flatness of this module, and flatness in turn is
decided through regular sequences, giving a second, independent oracle
against the subquotient-exactness test in :mod:`weightfilt.filtration`.

Modules are stored on a finite box of multidegrees.  Below the box every
piece is zero; above it the structure maps are isomorphisms, so accessors
clamp: this saturation is what concentrates all homology in the box (a
Koszul complex on which some variable acts invertibly is null-homotopic).

Regularity of a sequence of variables is computed two ways that must agree:
stepwise injectivity on successive quotients, and vanishing of higher Koszul
homology of every prefix.  Flatness is likewise computed two ways that must
agree: every permutation regular, and every nonempty subset regular.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .exact import Matrix, QuotientPresentation, Subspace, intersection_of, sum_of
from .filtration import IndexLattice, MultiFiltration

Point = Tuple[int, ...]


class ReesModule:
    """A finitely supported multigraded module with saturated top boundary.

    piece_dims maps each box point to the dimension of its graded piece and
    maps[(point, i)] is the matrix of the i-th variable acting from
    ``point - e_i`` into ``point``.  Commuting squares are validated at
    construction.
    """

    def __init__(
        self,
        nvars: int,
        box: Sequence[Tuple[int, int]],
        piece_dims: Dict[Point, int],
        maps: Dict[Tuple[Point, int], Matrix],
        piece_spaces: Optional[Dict[Point, Subspace]] = None,
        validate: bool = True,
        lattice: Optional[IndexLattice] = None,
    ) -> None:
        self.lattice = lattice
        self.nvars = nvars
        self.box = tuple((int(lo), int(hi)) for lo, hi in box)
        if len(self.box) != nvars:
            raise ValueError("box must have one interval per variable")
        for lo, hi in self.box:
            if lo > hi:
                raise ValueError("empty box interval")
        self.piece_dims = dict(piece_dims)
        self.maps = dict(maps)
        self.piece_spaces = piece_spaces
        for p in self.points():
            if p not in self.piece_dims:
                raise ValueError(f"missing piece dimension at {p}")
            for i in range(nvars):
                key = (p, i)
                src = self._raw_dim(self._shift(p, i, -1))
                tgt = self.piece_dims[p]
                if key not in self.maps:
                    self.maps[key] = Matrix.zero(tgt, src)
                m = self.maps[key]
                if (m.rows, m.cols) != (tgt, src):
                    raise ValueError(f"map at {key} has shape {(m.rows, m.cols)}, expected {(tgt, src)}")
        self.saturated_top = tuple(self._top_is_identity(i) for i in range(nvars))
        self._cache: Dict[object, object] = {}
        if validate:
            self._check_squares()

    # -- geometry ---------------------------------------------------------

    def points(self) -> List[Point]:
        return list(product(*(range(lo, hi + 1) for lo, hi in self.box)))

    def interesting_points(self) -> List[Point]:
        """Box points not duplicated by a saturated top slice."""
        ranges = []
        for (lo, hi), sat in zip(self.box, self.saturated_top):
            ranges.append(range(lo, hi + (0 if sat else 1)))
        return list(product(*ranges))

    @staticmethod
    def _shift(p: Point, i: int, d: int) -> Point:
        return p[:i] + (p[i] + d,) + p[i + 1 :]

    def _clamp(self, p: Point) -> Point:
        return tuple(min(x, hi) for x, (_, hi) in zip(p, self.box))

    def _raw_dim(self, p: Point) -> int:
        if any(x < lo for x, (lo, _) in zip(p, self.box)):
            return 0
        return self.piece_dims[self._clamp(p)]

    # -- accessors (zero below the box, clamped above it) ------------------

    def piece_dim(self, p: Point) -> int:
        return self._raw_dim(p)

    def piece_space(self, p: Point) -> Optional[Subspace]:
        if self.piece_spaces is None:
            return None
        if any(x < lo for x, (lo, _) in zip(p, self.box)):
            amb = next(iter(self.piece_spaces.values())).ambient_dim
            return Subspace.zero(amb)
        return self.piece_spaces[self._clamp(p)]

    def map_matrix(self, p: Point, i: int) -> Matrix:
        """Matrix of the i-th variable acting from ``p - e_i`` into ``p``."""
        tgt = self.piece_dim(p)
        src = self.piece_dim(self._shift(p, i, -1))
        if src == 0 or tgt == 0:
            return Matrix.zero(tgt, src)
        lo_i, hi_i = self.box[i]
        if p[i] > hi_i:
            return Matrix.identity(tgt)
        return self.maps[(self._clamp(p), i)]

    # -- validation ---------------------------------------------------------

    def _top_is_identity(self, i: int) -> bool:
        lo_i, hi_i = self.box[i]
        for p in self.points():
            if p[i] != hi_i:
                continue
            m = self.maps[(p, i)]
            if m.rows != m.cols or m != Matrix.identity(m.rows):
                return False
        return True

    def _check_squares(self) -> None:
        for p in self.points():
            for i in range(self.nvars):
                for j in range(i + 1, self.nvars):
                    a = self.map_matrix(p, i) * self.map_matrix(self._shift(p, i, -1), j)
                    b = self.map_matrix(p, j) * self.map_matrix(self._shift(p, j, -1), i)
                    if a != b:
                        raise ValueError(f"structure maps do not commute at {p} in directions {(i, j)}")

    def __repr__(self) -> str:
        return f"ReesModule(nvars={self.nvars}, box={self.box})"


def rees_of(mf: MultiFiltration) -> ReesModule:
    """The multigraded module of a family of filtrations.

    All filtrations are reindexed through one shared integer enumeration of
    the union of their fractional offsets.  The box extends one step below
    the first jump (a zero slice) and one step above the last (a saturated
    slice), so the accessors' boundary conventions are visible inside the
    box itself.
    """
    fracs = set()
    for f in mf.filtrations:
        fracs.update(f.fractional_offsets())
    lat = IndexLattice(fracs)

    box: List[Tuple[int, int]] = []
    for f in mf.filtrations:
        ks = [lat.phi_inv(x) for x in f.jumps()]
        if not ks:
            ks = [0]
        box.append((min(ks) - 1, max(ks) + 1))

    spaces: Dict[Point, Subspace] = {}
    dims: Dict[Point, int] = {}
    pts = list(product(*(range(lo, hi + 1) for lo, hi in box)))
    for p in pts:
        values = [f.value_at(lat.phi(k)) for f, k in zip(mf.filtrations, p)]
        s = intersection_of(values, mf.ambient_dim)
        spaces[p] = s
        dims[p] = s.dim

    maps: Dict[Tuple[Point, int], Matrix] = {}
    for p in pts:
        tgt = spaces[p]
        for i in range(len(mf)):
            q = p[:i] + (p[i] - 1,) + p[i + 1 :]
            src = spaces.get(q)
            if src is None or src.dim == 0 or tgt.dim == 0:
                maps[(p, i)] = Matrix.zero(tgt.dim, src.dim if src is not None else 0)
                continue
            cols = [tgt.rref_coordinates(b) for b in src.basis]
            maps[(p, i)] = Matrix.from_columns(cols, tgt.dim)

    return ReesModule(len(mf), box, dims, maps, piece_spaces=spaces, validate=True, lattice=lat)


class KoszulComplexData:
    """The Koszul complex of a sequence of variables at one multidegree.

    Components sit in degrees ``-len(seq) .. 0``; the component in degree
    ``-t`` is the direct sum over size-t subsets ``S`` of the pieces at the
    multidegree lowered by the indicator of ``S``.  ``d * d == 0`` is
    verified at construction.
    """

    def __init__(self, rees: ReesModule, seq: Sequence[int], multidegree: Point) -> None:
        self.seq = tuple(seq)
        self.multidegree = tuple(multidegree)
        if len(set(self.seq)) != len(self.seq):
            raise ValueError("variable sequence must not repeat")
        svars = sorted(self.seq)
        r = len(svars)

        layout: List[List[Tuple[Tuple[int, ...], int, int]]] = []
        for t in range(r + 1):
            row: List[Tuple[Tuple[int, ...], int, int]] = []
            off = 0
            for S in combinations(svars, t):
                p = self._lowered(multidegree, S)
                d = rees.piece_dim(p)
                row.append((S, d, off))
                off += d
            layout.append(row)
        self.component_dims = tuple(sum(d for _, d, _ in row) for row in layout)

        diffs: List[Matrix] = []
        for t in range(1, r + 1):
            src_row = layout[t]
            tgt_row = layout[t - 1]
            tgt_off = {S: (d, off) for S, d, off in tgt_row}
            total_src = self.component_dims[t]
            total_tgt = self.component_dims[t - 1]
            grid: List[List[Fraction]] = [
                [Fraction(0)] * total_src for _ in range(total_tgt)
            ]
            for S, sdim, soff in src_row:
                if sdim == 0:
                    continue
                for pos, j in enumerate(S):
                    T = tuple(v for v in S if v != j)
                    tdim, toff = tgt_off[T]
                    if tdim == 0:
                        continue
                    block = rees.map_matrix(self._lowered(multidegree, T), j)
                    sign = -1 if pos % 2 else 1
                    for a in range(tdim):
                        row = block.entries[a]
                        for b in range(sdim):
                            if row[b]:
                                grid[toff + a][soff + b] = sign * row[b]
            diffs.append(Matrix(grid, total_tgt, total_src))
        self.differentials = tuple(diffs)

        for t in range(1, r):
            if not (self.differentials[t - 1] * self.differentials[t]).is_zero():
                raise AssertionError("Koszul differential does not square to zero")

    @staticmethod
    def _lowered(m: Point, S: Sequence[int]) -> Point:
        return tuple(x - (1 if i in S else 0) for i, x in enumerate(m))

    def homology(self) -> Dict[int, int]:
        """Dimensions of homology, keyed by (non-positive) degree."""
        r = len(self.seq)
        ranks = [m.rank() for m in self.differentials]
        out: Dict[int, int] = {}
        for t in range(r + 1):
            d_out = ranks[t - 1] if t >= 1 else 0
            d_in = ranks[t] if t < r else 0
            out[-t] = self.component_dims[t] - d_out - d_in
        return out

    def __repr__(self) -> str:
        return f"KoszulComplexData(seq={self.seq}, multidegree={self.multidegree})"


def koszul_complex(rees: ReesModule, seq: Sequence[int], multidegree: Point) -> KoszulComplexData:
    return KoszulComplexData(rees, seq, multidegree)


def koszul_homology(rees: ReesModule, seq: Sequence[int], multidegree: Point) -> Dict[int, int]:
    """Koszul homology dimensions at one multidegree.

    Degree 0 carries the quotient by the images of the selected variables;
    the sequence is regular exactly when all strictly negative degrees
    vanish at every multidegree.
    """
    return KoszulComplexData(rees, seq, multidegree).homology()


# -- regularity ------------------------------------------------------------


def _quotient_presentations(rees: ReesModule, varset: FrozenSet[int]) -> Dict[Point, QuotientPresentation]:
    """Per-point presentations of the quotient by the images of ``varset``."""
    key = ("quot", varset)
    cached = rees._cache.get(key)
    if cached is not None:
        return cached  # type: ignore[return-value]
    out: Dict[Point, QuotientPresentation] = {}
    for p in rees.interesting_points():
        d = rees.piece_dim(p)
        full = Subspace.full(d)
        images = []
        for j in varset:
            m = rees.map_matrix(p, j)
            images.append(Subspace(d, [m.column(c) for c in range(m.cols)]))
        w = sum_of(images, d) if images else Subspace.zero(d)
        out[p] = QuotientPresentation(full, w)
    rees._cache[key] = out
    return out


def _step_injective(rees: ReesModule, varset: FrozenSet[int], nxt: int) -> bool:
    """Is the next variable injective on the quotient by ``varset``?"""
    key = ("inj", varset, nxt)
    cached = rees._cache.get(key)
    if cached is not None:
        return cached  # type: ignore[return-value]
    quots = _quotient_presentations(rees, varset)
    verdict = True
    for p, tgt_q in quots.items():
        src_p = rees._shift(p, nxt, -1)
        src_q = quots.get(src_p)
        if src_q is None:
            # only happens below the box, where the source piece is zero
            assert rees.piece_dim(src_p) == 0
            continue
        if src_q.dim == 0:
            continue
        induced = src_q.induced_matrix(rees.map_matrix(p, nxt), tgt_q)
        if induced.rank() != src_q.dim:
            verdict = False
            break
    rees._cache[key] = verdict
    return verdict


def _koszul_prefix_exact(rees: ReesModule, varset: FrozenSet[int]) -> bool:
    """Does the Koszul complex on ``varset`` resolve its degree-0 quotient?"""
    key = ("koszul", varset)
    cached = rees._cache.get(key)
    if cached is not None:
        return cached  # type: ignore[return-value]
    seq = sorted(varset)
    verdict = True
    for p in rees.interesting_points():
        hom = koszul_homology(rees, seq, p)
        if any(hom[d] for d in hom if d < 0):
            verdict = False
            break
    rees._cache[key] = verdict
    return verdict


class RegularityCertificate:
    """Verdict of the two-route regular-sequence test."""

    __slots__ = ("regular", "sequence", "failed_prefix")

    def __init__(self, regular: bool, sequence: Tuple[int, ...], failed_prefix: Optional[Tuple[int, ...]]) -> None:
        object.__setattr__(self, "regular", regular)
        object.__setattr__(self, "sequence", sequence)
        object.__setattr__(self, "failed_prefix", failed_prefix)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("RegularityCertificate is immutable")

    def __bool__(self) -> bool:
        return self.regular

    def __repr__(self) -> str:
        if self.regular:
            return f"RegularityCertificate(regular, seq={self.sequence})"
        return f"RegularityCertificate(fails at prefix {self.failed_prefix})"


def is_regular_sequence(rees: ReesModule, seq: Sequence[int]) -> RegularityCertificate:
    """Two-route regularity test; the routes are required to agree.

    Route one checks, prefix by prefix, that the next variable acts
    injectively on the quotient by the previous ones.  Route two checks
    that the Koszul complex of every prefix has vanishing higher homology.
    A disagreement would mean an implementation bug, not a property of the
    input, hence the hard error.
    """
    s = tuple(seq)
    if any(not 0 <= v < rees.nvars for v in s):
        raise ValueError("variable index out of range")
    if len(set(s)) != len(s):
        raise ValueError("variable sequence must not repeat")

    inj_ok = True
    inj_fail: Optional[Tuple[int, ...]] = None
    for p in range(len(s)):
        if not _step_injective(rees, frozenset(s[:p]), s[p]):
            inj_ok = False
            inj_fail = s[: p + 1]
            break

    kos_ok = True
    kos_fail: Optional[Tuple[int, ...]] = None
    for p in range(len(s)):
        if not _koszul_prefix_exact(rees, frozenset(s[: p + 1])):
            kos_ok = False
            kos_fail = s[: p + 1]
            break

    if inj_ok != kos_ok:
        raise AssertionError(
            f"regularity routes disagree on {s}: injectivity={inj_ok}, Koszul={kos_ok}"
        )
    return RegularityCertificate(inj_ok, s, inj_fail or kos_fail)


class FlatnessCertificate:
    """Verdict of the two-route flatness test for a multigraded module."""

    __slots__ = ("flat", "witness_kind", "witness")

    def __init__(self, flat: bool, witness_kind: Optional[str], witness: Optional[Tuple[int, ...]]) -> None:
        object.__setattr__(self, "flat", flat)
        object.__setattr__(self, "witness_kind", witness_kind)
        object.__setattr__(self, "witness", witness)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("FlatnessCertificate is immutable")

    def __bool__(self) -> bool:
        return self.flat

    def __repr__(self) -> str:
        if self.flat:
            return "FlatnessCertificate(flat)"
        return f"FlatnessCertificate(fails: {self.witness_kind} {self.witness})"


def is_flat(rees: ReesModule) -> FlatnessCertificate:
    """Flatness via regular sequences, computed two ways that must agree:
    every permutation of the variables is regular, and every nonempty
    subset (in increasing order) is regular.
    """
    n = rees.nvars
    perm_fail: Optional[Tuple[int, ...]] = None
    for perm in permutations(range(n)):
        if not is_regular_sequence(rees, perm).regular:
            perm_fail = perm
            break

    subset_fail: Optional[Tuple[int, ...]] = None
    for size in range(1, n + 1):
        for S in combinations(range(n), size):
            if not is_regular_sequence(rees, S).regular:
                subset_fail = S
                break
        if subset_fail is not None:
            break

    perm_ok = perm_fail is None
    subset_ok = subset_fail is None
    if perm_ok != subset_ok:
        raise AssertionError(
            f"flatness routes disagree: permutations={perm_ok}, subsets={subset_ok}"
        )
    if perm_ok:
        return FlatnessCertificate(True, None, None)
    if subset_fail is not None:
        return FlatnessCertificate(False, "subset", subset_fail)
    return FlatnessCertificate(False, "permutation", perm_fail)


def compatibility_via_flatness(mf: MultiFiltration) -> FlatnessCertificate:
    """Second compatibility oracle: the family is compatible iff its
    multigraded module is flat.  Callers compare this against the
    subquotient-exactness verdict; the two must never be merged here.
    """
    return is_flat(rees_of(mf))
