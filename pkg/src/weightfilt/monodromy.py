"""Weight filtrations of nilpotent operators, absolute and relative.

The absolute weight filtration of a nilpotent operator N, centered at an
integer c, is the unique increasing filtration W with ``N W_k <= W_{k-2}``
such that the ℓ-th power of N induces an isomorphism from the graded piece
at ``c + ℓ`` onto the piece at ``c - ℓ``.  We construct it from a Jordan
chain basis and then *re-certify both axioms on every call*, so a returned
filtration is always a checked certificate rather than a trusted byproduct.

The relative weight filtration of N with respect to an auxiliary filtration
L (when it exists) is the filtration inducing, on each L-graded piece, the
absolute weight filtration of the induced operator centered at the piece
index, while still satisfying the N-shift axiom.  Existence is genuinely
non-trivial: `relative_monodromy` squeezes the solution between necessary
lower and upper bounds; any violated necessity yields a sound
non-existence certificate, and a pinned candidate is certified before
being returned.

`mf_property` tests whether iterating relative filtrations right-to-left
over a commuting family reproduces the weight filtration of the sum.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

from .exact import (
    Matrix,
    QuotientPresentation,
    Subspace,
)
from .filtration import Filtration


class NilpotentOperator:
    """A square matrix certified nilpotent at construction.

    ``exponent`` is the smallest e with ``N^e == 0``; the zero map on a
    nonzero space has exponent 1.  ``nil_order`` is the largest power with
    nonzero value, i.e. ``exponent - 1``.

    >>> j2 = NilpotentOperator(Matrix.from_rows([[0, 0], [1, 0]]))
    >>> j2.exponent
    2
    >>> j2.nil_order
    1
    >>> NilpotentOperator(Matrix.from_rows([[1, 0], [0, 1]]))
    Traceback (most recent call last):
        ...
    ValueError: operator is not nilpotent
    """

    __slots__ = ("matrix", "dim", "exponent", "_powers")

    def __init__(self, matrix: Matrix) -> None:
        if not matrix.is_square():
            raise ValueError("a nilpotent operator must be square")
        powers = [Matrix.identity(matrix.rows)]
        e = None
        for k in range(1, matrix.rows + 1):
            powers.append(powers[-1] * matrix)
            if powers[-1].is_zero():
                e = k
                break
        if matrix.rows == 0:
            e = 0
        if e is None:
            raise ValueError("operator is not nilpotent")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "dim", matrix.rows)
        object.__setattr__(self, "exponent", e)
        object.__setattr__(self, "_powers", tuple(powers))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("NilpotentOperator is immutable")

    @property
    def nil_order(self) -> int:
        return max(self.exponent - 1, 0)

    def power(self, k: int) -> Matrix:
        if k < len(self._powers):
            return self._powers[k]
        return Matrix.zero(self.dim, self.dim)

    def kernel_of_power(self, k: int) -> Subspace:
        from .exact import kernel_of

        return kernel_of(self.power(k))

    def __repr__(self) -> str:
        return f"NilpotentOperator(dim={self.dim}, exponent={self.exponent})"


class CenteredFiltration:
    """An integer-indexed increasing exhaustive filtration with an offset.

    The ``center`` records the symmetry point of a weight filtration (the
    graded pieces at ``center + l`` and ``center - l`` match up); it is
    carried as metadata and does not affect the stored subspaces.
    """

    __slots__ = ("ambient_dim", "steps", "center", "_hash")

    def __init__(
        self,
        ambient_dim: int,
        steps: Sequence[Tuple[int, Subspace]],
        center: int = 0,
    ) -> None:
        pairs = sorted(((int(k), s) for k, s in steps), key=lambda p: p[0])
        canon: List[Tuple[int, Subspace]] = []
        prev = Subspace.zero(ambient_dim)
        for k, s in pairs:
            if s.ambient_dim != ambient_dim:
                raise ValueError("filtration value has wrong ambient dimension")
            if canon and canon[-1][0] == k:
                raise ValueError(f"duplicate filtration index {k}")
            if not s.contains(prev):
                raise ValueError(f"filtration is not increasing at index {k}")
            if s != prev:
                canon.append((k, s))
                prev = s
        if ambient_dim > 0 and (not canon or not canon[-1][1].is_full()):
            raise ValueError("filtration is not exhaustive (top value must be full)")
        object.__setattr__(self, "ambient_dim", ambient_dim)
        object.__setattr__(self, "steps", tuple(canon))
        object.__setattr__(self, "center", int(center))
        object.__setattr__(self, "_hash", hash((ambient_dim, tuple(canon), int(center))))

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("CenteredFiltration is immutable")

    def value_at(self, k: int) -> Subspace:
        out = Subspace.zero(self.ambient_dim)
        for idx, s in self.steps:
            if idx <= k:
                out = s
            else:
                break
        return out

    def value_below(self, k: int) -> Subspace:
        return self.value_at(k - 1)

    def jumps(self) -> Tuple[int, ...]:
        return tuple(k for k, _ in self.steps)

    def min_jump(self) -> int:
        return self.steps[0][0] if self.steps else 0

    def max_jump(self) -> int:
        return self.steps[-1][0] if self.steps else 0

    def graded_at(self, k: int) -> QuotientPresentation:
        return QuotientPresentation(self.value_at(k), self.value_at(k - 1))

    def graded_dims(self) -> Dict[int, int]:
        return {k: self.graded_at(k).dim for k in self.jumps()}

    def shift(self, offset: int) -> "CenteredFiltration":
        return CenteredFiltration(
            self.ambient_dim,
            [(k + offset, s) for k, s in self.steps],
            center=self.center + offset,
        )

    def induced_on(self, piece: QuotientPresentation, center: Optional[int] = None) -> "CenteredFiltration":
        steps = []
        for k, s in self.steps:
            inter = s.intersect(piece.sub)
            vecs = [piece.reduce(b) for b in inter.basis]
            steps.append((k, Subspace.span(vecs, piece.dim)))
        return CenteredFiltration(
            piece.dim, steps, center=self.center if center is None else center
        )

    def to_filtration(self) -> Filtration:
        return Filtration(
            self.ambient_dim, [(Fraction(k), s) for k, s in self.steps]
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CenteredFiltration):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.steps == other.steps
            and self.center == other.center
        )

    def same_subspaces(self, other: "CenteredFiltration") -> bool:
        """Equality of the stored filtrations, ignoring the center tag."""
        return self.ambient_dim == other.ambient_dim and self.steps == other.steps

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        parts = ", ".join(f"{k}:{s.dim}" for k, s in self.steps)
        return f"CenteredFiltration(center={self.center}, jumps=[{parts}])"


OperatorLike = Union[Matrix, NilpotentOperator]


def _as_operator(n: OperatorLike) -> NilpotentOperator:
    return n if isinstance(n, NilpotentOperator) else NilpotentOperator(n)


def jordan_chain_basis(n: OperatorLike) -> List[List[Tuple[Fraction, ...]]]:
    """A Jordan chain basis: each chain is ``[v, Nv, ..., N^{m-1} v]``.

    Chains are extracted from the top down: new chain tops at height j
    extend the span of the (j-1)-st kernel plus everything pushed down from
    taller chains.
    """
    op = _as_operator(n)
    d = op.dim
    kernels = [op.kernel_of_power(j) for j in range(op.exponent + 1)]
    chains: List[List[Tuple[Fraction, ...]]] = []
    carried: List[Tuple[Fraction, ...]] = []
    for j in range(op.exponent, 0, -1):
        blocked = kernels[j - 1].sum(Subspace.span(carried, d)) if carried else kernels[j - 1]
        tops = blocked.extend_to(kernels[j])
        for v in tops:
            chain = [v]
            for _ in range(j - 1):
                chain.append(op.matrix.apply(chain[-1]))
            chains.append(chain)
        carried = [op.matrix.apply(w) for w in carried] + [
            op.matrix.apply(t) for t in tops
        ]
        carried = [w for w in carried if any(w)]
    total = sum(len(c) for c in chains)
    if total != d:
        raise AssertionError("Jordan chain extraction lost dimensions")
    return chains


class WeightAxiomFailure(AssertionError):
    """Raised when a candidate weight filtration fails certification."""


def verify_weight_axioms(w: CenteredFiltration, n: OperatorLike) -> None:
    """Certify both weight-filtration axioms; raise on any failure.

    Axiom one: N lowers the filtration by two.  Axiom two: the ℓ-th power
    of N induces an isomorphism between the graded pieces at ``center + l``
    and ``center - l`` for every ℓ >= 1 (and the graded dimensions are
    symmetric around the center).
    """
    op = _as_operator(n)
    c = w.center
    for k in w.jumps():
        moved = w.value_at(k).image_under(op.matrix)
        if not w.value_at(k - 2).contains(moved):
            raise WeightAxiomFailure(f"operator does not lower the filtration by two at {k}")
    if not w.steps:
        return
    span = max(abs(w.max_jump() - c), abs(w.min_jump() - c))
    for ell in range(1, span + 1):
        hi = w.graded_at(c + ell)
        lo = w.graded_at(c - ell)
        if hi.dim != lo.dim:
            raise WeightAxiomFailure(
                f"graded dimensions at {c + ell} and {c - ell} differ ({hi.dim} vs {lo.dim})"
            )
        if hi.dim == 0:
            continue
        induced = hi.induced_matrix(op.power(ell), lo)
        if induced.rank() != hi.dim:
            raise WeightAxiomFailure(
                f"power {ell} does not induce an isomorphism between pieces {c + ell} and {c - ell}"
            )


def monodromy_filtration(n: OperatorLike, center: int = 0) -> CenteredFiltration:
    """The weight filtration of a nilpotent operator, centered as requested.

    Built from a Jordan chain basis (an element t steps down a chain of
    length m carries weight ``m - 1 - 2 t``) and certified against both
    axioms before being returned.

    >>> j2 = Matrix.from_rows([[0, 0], [1, 0]])
    >>> w = monodromy_filtration(j2)
    >>> w.graded_dims()
    {-1: 1, 1: 1}
    """
    op = _as_operator(n)
    d = op.dim
    weighted: List[Tuple[int, Tuple[Fraction, ...]]] = []
    for chain in jordan_chain_basis(op):
        m = len(chain)
        for t, v in enumerate(chain):
            weighted.append((center + (m - 1) - 2 * t, v))
    if not weighted:
        out = CenteredFiltration(d, [], center=center)
        verify_weight_axioms(out, op)
        return out
    levels = sorted(set(k for k, _ in weighted))
    steps = []
    for k in levels:
        vecs = [v for kk, v in weighted if kk <= k]
        steps.append((k, Subspace.span(vecs, d)))
    out = CenteredFiltration(d, steps, center=center)
    verify_weight_axioms(out, op)
    return out


# -- relative weight filtrations --------------------------------------------


class NonexistenceCertificate:
    """Why no relative weight filtration can exist.

    Every recorded reason is a *necessary* condition on any solution, so
    the certificate is sound by construction.
    """

    __slots__ = ("level", "kind", "at_jump", "message")

    def __init__(self, level: int, kind: str, at_jump: Optional[int], message: str) -> None:
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "at_jump", at_jump)
        object.__setattr__(self, "message", message)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("NonexistenceCertificate is immutable")

    def __repr__(self) -> str:
        return f"NonexistenceCertificate(level={self.level}, kind={self.kind!r})"


class RelativeMonodromyResult:
    """Outcome of a relative weight filtration computation."""

    __slots__ = ("exists", "filtration", "certificate")

    def __init__(
        self,
        exists: bool,
        filtration: Optional[CenteredFiltration],
        certificate: Optional[NonexistenceCertificate],
    ) -> None:
        object.__setattr__(self, "exists", exists)
        object.__setattr__(self, "filtration", filtration)
        object.__setattr__(self, "certificate", certificate)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("RelativeMonodromyResult is immutable")

    def __bool__(self) -> bool:
        return self.exists

    def __repr__(self) -> str:
        if self.exists:
            return f"RelativeMonodromyResult(exists, {self.filtration!r})"
        return f"RelativeMonodromyResult(not exists, {self.certificate!r})"


class UndeterminedRelativeFiltration(RuntimeError):
    """The bound-squeezing search neither pinned a solution nor refuted one.

    Raised only when residual freedom remains after constraint propagation
    and the canonical completion fails certification; callers treating this
    as non-existence would be unsound.
    """


def relative_monodromy(n: OperatorLike, lfilt: CenteredFiltration) -> RelativeMonodromyResult:
    """The weight filtration of N relative to L, or a refutation.

    Any solution M must satisfy, for every level ℓ and every L-jump k:

    * ``M`` induces on the L-graded piece at k the absolute weight
      filtration of the induced operator centered at k — which forces
      ``dim(M_l ∩ L_k)`` exactly, and squeezes ``M_l`` between explicit
      lower and upper bounds;
    * ``N M_l <= M_{l-2}`` and ``M_{l-1} <= M_l``.

    The bounds are refined to a fixpoint.  Violations refute existence
    (with a certificate); pinned bounds produce a candidate that is then
    certified against both requirements before being accepted.
    """
    op = _as_operator(n)
    d = lfilt.ambient_dim
    if op.dim != d:
        raise ValueError("operator and filtration live on different spaces")
    for k in lfilt.jumps():
        if not lfilt.value_at(k).contains(lfilt.value_at(k).image_under(op.matrix)):
            raise ValueError("operator does not preserve the auxiliary filtration")

    jumps = lfilt.jumps()
    if not jumps:
        return RelativeMonodromyResult(True, CenteredFiltration(d, [], center=0), None)

    pieces: Dict[int, QuotientPresentation] = {}
    graded_weights: Dict[int, CenteredFiltration] = {}
    max_exp = 1
    for k in jumps:
        piece = lfilt.graded_at(k)
        pieces[k] = piece
        induced = piece.induced_matrix(op.matrix, piece)
        ind_op = NilpotentOperator(induced)
        max_exp = max(max_exp, ind_op.exponent)
        graded_weights[k] = monodromy_filtration(ind_op, center=k)

    lo = min(jumps) - max_exp
    hi = max(jumps) + max_exp

    # Necessary data: preimages of the forced graded filtrations, forced
    # cumulative dimensions, and the forced total dimension per level.
    pre: Dict[Tuple[int, int], Subspace] = {}
    for k in jumps:
        piece = pieces[k]
        below = lfilt.value_at(k - 1)
        for ell in range(lo, hi + 1):
            wval = graded_weights[k].value_at(ell)
            lifts = [piece.lift(b) for b in wval.basis]
            pre[(k, ell)] = below.sum(Subspace.span(lifts, d))

    def forced_dim(k: int, ell: int) -> int:
        return sum(graded_weights[kk].value_at(ell).dim for kk in jumps if kk <= k)

    totals = {ell: forced_dim(jumps[-1], ell) for ell in range(lo - 1, hi + 1)}

    ub: Dict[int, Subspace] = {}
    lb: Dict[int, Subspace] = {}
    full = Subspace.full(d)
    zero = Subspace.zero(d)
    top_jump, bottom_jump = jumps[-1], jumps[0]
    for ell in range(lo - 1, hi + 1):
        if ell < lo:
            ub[ell], lb[ell] = zero, zero
        elif ell >= hi:
            ub[ell], lb[ell] = full, full
        else:
            ub[ell] = pre[(top_jump, ell)]
            lb[ell] = pre[(bottom_jump, ell)]

    def refute(level: int, kind: str, at_jump: Optional[int], msg: str) -> RelativeMonodromyResult:
        return RelativeMonodromyResult(
            False, None, NonexistenceCertificate(level, kind, at_jump, msg)
        )

    def state_signature() -> Tuple[int, ...]:
        return tuple(ub[e].dim for e in sorted(ub)) + tuple(
            lb[e].dim for e in sorted(lb)
        )

    while True:
        before = state_signature()
        for ell in range(hi - 1, lo - 1, -1):
            new = ub[ell].intersect(ub[ell + 1])
            if ell - 2 >= lo - 1:
                new = new.intersect(ub[ell - 2].preimage_under(op.matrix))
            else:
                new = new.intersect(zero.preimage_under(op.matrix))
            ub[ell] = new
        for ell in range(lo, hi):
            grown = lb[ell].sum(lb[ell - 1]) if ell - 1 >= lo - 1 else lb[ell]
            if ell + 2 <= hi:
                grown = grown.sum(lb[ell + 2].image_under(op.matrix))
            else:
                grown = grown.sum(full.image_under(op.matrix))
            lb[ell] = grown
        for ell in range(lo, hi):
            for k in jumps:
                cap = ub[ell].intersect(lfilt.value_at(k)).intersect(pre[(k, ell)])
                need = forced_dim(k, ell)
                if cap.dim < need:
                    return refute(
                        ell,
                        "dimension-shortfall",
                        k,
                        f"room inside L at jump {k}, level {ell} is {cap.dim} < forced {need}",
                    )
                if cap.dim == need:
                    lb[ell] = lb[ell].sum(cap)
        for ell in range(lo, hi):
            if not ub[ell].contains(lb[ell]):
                return refute(ell, "containment", None, f"forced vectors escape the upper bound at level {ell}")
            if lb[ell].dim > totals[ell]:
                return refute(
                    ell,
                    "dimension-overflow",
                    None,
                    f"forced lower bound has dimension {lb[ell].dim} > forced total {totals[ell]}",
                )
            if ub[ell].dim < totals[ell]:
                return refute(
                    ell,
                    "dimension-shortfall",
                    None,
                    f"upper bound has dimension {ub[ell].dim} < forced total {totals[ell]}",
                )
            for k in jumps:
                got = lb[ell].intersect(lfilt.value_at(k)).dim
                if got > forced_dim(k, ell):
                    return refute(
                        ell,
                        "dimension-overflow",
                        k,
                        f"forced vectors inside L at jump {k}, level {ell}: {got} > {forced_dim(k, ell)}",
                    )
        if state_signature() == before:
            break

    pinned = all(lb[ell] == ub[ell] for ell in range(lo, hi))
    completed = False
    values: Dict[int, Subspace] = {}
    if pinned:
        for ell in range(lo, hi):
            values[ell] = lb[ell]
    else:
        completed = True
        prev = zero
        for ell in range(lo, hi):
            base = lb[ell].sum(prev)
            if base.dim > totals[ell]:
                return refute(ell, "dimension-overflow", None, "completion forced too many vectors")
            target = totals[ell]
            room = ub[ell]
            cand = base
            if cand.dim < target:
                ext = cand.extend_to(room)
                cand = Subspace.span(list(cand.basis) + ext[: target - cand.dim], d)
            values[ell] = cand
            prev = cand

    steps = [(ell, values[ell]) for ell in range(lo, hi)] + [(hi, full)]
    candidate = CenteredFiltration(d, steps, center=0)

    failure = _relative_axiom_failure(candidate, op, lfilt, graded_weights)
    if failure is None:
        return RelativeMonodromyResult(True, candidate, None)
    if pinned:
        level, msg = failure
        return refute(level, "axiom", None, f"unique candidate fails certification: {msg}")
    raise UndeterminedRelativeFiltration(
        "bounds left freedom and the canonical completion fails certification: "
        + failure[1]
    )


def _relative_axiom_failure(
    m: CenteredFiltration,
    op: NilpotentOperator,
    lfilt: CenteredFiltration,
    graded_weights: Dict[int, CenteredFiltration],
) -> Optional[Tuple[int, str]]:
    """None if ``m`` satisfies both relative axioms, else (level, reason)."""
    for ell in list(m.jumps()):
        moved = m.value_at(ell).image_under(op.matrix)
        if not m.value_at(ell - 2).contains(moved):
            return ell, f"operator does not lower the candidate by two at level {ell}"
    for k in lfilt.jumps():
        piece = lfilt.graded_at(k)
        want = graded_weights[k]
        if piece.dim == 0:
            continue
        span = [w for w in want.jumps()] + [w for w in m.jumps()]
        for ell in range(min(span) - 1, max(span) + 1):
            inter = m.value_at(ell).intersect(piece.sub)
            got = Subspace.span([piece.reduce(b) for b in inter.basis], piece.dim)
            if got != want.value_at(ell):
                return ell, (
                    f"induced filtration on the graded piece at {k} deviates at level {ell}"
                )
    return None


# -- iterated relative filtrations ------------------------------------------


class IteratedWeightReport:
    """Result of comparing the iterated relative filtration with W(sum N_i)."""

    __slots__ = ("holds", "iterated", "total", "certificate")

    def __init__(
        self,
        holds: bool,
        iterated: Optional[CenteredFiltration],
        total: CenteredFiltration,
        certificate: Optional[NonexistenceCertificate],
    ) -> None:
        object.__setattr__(self, "holds", holds)
        object.__setattr__(self, "iterated", iterated)
        object.__setattr__(self, "total", total)
        object.__setattr__(self, "certificate", certificate)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("IteratedWeightReport is immutable")

    def __bool__(self) -> bool:
        return self.holds

    def __repr__(self) -> str:
        return f"IteratedWeightReport(holds={self.holds})"


def mf_property(operators: Sequence[OperatorLike]) -> IteratedWeightReport:
    """Does iterating relative weight filtrations reproduce W of the sum?

    The fold runs right to left: start from the absolute filtration of the
    last operator, then take the relative filtration of each earlier
    operator with respect to the accumulated result.  Non-commuting inputs
    are a usage error (ValueError), whereas a missing relative filtration
    is a legitimate *negative outcome* reported with its certificate.
    """
    ops = [_as_operator(o) for o in operators]
    if not ops:
        raise ValueError("need at least one operator")
    d = ops[0].dim
    for o in ops:
        if o.dim != d:
            raise ValueError("operators act on different spaces")
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if not ops[i].matrix.commutes_with(ops[j].matrix):
                raise ValueError(f"operators {i} and {j} do not commute")

    total_matrix = ops[0].matrix
    for o in ops[1:]:
        total_matrix = total_matrix + o.matrix
    total = monodromy_filtration(NilpotentOperator(total_matrix), center=0)

    acc = monodromy_filtration(ops[-1], center=0)
    for o in reversed(ops[:-1]):
        res = relative_monodromy(o, acc)
        if not res.exists:
            return IteratedWeightReport(False, None, total, res.certificate)
        acc = res.filtration

    holds = acc.same_subspaces(total)
    return IteratedWeightReport(holds, acc, total, None)


class GradedSumReport:
    """Nested graded dimensions of a commuting family versus W(sum)."""

    __slots__ = ("matches", "nested_dims", "total_dims")

    def __init__(
        self,
        matches: bool,
        nested_dims: Dict[Tuple[int, ...], int],
        total_dims: Dict[int, int],
    ) -> None:
        object.__setattr__(self, "matches", matches)
        object.__setattr__(self, "nested_dims", nested_dims)
        object.__setattr__(self, "total_dims", total_dims)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("GradedSumReport is immutable")

    def __bool__(self) -> bool:
        return self.matches

    def __repr__(self) -> str:
        return f"GradedSumReport(matches={self.matches})"


def graded_sum_decomposition(operators: Sequence[OperatorLike]) -> GradedSumReport:
    """Iterate absolute weight gradings and compare with the sum's grading.

    Grade by the weight filtration of the first operator (centered at 0),
    induce the remaining operators on each piece, and recurse; the nested
    piece at ``(k_1, ..., k_p)`` should assemble the graded piece of
    ``W(N_1 + ... + N_p)`` at ``k_1 + ... + k_p``.

    >>> z = Matrix.zero(1, 1)
    >>> graded_sum_decomposition([z, z]).nested_dims
    {(0, 0): 1}
    """
    ops = [_as_operator(o) for o in operators]
    if not ops:
        raise ValueError("need at least one operator")
    for i in range(len(ops)):
        for j in range(i + 1, len(ops)):
            if not ops[i].matrix.commutes_with(ops[j].matrix):
                raise ValueError(f"operators {i} and {j} do not commute")

    nested: Dict[Tuple[int, ...], int] = {}

    def recurse(mats: List[Matrix], prefix: Tuple[int, ...]) -> None:
        w = monodromy_filtration(NilpotentOperator(mats[0]), center=0)
        for k in w.jumps():
            piece = w.graded_at(k)
            if piece.dim == 0:
                continue
            if len(mats) == 1:
                nested[prefix + (k,)] = piece.dim
            else:
                rest = [piece.induced_matrix(m, piece) for m in mats[1:]]
                recurse(rest, prefix + (k,))

    recurse([o.matrix for o in ops], ())

    total_matrix = ops[0].matrix
    for o in ops[1:]:
        total_matrix = total_matrix + o.matrix
    total = monodromy_filtration(NilpotentOperator(total_matrix), center=0)
    total_dims = total.graded_dims()

    assembled: Dict[int, int] = {}
    for key, dim in nested.items():
        s = sum(key)
        assembled[s] = assembled.get(s, 0) + dim
    matches = assembled == {k: v for k, v in total_dims.items() if v}
    return GradedSumReport(matches, nested, total_dims)
