"""Exact arithmetic and subspace-lattice foundations."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from weightfilt.exact import (
    GaussianRational,
    I,
    Matrix,
    QuotientPresentation,
    Subspace,
    exp_nilpotent,
    image_of,
    is_positive_definite,
    kernel_of,
    quotient_presentation,
    rank_of_rows,
    solve_columns,
)

from strategies import (
    gaussian_scalars,
    matrices,
    nilpotent_matrices,
    subspaces,
)


class TestGaussianRational:
    def test_field_identities(self):
        x = GaussianRational(Fraction(2, 3), Fraction(-1, 2))
        assert x + 0 == x
        assert x * 1 == x
        assert x - x == 0
        assert x * x.conjugate() == Fraction(4, 9) + Fraction(1, 4)

    def test_reflected_ops_with_builtins(self):
        x = GaussianRational(1, 1)
        assert 2 + x == GaussianRational(3, 1)
        assert Fraction(1, 2) * x == GaussianRational(Fraction(1, 2), Fraction(1, 2))
        assert 1 - x == GaussianRational(0, -1)
        assert (2 / GaussianRational(1, 1)) == GaussianRational(1, -1)

    def test_division(self):
        assert I * I == -1
        assert (GaussianRational(1, 1) / GaussianRational(1, -1)) == I

    def test_hash_agrees_with_fraction_on_reals(self):
        assert hash(GaussianRational(Fraction(3, 4), 0)) == hash(Fraction(3, 4))
        assert GaussianRational(Fraction(3, 4), 0) == Fraction(3, 4)

    @given(gaussian_scalars(), gaussian_scalars())
    def test_conjugation_is_multiplicative(self, a, b):
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()

    @given(gaussian_scalars())
    def test_nonzero_elements_invert(self, a):
        if a != 0:
            assert a * (1 / a) == 1

    def test_zero_division_raises(self):
        with pytest.raises(ZeroDivisionError):
            GaussianRational(1, 2) / GaussianRational(0, 0)


class TestMatrix:
    @given(matrices())
    def test_double_transpose(self, m):
        assert m.transpose().transpose() == m

    @given(matrices(rows=3, cols=3), matrices(rows=3, cols=3))
    def test_transpose_reverses_products(self, a, b):
        assert (a * b).transpose() == b.transpose() * a.transpose()

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            Matrix.zero(2, 3) * Matrix.zero(2, 3)

    def test_degenerate_shapes_compose(self):
        # maps through a zero-dimensional space keep their outer shape
        f = Matrix.zero(0, 3)
        g = Matrix.zero(2, 0)
        assert (g * f).rows == 2 and (g * f).cols == 3

    @given(nilpotent_matrices(max_dim=5))
    def test_exp_nilpotent_inverts(self, n):
        e = exp_nilpotent(n)
        em = exp_nilpotent(-n)
        assert e * em == Matrix.identity(n.rows)

    @given(matrices())
    def test_rank_bounded_and_transpose_invariant(self, m):
        r = m.rank()
        assert 0 <= r <= min(m.rows, m.cols)
        assert m.transpose().rank() == r

    def test_inverse_round_trip(self):
        m = Matrix([[1, 2], [3, 5]])
        assert m * m.inverse() == Matrix.identity(2)
        with pytest.raises(ValueError):
            Matrix([[1, 1], [1, 1]]).inverse()


class TestRankAndSolve:
    @given(matrices())
    def test_integer_scaling_fast_path_matches_generic(self, m):
        # rank via fraction-clearing elimination vs. rank of the transpose,
        # which takes an independent elimination route
        rows = [tuple(x * 12 for x in row) for row in m.entries]
        assert rank_of_rows(rows) == m.rank()

    @given(matrices(rows=3, cols=2))
    def test_solve_columns_solves_consistent_systems(self, m):
        cols = [tuple(m.entries[i][j] for i in range(m.rows)) for j in range(m.cols)]
        b = m.apply((Fraction(1), Fraction(-2)))
        y = solve_columns(cols, b)
        assert y is not None
        assert m.apply(y) == b

    def test_solve_columns_detects_inconsistency(self):
        assert solve_columns([(Fraction(1), Fraction(0))], (Fraction(0), Fraction(1))) is None


class TestSubspace:
    @given(subspaces())
    def test_canonical_equality_is_extensional(self, s):
        again = Subspace.span(list(s.basis), s.ambient_dim)
        assert again == s
        assert hash(again) == hash(s)
        doubled = Subspace.span([tuple(2 * x for x in b) for b in s.basis], s.ambient_dim)
        assert doubled == s

    @given(subspaces(ambient_dim=4), subspaces(ambient_dim=4))
    def test_dimension_formula(self, a, b):
        assert a.sum(b).dim + a.intersect(b).dim == a.dim + b.dim

    @given(subspaces(ambient_dim=3), subspaces(ambient_dim=3))
    def test_sum_and_intersection_bounds(self, a, b):
        s, t = a.sum(b), a.intersect(b)
        assert t <= a and t <= b
        assert a <= s and b <= s

    @given(subspaces(ambient_dim=3))
    def test_membership_of_basis_vectors(self, s):
        for b in s.basis:
            assert s.contains_vector(b)
            assert s.reduce_vector(b) == tuple(Fraction(0) for _ in range(s.ambient_dim))

    @given(subspaces(ambient_dim=4))
    def test_rref_coordinates_match_generic_coordinates(self, s):
        for b in s.basis:
            assert s.rref_coordinates(b) == s.coordinates_of(b)

    @given(subspaces(ambient_dim=3))
    def test_extend_to_full(self, s):
        ext = s.extend_to(Subspace.full(3))
        assert len(ext) == 3 - s.dim

    def test_preimage_under(self):
        m = Matrix([[1, 0], [0, 0]])
        line = Subspace.span([(1, 0)], 2)
        pre = line.preimage_under(m)
        assert pre == Subspace.full(2)
        zero_pre = Subspace.zero(2).preimage_under(m)
        assert zero_pre == Subspace.span([(0, 1)], 2)


class TestKernelImage:
    @given(matrices())
    def test_rank_nullity(self, m):
        assert kernel_of(m).dim + image_of(m).dim == m.cols

    @given(matrices())
    def test_image_contains_applied_vectors(self, m):
        img = image_of(m)
        for j in range(m.cols):
            col = tuple(m.entries[i][j] for i in range(m.rows))
            assert img.contains_vector(col)

    @given(matrices())
    def test_kernel_vectors_map_to_zero(self, m):
        zero = tuple(Fraction(0) for _ in range(m.rows))
        for v in kernel_of(m).basis:
            assert m.apply(v) == zero


class TestQuotientPresentation:
    @given(subspaces(ambient_dim=4), subspaces(ambient_dim=4))
    def test_dimension(self, a, b):
        num = a.sum(b)
        q = quotient_presentation(num, b)
        assert q.dim == num.dim - b.dim

    @given(subspaces(ambient_dim=3))
    def test_reduce_kills_denominator(self, den):
        q = quotient_presentation(Subspace.full(3), den)
        zero = tuple(Fraction(0) for _ in range(q.dim))
        for v in den.basis:
            assert q.reduce(v) == zero

    @given(subspaces(ambient_dim=3))
    def test_lift_then_reduce_is_identity(self, den):
        q = quotient_presentation(Subspace.full(3), den)
        for k in range(q.dim):
            e = tuple(Fraction(1) if i == k else Fraction(0) for i in range(q.dim))
            assert q.reduce(q.lift(e)) == e


class TestPositivity:
    def test_identity_is_positive(self):
        cert = is_positive_definite(Matrix.identity(3))
        assert cert.positive and cert.witness is None

    def test_witness_points_at_failing_pivot(self):
        m = Matrix([[1, 0], [0, -1]])
        cert = is_positive_definite(m)
        assert not cert.positive
        assert cert.witness == 1

    def test_semidefinite_is_not_definite(self):
        m = Matrix([[1, 1], [1, 1]])
        assert not is_positive_definite(m).positive

    @given(matrices(rows=3, cols=3))
    def test_gram_of_invertible_is_positive(self, m):
        if m.rank() == 3:
            cert = is_positive_definite(m.transpose() * m)
            assert cert.positive

    def test_rejects_asymmetric_input(self):
        with pytest.raises(ValueError):
            is_positive_definite(Matrix([[1, 2], [0, 1]]))
