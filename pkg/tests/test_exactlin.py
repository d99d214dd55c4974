import random

import pytest
from hypothesis import given, settings, strategies as st

from waringlab.exactlin import (
    LinearSubspace,
    Matrix,
    QQ,
    det,
    intersect_all,
    kernel,
    kernel_vectors,
    parse_rational,
    qstr,
    rank,
    rref,
    rref_with_transform,
)


def _unit(n, i):
    return [1 if j == i else 0 for j in range(n)]


class TestRref:
    def test_identity_fixed_point(self):
        m = Matrix.identity(3)
        assert rref(m) == m

    def test_rank_one_rows(self):
        assert rref(Matrix([[2, 4], [1, 2]])) == Matrix([[1, 2], [0, 0]])

    def test_random_matrix_transform_reconstructs(self):
        rng = random.Random(11)
        m = Matrix([[QQ(rng.randint(-9, 9), rng.randint(1, 5))
                     for _ in range(7)] for _ in range(5)])
        r, e = rref_with_transform(m)
        assert r == rref(m)
        assert e.matmul(m) == r
        assert det(e) != 0  # the recorded row operations are invertible

    def test_deterministic(self):
        rows = [[3, 1, 4], [1, 5, 9], [2, 6, 5]]
        assert rref(Matrix(rows)) == rref(Matrix(rows))


class TestKernel:
    def test_zero_matrix_full_kernel(self):
        k = kernel(Matrix.zero(2, 3))
        assert k.affine_dim == 3

    def test_identity_trivial_kernel(self):
        assert kernel(Matrix.identity(4)).affine_dim == 0

    def test_kernel_vectors_annihilate(self):
        rng = random.Random(3)
        m = Matrix([[rng.randint(-5, 5) for _ in range(6)] for _ in range(4)])
        for v in kernel_vectors(m):
            assert all(x == 0 for x in m.mul_vec(v))
        assert len(kernel_vectors(m)) == m.cols - rank(m)


class TestIntersect:
    def test_coordinate_spans(self):
        a = LinearSubspace(5, [_unit(5, 0), _unit(5, 1), _unit(5, 2)])
        b = LinearSubspace(5, [_unit(5, 2), _unit(5, 3), _unit(5, 4)])
        assert a.intersect(b) == LinearSubspace.point(_unit(5, 2))

    def test_idempotent(self):
        a = LinearSubspace(4, [[1, 2, 3, 4], [0, 1, 1, 0]])
        assert a.intersect(a) == a

    def test_two_planes_through_common_point(self):
        rng = random.Random(5)
        p = [rng.randint(-9, 9) for _ in range(5)]
        p[0] = p[0] or 1
        while True:
            a = LinearSubspace(5, [p] + [[rng.randint(-9, 9) for _ in range(5)]
                                         for _ in range(2)])
            b = LinearSubspace(5, [p] + [[rng.randint(-9, 9) for _ in range(5)]
                                         for _ in range(2)])
            if a.dim == 2 and b.dim == 2 and a.plus(b).dim == 4:
                break
        assert a.intersect(b) == LinearSubspace.point(p)

    def test_intersect_all_matches_pairwise_fold(self):
        rng = random.Random(9)
        spaces = [LinearSubspace(6, [[rng.randint(-4, 4) for _ in range(6)]
                                     for _ in range(4)]) for _ in range(3)]
        folded = spaces[0]
        for s in spaces[1:]:
            folded = folded.intersect(s)
        assert intersect_all(spaces) == folded

    def test_ambient_mismatch(self):
        with pytest.raises(ValueError):
            LinearSubspace.full(3).intersect(LinearSubspace.full(4))


class TestContains:
    def test_basis_vector_in_own_span(self):
        a = LinearSubspace(4, [[1, 2, 0, 0], [0, 0, 1, 5]])
        for row in a.basis:
            assert a.contains(row)

    def test_outside_vector(self):
        a = LinearSubspace(4, [_unit(4, 0), _unit(4, 1)])
        assert not a.contains(_unit(4, 3))

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            LinearSubspace.full(3).contains([0, 0, 0])


@st.composite
def subspaces(draw, ncoords=5):
    nrows = draw(st.integers(min_value=0, max_value=4))
    rows = draw(st.lists(
        st.lists(st.integers(min_value=-6, max_value=6),
                 min_size=ncoords, max_size=ncoords),
        min_size=nrows, max_size=nrows))
    return LinearSubspace(ncoords, rows)


class TestSubspaceLaws:
    @given(subspaces(), subspaces())
    @settings(max_examples=60, deadline=None)
    def test_grassmann_dimension_formula(self, a, b):
        inter = a.intersect(b)
        plus = a.plus(b)
        assert inter.affine_dim + plus.affine_dim == a.affine_dim + b.affine_dim

    @given(subspaces())
    @settings(max_examples=40, deadline=None)
    def test_canonicalization_is_projector(self, a):
        again = LinearSubspace(a.ncoords, [list(r) for r in a.basis])
        assert again == a and again.basis == a.basis

    def test_equal_row_spaces_equal_bases(self):
        a = LinearSubspace(4, [[1, 2, 3, 4], [0, 0, 1, 1]])
        b = LinearSubspace(4, [[2, 4, 8, 10], [0, 0, -3, -3],
                               [1, 2, 4, 5]])
        assert a == b and a.basis == b.basis
        assert hash(a) == hash(b)

    def test_constraints_cut_out_subspace(self):
        a = LinearSubspace(5, [[1, 0, 2, 0, 1], [0, 1, 1, 1, 0]])
        cons = Matrix(a.constraints())
        for row in a.basis:
            assert all(x == 0 for x in cons.mul_vec(row))
        assert kernel(cons) == a


class TestRationalText:
    def test_round_trip(self):
        for s in ["3", "-7", "22/7", "-5/3", "0"]:
            assert qstr(parse_rational(s)) == s

    def test_fraction_arithmetic_exact(self):
        assert QQ(1, 3) + QQ(1, 6) == QQ(1, 2)
        assert qstr(QQ(10, 4)) == "5/2"
