import random
from fractions import Fraction

import numpy as np
import pytest

from recomb import golden
from recomb.linalg import (
    DependentRowsError,
    ModularRankAccumulator,
    det_bareiss,
    hnf_rows,
    hnf_with_transform,
    int_matmul,
    is_lll_reduced,
    lattice_contains,
    lattice_coordinates,
    lattices_equal,
    lll_reduce,
    modular_rank,
    nullspace_lattice,
    rational_span_equal,
    rcf,
    rcf_nullspace,
    sort_vectors_by_norm,
    squared_norm,
    transpose,
)


def random_int_matrix(rnd, m, n, lo=-5, hi=5):
    return [[rnd.randint(lo, hi) for _ in range(n)] for _ in range(m)]


class TestRcf:
    def test_golden_binary(self, E24):
        R = rcf(E24.array.tolist())
        assert R.rank == 6
        assert [[int(x) for x in row] for row in R.rows[:6]] == \
            [list(r) for r in golden.load_matrix("rcf_n2_d4")]

    def test_identity(self):
        eye = np.eye(5, dtype=int).tolist()
        R = rcf(eye)
        assert R.rank == 5
        assert [[int(x) for x in row] for row in R.rows] == eye

    def test_idempotent(self):
        rnd = random.Random(1)
        for _ in range(20):
            M = random_int_matrix(rnd, rnd.randint(1, 6), rnd.randint(1, 6))
            R1 = rcf(M)
            R2 = rcf(R1.rows)
            assert R1.rows == R2.rows and R1.rank == R2.rank

    def test_rational_entries(self):
        M = [[Fraction(1, 2), Fraction(1, 3)], [Fraction(3), Fraction(1)]]
        R = rcf(M)
        assert R.rank == 2
        assert R.rows == [[1, 0], [0, 1]]


class TestRcfNullspace:
    def test_golden_binary_sorted(self, E24):
        ns = sort_vectors_by_norm(rcf_nullspace(E24.array.tolist()))
        assert ns == [list(r) for r in golden.load_matrix("nullspace_canonical_n2_d4")]
        assert [squared_norm(v) for v in ns] == \
            golden.scalars()["nullspace_norms_n2_d4"]

    def test_full_column_rank_gives_empty(self):
        assert rcf_nullspace(np.eye(4, dtype=int).tolist()) == []

    def test_scaling_clears_denominators(self):
        # pivot row (1, 1/2) gives raw vector (-1/2, 1) -> scaled (-1, 2)
        M = [[2, 1]]
        assert rcf_nullspace(M) == [[-1, 2]]

    def test_vectors_annihilate(self, E35, E37):
        for E in (E35, E37):
            ns = rcf_nullspace(E.array.tolist())
            if ns:
                prod = E.array @ np.array(ns, dtype=np.int64).T
                assert not prod.any()


class TestHnf:
    def test_golden_binary(self, E24):
        Et = transpose(E24.array.tolist())
        res = hnf_with_transform(Et)
        assert res.rank == 6
        assert res.h[:6] == [list(r) for r in golden.load_matrix("hnf_nonzero_rows_n2_d4")]
        assert all(not any(row) for row in res.h[6:])
        assert int_matmul(res.u, Et) == res.h
        assert abs(det_bareiss(res.u)) == 1

    def test_identity_and_zero(self):
        eye = np.eye(4, dtype=int).tolist()
        res = hnf_with_transform(eye)
        assert res.h == eye and res.u == eye and res.rank == 4
        zero = [[0, 0], [0, 0]]
        res = hnf_with_transform(zero)
        assert res.h == zero and res.rank == 0
        assert abs(det_bareiss(res.u)) == 1

    @staticmethod
    def check_hnf_conditions(h, rank, pivots):
        for i in range(rank):
            j = pivots[i]
            assert h[i][j] >= 1
            assert all(x == 0 for x in h[i][:j])
            for k in range(i):
                assert 0 <= h[k][j] < h[i][j]
        for i in range(rank, len(h)):
            assert not any(h[i])
        assert pivots == sorted(pivots)

    def test_random_matrices(self):
        rnd = random.Random(42)
        for _ in range(40):
            M = random_int_matrix(rnd, rnd.randint(1, 7), rnd.randint(1, 7))
            res = hnf_with_transform(M)
            self.check_hnf_conditions(res.h, res.rank, res.pivots)
            assert int_matmul(res.u, M) == res.h
            assert abs(det_bareiss(res.u)) == 1
            assert res.det_sign == det_bareiss(res.u)
            assert hnf_rows(M) == res.h[:res.rank]


class TestNullspaceLattice:
    def test_binary_shape(self, E24):
        lat = nullspace_lattice(E24.array.tolist())
        assert len(lat) == 9
        assert not (E24.array @ np.array(lat).T).any()

    def test_invertible_empty(self):
        assert nullspace_lattice([[2, 1], [1, 1]]) == []

    def test_rcf_vectors_are_integer_combinations(self, E24):
        lat = nullspace_lattice(E24.array.tolist())
        for v in rcf_nullspace(E24.array.tolist()):
            coords = lattice_coordinates(lat, v)
            assert coords is not None
            rebuilt = [0] * len(v)
            H = hnf_rows(lat)
            for c, row in zip(coords, H):
                rebuilt = [x + c * y for x, y in zip(rebuilt, row)]
            assert rebuilt == list(v)

    def test_membership_negative(self, E24):
        lat = nullspace_lattice(E24.array.tolist())
        outside = [1] + [0] * 14
        assert not lattice_contains(lat, outside)

    def test_rational_span_matches_rcf(self, E24):
        lat = nullspace_lattice(E24.array.tolist())
        assert rational_span_equal(lat, rcf_nullspace(E24.array.tolist()))


class TestLll:
    def test_orthogonal_unchanged(self):
        basis = (4 * np.eye(4, dtype=int)).tolist()
        assert lll_reduce(basis) == basis

    def test_classic_example(self):
        basis = [[1, 1, 1], [-1, 0, 2], [3, 5, 6]]
        red = lll_reduce(basis)
        assert is_lll_reduced(red)
        assert lattices_equal(basis, red)
        # a shortest lattice vector leads; the tail sits at the |mu| = 1/2
        # boundary, where valid reductions differ
        assert red[0] == [0, 1, 0]
        assert squared_norm(red[1]) == 2

    def test_dependent_rows(self):
        with pytest.raises(DependentRowsError):
            lll_reduce([[1, 2], [2, 4]])

    def test_random_lattices(self):
        rnd = random.Random(99)
        for _ in range(25):
            k = rnd.randint(2, 5)
            n = k + rnd.randint(0, 3)
            while True:
                B = random_int_matrix(rnd, k, n, -9, 9)
                try:
                    red = lll_reduce(B)
                    break
                except DependentRowsError:
                    continue
            assert lattices_equal(B, red)
            assert is_lll_reduced(red)
            assert max(squared_norm(v) for v in red) <= \
                max(squared_norm(v) for v in B)

    def test_binary_nullspace_reduction(self, E24):
        lat = nullspace_lattice(E24.array.tolist())
        red = lll_reduce(lat)
        norms = [squared_norm(v) for v in red]
        assert max(norms) <= golden.scalars()["lll_norm_bound_n2_d4"]
        assert lattices_equal(lat, red)
        assert is_lll_reduced(red)


class TestModularRankAccumulator:
    def test_identity_rows_increment(self):
        acc = ModularRankAccumulator(6, 101, merge_block=2)
        ranks = []
        for row in np.eye(6, dtype=int):
            acc.add_row(row)
            ranks.append(acc.rank())
        assert ranks == [1, 2, 3, 4, 5, 6]

    def test_absorbed_vs_new(self):
        acc = ModularRankAccumulator(4, 101)
        assert acc.add_row([1, 2, 3, 4]) is True
        assert acc.add_row([2, 4, 6, 8]) is False
        assert acc.add_row([0, 1, 1, 1]) is True
        assert acc.rank() == 2

    def test_matches_exact_rank(self):
        rnd = random.Random(3)
        for _ in range(25):
            M = random_int_matrix(rnd, rnd.randint(1, 8), rnd.randint(1, 8), -4, 4)
            exact = rcf(M).rank
            assert modular_rank(M, 101) == exact
            assert modular_rank(M, 103) == exact

    def test_paths_agree(self):
        rnd = random.Random(8)
        M = random_int_matrix(rnd, 40, 17, -6, 6)
        a1 = ModularRankAccumulator(17, 101, merge_block=4)
        for row in M:
            a1.add_row(row)
        a2 = ModularRankAccumulator(17, 101, merge_block=8)
        a2.add_batch(np.array(M))
        a3 = ModularRankAccumulator(17, 101, merge_block=4)
        ri, ci, vi = [], [], []
        for i, row in enumerate(M):
            for j, x in enumerate(row):
                if x:
                    ri.append(i)
                    ci.append(j)
                    vi.append(x)
        a3.add_sparse_batch(ri, ci, vi, len(M))
        a4 = ModularRankAccumulator(17, 101)
        for row in M:
            cols = [j for j, x in enumerate(row) if x]
            a4.add_sparse(cols, [row[j] for j in cols])
        assert a1.rank() == a2.rank() == a3.rank() == a4.rank() == rcf(M).rank
        e1 = a1.echelon()
        e2 = a2.echelon()
        assert e1.shape == e2.shape
        assert sorted(a1.pivot_columns()) == sorted(a2.pivot_columns())

    def test_echelon_is_reduced(self):
        rnd = random.Random(11)
        M = random_int_matrix(rnd, 12, 9, -5, 5)
        acc = ModularRankAccumulator(9, 101, merge_block=3)
        acc.add_batch(np.array(M))
        E = acc.echelon()
        pivots = acc.pivot_columns()
        for i, j in enumerate(pivots):
            col = E[:, j]
            assert col[i] == 1 and np.count_nonzero(col) == 1

    def test_rejects_composite_modulus(self):
        with pytest.raises(ValueError):
            ModularRankAccumulator(5, 100)


class TestSortVectors:
    def test_tie_break_is_lexicographic(self):
        vs = [[2, -1, -1, 0], [-1, 0, 2, -1]]
        assert sort_vectors_by_norm(vs) == [[-1, 0, 2, -1], [2, -1, -1, 0]]


class TestIntMatmul:
    def test_big_entries_fall_back_exactly(self):
        big = 2 ** 40
        A = [[big, 1], [0, big]]
        B = [[big, 0], [1, big]]
        out = int_matmul(A, B)
        assert out == [[big * big + 1, big], [big, big * big]]
