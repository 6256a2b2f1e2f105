from fractions import Fraction
from itertools import permutations, product
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toriclink.linalg import (
    Matrix,
    cross_normal,
    det,
    exterior_minors,
    hermite_normal_form,
    integer_kernel,
    is_pointed,
    kernel_basis,
    nonneg_solution,
    primitive,
    quotient_projection,
    rank,
    rref,
    saturate,
    solve,
    solve_matrix,
)


def small_matrices(max_rows=5, max_cols=5, bound=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(st.lists(st.integers(-bound, bound), min_size=c, max_size=c),
                               min_size=r, max_size=r)))


def dense_rank(rows):
    """Textbook Gaussian elimination over Fractions, used as an oracle."""
    a = [[Fraction(x) for x in r] for r in rows]
    r = 0
    for c in range(len(a[0]) if a else 0):
        piv = next((i for i in range(r, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        for i in range(len(a)):
            if i != r and a[i][c]:
                f = a[i][c] / a[r][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        r += 1
    return r


def leibniz_det(rows):
    n = len(rows)
    total = 0
    for p in permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        term = (-1) ** inv
        for i in range(n):
            term *= rows[i][p[i]]
        total += term
    return total


def matmul(a, b):
    return [[sum(x * y for x, y in zip(r, c)) for c in zip(*b)] for r in a]


class TestMatrix:
    def test_basic_ops(self):
        m = Matrix.from_rows([[1, 2], [0, 3]])
        assert m.shape == (2, 2)
        assert m[0, 1] == 2 and m[1, 0] == 0
        assert m.T.tolist() == [[1, 0], [2, 3]]
        assert (m @ Matrix.identity(2)) == m
        assert m.apply([1, 1]) == [3, 3]
        assert m.nnz() == 3
        assert Matrix.zeros(2, 3).is_zero()

    def test_fraction_entries_normalize(self):
        m = Matrix.from_rows([[Fraction(4, 2), Fraction(1, 3)]])
        assert m[0, 0] == 2 and type(m[0, 0]) is int
        assert m[0, 1] == Fraction(1, 3)

    def test_shape_mismatch(self):
        with pytest.raises(ValueError):
            Matrix.identity(2) @ Matrix.identity(3)


class TestRank:
    @pytest.mark.parametrize("rows, expected", [
        ([[1, 2], [2, 4]], 1),
        ([[1, 0, 0], [0, 1, 0], [0, 0, 1]], 3),
        ([[0, 0], [0, 0]], 0),
        ([[2, 4, 6], [1, 3, 5], [3, 7, 11]], 2),
    ])
    def test_known(self, rows, expected):
        assert rank(rows) == expected

    @settings(max_examples=200, deadline=None)
    @given(small_matrices())
    def test_matches_dense_oracle(self, rows):
        assert rank(rows) == dense_rank(rows)

    @settings(max_examples=150, deadline=None)
    @given(small_matrices())
    def test_rank_of_transpose(self, rows):
        assert rank(rows) == rank(Matrix.from_rows(rows).T)

    @settings(max_examples=150, deadline=None)
    @given(small_matrices())
    def test_rank_nullity(self, rows):
        ker = kernel_basis(rows)
        assert rank(rows) + len(ker) == len(rows[0])
        m = Matrix.from_rows(rows)
        for v in ker:
            assert not any(m.apply(list(v)))

    def test_rref_pivots(self):
        rows, piv = rref([[1, 2, 3], [2, 4, 7]])
        assert piv == [0, 2]
        assert rows == [[1, 2, 0], [0, 0, 1]]

    def test_kernel_example(self):
        assert kernel_basis([[1, 2, 3]]) == [(-2, 1, 0), (-3, 0, 1)]


class TestSolve:
    def test_solve_and_inconsistent(self):
        assert solve([[1, 1], [1, -1]], [3, 1]) == (2, 1)
        assert solve([[1, 1], [2, 2]], [1, 3]) is None

    @settings(max_examples=100, deadline=None)
    @given(small_matrices(4, 4), st.lists(st.integers(-3, 3), min_size=4, max_size=4))
    def test_solution_satisfies(self, rows, x):
        x = x[:len(rows[0])]
        b = Matrix.from_rows(rows).apply(x)
        y = solve(rows, b)
        assert y is not None
        assert Matrix.from_rows(rows).apply(list(y)) == b

    def test_solve_matrix(self):
        a = Matrix.from_rows([[1, 0], [1, 1]])
        b = Matrix.from_rows([[2, 3], [5, 7]])
        x = solve_matrix(a, b)
        assert a @ x == b


class TestDeterminant:
    @settings(max_examples=150, deadline=None)
    @given(st.integers(1, 4).flatmap(lambda n: st.lists(
        st.lists(st.integers(-5, 5), min_size=n, max_size=n), min_size=n, max_size=n)))
    def test_bareiss_vs_leibniz(self, rows):
        assert det(rows) == leibniz_det(rows)

    def test_cross_normal_orthogonal(self):
        rows = [(1, 2, 0, 1), (0, 1, 1, 1), (3, 0, 1, 2)]
        nv = cross_normal(rows)
        assert all(sum(a * b for a, b in zip(nv, r)) == 0 for r in rows)
        assert any(nv)


class TestHermite:
    def test_known(self):
        h, u = hermite_normal_form([[2, 4], [1, 3]])
        assert h == [[1, 1], [0, 2]]

    @settings(max_examples=150, deadline=None)
    @given(small_matrices(4, 4, 6))
    def test_invariants(self, rows):
        h, u = hermite_normal_form(rows)
        assert matmul(u, rows) == h
        assert abs(leibniz_det(u)) == 1
        # echelon shape, positive pivots, reduced above
        last = -1
        for i, r in enumerate(h):
            nz = [j for j, x in enumerate(r) if x]
            if not nz:
                assert all(not any(rr) for rr in h[i:])
                break
            p = nz[0]
            assert p > last and r[p] > 0
            for k in range(i):
                assert 0 <= h[k][p] < r[p]
            last = p

    def test_primitive(self):
        assert primitive([4, -6, 2]) == (2, -3, 1)
        with pytest.raises(ValueError):
            primitive([0, 0])


def _in_integer_span(v, basis):
    y = solve([[b[i] for b in basis] for i in range(len(v))], list(v))
    return y is not None and all(Fraction(c).denominator == 1 for c in y)


class TestSaturation:
    def test_known(self):
        assert saturate([(2, 2), (0, 4)]) == [(1, 0), (0, 1)]
        assert saturate([(2, 4, 6)]) == [(1, 2, 3)]

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.lists(st.integers(-3, 3), min_size=3, max_size=3), min_size=1, max_size=2))
    def test_against_box_enumeration(self, gens):
        """Every lattice point in a box that lies in the rational span is an
        integer combination of the saturated basis, and nothing else is."""
        basis = saturate(gens, 3)
        assert len(basis) == rank(gens)
        span_rank = rank(gens)
        for p in product(range(-3, 4), repeat=3):
            in_span = rank(list(gens) + [p]) == span_rank
            if not basis:
                assert not in_span or not any(p)
                continue
            assert in_span == _in_integer_span(p, basis)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=3))
    def test_quotient_projection_kernel(self, gens):
        s = saturate(gens, 4)
        p = quotient_projection(4, s)
        assert p.nrows == 4 - len(s)
        for v in s:
            assert not any(p.apply(list(v)))
        # kernel of p is exactly the saturated lattice
        if p.nrows:
            ker = integer_kernel(p.tolist(), 4)
            assert len(ker) == len(s)
            assert all(_in_integer_span(k, s) for k in ker)
            # surjective onto Z^(4-k): the maximal minors have gcd 1
            minors = exterior_minors(p, p.nrows).tolist()[0]
            assert gcd(*minors) == 1

    def test_quotient_projection_example(self):
        p = quotient_projection(4, [(1, 1, 1, 2)])
        assert p.tolist() == [[1, 0, 1, -1], [0, 1, 1, -1], [0, 0, 2, -1]]

    def test_rejects_unsaturated(self):
        with pytest.raises(ValueError):
            quotient_projection(2, [(2, 0)])


class TestExteriorMinors:
    def test_known(self):
        m = Matrix.from_rows([[1, 0, 2], [0, 1, 3]])
        assert exterior_minors(m, 2).tolist() == [[1, 3, -2]]
        assert exterior_minors(m, 0).tolist() == [[1]]

    @settings(max_examples=80, deadline=None)
    @given(st.data())
    def test_functorial(self, data):
        """Cauchy-Binet: the j-th compound of a product is the product of compounds."""
        p, q, r = (data.draw(st.integers(1, 4)) for _ in range(3))
        entries = st.integers(-4, 4)
        a = data.draw(st.lists(st.lists(entries, min_size=q, max_size=q), min_size=p, max_size=p))
        b = data.draw(st.lists(st.lists(entries, min_size=r, max_size=r), min_size=q, max_size=q))
        j = data.draw(st.integers(0, min(p, q, r)))
        ma, mb = Matrix.from_rows(a), Matrix.from_rows(b)
        assert exterior_minors(ma @ mb, j) == exterior_minors(ma, j) @ exterior_minors(mb, j)

    def test_identity(self):
        assert exterior_minors(Matrix.identity(4), 2) == Matrix.identity(6)


class TestLinearProgramming:
    def test_feasible(self):
        x = nonneg_solution([[1, 1, 0], [0, 1, 1]], [2, 3])
        assert x is not None
        assert all(v >= 0 for v in x)
        assert x[0] + x[1] == 2 and x[1] + x[2] == 3

    def test_infeasible(self):
        assert nonneg_solution([[1, 1]], [-1]) is None

    def test_pointed(self):
        assert is_pointed([(1, 0), (0, 1)])
        assert not is_pointed([(1, 0), (-1, 0), (0, 1)])
        assert not is_pointed([(1, 1), (-1, 0), (0, -1)])
