"""Exact linear algebra cross-checked against the fraction-free oracle."""

from fractions import Fraction

import pytest

from conftest import oracle_rank
from lietriple.errors import SingularMatrix
from lietriple.linalg import (
    Subspace,
    determinant,
    identity_matrix,
    mat_inverse,
    mat_mul,
    nullspace,
    rank,
    rref,
)
from lietriple.sampling import ExactRandom
from lietriple.scalars import GaussianRational


def test_rref_canonical():
    rows, pivots = rref([[2, 4], [1, 2]])
    assert pivots == [0]
    assert rows[0] == [1, 2]
    assert all(x == 0 for x in rows[1])


def test_rank_matches_oracle_randomized():
    rng = ExactRandom(5)
    for _ in range(30):
        n = rng.rng.randint(1, 5)
        m = rng.rng.randint(1, 6)
        rows = [[rng.gaussian(4) for _ in range(m)] for _ in range(n)]
        assert rank(rows) == oracle_rank(rows)


def test_nullspace_is_kernel():
    rng = ExactRandom(9)
    for _ in range(20):
        n, m = rng.rng.randint(1, 4), rng.rng.randint(2, 5)
        rows = [[rng.gaussian(3) for _ in range(m)] for _ in range(n)]
        basis = nullspace(rows, m)
        for vec in basis:
            for row in rows:
                assert sum((a * b for a, b in zip(row, vec)), start=GaussianRational(0)) == 0
        assert len(basis) == m - oracle_rank(rows)


def test_inverse_and_determinant():
    rng = ExactRandom(11)
    for _ in range(15):
        n = rng.rng.randint(1, 4)
        g = rng.invertible(n, height=5)
        inv = mat_inverse(g)
        prod = mat_mul(g, inv)
        assert prod == identity_matrix(n, one=prod[0][0] * 0 + 1, zero=prod[0][0] * 0) or \
            all(prod[i][j] == (1 if i == j else 0) for i in range(n) for j in range(n))
        assert determinant(g) * determinant(inv) == 1


def test_singular_matrix_raises():
    with pytest.raises(SingularMatrix):
        mat_inverse([[1, 2], [2, 4]])
    assert determinant([[1, 2], [2, 4]]) == 0


class TestSubspace:
    def test_canonical_equality(self):
        a = Subspace(3, [[1, 1, 0], [0, 0, 1]])
        b = Subspace(3, [[2, 2, 2], [0, 0, 5]])
        assert a == b and a.dim == 2

    def test_contains(self):
        s = Subspace(3, [[1, 0, 1]])
        assert s.contains([Fraction(2), Fraction(0), Fraction(2)])
        assert not s.contains([1, 1, 0])
        assert s.contains([0, 0, 0])

    def test_dimension_formula(self):
        rng = ExactRandom(13)
        for _ in range(20):
            n = rng.rng.randint(2, 5)
            u = Subspace(n, [rng.vector(n, 3) for _ in range(rng.rng.randint(0, n))])
            w = Subspace(n, [rng.vector(n, 3) for _ in range(rng.rng.randint(0, n))])
            meet = u.intersection(w)
            join = u.sum(w)
            assert u.dim + w.dim == join.dim + meet.dim
            for v in meet.basis:
                assert u.contains(v) and w.contains(v)

    def test_zero_and_full(self):
        z = Subspace(4)
        assert z.dim == 0 and z.contains([0, 0, 0, 0])
        full = Subspace(2, [[1, 0], [0, 1]])
        assert full.intersection(z).dim == 0
        assert full.sum(z) == full
