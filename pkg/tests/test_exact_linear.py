import random
from fractions import Fraction

import pytest

from prymspin.exact_linear import (QMatrix, SparseEchelon, kernel_basis, rank,
                                   rref, solve)


def test_rref_identity():
    m = QMatrix.identity(3)
    red, pivots = rref(m)
    assert red == m
    assert pivots == [0, 1, 2]


def test_rref_rank_one():
    red, pivots = rref(QMatrix([[1, 2], [2, 4]]))
    assert red.rows == [[1, 2], [0, 0]]
    assert pivots == [0]


def test_rref_idempotent():
    rng = random.Random(7)
    m = QMatrix([[Fraction(rng.randint(-5, 5), rng.randint(1, 4))
                  for _ in range(6)] for _ in range(4)])
    red, _ = rref(m)
    red2, _ = rref(red)
    assert red == red2


def test_kernel_examples():
    assert kernel_basis(QMatrix.identity(2)) == []
    ker = kernel_basis(QMatrix([[1, 1]]))
    assert len(ker) == 1
    v = ker[0]
    assert v[0] == -v[1] and v[1] != 0


def test_rank_plus_kernel_is_cols():
    rng = random.Random(11)
    for _ in range(10):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        m = QMatrix([[rng.randint(-3, 3) for _ in range(cols)]
                     for _ in range(rows)])
        assert rank(m) + len(kernel_basis(m)) == cols


def test_solve_consistent_and_inconsistent():
    m = QMatrix([[1, 2], [3, 4]])
    x = solve(m, [5, 6])
    assert x is not None and m.mul_vec(x) == [Fraction(5), Fraction(6)]
    assert solve(QMatrix([[1, 1], [1, 1]]), [0, 1]) is None


def test_modular_rank_oracle_random_matrix():
    # rank over Q of a random 50x80 matrix equals the rank mod a large prime
    # chosen away from every denominator
    rng = random.Random(2024)
    p = 2147483647
    m = QMatrix([[Fraction(rng.randint(-9, 9), rng.choice([1, 2, 3, 5]))
                  for _ in range(80)] for _ in range(50)])
    from oracles import mod_rank
    rows = []
    for r in m.rows:
        denom = 1
        for x in r:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
        rows.append({j: int(x * denom) for j, x in enumerate(r) if x})
    assert rank(m) == mod_rank(rows, 80, p)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def test_sparse_echelon_matches_dense():
    rng = random.Random(3)
    rows = [[rng.randint(-2, 2) for _ in range(7)] for _ in range(9)]
    ech = SparseEchelon()
    for r in rows:
        ech.add_row({i: Fraction(v) for i, v in enumerate(r) if v})
    assert ech.rank == rank(QMatrix(rows))


def test_a4_kernel_vector():
    # the 9x5 intersection matrix has a one-dimensional kernel spanned by a
    # multiple of (1, 6, -3, 12, -8)
    from prymspin.pushpull import intersection_table
    _, cols, mat = intersection_table("R2")
    ker = kernel_basis(mat)
    assert len(ker) == 1
    order = ["d0p", "d0pp", "d0r", "d1", "d11"]
    v = [ker[0][cols.index(c)] for c in order]
    scale = v[0]
    assert scale != 0
    assert [x / scale for x in v] == [1, 6, -3, 12, -8]
