import itertools
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from algint.linalg import (InconsistentSystemError, SingularMatrixError, SquareMatrix,
                           nullspace, solve_linear, span_rank)
from algint.scalars import Cyclotomic, Field

from conftest import rand_fraction, rand_matrix


def leibniz_det(m):
    n = m.dim
    total = Fraction(0)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        term = Fraction(-1) ** inversions
        for i, j in enumerate(perm):
            term *= m[i, j]
        total += term
    return total


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_det_matches_permutation_expansion(n):
    rng = random.Random(n)
    for _ in range(10):
        m = rand_matrix(rng, n, bound=4)
        assert m.det() == leibniz_det(m)


def test_inverse_roundtrip():
    rng = random.Random(7)
    for n in range(1, 6):
        m = rand_matrix(rng, n)
        if m.det():
            assert m @ m.inverse() == SquareMatrix.identity(n)
            assert m.inverse() @ m == SquareMatrix.identity(n)


def test_singular_inverse_raises():
    with pytest.raises(SingularMatrixError):
        SquareMatrix([[1, 2], [2, 4]]).inverse()


def test_unit_and_powers():
    x = SquareMatrix.from_entries(3, {(0, 1): 1, (1, 2): 1})
    assert x ** 2 == SquareMatrix.unit(3, 0, 2)
    assert (x ** 3).is_zero()
    assert x ** 0 == SquareMatrix.identity(3)


def test_conjugate_transpose_over_gaussian():
    G = Field.gaussian()
    m = SquareMatrix([["1+i", "2"], ["-i", "3"]], G)
    assert m.H[0, 1] == G.parse("i")
    assert m.H.H == m


small = st.integers(min_value=-3, max_value=3)


@given(st.integers(min_value=1, max_value=5), st.integers(min_value=1, max_value=6),
       st.data())
def test_nullspace_is_kernel_with_correct_dimension(nrows, ncols, data):
    a = [[data.draw(small) for _ in range(ncols)] for _ in range(nrows)]
    rows = [{j: Fraction(x) for j, x in enumerate(r) if x} for r in a]
    basis = nullspace(rows, ncols)
    for v in basis:
        for r in a:
            assert sum(Fraction(x) * y for x, y in zip(r, v)) == 0
    rank = np.linalg.matrix_rank(np.array(a, dtype=float)) if any(any(r) for r in a) else 0
    assert len(basis) == ncols - rank
    assert span_rank(basis, ncols) == len(basis)


def test_solve_linear_particular_and_kernel():
    rows = [({0: 1, 1: 1}, 3), ({1: 1, 2: -1}, 1)]
    x, kernel = solve_linear(rows, 3)
    assert x[0] + x[1] == 3 and x[1] - x[2] == 1
    assert len(kernel) == 1


def test_solve_linear_inconsistent():
    with pytest.raises(InconsistentSystemError):
        solve_linear([({0: 1}, 1), ({0: 2}, 3)], 1)


def test_elimination_over_cyclotomic_field():
    F = Field.cyclotomic(3)
    z = F.zeta()
    m = SquareMatrix([[1, z], [z * z, 1]], F)
    assert m.det() == 1 - z ** 3 == 0
    assert m.rank() == 1
    basis = nullspace([{0: F.one(), 1: z}], 2, F)
    assert len(basis) == 1
    v = basis[0]
    assert v[0] + z * v[1] == 0


def test_matrix_rejects_non_square():
    with pytest.raises(ValueError):
        SquareMatrix([[1, 2]])


def test_immutability():
    m = SquareMatrix.identity(2)
    with pytest.raises(AttributeError):
        m.rows = ()
