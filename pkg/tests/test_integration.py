import itertools
import random
import warnings
from dataclasses import replace
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from algint.algebra import AlgebraError, identity_first, new_algebra
from algint.catalog import (antidiagonal_c, matrix_algebra, matrix_c, matrix_to_element,
                            paragrassmann_tensor, quaternion_c, quaternions, standard_entries)
from algint.conjugation import find_c
from algint.integration import (CompletenessError, ScalarProductMismatch, integral_functional,
                                integrate, scalar_product, trace_integral_matrix_algebra,
                                verify_completeness)
from algint.linalg import SquareMatrix
from algint.scalars import GAUSSIAN, Cyclotomic

from conftest import rand_element, rand_matrix


@pytest.mark.parametrize("N", [1, 2, 3, 4])
def test_matrix_units_integrate_to_delta(N):
    fn = integral_functional(matrix_algebra(N), matrix_c(N))
    for r, s in itertools.product(range(N), repeat=2):
        assert fn.values[r * N + s] == (1 if r == s else 0)


@pytest.mark.parametrize("p", range(1, 7))
def test_paragrassmann_integral_picks_top_power(p):
    fn = integral_functional(paragrassmann_tensor(p), antidiagonal_c(p))
    assert fn.values == tuple(1 if k == p else 0 for k in range(p + 1))


def test_quaternion_integral():
    H = quaternions()
    fn = integral_functional(H, quaternion_c())
    assert fn.values == (1, 0, 0, 0)
    # brute-force check of the completeness sum over all 16 index pairs
    C = quaternion_c()
    for i, j in itertools.product(range(4), repeat=2):
        total = sum(H.f[i][k][p] * C[k, j] * fn.values[p] for k in range(4) for p in range(4))
        assert total == (1 if i == j else 0)


def test_identity_integrates_to_trace():
    for N in (1, 2, 3):
        alg = matrix_algebra(N)
        fn = integral_functional(alg, matrix_c(N))
        assert fn(matrix_to_element(alg, SquareMatrix.identity(N))) == N


def test_grassmann_linear_element():
    fn = integral_functional(paragrassmann_tensor(1), antidiagonal_c(1))
    alg = fn.algebra
    for a, b in [(3, 7), (Fraction(-1, 2), 5), (0, 1)]:
        assert integrate(fn, alg.element([b, a])) == a
    assert integrate(fn, alg.zero()) == 0


def test_algebra_mismatch():
    fn = integral_functional(paragrassmann_tensor(1), antidiagonal_c(1))
    with pytest.raises(AlgebraError):
        integrate(fn, quaternions().basis(0))


def test_wrong_dimension_c():
    with pytest.raises(AlgebraError):
        integral_functional(quaternions(), SquareMatrix.identity(3))


def test_non_intertwining_c_is_rejected():
    # identity C on Grassmann: values (1, 0) break the completeness relation
    with pytest.raises(CompletenessError):
        integral_functional(paragrassmann_tensor(1), SquareMatrix.identity(2))


def test_non_strict_construction_reports():
    fn = integral_functional(paragrassmann_tensor(1), SquareMatrix.identity(2), strict=False)
    assert not verify_completeness(fn).ok


@pytest.mark.parametrize("entry", standard_entries(), ids=lambda e: e.key)
def test_completeness_both_orderings(entry):
    alg = entry.algebra()
    c = entry.c_matrix() or find_c(alg)
    rep = verify_completeness(integral_functional(alg, c))
    assert rep.ok


@pytest.mark.parametrize("alg,c", [(matrix_algebra(2), matrix_c(2)),
                                   (paragrassmann_tensor(3), antidiagonal_c(3)),
                                   (quaternions(), quaternion_c())], ids=["A2", "G3", "H"])
def test_perturbed_value_is_caught(alg, c):
    fn = integral_functional(alg, c)
    for j in range(alg.dim):
        vals = list(fn.values)
        vals[j] += 1
        rep = verify_completeness(replace(fn, values=tuple(vals)))
        assert rep.right_violations and rep.left_violations


@pytest.mark.parametrize("N", [2, 3, 4])
def test_trace_oracle(N):
    alg = matrix_algebra(N)
    fn = integral_functional(alg, matrix_c(N))
    rng = random.Random(N)
    for _ in range(25):
        A = rand_matrix(rng, N)
        assert fn(matrix_to_element(alg, A)) == trace_integral_matrix_algebra(N, A)


def test_trace_examples():
    assert trace_integral_matrix_algebra(3, SquareMatrix.identity(3)) == 3
    assert trace_integral_matrix_algebra(2, SquareMatrix.unit(2, 0, 1)) == 0
    with pytest.raises(ValueError):
        trace_integral_matrix_algebra(3, SquareMatrix.identity(2))


@given(st.lists(st.fractions(max_denominator=9, min_value=-9, max_value=9),
                min_size=8, max_size=8), st.fractions(max_denominator=5, min_value=-5, max_value=5))
def test_linearity(coeffs, lam):
    alg = quaternions()
    fn = integral_functional(alg, quaternion_c())
    a, b = alg.element(coeffs[:4]), alg.element(coeffs[4:])
    assert fn(a.scale(lam) + b) == lam * fn(a) + fn(b)


def test_off_basis_identity_agrees_with_reordered_basis():
    alg = matrix_algebra(2)
    fn = integral_functional(alg, matrix_c(2))
    placed = identity_first(alg)
    moved = placed.algebra
    fn2 = integral_functional(moved, find_c(moved))
    # the solver's C is fixed only up to scale, so compare integrals up to one ratio
    T = placed.T
    ratios = set()
    for a in range(4):
        old = alg.element(T.row(a))
        lhs, rhs = fn2.values[a], fn(old)
        assert (lhs == 0) == (rhs == 0)
        if rhs:
            ratios.add(lhs / rhs)
    assert len(ratios) == 1


# -- scalar product ---------------------------------------------------------

def gaussian_matrix_algebra():
    base = matrix_algebra(2)
    return new_algebra(4, "gaussian", base.f)


@given(st.lists(st.tuples(st.integers(-5, 5), st.integers(-5, 5)), min_size=4, max_size=4))
def test_gaussian_positivity(pairs):
    alg = gaussian_matrix_algebra()
    fn = integral_functional(alg, SquareMatrix(matrix_c(2).rows, GAUSSIAN))
    f = alg.element([Cyclotomic(4, [re, im]) for re, im in pairs])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        n2 = scalar_product(fn, f, f)
    assert n2 == sum(re * re + im * im for re, im in pairs)
    assert (n2 == 0) == f.is_zero()


def test_gaussian_sesquilinear():
    alg = gaussian_matrix_algebra()
    fn = integral_functional(alg, SquareMatrix(matrix_c(2).rows, GAUSSIAN))
    rng = random.Random(4)
    i = Cyclotomic.zeta(4)
    for _ in range(5):
        f, g = rand_element(rng, alg), rand_element(rng, alg)
        assert scalar_product(fn, f.scale(i), g) == -i * scalar_product(fn, f, g)
        assert scalar_product(fn, f, g.scale(i)) == i * scalar_product(fn, f, g)
        assert scalar_product(fn, g, f) == scalar_product(fn, f, g).conjugate()


def test_grassmann_basis_products():
    fn = integral_functional(paragrassmann_tensor(1), antidiagonal_c(1))
    one, theta = fn.algebra.basis(0), fn.algebra.basis(1)
    assert scalar_product(fn, one, theta) == 0
    assert scalar_product(fn, theta, theta) == 1
    assert scalar_product(fn, one, one) == 1


def test_matrix_basis_orthonormal():
    alg = matrix_algebra(2)
    fn = integral_functional(alg, matrix_c(2))
    for a, b in itertools.product(range(4), repeat=2):
        assert scalar_product(fn, alg.basis(a), alg.basis(b)) == (1 if a == b else 0)


def test_mismatch_warns():
    alg = matrix_algebra(2)
    fn = integral_functional(alg, matrix_c(2))
    bad = replace(fn, values=(2, 0, 0, 2))
    with pytest.warns(ScalarProductMismatch):
        v = scalar_product(bad, alg.basis(0), alg.basis(0))
    assert v == 2
