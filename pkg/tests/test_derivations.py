import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from algint.algebra import multiply, new_algebra
from algint.catalog import (antidiagonal_c, cyclic_group_algebra, element_to_matrix,
                            matrix_algebra, matrix_c, matrix_to_element, paragrassmann_tensor,
                            quaternion_c, quaternions)
from algint.derivations import (Automorphism, Derivation, NotNilpotentError, classify_derivations,
                                check_lie_closure, derivation_space, exp_automorphism,
                                exp_nilpotent, ibp_defects, ibp_holds, infinitesimal_invariance,
                                inner_derivation, is_derivation, measure_invariant,
                                nilpotency_index, sample_points, theorem_roundtrip)
from algint.integration import integral_functional
from algint.linalg import SingularMatrixError, SquareMatrix

from conftest import rand_element, rand_matrix


def numpy_derivation_nullity(f):
    """Leibniz system f_ijk d_kl - d_ik f_kjl - d_jk f_ikl = 0, rank by SVD."""
    f = np.array(f, dtype=float)
    n = f.shape[0]
    eye = np.eye(n)
    # coefficient of d_ab in equation (i, j, l)
    A = (np.einsum("ija,lb->ijlab", f, eye)
         - np.einsum("ia,bjl->ijlab", eye, f)
         - np.einsum("ja,ibl->ijlab", eye, f))
    return n * n - np.linalg.matrix_rank(A.reshape(n ** 3, n * n))


def grassmann_fn():
    return integral_functional(paragrassmann_tensor(1), antidiagonal_c(1))


SCALING = SquareMatrix([[0, 0], [0, 1]])


# -- derivation space ---------------------------------------------------------

@pytest.mark.parametrize("N", [1, 2, 3])
def test_matrix_algebra_derivations(N):
    alg = matrix_algebra(N)
    space = derivation_space(alg)
    assert len(space) == N * N - 1
    if N > 1:
        assert len(space) == numpy_derivation_nullity(alg.f)
    cl = classify_derivations(alg)
    assert cl.inner_rank == cl.total_rank == N * N - 1
    assert cl.inner_contained and cl.outer_rank == 0


def test_grassmann_derivations_are_scalings():
    space = derivation_space(paragrassmann_tensor(1))
    assert len(space) == 1
    d = space[0].d
    assert d[0, 0] == d[0, 1] == d[1, 0] == 0 and d[1, 1] != 0


@pytest.mark.parametrize("alg", [paragrassmann_tensor(2), paragrassmann_tensor(3), quaternions(),
                                 cyclic_group_algebra(3)], ids=lambda a: a.name)
def test_space_dimension_matches_float_oracle(alg):
    space = derivation_space(alg)
    assert len(space) == numpy_derivation_nullity(alg.f)
    for der in space:
        assert is_derivation(alg, der).ok


def test_paragrassmann_derivations_are_outer():
    # commutative: no inner derivations, D theta in span(theta, ..., theta^p)
    cl = classify_derivations(paragrassmann_tensor(3))
    assert cl.inner_rank == 0 and cl.total_rank == 3


def test_field_has_only_zero_derivation():
    assert derivation_space(new_algebra(1, "rational", [[[1]]])) == []


def test_zero_and_identity_maps():
    alg = quaternions()
    assert is_derivation(alg, SquareMatrix.zeros(4)).ok
    rep = is_derivation(alg, SquareMatrix.identity(4))
    assert not rep.ok and rep.identity_row_zero is False
    assert rep.consistent


@given(st.lists(st.integers(-2, 2), min_size=4, max_size=4))
def test_leibniz_and_commutator_forms_agree(vals):
    d = SquareMatrix([vals[:2], vals[2:]])
    for alg in (paragrassmann_tensor(1), cyclic_group_algebra(2)):
        rep = is_derivation(alg, d)
        assert rep.consistent


# -- inner derivations --------------------------------------------------------

def test_inner_of_identity_is_zero():
    alg = matrix_algebra(3)
    e = matrix_to_element(alg, SquareMatrix.identity(3))
    assert inner_derivation(alg, e).d.is_zero()


def test_inner_on_commutative_is_zero():
    rng = random.Random(0)
    alg = cyclic_group_algebra(5)
    assert inner_derivation(alg, rand_element(rng, alg)).d.is_zero()


def test_inner_example_on_matrix_units():
    alg = matrix_algebra(2)
    e11, e12, e21, e22 = (alg.basis(k) for k in range(4))
    D = inner_derivation(alg, e12)
    assert D.apply(e21) == e22 - e11


def test_inner_matches_commutator_on_elements():
    rng = random.Random(8)
    alg = matrix_algebra(3)
    for _ in range(10):
        a, x = rand_element(rng, alg), rand_element(rng, alg)
        D = inner_derivation(alg, a)
        assert D.apply(x) == multiply(x, a) - multiply(a, x)


def test_inner_is_lie_homomorphism():
    rng = random.Random(9)
    for alg in (matrix_algebra(2), quaternions()):
        for _ in range(10):
            a, b = rand_element(rng, alg), rand_element(rng, alg)
            ab = multiply(a, b) - multiply(b, a)
            da, db = inner_derivation(alg, a).d, inner_derivation(alg, b).d
            assert inner_derivation(alg, ab).d == da.commutator(db)


def test_inner_satisfies_infinitesimal_invariance():
    rng = random.Random(10)
    fn = integral_functional(quaternions(), quaternion_c())
    for _ in range(10):
        d = inner_derivation(fn.algebra, rand_element(rng, fn.algebra))
        assert infinitesimal_invariance(fn, d)


def test_lie_closure():
    rng = random.Random(12)
    alg = matrix_algebra(2)
    assert check_lie_closure(alg, [rand_element(rng, alg) for _ in range(6)])


# -- integration by parts -----------------------------------------------------

@pytest.mark.parametrize("N", [2, 3])
def test_ibp_for_inner_on_matrix_algebra(N):
    rng = random.Random(N)
    alg = matrix_algebra(N)
    fn = integral_functional(alg, matrix_c(N))
    for _ in range(10):
        assert ibp_holds(fn, inner_derivation(alg, rand_element(rng, alg)))


def test_cyclic_trace():
    rng = random.Random(21)
    alg = matrix_algebra(3)
    fn = integral_functional(alg, matrix_c(3))
    for _ in range(20):
        A, B = rand_matrix(rng, 3), rand_matrix(rng, 3)
        assert fn(matrix_to_element(alg, A @ B - B @ A)) == 0


def test_ibp_fails_for_grassmann_scaling():
    fn = grassmann_fn()
    assert not ibp_holds(fn, SCALING)
    assert ibp_defects(fn, SCALING) == (0, 1)
    assert ibp_holds(fn, SquareMatrix.zeros(2))


# -- exponentials and automorphisms -------------------------------------------

def test_exp_of_zero_is_identity():
    alg = quaternions()
    s = exp_automorphism(Derivation(alg, SquareMatrix.zeros(4)), Fraction(7, 3))
    assert s.s == SquareMatrix.identity(4)


def test_exp_matches_similarity():
    alg = matrix_algebra(2)
    a = alg.basis(1)                       # e12
    der = inner_derivation(alg, a)
    assert nilpotency_index(der.d) == 3
    S = exp_automorphism(der, 1)
    g = SquareMatrix.identity(2) + SquareMatrix.unit(2, 0, 1)     # e^{a}
    g_inv = g.inverse()
    rng = random.Random(3)
    for _ in range(10):
        A = rand_matrix(rng, 2)
        want = g_inv @ A @ g
        assert element_to_matrix(S.apply(matrix_to_element(alg, A))) == want


@given(st.fractions(min_value=-5, max_value=5, max_denominator=7),
       st.fractions(min_value=-5, max_value=5, max_denominator=7))
def test_exp_is_one_parameter_group(a, b):
    alg = matrix_algebra(2)
    d = inner_derivation(alg, alg.basis(1)).d
    assert exp_nilpotent(d, a) @ exp_nilpotent(d, b) == exp_nilpotent(d, a + b)


def test_scaling_rejected_as_non_nilpotent():
    alg = paragrassmann_tensor(1)
    with pytest.raises(NotNilpotentError):
        exp_automorphism(Derivation(alg, SCALING), 1)


def test_non_derivation_rejected():
    alg = paragrassmann_tensor(1)
    with pytest.raises(ValueError):
        exp_automorphism(Derivation(alg, SquareMatrix.identity(2)), 1)


def test_measure_invariance_examples():
    alg = matrix_algebra(2)
    fn = integral_functional(alg, matrix_c(2))
    assert measure_invariant(fn, SquareMatrix.identity(4))
    g = SquareMatrix.identity(2) + SquareMatrix.unit(2, 0, 1)
    g_inv = g.inverse()
    rows = [matrix_to_element(alg, g_inv @ element_to_matrix(alg.basis(i)) @ g).coeffs
            for i in range(4)]
    s = SquareMatrix(rows)
    assert measure_invariant(fn, Automorphism(alg, s))

    gfn = grassmann_fn()
    assert not measure_invariant(gfn, SquareMatrix([[1, 0], [0, 2]]))
    with pytest.raises(SingularMatrixError):
        measure_invariant(gfn, SquareMatrix([[1, 0], [0, 0]]))


# -- roundtrip ----------------------------------------------------------------

def test_sample_points():
    assert sample_points(2) == (1, 2, -1)
    assert sample_points(4) == (1, 2, -1, 3, -2)
    assert len(sample_points(6)) == 7


def test_roundtrip_inner_on_matrix3():
    rng = random.Random(33)
    alg = matrix_algebra(3)
    fn = integral_functional(alg, matrix_c(3))
    # a = e12 + e23 has nilpotent adjoint
    a = alg.element([0, 1, 0, 0, 0, 1, 0, 0, 0])
    rep = theorem_roundtrip(fn, inner_derivation(alg, a))
    assert rep.method == "nilpotent-exp" and rep.all_true and rep.is_proof
    # generic generators leave the exponentiated leg unevaluated
    rep = theorem_roundtrip(fn, inner_derivation(alg, rand_element(rng, alg)))
    assert rep.exponentiated is None and rep.ibp and rep.infinitesimal


def test_roundtrip_grassmann_scaling():
    rep = theorem_roundtrip(grassmann_fn(), SCALING)
    assert rep.method == "idempotent-group"
    assert rep.agree and rep.all_false


def test_roundtrip_zero():
    rep = theorem_roundtrip(grassmann_fn(), SquareMatrix.zeros(2))
    assert rep.all_true


def test_roundtrip_rejects_non_derivation():
    with pytest.raises(ValueError):
        theorem_roundtrip(grassmann_fn(), SquareMatrix.identity(2))


def theta_derivation(p, image):
    """Matrix of D with D theta = sum_m image[m] theta^m, extended by Leibniz."""
    rows = [[0] * (p + 1)]
    for k in range(1, p + 1):
        # D theta^k = k theta^{k-1} D theta
        row = [0] * (p + 1)
        for m, c in enumerate(image):
            if c and k - 1 + m <= p:
                row[k - 1 + m] += k * c
        rows.append(row)
    return SquareMatrix(rows)


@pytest.mark.parametrize("p", [2, 3, 4])
def test_roundtrip_outer_paragrassmann(p):
    alg = paragrassmann_tensor(p)
    fn = integral_functional(alg, antidiagonal_c(p))
    rng = random.Random(p)
    for der in derivation_space(alg):
        assert theorem_roundtrip(fn, der).agree
    for _ in range(10):
        image = [0, 0] + [rng.randint(-3, 3) for _ in range(p - 1)]
        d = theta_derivation(p, image)
        assert is_derivation(alg, d).ok
        rep = theorem_roundtrip(fn, d)
        assert rep.method == "nilpotent-exp" and rep.agree
        # integral of D theta^k = k image[p - k + 1], so ibp needs image = 0
        assert rep.ibp == (not any(image))
        assert rep.all_true or rep.all_false
