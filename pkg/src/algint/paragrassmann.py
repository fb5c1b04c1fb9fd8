"""Paragrassmann algebras G_p inside (p+1) x (p+1) matrices.

Matrices here are 0-based.  The single-entry matrix written e^{(a,b)} with
1-based a, b in the usual notation is ``unit(a - 1, b - 1)``; that shift is
done only in :func:`e`.  Coefficient vectors of elements of G_p are always
in powers of theta: ``coeffs[k]`` multiplies theta^k.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import Algebra, AlgebraElement, AlgebraError, multiply
from .catalog import antidiagonal_c, paragrassmann_tensor
from .integration import integral_functional, integrate
from .linalg import SquareMatrix
from .scalars import RATIONAL, Scalar


@dataclass(frozen=True)
class ParagrassmannAlgebra:
    p: int
    algebra: Algebra

    def theta_power(self, k: int) -> AlgebraElement:
        if k > self.p:
            return self.algebra.zero()
        return self.algebra.basis(k)


def paragrassmann_algebra(p: int) -> ParagrassmannAlgebra:
    if p < 1:
        raise AlgebraError("paragrassmann order must be >= 1")
    return ParagrassmannAlgebra(p, paragrassmann_tensor(p))


def e(size: int, a: int, b: int) -> SquareMatrix:
    """e^{(a,b)} with 1-based a, b."""
    if not (1 <= a <= size and 1 <= b <= size):
        raise IndexError(f"e^({a},{b}) outside a {size}x{size} matrix")
    return SquareMatrix.unit(size, a - 1, b - 1, RATIONAL)


def embed(p: int) -> SquareMatrix:
    """X_theta = sum_{i=1}^p e^{(i,i+1)}, the superdiagonal shift (= R_1)."""
    if p < 1:
        raise AlgebraError("paragrassmann order must be >= 1")
    size = p + 1
    x = SquareMatrix.from_entries(size, {(i, i + 1): 1 for i in range(p)})
    for k in range(1, p + 2):
        want = SquareMatrix.from_entries(size, {(i, i + k): 1 for i in range(size - k)})
        if x ** k != want:
            raise ArithmeticError(f"X_theta^{k} is not the k-th superdiagonal")
    return x


def f_of_x(p: int, coeffs: Sequence) -> SquareMatrix:
    """f(X_theta) for f = sum_k coeffs[k] theta^k."""
    if len(coeffs) != p + 1:
        raise ValueError(f"need {p + 1} coefficients, got {len(coeffs)}")
    size = p + 1
    return SquareMatrix.from_entries(
        size, {(i, i + k): c for k, c in enumerate(coeffs) for i in range(size - k) if c})


def embed_element(a: AlgebraElement, p: int) -> SquareMatrix:
    return f_of_x(p, a.coeffs)


@dataclass(frozen=True)
class MatrixDecomposition:
    """B = f(X_theta) + b_tilde, with ``coeffs[k]`` the theta^k coefficient.

    coeffs[k] is the entry b_{p+1-k, p+1} of B's last column (1-based).
    """
    p: int
    coeffs: tuple
    b_tilde: SquareMatrix

    @property
    def f_matrix(self) -> SquareMatrix:
        return f_of_x(self.p, self.coeffs)


def decompose(p: int, B: SquareMatrix) -> MatrixDecomposition:
    size = p + 1
    if B.dim != size:
        raise ValueError(f"expected a {size}x{size} matrix, got {B.dim}x{B.dim}")
    coeffs = tuple(B[p - k, p] for k in range(size))
    fx = f_of_x(p, coeffs)
    bt = B - fx
    out = MatrixDecomposition(p, coeffs, bt)
    if fx + bt != B:
        raise ArithmeticError("decomposition does not reconstruct B")
    if any(bt[i, p] for i in range(size)):
        raise ArithmeticError("b_tilde has a nonzero last column")
    for k in range(1, size + 1):
        if not (bt @ e(size, size, k)).is_zero():
            raise ArithmeticError(f"b_tilde e^({size},{k}) != 0")
    return out


def projector(p: int, k: int = 1) -> SquareMatrix:
    """P = e^{(p+1,k)}; k = 1 is the plain integral."""
    size = p + 1
    if not 1 <= k <= size:
        raise ValueError(f"projector index k must lie in 1..{size}")
    return e(size, size, k)


def trace_integral(p: int, coeffs: Sequence, shift: int = 1) -> Scalar:
    """Tr[f(X_theta) e^{(p+1,shift)}]."""
    coeffs = [RATIONAL.coerce(c) for c in coeffs]
    return (f_of_x(p, coeffs) @ projector(p, shift)).trace()


def direct_integral(p: int, coeffs: Sequence, shift: int = 1) -> Scalar:
    """Coefficient of theta^p in theta^{shift-1} f(theta)."""
    if len(coeffs) != p + 1:
        raise ValueError(f"need {p + 1} coefficients, got {len(coeffs)}")
    k = p - (shift - 1)
    return RATIONAL.coerce(coeffs[k]) if k >= 0 else RATIONAL.zero()


def homomorphism_violations(p: int) -> list[tuple[int, int]]:
    """Pairs (k, l) where X^k X^l differs from the image of theta^k theta^l."""
    g = paragrassmann_algebra(p)
    x = embed(p)
    bad = []
    for k in range(p + 1):
        for l in range(p + 1):
            prod = multiply(g.theta_power(k), g.theta_power(l))
            if embed_element(prod, p) != x ** k @ x ** l:
                bad.append((k, l))
    return bad


@dataclass(frozen=True)
class EquivalenceReport:
    p: int
    monomial_mismatches: tuple[int, ...]
    random_mismatches: int
    samples: int
    scale: Scalar

    @property
    def ok(self) -> bool:
        return not self.monomial_mismatches and not self.random_mismatches

    @property
    def normalization_dependent(self) -> bool:
        """The direct integral is a nontrivial multiple of the trace one."""
        return self.scale != 1

    def __bool__(self):
        return self.ok


def equivalence_check(p: int, c: Optional[SquareMatrix] = None, samples: int = 50,
                      seed: int = 0, bound: int = 9) -> EquivalenceReport:
    """Compare the projector trace with the C-matrix integral on G_p.

    ``c`` defaults to the anti-diagonal C.  ``scale`` is the ratio of the
    direct integral of theta^p to the trace integral of theta^p.
    """
    g = paragrassmann_algebra(p)
    c = antidiagonal_c(p) if c is None else c
    fn = integral_functional(g.algebra, c)
    size = p + 1
    mono = []
    for k in range(size):
        coeffs = [1 if j == k else 0 for j in range(size)]
        if trace_integral(p, coeffs) != integrate(fn, g.algebra.element(coeffs)):
            mono.append(k)
    rng = random.Random(seed)
    bad = 0
    for _ in range(samples):
        coeffs = [Fraction(rng.randint(-bound, bound), rng.randint(1, bound)) for _ in range(size)]
        if trace_integral(p, coeffs) != integrate(fn, g.algebra.element(coeffs)):
            bad += 1
    top = [0] * p + [1]
    scale = integrate(fn, g.algebra.element(top)) / trace_integral(p, top)
    return EquivalenceReport(p, tuple(mono), bad, samples, scale)
