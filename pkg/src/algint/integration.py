"""The integral defined by a C matrix, its completeness relation and the
scalar product it induces."""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

from .algebra import Algebra, AlgebraElement, AlgebraError, find_identity, multiply
from .conjugation import CMatrix, as_cmatrix
from .linalg import SquareMatrix
from .scalars import Scalar


class CompletenessError(ArithmeticError):
    """The candidate integral does not satisfy f_ikp C_kj I_p = delta_ij."""


class ScalarProductMismatch(UserWarning):
    pass


@dataclass(frozen=True)
class IntegralFunctional:
    """values[j] is the integral of basis element j.

    With the identity at basis index 0 these are the entries (C^{-1})_{0j};
    for an identity e = sum_i e_i x_i elsewhere they are sum_i e_i (C^{-1})_{ij},
    which is the same row after moving e to index 0.
    """
    algebra: Algebra
    c: CMatrix
    values: tuple
    identity: AlgebraElement

    def __call__(self, f: AlgebraElement) -> Scalar:
        return integrate(self, f)


def _product_integrals(algebra: Algebra, values) -> list[list]:
    """P[i][k] = integral of x_i x_k = sum_p f_ikp values[p]."""
    n, zero = algebra.dim, algebra.field.zero()
    out = []
    for i in range(n):
        row = []
        for k in range(n):
            row.append(sum((x * v for x, v in zip(algebra.f[i][k], values) if x and v), zero))
        out.append(row)
    return out


def integral_functional(algebra: Algebra, c, strict: bool = True,
                        identity: Optional[AlgebraElement] = None) -> IntegralFunctional:
    """Integral values from C, checked against the completeness relation.

    Raises :class:`CompletenessError` when ``strict`` and the relation fails.
    """
    c = as_cmatrix(c)
    if c.dim != algebra.dim:
        raise AlgebraError("C has the wrong dimension")
    if identity is None:
        identity = find_identity(algebra)
    if identity is None:
        raise AlgebraError("integration needs an algebra with identity")
    values = c.inverse.rapply(identity.coeffs)
    fn = IntegralFunctional(algebra, c, values, identity)
    if strict:
        report = verify_completeness(fn)
        if not report.right_ok:
            raise CompletenessError(
                f"completeness fails at cells {list(report.right_violations)[:8]}")
    return fn


def integrate(fn: IntegralFunctional, f: AlgebraElement) -> Scalar:
    if f.algebra is not fn.algebra and f.algebra != fn.algebra:
        raise AlgebraError("element is not from the functional's algebra")
    zero = fn.algebra.field.zero()
    return sum((a * v for a, v in zip(f.coeffs, fn.values) if a and v), zero)


@dataclass(frozen=True)
class CompletenessReport:
    right_violations: tuple[tuple[int, int], ...]
    left_violations: tuple[tuple[int, int], ...]

    @property
    def right_ok(self) -> bool:
        return not self.right_violations

    @property
    def ok(self) -> bool:
        return not self.right_violations and not self.left_violations

    def __bool__(self):
        return self.ok


def verify_completeness(fn: IntegralFunctional) -> CompletenessReport:
    """Check both integral |x><xC| = 1 and integral |xC><x| = 1 cell by cell."""
    alg, C = fn.algebra, fn.c.matrix
    n, F = alg.dim, alg.field
    P = SquareMatrix(_product_integrals(alg, fn.values), F)
    one = F.one()
    right = P @ C            # sum_k int(x_i x_k) C_kj
    left = C.T @ P           # sum_k C_ki int(x_k x_j)
    rv, lv = [], []
    for i in range(n):
        for j in range(n):
            want = one if i == j else 0
            if right[i, j] != want:
                rv.append((i, j))
            if left[i, j] != want:
                lv.append((i, j))
    return CompletenessReport(tuple(rv), tuple(lv))


def conjugate(fn: IntegralFunctional, f: AlgebraElement) -> AlgebraElement:
    """f* = sum_ij conj(f_i) x_j C_ji."""
    conj = fn.algebra.field.conj
    return AlgebraElement(fn.algebra, fn.c.matrix.apply([conj(x) for x in f.coeffs]))


def scalar_product(fn: IntegralFunctional, f: AlgebraElement, g: AlgebraElement) -> Scalar:
    """<f|g> as the integral of f* g, cross-checked against sum conj(f_i) g_i.

    A disagreement is reported with :class:`ScalarProductMismatch` and the
    integral form is returned.
    """
    conj = fn.algebra.field.conj
    via_integral = integrate(fn, multiply(conjugate(fn, f), g))
    direct = sum((conj(a) * b for a, b in zip(f.coeffs, g.coeffs)), fn.algebra.field.zero())
    if via_integral != direct:
        fmt = fn.algebra.field.format
        warnings.warn(f"scalar product forms disagree: integral {fmt(via_integral)} "
                      f"vs coefficient sum {fmt(direct)}", ScalarProductMismatch, stacklevel=2)
    return via_integral


def trace_integral_matrix_algebra(N: int, A: SquareMatrix) -> Scalar:
    """Integral over A_N of a matrix, which is its trace."""
    if A.dim != N:
        raise ValueError(f"expected a {N}x{N} matrix, got {A.dim}x{A.dim}")
    return A.trace()
