"""Symmetric intertwiners C with L_i = C R_i C^{-1}, and involution checks."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import Algebra, AlgebraElement, find_identity, multiply
from .linalg import (SingularMatrixError, SquareMatrix, linear_combination,
                     nullspace)

DEFAULT_SEED = 1998
MAX_ATTEMPTS = 64
COEFF_BOUND = 8


@dataclass(frozen=True)
class CMatrix:
    matrix: SquareMatrix
    inverse: SquareMatrix
    solution_space_rank: int = 0

    def __post_init__(self):
        n = self.matrix.dim
        if self.matrix @ self.inverse != SquareMatrix.identity(n, self.matrix.field):
            raise ValueError("cached inverse does not invert C")

    @classmethod
    def from_matrix(cls, m: SquareMatrix, rank: int = 0) -> "CMatrix":
        return cls(m, m.inverse(), rank)

    @property
    def dim(self) -> int:
        return self.matrix.dim


def as_cmatrix(c) -> CMatrix:
    if isinstance(c, CMatrix):
        return c
    return CMatrix.from_matrix(c)


def _sym_index(n):
    idx = {}
    for a in range(n):
        for b in range(a, n):
            idx[a, b] = len(idx)
    return idx


def solve_c_space(algebra: Algebra) -> list[SquareMatrix]:
    """Basis of {C : L_i C = C R_i for all i, C = C^T}.

    Unknowns are the upper triangle of C, so symmetry holds by construction.
    An empty list means only C = 0 solves the system.
    """
    n, F = algebra.dim, algebra.field
    idx = _sym_index(n)

    def var(a, b):
        return idx[(a, b) if a <= b else (b, a)]

    R, L = algebra.right_matrices, algebra.left_matrices
    rows = []
    for i in range(n):
        Ri, Li = R[i].rows, L[i].rows
        for j in range(n):
            for k in range(n):
                row = {}
                # (L_i C)_{jk} - (C R_i)_{jk}
                for m, x in enumerate(Li[j]):
                    if x:
                        v = var(m, k)
                        row[v] = row.get(v, 0) + x
                for m in range(n):
                    x = Ri[m][k]
                    if x:
                        v = var(j, m)
                        row[v] = row.get(v, 0) - x
                rows.append(row)
    basis = []
    for vec in nullspace(rows, len(idx), F):
        entries = [[None] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                entries[a][b] = vec[var(a, b)]
        basis.append(SquareMatrix(entries, F))
    return basis


def _normalise(c: SquareMatrix, identity: Optional[AlgebraElement]) -> SquareMatrix:
    """Scale C so the first nonzero entry of e^T C^{-1} is 1."""
    if identity is None:
        return c
    row = c.inverse().rapply(identity.coeffs)
    first = next((x for x in row if x), None)
    if first is None:
        return c
    return c.scale(first)


def pick_invertible_c(space: Sequence[SquareMatrix], seed: int = DEFAULT_SEED,
                      attempts: int = MAX_ATTEMPTS, bound: int = COEFF_BOUND,
                      identity: Optional[AlgebraElement] = None) -> Optional[CMatrix]:
    """Choose an invertible element of a solution space.

    Basis matrices are tried in order, then seeded random integer
    combinations with coefficients in [-bound, bound].  ``None`` after the
    attempt budget means no invertible C was found, not that none exists.
    With ``identity`` given, the result is scaled so the first nonzero
    integral value (C^{-1} contracted with the identity) equals 1.
    """
    space = list(space)
    if not space:
        return None
    n, F = space[0].dim, space[0].field
    rank = len(space)
    for m in space:
        if m.det():
            return CMatrix.from_matrix(_normalise(m, identity), rank)
    rng = random.Random(seed)
    for _ in range(attempts):
        coeffs = [rng.randint(-bound, bound) for _ in space]
        m = linear_combination([F.coerce(c) for c in coeffs], space, n, F)
        if m.det():
            return CMatrix.from_matrix(_normalise(m, identity), rank)
    return None


def find_c(algebra: Algebra, seed: int = DEFAULT_SEED) -> Optional[CMatrix]:
    """solve_c_space + pick_invertible_c with identity normalisation."""
    return pick_invertible_c(solve_c_space(algebra), seed=seed,
                             identity=find_identity(algebra))


@dataclass(frozen=True)
class SelfConjugationReport:
    symmetric: bool
    invertible: bool
    intertwining_violations: tuple[int, ...]
    dual_violations: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return (self.symmetric and self.invertible and not self.intertwining_violations
                and not self.dual_violations)

    def __bool__(self):
        return self.ok


def verify_self_conjugated(algebra: Algebra, c) -> SelfConjugationReport:
    """Check C = C^T, invertibility, L_i = C R_i C^{-1} and the opposite-algebra
    form L_i^D = C R_i^D C^{-1}, i.e. R_i^T = C L_i^T C^{-1}."""
    m = c.matrix if isinstance(c, CMatrix) else c
    if m.dim != algebra.dim:
        raise ValueError("C has the wrong dimension")
    symmetric = m.is_symmetric()
    try:
        inv = m.inverse()
    except SingularMatrixError:
        n = algebra.dim
        return SelfConjugationReport(symmetric, False, tuple(range(n)), tuple(range(n)))
    R, L = algebra.right_matrices, algebra.left_matrices
    # compare L_i C = C R_i to avoid an extra product
    bad = tuple(i for i in range(algebra.dim) if L[i] @ m != m @ R[i])
    bad_dual = tuple(i for i in range(algebra.dim) if m @ L[i].T @ inv != R[i].T)
    return SelfConjugationReport(symmetric, True, bad, bad_dual)


# ---------------------------------------------------------------------------
# involutions

@dataclass(frozen=True)
class InvolutionReport:
    cc_star_check: bool
    double_star_check: bool
    antihomomorphism_violations: tuple[tuple[int, int], ...]
    star_rep_check: bool
    unitary: bool
    symmetric: bool

    @property
    def is_involution(self) -> bool:
        return self.cc_star_check and not self.antihomomorphism_violations

    @property
    def theorem_applies(self) -> bool:
        return self.is_involution and self.star_rep_check

    @property
    def theorem_holds(self) -> Optional[bool]:
        """With an involution whose R, L are *-representations, C must be
        unitary and symmetric.  ``None`` when the hypothesis fails."""
        if not self.theorem_applies:
            return None
        return self.unitary and self.symmetric


def star(algebra: Algebra, c: SquareMatrix, a: AlgebraElement) -> AlgebraElement:
    """a* = sum_i conj(a_i) x_i*, with x_i* = x_j C_{ji}."""
    conj = algebra.field.conj
    return AlgebraElement(algebra, c.apply([conj(x) for x in a.coeffs]))


def involution_check(algebra: Algebra, c) -> InvolutionReport:
    m = c.matrix if isinstance(c, CMatrix) else c
    n, F = algebra.dim, algebra.field
    eye = SquareMatrix.identity(n, F)
    cc_star = m @ m.conj() == eye
    basis = [algebra.basis(i) for i in range(n)]
    stars = [star(algebra, m, b) for b in basis]
    double = all(star(algebra, m, s) == b for s, b in zip(stars, basis))
    anti = []
    for i, j in itertools.product(range(n), repeat=2):
        lhs = star(algebra, m, multiply(basis[i], basis[j]))
        if lhs != multiply(stars[j], stars[i]):
            anti.append((i, j))
    R = algebra.right_matrices
    star_rep = all(R[i].H == linear_combination(m.col(i), R, n, F) for i in range(n))
    return InvolutionReport(cc_star, double, tuple(anti), star_rep,
                            m @ m.H == eye, m.is_symmetric())
