"""Derivations, inner derivations, automorphisms and integration by parts.

A linear map D is stored as the matrix d with D x_i = d_ij x_j, so
row i of d holds the coordinates of D x_i.  With this convention the matrix
of a composite D1 D2 is d2 @ d1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from .algebra import Algebra, AlgebraElement, find_identity, multiply
from .integration import IntegralFunctional
from .linalg import (SingularMatrixError, SquareMatrix, flatten, linear_combination,
                     nullspace, span_rank, unflatten)


class NotNilpotentError(ArithmeticError):
    """exp(alpha d) was requested for a d with no vanishing power."""


@dataclass(frozen=True)
class Derivation:
    algebra: Algebra
    d: SquareMatrix
    kind: str = "general"
    generator: Optional[AlgebraElement] = None

    def apply(self, a: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self.algebra, self.d.rapply(a.coeffs))


@dataclass(frozen=True)
class Automorphism:
    algebra: Algebra
    s: SquareMatrix
    generator: Optional[Derivation] = None
    alpha: Optional[Fraction] = None

    def apply(self, a: AlgebraElement) -> AlgebraElement:
        return AlgebraElement(self.algebra, self.s.rapply(a.coeffs))


# ---------------------------------------------------------------------------
# derivation space

def derivation_space(algebra: Algebra) -> list[Derivation]:
    """Basis of all d with f_ijk d_kl = d_ik f_kjl + d_jk f_ikl."""
    n, F = algebra.dim, algebra.field
    f = algebra.f

    def var(a, b):
        return a * n + b

    rows = []
    for i, j, l in itertools.product(range(n), repeat=3):
        row = {}
        for k in range(n):
            x = f[i][j][k]
            if x:
                v = var(k, l)
                row[v] = row.get(v, 0) + x
            x = f[k][j][l]
            if x:
                v = var(i, k)
                row[v] = row.get(v, 0) - x
            x = f[i][k][l]
            if x:
                v = var(j, k)
                row[v] = row.get(v, 0) - x
        if row:
            rows.append(row)
    return [Derivation(algebra, unflatten(v, n, F)) for v in nullspace(rows, n * n, F)]


@dataclass(frozen=True)
class DerivationReport:
    leibniz_violations: tuple[tuple[int, int], ...]
    commutator_violations: tuple[int, ...]
    identity_row_zero: Optional[bool]

    @property
    def ok(self) -> bool:
        return (not self.leibniz_violations and not self.commutator_violations
                and self.identity_row_zero is not False)

    @property
    def consistent(self) -> bool:
        """The Leibniz and commutator forms agree."""
        return (not self.leibniz_violations) == (not self.commutator_violations)

    def __bool__(self):
        return self.ok


def _matrix(algebra, d):
    if isinstance(d, Derivation):
        return d.d
    if d.dim != algebra.dim:
        raise ValueError("derivation matrix has the wrong dimension")
    return d


def is_derivation(algebra: Algebra, d) -> DerivationReport:
    """Check f_ijk d_kl = d_ik f_kjl + d_jk f_ikl and [R_i, d] = R_{D x_i}."""
    d = _matrix(algebra, d)
    n, F = algebra.dim, algebra.field
    f = algebra.f
    zero = F.zero()
    rows = [{l: x for l, x in enumerate(r) if x} for r in d.rows]
    by_left, by_right = algebra.nonzero_slices
    leib = []
    for i, j in itertools.product(range(n), repeat=2):
        acc = {}
        # D(x_i x_j)
        for k, x in enumerate(f[i][j]):
            if x:
                for l, y in rows[k].items():
                    acc[l] = acc.get(l, zero) + x * y
        # (D x_i) x_j
        for k, l, x in by_right[j]:
            y = rows[i].get(k)
            if y:
                acc[l] = acc.get(l, zero) - y * x
        # x_i (D x_j)
        for k, l, x in by_left[i]:
            y = rows[j].get(k)
            if y:
                acc[l] = acc.get(l, zero) - y * x
        if any(acc.values()):
            leib.append((i, j))
    R = algebra.right_matrices
    comm = tuple(i for i in range(n)
                 if R[i].commutator(d) != linear_combination(d.row(i), R, n, F))
    e = find_identity(algebra)
    ident = None if e is None else not any(d.rapply(e.coeffs))
    return DerivationReport(tuple(leib), comm, ident)


def inner_derivation(algebra: Algebra, a: AlgebraElement, check: bool = True) -> Derivation:
    """D x = x a - a x, with matrix R_a - L_a^T.

    ``check=False`` skips the Leibniz audit for callers that run it themselves.
    """
    d = algebra.right_matrix(a) - algebra.left_matrix(a).T
    out = Derivation(algebra, d, "inner", a)
    if check and not is_derivation(algebra, d).ok:
        raise ArithmeticError("inner derivation fails the Leibniz rule; is the algebra associative?")
    return out


@dataclass(frozen=True)
class DerivationClassification:
    derivations: tuple[Derivation, ...]
    inner_rank: int
    total_rank: int
    inner_contained: bool

    @property
    def outer_rank(self) -> int:
        return self.total_rank - self.inner_rank


def classify_derivations(algebra: Algebra) -> DerivationClassification:
    """Derivation space together with the rank of its inner part."""
    n, F = algebra.dim, algebra.field
    space = derivation_space(algebra)
    inner = [flatten(algebra.right_matrices[i] - algebra.left_matrices[i].T) for i in range(n)]
    total = [flatten(d.d) for d in space]
    r_inner = span_rank(inner, n * n, F)
    r_total = len(space)
    contained = span_rank(total + inner, n * n, F) == r_total
    return DerivationClassification(tuple(space), r_inner, r_total, contained)


# ---------------------------------------------------------------------------
# integration by parts and automorphisms

def ibp_holds(fn: IntegralFunctional, d) -> bool:
    """True iff the integral of D x_i vanishes for every i, i.e. d . values = 0."""
    d = _matrix(fn.algebra, d)
    return not any(d.apply(fn.values))


def ibp_defects(fn: IntegralFunctional, d) -> tuple:
    """The integrals of D x_i."""
    return _matrix(fn.algebra, d).apply(fn.values)


def nilpotency_index(d: SquareMatrix) -> Optional[int]:
    """Smallest m with d^m = 0, or None."""
    p = SquareMatrix.identity(d.dim, d.field)
    for m in range(1, d.dim + 1):
        p = p @ d
        if p.is_zero():
            return m
    return None


def _stable_power(d: SquareMatrix) -> int:
    """Smallest k with rank(d^k) = rank(d^{k+1}); d^k is then nonzero forever."""
    p = d
    r = p.rank()
    k = 1
    while True:
        q = p @ d
        rq = q.rank()
        if rq == r:
            return k
        p, r, k = q, rq, k + 1


def exp_nilpotent(d: SquareMatrix, alpha) -> SquareMatrix:
    m = nilpotency_index(d)
    if m is None:
        raise NotNilpotentError(
            f"d is not nilpotent: rank of d^k stabilises above zero from k = {_stable_power(d)}")
    F = d.field
    alpha = F.coerce(alpha)
    ad = d.scale(alpha)
    term = SquareMatrix.identity(d.dim, F)
    s = term
    for k in range(1, m):
        term = (term @ ad).scale(Fraction(1, k))
        s = s + term
    return s


def automorphism_violations(algebra: Algebra, s: SquareMatrix) -> tuple[tuple[int, int], ...]:
    """Pairs (i, j) where S(x_i x_j) != S(x_i) S(x_j)."""
    n = algebra.dim
    images = [AlgebraElement(algebra, s.row(i)) for i in range(n)]
    bad = []
    for i, j in itertools.product(range(n), repeat=2):
        lhs = AlgebraElement(algebra, s.rapply(algebra.f[i][j]))
        if lhs != multiply(images[i], images[j]):
            bad.append((i, j))
    return tuple(bad)


def exp_automorphism(der: Derivation, alpha) -> Automorphism:
    """S = exp(alpha D), exact for nilpotent d."""
    alg = der.algebra
    if not is_derivation(alg, der.d).ok:
        raise ValueError("generator is not a derivation")
    s = exp_nilpotent(der.d, alpha)
    if automorphism_violations(alg, s):
        raise ArithmeticError("exp(alpha D) failed the product rule")
    return Automorphism(alg, s, der, alg.field.coerce(alpha))


def measure_invariant(fn: IntegralFunctional, s) -> bool:
    """C^{-1} s^T C == s^{-1}."""
    s = s.s if isinstance(s, Automorphism) else s
    try:
        s_inv = s.inverse()
    except SingularMatrixError:
        raise SingularMatrixError("automorphism matrix is singular") from None
    C, Cinv = fn.c.matrix, fn.c.inverse
    return Cinv @ s.T @ C == s_inv


def infinitesimal_invariance(fn: IntegralFunctional, d) -> bool:
    """d + C^{-1} d^T C == 0."""
    d = _matrix(fn.algebra, d)
    return (d + fn.c.inverse @ d.T @ fn.c.matrix).is_zero()


# ---------------------------------------------------------------------------
# the theorem: IBP <=> infinitesimal invariance <=> invariance of exp(alpha D)

BASE_ALPHAS = (Fraction(1), Fraction(2), Fraction(-1))
# exp(alpha d) for idempotent d is I + (lambda - 1) d with lambda = e^alpha;
# rational lambdas stand in for the exponentials
BASE_LAMBDAS = (Fraction(2), Fraction(3), Fraction(1, 2))


def sample_points(degree: int, base=BASE_ALPHAS) -> tuple[Fraction, ...]:
    """``base`` extended with 3, -2, 4, -3, ... to at least degree + 1 points."""
    pts = list(base)
    k = 3
    while len(pts) < degree + 1:
        for cand in (Fraction(k), Fraction(-(k - 1))):
            if cand not in pts and len(pts) < degree + 1:
                pts.append(cand)
        k += 1
    return tuple(pts)


@dataclass(frozen=True)
class RoundtripReport:
    ibp: bool
    infinitesimal: bool
    exponentiated: Optional[bool]
    method: str
    parameters: tuple
    degree_bound: Optional[int]
    per_parameter: tuple[bool, ...] = ()

    @property
    def legs(self) -> tuple:
        return (self.ibp, self.infinitesimal, self.exponentiated)

    @property
    def agree(self) -> bool:
        vals = [v for v in self.legs if v is not None]
        return all(v == vals[0] for v in vals)

    @property
    def all_true(self) -> bool:
        return all(v is True for v in self.legs)

    @property
    def all_false(self) -> bool:
        return all(v is False for v in self.legs)

    @property
    def is_proof(self) -> bool:
        """The sampled parameters pin a polynomial identity of this degree."""
        return self.degree_bound is not None and len(self.parameters) >= self.degree_bound + 1


def theorem_roundtrip(fn: IntegralFunctional, der) -> RoundtripReport:
    """Evaluate the three equivalent conditions for a derivation.

    Nilpotent d: s(alpha) = exp(alpha d) at alpha in {1, 2, -1}, extended
    until there are more sample points than the degree of the polynomial
    identity C^{-1} s(alpha)^T C = s(-alpha) in alpha.  Idempotent d
    (d^2 = d): s = I + (lambda - 1) d at rational lambda.  Anything else
    leaves the exponentiated leg unevaluated (``None``).
    """
    alg = fn.algebra
    d = _matrix(alg, der)
    if not is_derivation(alg, d).ok:
        raise ValueError("not a derivation")
    ibp = ibp_holds(fn, d)
    inf = infinitesimal_invariance(fn, d)
    m = nilpotency_index(d)
    eye = SquareMatrix.identity(d.dim, d.field)
    if m is not None:
        # entries of exp(alpha d) have degree <= m - 1 in alpha
        degree = m - 1
        params = sample_points(degree)
        per = []
        for a in params:
            s = exp_nilpotent(d, a)
            if automorphism_violations(alg, s):
                raise ArithmeticError("exp(alpha D) failed the product rule")
            per.append(measure_invariant(fn, s))
        return RoundtripReport(ibp, inf, all(per), "nilpotent-exp", params, degree, tuple(per))
    if d @ d == d:
        # one-parameter group I + (lambda - 1) d; C^{-1} s^T C s is affine in
        # lambda and 1/lambda, so three distinct lambdas decide it
        params = BASE_LAMBDAS
        per = []
        for lam in params:
            s = eye + d.scale(lam - 1)
            if automorphism_violations(alg, s):
                raise ArithmeticError("I + (lambda - 1) d failed the product rule")
            per.append(measure_invariant(fn, s))
        return RoundtripReport(ibp, inf, all(per), "idempotent-group", params, 2, tuple(per))
    return RoundtripReport(ibp, inf, None, "not-evaluated", (), None)


def check_lie_closure(algebra: Algebra, elements: Sequence[AlgebraElement]) -> bool:
    """[R_a + L_b^T, R_c + L_d^T] stays in span{R_x + L_y^T} for the given elements."""
    n, F = algebra.dim, algebra.field
    span = [flatten(m) for m in algebra.right_matrices] + \
           [flatten(m.T) for m in algebra.left_matrices]
    base = span_rank(span, n * n, F)
    gens = []
    for a, b in zip(elements[::2], elements[1::2]):
        gens.append(algebra.right_matrix(a) + algebra.left_matrix(b).T)
    for g1, g2 in itertools.combinations(gens, 2):
        if span_rank(span + [flatten(g1.commutator(g2))], n * n, F) != base:
            return False
    return True
