"""Finite-dimensional algebras given by structure constants.

A basis ``x_0 .. x_{dim-1}`` multiplies as ``x_i x_j = sum_k f[i][j][k] x_k``.
Right and left multiplication matrices follow ``(R_i)_{jk} = f_{jik}`` and
``(L_i)_{jk} = f_{ikj}``, so that ``R_i |x> = |x> x_i`` and
``<x| L_i = x_i <x|``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field, replace
from functools import cached_property
from typing import Mapping, Optional, Sequence

from .linalg import (InconsistentSystemError, SquareMatrix, linear_combination,
                     solve_linear)
from .scalars import Field, FieldError, Scalar, field_of


class AlgebraError(ValueError):
    """Malformed algebra data or elements from different algebras."""


Tensor = tuple  # tuple[tuple[tuple[Scalar, ...], ...], ...]


@dataclass(frozen=True)
class Algebra:
    dim: int
    field: Field
    f: Tensor
    identity_index: Optional[int] = None
    labels: Optional[tuple[str, ...]] = None
    name: str = dc_field(default="", compare=False)

    def __post_init__(self):
        n = self.dim
        if n < 0:
            raise AlgebraError("dimension must be non-negative")
        if len(self.f) != n or any(len(a) != n for a in self.f) or \
                any(len(b) != n for a in self.f for b in a):
            raise AlgebraError(f"structure constants must have shape {n}x{n}x{n}")
        for a in self.f:
            for b in a:
                for x in b:
                    if not self.field.contains(x):
                        raise AlgebraError(f"entry {x!r} is not in field {self.field.name}")
        if self.labels is not None and len(self.labels) != n:
            raise AlgebraError("labels must have one entry per basis element")
        e = self.identity_index
        if e is not None:
            if not 0 <= e < n:
                raise AlgebraError("identity index out of range")
            for j in range(n):
                for k in range(n):
                    want = 1 if j == k else 0
                    if self.f[e][j][k] != want or self.f[j][e][k] != want:
                        raise AlgebraError(f"basis element {e} is not a two-sided identity")

    def __repr__(self):
        tag = self.name or "Algebra"
        return f"<{tag} dim={self.dim} field={self.field.name}>"

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"x{i}"

    # -- elements --------------------------------------------------------

    def element(self, coeffs: Sequence) -> "AlgebraElement":
        return AlgebraElement(self, tuple(self.field.coerce(c) for c in coeffs))

    def basis(self, i: int) -> "AlgebraElement":
        one, zero = self.field.one(), self.field.zero()
        return AlgebraElement(self, tuple(one if j == i else zero for j in range(self.dim)))

    def zero(self) -> "AlgebraElement":
        return AlgebraElement(self, (self.field.zero(),) * self.dim)

    # -- regular representations ----------------------------------------

    @cached_property
    def right_matrices(self) -> tuple[SquareMatrix, ...]:
        n, f = self.dim, self.f
        return tuple(SquareMatrix._raw(tuple(tuple(f[j][i][k] for k in range(n))
                                             for j in range(n)), self.field)
                     for i in range(n))

    @cached_property
    def nonzero_slices(self) -> tuple[tuple, tuple]:
        """(by_left, by_right): by_left[i] = ((j, k, f_ijk), ...) and
        by_right[j] = ((i, k, f_ijk), ...) over the nonzero constants."""
        n, f = self.dim, self.f
        by_left = [[] for _ in range(n)]
        by_right = [[] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                for k, x in enumerate(f[i][j]):
                    if x:
                        by_left[i].append((j, k, x))
                        by_right[j].append((i, k, x))
        return tuple(map(tuple, by_left)), tuple(map(tuple, by_right))

    @cached_property
    def _identity(self) -> Optional["AlgebraElement"]:
        return _solve_identity(self)

    @cached_property
    def left_matrices(self) -> tuple[SquareMatrix, ...]:
        n, f = self.dim, self.f
        return tuple(SquareMatrix._raw(tuple(tuple(f[i][k][j] for k in range(n))
                                             for j in range(n)), self.field)
                     for i in range(n))

    def right_matrix(self, a: "AlgebraElement") -> SquareMatrix:
        """R_a = sum_i a_i R_i."""
        return linear_combination(a.coeffs, self.right_matrices, self.dim, self.field)

    def left_matrix(self, a: "AlgebraElement") -> SquareMatrix:
        return linear_combination(a.coeffs, self.left_matrices, self.dim, self.field)

    def opposite(self) -> "Algebra":
        """The opposite algebra, x_i^D x_j^D = f_{jik} x_k^D."""
        n = self.dim
        f = tuple(tuple(self.f[j][i] for j in range(n)) for i in range(n))
        return Algebra(n, self.field, f, self.identity_index, self.labels,
                       name=f"{self.name}^op" if self.name else "")


@dataclass(frozen=True)
class AlgebraElement:
    algebra: Algebra
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.algebra.dim:
            raise AlgebraError("coefficient vector length must equal the algebra dimension")

    def _same(self, other: "AlgebraElement"):
        if not isinstance(other, AlgebraElement):
            raise TypeError(f"expected an AlgebraElement, got {type(other).__name__}")
        if other.algebra is not self.algebra and other.algebra != self.algebra:
            raise AlgebraError("elements belong to different algebras")

    def __add__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._same(other)
        return AlgebraElement(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return AlgebraElement(self.algebra, tuple(-a for a in self.coeffs))

    def scale(self, c) -> "AlgebraElement":
        c = self.algebra.field.coerce(c)
        return AlgebraElement(self.algebra, tuple(c * a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.coeffs == other.coeffs and (
            self.algebra is other.algebra or self.algebra == other.algebra)

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __repr__(self):
        fmt = self.algebra.field.format
        terms = [f"{fmt(c)}*{self.algebra.label(i)}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# construction

def _dense_tensor(dim, field, structure_constants):
    zero = field.zero()
    if isinstance(structure_constants, Mapping):
        t = [[[zero] * dim for _ in range(dim)] for _ in range(dim)]
        for key, v in structure_constants.items():
            i, j, k = key
            if not all(0 <= x < dim for x in (i, j, k)):
                raise AlgebraError(f"index {key} out of range for dim {dim}")
            t[i][j][k] = field.coerce(v)
        return tuple(tuple(tuple(b) for b in a) for a in t)
    sc = list(structure_constants)
    if len(sc) != dim or any(len(a) != dim for a in sc) or \
            any(len(b) != dim for a in sc for b in a):
        raise AlgebraError(f"structure constants must have shape {dim}x{dim}x{dim}")
    return tuple(tuple(tuple(field.coerce(x) for x in b) for b in a) for a in sc)


def new_algebra(dim: int, field, structure_constants, labels=None, name: str = "") -> Algebra:
    """Build and validate an algebra.

    ``structure_constants`` is either a dense nested ``dim x dim x dim``
    sequence or a sparse mapping ``{(i, j, k): value}``.  Values may be
    ints, Fractions, field elements or scalar strings.  The identity index is
    left unset; see :func:`find_identity`.
    """
    field = field_of(field)
    if not isinstance(dim, int) or dim < 0:
        raise AlgebraError("dimension must be a non-negative integer")
    try:
        f = _dense_tensor(dim, field, structure_constants)
    except FieldError as exc:
        raise AlgebraError(str(exc)) from exc
    return Algebra(dim, field, f, None, tuple(labels) if labels is not None else None, name)


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    a._same(b)
    alg = a.algebra
    zero = alg.field.zero()
    out = [zero] * alg.dim
    by_left = alg.nonzero_slices[0]
    bc = b.coeffs
    for i, ai in enumerate(a.coeffs):
        if not ai:
            continue
        for j, k, x in by_left[i]:
            bj = bc[j]
            if bj:
                out[k] = out[k] + ai * bj * x
    return AlgebraElement(alg, tuple(out))


@dataclass(frozen=True)
class RegularRepresentation:
    right: tuple[SquareMatrix, ...]
    left: tuple[SquareMatrix, ...]

    @property
    def right_dual(self) -> tuple[SquareMatrix, ...]:
        """R_i^D = L_i^T, right multiplications of the opposite algebra."""
        return tuple(m.T for m in self.left)

    @property
    def left_dual(self) -> tuple[SquareMatrix, ...]:
        """L_i^D = R_i^T."""
        return tuple(m.T for m in self.right)


def regular_reps(algebra: Algebra) -> RegularRepresentation:
    return RegularRepresentation(algebra.right_matrices, algebra.left_matrices)


# ---------------------------------------------------------------------------
# associativity

@dataclass(frozen=True)
class AssociativityReport:
    right_violations: tuple[tuple[int, int], ...]
    left_violations: tuple[tuple[int, int], ...]
    commutation_violations: tuple[tuple[int, int], ...]
    triple_violations: tuple[tuple[int, int, int], ...]

    @property
    def associative(self) -> bool:
        return not (self.right_violations or self.left_violations
                    or self.commutation_violations or self.triple_violations)

    @property
    def consistent(self) -> bool:
        """The matrix relations and the element-level scan agree."""
        matrix_ok = not (self.right_violations or self.left_violations
                         or self.commutation_violations)
        return matrix_ok == (not self.triple_violations)

    def __bool__(self):
        return self.associative


def is_associative(algebra: Algebra) -> AssociativityReport:
    """Check R_iR_j = f_ijk R_k, L_iL_j = f_ijk L_k, [R_i, L_j^T] = 0 and
    x_i(x_j x_k) = (x_i x_j) x_k on every triple."""
    n, F = algebra.dim, algebra.field
    R, L = algebra.right_matrices, algebra.left_matrices
    LT = [m.T for m in L]
    rv, lv, cv, tv = [], [], [], []
    for i, j in itertools.product(range(n), repeat=2):
        fij = algebra.f[i][j]
        if R[i] @ R[j] != linear_combination(fij, R, n, F):
            rv.append((i, j))
        if L[i] @ L[j] != linear_combination(fij, L, n, F):
            lv.append((i, j))
        if not R[i].commutator(LT[j]).is_zero():
            cv.append((i, j))
    basis = [algebra.basis(i) for i in range(n)]
    prods = {(i, j): multiply(basis[i], basis[j]) for i in range(n) for j in range(n)}
    for i, j, k in itertools.product(range(n), repeat=3):
        if multiply(basis[i], prods[j, k]) != multiply(prods[i, j], basis[k]):
            tv.append((i, j, k))
    return AssociativityReport(tuple(rv), tuple(lv), tuple(cv), tuple(tv))


# ---------------------------------------------------------------------------
# identity

def find_identity(algebra: Algebra) -> Optional[AlgebraElement]:
    """Solve e x_j = x_j = x_j e for all j.

    Returns the identity element (unique when it exists) or ``None``.  Does
    not assume the identity is a basis element.  Cached per algebra.
    """
    return algebra._identity


def _solve_identity(algebra: Algebra) -> Optional[AlgebraElement]:
    n, F = algebra.dim, algebra.field
    if n == 0:
        return None
    rows = []
    one = F.one()
    for j in range(n):
        for k in range(n):
            left = {i: algebra.f[i][j][k] for i in range(n) if algebra.f[i][j][k]}
            right = {i: algebra.f[j][i][k] for i in range(n) if algebra.f[j][i][k]}
            rhs = one if j == k else 0
            rows.append((left, rhs))
            rows.append((right, rhs))
    try:
        e, _kernel = solve_linear(rows, n, F)
    except InconsistentSystemError:
        return None
    # an identity is unique when it exists, so the kernel is trivial
    return AlgebraElement(algebra, e)


def identity_basis_index(algebra: Algebra) -> Optional[int]:
    e = find_identity(algebra)
    if e is None:
        return None
    nz = [i for i, c in enumerate(e.coeffs) if c]
    if len(nz) == 1 and e.coeffs[nz[0]] == 1:
        return nz[0]
    return None


def with_identity_index(algebra: Algebra) -> Algebra:
    """Same algebra with ``identity_index`` filled in when the identity is a
    basis element."""
    idx = identity_basis_index(algebra)
    if idx == algebra.identity_index:
        return algebra
    return replace(algebra, identity_index=idx)


# ---------------------------------------------------------------------------
# unitalization and basis changes

def unitalize(algebra: Algebra) -> Algebra:
    """Adjoin an identity: (a, x)(b, y) = (ab, a y + b x + x y).

    The new identity is basis index 0; old basis element i becomes i + 1.
    """
    n, F = algebra.dim, algebra.field
    m = n + 1
    sc = {(0, 0, 0): 1}
    for i in range(n):
        sc[0, i + 1, i + 1] = 1
        sc[i + 1, 0, i + 1] = 1
        for j in range(n):
            for k in range(n):
                x = algebra.f[i][j][k]
                if x:
                    sc[i + 1, j + 1, k + 1] = x
    labels = None
    if algebra.labels is not None:
        labels = ("1",) + tuple(algebra.labels)
    out = new_algebra(m, F, sc, labels,
                      name=f"{algebra.name}+1" if algebra.name else "")
    return replace(out, identity_index=0)


def change_basis(algebra: Algebra, T: SquareMatrix) -> Algebra:
    """Rewrite the algebra in the basis y_a = sum_i T[a][i] x_i.

    Coordinates transform as a' = T^{-T} a.
    """
    n, F = algebra.dim, algebra.field
    Tinv = T.inverse()
    zero = F.zero()
    # g[i][j][c] = sum_k f[i][j][k] Tinv[k][c]
    g = [[Tinv.rapply(algebra.f[i][j]) for j in range(n)] for i in range(n)]
    out = [[[zero] * n for _ in range(n)] for _ in range(n)]
    for a in range(n):
        for b in range(n):
            acc = [zero] * n
            for i, tai in enumerate(T.rows[a]):
                if not tai:
                    continue
                for j, tbj in enumerate(T.rows[b]):
                    if not tbj:
                        continue
                    c = tai * tbj
                    for k, x in enumerate(g[i][j]):
                        if x:
                            acc[k] = acc[k] + c * x
            out[a][b] = acc
    return Algebra(n, F, tuple(tuple(tuple(c) for c in b) for b in out), None, None,
                   name=algebra.name)


@dataclass(frozen=True)
class IdentityPlacement:
    """Result of moving the identity to basis index 0.

    ``algebra`` is the rewritten algebra, ``T`` the change of basis
    (new basis y_a = sum_i T[a][i] x_i) and ``replaced`` the old basis index
    whose slot the identity took, or ``None`` when nothing changed.
    """
    algebra: Algebra
    T: SquareMatrix
    replaced: Optional[int]
    note: str


def identity_first(algebra: Algebra) -> IdentityPlacement:
    """Change basis so that x_0 is the identity.

    A basis identity at index e is swapped with index 0; an identity that is
    not a basis element replaces the lowest basis element it involves, which
    is then moved to the front.
    """
    n, F = algebra.dim, algebra.field
    e = find_identity(algebra)
    if e is None:
        raise AlgebraError("algebra has no identity")
    if e.coeffs[0] == 1 and not any(e.coeffs[1:]):
        return IdentityPlacement(replace(algebra, identity_index=0),
                                 SquareMatrix.identity(n, F), None, "identity already at index 0")
    k = next(i for i, c in enumerate(e.coeffs) if c)
    rows = [[F.one() if j == i else F.zero() for j in range(n)] for i in range(n)]
    rows[k] = list(e.coeffs)
    order = [k if i == 0 else 0 if i == k else i for i in range(n)]
    T = SquareMatrix([rows[i] for i in order], F)
    new = change_basis(algebra, T)
    if e.coeffs[k] == 1 and sum(1 for c in e.coeffs if c) == 1:
        note = f"identity x{k} swapped with x0"
        labels = tuple(algebra.labels[i] for i in order) if algebra.labels else None
    else:
        note = f"off-basis identity substituted for x{k} and swapped with x0"
        labels = None
    new = replace(new, identity_index=0, labels=labels)
    return IdentityPlacement(new, T, k, note)
