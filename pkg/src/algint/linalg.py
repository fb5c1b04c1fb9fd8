"""Exact dense matrices and sparse Gaussian elimination.

Everything here is generic over the scalar types of :mod:`algint.scalars`;
the only requirements are ring operations, division and exact ``== 0``.
"""

from __future__ import annotations

from typing import Iterable, Mapping, Sequence

from .scalars import Field, RATIONAL, Scalar


class SingularMatrixError(ArithmeticError):
    pass


class SquareMatrix:
    """Immutable dense square matrix over an exact field."""

    __slots__ = ("rows", "field", "_hash")

    def __init__(self, rows: Iterable[Sequence], field: Field = RATIONAL):
        rows = tuple(tuple(field.coerce(x) for x in r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix is not square")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "_hash", None)

    @classmethod
    def _raw(cls, rows, field):
        # rows already coerced and square
        m = cls.__new__(cls)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "_hash", None)
        return m

    def __setattr__(self, key, value):
        raise AttributeError("SquareMatrix is immutable")

    @classmethod
    def identity(cls, n: int, field: Field = RATIONAL) -> "SquareMatrix":
        one, zero = field.one(), field.zero()
        return cls._raw(tuple(tuple(one if i == j else zero for j in range(n))
                              for i in range(n)), field)

    @classmethod
    def zeros(cls, n: int, field: Field = RATIONAL) -> "SquareMatrix":
        zero = field.zero()
        return cls._raw(tuple((zero,) * n for _ in range(n)), field)

    @classmethod
    def unit(cls, n: int, i: int, j: int, field: Field = RATIONAL) -> "SquareMatrix":
        """The single-entry matrix with a 1 at (i, j), 0-based."""
        one, zero = field.one(), field.zero()
        return cls._raw(tuple(tuple(one if (r, c) == (i, j) else zero
                                    for c in range(n)) for r in range(n)), field)

    @classmethod
    def from_entries(cls, n: int, entries: Mapping[tuple[int, int], object],
                     field: Field = RATIONAL) -> "SquareMatrix":
        rows = [[0] * n for _ in range(n)]
        for (i, j), v in entries.items():
            rows[i][j] = v
        return cls(rows, field)

    # -- basic access ----------------------------------------------------

    @property
    def dim(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def row(self, i):
        return self.rows[i]

    def col(self, j):
        return tuple(r[j] for r in self.rows)

    def entries(self):
        """Nonzero entries as ``{(i, j): value}``."""
        return {(i, j): x for i, r in enumerate(self.rows) for j, x in enumerate(r) if x}

    def __eq__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        if self._hash is None:
            object.__setattr__(self, "_hash", hash(self.rows))
        return self._hash

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.rows)
        return f"SquareMatrix([{body}])"

    def pretty(self) -> str:
        cells = [[self.field.format(x) for x in r] for r in self.rows]
        w = max((len(c) for r in cells for c in r), default=1)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)

    # -- arithmetic ------------------------------------------------------

    def _check(self, other):
        if self.dim != other.dim:
            raise ValueError(f"dimension mismatch: {self.dim} vs {other.dim}")

    def __add__(self, other):
        self._check(other)
        return SquareMatrix._raw(tuple(tuple(a + b for a, b in zip(r, s))
                                       for r, s in zip(self.rows, other.rows)), self.field)

    def __sub__(self, other):
        self._check(other)
        return SquareMatrix._raw(tuple(tuple(a - b for a, b in zip(r, s))
                                       for r, s in zip(self.rows, other.rows)), self.field)

    def __neg__(self):
        return SquareMatrix._raw(tuple(tuple(-a for a in r) for r in self.rows), self.field)

    def scale(self, c) -> "SquareMatrix":
        c = self.field.coerce(c)
        return SquareMatrix._raw(tuple(tuple(c * a for a in r) for r in self.rows), self.field)

    def __matmul__(self, other):
        if not isinstance(other, SquareMatrix):
            return NotImplemented
        self._check(other)
        n = self.dim
        zero = self.field.zero()
        b_rows = other.rows
        out = []
        for r in self.rows:
            acc = [zero] * n
            for k, a in enumerate(r):
                if a:
                    for j, b in enumerate(b_rows[k]):
                        if b:
                            acc[j] = acc[j] + a * b
            out.append(tuple(acc))
        return SquareMatrix._raw(tuple(out), self.field)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = SquareMatrix.identity(self.dim, self.field)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    def apply(self, v: Sequence) -> tuple:
        """Matrix times column vector."""
        zero = self.field.zero()
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), zero) for r in self.rows)

    def rapply(self, v: Sequence) -> tuple:
        """Row vector times matrix."""
        zero = self.field.zero()
        out = [zero] * self.dim
        for a, r in zip(v, self.rows):
            if a:
                for j, b in enumerate(r):
                    if b:
                        out[j] = out[j] + a * b
        return tuple(out)

    @property
    def T(self) -> "SquareMatrix":
        return SquareMatrix._raw(tuple(zip(*self.rows)), self.field)

    def conj(self) -> "SquareMatrix":
        """Entrywise complex conjugate."""
        c = self.field.conj
        return SquareMatrix._raw(tuple(tuple(c(x) for x in r) for r in self.rows), self.field)

    @property
    def H(self) -> "SquareMatrix":
        """Conjugate transpose."""
        return self.conj().T

    def commutator(self, other) -> "SquareMatrix":
        return self @ other - other @ self

    def trace(self):
        return sum((self.rows[i][i] for i in range(self.dim)), self.field.zero())

    def is_zero(self) -> bool:
        return not any(x for r in self.rows for x in r)

    def is_identity(self) -> bool:
        return self == SquareMatrix.identity(self.dim, self.field)

    def is_symmetric(self) -> bool:
        return self == self.T

    # -- elimination -----------------------------------------------------

    def det(self):
        n = self.dim
        a = [list(r) for r in self.rows]
        det = self.field.one()
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c]), None)
            if p is None:
                return self.field.zero()
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            piv = a[c][c]
            det = det * piv
            for r in range(c + 1, n):
                if a[r][c]:
                    f = a[r][c] / piv
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return det

    def inverse(self) -> "SquareMatrix":
        n = self.dim
        one, zero = self.field.one(), self.field.zero()
        a = [list(r) + [one if i == j else zero for j in range(n)]
             for i, r in enumerate(self.rows)]
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c]), None)
            if p is None:
                raise SingularMatrixError("matrix is singular")
            a[c], a[p] = a[p], a[c]
            piv = a[c][c]
            a[c] = [x / piv for x in a[c]]
            for r in range(n):
                if r != c and a[r][c]:
                    f = a[r][c]
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return SquareMatrix._raw(tuple(tuple(r[n:]) for r in a), self.field)

    def is_invertible(self) -> bool:
        return bool(self.det())

    def rank(self) -> int:
        e = Echelon(self.dim, self.field)
        for r in self.rows:
            e.add_row({j: x for j, x in enumerate(r) if x})
        return e.rank


def linear_combination(coeffs: Sequence, mats: Sequence[SquareMatrix],
                       n: int, field: Field) -> SquareMatrix:
    zero = field.zero()
    acc = [[zero] * n for _ in range(n)]
    for c, m in zip(coeffs, mats):
        if not c:
            continue
        for i, r in enumerate(m.rows):
            for j, x in enumerate(r):
                if x:
                    acc[i][j] = acc[i][j] + c * x
    return SquareMatrix._raw(tuple(tuple(r) for r in acc), field)


class InconsistentSystemError(ArithmeticError):
    pass


class Echelon:
    """Incremental sparse row-echelon form.

    Rows are dicts ``{column: value}``.  Each stored row is normalised so its
    pivot (smallest column) is 1.  Column ``ncols`` may be used as an
    augmented right-hand side column by :func:`solve_linear`.
    """

    def __init__(self, ncols: int, field: Field = RATIONAL):
        self.ncols = ncols
        self.field = field
        self.pivots: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: Mapping) -> dict:
        coerce = self.field.coerce
        r = {c: coerce(v) for c, v in row.items() if v}
        done = set()
        while True:
            cands = [c for c in r if c in self.pivots and c not in done]
            if not cands:
                return r
            c = min(cands)
            f = r[c]
            for k, v in self.pivots[c].items():
                nv = r.get(k, 0) - f * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
            done.add(c)

    def add_row(self, row: Mapping) -> bool:
        """Insert a row; returns True when it increased the rank."""
        r = self.reduce(row)
        if not r:
            return False
        c = min(r)
        piv = r[c]
        self.pivots[c] = {k: v / piv for k, v in r.items()}
        return True

    def _rref(self) -> dict[int, dict]:
        rows = {c: dict(r) for c, r in self.pivots.items()}
        for c in sorted(rows, reverse=True):
            pr = rows[c]
            for c2, r2 in rows.items():
                if c2 != c and c in r2:
                    f = r2[c]
                    for k, v in pr.items():
                        nv = r2.get(k, 0) - f * v
                        if nv:
                            r2[k] = nv
                        else:
                            r2.pop(k, None)
        return rows

    def nullspace(self) -> list[tuple]:
        """Basis of the solution space of the homogeneous system."""
        rows = self._rref()
        zero, one = self.field.zero(), self.field.one()
        basis = []
        for free in range(self.ncols):
            if free in rows:
                continue
            v = [zero] * self.ncols
            v[free] = one
            for p, r in rows.items():
                x = r.get(free)
                if x:
                    v[p] = -x
            basis.append(tuple(self.field.coerce(x) for x in v))
        return basis


def nullspace(rows: Iterable[Mapping], ncols: int, field: Field = RATIONAL) -> list[tuple]:
    e = Echelon(ncols, field)
    for r in rows:
        e.add_row(r)
    return e.nullspace()


def solve_linear(rows: Iterable[tuple[Mapping, object]], ncols: int,
                 field: Field = RATIONAL):
    """Solve ``A x = b`` given as ``(row, rhs)`` pairs.

    Returns ``(particular, kernel_basis)`` or raises
    :class:`InconsistentSystemError` when there is no solution.
    """
    e = Echelon(ncols + 1, field)
    for row, rhs in rows:
        r = dict(row)
        if rhs:
            r[ncols] = rhs
        e.add_row(r)
    if ncols in e.pivots:
        raise InconsistentSystemError("linear system has no solution")
    rows_ = e._rref()
    zero = field.zero()
    x = [zero] * ncols
    for p, r in rows_.items():
        x[p] = field.coerce(r.get(ncols, zero))
    kernel = []
    one = field.one()
    for free in range(ncols):
        if free in rows_:
            continue
        v = [zero] * ncols
        v[free] = one
        for p, r in rows_.items():
            c = r.get(free)
            if c:
                v[p] = -c
        kernel.append(tuple(field.coerce(t) for t in v))
    return tuple(x), kernel


def span_rank(vectors: Iterable[Sequence], ncols: int, field: Field = RATIONAL) -> int:
    e = Echelon(ncols, field)
    for v in vectors:
        e.add_row({j: x for j, x in enumerate(v) if x})
    return e.rank


def flatten(m: SquareMatrix) -> tuple:
    return tuple(x for r in m.rows for x in r)


def unflatten(v: Sequence, n: int, field: Field = RATIONAL) -> SquareMatrix:
    return SquareMatrix([v[i * n:(i + 1) * n] for i in range(n)], field)
