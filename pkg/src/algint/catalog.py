"""Builtin algebras.

Index conventions for pair-indexed bases live here and nowhere else:

* matrix algebra A_N: e^{(n,m)} (0-based n, m) is basis index ``n*N + m``;
* noncommutative torus: u^a v^b is basis index ``a*n + b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import Callable, Optional

from .algebra import Algebra, AlgebraError, new_algebra
from .linalg import SquareMatrix
from .scalars import Field, RATIONAL


def pair_index(a: int, b: int, n: int) -> int:
    """Flat basis index of the pair (a, b) in an n x n pair-indexed basis."""
    return a * n + b


def index_pair(k: int, n: int) -> tuple[int, int]:
    return divmod(k, n)


def field_algebra(field: Field = RATIONAL) -> Algebra:
    return replace(new_algebra(1, field, {(0, 0, 0): 1}, ("1",), name="field"),
                   identity_index=0)


def matrix_algebra(N: int) -> Algebra:
    """A_N over the rationals: e^{(nm)} e^{(pq)} = delta_{mp} e^{(nq)}."""
    if N < 1:
        raise AlgebraError("matrix algebra needs N >= 1")
    sc = {}
    for n in range(N):
        for m in range(N):
            for q in range(N):
                sc[pair_index(n, m, N), pair_index(m, q, N), pair_index(n, q, N)] = 1
    labels = [f"e{n + 1}{m + 1}" for n in range(N) for m in range(N)]
    alg = new_algebra(N * N, RATIONAL, sc, labels, name=f"matrix:{N}")
    return replace(alg, identity_index=0) if N == 1 else alg


def matrix_c(N: int) -> SquareMatrix:
    """C_{(mn)(rs)} = delta_{ms} delta_{nr}: the transposition e^{(mn)} -> e^{(nm)}."""
    d = N * N
    return SquareMatrix.from_entries(
        d, {(pair_index(m, n, N), pair_index(n, m, N)): 1
            for m in range(N) for n in range(N)})


def matrix_to_element(alg: Algebra, A: SquareMatrix):
    """The element sum a_{nm} e^{(nm)} of A_N for an N x N matrix A."""
    N = A.dim
    if alg.dim != N * N:
        raise AlgebraError("matrix size does not match the algebra")
    return alg.element([A[index_pair(k, N)] for k in range(N * N)])


def element_to_matrix(a) -> SquareMatrix:
    d = a.algebra.dim
    N = int(round(d ** 0.5))
    if N * N != d:
        raise AlgebraError("element is not from a matrix algebra")
    return SquareMatrix([[a.coeffs[pair_index(n, m, N)] for m in range(N)] for n in range(N)],
                        a.algebra.field)


def paragrassmann_tensor(p: int) -> Algebra:
    """theta^k theta^l = theta^{k+l}, zero past theta^p."""
    if p < 1:
        raise AlgebraError("paragrassmann order must be >= 1")
    sc = {(k, l, k + l): 1 for k in range(p + 1) for l in range(p + 1) if k + l <= p}
    labels = ["1", "θ"] + [f"θ^{k}" for k in range(2, p + 1)]
    return replace(new_algebra(p + 1, RATIONAL, sc, labels, name=f"paragrassmann:{p}"),
                   identity_index=0)


def antidiagonal_c(p: int) -> SquareMatrix:
    """C_{jk} = delta_{j+k,p} for G_p."""
    return SquareMatrix.from_entries(p + 1, {(j, p - j): 1 for j in range(p + 1)})


def quaternions() -> Algebra:
    """Real quaternions over Q; basis 1, i, j, k."""
    # (a, b) -> (sign, c)
    table = {
        (1, 1): (-1, 0), (2, 2): (-1, 0), (3, 3): (-1, 0),
        (1, 2): (1, 3), (2, 3): (1, 1), (3, 1): (1, 2),
        (2, 1): (-1, 3), (3, 2): (-1, 1), (1, 3): (-1, 2),
    }
    sc = {}
    for a in range(4):
        sc[0, a, a] = 1
        sc[a, 0, a] = 1
    for (a, b), (s, c) in table.items():
        sc[a, b, c] = s
    return replace(new_algebra(4, RATIONAL, sc, ("1", "i", "j", "k"), name="quaternions"),
                   identity_index=0)


def quaternion_c() -> SquareMatrix:
    return SquareMatrix.from_entries(4, {(0, 0): 1, (1, 1): -1, (2, 2): -1, (3, 3): -1})


def cyclic_group_algebra(n: int) -> Algebra:
    """Group algebra of Z_n over Q: g^j g^k = g^{(j+k) mod n}."""
    if n < 1:
        raise AlgebraError("cyclic group order must be >= 1")
    sc = {(j, k, (j + k) % n): 1 for j in range(n) for k in range(n)}
    labels = ["1"] + [f"g^{k}" for k in range(1, n)]
    return replace(new_algebra(n, RATIONAL, sc, labels, name=f"cyclic:{n}"),
                   identity_index=0)


def cyclic_flip_c(n: int) -> SquareMatrix:
    """C_{jk} = 1 when j + k = 0 mod n, i.e. g^k -> g^{-k}."""
    return SquareMatrix.from_entries(n, {(j, (-j) % n): 1 for j in range(n)})


def noncommutative_torus(n: int) -> Algebra:
    """u v = zeta_n v u, u^n = v^n = 1, over Q(zeta_n).

    (u^a v^b)(u^c v^d) = zeta^{-bc} u^{a+c} v^{b+d}.
    """
    if n < 2:
        raise AlgebraError("noncommutative torus needs n >= 2")
    F = Field.cyclotomic(n)
    sc = {}
    for a in range(n):
        for b in range(n):
            for c in range(n):
                for d in range(n):
                    sc[pair_index(a, b, n), pair_index(c, d, n),
                       pair_index((a + c) % n, (b + d) % n, n)] = F.zeta(-b * c)
    labels = [f"u^{a}v^{b}" for a in range(n) for b in range(n)]
    return replace(new_algebra(n * n, F, sc, labels, name=f"torus:{n}"), identity_index=0)


# ---------------------------------------------------------------------------
# registry

@dataclass(frozen=True)
class CatalogEntry:
    """A named algebra with the properties the pipeline must reproduce.

    ``reference_c`` pins the C matrix used for integration when the algebra
    has a conventional one; otherwise the solver chooses.  ``involutive``
    refers to that C.
    """
    name: str
    params: tuple
    build: Callable[..., Algebra]
    associative: bool = True
    unital: bool = True
    self_conjugated: bool = True
    involutive: Optional[bool] = None
    reference_c: Optional[Callable[..., SquareMatrix]] = None
    summary: str = ""

    @property
    def key(self) -> str:
        return ":".join([self.name, *map(str, self.params)])

    def algebra(self) -> Algebra:
        return self.build(*self.params)

    def c_matrix(self) -> Optional[SquareMatrix]:
        return self.reference_c(*self.params) if self.reference_c else None


_FAMILIES = {
    "matrix": dict(build=matrix_algebra, involutive=True, reference_c=matrix_c,
                   summary="N x N matrices, integral = trace"),
    "paragrassmann": dict(build=paragrassmann_tensor, involutive=False, reference_c=antidiagonal_c,
                          summary="theta^{p+1} = 0, integral picks the theta^p coefficient"),
    "cyclic": dict(build=cyclic_group_algebra, involutive=True, reference_c=cyclic_flip_c,
                   summary="group algebra of Z_n; finite stand-in for the circle algebra"),
    "torus": dict(build=noncommutative_torus, involutive=True,
                  summary="uv = zeta_n vu, u^n = v^n = 1 over Q(zeta_n)"),
    "quaternions": dict(build=quaternions, involutive=True,
                        reference_c=quaternion_c, summary="Hamilton quaternions over Q"),
    "field": dict(build=lambda: field_algebra(), involutive=True,
                  reference_c=lambda: SquareMatrix.identity(1),
                  summary="the rationals as a one-dimensional algebra"),
}
_ALIASES = {"grassmann": "paragrassmann", "G": "paragrassmann", "A": "matrix",
            "Z": "cyclic", "quaternion": "quaternions", "H": "quaternions"}


class CatalogError(KeyError):
    pass


def lookup(spec: str) -> CatalogEntry:
    """Parse ``name[:param]``, e.g. ``matrix:2``, ``grassmann:1``, ``quaternions``."""
    m = re.fullmatch(r"\s*([A-Za-z]+)\s*(?::\s*(\d+))?\s*", spec)
    if not m:
        raise CatalogError(f"malformed catalog name {spec!r}")
    name = _ALIASES.get(m.group(1), m.group(1))
    if name not in _FAMILIES:
        raise CatalogError(f"unknown catalog algebra {m.group(1)!r}")
    fam = _FAMILIES[name]
    needs_param = name not in ("quaternions", "field")
    if needs_param and m.group(2) is None:
        raise CatalogError(f"{name} needs a parameter, e.g. {name}:2")
    if not needs_param and m.group(2) is not None:
        raise CatalogError(f"{name} takes no parameter")
    params = (int(m.group(2)),) if needs_param else ()
    entry = CatalogEntry(name, params, **fam)
    try:
        entry.algebra()
    except AlgebraError as exc:
        raise CatalogError(str(exc)) from exc
    return entry


def standard_entries() -> list[CatalogEntry]:
    """The entries covered by the golden-report tests."""
    keys = (["field"] + [f"matrix:{n}" for n in range(1, 5)]
            + [f"paragrassmann:{p}" for p in range(1, 7)] + ["quaternions"]
            + [f"cyclic:{n}" for n in range(1, 9)] + ["torus:2", "torus:3"])
    return [lookup(k) for k in keys]
