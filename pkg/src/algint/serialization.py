"""JSON files for algebras and C matrices.

Algebra file::

    {"name": str, "dim": int, "field": "rational" | "gaussian" | "cyclotomic:<n>",
     "labels": [str], "f": [[i, j, k, "<scalar>"], ...]}

C file::

    {"dim": int, "entries": [[j, k, "<scalar>"], ...]}

Omitted triples are zero.  Dumping sorts entries and prints scalars in
canonical form, so load followed by dump is a fixed point.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Optional

from .algebra import Algebra, AlgebraError, new_algebra
from .linalg import SquareMatrix
from .scalars import Field, FieldError, field_of


class FormatError(ValueError):
    """A file or document does not follow the expected schema."""


def _scalar_text(field: Field, x) -> str:
    return field.format(x)


def algebra_to_dict(alg: Algebra) -> dict:
    F = alg.field
    triples = []
    for i in range(alg.dim):
        for j in range(alg.dim):
            for k in range(alg.dim):
                x = alg.f[i][j][k]
                if x:
                    triples.append([i, j, k, _scalar_text(F, x)])
    labels = list(alg.labels) if alg.labels else [f"x{i}" for i in range(alg.dim)]
    return {"name": alg.name, "dim": alg.dim, "field": F.name, "labels": labels, "f": triples}


def _int(v, what):
    if not isinstance(v, int) or isinstance(v, bool):
        raise FormatError(f"{what} must be an integer, got {v!r}")
    return v


def algebra_from_dict(doc) -> Algebra:
    if not isinstance(doc, dict):
        raise FormatError("algebra document must be a JSON object")
    for key in ("dim", "field", "f"):
        if key not in doc:
            raise FormatError(f"algebra document lacks {key!r}")
    dim = _int(doc["dim"], "dim")
    try:
        field = field_of(doc["field"])
    except (FieldError, AttributeError) as exc:
        raise FormatError(str(exc)) from exc
    sc = {}
    if not isinstance(doc["f"], list):
        raise FormatError("'f' must be a list of [i, j, k, scalar] triples")
    for t in doc["f"]:
        if not isinstance(t, list) or len(t) != 4:
            raise FormatError(f"bad structure-constant entry {t!r}")
        i, j, k = (_int(x, "index") for x in t[:3])
        if not isinstance(t[3], (str, int)):
            raise FormatError(f"scalar must be a string, got {t[3]!r}")
        try:
            sc[i, j, k] = field.coerce(str(t[3]))
        except FieldError as exc:
            raise FormatError(str(exc)) from exc
    labels = doc.get("labels")
    if labels is not None and (not isinstance(labels, list) or len(labels) != dim):
        raise FormatError("labels must be a list with one name per basis element")
    try:
        return new_algebra(dim, field, sc, labels, name=str(doc.get("name", "")))
    except AlgebraError as exc:
        raise FormatError(str(exc)) from exc


def dumps_algebra(alg: Algebra) -> str:
    return json.dumps(algebra_to_dict(alg), indent=1, ensure_ascii=False) + "\n"


def loads_algebra(text: str) -> Algebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc}") from exc
    return algebra_from_dict(doc)


def load_algebra(path) -> Algebra:
    return loads_algebra(Path(path).read_text(encoding="utf-8"))


def save_algebra(alg: Algebra, path) -> None:
    Path(path).write_text(dumps_algebra(alg), encoding="utf-8")


def c_to_dict(c: SquareMatrix) -> dict:
    F = c.field
    entries = [[j, k, _scalar_text(F, x)] for (j, k), x in sorted(c.entries().items())]
    return {"dim": c.dim, "entries": entries}


def c_from_dict(doc, field: Field) -> SquareMatrix:
    if not isinstance(doc, dict) or "dim" not in doc or "entries" not in doc:
        raise FormatError("C document needs 'dim' and 'entries'")
    dim = _int(doc["dim"], "dim")
    entries = {}
    if not isinstance(doc["entries"], list):
        raise FormatError("'entries' must be a list of [j, k, scalar]")
    for t in doc["entries"]:
        if not isinstance(t, list) or len(t) != 3:
            raise FormatError(f"bad C entry {t!r}")
        j, k = _int(t[0], "index"), _int(t[1], "index")
        if not (0 <= j < dim and 0 <= k < dim):
            raise FormatError(f"C entry index {(j, k)} out of range")
        try:
            entries[j, k] = field.coerce(str(t[2]))
        except FieldError as exc:
            raise FormatError(str(exc)) from exc
    return SquareMatrix.from_entries(dim, entries, field)


def dumps_c(c: SquareMatrix) -> str:
    return json.dumps(c_to_dict(c), indent=1) + "\n"


def loads_c(text: str, field: Field) -> SquareMatrix:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc}") from exc
    return c_from_dict(doc, field)


def load_c(path, field: Field) -> SquareMatrix:
    return loads_c(Path(path).read_text(encoding="utf-8"), field)


def save_c(c: SquareMatrix, path) -> None:
    Path(path).write_text(dumps_c(c), encoding="utf-8")


def parse_coeffs(text: str, field: Field, dim: Optional[int] = None) -> list:
    """Comma-separated scalars, e.g. ``"0,1"`` or ``"1/2,[0,1]"``."""
    parts, depth, cur = [], 0, ""
    for ch in text:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    try:
        vals = [field.coerce(p) for p in parts]
    except FieldError as exc:
        raise FormatError(str(exc)) from exc
    if dim is not None and len(vals) != dim:
        raise FormatError(f"expected {dim} coefficients, got {len(vals)}")
    return vals
