"""Reading and writing algebra files.

An algebra file is a JSON document::

    {"dim": 3, "field": "Q", "labels": ["x0", "x1", "x2"],
     "bracket": [{"i": 0, "j": 1, "coeffs": {"2": "1"}}],
     "alpha": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}

Row ``i`` of ``alpha`` holds the coefficients of ``x_i``, so column ``j`` is
the image of ``x_j``. Scalars are strings ``"p/q"`` or ``"p"`` (plain JSON
integers are accepted too).
"""

from __future__ import annotations

import json
from pathlib import Path

from .algebra import HomAlgebra
from .exactlin import Field, Matrix

KNOWN_FIELDS = {"dim", "field", "labels", "bracket", "alpha"}
REQUIRED_FIELDS = {"dim", "field", "bracket", "alpha"}


class AlgebraFormatError(ValueError):
    pass


def _scalar(field: Field, raw, where: str):
    if isinstance(raw, bool) or not isinstance(raw, (str, int)):
        raise AlgebraFormatError(f"{where}: scalar must be a string or integer, got {raw!r}")
    try:
        return field(str(raw)) if isinstance(raw, int) else field.parse(raw)
    except ValueError as e:
        raise AlgebraFormatError(f"{where}: {e}") from None


def _int(raw, where: str) -> int:
    if isinstance(raw, bool) or not isinstance(raw, int):
        if isinstance(raw, str) and raw.strip().lstrip("-").isdigit():
            return int(raw)
        raise AlgebraFormatError(f"{where}: expected an integer, got {raw!r}")
    return raw


def algebra_from_dict(doc) -> HomAlgebra:
    if not isinstance(doc, dict):
        raise AlgebraFormatError("algebra document must be an object")
    unknown = set(doc) - KNOWN_FIELDS
    if unknown:
        raise AlgebraFormatError(f"unknown fields: {sorted(unknown)}")
    missing = REQUIRED_FIELDS - set(doc)
    if missing:
        raise AlgebraFormatError(f"missing fields: {sorted(missing)}")
    n = _int(doc["dim"], "dim")
    if n < 0:
        raise AlgebraFormatError("dim must be non-negative")
    try:
        F = Field.from_tag(doc["field"]) if isinstance(doc["field"], str) else None
    except ValueError as e:
        raise AlgebraFormatError(str(e)) from None
    if F is None:
        raise AlgebraFormatError("field must be a string")
    labels = doc.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or len(labels) != n or not all(isinstance(s, str) for s in labels):
            raise AlgebraFormatError(f"labels must be a list of {n} strings")
    if not isinstance(doc["bracket"], list):
        raise AlgebraFormatError("bracket must be a list")
    brackets = {}
    for e in doc["bracket"]:
        if not isinstance(e, dict) or set(e) - {"i", "j", "coeffs"} or {"i", "j"} - set(e):
            raise AlgebraFormatError(f"bad bracket entry {e!r}")
        i, j = _int(e["i"], "bracket.i"), _int(e["j"], "bracket.j")
        if not (0 <= i < j < n):
            raise AlgebraFormatError(f"bracket pair ({i}, {j}) must satisfy 0 <= i < j < dim")
        if (i, j) in brackets:
            raise AlgebraFormatError(f"duplicate bracket pair ({i}, {j})")
        coeffs = e.get("coeffs", {})
        if not isinstance(coeffs, dict):
            raise AlgebraFormatError(f"coeffs of ({i}, {j}) must be an object")
        vec = {}
        for k, c in coeffs.items():
            kk = _int(k, f"bracket ({i},{j}) target")
            if not 0 <= kk < n:
                raise AlgebraFormatError(f"bracket ({i},{j}) target {kk} out of range")
            if kk in vec:
                raise AlgebraFormatError(f"bracket ({i},{j}) repeats target {kk}")
            vec[kk] = _scalar(F, c, f"bracket ({i},{j})[{kk}]")
        brackets[(i, j)] = vec
    rows = doc["alpha"]
    if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
        raise AlgebraFormatError(f"alpha must be {n} rows of {n} scalars")
    alpha = Matrix(F, tuple(tuple(_scalar(F, c, f"alpha[{r}][{c_}]") for c_, c in enumerate(row))
                            for r, row in enumerate(rows)))
    return HomAlgebra.from_brackets(F, n, brackets, alpha, labels)


def algebra_to_dict(g: HomAlgebra) -> dict:
    F = g.field
    bracket = []
    for i, j, v in g.nonzero_pairs():
        bracket.append({"i": i, "j": j,
                        "coeffs": {str(k): F.render(c) for k, c in enumerate(v) if c != 0}})
    doc = {"dim": g.dim, "field": F.tag, "bracket": bracket, "alpha": g.alpha.render()}
    if g.labels is not None:
        doc["labels"] = list(g.labels)
    return doc


def loads(text: str) -> HomAlgebra:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise AlgebraFormatError(f"not valid JSON: {e}") from None
    return algebra_from_dict(doc)


def dumps(g: HomAlgebra) -> str:
    return json.dumps(algebra_to_dict(g), indent=1, sort_keys=True) + "\n"


def load_algebra(path) -> HomAlgebra:
    return loads(Path(path).read_text(encoding="utf-8"))


def save_algebra(g: HomAlgebra, path) -> None:
    Path(path).write_text(dumps(g), encoding="utf-8")


def load_matrix(path, field: Field) -> Matrix:
    """A map file: JSON ``{"field": ..., "matrix": rows}`` or a bare list of rows."""
    doc = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(doc, dict):
        if set(doc) - {"field", "matrix"} or "matrix" not in doc:
            raise AlgebraFormatError("map file must have 'matrix' (and optionally 'field')")
        if "field" in doc and Field.from_tag(doc["field"]) != field:
            raise AlgebraFormatError("map file field differs from the algebra's")
        doc = doc["matrix"]
    if not isinstance(doc, list) or not doc or any(not isinstance(r, list) or len(r) != len(doc[0]) for r in doc):
        raise AlgebraFormatError("matrix must be a non-empty list of equal-length rows")
    return Matrix(field, tuple(tuple(_scalar(field, c, "matrix") for c in r) for r in doc))
