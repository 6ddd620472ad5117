"""JSON state and operator files.

Layout::

    {"dims": [2, 2], "labels": ["A", "B"],
     "matrix": [[[re, im], [re, im], ...], ...]}

Rows are listed in order.  Operator files use the same layout, with an
optional ``"hermitian"`` flag.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .errors import InputError, ParseError
from .linalg import MultipartiteState


def _load(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"{path}: cannot read file ({exc.strerror})") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(doc, dict):
        raise ParseError(f"{path}: top level must be an object")
    return doc


def _matrix(doc: dict, path) -> np.ndarray:
    if "matrix" not in doc:
        raise ParseError(f"{path}: missing field 'matrix'")
    rows = doc["matrix"]
    if not isinstance(rows, list) or not rows:
        raise ParseError(f"{path}: field 'matrix' must be a non-empty list of rows")
    n = len(rows)
    out = np.empty((n, n), dtype=complex)
    for r, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != n:
            raise ParseError(f"{path}: matrix[{r}] must be a list of {n} [re, im] pairs")
        for c, z in enumerate(row):
            if (not isinstance(z, list) or len(z) != 2
                    or not all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in z)):
                raise ParseError(f"{path}: matrix[{r}][{c}] must be a [re, im] pair of numbers")
            out[r, c] = complex(z[0], z[1])
    return out


def _dims_labels(doc: dict, path, n: int):
    for key in ("dims", "labels"):
        if key not in doc:
            raise ParseError(f"{path}: missing field '{key}'")
    dims, labels = doc["dims"], doc["labels"]
    if not isinstance(dims, list) or not all(isinstance(d, int) and d > 0 for d in dims):
        raise ParseError(f"{path}: field 'dims' must be a list of positive integers")
    if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
        raise ParseError(f"{path}: field 'labels' must be a list of strings")
    if len(dims) != len(labels):
        raise ParseError(f"{path}: 'dims' and 'labels' differ in length")
    if int(np.prod(dims)) != n:
        raise ParseError(f"{path}: dims {dims} do not multiply to matrix size {n}")
    return dims, labels


def read_state(path) -> MultipartiteState:
    doc = _load(path)
    m = _matrix(doc, path)
    dims, labels = _dims_labels(doc, path, m.shape[0])
    try:
        return MultipartiteState(m, dims, labels)
    except InputError as exc:
        raise ParseError(f"{path}: not a valid state: {exc}") from exc


def read_operator(path) -> tuple[np.ndarray, list[int], list[str]]:
    """Matrix, dims and labels of an operator file."""
    doc = _load(path)
    m = _matrix(doc, path)
    dims, labels = _dims_labels(doc, path, m.shape[0])
    if not np.all(np.isfinite(m)):
        raise ParseError(f"{path}: matrix has non-finite entries")
    return m, dims, labels


def _encode(matrix, dims, labels, extra=None) -> str:
    m = np.asarray(matrix, dtype=complex)
    doc = {"dims": [int(d) for d in dims], "labels": list(labels),
           "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in m]}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=None) + "\n"


def write_state(path, state: MultipartiteState) -> None:
    Path(path).write_text(_encode(state.matrix, state.dims, state.labels), encoding="utf-8")


def write_operator(path, matrix, dims, labels, hermitian: bool | None = None) -> None:
    extra = None if hermitian is None else {"hermitian": bool(hermitian)}
    Path(path).write_text(_encode(matrix, dims, labels, extra), encoding="utf-8")
