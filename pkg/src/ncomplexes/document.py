"""JSON interchange format for N-complexes.

A document is an object with exactly the keys ``N``, ``p``, ``lo``, ``dims``
and ``maps``.  Matrices are row-major lists of lists of integers in
``[0, p)``.  Canonical text is ``json.dumps`` with sorted keys and no
whitespace, followed by a newline.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any

from .exactla import Matrix, PrimeField
from .ncomplex import NComplex

__all__ = ["DocumentError", "to_document", "from_document", "dumps", "loads", "digest"]

FIELDS = ("N", "dims", "lo", "maps", "p")


class DocumentError(ValueError):
    """The input is not a well-formed complex document."""


def to_document(M: NComplex) -> dict[str, Any]:
    return {
        "N": M.N,
        "p": M.field.p,
        "lo": M.lo,
        "dims": list(M.dims),
        "maps": [m.tolist() for m in M.maps],
    }


def _int(value, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{what} must be an integer, got {value!r}")
    return value


def _matrix(field: PrimeField, raw, k: int, cols_hint: int) -> Matrix:
    if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
        raise DocumentError(f"maps[{k}] must be a list of rows")
    if not raw:
        return Matrix.zeros(field, 0, cols_hint)
    width = len(raw[0])
    if any(len(r) != width for r in raw):
        raise DocumentError(f"maps[{k}] has rows of unequal length")
    for r in raw:
        for x in r:
            x = _int(x, f"entry of maps[{k}]")
            if not 0 <= x < field.p:
                raise DocumentError(f"entry {x} of maps[{k}] is outside [0, {field.p})")
    return Matrix(field, raw, shape=(len(raw), width))


def from_document(doc: Any) -> NComplex:
    """Build the complex described by ``doc``.

    Only the syntax is checked here; shape coherence and nilpotency are left
    to :func:`ncomplexes.validate`.
    """
    if not isinstance(doc, dict):
        raise DocumentError("document must be a JSON object")
    keys = set(doc)
    if keys != set(FIELDS):
        missing = sorted(set(FIELDS) - keys)
        extra = sorted(keys - set(FIELDS))
        raise DocumentError(f"document keys must be exactly {sorted(FIELDS)} (missing {missing}, unexpected {extra})")
    N = _int(doc["N"], "N")
    p = _int(doc["p"], "p")
    lo = _int(doc["lo"], "lo")
    if N < 2:
        raise DocumentError(f"N must be at least 2, got {N}")
    try:
        field = PrimeField(p)
    except ValueError as exc:
        raise DocumentError(str(exc)) from None
    dims = doc["dims"]
    if not isinstance(dims, list):
        raise DocumentError("dims must be a list")
    dims = [_int(d, "dimension") for d in dims]
    if any(d < 0 for d in dims):
        raise DocumentError("dimensions must be non-negative")
    maps = doc["maps"]
    if not isinstance(maps, list):
        raise DocumentError("maps must be a list")
    mats = [_matrix(field, raw, k, dims[k] if k < len(dims) else 0) for k, raw in enumerate(maps)]
    return NComplex(N, field, lo, dims, mats)


def dumps(M: NComplex) -> str:
    return json.dumps(to_document(M), sort_keys=True, separators=(",", ":")) + "\n"


def loads(text: str) -> NComplex:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from None
    return from_document(doc)


def digest(M: NComplex) -> str:
    """SHA-256 of the canonical text."""
    return hashlib.sha256(dumps(M).encode("utf-8")).hexdigest()
