"""Finite-support N-complexes and their indecomposables.

An N-complex here is a window ``[lo, hi]`` of finite-dimensional spaces over
F_p with maps ``d_i`` of degree +1 whose N-fold composites vanish.  Degrees
outside the window are zero.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, NamedTuple, Optional, Sequence

import numpy as np

from .exactla import Matrix, PrimeField, block_diag, inverse, multiply, random_invertible

__all__ = [
    "NComplex",
    "Indec",
    "SummandMultiset",
    "Violation",
    "ComplexError",
    "validate",
    "indecomposable",
    "direct_sum",
    "assemble",
    "dimension_vector",
    "shift",
    "random_ncomplex",
    "random_multiset",
]


class ComplexError(ValueError):
    """Raised on invalid N-complex input (bad shapes, broken nilpotency, mismatched N/field)."""


class Indec(NamedTuple):
    """The indecomposable M_i^l: one-dimensional on ``[i, i+l]``."""

    i: int
    l: int

    @property
    def end(self) -> int:
        return self.i + self.l

    def __str__(self):
        return f"M[{self.i}]^{self.l}"


class SummandMultiset(Mapping[Indec, int]):
    """Finite multiset of indecomposables with positive multiplicities.

    Iteration is in lexicographic order on ``(i, l)``.
    """

    __slots__ = ("_d",)

    def __init__(self, items=()):
        d: dict[Indec, int] = {}
        pairs = items.items() if isinstance(items, Mapping) else items
        for key, n in pairs:
            key = Indec(*key)
            n = int(n)
            if n < 0:
                raise ValueError(f"negative multiplicity {n} for {key}")
            if n:
                d[key] = d.get(key, 0) + n
        self._d = dict(sorted(d.items()))

    def __getitem__(self, key) -> int:
        return self._d[Indec(*key)]

    def get(self, key, default=0):
        return self._d.get(Indec(*key), default)

    def __iter__(self) -> Iterator[Indec]:
        return iter(self._d)

    def __len__(self) -> int:
        return len(self._d)

    def __eq__(self, other):
        if isinstance(other, SummandMultiset):
            return self._d == other._d
        if isinstance(other, Mapping):
            return self == SummandMultiset(other)
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self._d.items()))

    def __add__(self, other: "SummandMultiset") -> "SummandMultiset":
        return SummandMultiset(list(self.items()) + list(other.items()))

    def total(self) -> int:
        return sum(self._d.values())

    def total_dim(self) -> int:
        return sum((k.l + 1) * n for k, n in self._d.items())

    def restrict(self, max_length: int) -> "SummandMultiset":
        return SummandMultiset({k: n for k, n in self._d.items() if k.l <= max_length})

    def lines(self) -> list[str]:
        return [f"{k} x {n}" for k, n in self._d.items()]

    def to_json(self) -> list[dict]:
        return [{"i": k.i, "l": k.l, "n": n} for k, n in self._d.items()]

    def __repr__(self):
        inner = ", ".join(self.lines())
        return f"SummandMultiset({{{inner}}})"


@dataclass(frozen=True)
class Violation:
    kind: str  # "shape" or "nilpotency"
    degree: int
    message: str

    def __str__(self):
        return self.message


class NComplex:
    """Immutable finite-support N-complex over a prime field.

    ``maps[k]`` goes from degree ``lo+k`` to ``lo+k+1`` and has shape
    ``dims[k+1] x dims[k]``.  Construction does not check the nilpotency law;
    use :func:`validate` or :meth:`require_valid`.
    """

    def __init__(self, N: int, field: PrimeField, lo: int, dims: Sequence[int], maps: Sequence[Matrix]):
        if N < 2:
            raise ComplexError(f"nilpotency order must be at least 2, got {N}")
        if any(d < 0 for d in dims):
            raise ComplexError("dimensions must be non-negative")
        self.N = int(N)
        self.field = field
        self.lo = int(lo)
        self.dims = tuple(int(d) for d in dims)
        self.maps = tuple(maps)
        self._composites: dict[tuple[int, int], Matrix] = {}
        self._violation: Optional[Violation] = None
        self._checked = False

    @classmethod
    def zero(cls, field: PrimeField, N: int, lo: int = 0) -> "NComplex":
        return cls(N, field, lo, (), ())

    @property
    def hi(self) -> int:
        return self.lo + len(self.dims) - 1

    def dim(self, i: int) -> int:
        k = i - self.lo
        if 0 <= k < len(self.dims):
            return self.dims[k]
        return 0

    def d(self, i: int) -> Matrix:
        """The differential ``d_i`` from degree ``i`` to ``i+1``."""
        k = i - self.lo
        if 0 <= k < len(self.maps):
            return self.maps[k]
        return Matrix.zeros(self.field, self.dim(i + 1), self.dim(i))

    def composite(self, i: int, k: int) -> Matrix:
        """``d_{i+k-1} o ... o d_i`` as a ``dim(i+k) x dim(i)`` matrix."""
        if k < 0:
            raise ValueError("composite length must be non-negative")
        key = (i, k)
        hit = self._composites.get(key)
        if hit is not None:
            return hit
        if k == 0:
            out = Matrix.identity(self.field, self.dim(i))
        elif self.dim(i) == 0 or self.dim(i + k) == 0:
            out = Matrix.zeros(self.field, self.dim(i + k), self.dim(i))
        else:
            out = multiply(self.d(i + k - 1), self.composite(i, k - 1))
        self._composites[key] = out
        return out

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def is_zero(self) -> bool:
        return not any(self.dims)

    def total_dim(self) -> int:
        return sum(self.dims)

    def trimmed(self) -> "NComplex":
        """Same complex with zero-dimensional degrees removed from both ends."""
        nz = [k for k, d in enumerate(self.dims) if d]
        if not nz:
            return NComplex.zero(self.field, self.N, self.lo)
        a, b = nz[0], nz[-1]
        return NComplex(self.N, self.field, self.lo + a, self.dims[a:b + 1], self.maps[a:b])

    @property
    def violation(self) -> Optional[Violation]:
        if not self._checked:
            self._violation = _find_violation(self)
            self._checked = True
        return self._violation

    def require_valid(self) -> "NComplex":
        v = self.violation
        if v is not None:
            raise ComplexError(str(v))
        return self

    def same_kind(self, other: "NComplex"):
        if self.N != other.N:
            raise ComplexError(f"mismatched nilpotency order: {self.N} vs {other.N}")
        if self.field != other.field:
            raise ComplexError(f"mismatched field: {self.field!r} vs {other.field!r}")

    def __eq__(self, other):
        if not isinstance(other, NComplex):
            return NotImplemented
        return (self.N, self.field, self.lo, self.dims, self.maps) == (
            other.N, other.field, other.lo, other.dims, other.maps)

    def __hash__(self):
        return hash((self.N, self.field, self.lo, self.dims))

    def __repr__(self):
        return f"NComplex(N={self.N}, field={self.field!r}, lo={self.lo}, dims={list(self.dims)})"


def _find_violation(M: NComplex) -> Optional[Violation]:
    n = len(M.dims)
    expected = max(n - 1, 0)
    if len(M.maps) != expected:
        return Violation("shape", M.lo, f"expected {expected} maps for {n} degrees, got {len(M.maps)}")
    for k, m in enumerate(M.maps):
        if not isinstance(m, Matrix):
            return Violation("shape", M.lo + k, f"map at degree {M.lo + k} is not a Matrix")
        if m.field != M.field:
            return Violation("shape", M.lo + k, f"map at degree {M.lo + k} is over {m.field!r}, not {M.field!r}")
        if m.shape != (M.dims[k + 1], M.dims[k]):
            return Violation(
                "shape", M.lo + k,
                f"map at degree {M.lo + k} has shape {m.shape}, expected {(M.dims[k + 1], M.dims[k])}")
    for i in range(M.lo, M.hi - M.N + 1):
        if not M.composite(i, M.N).is_zero():
            return Violation("nilpotency", i, f"composite of {M.N} differentials starting at degree {i} is nonzero")
    return None


def validate(M: NComplex) -> Optional[Violation]:
    """``None`` when ``M`` is a valid N-complex, else the first violation found.

    Shape problems are reported before nilpotency failures.
    """
    return M.violation


def indecomposable(field: PrimeField, N: int, i: int, l: int) -> NComplex:
    if not 0 <= l <= N - 1:
        raise ComplexError(f"length {l} outside [0, {N - 1}]")
    one = Matrix.identity(field, 1)
    return NComplex(N, field, i, (1,) * (l + 1), (one,) * l)


def direct_sum(A: NComplex, B: NComplex) -> NComplex:
    A.same_kind(B)
    if A.is_zero():
        return B
    if B.is_zero():
        return A
    lo = min(A.lo, B.lo)
    hi = max(A.hi, B.hi)
    dims = [A.dim(i) + B.dim(i) for i in range(lo, hi + 1)]
    maps = [block_diag(A.field, [A.d(i), B.d(i)]) for i in range(lo, hi)]
    return NComplex(A.N, A.field, lo, dims, maps)


def _check_multiset(ms: SummandMultiset, N: int):
    for key in ms:
        if not 0 <= key.l <= N - 1:
            raise ComplexError(f"{key} has length outside [0, {N - 1}]")


def assemble(ms, field: PrimeField, N: int, seed: Optional[int] = None) -> NComplex:
    """Direct sum of the listed indecomposables.

    Summands are laid out in lexicographic order within each degree.  With a
    ``seed`` every degree is conjugated by a random invertible matrix, giving
    an isomorphic complex with dense differentials.
    """
    ms = ms if isinstance(ms, SummandMultiset) else SummandMultiset(ms)
    _check_multiset(ms, N)
    if not ms:
        return NComplex.zero(field, N)
    lo = min(k.i for k in ms)
    hi = max(k.end for k in ms)
    # basis[s] lists the summand copies alive at degree s
    basis: dict[int, list[tuple[Indec, int]]] = {s: [] for s in range(lo, hi + 1)}
    for key, n in ms.items():
        for c in range(n):
            for s in range(key.i, key.end + 1):
                basis[s].append((key, c))
    dims = [len(basis[s]) for s in range(lo, hi + 1)]
    maps = []
    for s in range(lo, hi):
        pos = {b: r for r, b in enumerate(basis[s + 1])}
        a = np.zeros((len(basis[s + 1]), len(basis[s])), dtype=np.int64)
        for col, (key, c) in enumerate(basis[s]):
            if s < key.end:
                a[pos[(key, c)], col] = 1
        maps.append(Matrix(field, a))
    M = NComplex(N, field, lo, dims, maps)
    if seed is not None:
        M = change_basis(M, seed)
    return M


def change_basis(M: NComplex, seed: int) -> NComplex:
    """Conjugate every degree of ``M`` by a seeded random invertible matrix."""
    rng = np.random.default_rng(seed)
    g = [random_invertible(M.field, n, int(rng.integers(2**63))) for n in M.dims]
    maps = []
    for k, m in enumerate(M.maps):
        maps.append(multiply(multiply(g[k + 1], m), inverse(g[k])))
    return NComplex(M.N, M.field, M.lo, M.dims, maps)


def dimension_vector(M: NComplex) -> dict[int, int]:
    return {i: d for i, d in zip(M.degrees(), M.dims) if d}


def shift(M: NComplex, t: int) -> NComplex:
    """Translate every degree by ``t``.  ``shift(M, M.N)`` is the covering action."""
    return NComplex(M.N, M.field, M.lo + t, M.dims, M.maps)


def random_multiset(
    N: int,
    degree_window: tuple[int, int],
    max_total_multiplicity: int,
    rng: np.random.Generator,
    lengths: Optional[Iterable[int]] = None,
) -> SummandMultiset:
    lo, hi = degree_window
    if hi < lo:
        raise ValueError(f"empty degree window {degree_window}")
    allowed = sorted(set(lengths)) if lengths is not None else list(range(N))
    count = int(rng.integers(0, max_total_multiplicity + 1))
    picks = [(int(rng.integers(lo, hi + 1)), allowed[int(rng.integers(len(allowed)))]) for _ in range(count)]
    return SummandMultiset((k, 1) for k in picks)


def random_ncomplex(
    field: PrimeField,
    N: int,
    degree_window: tuple[int, int],
    max_total_multiplicity: int,
    seed: int,
    lengths: Optional[Iterable[int]] = None,
) -> tuple[NComplex, SummandMultiset]:
    """Seeded random complex together with its ground-truth decomposition.

    Summand starts are drawn from ``degree_window``; ``lengths`` restricts the
    allowed summand lengths (default: all of ``0..N-1``).
    """
    rng = np.random.default_rng(seed)
    ms = random_multiset(N, degree_window, max_total_multiplicity, rng, lengths)
    M = assemble(ms, field, N, seed=int(rng.integers(2**63)))
    return M, ms
