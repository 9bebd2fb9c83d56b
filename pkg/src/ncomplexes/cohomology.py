"""Amplitude cohomology of N-complexes and contraction to ordinary complexes.

The amplitude-``a`` cohomology at degree ``i`` is
``Ker(d^a : M_i -> M_{i+a}) / Im(d^{N-a} : M_{i-N+a} -> M_i)``.  Nilpotency
puts the image inside the kernel, so only ranks are needed.
"""

from __future__ import annotations

from typing import Iterator, Mapping

from .exactla import Matrix, rank
from .ncomplex import ComplexError, NComplex

__all__ = [
    "AHTable",
    "ah_dim",
    "ah_table",
    "ah_indec",
    "ah_indec_table",
    "is_acyclic",
    "is_projective",
    "contract",
    "contraction_degree",
    "normalize_initial_condition",
    "h2_dim",
]


class AHTable(Mapping[tuple[int, int], int]):
    """Dimensions of amplitude cohomology keyed by ``(degree, amplitude)``.

    Zero entries are never stored; missing keys read as 0.
    """

    __slots__ = ("N", "_d")

    def __init__(self, N: int, entries=()):
        self.N = N
        d = {}
        pairs = entries.items() if isinstance(entries, Mapping) else entries
        for (i, a), n in pairs:
            if not 1 <= a <= N - 1:
                raise ValueError(f"amplitude {a} outside [1, {N - 1}]")
            if n < 0:
                raise ValueError(f"negative dimension at {(i, a)}")
            if n:
                d[(int(i), int(a))] = d.get((int(i), int(a)), 0) + int(n)
        self._d = dict(sorted(d.items()))

    def __getitem__(self, key) -> int:
        return self._d.get(tuple(key), 0)

    def __contains__(self, key):
        return tuple(key) in self._d

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __eq__(self, other):
        if isinstance(other, AHTable):
            return self.N == other.N and self._d == other._d
        return NotImplemented

    def __add__(self, other: "AHTable") -> "AHTable":
        if self.N != other.N:
            raise ValueError("tables for different N")
        return AHTable(self.N, list(self.items()) + list(other.items()))

    def row(self, a: int) -> dict[int, int]:
        return {i: n for (i, b), n in self._d.items() if b == a}

    def restrict(self, lo: int, hi: int) -> "AHTable":
        """Entries whose degree lies in ``[lo, hi]``."""
        return AHTable(self.N, {k: n for k, n in self._d.items() if lo <= k[0] <= hi})

    def to_json(self) -> list[dict]:
        return [{"i": i, "a": a, "dim": n} for (i, a), n in self._d.items()]

    def render(self) -> str:
        """Amplitudes as rows (1 at the top), degrees as columns, '.' for zero."""
        if not self._d:
            return ""
        degs = [i for i, _ in self._d]
        cols = list(range(min(degs), max(degs) + 1))
        cells = {(i, a): str(n) for (i, a), n in self._d.items()}
        width = max(len(str(c)) for c in cols + [max(self._d.values())])
        head = "a\\i " + " ".join(str(c).rjust(width) for c in cols)
        lines = [head]
        for a in range(1, self.N):
            body = " ".join(cells.get((i, a), ".").rjust(width) for i in cols)
            lines.append(f"{a:>3} " + body)
        return "\n".join(lines)

    def __repr__(self):
        return f"AHTable(N={self.N}, {self._d!r})"


def _check_amplitude(N: int, a: int):
    if not 1 <= a <= N - 1:
        raise ValueError(f"amplitude {a} outside [1, {N - 1}]")


def ah_dim(M: NComplex, a: int, i: int) -> int:
    """Dimension of the amplitude-``a`` cohomology of ``M`` at degree ``i``."""
    _check_amplitude(M.N, a)
    M.require_valid()
    n = M.dim(i)
    if n == 0:
        return 0
    b = M.N - a
    kernel = n - rank(M.composite(i, a))
    image = rank(M.composite(i - b, b))
    return kernel - image


def ah_table(M: NComplex) -> AHTable:
    M.require_valid()
    N = M.N
    entries = {}
    for i in range(M.lo - N + 1, M.hi + 2):
        if M.dim(i) == 0:
            continue
        for a in range(1, N):
            entries[(i, a)] = ah_dim(M, a, i)
    return AHTable(N, entries)


def ah_indec(N: int, i: int, l: int, a: int, j: int) -> int:
    """Closed form for the amplitude cohomology of M_i^l at ``(j, a)``; 0 or 1."""
    if not 0 <= l <= N - 1:
        raise ValueError(f"length {l} outside [0, {N - 1}]")
    _check_amplitude(N, a)
    t = j - i
    if not 0 <= t <= l:
        return 0
    return int(l + 1 - t <= a <= N - 1 - t)


def ah_indec_table(N: int, i: int, l: int) -> AHTable:
    return AHTable(N, {(j, a): 1 for j in range(i, i + l + 1) for a in range(1, N) if ah_indec(N, i, l, a, j)})


def is_acyclic(M: NComplex, a: int) -> bool:
    M.require_valid()
    _check_amplitude(M.N, a)
    return all(ah_dim(M, a, i) == 0 for i in M.degrees())


def is_projective(M: NComplex) -> bool:
    """Projective (equivalently injective) iff amplitude 1 cohomology vanishes."""
    return is_acyclic(M, 1)


def normalize_initial_condition(e: int, a: int, N: int) -> tuple[int, int, int]:
    """Rewrite ``(e, a)`` so that ``0 <= e' < N - a'``.

    Returns ``(e', a', offset)`` with degree ``n`` of ``C_{e,a}`` equal to
    degree ``n + offset`` of ``C_{e',a'}``.
    """
    _check_amplitude(N, a)
    offset = 0
    while True:
        b = N - a
        if e >= b:
            e, a, offset = e - b, b, offset + 1
        elif e < 0:
            e, a, offset = e + a, b, offset - 1
        else:
            return e, a, offset


def contraction_degree(e: int, a: int, N: int, n: int) -> int:
    """Degree of the original complex sitting in degree ``n`` of ``C_{e,a}``."""
    return e + (n // 2) * N + (a if n % 2 else 0)


def contract(M: NComplex, e: int, a: int, canonical: bool = False) -> NComplex:
    """The 2-complex ``C_{e,a}M``: ``M_e`` in degree 0, then alternating ``d^a`` and ``d^{N-a}``.

    Any integer ``e`` is accepted.  With ``canonical=True`` the pair is first
    rewritten by :func:`normalize_initial_condition` so that degree 0 carries
    the first non-negative degree of amplitude cohomology.
    """
    M.require_valid()
    N = M.N
    if canonical:
        e, a, _ = normalize_initial_condition(e, a, N)
    _check_amplitude(N, a)
    b = N - a
    if M.is_zero():
        return NComplex.zero(M.field, 2)
    deg = lambda n: contraction_degree(e, a, N, n)
    n = 2 * ((M.lo - e) // N) - 2
    while deg(n) < M.lo:
        n += 1
    first = n
    while deg(n + 1) <= M.hi:
        n += 1
    last = n
    if deg(first) > M.hi:
        return NComplex.zero(M.field, 2, first)
    dims = [M.dim(deg(k)) for k in range(first, last + 1)]
    maps: list[Matrix] = [M.composite(deg(k), b if k % 2 else a) for k in range(first, last)]
    return NComplex(2, M.field, first, dims, maps)


def h2_dim(C: NComplex, n: int) -> int:
    """Ordinary cohomology ``Ker d_n / Im d_{n-1}`` of a 2-complex."""
    if C.N != 2:
        raise ComplexError(f"h2_dim needs a 2-complex, got N={C.N}")
    return ah_dim(C, 1, n)
