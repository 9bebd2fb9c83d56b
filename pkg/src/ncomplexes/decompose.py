"""Recovering the Krull-Schmidt decomposition of a finite N-complex.

Amplitude cohomology sees every non-projective summand: the lexicographically
smallest nonzero entry ``(i0, a)`` of the table belongs to ``M_{i0}^{a-1}``
with multiplicity equal to that entry.  Peeling summands off one at a time
recovers all of them.  Projective summands ``M_s^{N-1}`` are invisible to
cohomology and are read off the leftover dimension vector instead.
"""

from __future__ import annotations

from .cohomology import AHTable, ah_indec, ah_table
from .ncomplex import ComplexError, Indec, NComplex, SummandMultiset, dimension_vector

__all__ = [
    "InconsistentTableError",
    "peel_nonprojectives",
    "projective_counts",
    "decompose",
    "iso",
    "stably_equal",
]


class InconsistentTableError(ComplexError):
    """The input could not have come from a genuine N-complex."""


def peel_nonprojectives(table: AHTable, N: int) -> SummandMultiset:
    if table.N != N:
        raise ValueError(f"table is for N={table.N}, not {N}")
    rest = dict(table.items())
    found: dict[Indec, int] = {}
    while rest:
        i0, a_min = min(rest)
        n = rest[(i0, a_min)]
        l0 = a_min - 1
        for j in range(i0, i0 + l0 + 1):
            for a in range(1, N):
                if not ah_indec(N, i0, l0, a, j):
                    continue
                left = rest.get((j, a), 0) - n
                if left < 0:
                    raise InconsistentTableError(
                        f"removing {n} x M[{i0}]^{l0} drives entry (degree {j}, amplitude {a}) negative")
                if left:
                    rest[(j, a)] = left
                else:
                    rest.pop((j, a), None)
        found[Indec(i0, l0)] = n
    return SummandMultiset(found)


def projective_counts(residual: dict[int, int], N: int) -> SummandMultiset:
    """Multiplicities of ``M_s^{N-1}`` whose segments tile the given dimension vector.

    Scans degrees upward: the count starting at ``s`` is whatever the
    residual at ``s`` leaves after the ``N-1`` earlier starts covering it.
    """
    if not any(residual.values()):
        return SummandMultiset()
    lo = min(s for s, r in residual.items() if r)
    hi = max(s for s, r in residual.items() if r)
    counts: dict[int, int] = {}
    for s in range(lo, hi + 1):
        covered = sum(counts.get(t, 0) for t in range(s - N + 1, s))
        n = residual.get(s, 0) - covered
        if n < 0:
            raise InconsistentTableError(f"negative projective count at degree {s}")
        counts[s] = n
    for s in range(hi + 1, hi + N):
        covered = sum(counts.get(t, 0) for t in range(s - N + 1, s))
        if covered:
            raise InconsistentTableError(f"projective summands overrun the support at degree {s}")
    return SummandMultiset({Indec(s, N - 1): n for s, n in counts.items()})


def decompose(M: NComplex) -> SummandMultiset:
    """Multiplicity of every indecomposable summand of ``M``, projectives included."""
    M.require_valid()
    N = M.N
    visible = peel_nonprojectives(ah_table(M), N)
    residual = dimension_vector(M)
    for key, n in visible.items():
        for s in range(key.i, key.end + 1):
            residual[s] = residual.get(s, 0) - n
            if residual[s] < 0:
                raise InconsistentTableError(f"non-projective summands exceed dimension at degree {s}")
    return visible + projective_counts(residual, N)


def iso(A: NComplex, B: NComplex) -> bool:
    A.same_kind(B)
    if dimension_vector(A) != dimension_vector(B):
        return False
    return decompose(A) == decompose(B)


def stably_equal(A: NComplex, B: NComplex) -> bool:
    """Isomorphic after discarding projective summands."""
    A.same_kind(B)
    return decompose(A).restrict(A.N - 2) == decompose(B).restrict(B.N - 2)
