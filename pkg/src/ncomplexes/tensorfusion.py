"""q-deformed tensor product of N-complexes and its fusion rules.

For a primitive N-th root of unity ``q`` the product has components
``(M x M')_i = sum_{j+r=i} M_j (x) M'_r`` and differential
``d(m (x) m') = m (x) d m' + q^r d m (x) m'`` where ``r`` is the degree of
the right factor.  The two summands q-commute, so ``d^N`` expands into
Gaussian binomials at ``q`` which all vanish.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Iterable

import numpy as np

from .exactla import Matrix, PrimeField, kron, multiplicative_order, primitive_root_of_unity
from .decompose import decompose
from .ncomplex import ComplexError, Indec, NComplex, SummandMultiset, indecomposable

__all__ = [
    "RootOfUnity",
    "tensor",
    "clebsch_gordan",
    "fusion_check",
    "FusionReport",
    "FusionMismatch",
    "nilpotency_failures",
]


@dataclass(frozen=True)
class RootOfUnity:
    """An element ``q`` of F_p used to twist the tensor differential.

    ``strict`` (the default) insists on exact multiplicative order ``N``.
    """

    field: PrimeField
    q: int
    N: int
    strict: bool = dc_field(default=True, compare=False)

    def __post_init__(self):
        q = self.field(self.q)
        object.__setattr__(self, "q", q)
        if q == 0:
            raise ComplexError("q must be nonzero")
        if self.strict and multiplicative_order(self.field, q) != self.N:
            raise ComplexError(f"{q} does not have multiplicative order {self.N} in F_{self.field.p}")

    @classmethod
    def primitive(cls, field: PrimeField, N: int) -> "RootOfUnity":
        return cls(field, primitive_root_of_unity(field, N), N)

    def power(self, r: int) -> int:
        return pow(self.q, r, self.field.p)


def tensor(A: NComplex, B: NComplex, q: RootOfUnity) -> NComplex:
    """``A (x) B`` with blocks ordered by ascending left degree, row-major inside a block.

    A non-strict ``q`` is accepted; :func:`validate` on the result then
    shows where nilpotency fails.
    """
    A.same_kind(B)
    if q.N != A.N or q.field != A.field:
        raise ComplexError(f"root of unity of order {q.N} over F_{q.field.p} does not match N={A.N} over F_{A.field.p}")
    A.require_valid()
    B.require_valid()
    f = A.field
    N = A.N
    if A.is_zero() or B.is_zero():
        return NComplex.zero(f, N, A.lo + B.lo)
    lo = A.lo + B.lo
    hi = A.hi + B.hi

    def blocks(i):
        # (j, r, offset) for every nonzero block of degree i
        out, off = [], 0
        for j in range(max(A.lo, i - B.hi), min(A.hi, i - B.lo) + 1):
            r = i - j
            out.append((j, r, off))
            off += A.dim(j) * B.dim(r)
        return out, off

    layout = {i: blocks(i) for i in range(lo, hi + 1)}
    dims = [layout[i][1] for i in range(lo, hi + 1)]
    maps = []
    for i in range(lo, hi):
        src, n_src = layout[i]
        dst, n_dst = layout[i + 1]
        dst_off = {(j, r): off for j, r, off in dst}
        out = np.zeros((n_dst, n_src), dtype=np.int64)
        for j, r, off in src:
            w = A.dim(j) * B.dim(r)
            if w == 0:
                continue
            if (j, r + 1) in dst_off and B.dim(r + 1):
                blk = kron(Matrix.identity(f, A.dim(j)), B.d(r))
                o = dst_off[(j, r + 1)]
                out[o:o + blk.rows, off:off + w] += blk.array
            if (j + 1, r) in dst_off and A.dim(j + 1):
                blk = kron(A.d(j), Matrix.identity(f, B.dim(r))).scale(q.power(r))
                o = dst_off[(j + 1, r)]
                out[o:o + blk.rows, off:off + w] += blk.array
        maps.append(Matrix(f, out))
    return NComplex(N, f, lo, dims, maps)


def clebsch_gordan(N: int, i: int, u: int, j: int, v: int) -> SummandMultiset:
    """Closed-form decomposition of ``M_i^u (x) M_j^v``."""
    if not (0 <= u <= N - 1 and 0 <= v <= N - 1):
        raise ValueError(f"lengths ({u}, {v}) outside [0, {N - 1}]")
    m = min(u, v)
    if u + v <= N - 1:
        return SummandMultiset({Indec(i + j + l, u + v - 2 * l): 1 for l in range(m + 1)})
    e = u + v - (N - 1)
    parts = {Indec(i + j + l, N - 1): 1 for l in range(e + 1)}
    parts.update({Indec(i + j + l, u + v - 2 * l): 1 for l in range(e + 1, m + 1)})
    return SummandMultiset(parts)


@dataclass(frozen=True)
class FusionMismatch:
    i: int
    u: int
    j: int
    v: int
    expected: SummandMultiset
    actual: SummandMultiset


@dataclass
class FusionReport:
    N: int
    p: int
    q: int
    cases: int = 0
    mismatches: list[FusionMismatch] = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def merge(self, other: "FusionReport") -> "FusionReport":
        return FusionReport(self.N, self.p, self.q, self.cases + other.cases, self.mismatches + other.mismatches)


def fusion_check(N: int, p: int, window: Iterable[int]) -> FusionReport:
    """Compare tensor-and-decompose against the closed form for every pair of
    indecomposables starting in ``window``."""
    field = PrimeField(p)
    q = RootOfUnity.primitive(field, N)
    window = list(window)
    report = FusionReport(N, p, q.q)
    for i in window:
        for j in window:
            for u in range(N):
                for v in range(N):
                    got = decompose(tensor(indecomposable(field, N, i, u), indecomposable(field, N, j, v), q))
                    want = clebsch_gordan(N, i, u, j, v)
                    report.cases += 1
                    if got != want:
                        report.mismatches.append(FusionMismatch(i, u, j, v, want, got))
    return report


def nilpotency_failures(N: int, p: int, q: int, window: Iterable[int] = (0,)) -> list[tuple[Indec, Indec, int]]:
    """Diagnostic for non-primitive roots: pairs of indecomposables whose
    product breaks ``d^N = 0``, with the first failing degree."""
    field = PrimeField(p)
    root = RootOfUnity(field, q, N, strict=False)
    window = list(window)
    bad = []
    for i in window:
        for j in window:
            for u in range(N):
                for v in range(N):
                    T = tensor(indecomposable(field, N, i, u), indecomposable(field, N, j, v), root)
                    if T.violation is not None:
                        bad.append((Indec(i, u), Indec(j, v), T.violation.degree))
    return bad
